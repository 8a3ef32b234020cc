use std::sync::Arc;

use super::category::FinCategory;
use super::functor::CatFunctor;
use crate::sset::{build, Built, SSetMap, SimplexModel, SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// Keys are `(first object, composable string of morphisms)`.
pub struct NerveModel {
    pub category: Arc<FinCategory>,
}

pub type StringKey = (usize, Vec<usize>);

impl NerveModel {
    fn object_at(&self, key: &StringKey, j: usize) -> usize {
        if j == 0 {
            key.0
        } else {
            self.category.target(key.1[j - 1])
        }
    }

    fn strings(&self, n: usize) -> Vec<StringKey> {
        let c = &self.category;
        let mut out = Vec::new();
        for a in 0..c.object_count() {
            let mut cur = Vec::new();
            self.extend(a, a, n, &mut cur, &mut out);
        }
        out
    }

    fn extend(&self, start: usize, at: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<StringKey>) {
        if cur.len() == n {
            out.push((start, cur.clone()));
            return;
        }
        let c = &self.category;
        for b in 0..c.object_count() {
            for &f in c.hom(at, b) {
                if !c.is_identity(f) {
                    cur.push(f);
                    self.extend(start, b, n, cur, out);
                    cur.pop();
                }
            }
        }
    }
}

impl SimplexModel for NerveModel {
    type Key = StringKey;

    fn candidates(&self, n: usize) -> Result<Vec<StringKey>> {
        Ok(self.strings(n))
    }

    fn face(&self, i: usize, n: usize, key: &StringKey) -> StringKey {
        let c = &self.category;
        let fs = &key.1;
        if i == 0 {
            (c.target(fs[0]), fs[1..].to_vec())
        } else if i == n {
            (key.0, fs[..n - 1].to_vec())
        } else {
            let mut out = fs[..i - 1].to_vec();
            out.push(c.compose(fs[i], fs[i - 1]).expect("composable string"));
            out.extend_from_slice(&fs[i + 1..]);
            (key.0, out)
        }
    }

    fn degeneracy(&self, j: usize, _n: usize, key: &StringKey) -> StringKey {
        let mut fs = key.1.clone();
        fs.insert(j, self.category.identity(self.object_at(key, j)));
        (key.0, fs)
    }

    fn degenerate_at(&self, _n: usize, key: &StringKey) -> Option<usize> {
        key.1.iter().position(|&f| self.category.is_identity(f))
    }

    fn label(&self, n: usize, key: &StringKey) -> Option<String> {
        let c = &self.category;
        Some(if n == 0 {
            c.objects()[key.0].clone()
        } else {
            key.1.iter().map(|&f| c.morphism(f).name.as_str()).collect::<Vec<_>>().join(";")
        })
    }
}

/// The nerve of a finite category, truncated at `max_dim` when necessary.
pub struct Nerve {
    pub built: Built<NerveModel>,
}

impl Nerve {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.built.model.category
    }

    /// The simplex of a composable string starting at `start`.
    pub fn string(&self, start: usize, morphisms: &[usize]) -> SimplexRef {
        self.built
            .locate(morphisms.len(), &(start, morphisms.to_vec()))
            .expect("string within the computed dimensions")
    }

    pub fn morphism_simplex(&self, f: usize) -> SimplexRef {
        self.string(self.category().source(f), &[f])
    }

    /// The morphism represented by an edge (degenerate edges are identities).
    pub fn morphism_of_edge(&self, e: SimplexRef) -> usize {
        let key = self.built.key(e.cell);
        if e.degeneracy.is_identity() {
            key.1[0]
        } else {
            self.category().identity(key.0)
        }
    }

    /// The composable string underlying any simplex.
    pub fn string_of(&self, s: SimplexRef) -> StringKey {
        let n = s.dim();
        let x = &self.built.sset;
        if n == 0 {
            return (s.cell.index, Vec::new());
        }
        let fs = (0..n).map(|k| self.morphism_of_edge(x.edge(s, k, k + 1))).collect();
        (x.vertex(s, 0), fs)
    }
}

pub fn nerve(c: Arc<FinCategory>, max_dim: usize) -> Result<Nerve> {
    if max_dim < 1 {
        return Err(Error::Precondition("nerves are computed to dimension at least 1".into()));
    }
    let model = NerveModel { category: c };
    let exact = model.strings(max_dim + 1).is_empty();
    let built = build(model, max_dim, if exact { None } else { Some(max_dim) })?;
    Ok(Nerve { built })
}

/// The nerve of a category whose nerve is finite-dimensional, computed exactly.
pub fn full_nerve(c: Arc<FinCategory>) -> Result<Nerve> {
    let model = NerveModel { category: c.clone() };
    let mut d = 1;
    while !model.strings(d + 1).is_empty() {
        d += 1;
        if d > 24 {
            return Err(Error::Precondition("nerve has nondegenerate cells in every dimension".into()));
        }
    }
    nerve(c, d)
}

/// The simplicial map induced by a functor on nerves.
pub fn nerve_map(f: &CatFunctor, source: &Nerve, target: &Nerve) -> Result<SSetMap> {
    let images = source
        .built
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|(a, fs)| {
                    let g: Vec<usize> = fs.iter().map(|&m| f.morphism(m)).collect();
                    target.built.locate(n, &(f.object(*a), g)).ok_or_else(|| {
                        Error::Truncation {
                            needed: n,
                            faithful: target.sset().max_dim().unwrap_or(0),
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::new(source.sset().clone(), target.sset().clone(), images)
}
