use std::collections::BTreeSet;
use std::sync::Arc;

use super::{AdequateTriple, TripleMode};
use crate::cat::{full_nerve, homotopy_category, is_cartesian_morphism, CatFunctor, FinCategory, HomotopyCategory, Nerve};
use crate::sset::mapspace::{map_space_faithful, CosimplicialShape, Enumerator, MapData, MapSpaceModel, Tuple};
use crate::sset::{
    build, opposite, Built, CellId, DomainPlan, MapSearch, PosetFamily, PosetShape, SSetMap, SimplexModel,
    SimplexRef, SimplicialSet,
};
use crate::{Error, Result};

/// Whether `a -top-> b -right-> d`, `a -left-> c -bottom-> d` is a pullback.
pub fn is_pullback_square(c: &FinCategory, top: usize, left: usize, right: usize, bottom: usize) -> bool {
    if c.compose(right, top) != c.compose(bottom, left) || c.compose(right, top).is_none() {
        return false;
    }
    let (b, cc) = (c.target(top), c.target(left));
    for z in 0..c.object_count() {
        for &u in c.hom(z, b) {
            for &v in c.hom(z, cc) {
                if c.compose(right, u) != c.compose(bottom, v) {
                    continue;
                }
                let through = c
                    .hom(z, c.source(top))
                    .iter()
                    .filter(|&&w| c.compose(top, w) == Some(u) && c.compose(left, w) == Some(v))
                    .count();
                if through != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Simplices of `x` all of whose edges lie in `edges`.
struct EdgeSubModel {
    x: Arc<SimplicialSet>,
    edges: BTreeSet<SimplexRef>,
}

impl SimplexModel for EdgeSubModel {
    type Key = SimplexRef;

    fn candidates(&self, n: usize) -> Result<Vec<SimplexRef>> {
        Ok(self
            .x
            .simplices(n)
            .into_iter()
            .filter(|&s| {
                (0..n).all(|a| {
                    (a + 1..=n).all(|b| {
                        let e = self.x.edge(s, a, b);
                        !e.is_nondegenerate() || self.edges.contains(&e)
                    })
                })
            })
            .collect())
    }

    fn face(&self, i: usize, _n: usize, key: &SimplexRef) -> SimplexRef {
        self.x.face(i, *key)
    }

    fn degeneracy(&self, j: usize, _n: usize, key: &SimplexRef) -> SimplexRef {
        self.x.degeneracy(j, *key)
    }

    fn label(&self, n: usize, key: &SimplexRef) -> Option<String> {
        (n == 0).then(|| self.x.display(key.cell))
    }
}

/// `A^eff(C, C_†, C^†)`: spans with ingressive forward legs and egressive
/// backward legs, glued along pullback squares.
pub struct Burnside {
    pub triple: AdequateTriple,
    pub built: Built<MapSpaceModel>,
    pub shape: Arc<PosetShape>,
    pub ho: HomotopyCategory,
    /// `C_† -> A^eff`.
    pub ingressive_inclusion: SSetMap,
    /// `(C^†)^op -> A^eff`.
    pub egressive_inclusion: SSetMap,
}

impl Burnside {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }

    /// The span `x <- u -> y` of an edge, as (backward leg, forward leg).
    pub fn span(&self, e: SimplexRef) -> (SimplexRef, SimplexRef) {
        let c = &self.triple.ambient;
        if !e.is_nondegenerate() {
            let v = self.built.key(e.cell)[0];
            let id = c.degeneracy(0, v);
            return (id, id);
        }
        let data = self.built.key(e.cell);
        let leg = |to: [usize; 2]| {
            let chain = [self.shape.element_index(1, &[0, 1]), self.shape.element_index(1, &to)];
            self.built.model.evaluate(1, data, self.shape.nerve(1).chain(&chain))
        };
        (leg([0, 0]), leg([1, 1]))
    }
}

fn edge_allowed(t: &AdequateTriple, a: &[usize], b: &[usize], y: SimplexRef) -> bool {
    if !y.is_nondegenerate() {
        return true;
    }
    if a[1] == b[1] {
        t.ingressive.contains(&y)
    } else if a[0] == b[0] {
        t.egressive.contains(&y)
    } else {
        true
    }
}

struct Enumeration {
    triple: AdequateTriple,
    shape: Arc<PosetShape>,
    ho: HomotopyCategory,
}

impl Enumeration {
    fn edge(&self, n: usize, data: &[SimplexRef], from: [usize; 2], to: [usize; 2]) -> usize {
        let chain = [self.shape.element_index(n, &from), self.shape.element_index(n, &to)];
        let s = self.shape.nerve(n).chain(&chain);
        let k = self.shape.object(n);
        self.ho.class(data[k.flat_index(s.cell)].degenerate_by(&s.degeneracy))
    }

    fn squares_are_pullbacks(&self, n: usize, data: &[SimplexRef]) -> bool {
        let c = &self.ho.category;
        for i in 0..=n {
            for k in i + 1..=n {
                for l in k..=n {
                    for j in l + 1..=n {
                        let top = self.edge(n, data, [i, j], [k, j]);
                        let left = self.edge(n, data, [i, j], [i, l]);
                        let right = self.edge(n, data, [k, j], [k, l]);
                        let bottom = self.edge(n, data, [i, l], [k, l]);
                        if !is_pullback_square(c, top, left, right, bottom) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&self, n: usize) -> Vec<MapData> {
        let k = self.shape.nerve(n).sset();
        let x = &self.triple.ambient;
        let plan = DomainPlan::new(k);
        let chains: Vec<Vec<Tuple>> = k
            .all_cells()
            .map(|c| self.shape.chain_tuples(n, SimplexRef::cell(c)).into_iter().cloned().collect())
            .collect();
        let admissible = |c: CellId, y: &SimplexRef, _: &[Option<SimplexRef>]| {
            c.dim != 1 || {
                let ch = &chains[k.flat_index(c)];
                edge_allowed(&self.triple, &ch[0], &ch[1], *y)
            }
        };
        let mut search = MapSearch::new(k, x, &plan);
        search.admissible = Some(&admissible);
        let mut out = Vec::new();
        search.run(|m| {
            if self.squares_are_pullbacks(n, m) {
                out.push(m.to_vec());
            }
            true
        });
        out
    }
}

/// Maps `N(P_n) -> C` for the tuples obtained by pulling a simplex along
/// a coordinate of each element.
fn inclusion(
    sub: &Built<EdgeSubModel>,
    domain: Arc<SimplicialSet>,
    built: &Built<MapSpaceModel>,
    shape: &PosetShape,
    coordinate: fn(usize, &[usize]) -> usize,
) -> Result<SSetMap> {
    let x = &sub.model.x;
    let images = sub
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| {
            let k = shape.nerve(n).sset();
            level
                .iter()
                .map(|&s| {
                    let data: MapData = k
                        .all_cells()
                        .map(|c| {
                            let theta: Vec<usize> = shape
                                .chain_tuples(n, SimplexRef::cell(c))
                                .iter()
                                .map(|t| coordinate(n, t))
                                .collect();
                            x.pull(s, &theta)
                        })
                        .collect();
                    built.locate(n, &data).ok_or_else(|| {
                        Error::Invalid(format!("simplex {s:?} does not give a cell of the Burnside set"))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::new(domain, built.sset.clone(), images)
}

/// Builds `A^eff` to `max_dim`. The triple must be in categorical mode.
pub fn eff_burnside(t: &AdequateTriple, max_dim: usize) -> Result<Burnside> {
    if t.mode != TripleMode::Categorical {
        return Err(Error::Precondition(
            "the effective Burnside construction needs a triple in categorical mode".into(),
        ));
    }
    let ho = homotopy_category(&t.ambient)?;
    let shape = Arc::new(PosetShape::new(PosetFamily::TwistedOp, max_dim));
    let dyn_shape: Arc<dyn CosimplicialShape> = shape.clone();
    map_space_faithful(dyn_shape.as_ref(), &t.ambient, max_dim)?;
    let job = Arc::new(Enumeration {
        triple: t.clone(),
        shape: shape.clone(),
        ho: ho.clone(),
    });
    let enumerate: Enumerator = Box::new(move |n| Ok(job.run(n)));
    let names = t.ambient.clone();
    let model = MapSpaceModel::new(dyn_shape, t.ambient.clone(), enumerate)
        .with_labels(move |n, data| (n == 0).then(|| names.display(data[0].cell)));
    let built = build(model, max_dim, t.ambient.faithful().map(|f| f.min(max_dim)).or(Some(max_dim)))?;

    let faithful = t.ambient.faithful();
    let ing = build(
        EdgeSubModel {
            x: t.ambient.clone(),
            edges: t.ingressive.clone(),
        },
        max_dim,
        faithful.map(|f| f.min(max_dim)).or(Some(max_dim)),
    )?;
    let ingressive_inclusion = inclusion(&ing, ing.sset.clone(), &built, &shape, |_, t| t[0])?;
    let eg = build(
        EdgeSubModel {
            x: t.ambient.clone(),
            edges: t.egressive.clone(),
        },
        max_dim,
        faithful.map(|f| f.min(max_dim)).or(Some(max_dim)),
    )?;
    let eg_op = Arc::new(opposite(&eg.sset));
    let egressive_inclusion = inclusion(&eg, eg_op, &built, &shape, |n, t| n - t[1])?;
    Ok(Burnside {
        triple: t.clone(),
        built,
        shape,
        ho,
        ingressive_inclusion,
        egressive_inclusion,
    })
}

/// `(X, X ×_S ιS, ι^S X)` on the nerve of the total category of `p`: forward
/// legs over isomorphisms, backward legs cartesian.
pub fn span_triple(p: &CatFunctor) -> Result<(AdequateTriple, Nerve)> {
    let total = full_nerve(p.source.clone())?;
    let x = total.sset().clone();
    let c = total.category().clone();
    let mut ingressive = BTreeSet::new();
    let mut egressive = BTreeSet::new();
    for &e in &x.boundary_table(1).all {
        let f = total.morphism_of_edge(e);
        if p.target.is_iso(p.morphism(f)) {
            ingressive.insert(e);
        }
        if is_cartesian_morphism(p, f) {
            egressive.insert(e);
        }
    }
    debug_assert_eq!(c.object_count(), x.count(0));
    Ok((
        AdequateTriple {
            ambient: x,
            ingressive,
            egressive,
            mode: TripleMode::Categorical,
        },
        total,
    ))
}
