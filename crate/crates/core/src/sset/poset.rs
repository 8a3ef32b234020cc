//! Finite posets and their nerves.

use std::sync::Arc;

use super::builder::{build, Built, SimplexModel};
use super::simplicial::{SimplexRef, SimplicialSet};
use super::surjection::SurjectionWord;
use crate::{Error, Result};

/// A finite poset on `0..len`, stored as its full order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    leq: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl FinPoset {
    /// Builds a poset from a relation; the reflexive-transitive closure is taken
    /// and antisymmetry is checked.
    #[allow(clippy::needless_range_loop)]
    pub fn from_relation(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("relation ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a][k] {
                    for b in 0..n {
                        if leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq[a][b] && leq[b][a] {
                    return Err(Error::Invalid(format!("elements {a} and {b} form a cycle")));
                }
            }
        }
        Ok(FinPoset { leq, labels })
    }

    pub fn from_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let rel: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| leq(a, b))
            .collect();
        Self::from_relation(labels, &rel)
    }

    /// The total order `[n] = {0 < 1 < ... < n}`.
    pub fn ordinal(n: usize) -> Self {
        Self::from_fn((0..=n).map(|i| i.to_string()).collect(), |a, b| a <= b).expect("total order")
    }

    /// The product order on `a x b`, element `(i, j)` at index `i * |b| + j`.
    pub fn product(a: &FinPoset, b: &FinPoset) -> Self {
        let nb = b.len();
        let labels = (0..a.len() * nb)
            .map(|k| format!("({},{})", a.labels[k / nb], b.labels[k % nb]))
            .collect();
        Self::from_fn(labels, |x, y| a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb)).expect("product order")
    }

    pub fn opposite(&self) -> Self {
        FinPoset {
            leq: (0..self.len())
                .map(|a| (0..self.len()).map(|b| self.leq[b][a]).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Strictly increasing chains with `n + 1` elements, lexicographic.
    pub fn chains(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n + 1);
        self.chain_rec(n + 1, &mut cur, &mut out);
        out
    }

    fn chain_rec(&self, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..self.len() {
            if cur.last().is_none_or(|&l| l != x && self.leq(l, x)) {
                cur.push(x);
                self.chain_rec(len, cur, out);
                cur.pop();
            }
        }
    }

    /// Length of the longest strict chain minus one (the nerve's dimension).
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| self.leq(b, a)).count());
        let mut best = vec![0usize; n];
        for &a in &order {
            for b in 0..n {
                if b != a && self.leq(b, a) {
                    best[a] = best[a].max(best[b] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }
}

/// Nerve model: keys are weakly increasing chains.
pub struct ChainModel {
    pub poset: Arc<FinPoset>,
}

impl SimplexModel for ChainModel {
    type Key = Vec<u32>;

    fn candidates(&self, n: usize) -> Result<Vec<Vec<u32>>> {
        Ok(self
            .poset
            .chains(n)
            .into_iter()
            .map(|c| c.into_iter().map(|x| x as u32).collect())
            .collect())
    }

    fn face(&self, i: usize, _n: usize, key: &Vec<u32>) -> Vec<u32> {
        let mut k = key.clone();
        k.remove(i);
        k
    }

    fn degeneracy(&self, j: usize, _n: usize, key: &Vec<u32>) -> Vec<u32> {
        let mut k = key.clone();
        k.insert(j, key[j]);
        k
    }

    fn degenerate_at(&self, _n: usize, key: &Vec<u32>) -> Option<usize> {
        key.windows(2).position(|w| w[0] == w[1])
    }

    fn label(&self, _n: usize, key: &Vec<u32>) -> Option<String> {
        let names: Vec<&str> = key.iter().map(|&x| self.poset.labels[x as usize].as_str()).collect();
        Some(names.join("<"))
    }
}

/// The nerve of a finite poset, with chain lookup.
pub struct PosetNerve {
    pub built: Built<ChainModel>,
}

impl PosetNerve {
    pub fn new(poset: FinPoset) -> Self {
        let dim = poset.height();
        let built = build(
            ChainModel {
                poset: Arc::new(poset),
            },
            dim,
            None,
        )
        .expect("chain enumeration cannot fail");
        PosetNerve { built }
    }

    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }

    pub fn poset(&self) -> &FinPoset {
        &self.built.model.poset
    }

    /// Normal form of a weakly increasing chain.
    pub fn chain(&self, chain: &[usize]) -> SimplexRef {
        let mut positions = Vec::new();
        let mut strict: Vec<u32> = Vec::with_capacity(chain.len());
        for (k, &x) in chain.iter().enumerate() {
            if k > 0 && chain[k - 1] == x {
                positions.push(k - 1);
            } else {
                debug_assert!(k == 0 || self.poset().leq(chain[k - 1], x), "{chain:?} is not a chain");
                strict.push(x as u32);
            }
        }
        let c = self
            .built
            .cell_of(strict.len() - 1, &strict)
            .unwrap_or_else(|| panic!("{chain:?} is not a chain"));
        SimplexRef {
            cell: c,
            degeneracy: SurjectionWord::from_collapsed(chain.len() - 1, &positions).expect("valid word"),
        }
    }

    /// The chain of elements underlying a simplex.
    pub fn elements(&self, s: SimplexRef) -> Vec<usize> {
        let key = self.built.key(s.cell);
        s.degeneracy
            .as_map()
            .into_iter()
            .map(|k| key[k] as usize)
            .collect()
    }
}

/// The standard simplex as the nerve of `[n]`.
pub fn simplex_nerve(n: usize) -> PosetNerve {
    PosetNerve::new(FinPoset::ordinal(n))
}
