use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::staircase::Point;
use crate::{Error, Result};

/// The poset whose nerve hosts a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Ambient {
    /// `[m]`, with nothing marked.
    Ordinal { m: usize },
    /// The arrow poset of `[n]`; an edge is marked when its target is constant.
    Arrow { n: usize },
}

impl Ambient {
    pub fn len(&self) -> usize {
        match *self {
            Ambient::Ordinal { m } => m + 1,
            Ambient::Arrow { n } => (n + 1) * (n + 2) / 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Element `e` of the arrow poset as a point `(i, j)`.
    pub fn point(&self, e: usize) -> Point {
        match *self {
            Ambient::Ordinal { .. } => (e, e),
            Ambient::Arrow { n } => {
                let mut rest = e;
                for i in 0..=n {
                    let row = n + 1 - i;
                    if rest < row {
                        return (i, i + rest);
                    }
                    rest -= row;
                }
                panic!("element {e} out of range")
            }
        }
    }

    pub fn element(&self, p: Point) -> usize {
        match *self {
            Ambient::Ordinal { .. } => p.0,
            Ambient::Arrow { n } => (0..p.0).map(|i| n + 1 - i).sum::<usize>() + (p.1 - p.0),
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match self {
            Ambient::Ordinal { .. } => a <= b,
            Ambient::Arrow { .. } => {
                let (p, q) = (self.point(a), self.point(b));
                p.0 <= q.0 && p.1 <= q.1
            }
        }
    }

    pub fn is_marked(&self, a: usize, b: usize) -> bool {
        match self {
            Ambient::Ordinal { .. } => false,
            Ambient::Arrow { .. } => self.point(a).1 == self.point(b).1,
        }
    }

    pub fn label(&self, e: usize) -> String {
        match self {
            Ambient::Ordinal { .. } => e.to_string(),
            Ambient::Arrow { .. } => {
                let (i, j) = self.point(e);
                format!("{i}{j}")
            }
        }
    }

    /// Sorts a set of pairwise comparable elements into a chain.
    pub fn chain(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let mut c = elements.to_vec();
        c.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.leq(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        for w in c.windows(2) {
            if w[0] == w[1] || !self.leq(w[0], w[1]) {
                return Err(Error::Invalid(format!("{elements:?} is not a chain")));
            }
        }
        Ok(c)
    }
}

/// A marked subcomplex of the nerve of an ambient poset, given by facets
/// (chains) and marked nondegenerate edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedComplex {
    pub facets: Vec<Vec<usize>>,
    pub marked: BTreeSet<(usize, usize)>,
}

/// The closure of a complex: every nondegenerate simplex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Closure {
    pub simplices: BTreeSet<Vec<usize>>,
    pub marked: BTreeSet<(usize, usize)>,
}

pub(crate) fn faces_of(chain: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u64..1 << chain.len()).map(move |mask| {
        chain
            .iter()
            .enumerate()
            .filter(|(r, _)| mask >> r & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

impl MarkedComplex {
    pub fn new(facets: Vec<Vec<usize>>, marked: impl IntoIterator<Item = (usize, usize)>) -> Self {
        MarkedComplex {
            facets,
            marked: marked.into_iter().collect(),
        }
    }

    pub fn closure(&self, ambient: &Ambient) -> Result<Closure> {
        let mut simplices = BTreeSet::new();
        for f in &self.facets {
            let chain = ambient.chain(f)?;
            if chain.iter().any(|&e| e >= ambient.len()) {
                return Err(Error::Invalid(format!("facet {f:?} leaves the ambient")));
            }
            simplices.extend(faces_of(&chain));
        }
        for &(a, b) in &self.marked {
            if !simplices.contains(&vec![a, b]) {
                return Err(Error::Invalid(format!("marked edge {a}->{b} is not in the complex")));
            }
        }
        Ok(Closure {
            simplices,
            marked: self.marked.clone(),
        })
    }

    /// The `K^♮` convention: every edge marked in the ambient is marked.
    pub fn natural(ambient: &Ambient, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut c = MarkedComplex::new(facets, []);
        let closure = c.closure(ambient)?;
        c.marked = closure
            .simplices
            .iter()
            .filter(|s| s.len() == 2 && ambient.is_marked(s[0], s[1]))
            .map(|s| (s[0], s[1]))
            .collect();
        Ok(c)
    }
}

impl Closure {
    /// Facets of the closure, in canonical order.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|e| t.contains(e)))
            })
            .cloned()
            .collect()
    }

    pub fn to_complex(&self) -> MarkedComplex {
        MarkedComplex {
            facets: self.facets(),
            marked: self.marked.clone(),
        }
    }
}
