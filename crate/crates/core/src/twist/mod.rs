//! Edgewise subdivisions: the twisted arrow construction, its two-fold
//! variant, and the arrow simplicial set `Fun(Δ^1, X)`.

use std::sync::Arc;

use crate::fib::{is_left_fibration, CheckReport};
use crate::sset::{
    build, exponential, opposite, product_capped, Built, FunctionSpace, PairSet, SSetMap, SimplexModel,
    SimplexRef, SimplicialSet,
};
use crate::{Error, Result};

/// `n`-simplices are simplices of `X` of dimension `b(n+1) - 1`, read as `b`
/// consecutive blocks of `n+1` vertices; a reversed block lists its vertices
/// from `n` down to `0`.
pub struct EdgewiseModel {
    pub base: Arc<SimplicialSet>,
    pub reversed: Vec<bool>,
}

impl EdgewiseModel {
    pub fn stride(&self, n: usize) -> usize {
        self.reversed.len() * (n + 1) - 1
    }

    /// Position of vertex `k` of block `b` in an `n`-simplex.
    pub fn position(&self, n: usize, b: usize, k: usize) -> usize {
        b * (n + 1) + if self.reversed[b] { n - k } else { k }
    }

    fn reindex(&self, old: usize, new: usize, vmap: impl Fn(usize) -> usize) -> Vec<usize> {
        let mut theta = Vec::with_capacity(self.stride(new) + 1);
        for b in 0..self.reversed.len() {
            for q in 0..=new {
                let k = if self.reversed[b] { new - q } else { q };
                theta.push(self.position(old, b, vmap(k)));
            }
        }
        theta
    }

    /// The edge of `X` from vertex `k` of the first block to vertex `k` of the
    /// last; for `Õ(X)` this is the vertex `(y_{n-k}, y_{n+1+k})`.
    pub fn vertex_edge(&self, n: usize, key: &SimplexRef, k: usize) -> SimplexRef {
        let last = self.reversed.len() - 1;
        let (a, b) = (self.position(n, 0, k), self.position(n, last, k));
        self.base.edge(*key, a, b)
    }

    /// The restriction of an `n`-simplex to block `b`, as an `n`-simplex of
    /// `X` listed in block order.
    pub fn block(&self, n: usize, key: &SimplexRef, b: usize) -> SimplexRef {
        let theta: Vec<usize> = (0..=n).map(|q| b * (n + 1) + q).collect();
        self.base.pull(*key, &theta)
    }
}

impl SimplexModel for EdgewiseModel {
    type Key = SimplexRef;

    fn candidates(&self, n: usize) -> Result<Vec<SimplexRef>> {
        Ok(self.base.simplices(self.stride(n)))
    }

    fn face(&self, i: usize, n: usize, key: &SimplexRef) -> SimplexRef {
        let theta = self.reindex(n, n - 1, |k| if k < i { k } else { k + 1 });
        self.base.pull(*key, &theta)
    }

    fn degeneracy(&self, j: usize, n: usize, key: &SimplexRef) -> SimplexRef {
        let theta = self.reindex(n, n + 1, |k| if k <= j { k } else { k - 1 });
        self.base.pull(*key, &theta)
    }

    fn label(&self, n: usize, key: &SimplexRef) -> Option<String> {
        if n > 0 {
            return None;
        }
        let x = &self.base;
        let names: Vec<String> = (0..=self.stride(0))
            .map(|p| x.display(crate::sset::CellId::new(0, x.vertex(*key, p))))
            .collect();
        Some(names.join(""))
    }
}

fn edgewise(x: Arc<SimplicialSet>, reversed: Vec<bool>, max_dim: usize) -> Result<Built<EdgewiseModel>> {
    let blocks = reversed.len();
    let needed = blocks * (max_dim + 1) - 1;
    let exact = x.faithful().is_none();
    if !exact && !x.is_faithful_to(needed) {
        return Err(Error::Truncation {
            needed,
            faithful: x.faithful().unwrap_or(0),
        });
    }
    // A nondegenerate n-simplex has at least n uncollapsed gaps, so nothing
    // survives above dim X.
    let top = x.max_dim().unwrap_or(0);
    let faithful = if exact && max_dim >= top { None } else { Some(max_dim) };
    let dim = if exact { max_dim.min(top) } else { max_dim };
    build(EdgewiseModel { base: x, reversed }, dim, faithful)
}

/// `Õ(X)` with its projection to `X^op x X`.
pub struct TwistedArrow {
    pub built: Built<EdgewiseModel>,
    pub base_op: Arc<SimplicialSet>,
    pub product: PairSet,
    pub proj: SSetMap,
}

impl TwistedArrow {
    pub fn total(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }

    pub fn base(&self) -> &Arc<SimplicialSet> {
        &self.built.model.base
    }

    /// The underlying `(2n+1)`-simplex of `X`.
    pub fn underlying(&self, s: SimplexRef) -> SimplexRef {
        let model = &self.built.model;
        let key = *self.built.key(s.cell);
        let theta = model.reindex(s.cell.dim, s.dim(), |k| s.degeneracy.apply(k));
        model.base.pull(key, &theta)
    }

    /// The vertex of `Õ(X)` for an edge of `X`.
    pub fn vertex_of_edge(&self, e: SimplexRef) -> usize {
        self.built.cell_of(0, &e).expect("every edge is a vertex").index
    }
}

pub fn twisted_arrow(x: Arc<SimplicialSet>, max_dim: usize) -> Result<TwistedArrow> {
    let built = edgewise(x.clone(), vec![true, false], max_dim)?;
    let base_op = Arc::new(opposite(&x));
    let total = built.sset.clone();
    // The codomain is needed to the requested dimension for lifting checks,
    // even when the total space stops earlier.
    let cap = max_dim.max(1);
    let product = product_capped(base_op.clone(), x.clone(), Some(cap));
    let mut images = Vec::new();
    for (n, level) in built.keys.iter().enumerate() {
        let row = level
            .iter()
            .map(|y| {
                let left = built.model.block(n, y, 0).reversed();
                let right = built.model.block(n, y, 1);
                product.pair(left, right).ok_or(Error::Truncation {
                    needed: n,
                    faithful: cap,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(row);
    }
    let proj = SSetMap::new(total, product.sset().clone(), images)?;
    Ok(TwistedArrow {
        built,
        base_op,
        product,
        proj,
    })
}

/// Runs the left-fibration check on the projection `Õ(X) -> X^op x X`.
pub fn twisted_arrow_projection_check(t: &TwistedArrow, n_max: usize) -> CheckReport {
    is_left_fibration(&t.proj, n_max)
}

/// `Õ⁽²⁾(X)`, with `k`-simplices the `(4k+3)`-simplices of `X` read in
/// blocks reversed, plain, reversed, plain.
pub fn two_fold_twist(x: Arc<SimplicialSet>, max_dim: usize) -> Result<Built<EdgewiseModel>> {
    edgewise(x, vec![true, false, true, false], max_dim)
}

/// `O(X) = Fun(Δ^1, X)` with evaluation at the source and at the target.
pub struct ArrowSet {
    pub space: FunctionSpace,
    pub source: SSetMap,
    pub target: SSetMap,
}

impl ArrowSet {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        self.space.sset()
    }
}

pub fn arrow_sset(x: Arc<SimplicialSet>, max_dim: usize) -> Result<ArrowSet> {
    let space = exponential(crate::sset::standard_simplex(1), x, max_dim)?;
    let source = space.evaluation(0);
    let target = space.evaluation(1);
    Ok(ArrowSet { space, source, target })
}
