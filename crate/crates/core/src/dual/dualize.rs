use std::collections::BTreeSet;
use std::sync::Arc;

use super::shadow::Shadowed;
use super::cartesian_edges;
use crate::cat::homotopy_category;
use crate::fib::is_cartesian_fibration;
use crate::sset::mapspace::MapSpaceModel;
use crate::sset::{opposite, opposite_map, Built, PosetFamily, PosetShape, SSetMap, SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// The dual `X^∨ -> S^op` of a cartesian fibration `X -> S`, or the opposite
/// of such a dual when built from a cocartesian fibration.
pub struct DualFibration {
    /// Cells as maps out of the twisted-arrow nerves, for the cartesian side.
    pub built: Built<MapSpaceModel>,
    pub shape: Arc<PosetShape>,
    /// The cartesian fibration that was dualized.
    pub source: SSetMap,
    pub cartesian: BTreeSet<SimplexRef>,
    /// Whether `total` and `proj` are the opposites of the built dual.
    pub opposite: bool,
    pub total: Arc<SimplicialSet>,
    pub base_op: Arc<SimplicialSet>,
    pub proj: SSetMap,
}

fn shadow(n: usize, t: &[usize]) -> usize {
    n - t[1]
}

impl DualFibration {
    fn leg(&self, n: usize, data: &[SimplexRef], from: [usize; 2], to: [usize; 2]) -> SimplexRef {
        let nerve = self.shape.nerve(n);
        let chain = [self.shape.element_index(n, &from), self.shape.element_index(n, &to)];
        self.built.model.evaluate(n, &data.to_vec(), nerve.chain(&chain))
    }

    /// The span `x <- u -> y` of a nondegenerate edge of the built dual:
    /// the cartesian leg and the vertical leg.
    pub fn span(&self, e: SimplexRef) -> Option<(SimplexRef, SimplexRef)> {
        let e = if self.opposite { e.reversed() } else { e };
        if e.dim() != 1 || !e.is_nondegenerate() {
            return None;
        }
        let data = self.built.key(e.cell);
        Some((self.leg(1, data, [0, 1], [0, 0]), self.leg(1, data, [0, 1], [1, 1])))
    }

    /// For every edge of the total space, whether its vertical leg is an
    /// equivalence. Degenerate edges count as invertible.
    pub fn invertible_forward_legs(&self) -> Result<Vec<bool>> {
        let ho = homotopy_category(self.source.domain())?;
        Ok(self
            .total
            .boundary_table(1)
            .all
            .iter()
            .map(|&e| self.span(e).is_none_or(|(_, g)| ho.is_equivalence(g)))
            .collect())
    }
}

/// The default bound for the cartesian-edge checks behind a dual.
pub(crate) fn check_bound(p: &SSetMap, max_dim: usize) -> usize {
    let want = max_dim.max(2) + 1;
    match p.domain().faithful() {
        Some(f) => want.min(f),
        None => want,
    }
}

pub fn dualize_cartesian(p: &SSetMap, max_dim: usize) -> Result<DualFibration> {
    dualize_cartesian_checked(p, max_dim, check_bound(p, max_dim))
}

/// Builds `X^∨` to `max_dim`, with cartesian edges decided at `n_check`.
pub fn dualize_cartesian_checked(p: &SSetMap, max_dim: usize, n_check: usize) -> Result<DualFibration> {
    let report = is_cartesian_fibration(p, n_check);
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "not a cartesian fibration at bound {n_check}: {:?}",
            report.verdict
        )));
    }
    let cartesian = cartesian_edges(p, n_check);
    let shape = Arc::new(PosetShape::new(PosetFamily::TwistedOp, max_dim));
    let marked = cartesian.clone();
    let built = Shadowed {
        shape: shape.clone(),
        over: p.clone(),
        shadow,
        edge_ok: Arc::new(move |a, b, y| a[0] != b[0] || marked.contains(&y)),
        whole_ok: None,
    }
    .build(max_dim)?;
    let total = built.sset.clone();
    let base = p.codomain();
    let base_op = Arc::new(opposite(base));
    let images = built
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| {
            let nerve = shape.nerve(n);
            let chain: Vec<usize> = (0..=n).map(|j| shape.element_index(n, &[0, n - j])).collect();
            let along = nerve.chain(&chain);
            level
                .iter()
                .map(|data| p.apply(built.model.evaluate(n, data, along)).reversed())
                .collect()
        })
        .collect();
    let proj = SSetMap::new(total.clone(), base_op.clone(), images)?;
    Ok(DualFibration {
        built,
        shape,
        source: p.clone(),
        cartesian,
        opposite: false,
        total,
        base_op,
        proj,
    })
}

pub fn dualize_cocartesian(q: &SSetMap, max_dim: usize) -> Result<DualFibration> {
    let qop = opposite_map(q);
    let n_check = check_bound(&qop, max_dim);
    dualize_cocartesian_checked(q, max_dim, n_check)
}

/// The opposite of the dual of `q^op`, so that dualizing commutes with
/// opposites on the nose.
pub fn dualize_cocartesian_checked(q: &SSetMap, max_dim: usize, n_check: usize) -> Result<DualFibration> {
    let inner = dualize_cartesian_checked(&opposite_map(q), max_dim, n_check)?;
    let proj = opposite_map(&inner.proj);
    Ok(DualFibration {
        opposite: true,
        total: proj.domain().clone(),
        base_op: proj.codomain().clone(),
        proj,
        ..inner
    })
}
