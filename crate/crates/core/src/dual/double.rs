use std::collections::BTreeSet;
use std::sync::Arc;

use super::cartesian_edges;
use super::dualize::check_bound;
use super::shadow::{evaluate_chain, restrict, Shadowed};
use crate::cat::{homotopy_category, HomotopyCategory};
use crate::fib::is_cartesian_fibration;
use crate::sset::mapspace::{MapSpaceModel, Tuple};
use crate::sset::{Built, PosetFamily, PosetShape, SSetMap, SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// The zigzag `X <- X' -> X^∨∨` over `S`.
pub struct DoubleDual {
    /// Squares over `S` carrying source-cartesian edges to cartesian edges.
    pub x_prime: Built<MapSpaceModel>,
    pub arrow: Arc<PosetShape>,
    /// Cells of the double dual as maps out of the two-fold subdivision.
    pub xvv: Built<MapSpaceModel>,
    pub two_fold: Arc<PosetShape>,
    pub alpha: SSetMap,
    pub beta: SSetMap,
    /// `X' -> S`.
    pub prime_proj: SSetMap,
    /// `X^∨∨ -> S`.
    pub xvv_proj: SSetMap,
}

fn source_coordinate(_: usize, t: &[usize]) -> usize {
    t[0]
}

/// The coordinates in which two comparable tuples differ.
fn changed(a: &[usize], b: &[usize]) -> Vec<usize> {
    (0..a.len()).filter(|&i| a[i] != b[i]).collect()
}

/// One per-edge condition of a double-dual cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeRule {
    Cartesian,
    Equivalence,
    Free,
}

fn rule(a: &[usize], b: &[usize]) -> EdgeRule {
    match changed(a, b).as_slice() {
        [0] => EdgeRule::Cartesian,
        [1] | [3] => EdgeRule::Equivalence,
        _ => EdgeRule::Free,
    }
}

fn edge_holds(r: EdgeRule, y: SimplexRef, cart: &BTreeSet<SimplexRef>, ho: &HomotopyCategory) -> bool {
    match r {
        EdgeRule::Free => true,
        EdgeRule::Cartesian => !y.is_nondegenerate() || cart.contains(&y),
        EdgeRule::Equivalence => ho.is_equivalence(y),
    }
}

/// The chain `(0,n,n,n) <= (1,n,n,n) <= ... <= (n,n,n,n)`, whose image lies
/// over the base simplex.
fn spine(n: usize) -> Vec<Tuple> {
    (0..=n).map(|k| vec![k, n, n, n]).collect()
}

fn projection(
    built: &Built<MapSpaceModel>,
    shape: &PosetShape,
    p: &SSetMap,
    chain: impl Fn(usize) -> Vec<Tuple>,
) -> Result<SSetMap> {
    let images = built
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|data| p.apply(evaluate_chain(shape, n, data, &chain(n))))
                .collect()
        })
        .collect();
    SSetMap::new(built.sset.clone(), p.codomain().clone(), images)
}

fn restriction_map(
    from: &Built<MapSpaceModel>,
    from_shape: &PosetShape,
    to: &Built<MapSpaceModel>,
    to_shape: &PosetShape,
    along: impl Fn(&[usize]) -> Tuple + Copy,
) -> Result<SSetMap> {
    let images = from
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|data| {
                    let restricted = restrict(from_shape, to_shape, n, data, along);
                    to.locate(n, &restricted)
                        .ok_or_else(|| Error::Invalid(format!("restriction of a {n}-cell is not a cell of the target")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::new(from.sset.clone(), to.sset.clone(), images)
}

/// Builds `X'`, the explicit double dual `X^∨∨` and the maps between them,
/// all to `max_dim`.
pub fn double_dual_prime(p: &SSetMap, max_dim: usize) -> Result<DoubleDual> {
    let n_check = check_bound(p, max_dim);
    let report = is_cartesian_fibration(p, n_check);
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "not a cartesian fibration at bound {n_check}: {:?}",
            report.verdict
        )));
    }
    let cart = Arc::new(cartesian_edges(p, n_check));
    let ho = Arc::new(homotopy_category(p.domain())?);

    let arrow = Arc::new(PosetShape::new(PosetFamily::Arrow, max_dim));
    let marked = cart.clone();
    let x_prime = Shadowed {
        shape: arrow.clone(),
        over: p.clone(),
        shadow: source_coordinate,
        edge_ok: Arc::new(move |a, b, y| a[1] != b[1] || !y.is_nondegenerate() || marked.contains(&y)),
        whole_ok: None,
    }
    .build(max_dim)?;

    let two_fold = Arc::new(PosetShape::new(PosetFamily::TwoFoldOp, max_dim));
    let (marked, classes) = (cart.clone(), ho.clone());
    let xvv = Shadowed {
        shape: two_fold.clone(),
        over: p.clone(),
        shadow: source_coordinate,
        edge_ok: Arc::new(move |a, b, y| edge_holds(rule(a, b), y, &marked, &classes)),
        whole_ok: None,
    }
    .build(max_dim)?;

    let alpha_images = x_prime
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| {
            let diagonal: Vec<Tuple> = (0..=n).map(|i| vec![i, i]).collect();
            level.iter().map(|d| evaluate_chain(&arrow, n, d, &diagonal)).collect()
        })
        .collect();
    let alpha = SSetMap::new(x_prime.sset.clone(), p.domain().clone(), alpha_images)?;
    let beta = restriction_map(&x_prime, &arrow, &xvv, &two_fold, |t| vec![t[0], t[2]])?;
    let prime_proj = alpha.then(p)?;
    let xvv_proj = projection(&xvv, &two_fold, p, spine)?;
    Ok(DoubleDual {
        x_prime,
        arrow,
        xvv,
        two_fold,
        alpha,
        beta,
        prime_proj,
        xvv_proj,
    })
}

impl DoubleDual {
    pub fn x_prime_sset(&self) -> &Arc<SimplicialSet> {
        &self.x_prime.sset
    }

    pub fn xvv_sset(&self) -> &Arc<SimplicialSet> {
        &self.xvv.sset
    }
}

/// Result of auditing one candidate double-dual cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAudit {
    pub passed: bool,
    /// Which condition failed first: 1 cartesian, 2 equivalence, 3 covering.
    pub failed_condition: Option<u8>,
    pub detail: String,
}

/// Audits a candidate `n`-cell of `X^∨∨`, given as the image of every cell
/// of the nerve of the two-fold subdivision (flat order).
pub fn double_dual_cell_audit(p: &SSetMap, n: usize, cell: &[SimplexRef], n_check: usize) -> Result<CellAudit> {
    let shape = PosetShape::new(PosetFamily::TwoFoldOp, n);
    let k = shape.nerve(n).sset().clone();
    if cell.len() != k.total_cells() {
        return Err(Error::Invalid(format!(
            "a {n}-cell needs {} images, got {}",
            k.total_cells(),
            cell.len()
        )));
    }
    let x = p.domain();
    let images = (0..k.counts().len())
        .map(|d| k.cell_ids(d).map(|c| cell[k.flat_index(c)]).collect())
        .collect();
    SSetMap::new(k.clone(), x.clone(), images)?;
    let ho = homotopy_category(x)?;
    let fail = |condition: u8, detail: String| CellAudit {
        passed: false,
        failed_condition: Some(condition),
        detail,
    };
    for c in k.cell_ids(1) {
        let ends = shape.chain_tuples(n, SimplexRef::cell(c));
        let y = cell[k.flat_index(c)];
        match rule(ends[0], ends[1]) {
            EdgeRule::Cartesian => {
                let r = crate::fib::is_cartesian_edge(p, y, n_check)?;
                if !r.passed() {
                    return Ok(fail(1, format!("edge {:?} -> {:?} is not cartesian", ends[0], ends[1])));
                }
            }
            EdgeRule::Equivalence => {
                if !ho.is_equivalence(y) {
                    return Ok(fail(2, format!("edge {:?} -> {:?} is not an equivalence", ends[0], ends[1])));
                }
            }
            EdgeRule::Free => {}
        }
    }
    let sigma = p.apply(evaluate_chain(&shape, n, cell, &spine(n)));
    let s = p.codomain();
    for c in k.all_cells() {
        let a: Vec<usize> = shape.chain_tuples(n, SimplexRef::cell(c)).iter().map(|t| t[0]).collect();
        if p.apply(cell[k.flat_index(c)]) != s.pull(sigma, &a) {
            return Ok(fail(3, format!("cell {c:?} does not cover the pulled-back base simplex")));
        }
    }
    Ok(CellAudit {
        passed: true,
        failed_condition: None,
        detail: String::new(),
    })
}
