//! Adequate triples, effective Burnside simplicial sets, the dual of a
//! (co)cartesian fibration and the double-dual zigzag.

mod burnside;
mod double;
mod dualize;
pub(crate) mod shadow;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::cat::homotopy_category;
use crate::fib::{is_cartesian_edge, is_cartesian_fibration};
use crate::sset::{SSetMap, SimplexRef, SimplicialSet};
use crate::{Error, Result};

pub use burnside::{eff_burnside, is_pullback_square, span_triple, Burnside};
pub use double::{double_dual_cell_audit, double_dual_prime, CellAudit, DoubleDual};
pub use dualize::{dualize_cartesian, dualize_cartesian_checked, dualize_cocartesian, dualize_cocartesian_checked, DualFibration};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleMode {
    /// The ambient is a nerve; pullbacks are checked in its homotopy category.
    Categorical,
    /// Conditions are phrased through cartesian edges; no pullbacks are formed.
    Fibration,
}

/// `(C, C_†, C^†)` with both subcategories given by their edges.
#[derive(Clone, Debug)]
pub struct AdequateTriple {
    pub ambient: Arc<SimplicialSet>,
    pub ingressive: BTreeSet<SimplexRef>,
    pub egressive: BTreeSet<SimplexRef>,
    pub mode: TripleMode,
}

impl AdequateTriple {
    /// Every edge is both ingressive and egressive.
    pub fn full(ambient: Arc<SimplicialSet>, mode: TripleMode) -> Self {
        let all: BTreeSet<SimplexRef> = ambient.boundary_table(1).all.iter().copied().collect();
        AdequateTriple {
            ambient,
            ingressive: all.clone(),
            egressive: all,
            mode,
        }
    }
}

/// Edges invertible in the homotopy category.
pub fn equivalences(x: &SimplicialSet) -> Result<BTreeSet<SimplexRef>> {
    let ho = homotopy_category(x)?;
    Ok(x.boundary_table(1)
        .all
        .iter()
        .copied()
        .filter(|&e| ho.is_equivalence(e))
        .collect())
}

/// Cartesian edges of `p` at the bound.
pub fn cartesian_edges(p: &SSetMap, n_max: usize) -> BTreeSet<SimplexRef> {
    p.domain()
        .boundary_table(1)
        .all
        .iter()
        .copied()
        .filter(|&e| is_cartesian_edge(p, e, n_max).map(|r| r.passed()).unwrap_or(false))
        .collect()
}

/// `(S, ιS, S)` and `(X, X ×_S ιS, ι^S X)` for a cartesian fibration.
pub struct MarkedSubcats {
    pub base: AdequateTriple,
    pub total: AdequateTriple,
}

pub fn marked_subcats(p: &SSetMap, n_max: usize) -> Result<MarkedSubcats> {
    let report = is_cartesian_fibration(p, n_max);
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "not a cartesian fibration at bound {n_max}: {:?}",
            report.verdict
        )));
    }
    let (x, s) = (p.domain().clone(), p.codomain().clone());
    let base_eq = equivalences(&s)?;
    let base = AdequateTriple {
        ambient: s.clone(),
        ingressive: base_eq.clone(),
        egressive: s.boundary_table(1).all.iter().copied().collect(),
        mode: TripleMode::Fibration,
    };
    let over_eq = x
        .boundary_table(1)
        .all
        .iter()
        .copied()
        .filter(|&e| base_eq.contains(&p.apply(e)))
        .collect();
    let total = AdequateTriple {
        ambient: x,
        ingressive: over_eq,
        egressive: cartesian_edges(p, n_max),
        mode: TripleMode::Fibration,
    };
    Ok(MarkedSubcats { base, total })
}

/// Outcome of the adequacy audit.
#[derive(Clone, Debug, Default)]
pub struct AdequacyAudit {
    pub passed: bool,
    /// Everything checked holds only through 2-simplices.
    pub bound: usize,
    pub flagged: Vec<String>,
}

/// Both predicates contain the degenerate edges and the equivalences, and are
/// closed under composition along 2-simplices.
pub fn adequacy_audit(t: &AdequateTriple) -> Result<AdequacyAudit> {
    let x = &t.ambient;
    let eq = equivalences(x)?;
    let mut flagged = Vec::new();
    for (name, set) in [("ingressive", &t.ingressive), ("egressive", &t.egressive)] {
        for &e in &x.boundary_table(1).all {
            if !e.is_nondegenerate() && !set.contains(&e) {
                flagged.push(format!("{name}: misses degenerate edge {e:?}"));
            }
        }
        for e in &eq {
            if !set.contains(e) {
                flagged.push(format!("{name}: misses equivalence {e:?}"));
            }
        }
        for &t2 in &x.boundary_table(2).all {
            let f = x.faces(t2);
            if set.contains(&f[2]) && set.contains(&f[0]) && !set.contains(&f[1]) {
                flagged.push(format!("{name}: composite {:?} of {:?} and {:?} missing", f[1], f[2], f[0]));
            }
        }
    }
    Ok(AdequacyAudit {
        passed: flagged.is_empty(),
        bound: 2,
        flagged,
    })
}
