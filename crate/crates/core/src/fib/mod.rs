//! Bounded lifting-property checks for maps of simplicial sets.

mod fiberwise;
mod horns;
mod lift;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::sset::{opposite, opposite_map, SSetMap, SimplexRef, SimplicialSet};

pub use fiberwise::{fiber_homotopy_category, fiberwise_equivalence, ho_functor, FiberData};
pub use horns::HornFamily;
pub use lift::{has_lift, LiftingProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The inputs are not known to dimension `bound`.
    Inconclusive,
}

/// Why a check failed.
#[derive(Clone, Debug)]
pub enum Witness {
    /// A square with no diagonal filler.
    Lifting(LiftingProblem),
    /// A vertex and an edge into its image with no cartesian lift.
    MissingLift { vertex: usize, edge: SimplexRef },
    /// A fiber whose comparison failed.
    Fiber { vertex: usize, reason: String },
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub class: String,
    pub verdict: Verdict,
    pub bound: usize,
    pub counterexample: Option<Witness>,
    /// Lifting problems enumerated.
    pub problems: u64,
    /// Lifting problems that were solved.
    pub lifts: u64,
    pub note: Option<String>,
}

impl CheckReport {
    pub(crate) fn new(class: impl Into<String>, bound: usize) -> Self {
        CheckReport {
            class: class.into(),
            verdict: Verdict::Pass,
            bound,
            counterexample: None,
            problems: 0,
            lifts: 0,
            note: None,
        }
    }

    pub(crate) fn inconclusive(class: impl Into<String>, bound: usize, note: String) -> Self {
        CheckReport {
            verdict: Verdict::Inconclusive,
            note: Some(note),
            ..Self::new(class, bound)
        }
    }

    pub(crate) fn fail(mut self, witness: Witness) -> Self {
        self.verdict = Verdict::Fail;
        self.counterexample = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn absorb(&mut self, other: &CheckReport) {
        self.problems += other.problems;
        self.lifts += other.lifts;
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        };
        writeln!(f, "class: {}", self.class)?;
        writeln!(f, "verdict: {verdict}")?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "problems: {}", self.problems)?;
        writeln!(f, "lifts: {}", self.lifts)?;
        if let Some(w) = &self.counterexample {
            match w {
                Witness::Lifting(p) => writeln!(f, "counterexample: {}", p.describe())?,
                Witness::MissingLift { vertex, edge } => {
                    writeln!(f, "counterexample: no cartesian lift at vertex {vertex} of edge {edge:?}")?
                }
                Witness::Fiber { vertex, reason } => writeln!(f, "counterexample: fiber over {vertex}: {reason}")?,
            }
        }
        if let Some(n) = &self.note {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Checks that both ends of `p` are known through dimension `bound`.
fn faithful_at(p: &SSetMap, bound: usize) -> Option<String> {
    for (name, x) in [("domain", p.domain()), ("codomain", p.codomain())] {
        if !x.is_faithful_to(bound) {
            return Some(format!(
                "{name} is only known to dimension {}",
                x.faithful().unwrap_or(0)
            ));
        }
    }
    None
}

/// Runs the horn families `(n, omitted)` in order and reports the first failure.
fn run_families(class: &str, p: &SSetMap, bound: usize, families: Vec<(usize, Option<usize>)>) -> CheckReport {
    if let Some(note) = faithful_at(p, bound) {
        return CheckReport::inconclusive(class, bound, note);
    }
    let mut report = CheckReport::new(class, bound);
    for (n, omitted) in families {
        let fam = HornFamily::new(p, n, omitted);
        let outcome = fam.scan(|_| true);
        report.problems += outcome.problems;
        report.lifts += outcome.lifts;
        if let Some((faces, sigma)) = outcome.failure {
            return report.fail(Witness::Lifting(fam.problem(&faces, sigma)));
        }
    }
    report
}

/// RLP against `Λ^n_k`, `0 < k < n <= n_max`.
pub fn is_inner_fibration(p: &SSetMap, n_max: usize) -> CheckReport {
    let fams = (2..=n_max).flat_map(|n| (1..n).map(move |k| (n, Some(k)))).collect();
    run_families("inner", p, n_max, fams)
}

/// RLP against `Λ^n_k`, `0 <= k < n <= n_max`.
pub fn is_left_fibration(p: &SSetMap, n_max: usize) -> CheckReport {
    let fams = (1..=n_max).flat_map(|n| (0..n).map(move |k| (n, Some(k)))).collect();
    run_families("left", p, n_max, fams)
}

/// RLP against `Λ^n_k`, `0 < k <= n <= n_max`.
pub fn is_right_fibration(p: &SSetMap, n_max: usize) -> CheckReport {
    let fams = (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, Some(k)))).collect();
    run_families("right", p, n_max, fams)
}

/// RLP against `∂Δ^n ⊂ Δ^n`, `0 <= n <= n_max`.
pub fn is_trivial_fibration(p: &SSetMap, n_max: usize) -> CheckReport {
    let fams = (0..=n_max).map(|n| (n, None)).collect();
    run_families("trivial", p, n_max, fams)
}

/// Whether `X -> Δ^0` is an inner fibration to the bound.
pub fn is_quasicategory(x: &Arc<SimplicialSet>, n_max: usize) -> CheckReport {
    let point = Arc::new(SimplicialSet::point());
    let mut r = is_inner_fibration(&SSetMap::to_point(x.clone(), point), n_max);
    r.class = "quasicategory".into();
    r
}

/// Extension along `Λ^n_n` whose final edge goes to `e`, for `2 <= n <= n_max`.
pub fn is_cartesian_edge(p: &SSetMap, e: SimplexRef, n_max: usize) -> crate::Result<CheckReport> {
    if e.dim() != 1 {
        return Err(crate::Error::Invalid(format!("{e:?} is not an edge")));
    }
    if e.cell.dim > 1 || e.cell.index >= p.domain().count(e.cell.dim) {
        return Err(crate::Error::Invalid(format!("{e:?} is not an edge of the domain")));
    }
    Ok(cartesian_edge_report(p, e, n_max))
}

fn cartesian_edge_report(p: &SSetMap, e: SimplexRef, n_max: usize) -> CheckReport {
    if let Some(note) = faithful_at(p, n_max) {
        return CheckReport::inconclusive("cartesian-edge", n_max, note);
    }
    let x = p.domain();
    let mut report = CheckReport::new("cartesian-edge", n_max);
    for n in 2..=n_max {
        let fam = HornFamily::new(p, n, Some(n));
        let outcome = fam.scan(|faces| x.edge(faces[0].expect("face 0 present"), n - 2, n - 1) == e);
        report.problems += outcome.problems;
        report.lifts += outcome.lifts;
        if let Some((faces, sigma)) = outcome.failure {
            return report.fail(Witness::Lifting(fam.problem(&faces, sigma)));
        }
    }
    report
}

/// Same test with the first edge: `e` is `p`-cocartesian.
pub fn is_cocartesian_edge(p: &SSetMap, e: SimplexRef, n_max: usize) -> crate::Result<CheckReport> {
    let op = op_map(p);
    let mut r = is_cartesian_edge(&op, e.reversed(), n_max)?;
    r.class = "cocartesian-edge".into();
    Ok(r)
}

/// `p^op: X^op -> S^op`.
pub fn op_map(p: &SSetMap) -> SSetMap {
    opposite_map(p)
}

/// Edges of the domain (including degenerate ones) ending at `x` over `eta`.
fn edges_over(p: &SSetMap, x: usize, eta: SimplexRef) -> Vec<SimplexRef> {
    let dom = p.domain();
    dom.boundary_table(1)
        .all
        .iter()
        .copied()
        .filter(|&e| dom.vertex(e, 1) == x && p.apply(e) == eta)
        .collect()
}

/// Inner fibration plus a cartesian lift of every edge into the image of every
/// vertex.
pub fn is_cartesian_fibration(p: &SSetMap, n_max: usize) -> CheckReport {
    let inner = is_inner_fibration(p, n_max);
    if !inner.passed() {
        let mut r = inner;
        r.class = "cartesian".into();
        return r;
    }
    let mut report = CheckReport::new("cartesian", n_max);
    report.absorb(&inner);
    let (x, s) = (p.domain(), p.codomain());
    let s_edges = s.boundary_table(1).all.clone();
    for v in 0..x.count(0) {
        let pv = p.vertex_image(v);
        for &eta in s_edges.iter().filter(|&&eta| s.vertex(eta, 1) == pv) {
            let mut found = false;
            for e in edges_over(p, v, eta) {
                let r = cartesian_edge_report(p, e, n_max);
                report.absorb(&r);
                if r.passed() {
                    found = true;
                    break;
                }
            }
            if !found {
                return report.fail(Witness::MissingLift { vertex: v, edge: eta });
            }
        }
    }
    report
}

/// The cartesian check run on `p^op`.
pub fn is_cocartesian_fibration(p: &SSetMap, n_max: usize) -> CheckReport {
    let mut r = is_cartesian_fibration(&op_map(p), n_max);
    r.class = "cocartesian".into();
    r
}

/// The opposite of a map together with its (new) domain and codomain.
pub fn opposite_with_ends(p: &SSetMap) -> (Arc<SimplicialSet>, Arc<SimplicialSet>, SSetMap) {
    let dom = Arc::new(opposite(p.domain()));
    let cod = Arc::new(opposite(p.codomain()));
    let m = p.opposite(dom.clone(), cod.clone());
    (dom, cod, m)
}

/// Checks that the `p`-cocartesian edges of `dual.proj` are exactly the spans
/// whose forward leg is invertible in the homotopy category of `X`.
pub fn cocartesian_edge_characterization(dual: &crate::dual::DualFibration, n_max: usize) -> CheckReport {
    let p = &dual.proj;
    if let Some(note) = faithful_at(p, n_max) {
        return CheckReport::inconclusive("cocartesian-characterization", n_max, note);
    }
    let mut report = CheckReport::new("cocartesian-characterization", n_max);
    let predicted = match dual.invertible_forward_legs() {
        Ok(v) => v,
        Err(e) => {
            return CheckReport::inconclusive("cocartesian-characterization", n_max, e.to_string());
        }
    };
    let total = p.domain();
    for (k, e) in total.boundary_table(1).all.iter().enumerate() {
        // The dual of a cocartesian fibration is cartesian; its legs classify
        // cartesian edges instead.
        let r = if dual.opposite {
            is_cartesian_edge(p, *e, n_max)
        } else {
            is_cocartesian_edge(p, *e, n_max)
        }
        .expect("edges of the total space");
        report.absorb(&r);
        if r.passed() != predicted[k] {
            return report.fail(Witness::Fiber {
                vertex: total.vertex(*e, 0),
                reason: format!(
                    "edge {e:?}: edge check {} but forward leg {}",
                    if r.passed() { "passes" } else { "fails" },
                    if predicted[k] { "invertible" } else { "not invertible" }
                ),
            });
        }
    }
    report
}
