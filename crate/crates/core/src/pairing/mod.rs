//! The duality pairing of a cocartesian fibration `q: Y -> T`: a left
//! fibration `M: Õ(Y/T) -> (Y^∨)^op ×_T Y` whose fibers are the fiberwise
//! mapping spaces, and the perfect-pairing check over each vertex of `T`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::cat::{homotopy_category, HomotopyCategory};
use crate::dual::shadow::{evaluate_chain, Shadowed};
use crate::dual::{dualize_cocartesian_checked, DualFibration};
use crate::fib::{fiber_homotopy_category, is_cocartesian_fibration, CheckReport, HornFamily, Witness};
use crate::sset::mapspace::{MapSpaceModel, Tuple};
use crate::sset::{fiber, opposite_map, pullback, Built, PairSet, PosetFamily, PosetShape, SSetMap, SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// `M: Õ(Y/T) -> (Y^∨)^op ×_T Y` with the pieces it is assembled from.
pub struct DualityPairing {
    pub q: SSetMap,
    /// The cocartesian dual; `dual.built` is `(Y^∨)^op`.
    pub dual: DualFibration,
    /// `(Y^∨)^op -> T`.
    pub dual_op_proj: SSetMap,
    /// Cells of `Õ(Y/T)` as maps out of the nerve of `tw[n] x [1]`.
    pub built: Built<MapSpaceModel>,
    pub shape: Arc<PosetShape>,
    /// `(Y^∨)^op ×_T Y`.
    pub base: PairSet,
    /// `M`.
    pub pairing: SSetMap,
    /// `Õ(Y/T) -> (Y^∨)^op`.
    pub source_leg: SSetMap,
    /// `Õ(Y/T) -> Y`.
    pub target_leg: SSetMap,
    /// `Õ(Y/T) -> T`.
    pub to_base: SSetMap,
}

fn target_coordinate(_: usize, t: &[usize]) -> usize {
    t[1]
}

/// An edge of `tw[n] x [1]` that moves only the right end on the source side.
fn is_forward(a: &[usize], b: &[usize]) -> bool {
    a[2] == 0 && b[2] == 0 && a[0] == b[0] && a[1] != b[1]
}

/// An edge that moves only the left end on the target side.
fn is_backward_target(a: &[usize], b: &[usize]) -> bool {
    a[2] == 1 && b[2] == 1 && a[1] == b[1]
}

/// The chain `(0,0,1) <= (0,1,1) <= ... <= (0,n,1)` carrying the `Y` leg.
fn target_spine(n: usize) -> Vec<Tuple> {
    (0..=n).map(|j| vec![0, j, 1]).collect()
}

impl DualityPairing {
    pub fn total(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }

    pub fn dual_op(&self) -> &Arc<SimplicialSet> {
        &self.dual.built.sset
    }

    /// The edge `f: u -> v` of `Y` named by a vertex of `Õ(Y/T)`.
    pub fn arrow_of_vertex(&self, v: usize) -> SimplexRef {
        let data = self.built.key(crate::sset::CellId::new(0, v));
        evaluate_chain(&self.shape, 0, data, &[vec![0, 0, 0], vec![0, 0, 1]])
    }

    /// The vertex of `(Y^∨)^op` named by the object `x` of `Y`.
    pub fn dual_vertex(&self, x: usize) -> Option<usize> {
        self.dual
            .built
            .locate(0, &vec![SimplexRef::vertex(x)])
            .map(|s| s.cell.index)
    }

    /// The object of `Y` at a vertex of `(Y^∨)^op`.
    pub fn object_of_dual_vertex(&self, a: usize) -> usize {
        self.dual.built.key(crate::sset::CellId::new(0, a))[0].cell.index
    }

    /// The vertex `id_x` of `Õ(Y/T)`.
    pub fn identity_vertex(&self, x: usize) -> Option<usize> {
        let y = self.q.domain();
        (0..self.total().count(0)).find(|&v| self.arrow_of_vertex(v) == y.constant(x, 1))
    }

    /// The vertex of the base over `(x, y)`, if `q(x) = q(y)`.
    pub fn base_vertex(&self, x: usize, y: usize) -> Option<usize> {
        let a = self.dual_vertex(x)?;
        self.base
            .pair(SimplexRef::vertex(a), SimplexRef::vertex(y))
            .map(|s| s.cell.index)
    }
}

/// Builds `Õ(Y/T)` and `M` to `max_dim`, deciding cocartesian edges of `q`
/// at `n_check`.
pub fn build_duality_pairing_checked(q: &SSetMap, max_dim: usize, n_check: usize) -> Result<DualityPairing> {
    assemble(q, max_dim, n_check, None)
}

/// The pairing with the vertex `id_x` and every simplex through it deleted.
/// Used as a negative control for the perfect-pairing check.
pub fn build_corrupted_pairing(q: &SSetMap, max_dim: usize, x: usize) -> Result<DualityPairing> {
    assemble(q, max_dim, default_check_bound(q, max_dim), Some(x))
}

fn assemble(q: &SSetMap, max_dim: usize, n_check: usize, omit: Option<usize>) -> Result<DualityPairing> {
    let report = is_cocartesian_fibration(q, n_check);
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "not a cocartesian fibration at bound {n_check}: {:?}",
            report.verdict
        )));
    }
    let dual = dualize_cocartesian_checked(q, max_dim, n_check)?;
    let dual_op_proj = opposite_map(&dual.proj).rebase(dual.built.sset.clone(), q.codomain().clone());
    let cocartesian: Arc<BTreeSet<SimplexRef>> = Arc::new(dual.cartesian.clone());

    let shape = Arc::new(PosetShape::new(PosetFamily::TwistedTimesInterval, max_dim));
    let marked = cocartesian.clone();
    let edge_ok = Arc::new(move |a: &[usize], b: &[usize], y: SimplexRef| {
        if is_forward(a, b) {
            !y.is_nondegenerate() || marked.contains(&y)
        } else if is_backward_target(a, b) {
            !y.is_nondegenerate()
        } else {
            true
        }
    });
    // The target side must factor through the right end, not just edgewise.
    let flat = shape.clone();
    let omitted = omit.map(|x| q.domain().constant(x, 1));
    let whole_ok = Arc::new(move |n: usize, data: &[SimplexRef]| {
        let nerve = flat.nerve(n);
        if let Some(id) = omitted {
            if (0..=n).any(|k| evaluate_chain(&flat, n, data, &[vec![k, k, 0], vec![k, k, 1]]) == id) {
                return false;
            }
        }
        nerve.sset().all_cells().all(|c| {
            let chain = flat.chain_tuples(n, SimplexRef::cell(c));
            if chain.iter().any(|t| t[2] == 0) {
                return true;
            }
            let pushed: Vec<Tuple> = chain.iter().map(|t| vec![0, t[1], 1]).collect();
            data[nerve.sset().flat_index(c)] == evaluate_chain(&flat, n, data, &pushed)
        })
    });
    let built = Shadowed {
        shape: shape.clone(),
        over: q.clone(),
        shadow: target_coordinate,
        edge_ok,
        whole_ok: Some(whole_ok),
    }
    .build(max_dim)?;
    let total = built.sset.clone();

    let dual_shape = dual.shape.clone();
    let mut source_images = Vec::new();
    let mut target_images = Vec::new();
    let mut base_images = Vec::new();
    for (n, level) in built.keys.iter().enumerate() {
        let dual_nerve = dual_shape.nerve(n).sset().clone();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut bas = Vec::new();
        for data in level {
            // The source side, read backwards as a map into `Y^op`.
            let key: Vec<SimplexRef> = dual_nerve
                .all_cells()
                .map(|c| {
                    let chain: Vec<Tuple> = dual_shape
                        .chain_tuples(n, SimplexRef::cell(c))
                        .iter()
                        .rev()
                        .map(|t| vec![t[0], t[1], 0])
                        .collect();
                    evaluate_chain(&shape, n, data, &chain).reversed()
                })
                .collect();
            src.push(dual.built.locate(n, &key).ok_or_else(|| {
                Error::Invalid(format!("source side of a {n}-cell is not a cell of the dual"))
            })?);
            let spine = evaluate_chain(&shape, n, data, &target_spine(n));
            tgt.push(spine);
            bas.push(q.apply(spine));
        }
        source_images.push(src);
        target_images.push(tgt);
        base_images.push(bas);
    }
    let source_leg = SSetMap::new(total.clone(), dual.built.sset.clone(), source_images)?;
    let target_leg = SSetMap::new(total.clone(), q.domain().clone(), target_images)?;
    let to_base = SSetMap::new(total.clone(), q.codomain().clone(), base_images)?;
    let base = pullback(&dual_op_proj, q)?;
    let pairing = base.pairing(&source_leg, &target_leg)?;
    Ok(DualityPairing {
        q: q.clone(),
        dual,
        dual_op_proj,
        built,
        shape,
        base,
        pairing,
        source_leg,
        target_leg,
        to_base,
    })
}

fn default_check_bound(q: &SSetMap, max_dim: usize) -> usize {
    match q.domain().faithful() {
        Some(f) => (max_dim.max(2) + 1).min(f),
        None => max_dim.max(2) + 1,
    }
}

pub fn build_duality_pairing(q: &SSetMap, max_dim: usize) -> Result<DualityPairing> {
    build_duality_pairing_checked(q, max_dim, default_check_bound(q, max_dim))
}

/// Whether vertex `x` of `c` is initial to the bound: every `∂Δ^n -> c` with
/// `n <= n_max + 1` sending vertex 0 to `x` extends over `Δ^n`. This is the
/// lifting property of `c_{x/} -> c` against `∂Δ^m`, `m <= n_max`.
pub fn is_initial(c: &Arc<SimplicialSet>, x: usize, n_max: usize) -> bool {
    let point = Arc::new(SimplicialSet::point());
    let to_point = SSetMap::to_point(c.clone(), point);
    (1..=n_max + 1).all(|n| {
        let fam = HornFamily::new(&to_point, n, None);
        let outcome = fam.scan(|faces| faces[1].is_some_and(|y| c.vertex(y, 0) == x));
        outcome.failure.is_none()
    })
}

/// Per-side outcome of the perfect-pairing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideOutcome {
    /// Object of `Y` indexing the fiber.
    pub object: usize,
    /// Vertex of `Õ(Y/T)` predicted to be initial.
    pub predicted: Option<usize>,
    pub predicted_initial: bool,
    /// Vertices of the fiber (as vertices of `Õ(Y/T)`) that are initial.
    pub initial: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    pub vertex: usize,
    pub bound: usize,
    pub source_side: Vec<SideOutcome>,
    pub target_side: Vec<SideOutcome>,
    /// Vertices of `Õ(Y/T)_t` initial on exactly one side.
    pub mismatched: Vec<usize>,
    pub check: CheckReport,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.check.passed()
    }
}

impl fmt::Display for PairingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertex: {}", self.vertex)?;
        for (name, side) in [("source", &self.source_side), ("target", &self.target_side)] {
            for s in side {
                writeln!(
                    f,
                    "{name} {}: predicted {:?} initial {} all initial {:?}",
                    s.object, s.predicted, s.predicted_initial, s.initial
                )?;
            }
        }
        writeln!(f, "mismatched: {:?}", self.mismatched)?;
        write!(f, "{}", self.check)
    }
}

/// Initial vertices of the fiber of `leg` over `v`, as vertices of the domain.
fn initial_in_fiber(leg: &SSetMap, v: usize, n_max: usize) -> Result<Vec<usize>> {
    let fib = fiber(leg, v)?;
    let c = fib.sset().clone();
    Ok((0..c.count(0))
        .filter(|&w| is_initial(&c, w, n_max))
        .map(|w| fib.first.vertex_image(w))
        .collect())
}

/// The three perfect-pairing conditions over the vertex `t` of `T`.
pub fn check_perfect_pairing(p: &DualityPairing, t: usize, n_max: usize) -> Result<PairingReport> {
    let class = "perfect pairing";
    let y = p.q.domain();
    let total = p.total();
    if !total.is_faithful_to(n_max + 1) {
        return Err(Error::Truncation {
            needed: n_max + 1,
            faithful: total.faithful().unwrap_or(0),
        });
    }
    let objects: Vec<usize> = (0..y.count(0)).filter(|&x| p.q.vertex_image(x) == t).collect();
    let mut check = CheckReport::new(class, n_max);
    let mut source_side = Vec::new();
    let mut target_side = Vec::new();
    let mut initial_source = BTreeSet::new();
    let mut initial_target = BTreeSet::new();
    for &x in &objects {
        let predicted = p.identity_vertex(x);
        let a = p
            .dual_vertex(x)
            .ok_or_else(|| Error::Invalid(format!("object {x} has no vertex in the dual")))?;
        let init = initial_in_fiber(&p.source_leg, a, n_max)?;
        initial_source.extend(init.iter().copied());
        source_side.push(SideOutcome {
            object: x,
            predicted,
            predicted_initial: predicted.is_some_and(|v| init.contains(&v)),
            initial: init,
        });
        let init = initial_in_fiber(&p.target_leg, x, n_max)?;
        initial_target.extend(init.iter().copied());
        target_side.push(SideOutcome {
            object: x,
            predicted,
            predicted_initial: predicted.is_some_and(|v| init.contains(&v)),
            initial: init,
        });
    }
    let mismatched: Vec<usize> = initial_source.symmetric_difference(&initial_target).copied().collect();
    let failure = source_side
        .iter()
        .chain(&target_side)
        .find(|s| s.initial.is_empty() || !s.predicted_initial)
        .map(|s| format!("object {}: no initial object at the predicted identity", s.object))
        .or_else(|| (!mismatched.is_empty()).then(|| format!("vertices initial on one side only: {mismatched:?}")));
    if let Some(reason) = failure {
        check = check.fail(Witness::Fiber { vertex: t, reason });
    }
    check.problems = (source_side.len() + target_side.len()) as u64;
    check.lifts = source_side.iter().chain(&target_side).filter(|s| s.predicted_initial).count() as u64;
    Ok(PairingReport {
        vertex: t,
        bound: n_max,
        source_side,
        target_side,
        mismatched,
        check,
    })
}

/// The fiber of `M` over `(x, y)`: a model of the mapping space of `Y_t`.
pub fn fiberwise_mapping_space(p: &DualityPairing, x: usize, y: usize) -> Result<Arc<SimplicialSet>> {
    let (tx, ty) = (p.q.vertex_image(x), p.q.vertex_image(y));
    if tx != ty {
        return Err(Error::Precondition(format!("objects {x} and {y} lie over different vertices {tx}, {ty}")));
    }
    let v = p
        .base_vertex(x, y)
        .ok_or_else(|| Error::Invalid(format!("({x}, {y}) is not a vertex of the base")))?;
    Ok(fiber(&p.pairing, v)?.sset().clone())
}

/// Connected components of a simplicial set.
pub fn components(x: &SimplicialSet) -> usize {
    let mut parent: Vec<usize> = (0..x.count(0)).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for &e in &x.boundary_table(1).all {
        let (a, b) = (find(&mut parent, x.vertex(e, 0)), find(&mut parent, x.vertex(e, 1)));
        parent[a.max(b)] = a.min(b);
    }
    (0..parent.len()).filter(|&v| find(&mut parent, v) == v).count()
}

/// `|π₀ Map(x, y)|` next to `|Hom(x, y)|` in the homotopy category of the fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomComparison {
    pub x: usize,
    pub y: usize,
    pub components: usize,
    pub hom: usize,
}

/// Compares every fiberwise mapping space over `t` with the hom-sets of `ho(Y_t)`.
pub fn compare_mapping_spaces(p: &DualityPairing, t: usize, n_max: usize) -> Result<Vec<HomComparison>> {
    let fib = fiber_homotopy_category(&p.q, t, n_max)?;
    let local: Vec<usize> = (0..fib.sset().count(0)).map(|w| fib.inclusion().vertex_image(w)).collect();
    let mut out = Vec::new();
    for (a, &x) in local.iter().enumerate() {
        for (b, &y) in local.iter().enumerate() {
            let space = fiberwise_mapping_space(p, x, y)?;
            out.push(HomComparison {
                x,
                y,
                components: components(&space),
                hom: fib.ho.category.hom(a, b).len(),
            });
        }
    }
    Ok(out)
}

/// For every edge of `Õ(Y/T)` from `f: u -> v` to `g: x -> y` over the span
/// `u -> w <- x` and `ξ: v -> y`: the class of `g` is `k ∘ ψ`, where `k` is the
/// unique vertical class with `k ∘ φ = ξ ∘ f`.
pub fn check_functoriality(p: &DualityPairing) -> Result<CheckReport> {
    let y = p.q.domain();
    let ho: HomotopyCategory = homotopy_category(y)?;
    let c = &ho.category;
    let mut report = CheckReport::new("pairing functoriality", 1);
    let vertical = |m: usize| !p.q.apply(ho.representatives[m]).is_nondegenerate();
    for e in p.total().cell_ids(1) {
        let data = p.built.key(e);
        let at = |a: [usize; 3], b: [usize; 3]| ho.class(evaluate_chain(&p.shape, 1, data, &[a.to_vec(), b.to_vec()]));
        let f = at([0, 0, 0], [0, 0, 1]);
        let g = at([1, 1, 0], [1, 1, 1]);
        let phi = at([0, 0, 0], [0, 1, 0]);
        let psi = at([1, 1, 0], [0, 1, 0]);
        let xi = at([0, 0, 1], [0, 1, 1]);
        let target = c.compose(xi, f);
        let (w, yy) = (c.target(phi), c.target(xi));
        let ks: Vec<usize> = c
            .hom(w, yy)
            .iter()
            .copied()
            .filter(|&k| vertical(k) && c.compose(k, phi) == target)
            .collect();
        report.problems += 1;
        match ks.as_slice() {
            [k] if c.compose(*k, psi) == Some(g) => report.lifts += 1,
            _ => {
                let reason = format!("edge {e:?}: {} vertical factorizations, recipe disagrees", ks.len());
                return Ok(report.fail(Witness::Fiber { vertex: e.index, reason }));
            }
        }
    }
    Ok(report)
}

/// The perfect-pairing check at every vertex of `T`.
pub fn check_all_vertices(p: &DualityPairing, n_max: usize) -> Result<Vec<PairingReport>> {
    (0..p.q.codomain().count(0))
        .map(|t| check_perfect_pairing(p, t, n_max))
        .collect()
}
