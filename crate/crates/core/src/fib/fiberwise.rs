use std::sync::Arc;

use super::{is_quasicategory, is_trivial_fibration, CheckReport, Witness};
use crate::cat::{cat_equivalence, homotopy_category, nerve, CatFunctor, HomotopyCategory};
use crate::sset::{fiber, PairSet, SSetMap, SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// The fiber of `p` over a vertex with its homotopy category.
pub struct FiberData {
    pub fiber: PairSet,
    pub ho: HomotopyCategory,
}

impl FiberData {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        self.fiber.sset()
    }

    /// The inclusion of the fiber into the total space.
    pub fn inclusion(&self) -> &SSetMap {
        &self.fiber.first
    }
}

/// The fiber over `s`, required to be a quasicategory to `n_max`.
pub fn fiber_homotopy_category(p: &SSetMap, s: usize, n_max: usize) -> Result<FiberData> {
    let fib = fiber(p, s)?;
    let qc = is_quasicategory(fib.sset(), n_max);
    if !qc.passed() {
        return Err(Error::NotQuasicategory {
            bound: n_max,
            reason: format!("fiber over vertex {s}: {:?}", qc.verdict),
        });
    }
    let ho = homotopy_category(fib.sset())?;
    Ok(FiberData { fiber: fib, ho })
}

/// The functor of homotopy categories induced by `f: X -> Y`.
pub fn ho_functor(f: &SSetMap, hx: &HomotopyCategory, hy: &HomotopyCategory) -> Result<CatFunctor> {
    let on_objects = (0..f.domain().count(0)).map(|v| f.vertex_image(v)).collect();
    let on_morphisms = hx.representatives.iter().map(|&e| hy.class(f.apply(e))).collect();
    CatFunctor::new(hx.category.clone(), hy.category.clone(), on_objects, on_morphisms)
}

/// The map of fibers over `s` induced by `f` over the base.
fn fiber_map(f: &SSetMap, fx: &PairSet, fy: &PairSet) -> Result<SSetMap> {
    let images = fx
        .built
        .keys
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|(a, b)| {
                    fy.built
                        .locate(n, &(f.apply(*a), *b))
                        .ok_or_else(|| Error::Invalid("map does not preserve fibers".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::new(fx.sset().clone(), fy.sset().clone(), images)
}

/// The projection of a quasicategory to the nerve of its homotopy category.
fn to_nerve_of_ho(x: &Arc<SimplicialSet>, ho: &HomotopyCategory, n_max: usize) -> Result<SSetMap> {
    let top = x.max_dim().unwrap_or(0).max(n_max).max(1);
    let nv = nerve(ho.category.clone(), top)?;
    let images = (0..x.counts().len())
        .map(|d| {
            x.cell_ids(d)
                .map(|c| {
                    let s = SimplexRef::cell(c);
                    if d == 0 {
                        return Ok(SimplexRef::vertex(c.index));
                    }
                    let string: Vec<usize> = (0..d).map(|k| ho.class(x.edge(s, k, k + 1))).collect();
                    let start = x.vertex(s, 0);
                    nv.built
                        .locate(d, &(start, string))
                        .ok_or(Error::Truncation { needed: d, faithful: top })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::new(x.clone(), nv.sset().clone(), images)
}

/// For each vertex `s` of the base, compares the fibers of `p` and `q` through
/// `f`: the fibers must be quasicategories to the bound, `f` must induce an
/// equivalence of homotopy categories, and both fibers must pass a
/// discreteness audit (the projection to the nerve of the homotopy category is
/// a trivial fibration to `audit` dimensions).
pub fn fiberwise_equivalence(f: &SSetMap, p: &SSetMap, q: &SSetMap, n_max: usize, audit: usize) -> CheckReport {
    let class = "fiberwise-equivalence";
    let mut report = CheckReport::new(class, n_max);
    match f.then(q) {
        Ok(qf) if qf.images() == p.images() => {}
        _ => {
            return CheckReport::inconclusive(class, n_max, "the map does not commute with the projections".into());
        }
    }
    for s in 0..p.codomain().count(0) {
        let outcome = (|| -> Result<Option<String>> {
            let fx = fiber_homotopy_category(p, s, n_max)?;
            let fy = fiber_homotopy_category(q, s, n_max)?;
            let fs = fiber_map(f, &fx.fiber, &fy.fiber)?;
            let functor = ho_functor(&fs, &fx.ho, &fy.ho)?;
            let verdict = cat_equivalence(&functor);
            if !verdict.equivalence {
                return Ok(verdict.reason);
            }
            for (side, data) in [("source", &fx), ("target", &fy)] {
                let proj = to_nerve_of_ho(data.sset(), &data.ho, audit)?;
                let r = is_trivial_fibration(&proj, audit);
                if !r.passed() {
                    return Ok(Some(format!("{side} fiber fails the discreteness audit at {audit}")));
                }
            }
            Ok(None)
        })();
        match outcome {
            Ok(None) => report.lifts += 1,
            Ok(Some(reason)) => return report.fail(Witness::Fiber { vertex: s, reason }),
            Err(e) => return CheckReport::inconclusive(class, n_max, format!("fiber over {s}: {e}")),
        }
        report.problems += 1;
    }
    report
}
