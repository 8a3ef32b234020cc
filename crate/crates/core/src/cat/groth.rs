//! Grothendieck fibrations, cleavages and the classical span dual.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::category::{FinCategory, Morphism};
use super::functor::CatFunctor;
use crate::{Error, Result};

/// Whether `phi` is cartesian for `p`: every `psi` into its target whose
/// image factors through `p(phi)` via `u` factors uniquely through `phi` over `u`.
pub fn is_cartesian_morphism(p: &CatFunctor, phi: usize) -> bool {
    let (x, s) = (&p.source, &p.target);
    let (y, tgt) = (x.source(phi), x.target(phi));
    let pphi = p.morphism(phi);
    for z in 0..x.object_count() {
        for &psi in x.hom(z, tgt) {
            for &u in s.hom(p.object(z), p.object(y)) {
                if s.compose(pphi, u) != Some(p.morphism(psi)) {
                    continue;
                }
                let count = x
                    .hom(z, y)
                    .iter()
                    .filter(|&&chi| p.morphism(chi) == u && x.compose(phi, chi) == Some(psi))
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// A functor with a chosen cartesian lift for every `(x, eta: s -> p(x))`.
#[derive(Clone, Debug)]
pub struct GrothFibration {
    pub functor: CatFunctor,
    /// `(x, eta) -> lift`, a cartesian morphism with target `x` over `eta`.
    pub lifts: BTreeMap<(usize, usize), usize>,
}

/// Either a cleavage or the first `(x, eta)` without a cartesian lift.
#[derive(Clone, Debug)]
pub enum FibrationVerdict {
    Fibration(GrothFibration),
    Witness { object: usize, morphism: usize },
}

impl FibrationVerdict {
    pub fn fibration(self) -> Option<GrothFibration> {
        match self {
            FibrationVerdict::Fibration(f) => Some(f),
            FibrationVerdict::Witness { .. } => None,
        }
    }
}

/// Searches for cartesian lifts exhaustively. Identities are chosen over
/// identities; otherwise the first cartesian lift in morphism order is taken.
pub fn is_groth_fibration(p: &CatFunctor) -> FibrationVerdict {
    let (x, s) = (&p.source, &p.target);
    let mut lifts = BTreeMap::new();
    for obj in 0..x.object_count() {
        let base = p.object(obj);
        for src in 0..s.object_count() {
            for &eta in s.hom(src, base) {
                let choice = if s.is_identity(eta) {
                    Some(x.identity(obj))
                } else {
                    (0..x.morphism_count()).find(|&phi| {
                        x.target(phi) == obj && p.morphism(phi) == eta && is_cartesian_morphism(p, phi)
                    })
                };
                match choice {
                    Some(phi) => {
                        lifts.insert((obj, eta), phi);
                    }
                    None => {
                        return FibrationVerdict::Witness {
                            object: obj,
                            morphism: eta,
                        }
                    }
                }
            }
        }
    }
    FibrationVerdict::Fibration(GrothFibration {
        functor: p.clone(),
        lifts,
    })
}

impl GrothFibration {
    pub fn total(&self) -> &Arc<FinCategory> {
        &self.functor.source
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.functor.target
    }

    pub fn lift(&self, x: usize, eta: usize) -> usize {
        self.lifts[&(x, eta)]
    }

    /// Checks that every chosen lift is cartesian and covers its pair.
    pub fn validate(&self) -> Result<()> {
        let (x, s) = (self.total(), self.base());
        for obj in 0..x.object_count() {
            for src in 0..s.object_count() {
                for &eta in s.hom(src, self.functor.object(obj)) {
                    let phi = *self.lifts.get(&(obj, eta)).ok_or_else(|| {
                        Error::Invalid(format!("no lift chosen for ({}, {})", x.objects()[obj], s.morphism(eta).name))
                    })?;
                    if x.target(phi) != obj
                        || self.functor.morphism(phi) != eta
                        || !is_cartesian_morphism(&self.functor, phi)
                    {
                        return Err(Error::Invalid(format!("chosen lift {} is not cartesian", x.morphism(phi).name)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The unique `chi` over `u` with `phi . chi = psi`, for cartesian `phi`.
    pub fn factor(&self, phi: usize, psi: usize, u: usize) -> Option<usize> {
        let x = self.total();
        x.hom(x.source(psi), x.source(phi))
            .iter()
            .copied()
            .find(|&chi| self.functor.morphism(chi) == u && x.compose(phi, chi) == Some(psi))
    }
}

/// The span dual as an opfibration over the opposite base.
#[derive(Clone, Debug)]
pub struct SpanDual {
    pub category: Arc<FinCategory>,
    /// Functor to the opposite of the base.
    pub projection: CatFunctor,
    /// Each morphism of the dual as `(eta, g)`: the base morphism and the
    /// vertical leg out of the source of the chosen lift.
    pub spans: Vec<(usize, usize)>,
    /// `(x, eta) -> cocartesian lift (eta, id)` out of `x`.
    pub cocartesian_lifts: BTreeMap<(usize, usize), usize>,
}

/// Morphisms `x -> y` are pairs `(eta: p(y) -> p(x), g)` with `g` a vertical
/// morphism from the source of the chosen lift of `eta` at `x` to `y`.
pub fn classical_span_dual(fib: &GrothFibration) -> SpanDual {
    let x = fib.total();
    let s = fib.base();
    let p = &fib.functor;
    let mut spans = Vec::new();
    let mut morphisms = Vec::new();
    // Keyed by source too: two objects can share the source of their lifts.
    let mut index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for a in 0..x.object_count() {
        for b in 0..x.object_count() {
            for &eta in s.hom(p.object(b), p.object(a)) {
                let u = x.source(fib.lift(a, eta));
                for &g in x.hom(u, b) {
                    if s.is_identity(p.morphism(g)) {
                        index.insert((a, eta, g), morphisms.len());
                        spans.push((eta, g));
                        morphisms.push(Morphism {
                            name: format!("[{}|{}]", s.morphism(eta).name, x.morphism(g).name),
                            source: a,
                            target: b,
                        });
                    }
                }
            }
        }
    }
    let identities: Vec<usize> = (0..x.object_count())
        .map(|a| index[&(a, s.identity(p.object(a)), x.identity(a))])
        .collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
    let compose = |second: usize, first: usize| -> Option<usize> {
        let (eta, g) = spans[first];
        let (eta2, g2) = spans[second];
        let (a, y) = ends[first];
        let l = fib.lift(a, eta);
        let u = x.source(l);
        let l2 = fib.lift(y, eta2);
        let m = fib.lift(u, eta2);
        let gm = x.compose(g, m)?;
        let g_hat = fib.factor(l2, gm, s.identity(s.source(eta2)))?;
        let eta_c = s.compose(eta, eta2)?;
        let l0 = fib.lift(a, eta_c);
        let lm = x.compose(l, m)?;
        let theta = fib.factor(l0, lm, s.identity(s.source(eta_c)))?;
        let right = x.compose(g2, x.compose(g_hat, x.inverse(theta)?)?)?;
        index.get(&(a, eta_c, right)).copied()
    };
    let category = FinCategory::from_fn(x.objects().to_vec(), morphisms, identities, compose)
        .expect("span composition is associative and unital");
    let category = Arc::new(category);
    let base_op = Arc::new(s.opposite());
    let projection = CatFunctor::new(
        category.clone(),
        base_op,
        (0..x.object_count()).map(|a| p.object(a)).collect(),
        spans.iter().map(|&(eta, _)| eta).collect(),
    )
    .expect("projection of the dual");
    let mut cocartesian_lifts = BTreeMap::new();
    for a in 0..x.object_count() {
        for src in 0..s.object_count() {
            for &eta in s.hom(src, p.object(a)) {
                let u = x.source(fib.lift(a, eta));
                cocartesian_lifts.insert((a, eta), index[&(a, eta, x.identity(u))]);
            }
        }
    }
    SpanDual {
        category,
        projection,
        spans,
        cocartesian_lifts,
    }
}

/// A strict functor `B^op -> Cat`: a fiber category per object and, for each
/// morphism `b -> b'`, a functor from the fiber over `b'` to the fiber over `b`.
pub struct Diagram {
    pub base: Arc<FinCategory>,
    pub fibers: Vec<Arc<FinCategory>>,
    pub transitions: Vec<CatFunctor>,
}

/// The Grothendieck construction of a strict diagram, with its projection and
/// the canonical cleavage `(eta, id)`.
pub fn grothendieck(d: &Diagram) -> Result<GrothFibration> {
    let b = &d.base;
    if d.fibers.len() != b.object_count() || d.transitions.len() != b.morphism_count() {
        return Err(Error::Invalid("diagram tables do not match the base".into()));
    }
    for eta in 0..b.morphism_count() {
        let t = &d.transitions[eta];
        if *t.source != *d.fibers[b.target(eta)] || *t.target != *d.fibers[b.source(eta)] {
            return Err(Error::Invalid(format!("transition over {} has the wrong fibers", b.morphism(eta).name)));
        }
        if b.is_identity(eta) && *t != CatFunctor::identity(d.fibers[b.source(eta)].clone()) {
            return Err(Error::Invalid("identity transitions must be identities".into()));
        }
    }
    for (g, f, h) in b.composites() {
        let composed = d.transitions[g].then(&d.transitions[f])?;
        if composed.on_objects != d.transitions[h].on_objects || composed.on_morphisms != d.transitions[h].on_morphisms {
            return Err(Error::Invalid("transitions are not strictly functorial".into()));
        }
    }
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for (a, fib) in d.fibers.iter().enumerate() {
        for x in 0..fib.object_count() {
            obj_index.insert((a, x), objects.len());
            objects.push(format!("{}:{}", b.objects()[a], fib.objects()[x]));
        }
    }
    let mut morphisms = Vec::new();
    let mut data = Vec::new();
    let mut mor_index = HashMap::new();
    for eta in 0..b.morphism_count() {
        let (a, a2) = (b.source(eta), b.target(eta));
        let t = &d.transitions[eta];
        for x in 0..d.fibers[a].object_count() {
            for y in 0..d.fibers[a2].object_count() {
                for &phi in d.fibers[a].hom(x, t.object(y)) {
                    mor_index.insert((eta, x, y, phi), morphisms.len());
                    data.push((eta, x, y, phi));
                    morphisms.push(Morphism {
                        name: format!("<{},{}>", b.morphism(eta).name, d.fibers[a].morphism(phi).name),
                        source: obj_index[&(a, x)],
                        target: obj_index[&(a2, y)],
                    });
                }
            }
        }
    }
    let identities: Vec<usize> = d
        .fibers
        .iter()
        .enumerate()
        .flat_map(|(a, fib)| (0..fib.object_count()).map(move |x| (a, x)))
        .map(|(a, x)| mor_index[&(b.identity(a), x, x, d.fibers[a].identity(x))])
        .collect();
    let total = FinCategory::from_fn(objects, morphisms, identities, |g, f| {
        let (eta, x, _y, phi) = data[f];
        let (eta2, _y2, z, phi2) = data[g];
        let eta_c = b.compose(eta2, eta)?;
        let fiber = &d.fibers[b.source(eta)];
        let moved = d.transitions[eta].morphism(phi2);
        let phi_c = fiber.compose(moved, phi)?;
        mor_index.get(&(eta_c, x, z, phi_c)).copied()
    })?;
    let total = Arc::new(total);
    let on_objects = d
        .fibers
        .iter()
        .enumerate()
        .flat_map(|(a, fib)| std::iter::repeat_n(a, fib.object_count()))
        .collect();
    let on_morphisms = data.iter().map(|t| t.0).collect();
    let functor = CatFunctor::new(total.clone(), b.clone(), on_objects, on_morphisms)?;
    let mut lifts = BTreeMap::new();
    for (&(a2, y), &obj) in &obj_index {
        for a in 0..b.object_count() {
            for &eta in b.hom(a, a2) {
                let ty = d.transitions[eta].object(y);
                lifts.insert((obj, eta), mor_index[&(eta, ty, y, d.fibers[a].identity(ty))]);
            }
        }
    }
    let fib = GrothFibration { functor, lifts };
    fib.validate()?;
    Ok(fib)
}
