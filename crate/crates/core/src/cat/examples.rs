//! Small categories and fibrations used as fixtures throughout.

use std::sync::Arc;

use super::category::FinCategory;
use super::functor::CatFunctor;
use super::groth::{grothendieck, Diagram, GrothFibration};
use crate::sset::FinPoset;

/// The commutative square `[1] x [1]`.
pub fn grid() -> FinCategory {
    FinCategory::from_poset(&FinPoset::product(&FinPoset::ordinal(1), &FinPoset::ordinal(1)))
}

/// `a <- c -> b`.
pub fn span_shape() -> FinCategory {
    let p = FinPoset::from_relation(vec!["a".into(), "b".into(), "c".into()], &[(2, 0), (2, 1)])
        .expect("span poset");
    FinCategory::from_poset(&p)
}

/// Projection of the arrow category onto sources.
pub fn source_projection(c: Arc<FinCategory>) -> CatFunctor {
    let (arr, legs) = c.arrow_category_with_legs();
    let on_objects = c.morphisms().iter().map(|m| m.source).collect();
    let on_morphisms = legs.iter().map(|&(a, _)| a).collect();
    CatFunctor::new(Arc::new(arr), c, on_objects, on_morphisms).expect("source projection")
}

/// Projection `C x S -> S`.
pub fn product_projection(c: &FinCategory, s: Arc<FinCategory>) -> CatFunctor {
    let total = Arc::new(c.product(&s));
    let (n, m) = (s.object_count(), s.morphism_count());
    CatFunctor::new(
        total.clone(),
        s,
        (0..total.object_count()).map(|k| k % n).collect(),
        (0..total.morphism_count()).map(|k| k % m).collect(),
    )
    .expect("product projection")
}

/// Over `[1]`: the fiber over 1 is two discrete objects `u, v`, the fiber over
/// 0 is `a -> b`, and the transition sends `u` to `a` and `v` to `b`.
pub fn two_fiber() -> GrothFibration {
    let base = Arc::new(FinCategory::ordinal(1));
    let lower = Arc::new(FinCategory::from_poset(&FinPoset::from_relation(
        vec!["a".into(), "b".into()],
        &[(0, 1)],
    )
    .expect("fiber poset")));
    let upper = Arc::new(FinCategory::discrete(vec!["u".into(), "v".into()]));
    let ident = |c: &Arc<FinCategory>| CatFunctor::identity(c.clone());
    let eta = base.morphism_index("0->1").expect("arrow");
    let mut transitions = Vec::new();
    for f in 0..base.morphism_count() {
        transitions.push(if f == eta {
            let ids: Vec<usize> = (0..2).map(|x| lower.identity(x)).collect();
            CatFunctor::new(upper.clone(), lower.clone(), vec![0, 1], ids).expect("transition")
        } else if base.source(f) == 0 {
            ident(&lower)
        } else {
            ident(&upper)
        });
    }
    grothendieck(&Diagram {
        base,
        fibers: vec![lower, upper],
        transitions,
    })
    .expect("two-fiber fibration")
}
