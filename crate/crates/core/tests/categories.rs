use std::sync::Arc;

use dualfib::cat::examples::{grid, span_shape, two_fiber};
use dualfib::cat::{
    cat_equivalence, find_equivalence, full_nerve, homotopy_category, is_groth_fibration, nerve, twisted_arrow_cat,
    CatFunctor, FibrationVerdict, FinCategory,
};

fn small_categories() -> Vec<FinCategory> {
    vec![
        FinCategory::ordinal(0),
        FinCategory::ordinal(2),
        grid(),
        span_shape(),
        FinCategory::walking_isomorphism(),
        FinCategory::cyclic_group(3),
    ]
}

/// Morphisms `f => g` of the twisted arrow category, counted as factorizations
/// `g = b . f . a` over all pairs `(a, b)`.
fn twisted_hom_count(c: &FinCategory, f: usize, g: usize) -> usize {
    let mut n = 0;
    for a in 0..c.morphism_count() {
        for b in 0..c.morphism_count() {
            if let Some(fa) = c.compose(f, a) {
                if c.compose(b, fa) == Some(g) {
                    n += 1;
                }
            }
        }
    }
    n
}

#[test]
fn twisted_arrow_category_hom_sets() {
    for c in small_categories() {
        let tw = twisted_arrow_cat(&c);
        assert_eq!(tw.object_count(), c.morphism_count());
        for f in 0..c.morphism_count() {
            for g in 0..c.morphism_count() {
                assert_eq!(tw.hom(f, g).len(), twisted_hom_count(&c, f, g), "{c:?}");
            }
        }
    }
}

#[test]
fn composition_is_associative() {
    for c in small_categories() {
        let c = twisted_arrow_cat(&c);
        for (g, f, gf) in c.composites() {
            for h in 0..c.morphism_count() {
                if c.source(h) == c.target(g) {
                    let left = c.compose(h, gf);
                    let right = c.compose(h, g).and_then(|hg| c.compose(hg, f));
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn homotopy_category_of_a_nerve_is_the_category() {
    for c in small_categories() {
        let c = Arc::new(c);
        let x = nerve(c.clone(), 3).unwrap().sset().clone();
        let ho = homotopy_category(&x).unwrap();
        assert_eq!(ho.category.object_count(), c.object_count());
        assert_eq!(ho.category.morphism_count(), c.morphism_count());
        assert!(find_equivalence(&ho.category, &c).is_some());
    }
}

#[test]
fn equivalences() {
    let point = Arc::new(FinCategory::ordinal(0));
    let iso = Arc::new(FinCategory::walking_isomorphism());
    assert!(find_equivalence(&iso, &point).is_some());
    assert!(find_equivalence(&point, &iso).is_some());
    let edge = Arc::new(FinCategory::ordinal(1));
    assert!(find_equivalence(&edge, &point).is_none());
    assert!(find_equivalence(&edge, &iso).is_none());
    let collapse = CatFunctor::new(edge.clone(), point.clone(), vec![0, 0], vec![0; edge.morphism_count()]).unwrap();
    assert!(!cat_equivalence(&collapse).equivalence);
}

#[test]
fn opposite_is_an_involution() {
    for c in small_categories() {
        let back = c.opposite().opposite();
        assert_eq!(back.composites(), c.composites());
    }
}

#[test]
fn cleavages() {
    let g = two_fiber();
    g.validate().unwrap();
    let base = Arc::new(FinCategory::ordinal(1));
    let point = Arc::new(FinCategory::ordinal(0));
    let over_target = CatFunctor::new(point, base.clone(), vec![1], vec![base.identity(1)]).unwrap();
    match is_groth_fibration(&over_target) {
        FibrationVerdict::Witness { object, morphism } => {
            assert_eq!(object, 0);
            assert!(!base.is_identity(morphism));
        }
        FibrationVerdict::Fibration(_) => panic!("no lift over 0 -> 1"),
    }
}

#[test]
fn nerve_dimensions() {
    let n = full_nerve(Arc::new(FinCategory::ordinal(3))).unwrap();
    assert_eq!(n.sset().counts(), vec![4, 6, 4, 1]);
    let n = nerve(Arc::new(FinCategory::cyclic_group(2)), 3).unwrap();
    // One nondegenerate simplex per string of the generator.
    assert_eq!(n.sset().counts(), vec![1, 1, 1, 1]);
}
