use std::sync::Arc;

use dualfib::cat::examples::{grid, product_projection, source_projection, two_fiber};
use dualfib::cat::{full_nerve, is_cartesian_morphism, is_groth_fibration, nerve, nerve_map, CatFunctor, FinCategory};
use dualfib::fib::{
    is_cartesian_edge, is_cartesian_fibration, is_cocartesian_edge, is_cocartesian_fibration, is_inner_fibration,
    is_left_fibration, is_quasicategory, is_right_fibration, is_trivial_fibration, Verdict,
};
use dualfib::sset::constructions::simplex_subcomplex;
use dualfib::sset::{boundary_and_horns, HornSpec, SSetMap, SimplicialSet};
use proptest::prelude::*;

fn point() -> Arc<SimplicialSet> {
    Arc::new(SimplicialSet::point())
}

fn nerve_of(f: &CatFunctor) -> SSetMap {
    let (a, b) = (full_nerve(f.source.clone()).unwrap(), full_nerve(f.target.clone()).unwrap());
    nerve_map(f, &a, &b).unwrap()
}

/// The functor from a poset category sending each object by `objects`.
fn poset_functor(source: FinCategory, target: Arc<FinCategory>, objects: Vec<usize>) -> CatFunctor {
    let morphisms = (0..source.morphism_count())
        .map(|f| {
            let (a, b) = (objects[source.source(f)], objects[source.target(f)]);
            target.hom(a, b)[0]
        })
        .collect();
    CatFunctor::new(Arc::new(source), target, objects, morphisms).unwrap()
}

#[test]
fn nerves_are_quasicategories() {
    for c in [FinCategory::ordinal(3), grid(), FinCategory::walking_isomorphism(), FinCategory::cyclic_group(2)] {
        let x = nerve(Arc::new(c), 5).unwrap().sset().clone();
        let r = is_quasicategory(&x, 4);
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn boundary_of_a_triangle_is_not_a_quasicategory() {
    let b = boundary_and_horns(2, &HornSpec::Boundary).unwrap();
    let r = is_quasicategory(&b.sset, 2);
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(r.counterexample.is_some());
}

#[test]
fn groupoid_nerves_are_kan() {
    let iso = nerve(Arc::new(FinCategory::walking_isomorphism()), 4).unwrap().sset().clone();
    let p = SSetMap::to_point(iso, point());
    assert!(is_left_fibration(&p, 3).passed());
    assert!(is_right_fibration(&p, 3).passed());
    assert!(is_trivial_fibration(&p, 3).passed());
    let edge = full_nerve(Arc::new(FinCategory::ordinal(1))).unwrap().sset().clone();
    let q = SSetMap::to_point(edge, point());
    assert!(!is_left_fibration(&q, 2).passed());
    assert!(!is_right_fibration(&q, 2).passed());
    assert!(!is_trivial_fibration(&q, 2).passed());
}

#[test]
fn truncated_inputs_are_inconclusive() {
    let x = nerve(Arc::new(FinCategory::walking_isomorphism()), 2).unwrap().sset().clone();
    let r = is_quasicategory(&x, 4);
    assert_eq!(r.verdict, Verdict::Inconclusive);
}

/// Cartesian edges of nerves are the cartesian morphisms.
#[test]
fn cartesian_edges_agree_with_the_categorical_test() {
    let fs = vec![
        source_projection(Arc::new(FinCategory::ordinal(2))),
        product_projection(&FinCategory::ordinal(1), Arc::new(FinCategory::ordinal(1))),
        two_fiber().functor,
        poset_functor(FinCategory::ordinal(2), Arc::new(FinCategory::ordinal(1)), vec![0, 1, 1]),
        poset_functor(FinCategory::ordinal(2), Arc::new(FinCategory::ordinal(1)), vec![0, 0, 1]),
    ];
    for f in fs {
        let p = nerve_of(&f);
        let source = full_nerve(f.source.clone()).unwrap();
        for phi in 0..f.source.morphism_count() {
            let e = source.morphism_simplex(phi);
            let e = if f.source.is_identity(phi) { p.domain().constant(f.source.source(phi), 1) } else { e };
            let quasi = is_cartesian_edge(&p, e, 3).unwrap().passed();
            assert_eq!(quasi, is_cartesian_morphism(&f, phi), "{}", f.source.morphism(phi).name);
            let co = is_cocartesian_edge(&p, e, 3).unwrap().passed();
            assert_eq!(co, is_cartesian_morphism(&f.opposite(), phi));
        }
        let groth = is_groth_fibration(&f).fibration().is_some();
        assert_eq!(is_cartesian_fibration(&p, 3).passed(), groth);
        let opgroth = is_groth_fibration(&f.opposite()).fibration().is_some();
        assert_eq!(is_cocartesian_fibration(&p, 3).passed(), opgroth);
    }
}

#[test]
fn point_over_an_end_of_an_edge() {
    let base = Arc::new(FinCategory::ordinal(1));
    let over_target = poset_functor(FinCategory::ordinal(0), base.clone(), vec![1]);
    let p = nerve_of(&over_target);
    assert!(!is_cartesian_fibration(&p, 3).passed());
    assert!(is_cocartesian_fibration(&p, 3).passed());
    let over_source = poset_functor(FinCategory::ordinal(0), base, vec![0]);
    let q = nerve_of(&over_source);
    assert!(is_cartesian_fibration(&q, 3).passed());
    assert!(!is_cocartesian_fibration(&q, 3).passed());
}

/// Facet sets of `Δ^3`, as vertex subsets of size at least 2.
fn facets_strategy() -> impl Strategy<Value = Vec<Vec<usize>>> {
    let subsets: Vec<Vec<usize>> = (1u32..16)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..4).filter(|v| m >> v & 1 == 1).collect())
        .collect();
    proptest::collection::vec(proptest::sample::select(subsets), 0..5)
}

fn has(facets: &[Vec<usize>], verts: &[usize]) -> bool {
    facets.iter().any(|f| verts.iter().all(|v| f.contains(v)))
}

proptest! {
    /// Dimension 2: `Λ^2_1` only fails on `a < b < c` with both edges and no triangle.
    #[test]
    fn inner_horns_in_subcomplexes(facets in facets_strategy()) {
        let sub = simplex_subcomplex(3, &facets).unwrap();
        let p = SSetMap::to_point(sub.sset.clone(), point());
        let mut expect = true;
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    if has(&facets, &[a, b]) && has(&facets, &[b, c]) && !has(&facets, &[a, b, c]) {
                        expect = false;
                    }
                }
            }
        }
        prop_assert_eq!(is_inner_fibration(&p, 2).passed(), expect);
    }

    /// `Λ^2_0` with a degenerate face forces every edge to be reversible.
    #[test]
    fn left_horns_in_subcomplexes(facets in facets_strategy()) {
        let sub = simplex_subcomplex(3, &facets).unwrap();
        let p = SSetMap::to_point(sub.sset.clone(), point());
        prop_assert_eq!(is_left_fibration(&p, 2).passed(), facets.is_empty());
        prop_assert_eq!(is_right_fibration(&p, 2).passed(), facets.is_empty());
    }
}
