use std::sync::Arc;

use dualfib::cat::examples::{grid, product_projection, two_fiber};
use dualfib::cat::{full_nerve, nerve_map, CatFunctor, FinCategory};
use dualfib::fib::is_left_fibration;
use dualfib::pairing::{
    build_corrupted_pairing, build_duality_pairing, check_all_vertices, check_functoriality, check_perfect_pairing,
    compare_mapping_spaces, fiberwise_mapping_space, components, is_initial,
};
use dualfib::sset::{is_isomorphic, standard_simplex, SSetMap, SimplicialSet};
use dualfib::twist::twisted_arrow;

fn nerve_of(f: &CatFunctor) -> SSetMap {
    let (a, b) = (full_nerve(f.source.clone()).unwrap(), full_nerve(f.target.clone()).unwrap());
    nerve_map(f, &a, &b).unwrap()
}

fn fixtures() -> Vec<(&'static str, SSetMap)> {
    vec![
        ("identity", nerve_of(&CatFunctor::identity(Arc::new(FinCategory::ordinal(1))))),
        ("product", nerve_of(&product_projection(&FinCategory::ordinal(1), Arc::new(FinCategory::ordinal(1))))),
        ("two-op", nerve_of(&two_fiber().functor.opposite())),
    ]
}

#[test]
fn pairing_is_a_left_fibration_and_perfect() {
    for (name, q) in fixtures() {
        let p = build_duality_pairing(&q, 3).unwrap();
        let left = is_left_fibration(&p.pairing, 3);
        assert!(left.passed(), "{name}: {left}");
        for r in check_all_vertices(&p, 1).unwrap() {
            assert!(r.passed(), "{name}: {r}");
            for side in r.source_side.iter().chain(&r.target_side) {
                assert!(side.predicted_initial, "{name}: {side:?}");
                assert_eq!(side.initial, side.predicted.into_iter().collect::<Vec<_>>());
            }
        }
        assert!(check_functoriality(&p).unwrap().passed(), "{name}");
    }
}

#[test]
fn mapping_spaces_match_hom_sets() {
    for (name, q) in fixtures() {
        let p = build_duality_pairing(&q, 3).unwrap();
        for t in 0..q.codomain().count(0) {
            let homs = compare_mapping_spaces(&p, t, 2).unwrap();
            assert!(!homs.is_empty());
            for h in homs {
                assert_eq!(h.components, h.hom, "{name} over {t}: {h:?}");
            }
        }
    }
}

#[test]
fn identities_are_recovered() {
    let (_, q) = &fixtures()[1];
    let p = build_duality_pairing(q, 3).unwrap();
    for x in 0..q.domain().count(0) {
        let v = p.identity_vertex(x).expect("identity arrows are vertices");
        let e = p.arrow_of_vertex(v);
        assert!(!e.is_nondegenerate());
        let space = fiberwise_mapping_space(&p, x, x).unwrap();
        assert_eq!(components(&space), 1);
    }
}

#[test]
fn over_a_point_the_pairing_is_the_twisted_arrow_set() {
    let ys = [standard_simplex(1), standard_simplex(2), full_nerve(Arc::new(grid())).unwrap().sset().clone()];
    for y in ys {
        let q = SSetMap::to_point(y.clone(), Arc::new(SimplicialSet::point()));
        let p = build_duality_pairing(&q, 3).unwrap();
        let tw = twisted_arrow(y, 3).unwrap();
        assert!(is_isomorphic(p.total(), tw.total()).is_some());
        assert!(check_perfect_pairing(&p, 0, 1).unwrap().passed());
    }
}

#[test]
fn initial_objects_of_simple_nerves() {
    let x = standard_simplex(2);
    assert!(is_initial(&x, 0, 2));
    assert!(!is_initial(&x, 1, 2));
    let grid = full_nerve(Arc::new(grid())).unwrap().sset().clone();
    let initial: Vec<usize> = (0..grid.count(0)).filter(|&v| is_initial(&grid, v, 2)).collect();
    assert_eq!(initial.len(), 1);
}

#[test]
fn removing_an_identity_breaks_the_pairing() {
    let (_, q) = &fixtures()[1];
    let p = build_corrupted_pairing(q, 3, 0).unwrap();
    let reports = check_all_vertices(&p, 1).unwrap();
    assert!(reports.iter().any(|r| !r.passed()));
}
