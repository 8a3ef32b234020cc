use std::collections::BTreeSet;
use std::sync::Arc;

use dualfib::cat::examples::{product_projection, source_projection, two_fiber};
use dualfib::cat::{
    classical_span_dual, find_equivalence, full_nerve, grothendieck, homotopy_category, nerve_map, CatFunctor,
    Diagram, FinCategory, GrothFibration,
};
use dualfib::cat::examples::grid;
use dualfib::dual::{
    double_dual_cell_audit, double_dual_prime, dualize_cartesian, dualize_cocartesian, eff_burnside, span_triple, AdequateTriple, TripleMode,
};
use dualfib::fib::{
    cocartesian_edge_characterization, fiber_homotopy_category, fiberwise_equivalence, is_cocartesian_edge,
    is_cocartesian_fibration, is_trivial_fibration,
};
use dualfib::format::{Document, Provenance};
use dualfib::sset::{opposite_map, SSetMap};

/// Over `[1]`: the fiber `[1]` over 1 collapses onto the point over 0.
fn collapse() -> GrothFibration {
    let base = Arc::new(FinCategory::ordinal(1));
    let point = Arc::new(FinCategory::ordinal(0));
    let edge = Arc::new(FinCategory::ordinal(1));
    let fibers = vec![point.clone(), edge.clone()];
    let transitions = (0..base.morphism_count())
        .map(|eta| {
            if base.is_identity(eta) {
                CatFunctor::identity(fibers[base.source(eta)].clone())
            } else {
                let ids = vec![point.identity(0); edge.morphism_count()];
                CatFunctor::new(edge.clone(), point.clone(), vec![0, 0], ids).unwrap()
            }
        })
        .collect();
    grothendieck(&Diagram {
        base,
        fibers,
        transitions,
    })
    .unwrap()
}

fn fibration(f: CatFunctor) -> GrothFibration {
    dualfib::cat::is_groth_fibration(&f).fibration().unwrap()
}

fn fixtures() -> Vec<(&'static str, GrothFibration)> {
    vec![
        ("ev0", fibration(source_projection(Arc::new(FinCategory::ordinal(2))))),
        ("prod", fibration(product_projection(&FinCategory::ordinal(1), Arc::new(FinCategory::ordinal(1))))),
        ("two", two_fiber()),
        ("collapse", collapse()),
    ]
}

fn nerve_of(f: &CatFunctor) -> SSetMap {
    let (a, b) = (full_nerve(f.source.clone()).unwrap(), full_nerve(f.target.clone()).unwrap());
    nerve_map(f, &a, &b).unwrap()
}

#[test]
fn duals_are_cocartesian_with_the_expected_edges() {
    for (name, g) in fixtures() {
        let p = nerve_of(&g.functor);
        let dual = dualize_cartesian(&p, 4).unwrap();
        let r = is_cocartesian_fibration(&dual.proj, 4);
        assert!(r.passed(), "{name}: {r}");
        let edges = dual.total.boundary_table(1).all.clone();
        let invertible = dual.invertible_forward_legs().unwrap();
        let by_legs: BTreeSet<_> = edges.iter().zip(&invertible).filter(|(_, &i)| i).map(|(&e, _)| e).collect();
        let by_lifting: BTreeSet<_> = edges
            .iter()
            .copied()
            .filter(|&e| is_cocartesian_edge(&dual.proj, e, 4).unwrap().passed())
            .collect();
        assert_eq!(by_legs, by_lifting, "{name}");
        assert!(cocartesian_edge_characterization(&dual, 4).passed(), "{name}");
    }
}

#[test]
fn dual_of_opposite_is_opposite_of_dual() {
    for (name, g) in fixtures() {
        let p = nerve_of(&g.functor);
        let left = dualize_cocartesian(&opposite_map(&p), 3).unwrap().proj;
        let right = opposite_map(&dualize_cartesian(&p, 3).unwrap().proj);
        let text = |f: &SSetMap| Document::map(f, Provenance::new(Vec::<String>::new(), Some(3))).to_text();
        assert_eq!(text(&left), text(&right), "{name}");
    }
}

#[test]
fn fibers_of_the_dual() {
    for (name, g) in fixtures() {
        let p = nerve_of(&g.functor);
        let dual = dualize_cartesian(&p, 4).unwrap();
        for s in 0..p.codomain().count(0) {
            let a = fiber_homotopy_category(&dual.proj, s, 3).unwrap();
            let b = fiber_homotopy_category(&p, s, 3).unwrap();
            assert!(find_equivalence(&a.ho.category, &b.ho.category).is_some(), "{name} over {s}");
        }
    }
}

#[test]
fn homotopy_category_is_the_classical_span_dual() {
    for (name, g) in fixtures() {
        let p = nerve_of(&g.functor);
        let dual = dualize_cartesian(&p, 3).unwrap();
        let ho = homotopy_category(&dual.total).unwrap();
        let classical = classical_span_dual(&g);
        assert_eq!(ho.category.object_count(), classical.category.object_count(), "{name}");
        assert!(find_equivalence(&ho.category, &classical.category).is_some(), "{name}");
    }
}

#[test]
fn burnside_model_agrees() {
    for (name, g) in fixtures() {
        let (triple, _) = span_triple(&g.functor).unwrap();
        let b = eff_burnside(&triple, 2).unwrap();
        let ho = homotopy_category(b.sset()).unwrap();
        let classical = classical_span_dual(&g);
        assert!(find_equivalence(&ho.category, &classical.category).is_some(), "{name}");
    }
}

/// Spans `x <- u -> y` in a finite poset, degenerate ones included.
fn span_count(leq: impl Fn(usize, usize) -> bool, n: usize) -> usize {
    (0..n).map(|u| (0..n).filter(|&x| leq(u, x)).count().pow(2)).sum()
}

#[test]
fn burnside_edges_of_the_square_are_spans() {
    let c = Arc::new(grid());
    let x = full_nerve(c.clone()).unwrap().sset().clone();
    let b = eff_burnside(&AdequateTriple::full(x, TripleMode::Categorical), 2).unwrap();
    let n = c.object_count();
    let want = span_count(|a, b| !c.hom(a, b).is_empty(), n);
    assert_eq!(want, 25);
    // Identity spans are the degenerate edges.
    assert_eq!(b.sset().count(0), n);
    assert_eq!(b.sset().count(1), want - n);
    assert_eq!(b.sset().boundary_table(1).all.len(), want);
}

#[test]
fn explicit_double_dual_cells_pass_the_audit() {
    let g = source_projection(Arc::new(FinCategory::ordinal(1)));
    let p = nerve_of(&g);
    let dd = double_dual_prime(&p, 2).unwrap();
    let x = dd.xvv.sset.clone();
    for n in 0..=2 {
        for c in x.cell_ids(n) {
            let a = double_dual_cell_audit(&p, n, dd.xvv.key(c), 3).unwrap();
            assert!(a.passed, "{c:?}: {}", a.detail);
        }
    }
}

#[test]
fn double_dual_zigzag() {
    for (name, g) in fixtures() {
        let p = nerve_of(&g.functor);
        let dd = double_dual_prime(&p, 4).unwrap();
        let alpha = is_trivial_fibration(&dd.alpha, 4);
        assert!(alpha.passed(), "{name}: {alpha}");
        let beta = fiberwise_equivalence(&dd.beta, &dd.prime_proj, &dd.xvv_proj, 4, 2);
        assert!(beta.passed(), "{name}: {beta}");
    }
}

#[test]
fn dualizing_a_non_fibration_fails() {
    let base = Arc::new(FinCategory::ordinal(1));
    let point = Arc::new(FinCategory::ordinal(0));
    let f = CatFunctor::new(point, base.clone(), vec![1], vec![base.identity(1)]).unwrap();
    assert!(dualize_cartesian(&nerve_of(&f), 3).is_err());
}
