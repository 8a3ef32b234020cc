use std::sync::Arc;

use dualfib::cat::examples::{grid, span_shape};
use dualfib::cat::{full_nerve, twisted_arrow_cat, FinCategory};
use dualfib::fib::is_left_fibration;
use dualfib::sset::{is_isomorphic, standard_simplex, FinPoset, PosetNerve, SimplicialSet};
use dualfib::twist::{arrow_sset, twisted_arrow, twisted_arrow_projection_check, two_fold_twist};

/// Arrows `i <= j` of `[p]`, with `(i, j) <= (k, l)` when `k <= i` and `j <= l`.
fn staircase_poset(p: usize) -> FinPoset {
    let elems: Vec<(usize, usize)> = (0..=p).flat_map(|i| (i..=p).map(move |j| (i, j))).collect();
    let labels = elems.iter().map(|(i, j)| format!("{i}{j}")).collect();
    FinPoset::from_fn(labels, |a, b| {
        let ((i, j), (k, l)) = (elems[a], elems[b]);
        k <= i && j <= l
    })
    .unwrap()
}

fn nerve_sset(c: FinCategory) -> Arc<SimplicialSet> {
    full_nerve(Arc::new(c)).unwrap().sset().clone()
}

#[test]
fn twisted_simplices_are_staircase_nerves() {
    for p in 1..=3 {
        let tw = twisted_arrow(standard_simplex(p), 2 * p + 2).unwrap();
        let golden = PosetNerve::new(staircase_poset(p)).sset().clone();
        assert_eq!(tw.total().counts(), golden.counts(), "p = {p}");
        assert!(is_isomorphic(tw.total(), &golden).is_some(), "p = {p}");
    }
}

/// Counts of the staircase nerves, from chain enumeration in the oracle poset.
#[test]
fn staircase_nerve_counts() {
    let frozen: [&[usize]; 3] = [&[3, 2], &[6, 9, 4], &[10, 25, 24, 8]];
    for (p, want) in (1..=3).zip(frozen) {
        let poset = staircase_poset(p);
        let counts: Vec<usize> = (0..want.len()).map(|k| poset.chains(k).len()).collect();
        assert_eq!(counts, want);
        assert_eq!(twisted_arrow(standard_simplex(p), 2 * p + 2).unwrap().total().counts(), want);
    }
}

#[test]
fn twisted_arrow_of_a_nerve_is_the_nerve_of_the_twisted_arrow_category() {
    let cats = [FinCategory::ordinal(1), FinCategory::ordinal(2), grid(), span_shape()];
    for c in cats {
        let x = nerve_sset(c.clone());
        let tw = twisted_arrow(x, 6).unwrap();
        let y = nerve_sset(twisted_arrow_cat(&c));
        assert!(is_isomorphic(tw.total(), &y).is_some(), "{c:?}");
    }
}

#[test]
fn projection_is_a_left_fibration() {
    let xs = [standard_simplex(2), standard_simplex(3), nerve_sset(grid())];
    for x in xs {
        let dim = x.max_dim().unwrap();
        let tw = twisted_arrow(x, dim + 3).unwrap();
        let r = twisted_arrow_projection_check(&tw, dim + 2);
        assert!(r.passed(), "{r}");
        assert!(r.problems > 0);
    }
}

#[test]
fn projection_is_not_a_right_fibration() {
    let tw = twisted_arrow(standard_simplex(1), 3).unwrap();
    let r = dualfib::fib::is_right_fibration(&tw.proj, 2);
    assert!(!r.passed());
    assert!(is_left_fibration(&tw.proj, 2).passed());
}

#[test]
fn vertices_are_edges() {
    let x = standard_simplex(2);
    let tw = twisted_arrow(x.clone(), 3).unwrap();
    let edges = x.simplices(1);
    assert_eq!(edges.len(), tw.total().count(0));
    let mut seen: Vec<usize> = edges.iter().map(|&e| tw.vertex_of_edge(e)).collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), edges.len());
}

#[test]
fn arrow_set_of_a_simplex() {
    // Fun(Δ^1, Δ^1) is the nerve of the poset of arrows of [1] ordered pointwise.
    let a = arrow_sset(standard_simplex(1), 3).unwrap();
    assert_eq!(a.sset().counts(), vec![3, 3, 1]);
    let ar = arrow_sset(standard_simplex(2), 4).unwrap();
    let poset = FinPoset::from_fn((0..6).map(|i| i.to_string()).collect(), |a, b| {
        let e = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
        e[a].0 <= e[b].0 && e[a].1 <= e[b].1
    })
    .unwrap();
    assert!(is_isomorphic(ar.sset(), PosetNerve::new(poset).sset()).is_some());
}

#[test]
fn two_fold_twist_of_a_point_and_an_edge() {
    let t = two_fold_twist(standard_simplex(0), 2).unwrap();
    assert_eq!(t.sset.counts(), vec![1]);
    let t = two_fold_twist(standard_simplex(1), 3).unwrap();
    // Vertices are the 3-simplices of Δ^1.
    assert_eq!(t.sset.count(0), 5);
}
