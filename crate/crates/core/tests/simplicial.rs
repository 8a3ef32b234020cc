use std::sync::Arc;

use dualfib::cat::{full_nerve, FinCategory};
use dualfib::sset::{
    boundary_and_horns, is_isomorphic, opposite, product, standard_simplex, FinPoset, HornSpec, PosetNerve,
    SimplicialSet,
};
use proptest::prelude::*;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Random posets: a relation drawn among pairs `a < b`, closed up.
fn poset_strategy() -> impl Strategy<Value = FinPoset> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
            let rel: Vec<(usize, usize)> = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&p, _)| p).collect();
            FinPoset::from_relation(labels(n), &rel).unwrap()
        })
    })
}

/// Strict chains of length `k + 1`, by brute force over all tuples.
fn chain_count(p: &FinPoset, k: usize) -> usize {
    fn go(p: &FinPoset, k: usize, last: Option<usize>) -> usize {
        if k == 0 {
            return 1;
        }
        (0..p.len())
            .filter(|&b| last.is_none_or(|a| a != b && p.leq(a, b)))
            .map(|b| go(p, k - 1, Some(b)))
            .sum()
    }
    go(p, k + 1, None)
}

fn same_faces(a: &SimplicialSet, b: &SimplicialSet) -> bool {
    a.counts() == b.counts()
        && (0..a.counts().len()).all(|d| a.level(d).iter().zip(b.level(d)).all(|(x, y)| x.faces == y.faces))
}

#[test]
fn standard_simplex_counts() {
    for n in 0..=5 {
        let x = standard_simplex(n);
        let want: Vec<usize> = (0..=n).map(|k| binomial(n + 1, k + 1)).collect();
        assert_eq!(x.counts(), want);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |c, i| c * (n - i) / (i + 1))
}

#[test]
fn horns_and_boundaries() {
    let b = boundary_and_horns(3, &HornSpec::Boundary).unwrap();
    assert_eq!(b.sset.counts(), vec![4, 6, 4]);
    let h = boundary_and_horns(3, &HornSpec::horn([1])).unwrap();
    assert_eq!(h.sset.counts(), vec![4, 6, 3]);
    assert!(boundary_and_horns(2, &HornSpec::horn([3])).is_err());
}

#[test]
fn degenerate_faces_follow_the_identities() {
    let x = standard_simplex(3);
    for s in x.simplices(2) {
        for j in 0..=2 {
            let d = x.degeneracy(j, s);
            // d_j s_j = d_{j+1} s_j = id
            assert_eq!(x.face(j, d), s);
            assert_eq!(x.face(j + 1, d), s);
        }
    }
}

#[test]
fn product_of_simplices_is_the_product_poset() {
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        let prod = product(standard_simplex(p), standard_simplex(q));
        let poset = FinPoset::product(&FinPoset::ordinal(p), &FinPoset::ordinal(q));
        let nerve = PosetNerve::new(poset);
        assert!(is_isomorphic(prod.sset(), nerve.sset()).is_some(), "{p} x {q}");
    }
}

#[test]
fn full_nerve_rejects_a_nontrivial_group() {
    let c = Arc::new(FinCategory::cyclic_group(2));
    assert!(full_nerve(c).is_err());
}

proptest! {
    #[test]
    fn poset_nerves_count_chains(p in poset_strategy()) {
        let nerve = PosetNerve::new(p.clone());
        let x = nerve.sset();
        x.validate().unwrap();
        for k in 0..x.counts().len() {
            prop_assert_eq!(x.count(k), chain_count(&p, k));
        }
        prop_assert_eq!(chain_count(&p, x.counts().len()), 0);
    }

    #[test]
    fn opposite_is_an_involution(p in poset_strategy()) {
        let x = PosetNerve::new(p.clone()).sset().clone();
        let back = opposite(&opposite(&x));
        prop_assert!(same_faces(&back, &x));
        let op = Arc::new(opposite(&x));
        let nerve_op = PosetNerve::new(p.opposite()).sset().clone();
        prop_assert!(is_isomorphic(&op, &nerve_op).is_some());
    }

    #[test]
    fn faces_of_pulled_simplices(p in poset_strategy(), word in proptest::collection::vec(0usize..3, 1..4)) {
        let x = PosetNerve::new(p).sset().clone();
        let top = x.counts().len() - 1;
        for s in x.simplices(top) {
            // A monotone map [k] -> [top] given by a sorted word.
            let mut theta: Vec<usize> = word.iter().map(|&v| v.min(top)).collect();
            theta.sort();
            let pulled = x.pull(s, &theta);
            prop_assert_eq!(pulled.dim(), theta.len() - 1);
            let verts = x.vertices(pulled);
            let all = x.vertices(s);
            prop_assert_eq!(verts, theta.iter().map(|&t| all[t]).collect::<Vec<_>>());
            prop_assert!(x.simplices(pulled.dim()).contains(&pulled));
        }
    }

    #[test]
    fn isomorphism_is_found_after_relabelling(p in poset_strategy(), seed in any::<u64>()) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q = FinPoset::from_fn(labels(n), |a, b| p.leq(perm[a], perm[b])).unwrap();
        let (x, y) = (PosetNerve::new(p).sset().clone(), PosetNerve::new(q).sset().clone());
        prop_assert!(is_isomorphic(&x, &y).is_some());
    }
}
