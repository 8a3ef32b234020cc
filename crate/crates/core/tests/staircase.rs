use std::collections::{BTreeMap, BTreeSet};

use dualfib::anodyne::{area, enumerate_paths, flip, flipvertices, from_flipvertices, Point, StaircasePath};
use proptest::prelude::*;

/// Paths as step words: `true` raises `j`, `false` raises `i`.
fn brute_force_words(n: usize) -> Vec<Vec<bool>> {
    (0u32..1 << (2 * n))
        .filter(|m| m.count_ones() as usize == n)
        .map(|m| (0..2 * n).map(|b| m >> b & 1 == 1).collect::<Vec<_>>())
        .filter(|w| {
            let mut height = 0i32;
            w.iter().all(|&up| {
                height += if up { 1 } else { -1 };
                height >= 0
            })
        })
        .collect()
}

fn word_vertices(w: &[bool]) -> Vec<Point> {
    let mut p = (0, 0);
    let mut out = vec![p];
    for &up in w {
        if up {
            p.1 += 1
        } else {
            p.0 += 1
        }
        out.push(p);
    }
    out
}

fn word_of(x: &StaircasePath) -> Vec<bool> {
    x.vertices.windows(2).map(|w| w[1].1 > w[0].1).collect()
}

/// Squares between the path and the stairs, counted per `i`-step.
fn word_area(w: &[bool]) -> usize {
    let n = w.len() / 2;
    let mut ups = 0;
    let mut total = 0;
    for &up in w {
        if up {
            ups += 1
        } else {
            total += ups
        }
    }
    total - n * (n + 1) / 2
}

fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[test]
fn enumeration_matches_brute_force_through_eight() {
    for n in 1..=8 {
        let fast: BTreeSet<Vec<Point>> = enumerate_paths(n).into_iter().map(|x| x.vertices).collect();
        let slow: BTreeSet<Vec<Point>> = brute_force_words(n).iter().map(|w| word_vertices(w)).collect();
        assert_eq!(fast, slow, "n = {n}");
        assert_eq!(fast.len(), catalan(n), "n = {n}");
    }
}

#[test]
fn catalan_values() {
    let counts: Vec<usize> = (1..=8).map(|n| enumerate_paths(n).len()).collect();
    assert_eq!(counts, [1, 2, 5, 14, 42, 132, 429, 1430]);
}

#[test]
fn area_agrees_with_step_count_and_hits_both_ends() {
    for n in 1..=8 {
        let paths = enumerate_paths(n);
        for x in &paths {
            assert_eq!(area(x), word_area(&word_of(x)));
        }
        assert_eq!(paths.iter().map(area).min(), Some(0));
        assert_eq!(paths.iter().map(area).max(), Some(n * (n - 1) / 2));
        assert_eq!(area(&StaircasePath::stairs(n)), 0);
        assert_eq!(area(&StaircasePath::outer(n)), n * (n - 1) / 2);
    }
}

/// Area distributions computed by the step-word oracle.
#[test]
fn area_histograms() {
    let frozen: [&[usize]; 5] = [
        &[1],
        &[1, 1],
        &[1, 2, 1, 1],
        &[1, 3, 3, 3, 2, 1, 1],
        &[1, 4, 6, 7, 7, 5, 5, 3, 2, 1, 1],
    ];
    for (n, want) in (1..=5).zip(frozen) {
        let mut hist = vec![0; n * (n - 1) / 2 + 1];
        for w in brute_force_words(n) {
            hist[word_area(&w)] += 1;
        }
        assert_eq!(hist, want, "oracle n = {n}");
        let mut got = vec![0; hist.len()];
        for x in enumerate_paths(n) {
            got[area(&x)] += 1;
        }
        assert_eq!(got, want, "n = {n}");
    }
}

#[test]
fn every_flip_lowers_area_by_one() {
    for n in 1..=8 {
        for x in enumerate_paths(n) {
            for v in flipvertices(&x) {
                let y = flip(&x, v).unwrap();
                y.validate().unwrap();
                assert_eq!(area(&y) + 1, area(&x));
            }
        }
    }
}

#[test]
fn flipvertices_determine_paths_of_positive_area() {
    for n in 1..=8 {
        let mut seen: BTreeMap<Vec<Point>, Vec<Point>> = BTreeMap::new();
        for x in enumerate_paths(n) {
            let vs = flipvertices(&x);
            if area(&x) == 0 {
                assert!(vs.is_empty());
                continue;
            }
            assert!(!vs.is_empty());
            assert_eq!(from_flipvertices(n, &vs).map(|y| y.vertices), Some(x.vertices.clone()));
            assert!(seen.insert(vs, x.vertices).is_none(), "two paths share flipvertices");
        }
    }
}

#[test]
fn flipvertices_are_pairwise_non_adjacent() {
    for n in 1..=8 {
        for x in enumerate_paths(n) {
            let vs = flipvertices(&x);
            for (a, b) in vs.iter().zip(vs.iter().skip(1)) {
                let pa = x.position(*a).unwrap();
                let pb = x.position(*b).unwrap();
                assert!(pb >= pa + 2);
            }
        }
    }
}

#[test]
fn flipping_a_non_flipvertex_is_rejected() {
    let x = StaircasePath::stairs(3);
    assert!(flip(&x, (0, 1)).is_err());
    assert!(from_flipvertices(3, &[(0, 1)]).is_none());
    assert!(StaircasePath::new(2, vec![(0, 0), (1, 0), (1, 1), (1, 2), (2, 2)]).is_err());
}

fn path_strategy() -> impl Strategy<Value = StaircasePath> {
    (1usize..=7).prop_flat_map(|n| {
        let paths = enumerate_paths(n);
        (0..paths.len()).prop_map(move |i| paths[i].clone())
    })
}

proptest! {
    #[test]
    fn flip_word_is_a_local_swap(x in path_strategy()) {
        let w = word_of(&x);
        for v in flipvertices(&x) {
            let r = x.position(v).unwrap();
            let y = flip(&x, v).unwrap();
            let mut expect = w.clone();
            expect.swap(r - 1, r);
            prop_assert_eq!(word_of(&y), expect);
        }
    }

    #[test]
    fn reconstruction_inverts_flipvertices(x in path_strategy()) {
        prop_assume!(area(&x) > 0);
        prop_assert_eq!(from_flipvertices(x.n, &flipvertices(&x)), Some(x));
    }

    #[test]
    fn flipping_everything_reaches_the_stairs(x in path_strategy()) {
        let mut cur = x.clone();
        let mut steps = 0;
        while let Some(&v) = flipvertices(&cur).first() {
            cur = flip(&cur, v).unwrap();
            steps += 1;
        }
        prop_assert_eq!(steps, area(&x));
        prop_assert_eq!(cur, StaircasePath::stairs(x.n));
    }
}
