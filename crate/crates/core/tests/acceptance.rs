//! One line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dualfib::anodyne::{
    area, certify_iota, certify_long_simplex, check_certificate, contiguity_certificate, enumerate_paths, flip,
    flipvertices, from_flipvertices, Point,
};
use dualfib::cat::examples::{grid, product_projection, source_projection, span_shape, two_fiber};
use dualfib::cat::{
    classical_span_dual, find_equivalence, full_nerve, homotopy_category, is_groth_fibration, nerve_map,
    twisted_arrow_cat, CatFunctor, FinCategory, GrothFibration,
};
use dualfib::dual::{double_dual_prime, dualize_cartesian, dualize_cocartesian};
use dualfib::fib::{
    fiber_homotopy_category, fiberwise_equivalence, is_cocartesian_edge, is_cocartesian_fibration,
    is_left_fibration, is_trivial_fibration,
};
use dualfib::format::{Document, Provenance};
use dualfib::pairing::{build_duality_pairing, check_all_vertices, compare_mapping_spaces};
use dualfib::sset::{is_isomorphic, opposite_map, standard_simplex, FinPoset, PosetNerve, SSetMap, SimplicialSet};
use dualfib::twist::{arrow_sset, twisted_arrow, twisted_arrow_projection_check};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn nerve_sset(c: FinCategory) -> Arc<SimplicialSet> {
    full_nerve(Arc::new(c)).unwrap().sset().clone()
}

fn nerve_of(f: &CatFunctor) -> SSetMap {
    let (a, b) = (full_nerve(f.source.clone()).unwrap(), full_nerve(f.target.clone()).unwrap());
    nerve_map(f, &a, &b).unwrap()
}

fn fibration(f: CatFunctor) -> GrothFibration {
    is_groth_fibration(&f).fibration().expect("fixture is a fibration")
}

fn groth_fixtures() -> Vec<(&'static str, GrothFibration)> {
    vec![
        ("ev0 [2]", fibration(source_projection(Arc::new(FinCategory::ordinal(2))))),
        ("[1] x [1] -> [1]", fibration(product_projection(&FinCategory::ordinal(1), Arc::new(FinCategory::ordinal(1))))),
        ("two-fiber", two_fiber()),
    ]
}

/// `ev_0: O(N[2]) -> N[2]` computed as a function space.
fn ev0_arrow_set() -> SSetMap {
    let x = nerve_sset(FinCategory::ordinal(2));
    arrow_sset(x, 5).unwrap().source
}

fn staircase_poset(p: usize) -> FinPoset {
    let elems: Vec<(usize, usize)> = (0..=p).flat_map(|i| (i..=p).map(move |j| (i, j))).collect();
    let labels = elems.iter().map(|(i, j)| format!("{i}{j}")).collect();
    FinPoset::from_fn(labels, |a, b| elems[b].0 <= elems[a].0 && elems[a].1 <= elems[b].1).unwrap()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    for p in 1..=3 {
        let tw = twisted_arrow(standard_simplex(p), 2 * p + 2).map_err(|e| e.to_string())?;
        let golden = PosetNerve::new(staircase_poset(p)).sset().clone();
        ensure(is_isomorphic(tw.total(), &golden).is_some(), || format!("p = {p}: no isomorphism"))?;
    }
    within(t.elapsed(), Duration::from_secs(10))?;
    Ok("p = 1, 2, 3 isomorphic to the staircase nerves".into())
}

fn criterion_2() -> Outcome {
    let cats = [
        ("[1]", FinCategory::ordinal(1)),
        ("[2]", FinCategory::ordinal(2)),
        ("2x2", grid()),
        ("span", span_shape()),
    ];
    for (name, c) in &cats {
        let tw = twisted_arrow(nerve_sset(c.clone()), 6).map_err(|e| e.to_string())?;
        let y = nerve_sset(twisted_arrow_cat(c));
        ensure(is_isomorphic(tw.total(), &y).is_some(), || format!("{name}: no isomorphism"))?;
    }
    Ok(format!("{} category fixtures", cats.len()))
}

fn criterion_3() -> Outcome {
    let xs = [
        ("Δ^2", standard_simplex(2)),
        ("Δ^3", standard_simplex(3)),
        ("N(2x2)", nerve_sset(grid())),
    ];
    let mut problems = 0;
    for (name, x) in xs {
        let dim = x.max_dim().unwrap_or(0);
        let tw = twisted_arrow(x, dim + 3).map_err(|e| e.to_string())?;
        let r = twisted_arrow_projection_check(&tw, dim + 2);
        ensure(r.passed(), || format!("{name}: {:?}", r.verdict))?;
        problems += r.problems;
    }
    Ok(format!("3 fixtures at nMax = dim + 2, {problems} lifting problems solved"))
}

fn criterion_4() -> Outcome {
    let mut maps: Vec<(String, SSetMap)> = vec![("ev0: O(N[2]) -> N[2]".into(), ev0_arrow_set())];
    maps.extend(groth_fixtures().into_iter().skip(1).map(|(n, g)| (n.to_string(), nerve_of(&g.functor))));
    for (name, p) in &maps {
        let dual = dualize_cartesian(p, 4).map_err(|e| format!("{name}: {e}"))?;
        let r = is_cocartesian_fibration(&dual.proj, 4);
        ensure(r.passed(), || format!("{name}: dual is not cocartesian ({:?})", r.verdict))?;
        let edges = dual.total.boundary_table(1).all.clone();
        let legs = dual.invertible_forward_legs().map_err(|e| e.to_string())?;
        let by_legs: BTreeSet<_> = edges.iter().zip(&legs).filter(|(_, &i)| i).map(|(&e, _)| e).collect();
        let mut by_lifting = BTreeSet::new();
        for &e in &edges {
            if is_cocartesian_edge(&dual.proj, e, 4).map_err(|e| e.to_string())?.passed() {
                by_lifting.insert(e);
            }
        }
        ensure(by_legs == by_lifting, || format!("{name}: cocartesian edges differ from invertible spans"))?;
    }
    Ok(format!("{} fixtures at nMax = 4, edge sets equal", maps.len()))
}

fn criterion_5() -> Outcome {
    let mut maps: Vec<(String, SSetMap)> = vec![("ev0 arrow set".into(), ev0_arrow_set())];
    maps.extend(groth_fixtures().into_iter().map(|(n, g)| (n.to_string(), nerve_of(&g.functor))));
    let text = |f: &SSetMap| Document::map(f, Provenance::new(Vec::<String>::new(), Some(3))).to_text();
    for (name, p) in &maps {
        let op_dual = dualize_cocartesian(&opposite_map(p), 3).map_err(|e| format!("{name}: {e}"))?;
        let dual = dualize_cartesian(p, 3).map_err(|e| format!("{name}: {e}"))?;
        ensure(text(&op_dual.proj) == text(&opposite_map(&dual.proj)), || format!("{name}: serializations differ"))?;
    }
    Ok(format!("{} fixtures byte-identical", maps.len()))
}

fn criterion_6() -> Outcome {
    let mut fibers = 0;
    for (name, g) in groth_fixtures() {
        let p = nerve_of(&g.functor);
        let dual = dualize_cartesian(&p, 4).map_err(|e| e.to_string())?;
        for s in 0..p.codomain().count(0) {
            let a = fiber_homotopy_category(&dual.proj, s, 3).map_err(|e| e.to_string())?;
            let b = fiber_homotopy_category(&p, s, 3).map_err(|e| e.to_string())?;
            ensure(find_equivalence(&a.ho.category, &b.ho.category).is_some(), || {
                format!("{name}: fibers over {s} are not equivalent")
            })?;
            fibers += 1;
        }
    }
    Ok(format!("{fibers} fibers equivalent"))
}

fn criterion_7() -> Outcome {
    for (name, g) in groth_fixtures() {
        let dual = dualize_cartesian(&nerve_of(&g.functor), 3).map_err(|e| e.to_string())?;
        let ho = homotopy_category(&dual.total).map_err(|e| e.to_string())?;
        let classical = classical_span_dual(&g);
        ensure(find_equivalence(&ho.category, &classical.category).is_some(), || {
            format!("{name}: not equivalent to the span dual")
        })?;
    }
    Ok("3 fibration fixtures".into())
}

fn criterion_8() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, g) in groth_fixtures() {
        let t = Instant::now();
        let p = nerve_of(&g.functor);
        let dd = double_dual_prime(&p, 4).map_err(|e| format!("{name}: {e}"))?;
        let alpha = is_trivial_fibration(&dd.alpha, 4);
        ensure(alpha.passed(), || format!("{name}: alpha {:?}", alpha.verdict))?;
        let beta = fiberwise_equivalence(&dd.beta, &dd.prime_proj, &dd.xvv_proj, 4, 2);
        ensure(beta.passed(), || format!("{name}: beta {:?}", beta.verdict))?;
        within(t.elapsed(), Duration::from_secs(300))?;
        slowest = slowest.max(t.elapsed());
    }
    Ok(format!("3 fixtures, slowest {slowest:.2?}"))
}

/// Step words of length `2n` that never dip below the diagonal.
fn brute_force_paths(n: usize) -> BTreeSet<Vec<Point>> {
    let mut out = BTreeSet::new();
    for m in 0u32..1 << (2 * n) {
        if m.count_ones() as usize != n {
            continue;
        }
        let mut p = (0, 0);
        let mut verts = vec![p];
        let mut ok = true;
        for b in 0..2 * n {
            if m >> b & 1 == 1 {
                p.1 += 1
            } else {
                p.0 += 1
            }
            ok &= p.0 <= p.1;
            verts.push(p);
        }
        if ok {
            out.insert(verts);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    for n in 1..=8 {
        let paths = enumerate_paths(n);
        let fast: BTreeSet<Vec<Point>> = paths.iter().map(|x| x.vertices.clone()).collect();
        ensure(fast == brute_force_paths(n), || format!("n = {n}: enumeration differs from brute force"))?;
        let catalan = (0..n).fold(1usize, |c, k| c * 2 * (2 * k + 1) / (k + 2));
        ensure(paths.len() == catalan, || format!("n = {n}: {} paths", paths.len()))?;
        let max = paths.iter().map(area).max().unwrap_or(0);
        ensure(max == n * (n - 1) / 2, || format!("n = {n}: max area {max}"))?;
        let mut seen = BTreeSet::new();
        for x in &paths {
            let vs = flipvertices(x);
            for &v in &vs {
                let y = flip(x, v).map_err(|e| e.to_string())?;
                ensure(area(&y) + 1 == area(x), || format!("n = {n}: flip does not lower area by one"))?;
            }
            if area(x) > 0 {
                ensure(from_flipvertices(n, &vs).as_ref() == Some(x), || format!("n = {n}: reconstruction fails"))?;
                ensure(seen.insert(vs), || format!("n = {n}: flipvertex sets collide"))?;
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(30))?;
    Ok(format!("n <= 8 in {:.2?}", t.elapsed()))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    for n in 0..=3 {
        for (kind, cert) in [("long simplex", certify_long_simplex(n)), ("iota", certify_iota(n))] {
            let cert = cert.map_err(|e| e.to_string())?;
            let v = check_certificate(&cert);
            ensure(v.passed, || format!("{kind} n = {n}: {}", v.reason))?;
        }
    }
    let mut triples = 0;
    for m in 2..=5 {
        for s in 1..m {
            for lo in 0..s {
                for hi in s + 1..=m {
                    let f: Vec<usize> = (lo..=hi).collect();
                    let cert = contiguity_certificate(m, s, &f).map_err(|e| e.to_string())?;
                    ensure(check_certificate(&cert).passed, || format!("contiguity ({m}, {s}, {f:?})"))?;
                    triples += 1;
                }
            }
        }
    }
    within(t.elapsed(), Duration::from_secs(120))?;
    Ok(format!("n <= 3 and {triples} contiguity triples in {:.2?}", t.elapsed()))
}

fn criterion_11() -> Outcome {
    let fixtures = [
        ("identity of [1]", nerve_of(&CatFunctor::identity(Arc::new(FinCategory::ordinal(1))))),
        ("[1] x [1] -> [1]", nerve_of(&product_projection(&FinCategory::ordinal(1), Arc::new(FinCategory::ordinal(1))))),
        ("two-fiber op", nerve_of(&two_fiber().functor.opposite())),
    ];
    let mut vertices = 0;
    for (name, q) in &fixtures {
        let p = build_duality_pairing(q, 3).map_err(|e| format!("{name}: {e}"))?;
        let left = is_left_fibration(&p.pairing, 3);
        ensure(left.passed(), || format!("{name}: M is not a left fibration"))?;
        for r in check_all_vertices(&p, 1).map_err(|e| e.to_string())? {
            ensure(r.passed(), || format!("{name}: perfect pairing fails at {}", r.vertex))?;
            let recovered = r.source_side.iter().chain(&r.target_side).all(|s| s.predicted_initial);
            ensure(recovered, || format!("{name}: identities are not initial at {}", r.vertex))?;
            for h in compare_mapping_spaces(&p, r.vertex, 2).map_err(|e| e.to_string())? {
                ensure(h.components == h.hom, || format!("{name}: π0 differs from hom at {}", r.vertex))?;
            }
            vertices += 1;
        }
    }
    Ok(format!("{} cocartesian fixtures, {vertices} vertices", fixtures.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("twisted arrow of simplices is the staircase nerve", criterion_1),
        ("twisted arrow commutes with nerves", criterion_2),
        ("twisted arrow projection is a left fibration", criterion_3),
        ("dual is cocartesian with the predicted edges", criterion_4),
        ("dual of opposite equals opposite of dual", criterion_5),
        ("fibers of the dual", criterion_6),
        ("classical span dual", criterion_7),
        ("double dual comparison", criterion_8),
        ("staircase census", criterion_9),
        ("anodyne certificates", criterion_10),
        ("duality pairing", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
