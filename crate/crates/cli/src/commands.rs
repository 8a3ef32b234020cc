use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::json;

use dualfib::anodyne::{
    area, certify_iota, certify_long_simplex, check_certificate, contiguity_certificate, enumerate_paths, flip,
    flipvertices, from_flipvertices, Certificate,
};
use dualfib::cat::{classical_span_dual, find_equivalence, full_nerve, homotopy_category, is_groth_fibration, nerve};
use dualfib::dual::{double_dual_prime, dualize_cartesian, dualize_cocartesian, eff_burnside, span_triple};
use dualfib::fib::{
    fiber_homotopy_category, fiberwise_equivalence, is_cartesian_fibration, is_cocartesian_fibration,
    is_inner_fibration, is_left_fibration, is_quasicategory, is_right_fibration, is_trivial_fibration, CheckReport,
    Verdict,
};
use dualfib::format::{Body, Document, Provenance};
use dualfib::pairing::{build_duality_pairing, check_functoriality, check_perfect_pairing, compare_mapping_spaces};
use dualfib::sset::{SSetMap, SimplicialSet};
use dualfib::twist::{arrow_sset, twisted_arrow};

use crate::io::{load, Failure, Input, Outcome, Report, Status};
use crate::{CertKind, Class, Common, Done, Mode, Variance};

const DEFAULT_MAX_DIM: usize = 3;

fn status_of(v: Verdict) -> Status {
    match v {
        Verdict::Pass => Status::Pass,
        Verdict::Fail => Status::Fail,
        Verdict::Inconclusive => Status::Precondition,
    }
}

/// The worse of two statuses.
fn worst(a: Status, b: Status) -> Status {
    if (a as u8) >= (b as u8) {
        a
    } else {
        b
    }
}

fn traced(input: &Input, step: impl Into<String>) -> Vec<String> {
    let mut t = input.trace();
    t.push(step.into());
    t
}

fn counts(x: &SimplicialSet) -> String {
    format!("{:?}", x.counts())
}

fn artifact(doc: Document) -> Option<String> {
    Some(doc.to_text())
}

pub fn nerve_cmd(common: &Common, path: &Path) -> Outcome<Done> {
    let input = load(path)?;
    let c = match &input.doc.body {
        Body::Category(c) => Arc::new(c.to_category()?),
        other => return Err(input.wrong_kind("a category", other.kind())),
    };
    let (n, bound) = match common.max_dim {
        Some(_) => {
            let d = common.max_dim(DEFAULT_MAX_DIM)?;
            (nerve(c, d)?, Some(d))
        }
        None => (full_nerve(c)?, None),
    };
    let trace = traced(&input, "nerve");
    let mut report = Report::new("nerve", &[&input], bound, &trace);
    report.field("counts", counts(n.sset()));
    report.field("faithful", format!("{:?}", n.sset().faithful()));
    let doc = Document::sset(n.sset(), Provenance::new(trace, bound));
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(Status::Pass),
        status: Status::Pass,
    })
}

pub fn twist(common: &Common, path: &Path, projection: bool) -> Outcome<Done> {
    let input = load(path)?;
    let d = common.max_dim(DEFAULT_MAX_DIM)?;
    let x = input.sset(d)?;
    let t = twisted_arrow(x, d)?;
    let trace = traced(&input, "twisted-arrow");
    let mut report = Report::new("twist", &[&input], Some(d), &trace);
    report.field("counts", counts(t.total()));
    report.field("emitted", if projection { "projection" } else { "total" });
    let prov = Provenance::new(trace, Some(d));
    let doc = if projection {
        Document::map(&t.proj, prov)
    } else {
        Document::sset(t.total(), prov)
    };
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(Status::Pass),
        status: Status::Pass,
    })
}

pub fn arrow(common: &Common, path: &Path) -> Outcome<Done> {
    let input = load(path)?;
    let d = common.max_dim(DEFAULT_MAX_DIM)?;
    let x = input.sset(d)?;
    let a = arrow_sset(x, d)?;
    let trace = traced(&input, "arrow");
    let mut report = Report::new("arrow", &[&input], Some(d), &trace);
    report.field("counts", counts(a.sset()));
    let doc = Document::sset(a.sset(), Provenance::new(trace, Some(d)));
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(Status::Pass),
        status: Status::Pass,
    })
}

/// The largest check bound both ends of `p` support, capped at `want`.
fn supported_bound(p: &SSetMap, want: usize) -> usize {
    [p.domain().faithful(), p.codomain().faithful()]
        .into_iter()
        .flatten()
        .fold(want, usize::min)
}

fn choose_variance(input: &Input, p: &SSetMap, d: usize, variance: Variance) -> Outcome<(Variance, String)> {
    if variance != Variance::Auto {
        return Ok((variance, "requested".into()));
    }
    let bound = supported_bound(p, d.max(2) + 1);
    let cart = is_cartesian_fibration(p, bound).passed();
    let cocart = is_cocartesian_fibration(p, bound).passed();
    let last = input.trace().last().cloned();
    match (cart, cocart) {
        (true, false) => Ok((Variance::Cartesian, format!("cartesian at bound {bound}"))),
        (false, true) => Ok((Variance::Cocartesian, format!("cocartesian at bound {bound}"))),
        (true, true) if last.as_deref() == Some("dual-cartesian") => {
            Ok((Variance::Cocartesian, format!("both at bound {bound}; input is a cartesian dual")))
        }
        (true, true) => Ok((Variance::Cartesian, format!("both at bound {bound}"))),
        (false, false) => Err(Failure::precondition(format!(
            "{}: neither a cartesian nor a cocartesian fibration at bound {bound}",
            input.path.display()
        ))),
    }
}

pub fn dual(common: &Common, path: &Path, mode: Mode, variance: Variance) -> Outcome<Done> {
    let input = load(path)?;
    match mode {
        Mode::Fibration => dual_fibration(common, &input, variance),
        Mode::Categorical => dual_categorical(common, &input),
    }
}

fn dual_fibration(common: &Common, input: &Input, variance: Variance) -> Outcome<Done> {
    let d = common.max_dim(DEFAULT_MAX_DIM)?;
    let p = input.map()?;
    let (variance, why) = choose_variance(input, &p, d, variance)?;
    let (dual, step) = match variance {
        Variance::Cocartesian => (dualize_cocartesian(&p, d)?, "dual-cocartesian"),
        _ => (dualize_cartesian(&p, d)?, "dual-cartesian"),
    };
    let trace = traced(input, step);
    let mut report = Report::new("dual", &[input], Some(d), &trace);
    report.field("mode", "fibration");
    report.field("variance", step.trim_start_matches("dual-"));
    report.field("variance-reason", why);
    report.field("counts", counts(&dual.total));
    report.field("marked-edges", dual.cartesian.len());
    let doc = Document::map(&dual.proj, Provenance::new(trace, Some(d)));
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(Status::Pass),
        status: Status::Pass,
    })
}

fn dual_categorical(common: &Common, input: &Input) -> Outcome<Done> {
    let d = common.max_dim(2)?;
    let f = match &input.doc.body {
        Body::Functor(f) => f.to_functor()?,
        other => return Err(input.wrong_kind("a functor", other.kind())),
    };
    let fib = is_groth_fibration(&f)
        .fibration()
        .ok_or_else(|| Failure::precondition("the functor is not a Grothendieck fibration"))?;
    let (triple, _) = span_triple(&f)?;
    let burnside = eff_burnside(&triple, d)?;
    let classical = classical_span_dual(&fib);
    let spans = homotopy_category(burnside.sset())?;
    let equivalent = find_equivalence(&spans.category, &classical.category).is_some();
    let status = if equivalent { Status::Pass } else { Status::Fail };
    let trace = traced(input, "effective-burnside");
    let mut report = Report::new("dual", &[input], Some(d), &trace);
    report.field("mode", "categorical");
    report.field("counts", counts(burnside.sset()));
    report.field("homotopy-morphisms", spans.category.morphism_count());
    report.field("classical-morphisms", classical.category.morphism_count());
    report.field("classical-equivalence", if equivalent { "pass" } else { "fail" });
    let doc = Document::sset(burnside.sset(), Provenance::new(trace, Some(d)));
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(status),
        status,
    })
}

pub fn double_dual(common: &Common, path: &Path, check_bound: usize) -> Outcome<Done> {
    let input = load(path)?;
    let d = common.max_dim(check_bound.max(1))?;
    let p = input.map()?;
    let dd = double_dual_prime(&p, d)?;
    let alpha = is_trivial_fibration(&dd.alpha, check_bound);
    let beta = fiberwise_equivalence(&dd.beta, &dd.prime_proj, &dd.xvv_proj, check_bound, 2);
    let status = worst(status_of(alpha.verdict), status_of(beta.verdict));
    let trace = traced(&input, "double-dual");
    let mut report = Report::new("doubledual", &[&input], Some(d), &trace);
    report.field("prime-counts", counts(&dd.x_prime.sset));
    report.field("double-dual-counts", counts(&dd.xvv.sset));
    report.block("alpha", &alpha);
    report.block("beta", &beta);
    let doc = Document::map(&dd.xvv_proj, Provenance::new(trace, Some(d)));
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(status),
        status,
    })
}

pub fn check(common: &Common, path: &Path, class: Class) -> Outcome<Done> {
    let input = load(path)?;
    let bound = common.max_dim(DEFAULT_MAX_DIM)?;
    let p = input.map()?;
    let r: CheckReport = match class {
        Class::Inner => is_inner_fibration(&p, bound),
        Class::Left => is_left_fibration(&p, bound),
        Class::Right => is_right_fibration(&p, bound),
        Class::Trivial => is_trivial_fibration(&p, bound),
        Class::Cartesian => is_cartesian_fibration(&p, bound),
        Class::Cocartesian => is_cocartesian_fibration(&p, bound),
        Class::Quasicategory => is_quasicategory(p.domain(), bound),
    };
    let status = status_of(r.verdict);
    let mut report = Report::new("check", &[&input], Some(bound), &input.trace());
    report.block("result", &r);
    Ok(Done {
        artifact: None,
        report: report.finish(status),
        status,
    })
}

fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

pub fn staircase(n: usize) -> Outcome<Done> {
    if n == 0 || n > 10 {
        return Err(Failure::precondition("--n must lie in 1..=10"));
    }
    let paths = enumerate_paths(n);
    let index: BTreeMap<Vec<(usize, usize)>, usize> =
        paths.iter().enumerate().map(|(i, x)| (x.vertices.clone(), i)).collect();
    let mut histogram = vec![0usize; n * (n - 1) / 2 + 1];
    let mut flips = Vec::new();
    let mut lowering = true;
    let mut reconstructed = true;
    for (i, x) in paths.iter().enumerate() {
        let k = area(x);
        histogram[k] += 1;
        let vs = flipvertices(x);
        if k > 0 && from_flipvertices(n, &vs).as_ref().map(|y| &y.vertices) != Some(&x.vertices) {
            reconstructed = false;
        }
        for v in vs {
            let y = flip(x, v)?;
            lowering &= area(&y) + 1 == k;
            flips.push(json!([i, index[&y.vertices]]));
        }
    }
    let ok = paths.len() as u64 == catalan(n) && lowering && reconstructed;
    let status = if ok { Status::Pass } else { Status::Fail };
    let mut report = Report::new("staircase", &[], Some(n), &["staircase".to_string()]);
    report.field("paths", paths.len());
    report.field("catalan", catalan(n));
    report.field("area-histogram", format!("{histogram:?}"));
    report.field("flips", flips.len());
    report.field("flips-lower-area", lowering);
    report.field("reconstruction", reconstructed);
    let content = json!({
        "n": n,
        "paths": paths.iter().map(|x| &x.vertices).collect::<Vec<_>>(),
        "areas": paths.iter().map(area).collect::<Vec<_>>(),
        "area_histogram": histogram,
        "flip_graph": flips,
    });
    let doc = Document::new(Provenance::new(["staircase".to_string()], Some(n)), Body::Report { content });
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(status),
        status,
    })
}

fn replay_report(mut report: Report, cert: &Certificate) -> (String, Status) {
    let verdict = check_certificate(cert);
    let status = if verdict.passed { Status::Pass } else { Status::Fail };
    report.field("size", cert.size());
    report.field("replayed-steps", verdict.steps);
    report.field("verdict", if verdict.passed { "pass" } else { "fail" });
    if let Some(step) = verdict.failed_step {
        report.field("failed-step", step);
        report.field("reason", &verdict.reason);
    }
    (report.finish(status), status)
}

pub fn certify(kind: CertKind, n: usize, s: Option<usize>, face: &[usize]) -> Outcome<Done> {
    let (cert, step) = match kind {
        CertKind::LongSimplex => (certify_long_simplex(n)?, format!("certify-long-simplex({n})")),
        CertKind::Iota => (certify_iota(n)?, format!("certify-iota({n})")),
        CertKind::Contiguity => {
            let s = s.ok_or_else(|| Failure::precondition("contiguity certificates need --s"))?;
            (contiguity_certificate(n, s, face)?, format!("certify-contiguity({n}, {s}, {face:?})"))
        }
    };
    let trace = vec![step];
    let report = Report::new("certify", &[], Some(n), &trace);
    let (report, status) = replay_report(report, &cert);
    let doc = Document::new(Provenance::new(trace, Some(n)), Body::Certificate(cert));
    Ok(Done {
        artifact: artifact(doc),
        report,
        status,
    })
}

pub fn replay(path: &Path) -> Outcome<Done> {
    let input = load(path)?;
    let cert = match &input.doc.body {
        Body::Certificate(c) => c.clone(),
        other => return Err(input.wrong_kind("a certificate", other.kind())),
    };
    let report = Report::new("certify --replay", &[&input], input.doc.provenance.max_dim, &input.trace());
    let (report, status) = replay_report(report, &cert);
    Ok(Done {
        artifact: None,
        report,
        status,
    })
}

pub fn pairing(common: &Common, path: &Path, at_vertex: Option<usize>, check_bound: usize) -> Outcome<Done> {
    let input = load(path)?;
    let d = common.max_dim(DEFAULT_MAX_DIM)?;
    let q = input.map()?;
    let vertices: Vec<usize> = match at_vertex {
        Some(t) if t >= q.codomain().count(0) => {
            return Err(Failure::precondition(format!("vertex {t} is not a vertex of the base")));
        }
        Some(t) => vec![t],
        None => (0..q.codomain().count(0)).collect(),
    };
    let p = build_duality_pairing(&q, d)?;
    let trace = traced(&input, "duality-pairing");
    let mut report = Report::new("pairing", &[&input], Some(d), &trace);
    report.field("counts", counts(p.total()));
    let left = is_left_fibration(&p.pairing, d);
    let mut status = status_of(left.verdict);
    report.block("left-fibration", &left);
    for &t in &vertices {
        let r = check_perfect_pairing(&p, t, check_bound)?;
        status = worst(status, status_of(r.check.verdict));
        report.block(&format!("perfect-pairing {t}"), &r);
        let homs = compare_mapping_spaces(&p, t, check_bound.max(2))?;
        let bad = homs.iter().filter(|h| h.components != h.hom).count();
        if bad > 0 {
            status = worst(status, Status::Fail);
        }
        report.field(&format!("mapping-spaces {t}"), format!("{} compared, {bad} mismatched", homs.len()));
    }
    let func = check_functoriality(&p)?;
    status = worst(status, status_of(func.verdict));
    report.block("functoriality", &func);
    let doc = Document::map(&p.pairing, Provenance::new(trace, Some(d)));
    Ok(Done {
        artifact: artifact(doc),
        report: report.finish(status),
        status,
    })
}

/// Same face tables level by level, labels ignored.
fn same_shape(a: &SimplicialSet, b: &SimplicialSet) -> bool {
    let top = a.counts().len().max(b.counts().len());
    (0..top).all(|d| a.count(d) == b.count(d) && a.level(d).iter().zip(b.level(d)).all(|(x, y)| x.faces == y.faces))
}

pub fn compare(common: &Common, first: &Path, second: &Path) -> Outcome<Done> {
    let (a_in, b_in) = (load(first)?, load(second)?);
    let bound = common.max_dim(DEFAULT_MAX_DIM)?;
    let (a, b) = (a_in.map()?, b_in.map()?);
    if !same_shape(a.codomain(), b.codomain()) {
        return Err(Failure::precondition("the two maps have different bases"));
    }
    let mut trace = a_in.trace();
    trace.push("|".into());
    trace.extend(b_in.trace());
    let mut report = Report::new("compare", &[&a_in, &b_in], Some(bound), &trace);
    let mut status = Status::Pass;
    for s in 0..a.codomain().count(0) {
        let (fa, fb) = (fiber_homotopy_category(&a, s, bound)?, fiber_homotopy_category(&b, s, bound)?);
        let (ca, cb) = (&fa.ho.category, &fb.ho.category);
        let eq = find_equivalence(ca, cb).is_some();
        if !eq {
            status = Status::Fail;
        }
        report.field(
            &format!("fiber {s}"),
            format!(
                "{} objects / {} morphisms vs {} / {}: {}",
                ca.object_count(),
                ca.morphism_count(),
                cb.object_count(),
                cb.morphism_count(),
                if eq { "equivalent" } else { "not equivalent" }
            ),
        );
    }
    report.field("fiberwise-equivalence", if status == Status::Pass { "pass" } else { "fail" });
    Ok(Done {
        artifact: None,
        report: report.finish(status),
        status,
    })
}
