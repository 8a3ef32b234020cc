use dualfib::anodyne::{
    certify_iota, certify_long_simplex, check_certificate, contiguity_certificate, fill_certificate,
    generalized_horn_certificate, Ambient, Certificate, Generator, MarkedComplex, Step, CERTIFY_BOUND,
};

fn passes(c: &Certificate) -> bool {
    let v = check_certificate(c);
    assert!(v.passed || v.failed_step.is_some());
    v.passed
}

#[test]
fn long_simplex_and_iota_through_three() {
    for n in 0..=3 {
        assert!(passes(&certify_long_simplex(n).unwrap()), "long simplex {n}");
        assert!(passes(&certify_iota(n).unwrap()), "iota {n}");
    }
}

#[test]
fn iota_four() {
    assert_eq!(CERTIFY_BOUND, 4);
    assert!(passes(&certify_iota(4).unwrap()));
    assert!(certify_iota(5).is_err());
}

#[test]
fn contiguity_for_every_valid_triple_through_five() {
    let mut count = 0;
    for m in 2..=5 {
        for s in 1..m {
            for lo in 0..s {
                for hi in s + 1..=m {
                    let f: Vec<usize> = (lo..=hi).collect();
                    assert!(passes(&contiguity_certificate(m, s, &f).unwrap()), "{m} {s} {f:?}");
                    count += 1;
                }
            }
        }
    }
    // Pairs lo < s < hi with 0 < s < m, summed over m.
    assert_eq!(count, 1 + 4 + 10 + 20);
}

#[test]
fn contiguity_preconditions() {
    assert!(contiguity_certificate(4, 2, &[1, 3]).is_err());
    assert!(contiguity_certificate(4, 1, &[1, 2]).is_err());
    assert!(contiguity_certificate(3, 0, &[0, 1]).is_err());
    assert!(contiguity_certificate(3, 2, &[]).is_err());
}

#[test]
fn generalized_horns() {
    assert!(passes(&generalized_horn_certificate(4, &[1, 3]).unwrap()));
    assert!(passes(&generalized_horn_certificate(2, &[0, 2]).unwrap()));
    // Neither reaches Δ^3 through inner horns: the edge 12 only appears
    // in an outer horn.
    assert!(generalized_horn_certificate(3, &[1]).is_err());
    assert!(generalized_horn_certificate(3, &[1, 2]).is_err());
    assert!(fill_certificate(2, vec![vec![0, 1], vec![0, 2]]).is_err());
}

#[test]
fn truncated_proof_is_rejected() {
    let mut c = certify_long_simplex(2).unwrap();
    if let Step::Composite { steps } = &mut c.proof {
        steps.pop();
    }
    let v = check_certificate(&c);
    assert!(!v.passed);
}

#[test]
fn outer_horn_generator_is_rejected() {
    let ambient = Ambient::Ordinal { m: 2 };
    let c = Certificate {
        ambient,
        source: MarkedComplex::new(vec![vec![0, 1], vec![0, 2]], []),
        target: MarkedComplex::new(vec![vec![0, 1, 2]], []),
        proof: Step::Generator {
            generator: Generator::InnerHorn { d: 2, k: 0 },
            attach: vec![0, 1, 2],
        },
    };
    assert!(!passes(&c));
}

#[test]
fn extra_marking_in_target_is_rejected() {
    let mut c = certify_long_simplex(1).unwrap();
    let ambient = c.ambient;
    c.target.marked.insert((ambient.element((0, 0)), ambient.element((1, 1))));
    assert!(!passes(&c));
}

#[test]
fn certificates_are_deterministic() {
    assert_eq!(certify_iota(3).unwrap(), certify_iota(3).unwrap());
}
