use std::collections::BTreeSet;

use super::certificate::{inner_horn_filling, Certificate, Generator, Position, Step};
use super::complex::{Ambient, MarkedComplex};
use super::staircase::{area, enumerate_paths, flip_positions, StaircasePath};
use crate::{Error, Result};

/// Largest `n` the staircase certificates are emitted for.
pub const CERTIFY_BOUND: usize = 4;

fn ordinal_simplex(d: usize) -> Vec<usize> {
    (0..=d).collect()
}

/// `source ⊂ Δ^d` by inner-horn pushouts alone.
pub fn fill_certificate(d: usize, source: Vec<Vec<usize>>) -> Result<Certificate> {
    let ambient = Ambient::Ordinal { m: d };
    let source = MarkedComplex::new(source, []);
    let target = MarkedComplex::new(vec![ordinal_simplex(d)], []);
    let steps = inner_horn_filling(&source.closure(&ambient)?, &target.closure(&ambient)?)
        .ok_or_else(|| Error::Invalid(format!("no inner-horn filling of {:?} in Δ^{d}", source.facets)))?;
    Ok(Certificate {
        ambient,
        source,
        target,
        proof: Step::Composite { steps },
    })
}

/// The union of the faces `∂_i Δ^d`, `i` in `faces`, inside `Δ^d`.
pub fn generalized_horn_certificate(d: usize, faces: &[usize]) -> Result<Certificate> {
    let facets = faces
        .iter()
        .map(|&i| (0..=d).filter(|&v| v != i).collect())
        .collect();
    fill_certificate(d, facets)
}

/// `∂_s Δ^m ∪ Δ^F ⊂ Δ^m` for contiguous `F` with `s` inner to both.
pub fn contiguity_certificate(m: usize, s: usize, f: &[usize]) -> Result<Certificate> {
    let mut f: Vec<usize> = f.to_vec();
    f.sort();
    f.dedup();
    let (lo, hi) = match (f.first(), f.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::Precondition("F is empty".into())),
    };
    if hi > m || f.len() != hi - lo + 1 {
        return Err(Error::Precondition(format!("{f:?} is not a contiguous subset of [{m}]")));
    }
    if !(0 < s && s < m && lo < s && s < hi) {
        return Err(Error::Precondition(format!("{s} is not inner to both [{m}] and {f:?}")));
    }
    let ambient = Ambient::Ordinal { m };
    let boundary_face: Vec<usize> = (0..=m).filter(|&v| v != s).collect();
    let source = MarkedComplex::new(vec![boundary_face, f.clone()], []);
    let target = MarkedComplex::new(vec![ordinal_simplex(m)], []);
    let mut steps = Vec::new();
    let mut cur = f.clone();
    while cur.len() < m + 1 {
        let (lo, hi) = (cur[0], cur[cur.len() - 1]);
        let new = if hi < m { hi + 1 } else { lo - 1 };
        let mut next = cur.clone();
        next.push(new);
        next.sort();
        // Faces of Δ^{F'} opposite the new vertex and opposite s.
        let faces = [next.iter().position(|&v| v == new).unwrap(), next.iter().position(|&v| v == s).unwrap()];
        let along = generalized_horn_certificate(next.len() - 1, &faces)?;
        steps.push(Step::Pushout {
            along: Box::new(along),
            attach: next.clone(),
        });
        cur = next;
    }
    Ok(Certificate {
        ambient,
        source,
        target,
        proof: Step::Composite { steps },
    })
}

fn check_bound(n: usize) -> Result<()> {
    if n > CERTIFY_BOUND {
        return Err(Error::Precondition(format!("certificates are emitted for n <= {CERTIFY_BOUND}")));
    }
    Ok(())
}

fn long_simplex(ambient: &Ambient, n: usize) -> Vec<usize> {
    (0..=n).map(|i| ambient.element((i, i))).collect()
}

fn path_chain(ambient: &Ambient, x: &StaircasePath) -> Vec<usize> {
    x.vertices.iter().map(|&p| ambient.element(p)).collect()
}

/// All chains of the arrow poset of `[n]`, marked by constant target.
fn full_arrow(ambient: &Ambient, n: usize) -> Result<MarkedComplex> {
    let facets = enumerate_paths(n).iter().map(|x| path_chain(ambient, x)).collect();
    MarkedComplex::natural(ambient, facets)
}

/// Steps for `x ∩ O_{k-1} ⊂ x` with `x` of positive area.
fn path_steps(ambient: &Ambient, x: &StaircasePath) -> Result<Step> {
    let n = x.n;
    let chain = path_chain(ambient, x);
    let positions = flip_positions(x);
    if positions.len() != 1 {
        let along = generalized_horn_certificate(2 * n, &positions)?;
        return Ok(Step::Pushout {
            along: Box::new(along),
            attach: chain,
        });
    }
    let r = positions[0];
    let j = x.vertices[r].1;
    let mut steps = vec![Step::Generator {
        generator: Generator::IotaOnePattern,
        attach: vec![chain[r - 1], chain[r], chain[r + 1]],
    }];
    steps.push(Step::Pushout {
        along: Box::new(contiguity_certificate(2 * n, r, &[r - 1, r, r + 1])?),
        attach: chain.clone(),
    });
    // Mark the longer edges out of the flipvertex along its row.
    let mut t = r + 2;
    while t < x.vertices.len() && x.vertices[t].1 == j {
        steps.push(Step::Generator {
            generator: Generator::Saturation,
            attach: vec![chain[r], chain[t - 1], chain[t]],
        });
        t += 1;
    }
    Ok(Step::Composite { steps })
}

/// The long simplex `(Δ^n)^♭` inside the marked arrow poset of `[n]`.
pub fn certify_long_simplex(n: usize) -> Result<Certificate> {
    check_bound(n)?;
    let ambient = Ambient::Arrow { n };
    let source = MarkedComplex::new(vec![long_simplex(&ambient, n)], []);
    let target = full_arrow(&ambient, n)?;
    let mut steps = Vec::new();
    if n > 0 {
        for i in 0..n {
            steps.push(Step::Generator {
                generator: Generator::IotaOnePattern,
                attach: vec![ambient.element((i, i)), ambient.element((i, i + 1)), ambient.element((i + 1, i + 1))],
            });
        }
        // The stairs, read as Δ^{2n}: the long simplex sits on even positions.
        let mut glued: Vec<Vec<usize>> = vec![(0..=n).map(|i| 2 * i).collect()];
        glued.extend((0..n).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]));
        let stairs = StaircasePath::stairs(n);
        steps.push(Step::Pushout {
            along: Box::new(fill_certificate(2 * n, glued)?),
            attach: path_chain(&ambient, &stairs),
        });
        let paths = enumerate_paths(n);
        for k in 1..=n * (n - 1) / 2 {
            for x in paths.iter().filter(|x| area(x) == k) {
                steps.push(path_steps(&ambient, x)?);
            }
        }
    }
    Ok(Certificate {
        ambient,
        source,
        target,
        proof: Step::Composite { steps },
    })
}

/// `∂O(Δ^n)^♮ ∪ (Δ^n)^♭`: the arrows of proper faces plus the long simplex.
fn boundary_with_long(ambient: &Ambient, n: usize) -> Result<MarkedComplex> {
    let mut facets: Vec<Vec<usize>> = vec![long_simplex(ambient, n)];
    for omit in 0..=n {
        let face: Vec<usize> = (0..=n).filter(|&v| v != omit).collect();
        if face.is_empty() {
            continue;
        }
        let sub = face.len() - 1;
        for x in enumerate_paths_or_point(sub) {
            facets.push(x.vertices.iter().map(|&(a, b)| ambient.element((face[a], face[b]))).collect());
        }
    }
    let all: BTreeSet<Vec<usize>> = facets.into_iter().collect();
    MarkedComplex::natural(ambient, all.into_iter().collect())
}

fn enumerate_paths_or_point(n: usize) -> Vec<StaircasePath> {
    if n == 0 {
        vec![StaircasePath {
            n: 0,
            vertices: vec![(0, 0)],
        }]
    } else {
        enumerate_paths(n)
    }
}

/// `(Δ^n)^♭ ⊂ ∂O(Δ^n)^♮ ∪ (Δ^n)^♭`, by pushouts along the smaller `ι_l`.
fn certify_skeleta(n: usize) -> Result<Certificate> {
    let ambient = Ambient::Arrow { n };
    let source = MarkedComplex::new(vec![long_simplex(&ambient, n)], []);
    let target = boundary_with_long(&ambient, n)?;
    let mut steps = Vec::new();
    for l in 1..n {
        let iota = certify_iota(l)?;
        for face in subsets(n + 1, l + 1) {
            let inner = Ambient::Arrow { n: l };
            let attach = (0..inner.len())
                .map(|e| {
                    let (a, b) = inner.point(e);
                    ambient.element((face[a], face[b]))
                })
                .collect();
            steps.push(Step::Pushout {
                along: Box::new(iota.clone()),
                attach,
            });
        }
    }
    Ok(Certificate {
        ambient,
        source,
        target,
        proof: Step::Composite { steps },
    })
}

fn subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    (0u64..1 << len)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..len).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// `ι_n: ∂O(Δ^n)^♮ ∪ (Δ^n)^♭ ⊂ O(Δ^n)^♮`.
pub fn certify_iota(n: usize) -> Result<Certificate> {
    check_bound(n)?;
    let ambient = Ambient::Arrow { n };
    let source = boundary_with_long(&ambient, n)?;
    let target = full_arrow(&ambient, n)?;
    let proof = match n {
        0 => Step::Composite { steps: Vec::new() },
        1 => Step::Generator {
            generator: Generator::IotaOnePattern,
            attach: vec![ambient.element((0, 0)), ambient.element((0, 1)), ambient.element((1, 1))],
        },
        _ => Step::TwoOutOfThree {
            position: Position::Right,
            first: Box::new(certify_skeleta(n)?),
            second: Box::new(certify_long_simplex(n)?),
        },
    };
    Ok(Certificate {
        ambient,
        source,
        target,
        proof,
    })
}
