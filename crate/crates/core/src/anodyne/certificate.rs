use serde::{Deserialize, Serialize};

use super::complex::{Ambient, Closure, MarkedComplex};
use crate::{Error, Result};

/// The generating inclusions, each living in `Δ^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// `Λ^d_k ⊂ Δ^d`, unmarked, `0 < k < d`.
    InnerHorn { d: usize, k: usize },
    /// `(Δ^{02})^♭ ⊂ (Δ^2)^♭ ∪ (Δ^{12})^♯`.
    IotaOnePattern,
    /// `(Λ^2_1)^♯ ∪ (Δ^2)^♭ ⊂ (Δ^2)^♯`: marks a composite of marked edges.
    Saturation,
}

impl Generator {
    pub fn dim(&self) -> usize {
        match *self {
            Generator::InnerHorn { d, .. } => d,
            _ => 2,
        }
    }

    /// Source and target as complexes in `Ambient::Ordinal { m: dim }`.
    pub fn template(&self) -> Result<(MarkedComplex, MarkedComplex)> {
        Ok(match *self {
            Generator::InnerHorn { d, k } => {
                if k == 0 || k >= d {
                    return Err(Error::Invalid(format!("Λ^{d}_{k} is not an inner horn")));
                }
                let horn = (0..=d)
                    .filter(|&i| i != k)
                    .map(|i| (0..=d).filter(|&v| v != i).collect())
                    .collect();
                (MarkedComplex::new(horn, []), MarkedComplex::new(vec![(0..=d).collect()], []))
            }
            Generator::IotaOnePattern => (
                MarkedComplex::new(vec![vec![0, 2]], []),
                MarkedComplex::new(vec![vec![0, 1, 2]], [(1, 2)]),
            ),
            Generator::Saturation => (
                MarkedComplex::new(vec![vec![0, 1, 2]], [(0, 1), (1, 2)]),
                MarkedComplex::new(vec![vec![0, 1, 2]], [(0, 1), (1, 2), (0, 2)]),
            ),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    /// Concludes `f` from `g` and `g ∘ f`.
    Left,
    /// Concludes `g` from `f` and `g ∘ f`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    /// Pushout along a generator; `attach` sends the vertices of `Δ^d` into the ambient.
    Generator { generator: Generator, attach: Vec<usize> },
    /// Pushout along a certified inclusion; `attach` maps its ambient into ours.
    Pushout { along: Box<Certificate>, attach: Vec<usize> },
    Composite { steps: Vec<Step> },
    /// With position `Left`, `first` is `g` and `second` is `g ∘ f`;
    /// with `Right`, `first` is `f` and `second` is `g ∘ f`.
    TwoOutOfThree {
        position: Position,
        first: Box<Certificate>,
        second: Box<Certificate>,
    },
}

/// A claim that `source ⊂ target` lies in the class generated by the
/// templates under pushouts, composites and two-out-of-three, with a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub ambient: Ambient,
    pub source: MarkedComplex,
    pub target: MarkedComplex,
    pub proof: Step,
}

impl Certificate {
    /// Number of steps, counting nested ones.
    pub fn size(&self) -> usize {
        fn count(s: &Step) -> usize {
            match s {
                Step::Generator { .. } => 1,
                Step::Pushout { along, .. } => 1 + along.size(),
                Step::Composite { steps } => steps.iter().map(count).sum(),
                Step::TwoOutOfThree { first, second, .. } => 1 + first.size() + second.size(),
            }
        }
        count(&self.proof)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertVerdict {
    pub passed: bool,
    /// Pre-order index of the first failing step.
    pub failed_step: Option<usize>,
    pub reason: String,
    pub steps: usize,
}

struct Replay {
    counter: usize,
}

type StepResult = std::result::Result<Closure, (usize, String)>;

impl Replay {
    fn certificate(&mut self, cert: &Certificate) -> std::result::Result<(Closure, Closure), (usize, String)> {
        let here = self.counter;
        let src = cert.source.closure(&cert.ambient).map_err(|e| (here, format!("source: {e}")))?;
        let tgt = cert.target.closure(&cert.ambient).map_err(|e| (here, format!("target: {e}")))?;
        let reached = self.step(&cert.ambient, &cert.proof, src.clone())?;
        if reached != tgt {
            return Err((
                here,
                format!(
                    "proof reaches {} simplices / {} marked, target has {} / {}",
                    reached.simplices.len(),
                    reached.marked.len(),
                    tgt.simplices.len(),
                    tgt.marked.len()
                ),
            ));
        }
        Ok((src, tgt))
    }

    fn step(&mut self, ambient: &Ambient, step: &Step, state: Closure) -> StepResult {
        let index = self.counter;
        self.counter += 1;
        match step {
            Step::Generator { generator, attach } => {
                let (a, b) = generator.template().map_err(|e| (index, e.to_string()))?;
                let inner = Ambient::Ordinal { m: generator.dim() };
                let a = a.closure(&inner).map_err(|e| (index, e.to_string()))?;
                let b = b.closure(&inner).map_err(|e| (index, e.to_string()))?;
                pushout(ambient, &inner, &a, &b, attach, state).map_err(|r| (index, r))
            }
            Step::Pushout { along, attach } => {
                let (a, b) = self.certificate(along)?;
                pushout(ambient, &along.ambient, &a, &b, attach, state).map_err(|r| (index, r))
            }
            Step::Composite { steps } => steps.iter().try_fold(state, |s, st| self.step(ambient, st, s)),
            Step::TwoOutOfThree { position, first, second } => {
                for c in [first, second] {
                    if c.ambient != *ambient {
                        return Err((index, "two-out-of-three across ambients".into()));
                    }
                }
                let (f_src, f_tgt) = self.certificate(first)?;
                let (s_src, s_tgt) = self.certificate(second)?;
                match position {
                    Position::Left => {
                        // first = g: B -> C, second = g f: A -> C, state = A.
                        if f_tgt != s_tgt || state != s_src || !contained(&state, &f_src) {
                            return Err((index, "left two-out-of-three does not compose".into()));
                        }
                        Ok(f_src)
                    }
                    Position::Right => {
                        // first = f: A -> B, second = g f: A -> C, state = B.
                        if f_src != s_src || state != f_tgt || !contained(&state, &s_tgt) {
                            return Err((index, "right two-out-of-three does not compose".into()));
                        }
                        Ok(s_tgt)
                    }
                }
            }
        }
    }
}

fn contained(a: &Closure, b: &Closure) -> bool {
    a.simplices.is_subset(&b.simplices) && a.marked.is_subset(&b.marked)
}

/// Glues `b` onto `state` along `a`, after checking that the attaching map
/// is an embedding with `b ∩ state = a`.
fn pushout(
    ambient: &Ambient,
    inner: &Ambient,
    a: &Closure,
    b: &Closure,
    attach: &[usize],
    mut state: Closure,
) -> std::result::Result<Closure, String> {
    if attach.len() != inner.len() {
        return Err(format!("attaching map has {} values, expected {}", attach.len(), inner.len()));
    }
    if attach.iter().any(|&e| e >= ambient.len()) {
        return Err("attaching map leaves the ambient".into());
    }
    for x in 0..inner.len() {
        for y in 0..inner.len() {
            if x != y && (attach[x] == attach[y] || inner.leq(x, y) != ambient.leq(attach[x], attach[y])) {
                return Err(format!("attaching map is not an embedding at {x}, {y}"));
            }
        }
    }
    let map = |s: &Vec<usize>| -> Vec<usize> { s.iter().map(|&v| attach[v]).collect() };
    let edge = |&(x, y): &(usize, usize)| (attach[x], attach[y]);
    for s in &a.simplices {
        if !state.simplices.contains(&map(s)) {
            return Err(format!("attaching map does not send {s:?} into the complex"));
        }
    }
    for e in &a.marked {
        if !state.marked.contains(&edge(e)) {
            return Err(format!("marked edge {e:?} lands on an unmarked edge"));
        }
    }
    for s in &b.simplices {
        if !a.simplices.contains(s) && state.simplices.contains(&map(s)) {
            return Err(format!("new simplex {s:?} is already present"));
        }
    }
    state.simplices.extend(b.simplices.iter().map(map));
    state.marked.extend(b.marked.iter().map(edge));
    Ok(state)
}

/// Replays every step of a certificate.
pub fn check_certificate(cert: &Certificate) -> CertVerdict {
    let mut replay = Replay { counter: 0 };
    let outcome = replay.certificate(cert);
    match outcome {
        Ok(_) => CertVerdict {
            passed: true,
            failed_step: None,
            reason: String::new(),
            steps: replay.counter,
        },
        Err((i, reason)) => CertVerdict {
            passed: false,
            failed_step: Some(i),
            reason,
            steps: replay.counter,
        },
    }
}

/// Inner-horn pushouts taking `from` to `to` inside an ambient, found by
/// depth-first search with memoized dead ends.
pub fn inner_horn_filling(from: &Closure, to: &Closure) -> Option<Vec<Step>> {
    use std::collections::{BTreeSet, HashSet};
    let missing: BTreeSet<Vec<usize>> = to.simplices.difference(&from.simplices).cloned().collect();
    let mut have: HashSet<Vec<usize>> = from.simplices.iter().cloned().collect();
    let mut dead: HashSet<Vec<Vec<usize>>> = HashSet::new();
    let mut budget = 200_000usize;

    fn candidates(missing: &BTreeSet<Vec<usize>>, have: &HashSet<Vec<usize>>) -> Vec<(Vec<usize>, usize)> {
        let mut out: Vec<(Vec<usize>, usize)> = Vec::new();
        for s in missing {
            let d = s.len() - 1;
            if d < 2 {
                continue;
            }
            let absent: Vec<usize> = (0..=d)
                .filter(|&i| {
                    let mut f = s.clone();
                    f.remove(i);
                    !have.contains(&f)
                })
                .collect();
            if let [k] = absent[..] {
                if k > 0 && k < d {
                    out.push((s.clone(), k));
                }
            }
        }
        out.sort_by_key(|(s, _)| s.len());
        out
    }

    fn go(
        missing: &mut BTreeSet<Vec<usize>>,
        have: &mut HashSet<Vec<usize>>,
        dead: &mut HashSet<Vec<Vec<usize>>>,
        budget: &mut usize,
        steps: &mut Vec<(Vec<usize>, usize)>,
    ) -> bool {
        if missing.is_empty() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let key: Vec<Vec<usize>> = missing.iter().cloned().collect();
        if dead.contains(&key) {
            return false;
        }
        for (s, k) in candidates(missing, have) {
            let mut f = s.clone();
            f.remove(k);
            missing.remove(&s);
            missing.remove(&f);
            have.insert(s.clone());
            have.insert(f.clone());
            steps.push((s.clone(), k));
            if go(missing, have, dead, budget, steps) {
                return true;
            }
            steps.pop();
            have.remove(&s);
            have.remove(&f);
            missing.insert(s);
            missing.insert(f);
        }
        dead.insert(key);
        false
    }

    if !from.simplices.is_subset(&to.simplices) {
        return None;
    }
    let mut missing = missing;
    let mut steps = Vec::new();
    if !go(&mut missing, &mut have, &mut dead, &mut budget, &mut steps) {
        return None;
    }
    Some(
        steps
            .into_iter()
            .map(|(s, k)| Step::Generator {
                generator: Generator::InnerHorn { d: s.len() - 1, k },
                attach: s,
            })
            .collect(),
    )
}
