use std::collections::{HashMap, HashSet};

use super::lift::LiftingProblem;
use crate::sset::{boundary_and_horns, standard_simplex, HornSpec, SSetMap, SimplexRef, SimplicialSet};

/// All lifting problems of `p` against `Λ^n_k` (or `∂Δ^n` when nothing is
/// omitted), indexed for fast filler lookup.
pub struct HornFamily<'a> {
    p: &'a SSetMap,
    n: usize,
    omitted: Option<usize>,
}

pub(crate) struct ScanOutcome {
    pub problems: u64,
    pub lifts: u64,
    pub failure: Option<(Vec<Option<SimplexRef>>, SimplexRef)>,
}

type FaceKey = Vec<SimplexRef>;

impl<'a> HornFamily<'a> {
    pub fn new(p: &'a SSetMap, n: usize, omitted: Option<usize>) -> Self {
        HornFamily { p, n, omitted }
    }

    fn present(&self) -> Vec<usize> {
        (0..=self.n).filter(|&i| Some(i) != self.omitted).collect()
    }

    fn key_of(&self, x: &SimplicialSet, s: SimplexRef) -> FaceKey {
        if self.n == 0 {
            return Vec::new();
        }
        self.present().iter().map(|&i| x.face(i, s)).collect()
    }

    /// Enumerates horns (faces at present indices) passing `accept`, and for
    /// each, every simplex of the base extending their image. Stops at the first
    /// problem without a filler.
    pub(crate) fn scan(&self, accept: impl Fn(&[Option<SimplexRef>]) -> bool) -> ScanOutcome {
        let (x, s) = (self.p.domain(), self.p.codomain());
        let n = self.n;
        let mut fillers: HashSet<(FaceKey, SimplexRef)> = HashSet::new();
        for &y in &x.boundary_table(n).all {
            fillers.insert((self.key_of(x, y), self.p.apply(y)));
        }
        let mut bottoms: HashMap<FaceKey, Vec<SimplexRef>> = HashMap::new();
        for &sigma in &s.boundary_table(n).all {
            bottoms.entry(self.key_of(s, sigma)).or_default().push(sigma);
        }
        let mut out = ScanOutcome {
            problems: 0,
            lifts: 0,
            failure: None,
        };
        let present = self.present();
        let mut faces: Vec<Option<SimplexRef>> = vec![None; n + 1];
        if n == 0 {
            self.visit(&faces, &fillers, &bottoms, &mut out);
            return out;
        }
        let pool = x.boundary_table(n - 1).all.clone();
        // Index the (n-1)-simplices by their face at the position used to
        // constrain later faces against the first one.
        let first = present[0];
        let mut by_face: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
        if n >= 2 {
            for &y in &pool {
                by_face.entry(x.face(first, y)).or_default().push(y);
            }
        }
        self.extend(0, &present, &pool, &by_face, &mut faces, &accept, &fillers, &bottoms, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        depth: usize,
        present: &[usize],
        pool: &[SimplexRef],
        by_face: &HashMap<SimplexRef, Vec<SimplexRef>>,
        faces: &mut Vec<Option<SimplexRef>>,
        accept: &dyn Fn(&[Option<SimplexRef>]) -> bool,
        fillers: &HashSet<(FaceKey, SimplexRef)>,
        bottoms: &HashMap<FaceKey, Vec<SimplexRef>>,
        out: &mut ScanOutcome,
    ) -> bool {
        if depth == present.len() {
            if !accept(faces) {
                return true;
            }
            return self.visit(faces, fillers, bottoms, out);
        }
        let x = self.p.domain();
        let i = present[depth];
        let empty = Vec::new();
        let cands: &[SimplexRef] = if depth == 0 || self.n < 2 {
            pool
        } else {
            // d_first y_i = d_{i-1} y_first since first < i.
            let y0 = faces[present[0]].unwrap();
            by_face.get(&x.face(i - 1, y0)).unwrap_or(&empty)
        };
        for &y in cands {
            let ok = self.n < 2
                || present[..depth].iter().all(|&j| {
                let yj = faces[j].unwrap();
                x.face(j, y) == x.face(i - 1, yj)
            });
            if !ok {
                continue;
            }
            faces[i] = Some(y);
            let go_on = self.extend(depth + 1, present, pool, by_face, faces, accept, fillers, bottoms, out);
            faces[i] = None;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn visit(
        &self,
        faces: &[Option<SimplexRef>],
        fillers: &HashSet<(FaceKey, SimplexRef)>,
        bottoms: &HashMap<FaceKey, Vec<SimplexRef>>,
        out: &mut ScanOutcome,
    ) -> bool {
        let key: FaceKey = faces.iter().flatten().copied().collect();
        let image: FaceKey = key.iter().map(|&y| self.p.apply(y)).collect();
        let empty = Vec::new();
        let sigmas = if self.n == 0 {
            bottoms.get(&Vec::new()).unwrap_or(&empty)
        } else {
            bottoms.get(&image).unwrap_or(&empty)
        };
        for &sigma in sigmas {
            out.problems += 1;
            if fillers.contains(&(key.clone(), sigma)) {
                out.lifts += 1;
            } else {
                out.failure = Some((faces.to_vec(), sigma));
                return false;
            }
        }
        true
    }

    /// The lifting problem given by a horn and a bottom simplex.
    pub fn problem(&self, faces: &[Option<SimplexRef>], sigma: SimplexRef) -> LiftingProblem {
        let n = self.n;
        let (x, s) = (self.p.domain(), self.p.codomain());
        let spec = match self.omitted {
            Some(k) => HornSpec::horn([k]),
            None => HornSpec::Boundary,
        };
        let sub = boundary_and_horns(n, &spec).expect("horn within range");
        let simplex = standard_simplex(n);
        let top = SSetMap::from_fn(sub.sset.clone(), x.clone(), |c| {
            let verts = simplex.vertices(sub.inclusion.image_of_cell(c));
            let i = (0..=n)
                .find(|&i| faces[i].is_some() && !verts.contains(&i))
                .expect("horn cells lie in a present face");
            let theta: Vec<usize> = verts.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
            x.pull(faces[i].unwrap(), &theta)
        })
        .expect("compatible faces define a map");
        let bottom = SSetMap::from_fn(simplex.clone(), s.clone(), |c| {
            s.pull(sigma, &simplex.vertices(SimplexRef::cell(c)))
        })
        .expect("restrictions of a simplex");
        LiftingProblem {
            inclusion: sub.inclusion,
            top,
            bottom,
            over: self.p.clone(),
        }
    }
}
