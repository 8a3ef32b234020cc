use std::sync::Arc;

use super::category::FinCategory;
use crate::{Error, Result};

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl CatFunctor {
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        on_objects: Vec<usize>,
        on_morphisms: Vec<usize>,
    ) -> Result<Self> {
        let f = CatFunctor {
            source,
            target,
            on_objects,
            on_morphisms,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        CatFunctor {
            on_objects: (0..c.object_count()).collect(),
            on_morphisms: (0..c.morphism_count()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    fn validate(&self) -> Result<()> {
        let (c, d) = (&self.source, &self.target);
        if self.on_objects.len() != c.object_count() || self.on_morphisms.len() != c.morphism_count() {
            return Err(Error::Category("functor tables do not match the source".into()));
        }
        if self.on_objects.iter().any(|&o| o >= d.object_count())
            || self.on_morphisms.iter().any(|&m| m >= d.morphism_count())
        {
            return Err(Error::Category("functor lands outside the target".into()));
        }
        for f in 0..c.morphism_count() {
            let g = self.on_morphisms[f];
            if d.source(g) != self.on_objects[c.source(f)] || d.target(g) != self.on_objects[c.target(f)] {
                return Err(Error::Category(format!(
                    "functor does not preserve the endpoints of {}",
                    c.morphism(f).name
                )));
            }
        }
        for a in 0..c.object_count() {
            if self.on_morphisms[c.identity(a)] != d.identity(self.on_objects[a]) {
                return Err(Error::Category(format!(
                    "functor does not preserve the identity of {}",
                    c.objects()[a]
                )));
            }
        }
        for (g, f, h) in c.composites() {
            if d.compose(self.on_morphisms[g], self.on_morphisms[f]) != Some(self.on_morphisms[h]) {
                return Err(Error::Category(format!(
                    "functor does not preserve the composite of ({}, {})",
                    c.morphism(g).name,
                    c.morphism(f).name
                )));
            }
        }
        Ok(())
    }

    pub fn object(&self, a: usize) -> usize {
        self.on_objects[a]
    }

    pub fn morphism(&self, f: usize) -> usize {
        self.on_morphisms[f]
    }

    pub fn then(&self, next: &CatFunctor) -> Result<CatFunctor> {
        CatFunctor::new(
            self.source.clone(),
            next.target.clone(),
            self.on_objects.iter().map(|&o| next.object(o)).collect(),
            self.on_morphisms.iter().map(|&m| next.morphism(m)).collect(),
        )
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self) -> CatFunctor {
        CatFunctor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            on_objects: self.on_objects.clone(),
            on_morphisms: self.on_morphisms.clone(),
        }
    }
}

/// Outcome of an equivalence test, with the first obstruction found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub equivalence: bool,
    pub reason: Option<String>,
}

impl EquivalenceVerdict {
    fn fail(reason: String) -> Self {
        EquivalenceVerdict {
            equivalence: false,
            reason: Some(reason),
        }
    }
}

/// Full faithfulness and essential surjectivity, checked exhaustively.
pub fn cat_equivalence(f: &CatFunctor) -> EquivalenceVerdict {
    let (c, d) = (&f.source, &f.target);
    for a in 0..c.object_count() {
        for b in 0..c.object_count() {
            let mut images: Vec<usize> = c.hom(a, b).iter().map(|&m| f.morphism(m)).collect();
            images.sort();
            let before = images.len();
            images.dedup();
            if images.len() != before {
                return EquivalenceVerdict::fail(format!(
                    "not faithful on hom({}, {})",
                    c.objects()[a],
                    c.objects()[b]
                ));
            }
            if images.len() != d.hom(f.object(a), f.object(b)).len() {
                return EquivalenceVerdict::fail(format!(
                    "not full on hom({}, {})",
                    c.objects()[a],
                    c.objects()[b]
                ));
            }
        }
    }
    for y in 0..d.object_count() {
        if !(0..c.object_count()).any(|a| d.are_isomorphic(f.object(a), y)) {
            return EquivalenceVerdict::fail(format!(
                "object {} is not in the essential image",
                d.objects()[y]
            ));
        }
    }
    EquivalenceVerdict {
        equivalence: true,
        reason: None,
    }
}

/// Searches for an equivalence between two categories: a functor `C -> D`
/// that passes [`cat_equivalence`]. Exhaustive over object assignments up to
/// isomorphism classes, so only suitable for small inputs.
pub fn find_equivalence(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<CatFunctor> {
    let skel_c = skeleton_classes(c);
    let skel_d = skeleton_classes(d);
    if skel_c.len() != skel_d.len() {
        return None;
    }
    // Choose a representative object of C for each class, map it to a class of D.
    let reps_c: Vec<usize> = skel_c.iter().map(|cls| cls[0]).collect();
    let reps_d: Vec<usize> = skel_d.iter().map(|cls| cls[0]).collect();
    let k = reps_c.len();
    let hom_c = |a: usize, b: usize| c.hom(reps_c[a], reps_c[b]).len();
    let hom_d = |a: usize, b: usize| d.hom(reps_d[a], reps_d[b]).len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut result = None;
    let mut visit = |p: &[usize]| match extend_on_skeleton(c, d, &skel_c, &reps_d, p) {
        Some(func) => {
            result = Some(func);
            true
        }
        None => false,
    };
    permute(&mut perm, 0, &|p, j| {
        (0..=j).all(|a| hom_c(a, j) == hom_d(p[a], p[j]) && hom_c(j, a) == hom_d(p[j], p[a]))
    }, &mut visit);
    result
}

fn permute(
    p: &mut Vec<usize>,
    k: usize,
    ok: &dyn Fn(&[usize], usize) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if k == p.len() {
        return visit(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if ok(p, k) && permute(p, k + 1, ok, visit) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

/// Isomorphism classes of objects, each sorted, ordered by first element.
pub fn skeleton_classes(c: &FinCategory) -> Vec<Vec<usize>> {
    let mut class: Vec<Option<usize>> = vec![None; c.object_count()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..c.object_count() {
        if class[a].is_some() {
            continue;
        }
        let members: Vec<usize> = (a..c.object_count()).filter(|&b| c.are_isomorphic(a, b)).collect();
        for &b in &members {
            class[b] = Some(out.len());
        }
        out.push(members);
    }
    out
}

/// Tries to build a functor `C -> D` sending class `i` of `C` to the
/// representative `reps_d[p[i]]`, searching over morphism assignments on the
/// full subcategory of representatives.
fn extend_on_skeleton(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    skel_c: &[Vec<usize>],
    reps_d: &[usize],
    p: &[usize],
) -> Option<CatFunctor> {
    let k = skel_c.len();
    let reps_c: Vec<usize> = skel_c.iter().map(|cls| cls[0]).collect();
    let mut class_of = vec![0; c.object_count()];
    for (i, cls) in skel_c.iter().enumerate() {
        for &a in cls {
            class_of[a] = i;
        }
    }
    // Morphisms between representatives, in a fixed order.
    let mut rep_morphisms = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for &f in c.hom(reps_c[a], reps_c[b]) {
                rep_morphisms.push(f);
            }
        }
    }
    let mut assign: Vec<Option<usize>> = vec![None; c.morphism_count()];
    fn consistent(c: &FinCategory, d: &FinCategory, assign: &[Option<usize>], f: usize) -> bool {
        let g = assign[f].unwrap();
        if c.is_identity(f) && !d.is_identity(g) {
            return false;
        }
        for (x, y, h) in c.composites() {
            if let (Some(ax), Some(ay), Some(ah)) = (assign[x], assign[y], assign[h]) {
                if (x == f || y == f || h == f) && d.compose(ax, ay) != Some(ah) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        idx: usize,
        list: &[usize],
        c: &FinCategory,
        d: &FinCategory,
        target_of: &dyn Fn(usize) -> (usize, usize),
        assign: &mut Vec<Option<usize>>,
    ) -> bool {
        if idx == list.len() {
            return true;
        }
        let f = list[idx];
        let (s, t) = target_of(f);
        let mut used: Vec<usize> = list[..idx]
            .iter()
            .filter(|&&g| c.source(g) == c.source(f) && c.target(g) == c.target(f))
            .map(|&g| assign[g].unwrap())
            .collect();
        used.sort();
        for &g in d.hom(s, t) {
            if used.binary_search(&g).is_ok() {
                continue;
            }
            assign[f] = Some(g);
            if consistent(c, d, assign, f) && rec(idx + 1, list, c, d, target_of, assign) {
                return true;
            }
            assign[f] = None;
        }
        false
    }
    let target_of = |f: usize| {
        (
            reps_d[p[class_of[c.source(f)]]],
            reps_d[p[class_of[c.target(f)]]],
        )
    };
    if !rec(0, &rep_morphisms, c, d, &target_of, &mut assign) {
        return None;
    }
    // Extend to all objects by conjugating with chosen isomorphisms to the
    // representatives.
    let to_rep: Vec<usize> = (0..c.object_count())
        .map(|a| {
            let r = reps_c[class_of[a]];
            if a == r {
                return c.identity(a);
            }
            c.hom(a, r).iter().copied().find(|&f| c.is_iso(f)).unwrap()
        })
        .collect();
    let on_objects: Vec<usize> = (0..c.object_count()).map(|a| reps_d[p[class_of[a]]]).collect();
    let on_morphisms: Vec<usize> = (0..c.morphism_count())
        .map(|f| {
            let (a, b) = (c.source(f), c.target(f));
            let inv_a = c.inverse(to_rep[a]).unwrap();
            let core = c.compose(to_rep[b], c.compose(f, inv_a).unwrap()).unwrap();
            assign[core].unwrap()
        })
        .collect();
    CatFunctor::new(c.clone(), d.clone(), on_objects, on_morphisms).ok()
}
