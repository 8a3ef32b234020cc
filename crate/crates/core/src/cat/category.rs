use std::collections::HashMap;
use std::fmt;

use crate::sset::FinPoset;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with an explicit composition table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `table[g * m + f] = g . f` for composable pairs.
    table: Vec<Option<u32>>,
    homs: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCategory({} objects, {} morphisms)",
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

impl FinCategory {
    /// Builds a category from a list of composites `(g, f, g.f)` and checks
    /// completeness, typing, unit laws and associativity.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let m = morphisms.len();
        let mut table = vec![None; m * m];
        for &(g, f, h) in composites {
            if g >= m || f >= m || h >= m {
                return Err(Error::Category(format!("composite ({g}, {f}, {h}) out of range")));
            }
            if let Some(old) = table[g * m + f] {
                if old as usize != h {
                    return Err(Error::Category(format!(
                        "two composites given for ({}, {})",
                        morphisms[g].name, morphisms[f].name
                    )));
                }
            }
            table[g * m + f] = Some(h as u32);
        }
        Self::assemble(objects, morphisms, identities, table)
    }

    /// Builds a category from a composition function.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let m = morphisms.len();
        let mut table = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].target == morphisms[g].source {
                    table[g * m + f] = compose(g, f).map(|h| h as u32);
                }
            }
        }
        Self::assemble(objects, morphisms, identities, table)
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<Option<u32>>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        for mor in &morphisms {
            if mor.source >= n || mor.target >= n {
                return Err(Error::Category(format!("morphism {} has an unknown endpoint", mor.name)));
            }
        }
        if identities.len() != n {
            return Err(Error::Category("one identity per object is required".into()));
        }
        for (a, &i) in identities.iter().enumerate() {
            if i >= m || morphisms[i].source != a || morphisms[i].target != a {
                return Err(Error::Category(format!("identity of {} is not an endomorphism of it", objects[a])));
            }
        }
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (k, mor) in morphisms.iter().enumerate() {
            homs[mor.source][mor.target].push(k);
        }
        let cat = FinCategory {
            objects,
            morphisms,
            identities,
            table,
            homs,
        };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<()> {
        let m = self.morphisms.len();
        for g in 0..m {
            for f in 0..m {
                let composable = self.morphisms[f].target == self.morphisms[g].source;
                match (composable, self.table[g * m + f]) {
                    (true, None) => {
                        return Err(Error::MissingComposite(
                            self.morphisms[g].name.clone(),
                            self.morphisms[f].name.clone(),
                        ))
                    }
                    (false, Some(_)) => {
                        return Err(Error::Category(format!(
                            "composite given for non-composable pair ({}, {})",
                            self.morphisms[g].name, self.morphisms[f].name
                        )))
                    }
                    (true, Some(h)) => {
                        let h = &self.morphisms[h as usize];
                        if h.source != self.morphisms[f].source || h.target != self.morphisms[g].target {
                            return Err(Error::Category(format!(
                                "composite of ({}, {}) has the wrong endpoints",
                                self.morphisms[g].name, self.morphisms[f].name
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..m {
            let (s, t) = (self.morphisms[f].source, self.morphisms[f].target);
            if self.compose(self.identities[t], f) != Some(f) || self.compose(f, self.identities[s]) != Some(f) {
                return Err(Error::Category(format!(
                    "identities are not units for {}",
                    self.morphisms[f].name
                )));
            }
        }
        for f in 0..m {
            let b = self.morphisms[f].target;
            for c in 0..self.objects.len() {
                for &g in &self.homs[b][c] {
                    let gf = self.compose(g, f).unwrap();
                    for d in 0..self.objects.len() {
                        for &h in &self.homs[c][d] {
                            let lhs = self.compose(h, gf).unwrap();
                            let rhs = self.compose(self.compose(h, g).unwrap(), f).unwrap();
                            if lhs != rhs {
                                return Err(Error::Category(format!(
                                    "composition is not associative on ({}, {}, {})",
                                    self.morphisms[h].name, self.morphisms[g].name, self.morphisms[f].name
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    /// `g . f`, when `f` ends where `g` starts.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.table[g * self.morphisms.len() + f].map(|h| h as usize)
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a][b]
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (s, t) = (self.source(f), self.target(f));
        self.homs[t][s].iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identities[s]) && self.compose(f, g) == Some(self.identities[t])
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn are_isomorphic(&self, a: usize, b: usize) -> bool {
        self.homs[a][b].iter().any(|&f| self.is_iso(f))
    }

    /// All composable pairs `(g, f)` with their composite.
    pub fn composites(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose(g, f) {
                    out.push((g, f, h));
                }
            }
        }
        out
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// The category of a finite poset, one morphism per relation `a <= b`.
    pub fn from_poset(p: &FinPoset) -> Self {
        let n = p.len();
        let labels = p.labels();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if p.leq(a, b) {
                    index.insert((a, b), morphisms.len());
                    let name = if a == b {
                        format!("id_{}", labels[a])
                    } else {
                        format!("{}->{}", labels[a], labels[b])
                    };
                    morphisms.push(Morphism {
                        name,
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let identities = (0..n).map(|a| index[&(a, a)]).collect();
        let srcs: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
        Self::from_fn(labels.to_vec(), morphisms, identities, |g, f| {
            Some(index[&(srcs[f].0, srcs[g].1)])
        })
        .expect("posets are categories")
    }

    /// `[n] = 0 -> 1 -> ... -> n`.
    pub fn ordinal(n: usize) -> Self {
        Self::from_poset(&FinPoset::ordinal(n))
    }

    pub fn discrete(names: Vec<String>) -> Self {
        let morphisms = names
            .iter()
            .enumerate()
            .map(|(a, o)| Morphism {
                name: format!("id_{o}"),
                source: a,
                target: a,
            })
            .collect();
        let n = names.len();
        Self::from_fn(names, morphisms, (0..n).collect(), |g, f| (g == f).then_some(f))
            .expect("discrete category")
    }

    /// Two objects and an inverse pair of morphisms between them.
    pub fn walking_isomorphism() -> Self {
        let mor = |name: &str, s, t| Morphism {
            name: name.into(),
            source: s,
            target: t,
        };
        let morphisms = vec![mor("id_0", 0, 0), mor("id_1", 1, 1), mor("f", 0, 1), mor("g", 1, 0)];
        let table = [
            (0, 0, 0),
            (1, 1, 1),
            (2, 0, 2),
            (1, 2, 2),
            (3, 1, 3),
            (0, 3, 3),
            (3, 2, 0),
            (2, 3, 1),
        ];
        Self::new(vec!["0".into(), "1".into()], morphisms, vec![0, 1], &table).expect("walking iso")
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        let morphisms = (0..n)
            .map(|k| Morphism {
                name: if k == 0 { "e".into() } else { format!("r{k}") },
                source: 0,
                target: 0,
            })
            .collect();
        Self::from_fn(vec!["*".into()], morphisms, vec![0], |g, f| Some((g + f) % n)).expect("group")
    }

    pub fn opposite(&self) -> Self {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                name: m.name.clone(),
                source: m.target,
                target: m.source,
            })
            .collect();
        Self::from_fn(self.objects.clone(), morphisms, self.identities.clone(), |g, f| self.compose(f, g))
            .expect("opposite of a category")
    }

    pub fn product(&self, other: &FinCategory) -> Self {
        let (n2, m2) = (other.object_count(), other.morphism_count());
        let objects = (0..self.object_count() * n2)
            .map(|k| format!("({},{})", self.objects[k / n2], other.objects[k % n2]))
            .collect();
        let morphisms = (0..self.morphism_count() * m2)
            .map(|k| {
                let (a, b) = (&self.morphisms[k / m2], &other.morphisms[k % m2]);
                Morphism {
                    name: format!("({},{})", a.name, b.name),
                    source: a.source * n2 + b.source,
                    target: a.target * n2 + b.target,
                }
            })
            .collect();
        let identities = (0..self.object_count() * n2)
            .map(|k| self.identities[k / n2] * m2 + other.identities[k % n2])
            .collect();
        Self::from_fn(objects, morphisms, identities, |g, f| {
            Some(self.compose(g / m2, f / m2)? * m2 + other.compose(g % m2, f % m2)?)
        })
        .expect("product of categories")
    }

    /// Objects are morphisms; morphisms are commuting squares `(a, b)` with
    /// `b . f = f' . a`.
    pub fn arrow_category(&self) -> Self {
        self.arrow_category_with_legs().0
    }

    /// The arrow category together with the legs `(a, b)` of each square.
    pub fn arrow_category_with_legs(&self) -> (Self, Vec<(usize, usize)>) {
        let objects = self.morphisms.iter().map(|m| m.name.clone()).collect();
        let mut morphisms = Vec::new();
        let mut legs = Vec::new();
        let mut index = HashMap::new();
        for (f, fm) in self.morphisms.iter().enumerate() {
            for (f2, f2m) in self.morphisms.iter().enumerate() {
                for &a in self.hom(fm.source, f2m.source) {
                    for &b in self.hom(fm.target, f2m.target) {
                        if self.compose(b, f) == self.compose(f2, a) {
                            index.insert((f, f2, a, b), morphisms.len());
                            legs.push((a, b));
                            morphisms.push(Morphism {
                                name: format!("[{},{}]", self.morphisms[a].name, self.morphisms[b].name),
                                source: f,
                                target: f2,
                            });
                        }
                    }
                }
            }
        }
        let identities = (0..self.morphism_count())
            .map(|f| {
                let m = &self.morphisms[f];
                index[&(f, f, self.identities[m.source], self.identities[m.target])]
            })
            .collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
        let cat = Self::from_fn(objects, morphisms, identities, |g, f| {
            let (a, b) = legs[f];
            let (a2, b2) = legs[g];
            Some(index[&(ends[f].0, ends[g].1, self.compose(a2, a)?, self.compose(b2, b)?)])
        })
        .expect("arrow category");
        (cat, legs)
    }

    /// The subcategory on the given morphisms (which must contain identities
    /// and be closed under composition).
    pub fn subcategory(&self, keep: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort();
        keep.dedup();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        for &i in &self.identities {
            if !pos.contains_key(&i) {
                return Err(Error::Category("subcategory must contain every identity".into()));
            }
        }
        let morphisms = keep.iter().map(|&f| self.morphisms[f].clone()).collect();
        let identities = self.identities.iter().map(|i| pos[i]).collect();
        let mut closed = true;
        let cat = Self::from_fn(self.objects.clone(), morphisms, identities, |g, f| {
            let h = self.compose(keep[g], keep[f])?;
            let r = pos.get(&h).copied();
            closed &= r.is_some();
            r
        });
        if !closed {
            return Err(Error::Category("subcategory is not closed under composition".into()));
        }
        Ok((cat?, keep))
    }
}
