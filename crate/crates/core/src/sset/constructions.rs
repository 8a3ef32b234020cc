//! Standard simplices, horns, opposites, products, joins and pullbacks.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::builder::{build, Built, SimplexModel};
use super::map::SSetMap;
use super::poset::simplex_nerve;
use super::simplicial::{Cell, CellId, SimplexRef, SimplicialSet};
use super::surjection::SurjectionWord;
use crate::{Error, Result};

pub fn standard_simplex(n: usize) -> Arc<SimplicialSet> {
    simplex_nerve(n).sset().clone()
}

/// Which subcomplex of the boundary to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HornSpec {
    /// The whole boundary.
    Boundary,
    /// The generalized horn: the union of the faces `d_i` for `i` outside the
    /// given set of omitted faces.
    Horn(BTreeSet<usize>),
}

impl HornSpec {
    pub fn horn(omitted: impl IntoIterator<Item = usize>) -> Self {
        HornSpec::Horn(omitted.into_iter().collect())
    }
}

/// A subcomplex together with its inclusion.
pub struct Subcomplex {
    pub sset: Arc<SimplicialSet>,
    pub inclusion: SSetMap,
}

/// Subsets of `[n]` lying in at least one of the given facets.
struct FacetModel {
    facets: Vec<u64>,
    n: usize,
}

impl SimplexModel for FacetModel {
    type Key = Vec<u32>;

    fn candidates(&self, k: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = BTreeSet::new();
        for subset in subsets_of_size(self.n + 1, k + 1) {
            let mask = subset.iter().fold(0u64, |m, &x| m | (1 << x));
            if self.facets.iter().any(|f| mask & !f == 0) {
                out.insert(subset.iter().map(|&x| x as u32).collect());
            }
        }
        Ok(out.into_iter().collect())
    }

    fn face(&self, i: usize, _n: usize, key: &Vec<u32>) -> Vec<u32> {
        let mut k = key.clone();
        k.remove(i);
        k
    }

    fn degeneracy(&self, j: usize, _n: usize, key: &Vec<u32>) -> Vec<u32> {
        let mut k = key.clone();
        k.insert(j, key[j]);
        k
    }

    fn degenerate_at(&self, _n: usize, key: &Vec<u32>) -> Option<usize> {
        key.windows(2).position(|w| w[0] == w[1])
    }

    fn label(&self, _n: usize, key: &Vec<u32>) -> Option<String> {
        Some(key.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
    }
}

pub(crate) fn subsets_of_size(universe: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(u: usize, size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..u {
            cur.push(x);
            rec(u, size, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(universe, size, 0, &mut cur, &mut out);
    out
}

/// The union of the given faces of `Δ^n` (each facet is a vertex subset).
pub fn simplex_subcomplex(n: usize, facets: &[Vec<usize>]) -> Result<Subcomplex> {
    if facets.iter().flatten().any(|&v| v > n) {
        return Err(Error::Horn(format!("facet vertex out of range for Δ^{n}")));
    }
    let masks = facets
        .iter()
        .filter(|f| !f.is_empty())
        .map(|f| f.iter().fold(0u64, |m, &x| m | (1 << x)))
        .collect();
    let built = build(FacetModel { facets: masks, n }, n, None)?;
    let simplex = simplex_nerve(n);
    let images = built
        .keys
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|k| simplex.chain(&k.iter().map(|&x| x as usize).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let inclusion = SSetMap::new_unchecked(built.sset.clone(), simplex.sset().clone(), images);
    Ok(Subcomplex {
        sset: built.sset,
        inclusion,
    })
}

/// The boundary of `Δ^n` or a generalized horn inside it.
pub fn boundary_and_horns(n: usize, spec: &HornSpec) -> Result<Subcomplex> {
    let kept: Vec<usize> = match spec {
        HornSpec::Boundary => (0..=n).collect(),
        HornSpec::Horn(omitted) => {
            if omitted.is_empty() {
                return Err(Error::Horn(
                    "no omitted faces: this is the boundary, use boundary mode".into(),
                ));
            }
            if let Some(&a) = omitted.iter().find(|&&a| a > n) {
                return Err(Error::Horn(format!("omitted face {a} out of range for Δ^{n}")));
            }
            if omitted.len() == n + 1 {
                return Err(Error::Horn("every face omitted: the horn would be empty".into()));
            }
            (0..=n).filter(|i| !omitted.contains(i)).collect()
        }
    };
    if n == 0 {
        return simplex_subcomplex(0, &[]);
    }
    let facets: Vec<Vec<usize>> = kept
        .iter()
        .map(|&i| (0..=n).filter(|&v| v != i).collect())
        .collect();
    simplex_subcomplex(n, &facets)
}

/// The opposite simplicial set: same cells, faces `d_i` replaced by `d_{k-i}`.
pub fn opposite(x: &SimplicialSet) -> SimplicialSet {
    let cells: Vec<Vec<Cell>> = x
        .raw_cells()
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|c| Cell {
                    faces: c.faces.iter().rev().map(|f| f.reversed()).collect(),
                    label: c.label.clone(),
                })
                .collect()
        })
        .collect();
    SimplicialSet::new_unchecked(cells, x.faithful())
}

pub fn opposite_map(f: &SSetMap) -> SSetMap {
    f.opposite(
        Arc::new(opposite(f.domain())),
        Arc::new(opposite(f.codomain())),
    )
}

fn min_faithful(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn vertex_label(x: &SimplicialSet, s: &SimplexRef) -> String {
    x.display(s.cell)
}

/// Pairs of `n`-simplices; shared by products and pullbacks.
pub struct PairModel {
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
    /// For pullbacks: both legs and the common codomain.
    legs: Option<(SSetMap, SSetMap)>,
}

impl SimplexModel for PairModel {
    type Key = (SimplexRef, SimplexRef);

    fn candidates(&self, n: usize) -> Result<Vec<Self::Key>> {
        let ls = self.left.boundary_table(n);
        let rs = self.right.boundary_table(n);
        let mut out = Vec::new();
        match &self.legs {
            None => {
                for a in &ls.all {
                    for b in &rs.all {
                        if a.degeneracy.mask() & b.degeneracy.mask() == 0 {
                            out.push((*a, *b));
                        }
                    }
                }
            }
            Some((f, g)) => {
                let mut by_image: HashMap<SimplexRef, Vec<SimplexRef>> = HashMap::new();
                for b in &rs.all {
                    by_image.entry(g.apply(*b)).or_default().push(*b);
                }
                for a in &ls.all {
                    if let Some(bs) = by_image.get(&f.apply(*a)) {
                        for b in bs {
                            if a.degeneracy.mask() & b.degeneracy.mask() == 0 {
                                out.push((*a, *b));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn face(&self, i: usize, _n: usize, key: &Self::Key) -> Self::Key {
        (self.left.face(i, key.0), self.right.face(i, key.1))
    }

    fn degeneracy(&self, j: usize, _n: usize, key: &Self::Key) -> Self::Key {
        (self.left.degeneracy(j, key.0), self.right.degeneracy(j, key.1))
    }

    fn degenerate_at(&self, n: usize, key: &Self::Key) -> Option<usize> {
        (0..n).find(|&j| key.0.degeneracy.is_collapsed(j) && key.1.degeneracy.is_collapsed(j))
    }

    fn label(&self, n: usize, key: &Self::Key) -> Option<String> {
        (n == 0).then(|| {
            format!(
                "({},{})",
                vertex_label(&self.left, &key.0),
                vertex_label(&self.right, &key.1)
            )
        })
    }
}

/// A product or pullback with its two projections.
pub struct PairSet {
    pub built: Built<PairModel>,
    pub first: SSetMap,
    pub second: SSetMap,
}

impl PairSet {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }

    /// The normal form of the pair `(a, b)` of `n`-simplices.
    pub fn pair(&self, a: SimplexRef, b: SimplexRef) -> Option<SimplexRef> {
        self.built.locate(a.dim(), &(a, b))
    }

    /// The map `Z -> X x Y` induced by `f: Z -> X` and `g: Z -> Y`.
    pub fn pairing(&self, f: &SSetMap, g: &SSetMap) -> Result<SSetMap> {
        let z = f.domain().clone();
        let images = (0..z.counts().len())
            .map(|d| {
                z.cell_ids(d)
                    .map(|c| {
                        let (a, b) = (f.image_of_cell(c), g.image_of_cell(c));
                        self.pair(a, b).ok_or_else(|| {
                            Error::NotSimplicial(format!("pair {a:?}, {b:?} is not a simplex"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SSetMap::new(z, self.built.sset.clone(), images)
    }

    fn from_built(built: Built<PairModel>) -> Self {
        let proj = |second: bool| {
            let images = built
                .keys
                .iter()
                .map(|level| level.iter().map(|k| if second { k.1 } else { k.0 }).collect())
                .collect();
            let cod = if second {
                built.model.right.clone()
            } else {
                built.model.left.clone()
            };
            SSetMap::new_unchecked(built.sset.clone(), cod, images)
        };
        let first = proj(false);
        let second = proj(true);
        PairSet {
            built,
            first,
            second,
        }
    }
}

fn pair_dim(x: &SimplicialSet, y: &SimplicialSet, cap: Option<usize>) -> (usize, Option<usize>) {
    let dx = x.max_dim().unwrap_or(0);
    let dy = y.max_dim().unwrap_or(0);
    let faithful = min_faithful(x.faithful(), y.faithful());
    let natural = dx + dy;
    match (faithful, cap) {
        (Some(f), Some(c)) => (f.min(c), Some(f.min(c))),
        (Some(f), None) => (f, Some(f)),
        (None, Some(c)) if c < natural => (c, Some(c)),
        _ => (natural, None),
    }
}

/// The categorical product with its projections.
pub fn product(x: Arc<SimplicialSet>, y: Arc<SimplicialSet>) -> PairSet {
    product_capped(x, y, None)
}

/// The product computed only up to dimension `cap` when given.
pub fn product_capped(x: Arc<SimplicialSet>, y: Arc<SimplicialSet>, cap: Option<usize>) -> PairSet {
    let (dim, faithful) = pair_dim(&x, &y, cap);
    let model = PairModel {
        left: x,
        right: y,
        legs: None,
    };
    PairSet::from_built(build(model, dim, faithful).expect("product enumeration cannot fail"))
}

/// The fiber product of `f: X -> Z` and `g: Y -> Z`.
pub fn pullback(f: &SSetMap, g: &SSetMap) -> Result<PairSet> {
    if !(Arc::ptr_eq(f.codomain(), g.codomain()) || **f.codomain() == **g.codomain()) {
        return Err(Error::CodomainMismatch("pullback legs have different codomains".into()));
    }
    let (dim, faithful) = pair_dim(f.domain(), g.domain(), None);
    // Above the sum of the stored dimensions there are no nondegenerate
    // pairs, so the cap does not lower faithfulness.
    let dim = dim.min(f.domain().max_dim().unwrap_or(0) + g.domain().max_dim().unwrap_or(0));
    let model = PairModel {
        left: f.domain().clone(),
        right: g.domain().clone(),
        legs: Some((f.clone(), g.clone())),
    };
    Ok(PairSet::from_built(build(model, dim, faithful)?))
}

/// The fiber of `f: X -> Z` over the vertex `v`.
pub fn fiber(f: &SSetMap, v: usize) -> Result<PairSet> {
    let point = Arc::new(SimplicialSet::point());
    let pick = SSetMap::new(point, f.codomain().clone(), vec![vec![SimplexRef::vertex(v)]])?;
    pullback(f, &pick)
}

/// Join keys: `None` stands for the empty simplex.
pub struct JoinModel {
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
}

type JoinKey = (Option<SimplexRef>, Option<SimplexRef>);

impl JoinModel {
    fn split(key: &JoinKey) -> (isize, isize) {
        (
            key.0.map_or(-1, |s| s.dim() as isize),
            key.1.map_or(-1, |s| s.dim() as isize),
        )
    }
}

impl SimplexModel for JoinModel {
    type Key = JoinKey;

    fn candidates(&self, n: usize) -> Result<Vec<JoinKey>> {
        let mut out = Vec::new();
        for a in -1..=(n as isize) {
            let b = n as isize - 1 - a;
            let lefts: Vec<Option<SimplexRef>> = if a < 0 {
                vec![None]
            } else {
                self.left.boundary_table(a as usize).all.iter().map(|s| Some(*s)).collect()
            };
            let rights: Vec<Option<SimplexRef>> = if b < 0 {
                vec![None]
            } else {
                self.right.boundary_table(b as usize).all.iter().map(|s| Some(*s)).collect()
            };
            for l in &lefts {
                for r in &rights {
                    out.push((*l, *r));
                }
            }
        }
        Ok(out)
    }

    fn face(&self, i: usize, _n: usize, key: &JoinKey) -> JoinKey {
        let (a, _) = Self::split(key);
        if (i as isize) <= a {
            let x = key.0.unwrap();
            let l = if a == 0 { None } else { Some(self.left.face(i, x)) };
            (l, key.1)
        } else {
            let y = key.1.unwrap();
            let r = if y.dim() == 0 {
                None
            } else {
                Some(self.right.face(i - a as usize - 1, y))
            };
            (key.0, r)
        }
    }

    fn degeneracy(&self, j: usize, _n: usize, key: &JoinKey) -> JoinKey {
        let (a, _) = Self::split(key);
        if (j as isize) <= a {
            (Some(self.left.degeneracy(j, key.0.unwrap())), key.1)
        } else {
            (key.0, Some(self.right.degeneracy(j - a as usize - 1, key.1.unwrap())))
        }
    }

    fn degenerate_at(&self, _n: usize, key: &JoinKey) -> Option<usize> {
        if let Some(x) = key.0 {
            if let Some(j) = x.degeneracy.collapsed().first() {
                return Some(*j);
            }
        }
        let (a, _) = Self::split(key);
        key.1
            .and_then(|y| y.degeneracy.collapsed().first().copied())
            .map(|j| j + (a + 1) as usize)
    }
}

pub struct JoinSet {
    pub built: Built<JoinModel>,
    pub left_inclusion: SSetMap,
    pub right_inclusion: SSetMap,
}

impl JoinSet {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }
}

pub fn join(x: Arc<SimplicialSet>, y: Arc<SimplicialSet>) -> JoinSet {
    let dx = x.max_dim().map_or(-1, |d| d as isize);
    let dy = y.max_dim().map_or(-1, |d| d as isize);
    let dim = (dx + dy + 1).max(0) as usize;
    let faithful = min_faithful(x.faithful(), y.faithful());
    let built = build(
        JoinModel {
            left: x.clone(),
            right: y.clone(),
        },
        dim,
        faithful,
    )
    .expect("join enumeration cannot fail");
    let inc = |side: &Arc<SimplicialSet>, left: bool| {
        let images = (0..side.counts().len())
            .map(|d| {
                side.cell_ids(d)
                    .map(|c| {
                        let s = SimplexRef::cell(c);
                        let key = if left { (Some(s), None) } else { (None, Some(s)) };
                        built.locate(d, &key).expect("summand simplex")
                    })
                    .collect()
            })
            .collect();
        SSetMap::new_unchecked(side.clone(), built.sset.clone(), images)
    };
    let left_inclusion = inc(&x, true);
    let right_inclusion = inc(&y, false);
    JoinSet {
        built,
        left_inclusion,
        right_inclusion,
    }
}

/// Relabels the cells of `x` so that `map` (a cell bijection) becomes the
/// identity; used to compare constructions with different cell orders.
pub fn transport_cells(x: &SimplicialSet, order: &[Vec<usize>]) -> SimplicialSet {
    let mut inverse: Vec<Vec<usize>> = order.iter().map(|l| vec![0; l.len()]).collect();
    for (d, l) in order.iter().enumerate() {
        for (new, &old) in l.iter().enumerate() {
            inverse[d][old] = new;
        }
    }
    let cells = order
        .iter()
        .enumerate()
        .map(|(d, l)| {
            l.iter()
                .map(|&old| {
                    let c = x.cell(CellId::new(d, old));
                    Cell {
                        faces: c
                            .faces
                            .iter()
                            .map(|f| SimplexRef {
                                cell: CellId::new(f.cell.dim, inverse[f.cell.dim][f.cell.index]),
                                degeneracy: f.degeneracy,
                            })
                            .collect(),
                        label: c.label.clone(),
                    }
                })
                .collect()
        })
        .collect();
    SimplicialSet::new_unchecked(cells, x.faithful())
}

/// The degeneracy word sending every vertex of `[n]` to `0`.
pub fn total_word(n: usize) -> SurjectionWord {
    SurjectionWord::from_map(&vec![0; n + 1]).expect("constant word")
}
