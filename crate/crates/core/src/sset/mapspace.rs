//! Simplicial sets of maps `K^n -> X` out of a cosimplicial family `K^n`.

use std::collections::HashMap;
use std::sync::Arc;

use super::builder::{build, Built, SimplexModel};
use super::constructions::{product, PairSet};
use super::map::SSetMap;
use super::poset::{simplex_nerve, FinPoset, PosetNerve};
use super::search::{DomainPlan, MapSearch};
use super::simplicial::{SimplexRef, SimplicialSet};
use super::surjection::{codegeneracy_map, coface_map};
use crate::{Error, Result};

/// A cosimplicial simplicial set, materialized for `n <= max`.
pub trait CosimplicialShape: Send + Sync {
    fn max(&self) -> usize;
    fn object(&self, n: usize) -> &Arc<SimplicialSet>;
    /// The image of every cell of `K^{n-1}` under the coface `d^i`.
    fn coface(&self, n: usize, i: usize) -> &[SimplexRef];
    /// The image of every cell of `K^{n}` under the codegeneracy `s^j: K^n -> K^{n-1}`.
    fn codegeneracy(&self, n: usize, j: usize) -> &[SimplexRef];
}

struct Tables {
    cofaces: Vec<Vec<Vec<SimplexRef>>>,
    codegens: Vec<Vec<Vec<SimplexRef>>>,
}

fn flat_images(
    src: &SimplicialSet,
    f: impl Fn(SimplexRef) -> SimplexRef,
) -> Vec<SimplexRef> {
    src.all_cells().map(|c| f(SimplexRef::cell(c))).collect()
}

/// Elements of a poset family, written as small tuples of integers in `[n]`.
pub type Tuple = Vec<usize>;

/// A functorial family of posets `P_n`, with `[m] -> [n]` acting on tuples
/// coordinatewise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosetFamily {
    /// `[n]` itself.
    Ordinal,
    /// Pairs `(i, j)`, `i <= j`, with `(i, j) <= (k, l)` iff `i <= k <= l <= j`:
    /// the opposite of the twisted arrow poset.
    TwistedOp,
    /// Pairs `(i, j)`, `i <= j`, with `(i, j) <= (k, l)` iff `k <= i <= j <= l`.
    Twisted,
    /// Pairs `(a, b)`, `a <= b`, ordered componentwise: the arrow poset.
    Arrow,
    /// Quadruples `a <= b <= c <= d`, with `a'b'c'd' <= abcd` iff
    /// `a' <= a <= b <= b' <= c' <= c <= d <= d'`.
    TwoFoldOp,
    /// Triples `(i, j, e)`, `i <= j`, `e in {0, 1}`: the twisted poset times `[1]`.
    TwistedTimesInterval,
}

impl PosetFamily {
    pub fn elements(&self, n: usize) -> Vec<Tuple> {
        let mut out = Vec::new();
        match self {
            PosetFamily::Ordinal => out.extend((0..=n).map(|i| vec![i])),
            PosetFamily::TwistedOp | PosetFamily::Twisted | PosetFamily::Arrow => {
                for i in 0..=n {
                    for j in i..=n {
                        out.push(vec![i, j]);
                    }
                }
            }
            PosetFamily::TwoFoldOp => {
                for a in 0..=n {
                    for b in a..=n {
                        for c in b..=n {
                            for d in c..=n {
                                out.push(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
            PosetFamily::TwistedTimesInterval => {
                for e in 0..=1 {
                    for i in 0..=n {
                        for j in i..=n {
                            out.push(vec![i, j, e]);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn leq(&self, x: &[usize], y: &[usize]) -> bool {
        match self {
            PosetFamily::Ordinal => x[0] <= y[0],
            PosetFamily::TwistedOp => x[0] <= y[0] && y[0] <= y[1] && y[1] <= x[1],
            PosetFamily::Twisted => y[0] <= x[0] && x[1] <= y[1],
            PosetFamily::Arrow => x[0] <= y[0] && x[1] <= y[1],
            PosetFamily::TwoFoldOp => {
                x[0] <= y[0] && y[1] <= x[1] && x[1] <= x[2] && x[2] <= y[2] && y[3] <= x[3]
            }
            PosetFamily::TwistedTimesInterval => {
                y[0] <= x[0] && x[1] <= y[1] && x[2] <= y[2]
            }
        }
    }

    /// Action of a monotone map (given by values) on an element.
    pub fn act(&self, alpha: &[usize], x: &[usize]) -> Tuple {
        match self {
            PosetFamily::TwistedTimesInterval => vec![alpha[x[0]], alpha[x[1]], x[2]],
            _ => x.iter().map(|&v| alpha[v]).collect(),
        }
    }

    pub fn label(&self, x: &[usize]) -> String {
        match self {
            PosetFamily::TwistedTimesInterval => format!("{}{}|{}", x[0], x[1], x[2]),
            _ => x.iter().map(|v| v.to_string()).collect(),
        }
    }

    pub fn poset(&self, n: usize) -> FinPoset {
        let elems = self.elements(n);
        let labels = elems.iter().map(|e| self.label(e)).collect();
        FinPoset::from_fn(labels, |a, b| self.leq(&elems[a], &elems[b])).expect("family is a poset")
    }
}

/// The nerves of a poset family.
pub struct PosetShape {
    pub family: PosetFamily,
    nerves: Vec<PosetNerve>,
    elements: Vec<Vec<Tuple>>,
    lookup: Vec<HashMap<Tuple, usize>>,
    tables: Tables,
}

impl PosetShape {
    pub fn new(family: PosetFamily, max: usize) -> Self {
        let mut nerves = Vec::new();
        let mut elements = Vec::new();
        let mut lookup = Vec::new();
        for n in 0..=max {
            let elems = family.elements(n);
            lookup.push(elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect());
            nerves.push(PosetNerve::new(family.poset(n)));
            elements.push(elems);
        }
        let mut shape = PosetShape {
            family,
            nerves,
            elements,
            lookup,
            tables: Tables {
                cofaces: Vec::new(),
                codegens: Vec::new(),
            },
        };
        let mut cofaces = vec![Vec::new()];
        let mut codegens = vec![Vec::new()];
        for n in 1..=max {
            cofaces.push((0..=n).map(|i| shape.induced(n - 1, n, &coface_map(n, i))).collect());
            codegens.push((0..n).map(|j| shape.induced(n, n - 1, &codegeneracy_map(n - 1, j))).collect());
        }
        shape.tables = Tables { cofaces, codegens };
        shape
    }

    fn induced(&self, from: usize, to: usize, alpha: &[usize]) -> Vec<SimplexRef> {
        let src = &self.nerves[from];
        flat_images(src.sset(), |s| {
            let chain: Vec<usize> = src
                .elements(s)
                .into_iter()
                .map(|e| self.lookup[to][&self.family.act(alpha, &self.elements[from][e])])
                .collect();
            self.nerves[to].chain(&chain)
        })
    }

    pub fn nerve(&self, n: usize) -> &PosetNerve {
        &self.nerves[n]
    }

    pub fn element(&self, n: usize, idx: usize) -> &Tuple {
        &self.elements[n][idx]
    }

    pub fn element_index(&self, n: usize, t: &[usize]) -> usize {
        self.lookup[n][t]
    }

    /// Tuples of the chain underlying a simplex of the `n`-th nerve.
    pub fn chain_tuples(&self, n: usize, s: SimplexRef) -> Vec<&Tuple> {
        self.nerves[n]
            .elements(s)
            .into_iter()
            .map(|e| &self.elements[n][e])
            .collect()
    }
}

impl CosimplicialShape for PosetShape {
    fn max(&self) -> usize {
        self.nerves.len() - 1
    }
    fn object(&self, n: usize) -> &Arc<SimplicialSet> {
        self.nerves[n].sset()
    }
    fn coface(&self, n: usize, i: usize) -> &[SimplexRef] {
        &self.tables.cofaces[n][i]
    }
    fn codegeneracy(&self, n: usize, j: usize) -> &[SimplexRef] {
        &self.tables.codegens[n][j]
    }
}

/// The family `A x Δ^n`.
pub struct ProductShape {
    pub factor: Arc<SimplicialSet>,
    products: Vec<PairSet>,
    simplices: Vec<PosetNerve>,
    tables: Tables,
}

impl ProductShape {
    pub fn new(factor: Arc<SimplicialSet>, max: usize) -> Self {
        let simplices: Vec<PosetNerve> = (0..=max).map(simplex_nerve).collect();
        let products: Vec<PairSet> = simplices
            .iter()
            .map(|d| product(factor.clone(), d.sset().clone()))
            .collect();
        let induced = |from: usize, to: usize, alpha: &[usize]| {
            flat_images(products[from].sset(), |s| {
                let (a, t) = products[from].built.key(s.cell);
                let verts: Vec<usize> = simplices[from].elements(*t).iter().map(|&v| alpha[v]).collect();
                let t2 = simplices[to].chain(&verts);
                products[to].pair(*a, t2).expect("product simplex")
            })
        };
        let mut cofaces = vec![Vec::new()];
        let mut codegens = vec![Vec::new()];
        for n in 1..=max {
            cofaces.push((0..=n).map(|i| induced(n - 1, n, &coface_map(n, i))).collect());
            codegens.push((0..n).map(|j| induced(n, n - 1, &codegeneracy_map(n - 1, j))).collect());
        }
        ProductShape {
            factor,
            products,
            simplices,
            tables: Tables { cofaces, codegens },
        }
    }

    pub fn product(&self, n: usize) -> &PairSet {
        &self.products[n]
    }

    pub fn simplex(&self, n: usize) -> &PosetNerve {
        &self.simplices[n]
    }
}

impl CosimplicialShape for ProductShape {
    fn max(&self) -> usize {
        self.products.len() - 1
    }
    fn object(&self, n: usize) -> &Arc<SimplicialSet> {
        self.products[n].sset()
    }
    fn coface(&self, n: usize, i: usize) -> &[SimplexRef] {
        &self.tables.cofaces[n][i]
    }
    fn codegeneracy(&self, n: usize, j: usize) -> &[SimplexRef] {
        &self.tables.codegens[n][j]
    }
}

/// Map data: the image of every cell of `K^n`, by flat index.
pub type MapData = Vec<SimplexRef>;

pub type Enumerator = Box<dyn Fn(usize) -> Result<Vec<MapData>> + Send + Sync>;
type Labeller = Box<dyn Fn(usize, &MapData) -> Option<String> + Send + Sync>;

/// Keys are maps `K^n -> X`; faces and degeneracies are precomposition.
pub struct MapSpaceModel {
    pub shape: Arc<dyn CosimplicialShape>,
    pub target: Arc<SimplicialSet>,
    enumerate: Enumerator,
    labeller: Option<Labeller>,
}

impl MapSpaceModel {
    pub fn new(shape: Arc<dyn CosimplicialShape>, target: Arc<SimplicialSet>, enumerate: Enumerator) -> Self {
        MapSpaceModel {
            shape,
            target,
            enumerate,
            labeller: None,
        }
    }

    pub fn with_labels(mut self, f: impl Fn(usize, &MapData) -> Option<String> + Send + Sync + 'static) -> Self {
        self.labeller = Some(Box::new(f));
        self
    }

    fn precompose(&self, table: &[SimplexRef], data: &MapData, src: &SimplicialSet) -> MapData {
        table
            .iter()
            .map(|s| data[src.flat_index(s.cell)].degenerate_by(&s.degeneracy))
            .collect()
    }

    /// Evaluates a map on a simplex of `K^n`.
    pub fn evaluate(&self, n: usize, data: &MapData, s: SimplexRef) -> SimplexRef {
        data[self.shape.object(n).flat_index(s.cell)].degenerate_by(&s.degeneracy)
    }
}

impl SimplexModel for MapSpaceModel {
    type Key = MapData;

    fn candidates(&self, n: usize) -> Result<Vec<MapData>> {
        (self.enumerate)(n)
    }

    fn face(&self, i: usize, n: usize, key: &MapData) -> MapData {
        self.precompose(self.shape.coface(n, i), key, self.shape.object(n))
    }

    fn degeneracy(&self, j: usize, n: usize, key: &MapData) -> MapData {
        self.precompose(self.shape.codegeneracy(n + 1, j), key, self.shape.object(n))
    }

    fn label(&self, n: usize, key: &MapData) -> Option<String> {
        self.labeller.as_ref().and_then(|f| f(n, key))
    }
}

/// Faithfulness bookkeeping for a map space built up to `max_dim`.
pub fn map_space_faithful(
    shape: &dyn CosimplicialShape,
    target: &SimplicialSet,
    max_dim: usize,
) -> Result<()> {
    for n in 0..=max_dim {
        if let Some(d) = shape.object(n).max_dim() {
            target.require_faithful(d)?;
        }
    }
    Ok(())
}

/// Builds a map space with a search-based enumerator. `exact` asserts that
/// no nondegenerate cells exist above `max_dim`.
pub fn build_map_space(
    shape: Arc<dyn CosimplicialShape>,
    target: Arc<SimplicialSet>,
    max_dim: usize,
    exact: bool,
    enumerate: Enumerator,
) -> Result<Built<MapSpaceModel>> {
    if max_dim > shape.max() {
        return Err(Error::Precondition(format!(
            "shape materialized to {} but dimension {max_dim} requested",
            shape.max()
        )));
    }
    map_space_faithful(shape.as_ref(), &target, max_dim)?;
    let model = MapSpaceModel::new(shape, target, enumerate);
    let faithful = if exact { None } else { Some(max_dim) };
    build(model, max_dim, faithful)
}

/// All maps `K^n -> X` with no constraints.
pub fn unconstrained(shape: Arc<dyn CosimplicialShape>, target: Arc<SimplicialSet>) -> Enumerator {
    let plans: Vec<DomainPlan> = (0..=shape.max()).map(|n| DomainPlan::new(shape.object(n))).collect();
    Box::new(move |n| {
        let search = MapSearch::new(shape.object(n), &target, &plans[n]);
        Ok(search.collect())
    })
}

/// `Fun(A, X)` up to `max_dim`, with evaluation maps at the vertices of `A`.
pub struct FunctionSpace {
    pub built: Built<MapSpaceModel>,
    pub shape: Arc<ProductShape>,
}

impl FunctionSpace {
    pub fn sset(&self) -> &Arc<SimplicialSet> {
        &self.built.sset
    }

    /// Evaluation at a vertex `a` of the source.
    pub fn evaluation(&self, a: usize) -> SSetMap {
        let model = &self.built.model;
        let images = self
            .built
            .keys
            .iter()
            .enumerate()
            .map(|(n, level)| {
                let prod = self.shape.product(n);
                let top = self.shape.simplex(n).chain(&(0..=n).collect::<Vec<_>>());
                let col = prod
                    .pair(self.shape.factor.constant(a, n), top)
                    .expect("vertex column");
                level.iter().map(|k| model.evaluate(n, k, col)).collect()
            })
            .collect();
        SSetMap::new_unchecked(self.built.sset.clone(), model.target.clone(), images)
    }
}

/// The simplicial set of maps `A x Δ^n -> X`, computed for `n <= max_dim`.
pub fn exponential(a: Arc<SimplicialSet>, x: Arc<SimplicialSet>, max_dim: usize) -> Result<FunctionSpace> {
    if a.faithful().is_some() {
        return Err(Error::Precondition("the source of a function space must be exact".into()));
    }
    let shape = Arc::new(ProductShape::new(a, max_dim));
    let dyn_shape: Arc<dyn CosimplicialShape> = shape.clone();
    let enumerate = unconstrained(dyn_shape.clone(), x.clone());
    let built = build_map_space(dyn_shape, x, max_dim, false, enumerate)?;
    Ok(FunctionSpace { built, shape })
}
