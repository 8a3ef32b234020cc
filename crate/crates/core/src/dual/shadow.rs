use std::sync::Arc;

use crate::sset::mapspace::{map_space_faithful, CosimplicialShape, Enumerator, MapData, MapSpaceModel, PosetShape, Tuple};
use crate::sset::{build, Built, CellId, DomainPlan, MapSearch, SSetMap, SimplexRef};
use crate::Result;

pub(crate) type EdgeTest = Arc<dyn Fn(&[usize], &[usize], SimplexRef) -> bool + Send + Sync>;
pub(crate) type WholeTest = Arc<dyn Fn(usize, &[SimplexRef]) -> bool + Send + Sync>;

/// Maps `N(P_n) -> X` lying over `σ ∘ shadow` for some `σ` in `S_n`, with a
/// test on the image of every edge.
pub(crate) struct Shadowed {
    pub shape: Arc<PosetShape>,
    pub over: SSetMap,
    pub shadow: fn(usize, &[usize]) -> usize,
    pub edge_ok: EdgeTest,
    /// Applied to each complete map.
    pub whole_ok: Option<WholeTest>,
}

impl Shadowed {
    fn enumerate(&self, n: usize) -> Vec<MapData> {
        let nerve = self.shape.nerve(n);
        let k = nerve.sset();
        let (x, s) = (self.over.domain(), self.over.codomain());
        let plan = DomainPlan::new(k);
        let cells: Vec<CellId> = k.all_cells().collect();
        let chains: Vec<Vec<Tuple>> = cells
            .iter()
            .map(|&c| self.shape.chain_tuples(n, SimplexRef::cell(c)).into_iter().cloned().collect())
            .collect();
        let shadows: Vec<Vec<usize>> = chains
            .iter()
            .map(|ch| ch.iter().map(|t| (self.shadow)(n, t)).collect())
            .collect();
        let mut out = Vec::new();
        for &sigma in &s.boundary_table(n).all {
            let required: Vec<SimplexRef> = shadows.iter().map(|sh| s.pull(sigma, sh)).collect();
            let admissible = |c: CellId, y: &SimplexRef, _: &[Option<SimplexRef>]| {
                let flat = k.flat_index(c);
                if self.over.apply(*y) != required[flat] {
                    return false;
                }
                c.dim != 1 || (self.edge_ok)(&chains[flat][0], &chains[flat][1], *y)
            };
            let mut search = MapSearch::new(k, x, &plan);
            search.admissible = Some(&admissible);
            search.run(|m| {
                if self.whole_ok.as_ref().is_none_or(|w| w(n, m)) {
                    out.push(m.to_vec());
                }
                true
            });
        }
        out
    }

    /// Builds the map space to `max_dim`, labelling vertices by their image.
    pub fn build(self, max_dim: usize) -> Result<Built<MapSpaceModel>> {
        let shape: Arc<dyn CosimplicialShape> = self.shape.clone();
        let x = self.over.domain().clone();
        map_space_faithful(shape.as_ref(), &x, max_dim)?;
        let this = Arc::new(self);
        let enumerate: Enumerator = Box::new(move |n| Ok(this.enumerate(n)));
        let names = x.clone();
        let model = MapSpaceModel::new(shape, x, enumerate)
            .with_labels(move |n, data| (n == 0).then(|| names.display(data[0].cell)));
        build(model, max_dim, Some(max_dim))
    }
}

/// Precomposes map data on `from.nerve(n)` with a poset map `to -> from`.
pub(crate) fn restrict(
    from: &PosetShape,
    to: &PosetShape,
    n: usize,
    data: &[SimplexRef],
    along: impl Fn(&[usize]) -> Tuple,
) -> MapData {
    let src = from.nerve(n);
    let k = to.nerve(n).sset();
    k.all_cells()
        .map(|c| {
            let chain: Vec<usize> = to
                .chain_tuples(n, SimplexRef::cell(c))
                .iter()
                .map(|t| from.element_index(n, &along(t)))
                .collect();
            let s = src.chain(&chain);
            data[src.sset().flat_index(s.cell)].degenerate_by(&s.degeneracy)
        })
        .collect()
}

/// Evaluates map data on a chain of tuples.
pub(crate) fn evaluate_chain(shape: &PosetShape, n: usize, data: &[SimplexRef], chain: &[Tuple]) -> SimplexRef {
    let nerve = shape.nerve(n);
    let idx: Vec<usize> = chain.iter().map(|t| shape.element_index(n, t)).collect();
    let s = nerve.chain(&idx);
    data[nerve.sset().flat_index(s.cell)].degenerate_by(&s.degeneracy)
}
