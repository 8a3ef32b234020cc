use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::surjection::{coface_map, factor_monotone, surjections, SurjectionWord};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub fn new(dim: usize, index: usize) -> Self {
        CellId { dim, index }
    }
}

/// A simplex in Eilenberg-Zilber normal form: a nondegenerate cell together
/// with the surjection it is pulled back along.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub cell: CellId,
    pub degeneracy: SurjectionWord,
}

impl SimplexRef {
    pub fn cell(cell: CellId) -> Self {
        SimplexRef {
            cell,
            degeneracy: SurjectionWord::identity(cell.dim),
        }
    }

    pub fn vertex(index: usize) -> Self {
        Self::cell(CellId::new(0, index))
    }

    pub fn dim(&self) -> usize {
        self.degeneracy.source()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.degeneracy.is_identity()
    }

    /// Precompose with a further surjection `sigma: [k] -> [dim]`.
    pub fn degenerate_by(&self, sigma: &SurjectionWord) -> SimplexRef {
        SimplexRef {
            cell: self.cell,
            degeneracy: sigma.then(&self.degeneracy),
        }
    }

    /// The same simplex read in the opposite simplicial set.
    pub fn reversed(&self) -> SimplexRef {
        SimplexRef {
            cell: self.cell,
            degeneracy: self.degeneracy.reversed(),
        }
    }
}

impl fmt::Debug for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degeneracy.is_identity() {
            write!(f, "<{},{}>", self.cell.dim, self.cell.index)
        } else {
            write!(
                f,
                "<{},{}|{}:{:?}>",
                self.cell.dim,
                self.cell.index,
                self.dim(),
                self.degeneracy.collapsed()
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub faces: Vec<SimplexRef>,
    pub label: Option<String>,
}

/// All simplices of one dimension, indexed by their face tuple.
#[derive(Debug, Default)]
pub struct BoundaryTable {
    pub all: Vec<SimplexRef>,
    pub by_faces: HashMap<Vec<SimplexRef>, Vec<SimplexRef>>,
}

const CACHED_DIMS: usize = 40;

struct Caches {
    boundary: Vec<OnceLock<Arc<BoundaryTable>>>,
}

impl Default for Caches {
    fn default() -> Self {
        Caches {
            boundary: (0..CACHED_DIMS).map(|_| OnceLock::new()).collect(),
        }
    }
}

/// A finite simplicial set, stored as its nondegenerate cells.
///
/// `faithful` is `None` when the stored cells are the whole simplicial set,
/// and `Some(d)` when only dimensions `<= d` were computed.
pub struct SimplicialSet {
    cells: Vec<Vec<Cell>>,
    faithful: Option<usize>,
    offsets: Vec<usize>,
    caches: Caches,
}

impl Clone for SimplicialSet {
    fn clone(&self) -> Self {
        SimplicialSet {
            cells: self.cells.clone(),
            faithful: self.faithful,
            offsets: self.offsets.clone(),
            caches: Caches::default(),
        }
    }
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && self.faithful == other.faithful
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialSet")
            .field("counts", &self.counts())
            .field("faithful", &self.faithful)
            .finish()
    }
}

impl SimplicialSet {
    /// Builds a simplicial set and checks references and simplicial identities.
    pub fn new(cells: Vec<Vec<Cell>>, faithful: Option<usize>) -> Result<Self> {
        let s = Self::new_unchecked(cells, faithful);
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(mut cells: Vec<Vec<Cell>>, faithful: Option<usize>) -> Self {
        while cells.last().is_some_and(|c| c.is_empty()) {
            cells.pop();
        }
        let mut offsets = Vec::with_capacity(cells.len() + 1);
        let mut acc = 0;
        for level in &cells {
            offsets.push(acc);
            acc += level.len();
        }
        offsets.push(acc);
        SimplicialSet {
            cells,
            faithful,
            offsets,
            caches: Caches::default(),
        }
    }

    pub fn empty() -> Self {
        Self::new_unchecked(Vec::new(), None)
    }

    pub fn point() -> Self {
        Self::new_unchecked(
            vec![vec![Cell {
                faces: Vec::new(),
                label: None,
            }]],
            None,
        )
    }

    /// Largest dimension holding a nondegenerate cell, `None` when empty.
    pub fn max_dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    /// `None` when exact, otherwise the dimension up to which cells are known.
    pub fn faithful(&self) -> Option<usize> {
        self.faithful
    }

    pub fn is_faithful_to(&self, dim: usize) -> bool {
        self.faithful.is_none_or(|d| dim <= d)
    }

    pub fn require_faithful(&self, dim: usize) -> Result<()> {
        match self.faithful {
            Some(d) if dim > d => Err(Error::Truncation {
                needed: dim,
                faithful: d,
            }),
            _ => Ok(()),
        }
    }

    pub fn with_faithful(mut self, faithful: Option<usize>) -> Self {
        self.faithful = faithful;
        self
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, |c| c.len())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn level(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map_or(&[], |c| c.as_slice())
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.dim][id.index]
    }

    pub fn cell_ids(&self, dim: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.count(dim)).map(move |i| CellId::new(dim, i))
    }

    /// All nondegenerate cells in canonical (dimension, index) order.
    pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).flat_map(move |d| self.cell_ids(d))
    }

    pub fn flat_index(&self, id: CellId) -> usize {
        self.offsets[id.dim] + id.index
    }

    pub fn cell_at_flat(&self, flat: usize) -> CellId {
        let dim = self.offsets.partition_point(|&o| o <= flat) - 1;
        CellId::new(dim, flat - self.offsets[dim])
    }

    pub fn label(&self, id: CellId) -> Option<&str> {
        self.cell(id).label.as_deref()
    }

    pub fn display(&self, id: CellId) -> String {
        match self.label(id) {
            Some(l) => l.to_string(),
            None => format!("c{}_{}", id.dim, id.index),
        }
    }

    /// Restriction of `s` along a monotone map `theta: [p] -> [dim s]`.
    pub fn pull(&self, s: SimplexRef, theta: &[usize]) -> SimplexRef {
        let composed: Vec<usize> = theta.iter().map(|&t| s.degeneracy.apply(t)).collect();
        let (tau, image) = factor_monotone(&composed);
        let y = self.restrict_cell(s.cell, &image);
        SimplexRef {
            cell: y.cell,
            degeneracy: tau.then(&y.degeneracy),
        }
    }

    fn restrict_cell(&self, c: CellId, image: &[usize]) -> SimplexRef {
        if image.len() == c.dim + 1 {
            return SimplexRef::cell(c);
        }
        let mut missing = c.dim;
        while image.binary_search(&missing).is_ok() {
            missing -= 1;
        }
        let inner: Vec<usize> = image
            .iter()
            .map(|&v| if v > missing { v - 1 } else { v })
            .collect();
        let f = self.cells[c.dim][c.index].faces[missing];
        self.pull(f, &inner)
    }

    pub fn face(&self, i: usize, s: SimplexRef) -> SimplexRef {
        let n = s.dim();
        assert!(n >= 1 && i <= n, "face {i} of a {n}-simplex");
        self.pull(s, &coface_map(n, i))
    }

    pub fn faces(&self, s: SimplexRef) -> Vec<SimplexRef> {
        (0..=s.dim()).map(|i| self.face(i, s)).collect()
    }

    pub fn degeneracy(&self, j: usize, s: SimplexRef) -> SimplexRef {
        s.degenerate_by(&SurjectionWord::elementary(s.dim() + 1, j))
    }

    pub fn vertex(&self, s: SimplexRef, k: usize) -> usize {
        self.pull(s, &[k]).cell.index
    }

    pub fn vertices(&self, s: SimplexRef) -> Vec<usize> {
        (0..=s.dim()).map(|k| self.vertex(s, k)).collect()
    }

    /// The edge from vertex `a` to vertex `b` of `s`.
    pub fn edge(&self, s: SimplexRef, a: usize, b: usize) -> SimplexRef {
        self.pull(s, &[a, b])
    }

    /// The fully degenerate `n`-simplex on a vertex.
    pub fn constant(&self, v: usize, n: usize) -> SimplexRef {
        SimplexRef {
            cell: CellId::new(0, v),
            degeneracy: SurjectionWord::from_map(&vec![0; n + 1]).expect("constant map"),
        }
    }

    /// Every simplex (degenerate or not) of dimension `n`, in canonical order.
    pub fn simplices(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for d in 0..=n.min(self.cells.len().saturating_sub(1)) {
            if self.count(d) == 0 {
                continue;
            }
            let words = surjections(n, d);
            for c in self.cell_ids(d) {
                for w in &words {
                    out.push(SimplexRef {
                        cell: c,
                        degeneracy: *w,
                    });
                }
            }
        }
        out.sort();
        out
    }

    /// Cached table of all `n`-simplices keyed by their faces.
    pub fn boundary_table(&self, n: usize) -> Arc<BoundaryTable> {
        let build = || {
            let all = self.simplices(n);
            let mut by_faces: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
            for &s in &all {
                let key = if n == 0 { Vec::new() } else { self.faces(s) };
                by_faces.entry(key).or_default().push(s);
            }
            Arc::new(BoundaryTable { all, by_faces })
        };
        match self.caches.boundary.get(n) {
            Some(slot) => slot.get_or_init(build).clone(),
            None => build(),
        }
    }

    /// Checks that face references resolve and that the simplicial
    /// identities `d_i d_j = d_{j-1} d_i` (i < j) hold on every cell.
    pub fn validate(&self) -> Result<()> {
        for (dim, level) in self.cells.iter().enumerate() {
            for (index, cell) in level.iter().enumerate() {
                let expected = if dim == 0 { 0 } else { dim + 1 };
                if cell.faces.len() != expected {
                    return Err(Error::Malformed(format!(
                        "cell ({dim}, {index}) has {} faces, expected {expected}",
                        cell.faces.len()
                    )));
                }
                for f in &cell.faces {
                    if f.dim() + 1 != dim {
                        return Err(Error::Malformed(format!(
                            "face {f:?} of cell ({dim}, {index}) has the wrong dimension"
                        )));
                    }
                    if f.cell.dim >= self.cells.len() || f.cell.index >= self.count(f.cell.dim) {
                        return Err(Error::Malformed(format!(
                            "face {f:?} of cell ({dim}, {index}) does not resolve"
                        )));
                    }
                    if f.degeneracy.target() != f.cell.dim {
                        return Err(Error::Malformed(format!(
                            "face {f:?} of cell ({dim}, {index}) has an ill-typed degeneracy"
                        )));
                    }
                }
            }
        }
        for (dim, level) in self.cells.iter().enumerate().skip(2) {
            for (index, cell) in level.iter().enumerate() {
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = self.face(i, cell.faces[j]);
                        let rhs = self.face(j - 1, cell.faces[i]);
                        if lhs != rhs {
                            return Err(Error::IdentityViolation { dim, index, i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Keeps only the cells of dimension `<= d`.
    pub fn skeleton(&self, d: usize) -> SimplicialSet {
        let cells: Vec<Vec<Cell>> = self.cells.iter().take(d + 1).cloned().collect();
        let faithful = if self.cells.len() <= d + 1 {
            self.faithful
        } else {
            Some(d)
        };
        SimplicialSet::new_unchecked(cells, faithful)
    }

    pub(crate) fn raw_cells(&self) -> &Vec<Vec<Cell>> {
        &self.cells
    }

    /// Replaces labels; used when a construction wants readable names.
    pub fn with_labels(mut self, labels: impl Fn(CellId) -> Option<String>) -> Self {
        for (d, level) in self.cells.iter_mut().enumerate() {
            for (i, c) in level.iter_mut().enumerate() {
                c.label = labels(CellId::new(d, i));
            }
        }
        self
    }
}

/// Builds cells directly from face lists, a convenience for fixtures.
pub fn cells_from_faces(faces: Vec<Vec<Vec<SimplexRef>>>) -> Vec<Vec<Cell>> {
    faces
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .map(|f| Cell {
                    faces: f,
                    label: None,
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> SimplicialSet {
        let v = SimplexRef::vertex;
        SimplicialSet::new(cells_from_faces(vec![vec![vec![], vec![]], vec![vec![v(1), v(0)]]]), None)
            .unwrap()
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let x = interval();
        let e = SimplexRef::cell(CellId::new(1, 0));
        let s0 = x.degeneracy(0, e);
        assert_eq!(s0.dim(), 2);
        assert_eq!(x.face(0, s0), e);
        assert_eq!(x.face(1, s0), e);
        assert_eq!(x.face(2, s0), x.degeneracy(0, SimplexRef::vertex(0)));
        assert_eq!(x.vertices(s0), vec![0, 0, 1]);
    }

    #[test]
    fn simplices_counts_monotone_maps() {
        let x = interval();
        assert_eq!(x.simplices(3).len(), 5);
        assert_eq!(x.boundary_table(2).all.len(), 4);
    }

    #[test]
    fn rejects_bad_face_reference() {
        let v = SimplexRef::vertex;
        let r = SimplicialSet::new(cells_from_faces(vec![vec![vec![]], vec![vec![v(1), v(0)]]]), None);
        assert!(r.is_err());
    }
}
