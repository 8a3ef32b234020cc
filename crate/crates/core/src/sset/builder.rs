//! Generic assembly of a simplicial set from a keyed model of its simplices.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use super::simplicial::{Cell, CellId, SimplexRef, SimplicialSet};
use super::surjection::SurjectionWord;
use crate::Result;

/// A description of a simplicial set by keys for its simplices.
///
/// `candidates(n)` must contain every nondegenerate `n`-simplex; degenerate
/// keys are filtered out and duplicates removed.
pub trait SimplexModel {
    type Key: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn candidates(&self, n: usize) -> Result<Vec<Self::Key>>;
    fn face(&self, i: usize, n: usize, key: &Self::Key) -> Self::Key;
    fn degeneracy(&self, j: usize, n: usize, key: &Self::Key) -> Self::Key;

    /// Some `j` with `key = s_j d_j key`, if the key is degenerate.
    fn degenerate_at(&self, n: usize, key: &Self::Key) -> Option<usize> {
        (0..n).find(|&j| {
            let d = self.face(j, n, key);
            self.degeneracy(j, n - 1, &d) == *key
        })
    }

    fn label(&self, _n: usize, _key: &Self::Key) -> Option<String> {
        None
    }
}

/// The output of [`build`]: the simplicial set and the key of every cell.
pub struct Built<M: SimplexModel> {
    pub model: M,
    pub sset: Arc<SimplicialSet>,
    pub keys: Vec<Vec<M::Key>>,
    index: Vec<HashMap<M::Key, usize>>,
}

impl<M: SimplexModel> Built<M> {
    pub fn key(&self, c: CellId) -> &M::Key {
        &self.keys[c.dim][c.index]
    }

    /// The normal form of an arbitrary `n`-simplex key.
    pub fn locate(&self, n: usize, key: &M::Key) -> Option<SimplexRef> {
        locate(&self.model, &self.index, n, key)
    }

    pub fn cell_of(&self, n: usize, key: &M::Key) -> Option<CellId> {
        self.index.get(n)?.get(key).map(|&i| CellId::new(n, i))
    }
}

fn locate<M: SimplexModel>(
    model: &M,
    index: &[HashMap<M::Key, usize>],
    n: usize,
    key: &M::Key,
) -> Option<SimplexRef> {
    match model.degenerate_at(n, key) {
        Some(j) => {
            let inner = locate(model, index, n - 1, &model.face(j, n, key))?;
            Some(inner.degenerate_by(&SurjectionWord::elementary(n, j)))
        }
        None => index
            .get(n)?
            .get(key)
            .map(|&i| SimplexRef::cell(CellId::new(n, i))),
    }
}

/// Materializes a model up to `max_dim`. `faithful` is recorded on the result.
pub fn build<M: SimplexModel>(model: M, max_dim: usize, faithful: Option<usize>) -> Result<Built<M>> {
    let mut keys: Vec<Vec<M::Key>> = Vec::new();
    let mut index: Vec<HashMap<M::Key, usize>> = Vec::new();
    let mut cells: Vec<Vec<Cell>> = Vec::new();
    for n in 0..=max_dim {
        let mut nd: Vec<M::Key> = model
            .candidates(n)?
            .into_iter()
            .filter(|k| model.degenerate_at(n, k).is_none())
            .collect();
        nd.sort();
        nd.dedup();
        let mut level = Vec::with_capacity(nd.len());
        for k in &nd {
            let faces = if n == 0 {
                Vec::new()
            } else {
                (0..=n)
                    .map(|i| {
                        let f = model.face(i, n, k);
                        locate(&model, &index, n - 1, &f).unwrap_or_else(|| {
                            panic!("face {i} of {k:?} is not among the computed {}-simplices", n - 1)
                        })
                    })
                    .collect()
            };
            level.push(Cell {
                faces,
                label: model.label(n, k),
            });
        }
        index.push(nd.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect());
        keys.push(nd);
        cells.push(level);
    }
    let sset = SimplicialSet::new_unchecked(cells, faithful);
    while keys.len() > sset.counts().len() {
        keys.pop();
        index.pop();
    }
    Ok(Built {
        model,
        sset: Arc::new(sset),
        keys,
        index,
    })
}
