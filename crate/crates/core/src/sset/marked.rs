use std::collections::BTreeSet;
use std::sync::Arc;

use super::simplicial::SimplicialSet;
use crate::{Error, Result};

/// A simplicial set with a set of marked nondegenerate edges; degenerate
/// edges are implicitly marked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSSet {
    pub base: Arc<SimplicialSet>,
    marked: BTreeSet<usize>,
}

impl MarkedSSet {
    pub fn new(base: Arc<SimplicialSet>, marked: impl IntoIterator<Item = usize>) -> Result<Self> {
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        if let Some(&e) = marked.iter().find(|&&e| e >= base.count(1)) {
            return Err(Error::Invalid(format!("marked edge {e} is not an edge")));
        }
        Ok(MarkedSSet { base, marked })
    }

    /// Only the degenerate edges marked.
    pub fn flat(base: Arc<SimplicialSet>) -> Self {
        MarkedSSet {
            base,
            marked: BTreeSet::new(),
        }
    }

    /// Every edge marked.
    pub fn sharp(base: Arc<SimplicialSet>) -> Self {
        let marked = (0..base.count(1)).collect();
        MarkedSSet { base, marked }
    }

    pub fn is_marked(&self, edge: usize) -> bool {
        self.marked.contains(&edge)
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }
}
