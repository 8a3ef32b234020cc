use std::fmt;
use std::sync::Arc;

use super::simplicial::{CellId, SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// A simplicial map, given by the images of the nondegenerate cells.
#[derive(Clone)]
pub struct SSetMap {
    domain: Arc<SimplicialSet>,
    codomain: Arc<SimplicialSet>,
    images: Vec<Vec<SimplexRef>>,
}

impl PartialEq for SSetMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.domain, &other.domain) || self.domain == other.domain)
            && (Arc::ptr_eq(&self.codomain, &other.codomain) || self.codomain == other.codomain)
    }
}

impl fmt::Debug for SSetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SSetMap")
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .finish()
    }
}

impl SSetMap {
    /// Builds a map and checks that it commutes with faces.
    pub fn new(
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        images: Vec<Vec<SimplexRef>>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(domain, codomain, images);
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        images: Vec<Vec<SimplexRef>>,
    ) -> Self {
        SSetMap {
            domain,
            codomain,
            images,
        }
    }

    pub fn from_fn(
        domain: Arc<SimplicialSet>,
        codomain: Arc<SimplicialSet>,
        f: impl Fn(CellId) -> SimplexRef,
    ) -> Result<Self> {
        let images = (0..domain.counts().len())
            .map(|d| domain.cell_ids(d).map(&f).collect())
            .collect();
        Self::new(domain, codomain, images)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let images = (0..x.counts().len())
            .map(|d| x.cell_ids(d).map(SimplexRef::cell).collect())
            .collect();
        SSetMap {
            domain: x.clone(),
            codomain: x,
            images,
        }
    }

    /// The unique map to the point.
    pub fn to_point(x: Arc<SimplicialSet>, point: Arc<SimplicialSet>) -> Self {
        let images = (0..x.counts().len())
            .map(|d| x.cell_ids(d).map(|_| point.constant(0, d)).collect())
            .collect();
        SSetMap {
            domain: x,
            codomain: point,
            images,
        }
    }

    pub fn domain(&self) -> &Arc<SimplicialSet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<SimplicialSet> {
        &self.codomain
    }

    pub fn images(&self) -> &Vec<Vec<SimplexRef>> {
        &self.images
    }

    pub fn image_of_cell(&self, c: CellId) -> SimplexRef {
        self.images[c.dim][c.index]
    }

    pub fn apply(&self, s: SimplexRef) -> SimplexRef {
        self.image_of_cell(s.cell).degenerate_by(&s.degeneracy)
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.images[0][v].cell.index
    }

    pub fn validate(&self) -> Result<()> {
        let counts = self.domain.counts();
        if self.images.len() != counts.len()
            || self.images.iter().zip(&counts).any(|(l, &c)| l.len() != c)
        {
            return Err(Error::NotSimplicial("image table does not match the domain cells".into()));
        }
        for c in self.domain.all_cells() {
            let img = self.image_of_cell(c);
            if img.dim() != c.dim {
                return Err(Error::NotSimplicial(format!(
                    "image of cell ({}, {}) has dimension {}",
                    c.dim,
                    c.index,
                    img.dim()
                )));
            }
            if img.cell.dim >= self.codomain.counts().len()
                || img.cell.index >= self.codomain.count(img.cell.dim)
                || img.degeneracy.target() != img.cell.dim
            {
                return Err(Error::NotSimplicial(format!(
                    "image of cell ({}, {}) does not resolve in the codomain",
                    c.dim, c.index
                )));
            }
            if c.dim == 0 {
                continue;
            }
            for (i, f) in self.domain.cell(c).faces.iter().enumerate() {
                if self.apply(*f) != self.codomain.face(i, img) {
                    return Err(Error::NotSimplicial(format!(
                        "face {i} of cell ({}, {}) is not preserved",
                        c.dim, c.index
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SSetMap) -> Result<SSetMap> {
        if !(Arc::ptr_eq(&self.codomain, &next.domain) || *self.codomain == *next.domain) {
            return Err(Error::CodomainMismatch(
                "composable maps must share the middle simplicial set".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|l| l.iter().map(|s| next.apply(*s)).collect())
            .collect();
        Ok(SSetMap {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            images,
        })
    }

    /// Same images read as a map between the opposite simplicial sets.
    pub fn opposite(&self, dom_op: Arc<SimplicialSet>, cod_op: Arc<SimplicialSet>) -> SSetMap {
        let images = self
            .images
            .iter()
            .map(|l| l.iter().map(|s| s.reversed()).collect())
            .collect();
        SSetMap {
            domain: dom_op,
            codomain: cod_op,
            images,
        }
    }

    /// Replaces the domain or codomain with an equal simplicial set.
    pub fn rebase(&self, domain: Arc<SimplicialSet>, codomain: Arc<SimplicialSet>) -> SSetMap {
        debug_assert!(*domain == *self.domain && *codomain == *self.codomain);
        SSetMap {
            domain,
            codomain,
            images: self.images.clone(),
        }
    }

    /// True when every nondegenerate cell goes to a distinct nondegenerate cell.
    pub fn is_cell_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images
            .iter()
            .flatten()
            .all(|s| s.is_nondegenerate() && seen.insert(s.cell))
    }

    /// Restriction to the first `d + 1` dimensions of the domain.
    pub fn restrict_to_skeleton(&self, skeleton: Arc<SimplicialSet>) -> SSetMap {
        let images = self.images.iter().take(skeleton.counts().len()).cloned().collect();
        SSetMap {
            domain: skeleton,
            codomain: self.codomain.clone(),
            images,
        }
    }
}
