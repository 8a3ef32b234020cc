use crate::sset::{CellId, DomainPlan, MapSearch, SSetMap, SimplexRef};
use crate::{Error, Result};

/// A commutative square `A -> X`, `B -> S` with `A -> B` and `X -> S`.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub inclusion: SSetMap,
    pub top: SSetMap,
    pub bottom: SSetMap,
    pub over: SSetMap,
}

impl LiftingProblem {
    pub fn validate(&self) -> Result<()> {
        let (a, b) = (self.inclusion.domain(), self.inclusion.codomain());
        if self.top.domain() != a
            || self.bottom.domain() != b
            || self.top.codomain() != self.over.domain()
            || self.bottom.codomain() != self.over.codomain()
        {
            return Err(Error::CodomainMismatch("lifting problem maps do not line up".into()));
        }
        for c in a.all_cells() {
            let s = SimplexRef::cell(c);
            if self.over.apply(self.top.apply(s)) != self.bottom.apply(self.inclusion.apply(s)) {
                return Err(Error::Invalid(format!("square does not commute at cell {c:?}")));
            }
        }
        if !self.inclusion.is_cell_injective() {
            return Err(Error::Invalid("A -> B is not an inclusion".into()));
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let a = self.inclusion.domain().counts();
        let b = self.inclusion.codomain().counts();
        let top: Vec<String> = self
            .top
            .images()
            .iter()
            .flatten()
            .map(|s| format!("{}:{}", s.cell.dim, s.cell.index))
            .collect();
        let bottom = self
            .bottom
            .images()
            .last()
            .and_then(|l| l.first())
            .map(|s| format!("{s:?}"))
            .unwrap_or_default();
        format!("A cells {a:?} into B cells {b:?}; top [{}]; bottom {bottom}", top.join(" "))
    }
}

/// Searches for a diagonal `B -> X` extending `top` over `bottom`.
pub fn has_lift(prob: &LiftingProblem) -> Result<Option<SSetMap>> {
    prob.validate()?;
    let (a, b) = (prob.inclusion.domain(), prob.inclusion.codomain());
    let x = prob.over.domain();
    let mut fixed: Vec<Option<SimplexRef>> = vec![None; b.total_cells()];
    for c in a.all_cells() {
        let img = prob.inclusion.image_of_cell(c);
        if !img.is_nondegenerate() {
            return Err(Error::Invalid("A -> B sends a cell to a degenerate simplex".into()));
        }
        fixed[b.flat_index(img.cell)] = Some(prob.top.image_of_cell(c));
    }
    let plan = DomainPlan::new(b);
    let admissible = |c: CellId, y: &SimplexRef, _: &[Option<SimplexRef>]| {
        prob.over.apply(*y) == prob.bottom.image_of_cell(c)
    };
    let mut search = MapSearch::new(b, x, &plan);
    search.fixed = Some(&fixed);
    search.admissible = Some(&admissible);
    Ok(search.first().map(|flat| {
        let images = (0..b.counts().len())
            .map(|d| b.cell_ids(d).map(|c| flat[b.flat_index(c)]).collect())
            .collect();
        SSetMap::new(b.clone(), x.clone(), images).expect("search respects faces")
    }))
}
