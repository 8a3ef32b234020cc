//! Backtracking enumeration of simplicial maps `K -> X`.

use std::collections::VecDeque;

use super::simplicial::{CellId, SimplexRef, SimplicialSet};

/// Search order and face data of a domain, computed once and reused.
pub struct DomainPlan {
    /// Nondegenerate cells of the domain in assignment order.
    pub order: Vec<CellId>,
    faces: Vec<Vec<SimplexRef>>,
}

impl DomainPlan {
    /// Vertices in breadth-first order along edges, then every cell as soon as
    /// all of its vertices are placed (lower dimensions first).
    pub fn new(k: &SimplicialSet) -> Self {
        let nv = k.count(0);
        let mut adj = vec![Vec::new(); nv];
        for e in k.cell_ids(1) {
            let f = &k.cell(e).faces;
            let (a, b) = (f[1].cell.index, f[0].cell.index);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut rank = vec![usize::MAX; nv];
        let mut next = 0;
        for start in 0..nv {
            if rank[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            rank[start] = next;
            next += 1;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if rank[w] == usize::MAX {
                        rank[w] = next;
                        next += 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut cells: Vec<(usize, usize, CellId)> = k
            .all_cells()
            .map(|c| {
                let top = k
                    .vertices(SimplexRef::cell(c))
                    .into_iter()
                    .map(|v| rank[v])
                    .max()
                    .unwrap_or(0);
                (top, c.dim, c)
            })
            .collect();
        cells.sort();
        let faces = k.all_cells().map(|c| k.cell(c).faces.clone()).collect();
        DomainPlan {
            order: cells.into_iter().map(|t| t.2).collect(),
            faces,
        }
    }
}

/// Enumerates maps from `domain` to `target`, subject to fixed cells and a
/// per-cell admissibility test. Images are indexed by flat cell index.
/// Extra filter on a candidate image for a cell, given the partial assignment.
pub type Admissible<'a> = dyn Fn(CellId, &SimplexRef, &[Option<SimplexRef>]) -> bool + 'a;

pub struct MapSearch<'a> {
    pub domain: &'a SimplicialSet,
    pub target: &'a SimplicialSet,
    pub plan: &'a DomainPlan,
    pub fixed: Option<&'a [Option<SimplexRef>]>,
    pub admissible: Option<&'a Admissible<'a>>,
}

impl<'a> MapSearch<'a> {
    pub fn new(domain: &'a SimplicialSet, target: &'a SimplicialSet, plan: &'a DomainPlan) -> Self {
        MapSearch {
            domain,
            target,
            plan,
            fixed: None,
            admissible: None,
        }
    }

    fn candidates(&self, c: CellId, assigned: &[Option<SimplexRef>]) -> Vec<SimplexRef> {
        let flat = self.domain.flat_index(c);
        let pool: Vec<SimplexRef> = if let Some(v) = self.fixed.and_then(|f| f[flat]) {
            if c.dim > 0 {
                let boundary = self.boundary_image(flat, assigned);
                if self.target.faces(v) != boundary {
                    return Vec::new();
                }
            }
            vec![v]
        } else {
            let table = self.target.boundary_table(c.dim);
            if c.dim == 0 {
                table.all.clone()
            } else {
                let boundary = self.boundary_image(flat, assigned);
                table.by_faces.get(&boundary).cloned().unwrap_or_default()
            }
        };
        match self.admissible {
            Some(test) => pool.into_iter().filter(|y| test(c, y, assigned)).collect(),
            None => pool,
        }
    }

    fn boundary_image(&self, flat: usize, assigned: &[Option<SimplexRef>]) -> Vec<SimplexRef> {
        self.plan.faces[flat]
            .iter()
            .map(|f| {
                let img = assigned[self.domain.flat_index(f.cell)].expect("faces are assigned first");
                img.degenerate_by(&f.degeneracy)
            })
            .collect()
    }

    /// Calls `visit` on every complete map; stops early when it returns false.
    pub fn run(&self, mut visit: impl FnMut(&[SimplexRef]) -> bool) {
        let total = self.domain.total_cells();
        let order = &self.plan.order;
        let mut assigned: Vec<Option<SimplexRef>> = vec![None; total];
        if order.is_empty() {
            visit(&[]);
            return;
        }
        let mut stack: Vec<(Vec<SimplexRef>, usize)> = Vec::with_capacity(order.len());
        stack.push((self.candidates(order[0], &assigned), 0));
        loop {
            let depth = stack.len() - 1;
            let c = order[depth];
            let flat = self.domain.flat_index(c);
            let (cands, pos) = stack.last_mut().unwrap();
            if *pos >= cands.len() {
                assigned[flat] = None;
                stack.pop();
                if stack.is_empty() {
                    return;
                }
                continue;
            }
            assigned[flat] = Some(cands[*pos]);
            *pos += 1;
            if depth + 1 == order.len() {
                let full: Vec<SimplexRef> = assigned.iter().map(|s| s.unwrap()).collect();
                if !visit(&full) {
                    return;
                }
            } else {
                let next = self.candidates(order[depth + 1], &assigned);
                stack.push((next, 0));
            }
        }
    }

    pub fn collect(&self) -> Vec<Vec<SimplexRef>> {
        let mut out = Vec::new();
        self.run(|m| {
            out.push(m.to_vec());
            true
        });
        out
    }

    pub fn first(&self) -> Option<Vec<SimplexRef>> {
        let mut out = None;
        self.run(|m| {
            out = Some(m.to_vec());
            false
        });
        out
    }
}
