//! Isomorphism search between finite simplicial sets.

use std::collections::HashMap;
use std::sync::Arc;

use super::map::SSetMap;
use super::search::DomainPlan;
use super::simplicial::{CellId, SimplexRef, SimplicialSet};

/// Incidence profile of a vertex: for each (dimension, position), how many
/// nondegenerate cells have the vertex there.
fn profiles(x: &SimplicialSet) -> Vec<Vec<(usize, usize, usize)>> {
    let mut counts: Vec<HashMap<(usize, usize), usize>> = vec![HashMap::new(); x.count(0)];
    for c in x.all_cells() {
        for (pos, v) in x.vertices(SimplexRef::cell(c)).into_iter().enumerate() {
            *counts[v].entry((c.dim, pos)).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|m| {
            let mut v: Vec<(usize, usize, usize)> = m.into_iter().map(|((d, p), n)| (d, p, n)).collect();
            v.sort();
            v
        })
        .collect()
}

/// Finds a cell bijection commuting with faces, returned as a map `x -> y`.
pub fn is_isomorphic(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Option<SSetMap> {
    if x.counts() != y.counts() {
        return None;
    }
    let px = profiles(x);
    let py = profiles(y);
    let mut sx = px.clone();
    let mut sy = py.clone();
    sx.sort();
    sy.sort();
    if sx != sy {
        return None;
    }
    let plan = DomainPlan::new(x);
    let mut by_faces: Vec<HashMap<Vec<SimplexRef>, Vec<CellId>>> = Vec::new();
    for d in 0..y.counts().len() {
        let mut m: HashMap<Vec<SimplexRef>, Vec<CellId>> = HashMap::new();
        for c in y.cell_ids(d) {
            m.entry(y.cell(c).faces.clone()).or_default().push(c);
        }
        by_faces.push(m);
    }
    let order = &plan.order;
    let mut assigned: Vec<Option<CellId>> = vec![None; x.total_cells()];
    let mut used: Vec<Vec<bool>> = y.counts().iter().map(|&n| vec![false; n]).collect();
    let candidates = |c: CellId, assigned: &[Option<CellId>], used: &[Vec<bool>]| -> Vec<CellId> {
        if c.dim == 0 {
            return y
                .cell_ids(0)
                .filter(|v| !used[0][v.index] && py[v.index] == px[c.index])
                .collect();
        }
        let faces: Vec<SimplexRef> = x
            .cell(c)
            .faces
            .iter()
            .map(|f| SimplexRef {
                cell: assigned[x.flat_index(f.cell)].expect("faces first"),
                degeneracy: f.degeneracy,
            })
            .collect();
        by_faces[c.dim]
            .get(&faces)
            .map(|v| v.iter().copied().filter(|d| !used[d.dim][d.index]).collect())
            .unwrap_or_default()
    };
    let mut stack: Vec<(Vec<CellId>, usize)> = Vec::new();
    if order.is_empty() {
        return Some(SSetMap::identity(y.clone()).rebase(x.clone(), y.clone()));
    }
    stack.push((candidates(order[0], &assigned, &used), 0));
    loop {
        let depth = stack.len() - 1;
        let c = order[depth];
        let flat = x.flat_index(c);
        if let Some(prev) = assigned[flat].take() {
            used[prev.dim][prev.index] = false;
        }
        let (cands, pos) = stack.last_mut().unwrap();
        if *pos >= cands.len() {
            stack.pop();
            if stack.is_empty() {
                return None;
            }
            continue;
        }
        let pick = cands[*pos];
        *pos += 1;
        assigned[flat] = Some(pick);
        used[pick.dim][pick.index] = true;
        if depth + 1 == order.len() {
            let images = (0..x.counts().len())
                .map(|d| {
                    x.cell_ids(d)
                        .map(|c| SimplexRef::cell(assigned[x.flat_index(c)].unwrap()))
                        .collect()
                })
                .collect();
            return Some(SSetMap::new_unchecked(x.clone(), y.clone(), images));
        }
        let next = candidates(order[depth + 1], &assigned, &used);
        stack.push((next, 0));
    }
}
