use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCategory, Morphism};
use crate::sset::{SimplexRef, SimplicialSet};
use crate::{Error, Result};

/// The homotopy category of a (bounded) quasicategory, with the class of
/// every edge.
#[derive(Clone, Debug)]
pub struct HomotopyCategory {
    pub category: Arc<FinCategory>,
    pub edge_class: HashMap<SimplexRef, usize>,
    /// One edge per morphism, the least in simplex order.
    pub representatives: Vec<SimplexRef>,
}

impl HomotopyCategory {
    pub fn class(&self, e: SimplexRef) -> usize {
        self.edge_class[&e]
    }

    pub fn is_equivalence(&self, e: SimplexRef) -> bool {
        self.category.is_iso(self.class(e))
    }
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

/// Objects are vertices; morphisms are edges modulo the relation generated by
/// 2-simplices with a degenerate outer face; composition comes from 2-simplices.
pub fn homotopy_category(x: &SimplicialSet) -> Result<HomotopyCategory> {
    x.require_faithful(2)?;
    let edges = x.boundary_table(1).all.clone();
    let pos: HashMap<SimplexRef, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    let triangles = x.boundary_table(2).all.clone();
    for &t in &triangles {
        let f = x.faces(t);
        if !f[0].is_nondegenerate() {
            let (a, b) = (find(&mut parent, pos[&f[2]]), find(&mut parent, pos[&f[1]]));
            parent[a.max(b)] = a.min(b);
        }
        if !f[2].is_nondegenerate() {
            let (a, b) = (find(&mut parent, pos[&f[0]]), find(&mut parent, pos[&f[1]]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut edge_class = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        let r = find(&mut parent, i);
        let c = *class_of_root.entry(r).or_insert_with(|| {
            representatives.push(*e);
            representatives.len() - 1
        });
        edge_class.insert(*e, c);
    }
    let morphisms: Vec<Morphism> = representatives
        .iter()
        .map(|&e| Morphism {
            name: if e.is_nondegenerate() {
                x.display(e.cell)
            } else {
                format!("id_{}", x.display(e.cell))
            },
            source: x.vertex(e, 0),
            target: x.vertex(e, 1),
        })
        .collect();
    let identities: Vec<usize> = (0..x.count(0))
        .map(|v| edge_class[&x.constant(v, 1)])
        .collect();
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for &t in &triangles {
        let f = x.faces(t);
        let key = (edge_class[&f[0]], edge_class[&f[2]]);
        let h = edge_class[&f[1]];
        if let Some(&old) = table.get(&key) {
            if old != h {
                return Err(Error::NotQuasicategory {
                    bound: 2,
                    reason: format!(
                        "composite of ({}, {}) is not well defined",
                        morphisms[key.0].name, morphisms[key.1].name
                    ),
                });
            }
        }
        table.insert(key, h);
    }
    let objects = (0..x.count(0)).map(|v| x.display(crate::sset::CellId::new(0, v))).collect();
    let category = FinCategory::from_fn(objects, morphisms, identities, |g, f| table.get(&(g, f)).copied())
        .map_err(|e| Error::NotQuasicategory {
            bound: 2,
            reason: match e {
                Error::MissingComposite(g, f) => format!("no 2-simplex composes ({g}, {f})"),
                other => other.to_string(),
            },
        })?;
    Ok(HomotopyCategory {
        category: Arc::new(category),
        edge_class,
        representatives,
    })
}
