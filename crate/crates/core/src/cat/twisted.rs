use std::collections::HashMap;

use super::category::{FinCategory, Morphism};

/// The twisted arrow category: objects are morphisms `u -> v`; a morphism
/// `(u -> v) => (x -> y)` is a pair `(x -> u, v -> y)` making the square commute.
pub fn twisted_arrow_cat(c: &FinCategory) -> FinCategory {
    let objects: Vec<String> = c.morphisms().iter().map(|m| m.name.clone()).collect();
    let mut morphisms = Vec::new();
    let mut legs = Vec::new();
    let mut index = HashMap::new();
    for f in 0..c.morphism_count() {
        for g in 0..c.morphism_count() {
            for &a in c.hom(c.source(g), c.source(f)) {
                for &b in c.hom(c.target(f), c.target(g)) {
                    let fa = c.compose(f, a).expect("composable");
                    if c.compose(b, fa) == Some(g) {
                        index.insert((f, g, a, b), morphisms.len());
                        legs.push((a, b));
                        morphisms.push(Morphism {
                            name: format!("({},{})", c.morphism(a).name, c.morphism(b).name),
                            source: f,
                            target: g,
                        });
                    }
                }
            }
        }
    }
    let identities: Vec<usize> = (0..c.morphism_count())
        .map(|f| index[&(f, f, c.identity(c.source(f)), c.identity(c.target(f)))])
        .collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
    FinCategory::from_fn(objects, morphisms, identities, |h2, h1| {
        let (a, b) = legs[h1];
        let (a2, b2) = legs[h2];
        Some(index[&(ends[h1].0, ends[h2].1, c.compose(a, a2)?, c.compose(b2, b)?)])
    })
    .expect("twisted arrow category")
}
