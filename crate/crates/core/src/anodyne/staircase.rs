use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Point = (usize, usize);

/// A maximal chain `00 -> ... -> nn` in the arrow poset of `[n]`: each step
/// raises one coordinate and the path stays in `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StaircasePath {
    pub n: usize,
    pub vertices: Vec<Point>,
}

impl StaircasePath {
    pub fn new(n: usize, vertices: Vec<Point>) -> Result<Self> {
        let path = StaircasePath { n, vertices };
        path.validate()?;
        Ok(path)
    }

    pub fn validate(&self) -> Result<()> {
        let v = &self.vertices;
        if v.len() != 2 * self.n + 1 || v[0] != (0, 0) || v[v.len() - 1] != (self.n, self.n) {
            return Err(Error::Invalid(format!("not a path from 00 to {0}{0}", self.n)));
        }
        for w in v.windows(2) {
            let ((a, b), (c, d)) = (w[0], w[1]);
            let step = (c == a + 1 && d == b) || (c == a && d == b + 1);
            if !step || c > d {
                return Err(Error::Invalid(format!("bad step {a}{b} -> {c}{d}")));
            }
        }
        Ok(())
    }

    /// The stairs `00 -> 01 -> 11 -> ... -> nn`.
    pub fn stairs(n: usize) -> Self {
        let mut vertices = vec![(0, 0)];
        for i in 0..n {
            vertices.push((i, i + 1));
            vertices.push((i + 1, i + 1));
        }
        StaircasePath { n, vertices }
    }

    /// Up the first column, then along the top row.
    pub fn outer(n: usize) -> Self {
        let vertices = (0..=n).map(|j| (0, j)).chain((1..=n).map(|i| (i, n))).collect();
        StaircasePath { n, vertices }
    }

    pub fn position(&self, v: Point) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }
}

/// All paths for `n >= 1`, in lexicographic order of vertex lists.
pub fn enumerate_paths(n: usize) -> Vec<StaircasePath> {
    fn go(n: usize, cur: &mut Vec<Point>, out: &mut Vec<StaircasePath>) {
        let (i, j) = *cur.last().unwrap();
        if (i, j) == (n, n) {
            out.push(StaircasePath {
                n,
                vertices: cur.clone(),
            });
            return;
        }
        if i < j {
            cur.push((i + 1, j));
            go(n, cur, out);
            cur.pop();
        }
        if j < n {
            cur.push((i, j + 1));
            go(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![(0, 0)], &mut out);
    out.sort();
    out
}

/// Squares enclosed between the path and the stairs.
pub fn area(x: &StaircasePath) -> usize {
    let total: usize = x.vertices.iter().map(|&(i, j)| j - i).sum();
    (total - x.n) / 2
}

/// Corners `i(j-1) -> ij -> (i+1)j` away from the stairs (`j >= i + 2`).
pub fn flip_positions(x: &StaircasePath) -> Vec<usize> {
    let v = &x.vertices;
    (1..v.len() - 1)
        .filter(|&r| {
            let (i, j) = v[r];
            j >= i + 2 && v[r - 1].0 == i && v[r + 1].1 == j
        })
        .collect()
}

pub fn flipvertices(x: &StaircasePath) -> Vec<Point> {
    flip_positions(x).into_iter().map(|r| x.vertices[r]).collect()
}

/// Replaces the corner at `v` by the opposite corner of its square.
pub fn flip(x: &StaircasePath, v: Point) -> Result<StaircasePath> {
    let r = x
        .position(v)
        .filter(|r| flip_positions(x).contains(r))
        .ok_or_else(|| Error::Invalid(format!("{}{} is not a flipvertex", v.0, v.1)))?;
    let mut vertices = x.vertices.clone();
    vertices[r] = (v.0 + 1, v.1 - 1);
    Ok(StaircasePath { n: x.n, vertices })
}

/// The unique path whose flipvertices are `vs`, if any.
pub fn from_flipvertices(n: usize, vs: &[Point]) -> Option<StaircasePath> {
    let mut sorted = vs.to_vec();
    sorted.sort();
    let mut cur = (0, 0);
    let mut vertices = vec![cur];
    let walk = |to: Point, vertices: &mut Vec<Point>, cur: &mut Point| -> Option<()> {
        if to.0 < cur.0 || to.1 < cur.1 {
            return None;
        }
        while cur.0 < to.0 {
            if cur.0 < cur.1 {
                cur.0 += 1;
            } else {
                cur.1 += 1;
            }
            vertices.push(*cur);
        }
        while cur.1 < to.1 {
            cur.1 += 1;
            vertices.push(*cur);
        }
        (*cur == to).then_some(())
    };
    for &v in &sorted {
        walk(v, &mut vertices, &mut cur)?;
        if v.0 >= n {
            return None;
        }
        cur = (v.0 + 1, v.1);
        vertices.push(cur);
    }
    walk((n, n), &mut vertices, &mut cur)?;
    let path = StaircasePath { n, vertices };
    (path.validate().is_ok() && flipvertices(&path) == sorted).then_some(path)
}

/// How a top simplex of layer `k` meets the previous layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Attachment {
    /// The stairs, glued onto the long simplex.
    Stairs,
    /// A single face `∂_v x`.
    Face { position: usize },
    /// The generalized horn spanned by the faces at these positions.
    Horn { positions: Vec<usize> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayerCell {
    pub path: StaircasePath,
    pub attachment: Attachment,
    /// `x ∩ O_{k-1}` equals the union of the faces `∂_v x`.
    pub intersection_matches: bool,
}

/// `O_k`: the union of the paths of area at most `k` (`k = -1` is the long simplex).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Layer {
    pub k: i64,
    pub cells: Vec<LayerCell>,
    /// Nondegenerate simplices, as chains of points.
    pub simplices: BTreeSet<Vec<Point>>,
}

pub(crate) fn subchains(chain: &[Point]) -> impl Iterator<Item = Vec<Point>> + '_ {
    (1u64..1 << chain.len()).map(move |mask| {
        chain
            .iter()
            .enumerate()
            .filter(|(r, _)| mask >> r & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

pub fn filtration(n: usize) -> Result<Vec<Layer>> {
    if n == 0 || n > 6 {
        return Err(Error::Precondition(format!("filtration computed for 1 <= n <= 6, got {n}")));
    }
    let long: Vec<Point> = (0..=n).map(|i| (i, i)).collect();
    let mut current: BTreeSet<Vec<Point>> = subchains(&long).collect();
    let mut layers = vec![Layer {
        k: -1,
        cells: Vec::new(),
        simplices: current.clone(),
    }];
    let paths = enumerate_paths(n);
    for k in 0..=n * (n - 1) / 2 {
        let mut cells = Vec::new();
        for x in paths.iter().filter(|x| area(x) == k) {
            let positions = flip_positions(x);
            let meet: BTreeSet<Vec<Point>> =
                subchains(&x.vertices).filter(|s| current.contains(s)).collect();
            let (attachment, expected): (Attachment, BTreeSet<Vec<Point>>) = if k == 0 {
                (Attachment::Stairs, meet.clone())
            } else {
                let faces: BTreeSet<Vec<Point>> = positions
                    .iter()
                    .flat_map(|&r| {
                        let face: Vec<Point> =
                            x.vertices.iter().enumerate().filter(|&(q, _)| q != r).map(|(_, &p)| p).collect();
                        subchains(&face).collect::<Vec<_>>()
                    })
                    .collect();
                let a = if positions.len() == 1 {
                    Attachment::Face { position: positions[0] }
                } else {
                    Attachment::Horn { positions }
                };
                (a, faces)
            };
            cells.push(LayerCell {
                path: x.clone(),
                attachment,
                intersection_matches: meet == expected,
            });
        }
        for c in &cells {
            current.extend(subchains(&c.path.vertices));
        }
        layers.push(Layer {
            k: k as i64,
            cells,
            simplices: current.clone(),
        });
    }
    Ok(layers)
}
