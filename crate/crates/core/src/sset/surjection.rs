use std::fmt;

use crate::{Error, Result};

/// Largest supported source arity.
pub const MAX_ARITY: usize = 32;

/// A monotone surjection `[n] -> [m]`, stored by its collapsed positions:
/// bit `j` is set when `j` and `j + 1` have the same image.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurjectionWord {
    source: u8,
    mask: u32,
}

impl SurjectionWord {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_ARITY, "arity {n} exceeds {MAX_ARITY}");
        SurjectionWord { source: n as u8, mask: 0 }
    }

    pub fn from_collapsed(n: usize, positions: &[usize]) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::InvalidSurjection(format!("arity {n} exceeds {MAX_ARITY}")));
        }
        let mut mask = 0u32;
        for &p in positions {
            if p >= n {
                return Err(Error::InvalidSurjection(format!(
                    "collapsed position {p} out of range for source arity {n}"
                )));
            }
            if mask & (1 << p) != 0 {
                return Err(Error::InvalidSurjection(format!("position {p} listed twice")));
            }
            mask |= 1 << p;
        }
        Ok(SurjectionWord { source: n as u8, mask })
    }

    /// The codegeneracy `s^j: [n] -> [n-1]` collapsing `j` and `j+1`.
    pub fn elementary(n: usize, j: usize) -> Self {
        assert!(j < n && n <= MAX_ARITY);
        SurjectionWord { source: n as u8, mask: 1 << j }
    }

    /// Builds the word of a monotone surjective map given as its value list.
    pub fn from_map(values: &[usize]) -> Result<Self> {
        if values.is_empty() || values[0] != 0 {
            return Err(Error::InvalidSurjection("map must start at 0".into()));
        }
        let n = values.len() - 1;
        if n > MAX_ARITY {
            return Err(Error::InvalidSurjection(format!("arity {n} exceeds {MAX_ARITY}")));
        }
        let mut mask = 0u32;
        for j in 0..n {
            match values[j + 1].checked_sub(values[j]) {
                Some(0) => mask |= 1 << j,
                Some(1) => {}
                _ => {
                    return Err(Error::InvalidSurjection(format!(
                        "{values:?} is not a monotone surjection"
                    )))
                }
            }
        }
        Ok(SurjectionWord { source: n as u8, mask })
    }

    pub fn source(&self) -> usize {
        self.source as usize
    }

    pub fn target(&self) -> usize {
        self.source as usize - self.mask.count_ones() as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    pub fn is_collapsed(&self, j: usize) -> bool {
        j < self.source() && self.mask & (1 << j) != 0
    }

    /// True when the word collapses everything to a single point.
    pub fn is_total(&self) -> bool {
        self.target() == 0
    }

    pub fn collapsed(&self) -> Vec<usize> {
        (0..self.source()).filter(|&j| self.is_collapsed(j)).collect()
    }

    pub fn apply(&self, k: usize) -> usize {
        debug_assert!(k <= self.source());
        let below = if k >= 32 { self.mask } else { self.mask & ((1u32 << k) - 1) };
        k - below.count_ones() as usize
    }

    pub fn as_map(&self) -> Vec<usize> {
        (0..=self.source()).map(|k| self.apply(k)).collect()
    }

    /// `self` followed by `next`: the composite `[n] -> [m] -> [l]`.
    pub fn then(&self, next: &SurjectionWord) -> SurjectionWord {
        debug_assert_eq!(self.target(), next.source());
        let mut mask = self.mask;
        for j in 0..self.source() {
            if mask & (1 << j) == 0 && next.is_collapsed(self.apply(j)) {
                mask |= 1 << j;
            }
        }
        SurjectionWord { source: self.source, mask }
    }

    /// Conjugation by the order reversal of `[n]` and `[m]`.
    pub fn reversed(&self) -> SurjectionWord {
        let n = self.source();
        let mut mask = 0u32;
        for j in 0..n {
            if self.is_collapsed(j) {
                mask |= 1 << (n - 1 - j);
            }
        }
        SurjectionWord { source: self.source, mask }
    }
}

impl fmt::Debug for SurjectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[{}]{:?}", self.source, self.collapsed())
    }
}

/// Splits a monotone map `[p] -> [n]` (given by values) into a surjection
/// followed by an injection, returned as the word and the image list.
pub fn factor_monotone(values: &[usize]) -> (SurjectionWord, Vec<usize>) {
    let mut image = Vec::with_capacity(values.len());
    let mut mask = 0u32;
    for (k, &v) in values.iter().enumerate() {
        debug_assert!(k == 0 || values[k - 1] <= v, "map {values:?} is not monotone");
        if k > 0 && values[k - 1] == v {
            mask |= 1 << (k - 1);
        } else {
            image.push(v);
        }
    }
    (
        SurjectionWord {
            source: (values.len() - 1) as u8,
            mask,
        },
        image,
    )
}

/// The coface `[n-1] -> [n]` skipping `i`, as a value list.
pub fn coface_map(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&k| k != i).collect()
}

/// The codegeneracy `[n+1] -> [n]` hitting `j` twice, as a value list.
pub fn codegeneracy_map(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect()
}

/// All surjections `[n] -> [d]`, ordered by their collapsed-position masks.
pub fn surjections(n: usize, d: usize) -> Vec<SurjectionWord> {
    assert!(n <= MAX_ARITY);
    if d > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n - d);
    fn rec(n: usize, need: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<SurjectionWord>) {
        if chosen.len() == need {
            let mask = chosen.iter().fold(0u32, |m, &j| m | (1 << j));
            out.push(SurjectionWord { source: n as u8, mask });
            return;
        }
        for j in start..n {
            chosen.push(j);
            rec(n, need, j + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(n, n - d, 0, &mut chosen, &mut out);
    out.sort();
    out
}

/// All monotone maps `[p] -> [n]`, lexicographically ordered.
pub fn monotone_maps(p: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p + 1);
    fn rec(p: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(p, n, v, cur, out);
            cur.pop();
        }
    }
    rec(p, n, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_no_collapsed_positions() {
        let w = SurjectionWord::identity(4);
        assert!(w.collapsed().is_empty());
        assert_eq!(w.as_map(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn composition_matches_maps() {
        let a = SurjectionWord::from_collapsed(5, &[1, 3]).unwrap();
        let b = SurjectionWord::from_collapsed(3, &[0]).unwrap();
        let ab = a.then(&b);
        let expect: Vec<usize> = a.as_map().iter().map(|&k| b.apply(k)).collect();
        assert_eq!(ab.as_map(), expect);
    }

    #[test]
    fn factoring_roundtrips() {
        let (w, img) = factor_monotone(&[1, 1, 3, 4, 4]);
        assert_eq!(img, vec![1, 3, 4]);
        assert_eq!(w.collapsed(), vec![0, 3]);
    }

    #[test]
    fn reversal_is_an_involution() {
        let w = SurjectionWord::from_collapsed(6, &[0, 4]).unwrap();
        assert_eq!(w.reversed().collapsed(), vec![1, 5]);
        assert_eq!(w.reversed().reversed(), w);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SurjectionWord::from_collapsed(2, &[2]).is_err());
        assert!(SurjectionWord::from_map(&[0, 2]).is_err());
    }
}
