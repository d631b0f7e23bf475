//! Finite ordinals, gap sets and ordinal insertion.

use crate::error::{invalid, Result};
use std::collections::BTreeMap;
use std::fmt;

pub type Label = u32;

/// A finite ordinal: distinct labels listed in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    labels: Vec<Label>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapPair {
    pub lo: Label,
    pub hi: Label,
}

impl fmt::Display for GapPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// Which operand a gap of an insertion comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Outer,
    Inner,
}

impl Ordinal {
    pub fn new(labels: Vec<Label>) -> Result<Self> {
        if labels.is_empty() {
            return invalid("ordinals are nonempty");
        }
        let mut seen = labels.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != labels.len() {
            return invalid("ordinal labels must be distinct");
        }
        Ok(Ordinal { labels })
    }

    /// The canonical ordinal (1,…,n).
    pub fn standard(n: usize) -> Self {
        assert!(n >= 1);
        Ordinal { labels: (1..=n as Label).collect() }
    }

    /// The ordinal (start,…,start+n−1).
    pub fn range(start: Label, n: usize) -> Self {
        assert!(n >= 1);
        Ordinal { labels: (start..start + n as Label).collect() }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> Label {
        self.labels[0]
    }

    pub fn max(&self) -> Label {
        *self.labels.last().unwrap()
    }

    pub fn position(&self, l: Label) -> Option<usize> {
        self.labels.iter().position(|&x| x == l)
    }

    pub fn contains(&self, l: Label) -> bool {
        self.position(l).is_some()
    }

    pub fn pred(&self, l: Label) -> Option<Label> {
        let p = self.position(l)?;
        (p > 0).then(|| self.labels[p - 1])
    }

    pub fn succ(&self, l: Label) -> Option<Label> {
        let p = self.position(l)?;
        self.labels.get(p + 1).copied()
    }

    pub fn is_disjoint(&self, other: &Ordinal) -> bool {
        self.labels.iter().all(|l| !other.contains(*l))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn gap_set(i: &Ordinal) -> Vec<GapPair> {
    i.labels.windows(2).map(|w| GapPair { lo: w[0], hi: w[1] }).collect()
}

fn check_insert(outer: &Ordinal, at: Label, inner: &Ordinal) -> Result<usize> {
    let Some(pos) = outer.position(at) else {
        return invalid(format!("label {at} is not in {outer}"));
    };
    if !outer.is_disjoint(inner) {
        return invalid("ordinals share a label");
    }
    Ok(pos)
}

/// I ⊔_i J: the labels of J spliced in place of i.
pub fn ordinal_insert(outer: &Ordinal, at: Label, inner: &Ordinal) -> Result<Ordinal> {
    let pos = check_insert(outer, at, inner)?;
    let mut labels = outer.labels[..pos].to_vec();
    labels.extend_from_slice(&inner.labels);
    labels.extend_from_slice(&outer.labels[pos + 1..]);
    Ok(Ordinal { labels })
}

/// Bijection Gap(I) ⊔ Gap(J) → Gap(I ⊔_i J).
pub fn gap_bijection(outer: &Ordinal, at: Label, inner: &Ordinal) -> Result<BTreeMap<(Side, GapPair), GapPair>> {
    check_insert(outer, at, inner)?;
    let mut map = BTreeMap::new();
    for g in gap_set(outer) {
        let img = if g.hi == at {
            GapPair { lo: g.lo, hi: inner.min() }
        } else if g.lo == at {
            GapPair { lo: inner.max(), hi: g.hi }
        } else {
            g
        };
        map.insert((Side::Outer, g), img);
    }
    for g in gap_set(inner) {
        map.insert((Side::Inner, g), g);
    }
    Ok(map)
}

/// Positional form of the gap bijection: gap t of I (t = 0..|I|−2) and gap u of
/// J go to these gap positions of I ⊔_i J, where i sits at position `pos`.
pub(crate) fn outer_gap_position(t: usize, pos: usize, inner_len: usize) -> usize {
    if t < pos {
        t
    } else {
        t + inner_len - 1
    }
}

pub(crate) fn inner_gap_position(u: usize, pos: usize) -> usize {
    pos + u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps() {
        assert_eq!(gap_set(&Ordinal::standard(3)), vec![GapPair { lo: 1, hi: 2 }, GapPair { lo: 2, hi: 3 }]);
        assert!(gap_set(&Ordinal::new(vec![7]).unwrap()).is_empty());
        assert_eq!(gap_set(&Ordinal::standard(9)).len(), 8);
    }

    #[test]
    fn insert_examples() {
        let i = Ordinal::standard(3);
        let j = Ordinal::new(vec![10, 11]).unwrap();
        assert_eq!(ordinal_insert(&i, 2, &j).unwrap().labels(), &[1, 10, 11, 3]);
        let one = Ordinal::new(vec![1]).unwrap();
        let xyz = Ordinal::new(vec![5, 6, 7]).unwrap();
        assert_eq!(ordinal_insert(&one, 1, &xyz).unwrap().labels(), &[5, 6, 7]);
        let six = Ordinal::standard(6);
        let four = Ordinal::range(7, 4);
        assert_eq!(ordinal_insert(&six, 3, &four).unwrap().len(), 9);
        assert!(ordinal_insert(&i, 5, &j).is_err());
        assert!(ordinal_insert(&i, 2, &Ordinal::new(vec![3, 4]).unwrap()).is_err());
    }

    #[test]
    fn bijection_boundary_rule() {
        let i = Ordinal::standard(3);
        let j = Ordinal::new(vec![10, 11]).unwrap();
        let b = gap_bijection(&i, 2, &j).unwrap();
        assert_eq!(b[&(Side::Outer, GapPair { lo: 1, hi: 2 })], GapPair { lo: 1, hi: 10 });
        assert_eq!(b[&(Side::Outer, GapPair { lo: 2, hi: 3 })], GapPair { lo: 11, hi: 3 });
        assert_eq!(b[&(Side::Inner, GapPair { lo: 10, hi: 11 })], GapPair { lo: 10, hi: 11 });
        let b = gap_bijection(&i, 1, &j).unwrap();
        assert_eq!(b[&(Side::Outer, GapPair { lo: 1, hi: 2 })], GapPair { lo: 11, hi: 2 });
    }

    #[test]
    fn bijection_exhaustive() {
        for p in 1..=6usize {
            for m in 1..=6usize {
                let outer = Ordinal::standard(p);
                let inner = Ordinal::range(100, m);
                for &at in outer.labels() {
                    let k = ordinal_insert(&outer, at, &inner).unwrap();
                    let b = gap_bijection(&outer, at, &inner).unwrap();
                    let target = gap_set(&k);
                    assert_eq!(b.len(), target.len());
                    let mut imgs: Vec<GapPair> = b.values().copied().collect();
                    imgs.sort_by_key(|g| k.position(g.lo));
                    assert_eq!(imgs, target);
                    let pos = outer.position(at).unwrap();
                    for (t, g) in gap_set(&outer).iter().enumerate() {
                        assert_eq!(target[outer_gap_position(t, pos, m)], b[&(Side::Outer, *g)]);
                    }
                    for (u, g) in gap_set(&inner).iter().enumerate() {
                        assert_eq!(target[inner_gap_position(u, pos)], b[&(Side::Inner, *g)]);
                    }
                }
            }
        }
    }
}
