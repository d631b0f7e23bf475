//! Planar rooted trees whose vertices have at least two inputs.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn corolla(n: usize) -> Self {
        if n == 1 {
            PlanarTree::Leaf
        } else {
            PlanarTree::Node(vec![PlanarTree::Leaf; n])
        }
    }

    pub fn left_comb(n: usize) -> Self {
        let mut t = PlanarTree::Leaf;
        for _ in 1..n {
            t = PlanarTree::Node(vec![t, PlanarTree::Leaf]);
        }
        t
    }

    pub fn right_comb(n: usize) -> Self {
        let mut t = PlanarTree::Leaf;
        for _ in 1..n {
            t = PlanarTree::Node(vec![PlanarTree::Leaf, t]);
        }
        t
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(ch) => ch.iter().map(|c| c.leaves()).sum(),
        }
    }

    pub fn vertices(&self) -> usize {
        match self {
            PlanarTree::Leaf => 0,
            PlanarTree::Node(ch) => 1 + ch.iter().map(|c| c.vertices()).sum::<usize>(),
        }
    }

    /// Number of bounded edges.
    pub fn internal_edges(&self) -> usize {
        self.vertices().saturating_sub(1)
    }

    pub fn is_binary(&self) -> bool {
        match self {
            PlanarTree::Leaf => true,
            PlanarTree::Node(ch) => ch.len() == 2 && ch.iter().all(|c| c.is_binary()),
        }
    }

    pub fn is_valid(&self) -> bool {
        match self {
            PlanarTree::Leaf => true,
            PlanarTree::Node(ch) => ch.len() >= 2 && ch.iter().all(|c| c.is_valid()),
        }
    }

    /// Preorder child counts; leaves emit 0.
    pub fn serialize(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.serialize_into(&mut out);
        out
    }

    fn serialize_into(&self, out: &mut Vec<usize>) {
        match self {
            PlanarTree::Leaf => out.push(0),
            PlanarTree::Node(ch) => {
                out.push(ch.len());
                for c in ch {
                    c.serialize_into(out);
                }
            }
        }
    }

    pub fn deserialize(code: &[usize]) -> Result<Self> {
        fn go(code: &[usize], at: &mut usize) -> Result<PlanarTree> {
            let Some(&k) = code.get(*at) else {
                return Err(Error::Invalid("truncated tree code".into()));
            };
            *at += 1;
            if k == 0 {
                return Ok(PlanarTree::Leaf);
            }
            if k == 1 {
                return Err(Error::Invalid("unary vertex".into()));
            }
            let ch = (0..k).map(|_| go(code, at)).collect::<Result<Vec<_>>>()?;
            Ok(PlanarTree::Node(ch))
        }
        let mut at = 0;
        let t = go(code, &mut at)?;
        if at != code.len() {
            return Err(Error::Invalid("trailing tree code".into()));
        }
        Ok(t)
    }

    /// Leaf sets [l, r] (1-based) of every bounded edge, in preorder.
    pub fn edge_intervals(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if let PlanarTree::Node(ch) = self {
            let mut start = 1;
            for c in ch {
                c.collect_intervals(start, &mut out);
                start += c.leaves();
            }
        }
        out
    }

    fn collect_intervals(&self, start: usize, out: &mut Vec<(usize, usize)>) {
        if let PlanarTree::Node(ch) = self {
            out.push((start, start + self.leaves() - 1));
            let mut s = start;
            for c in ch {
                c.collect_intervals(s, out);
                s += c.leaves();
            }
        }
    }

    /// Substitutes `other` at leaf `i` (1-based).
    pub fn graft(&self, i: usize, other: &PlanarTree) -> Result<PlanarTree> {
        let n = self.leaves();
        if i == 0 || i > n {
            return Err(Error::OutOfRange { index: i, len: n });
        }
        fn go(t: &PlanarTree, i: &mut usize, other: &PlanarTree) -> PlanarTree {
            match t {
                PlanarTree::Leaf => {
                    if *i == 0 {
                        return PlanarTree::Leaf;
                    }
                    *i -= 1;
                    if *i == 0 {
                        other.clone()
                    } else {
                        PlanarTree::Leaf
                    }
                }
                PlanarTree::Node(ch) => {
                    if *i == 0 {
                        return t.clone();
                    }
                    PlanarTree::Node(ch.iter().map(|c| go(c, i, other)).collect())
                }
            }
        }
        let mut k = i;
        Ok(go(self, &mut k, other))
    }

    /// Every tree obtained by contracting exactly one bounded edge.
    pub fn contractions(&self) -> Vec<PlanarTree> {
        let mut out = Vec::new();
        if let PlanarTree::Node(ch) = self {
            for (idx, c) in ch.iter().enumerate() {
                if let PlanarTree::Node(gch) = c {
                    let mut merged = ch[..idx].to_vec();
                    merged.extend(gch.iter().cloned());
                    merged.extend(ch[idx + 1..].iter().cloned());
                    out.push(PlanarTree::Node(merged));
                }
                for sub in c.contractions() {
                    let mut v = ch.clone();
                    v[idx] = sub;
                    out.push(PlanarTree::Node(v));
                }
            }
        }
        out.sort_by_key(|t| t.serialize());
        out.dedup();
        out
    }

    /// True when `self` is obtained from `finer` by contracting edges.
    pub fn is_contraction_of(&self, finer: &PlanarTree) -> bool {
        if self.leaves() != finer.leaves() {
            return false;
        }
        let mine = self.edge_intervals();
        let theirs = finer.edge_intervals();
        mine.iter().all(|e| theirs.contains(e))
    }

    /// Canonical text with leaf labels 1..n.
    pub fn to_text(&self) -> String {
        fn go(t: &PlanarTree, next: &mut usize, out: &mut String) {
            match t {
                PlanarTree::Leaf => {
                    out.push_str(&next.to_string());
                    *next += 1;
                }
                PlanarTree::Node(ch) => {
                    out.push('(');
                    for (k, c) in ch.iter().enumerate() {
                        if k > 0 {
                            out.push(',');
                        }
                        go(c, next, out);
                    }
                    out.push(')');
                }
            }
        }
        let mut s = String::new();
        go(self, &mut 1, &mut s);
        s
    }

    pub fn parse(text: &str) -> Result<PlanarTree> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut next = 1usize;
        let t = parse_tree(bytes, &mut pos, &mut next)?;
        if pos != bytes.len() {
            return Err(Error::Parse { pos, msg: "trailing input".into() });
        }
        Ok(t)
    }
}

fn parse_tree(b: &[u8], pos: &mut usize, next: &mut usize) -> Result<PlanarTree> {
    match b.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            let mut ch = vec![parse_tree(b, pos, next)?];
            while b.get(*pos) == Some(&b',') {
                *pos += 1;
                ch.push(parse_tree(b, pos, next)?);
            }
            if b.get(*pos) != Some(&b')') {
                return Err(Error::Parse { pos: *pos, msg: "expected `)`".into() });
            }
            *pos += 1;
            if ch.len() < 2 {
                return Err(Error::Parse { pos: *pos, msg: "vertex with fewer than two inputs".into() });
            }
            Ok(PlanarTree::Node(ch))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while b.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let label: usize = std::str::from_utf8(&b[start..*pos]).unwrap().parse().unwrap();
            if label != *next {
                return Err(Error::Parse { pos: start, msg: format!("expected leaf label {next}") });
            }
            *next += 1;
            Ok(PlanarTree::Leaf)
        }
        _ => Err(Error::Parse { pos: *pos, msg: "expected `(` or a leaf label".into() }),
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Ordered tuples of positive integers summing to `n` with `k` parts.
pub(crate) fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if n < k {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 1..=n - k + 1 {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All planar trees with `n` leaves, ordered by serialization.
pub fn enumerate_trees(n: usize, binary_only: bool) -> Vec<PlanarTree> {
    assert!(n >= 1);
    let mut memo: Vec<Vec<PlanarTree>> = vec![vec![], vec![PlanarTree::Leaf]];
    for m in 2..=n {
        let mut all = Vec::new();
        let kmax = if binary_only { 2 } else { m };
        for k in 2..=kmax {
            for comp in compositions(m, k) {
                let mut partial: Vec<Vec<PlanarTree>> = vec![vec![]];
                for &part in &comp {
                    let mut nxt = Vec::new();
                    for p in &partial {
                        for t in &memo[part] {
                            let mut q = p.clone();
                            q.push(t.clone());
                            nxt.push(q);
                        }
                    }
                    partial = nxt;
                }
                all.extend(partial.into_iter().map(PlanarTree::Node));
            }
        }
        all.sort_by_key(|t| t.serialize());
        memo.push(all);
    }
    memo.swap_remove(n)
}

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

/// Narayana number N(n, k) = (1/n)·C(n,k)·C(n,k−1).
pub fn narayana(n: u64, k: u64) -> u128 {
    if n == 0 || k == 0 || k > n {
        return 0;
    }
    binomial(n, k) * binomial(n, k - 1) / n as u128
}

/// All compositions of n into positive parts.
pub(crate) fn compositions_all(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|k| compositions(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_trees(3, true).len(), 2);
        assert_eq!(enumerate_trees(4, false).len(), 11);
        assert_eq!(enumerate_trees(5, true).len(), 14);
        for n in 1..=8 {
            assert_eq!(enumerate_trees(n, true).len() as u128, catalan(n - 1));
        }
    }

    #[test]
    fn face_counts_of_pentagon() {
        let trees = enumerate_trees(4, false);
        let mut f = [0usize; 3];
        for t in &trees {
            f[4 - 2 - t.internal_edges()] += 1;
        }
        assert_eq!(f, [5, 5, 1]);
    }

    #[test]
    fn graft_and_contract() {
        let c2 = PlanarTree::corolla(2);
        assert_eq!(c2.graft(1, &c2).unwrap(), PlanarTree::left_comb(3));
        assert_eq!(PlanarTree::left_comb(3).contractions(), vec![PlanarTree::corolla(3)]);
        assert!(c2.graft(3, &c2).is_err());
    }

    #[test]
    fn closure_poset_on_four_leaves() {
        let trees = enumerate_trees(4, false);
        let maximal: Vec<_> = trees
            .iter()
            .filter(|t| !trees.iter().any(|s| s != *t && s.is_contraction_of(t)))
            .collect();
        assert_eq!(maximal.len(), 1);
        let minimal: Vec<_> = trees
            .iter()
            .filter(|t| !trees.iter().any(|s| s != *t && t.is_contraction_of(s)))
            .collect();
        assert_eq!(minimal.len(), 5);
        for t in &trees {
            for c in t.contractions() {
                assert!(c.is_contraction_of(t));
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        for t in enumerate_trees(5, false) {
            assert_eq!(PlanarTree::parse(&t.to_text()).unwrap(), t);
            assert_eq!(PlanarTree::deserialize(&t.serialize()).unwrap(), t);
        }
        assert_eq!(PlanarTree::left_comb(3).to_text(), "((1,2),3)");
        assert!(PlanarTree::parse("((1,3),2)").is_err());
    }

    #[test]
    fn graft_axioms() {
        let trees: Vec<PlanarTree> = (1..=3).flat_map(|n| enumerate_trees(n, false)).collect();
        for t1 in &trees {
            let n1 = t1.leaves();
            for t2 in &trees {
                let n2 = t2.leaves();
                for t3 in &trees {
                    let n3 = t3.leaves();
                    if n1 + n2 + n3 > 8 {
                        continue;
                    }
                    for j in 1..=n1 {
                        for i in 1..j {
                            let lhs = t1.graft(j, t2).unwrap().graft(i, t3).unwrap();
                            let rhs = t1.graft(i, t3).unwrap().graft(j + n3 - 1, t2).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                    for i in 1..=n1 {
                        for k in 1..=n2 {
                            let lhs = t1.graft(i, &t2.graft(k, t3).unwrap()).unwrap();
                            let rhs = t1.graft(i, t2).unwrap().graft(i + k - 1, t3).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn narayana_rows() {
        assert_eq!((1..=3).map(|k| narayana(3, k)).collect::<Vec<_>>(), vec![1, 3, 1]);
        assert_eq!((1..=6).map(|k| narayana(6, k)).sum::<u128>(), catalan(6));
    }
}
