use super::subspace::{unit, Subspace};
use crate::error::{invalid, Error, Result};
use crate::linalg::{q_to_string, Q};
use crate::ordinal::{inner_gap_position, ordinal_insert, outer_gap_position, Label, Ordinal};
use crate::tree::{enumerate_trees, PlanarTree};
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// A point of the brick manifold B(I): the subspaces V_{i,j} ⊆ G(I) for all
/// proper intervals, keyed by positions in I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceConfig {
    ordinal: Ordinal,
    spaces: BTreeMap<(usize, usize), Subspace>,
}

fn proper_intervals(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a..n).map(move |b| (a, b))).filter(move |&(a, b)| !(a == 0 && b + 1 == n))
}

#[derive(Clone, Copy)]
enum Place {
    Before(usize),
    Inside(usize),
    After(usize),
}

impl SubspaceConfig {
    /// Builds and validates a configuration from subspaces keyed by label pairs.
    pub fn new(ordinal: Ordinal, spaces: BTreeMap<(Label, Label), Subspace>) -> Result<Self> {
        let mut by_pos = BTreeMap::new();
        for ((i, j), v) in spaces {
            let (Some(a), Some(b)) = (ordinal.position(i), ordinal.position(j)) else {
                return invalid(format!("interval [{i},{j}] is not in {ordinal}"));
            };
            by_pos.insert((a, b), v);
        }
        let c = SubspaceConfig { ordinal, spaces: by_pos };
        c.validate()?;
        Ok(c)
    }

    /// The same point over another ordinal of the same size.
    pub fn relabel(&self, ordinal: Ordinal) -> Result<Self> {
        if ordinal.len() != self.len() {
            return invalid(format!("cannot relabel {} as {ordinal}", self.ordinal));
        }
        Ok(SubspaceConfig { ordinal, spaces: self.spaces.clone() })
    }

    pub fn ordinal(&self) -> &Ordinal {
        &self.ordinal
    }

    pub fn len(&self) -> usize {
        self.ordinal.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn gaps(&self) -> usize {
        self.len() - 1
    }

    /// V_{a,b} by positions; the whole interval gives G(I).
    pub fn space(&self, a: usize, b: usize) -> Subspace {
        if a == 0 && b + 1 == self.len() {
            return Subspace::coordinate(self.gaps(), 0, self.gaps());
        }
        self.spaces[&(a, b)].clone()
    }

    /// V_{i,j} by labels.
    pub fn space_by_labels(&self, i: Label, j: Label) -> Option<Subspace> {
        let (a, b) = (self.ordinal.position(i)?, self.ordinal.position(j)?);
        (a <= b).then(|| self.space(a, b))
    }

    pub fn spaces(&self) -> &BTreeMap<(usize, usize), Subspace> {
        &self.spaces
    }

    /// Checks all five defining conditions.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let g = self.gaps();
        let lab = |a: usize| self.ordinal.labels()[a];
        for (a, b) in proper_intervals(n) {
            let Some(v) = self.spaces.get(&(a, b)) else {
                return invalid(format!("V[{},{}] is missing", lab(a), lab(b)));
            };
            if v.ambient() != g || v.dim() != b - a + 1 {
                return invalid(format!("V[{},{}] has dimension {} in ambient {}", lab(a), lab(b), v.dim(), v.ambient()));
            }
            if a > 0 && !self.space(a - 1, b).contains(v) {
                return invalid(format!("V[{},{}] is not inside V[{},{}]", lab(a), lab(b), lab(a - 1), lab(b)));
            }
            if b + 1 < n && !self.space(a, b + 1).contains(v) {
                return invalid(format!("V[{},{}] is not inside V[{},{}]", lab(a), lab(b), lab(a), lab(b + 1)));
            }
            if a == 0 && *v != Subspace::coordinate(g, 0, b + 1) {
                return invalid(format!("V[{},{}] differs from G({},{})", lab(a), lab(b), lab(0), lab(b + 1)));
            }
            if b + 1 == n && *v != Subspace::coordinate(g, a - 1, g) {
                return invalid(format!("V[{},{}] differs from G({},{})", lab(a), lab(b), lab(a - 1), lab(n - 1)));
            }
        }
        if self.spaces.len() != proper_intervals(n).count() {
            return invalid("configuration has spaces for improper intervals");
        }
        Ok(())
    }

    /// The unique point of B(I) for |I| ≤ 2.
    pub fn point(ordinal: Ordinal) -> Result<Self> {
        if ordinal.len() > 2 {
            return invalid("B(I) is a point only for |I| <= 2");
        }
        let mut spaces = BTreeMap::new();
        if ordinal.len() == 2 {
            spaces.insert((0, 0), Subspace::coordinate(1, 0, 1));
            spaces.insert((1, 1), Subspace::coordinate(1, 0, 1));
        }
        Ok(SubspaceConfig { ordinal, spaces })
    }

    /// The point of the open stratum of B(n̲) with V_{j,j} = ⟨e_{j−1,j} + c_j e_{j,j+1}⟩
    /// for the interior positions j; `params` must be nonzero.
    pub fn open_stratum_point(n: usize, params: &[Q]) -> Result<Self> {
        if n >= 2 && params.len() != n - 2 {
            return invalid(format!("B({n}) needs {} parameters", n - 2));
        }
        if params.iter().any(|c| c.is_zero()) {
            return invalid("open stratum parameters must be nonzero");
        }
        let ord = Ordinal::standard(n);
        if n <= 2 {
            return Self::point(ord);
        }
        let g = n - 1;
        let line = |j: usize| -> Vec<Q> {
            if j == 0 {
                unit(g, 0)
            } else if j == n - 1 {
                unit(g, g - 1)
            } else {
                let mut v = unit(g, j - 1);
                v[j] = params[j - 1].clone();
                v
            }
        };
        let spaces = proper_intervals(n).map(|(a, b)| ((a, b), Subspace::span(g, (a..=b).map(line).collect()))).collect();
        Ok(SubspaceConfig { ordinal: ord, spaces })
    }

    /// Operadic composition ∘_i with the label `at` of self replaced by `other`.
    pub fn compose(&self, at: Label, other: &SubspaceConfig) -> Result<SubspaceConfig> {
        let ordinal = ordinal_insert(&self.ordinal, at, &other.ordinal)?;
        let s = self.ordinal.position(at).expect("checked by ordinal_insert");
        Ok(SubspaceConfig { ordinal, spaces: compose_spaces(self, s, other) })
    }

    /// Composition by position, relabelling the result as 1..N.
    pub fn compose_at_position(&self, s: usize, other: &SubspaceConfig) -> Result<SubspaceConfig> {
        if s >= self.len() {
            return Err(Error::OutOfRange { index: s + 1, len: self.len() });
        }
        let ordinal = Ordinal::standard(self.len() + other.len() - 1);
        Ok(SubspaceConfig { ordinal, spaces: compose_spaces(self, s, other) })
    }

    /// Inverse of composition at positions l..=r: the unique pair whose
    /// composition is self, if self lies in the closure of that boundary divisor.
    pub fn decompose(&self, l: usize, r: usize) -> Result<(SubspaceConfig, SubspaceConfig)> {
        let n = self.len();
        if !(l < r && r < n) || (l == 0 && r + 1 == n) {
            return invalid(format!("[{l},{r}] is not a proper interval with at least two elements"));
        }
        let m = r - l + 1;
        let p = n - m + 1;
        let outer: Vec<usize> = (0..p.saturating_sub(1)).map(|t| outer_gap_position(t, l, m)).collect();
        let inner: Vec<usize> = (0..m - 1).map(|u| inner_gap_position(u, l)).collect();
        let mut c2 = BTreeMap::new();
        for (u, w) in proper_intervals(m) {
            c2.insert((u, w), self.space(l + u, l + w).project(&inner));
        }
        let lift = |x: usize, lo: bool| if x < l || (x == l && lo) { x } else { x + m - 1 };
        let mut c1 = BTreeMap::new();
        for (x, y) in proper_intervals(p) {
            c1.insert((x, y), self.space(lift(x, true), lift(y, false)).project(&outer));
        }
        let c1 = SubspaceConfig { ordinal: Ordinal::standard(p), spaces: c1 };
        let c2 = SubspaceConfig { ordinal: Ordinal::standard(m), spaces: c2 };
        let back = compose_spaces(&c1, l, &c2);
        if back != self.spaces {
            return invalid(format!("configuration is not in the closure of the divisor of [{},{}]", l + 1, r + 1));
        }
        Ok((c1, c2))
    }

    /// The tree T with self ∈ B(I, T), found by peeling off innermost vertices.
    pub fn stratum(&self) -> PlanarTree {
        let n = self.len();
        if n == 1 {
            return PlanarTree::Leaf;
        }
        let g = self.gaps();
        let mut last_right = 0;
        let mut found = (0, n - 1);
        for k in 1..n {
            let v = self.space(k, k);
            let left = v == Subspace::coordinate(g, k - 1, k);
            let right = k + 1 < n && v == Subspace::coordinate(g, k, k + 1);
            if left {
                found = (last_right, k);
                break;
            }
            if right {
                last_right = k;
            }
        }
        let (l, r) = found;
        if (l, r) == (0, n - 1) {
            return PlanarTree::corolla(n);
        }
        let (c1, _) = self.decompose(l, r).expect("peeled interval is a boundary divisor");
        c1.stratum().graft(l + 1, &PlanarTree::corolla(r - l + 1)).expect("leaf index in range")
    }

    /// A point of B(n̲, T): open-stratum points for the vertices composed along T.
    pub fn in_stratum(t: &PlanarTree, params: &mut dyn FnMut() -> Q) -> Result<Self> {
        if !t.is_valid() {
            return invalid("tree has a unary vertex");
        }
        match t {
            PlanarTree::Leaf => Self::point(Ordinal::standard(1)),
            PlanarTree::Node(ch) => {
                let k = ch.len();
                let cs: Vec<Q> = (0..k.saturating_sub(2)).map(|_| params()).collect();
                let mut c = Self::open_stratum_point(k, &cs)?;
                for (idx, sub) in ch.iter().enumerate().rev() {
                    if let PlanarTree::Node(_) = sub {
                        c = c.compose_at_position(idx, &Self::in_stratum(sub, params)?)?;
                    }
                }
                Ok(c)
            }
        }
    }

    /// The torus fixed point of a binary tree.
    pub fn fixed_point(t: &PlanarTree) -> Result<Self> {
        if !t.is_binary() {
            return invalid("fixed points correspond to binary trees");
        }
        Self::in_stratum(t, &mut || Q::one())
    }

    /// Labeled matrix blocks: a header line with the labels, then one block per
    /// interval.
    pub fn to_text(&self) -> String {
        let labels: Vec<String> = self.ordinal.labels().iter().map(|l| l.to_string()).collect();
        let mut out = format!("brick {}\n", labels.join(" "));
        for ((a, b), v) in &self.spaces {
            out.push_str(&format!("V {} {}\n", labels[*a], labels[*b]));
            for row in v.basis() {
                let r: Vec<String> = row.iter().map(q_to_string).collect();
                out.push_str(&format!("  {}\n", r.join(" ")));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Invalid("empty configuration".into()))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("brick") {
            return invalid("configuration must start with `brick`");
        }
        let labels = words.map(|w| w.parse::<Label>().map_err(|_| Error::Invalid(format!("bad label `{w}`")))).collect::<Result<Vec<_>>>()?;
        let ordinal = Ordinal::new(labels)?;
        let g = ordinal.len() - 1;
        let mut blocks: BTreeMap<(Label, Label), Vec<Vec<Q>>> = BTreeMap::new();
        let mut current = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("V ") {
                let ij: Vec<Label> = rest.split_whitespace().map(|w| w.parse().map_err(|_| Error::Invalid(format!("bad label `{w}`")))).collect::<Result<_>>()?;
                if ij.len() != 2 {
                    return invalid(format!("bad block header `{line}`"));
                }
                current = Some((ij[0], ij[1]));
                blocks.entry((ij[0], ij[1])).or_default();
            } else {
                let key = current.ok_or_else(|| Error::Invalid("row before any block header".into()))?;
                let row = line.split_whitespace().map(|w| w.parse::<Q>().map_err(|_| Error::Invalid(format!("bad entry `{w}`")))).collect::<Result<Vec<_>>>()?;
                if row.len() != g {
                    return invalid(format!("row `{line}` has {} entries, expected {g}", row.len()));
                }
                blocks.get_mut(&key).unwrap().push(row);
            }
        }
        let spaces = blocks.into_iter().map(|(k, rows)| (k, Subspace::span(g, rows))).collect();
        SubspaceConfig::new(ordinal, spaces)
    }
}

fn compose_spaces(c1: &SubspaceConfig, s: usize, c2: &SubspaceConfig) -> BTreeMap<(usize, usize), Subspace> {
    let p = c1.len();
    let m = c2.len();
    let n = p + m - 1;
    let g = n - 1;
    let outer: Vec<usize> = (0..p - 1).map(|t| outer_gap_position(t, s, m)).collect();
    let inner: Vec<usize> = (0..m - 1).map(|u| inner_gap_position(u, s)).collect();
    let fo = |x: usize, y: usize| c1.space(x, y).embed(g, &outer);
    let coord = |lo: usize, hi: usize| Subspace::coordinate(g, lo, hi);
    let gj = coord(s, s + m - 1);
    let place = |x: usize| {
        if x < s {
            Place::Before(x)
        } else if x < s + m {
            Place::Inside(x - s)
        } else {
            Place::After(x + 1 - m)
        }
    };
    let mut out = BTreeMap::new();
    for (a, b) in proper_intervals(n) {
        let v = match (place(a), place(b)) {
            (Place::Before(x), Place::Before(y)) | (Place::After(x), Place::After(y)) => fo(x, y),
            (Place::Inside(u), Place::Inside(w)) => {
                if (u, w) == (0, m - 1) {
                    fo(s, s).sum(&gj)
                } else {
                    c2.space(u, w).embed(g, &inner)
                }
            }
            (Place::Before(x), Place::Inside(w)) => {
                if w + 1 < m {
                    fo(x, s - 1).sum(&coord(s, s + w + 1))
                } else {
                    fo(x, s).sum(&gj)
                }
            }
            (Place::Inside(u), Place::After(y)) => {
                if u > 0 {
                    fo(s + 1, y).sum(&coord(a - 1, s + m - 1))
                } else {
                    fo(s, y).sum(&gj)
                }
            }
            (Place::Before(x), Place::After(y)) => fo(x, y).sum(&gj),
            _ => unreachable!("intervals are ordered"),
        };
        out.insert((a, b), v);
    }
    out
}

/// Nonzero rational with small numerator and denominator.
pub fn random_nonzero(rng: &mut impl Rng) -> Q {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            return Q::new(num.into(), rng.gen_range(1i64..=5).into());
        }
    }
}

/// A random point together with its stratum: the tree is uniform over all
/// planar trees with n leaves.
pub fn random_config(n: usize, rng: &mut impl Rng) -> Result<(PlanarTree, SubspaceConfig)> {
    if n == 0 {
        return invalid("ordinals are nonempty");
    }
    let trees = enumerate_trees(n, false);
    let t = trees[rng.gen_range(0..trees.len())].clone();
    let c = SubspaceConfig::in_stratum(&t, &mut || random_nonzero(rng))?;
    Ok((t, c))
}

/// n − 2 − (number of internal edges).
pub fn stratum_dimension(t: &PlanarTree) -> usize {
    t.leaves().saturating_sub(2 + t.internal_edges())
}
