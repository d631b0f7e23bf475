use crate::error::{invalid, Result};
use crate::linalg::{Q, SparseVec};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Finite-dimensional graded vector space with a homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    degrees: Vec<i64>,
    labels: Vec<String>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<i64>, labels: Vec<String>) -> Result<Self> {
        if degrees.len() != labels.len() {
            return invalid("one label per basis vector is required");
        }
        Ok(GradedSpace { degrees, labels })
    }

    /// Basis `e0, e1, …` with the given degrees.
    pub fn with_degrees(degrees: Vec<i64>) -> Self {
        let labels = (0..degrees.len()).map(|i| format!("e{i}")).collect();
        GradedSpace { degrees, labels }
    }

    /// Per-degree dimensions, basis ordered by degree then position.
    pub fn from_dims(dims: &BTreeMap<i64, usize>) -> Self {
        GradedSpace::with_degrees(dims.iter().flat_map(|(&d, &k)| std::iter::repeat_n(d, k)).collect())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    fn total_degree(&self, key: &[usize]) -> i64 {
        key.iter().map(|&i| self.degrees[i]).sum()
    }
}

pub(crate) fn koszul(a: i64, b: i64) -> Q {
    if (a * b).rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// A homogeneous map A^⊗n → A stored as sparse structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearOp {
    arity: usize,
    degree: i64,
    entries: BTreeMap<Vec<usize>, SparseVec>,
}

impl MultilinearOp {
    pub fn zero(arity: usize, degree: i64) -> Self {
        MultilinearOp { arity, degree, entries: BTreeMap::new() }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let entries = (0..space.dim()).map(|i| (vec![i], SparseVec::from([(i, Q::one())]))).collect();
        MultilinearOp { arity: 1, degree: 0, entries }
    }

    /// Builds an operator from `(inputs, output, coefficient)` triples and
    /// rejects entries that break degree homogeneity.
    pub fn from_triples(space: &GradedSpace, arity: usize, degree: i64, triples: impl IntoIterator<Item = (Vec<usize>, usize, Q)>) -> Result<Self> {
        let mut op = MultilinearOp::zero(arity, degree);
        for (key, out, c) in triples {
            if key.len() != arity || key.iter().chain([&out]).any(|&i| i >= space.dim()) {
                return invalid(format!("entry {key:?} -> {out} does not fit arity {arity} on a space of dimension {}", space.dim()));
            }
            if c.is_zero() {
                continue;
            }
            if space.total_degree(&key) + degree != space.degree(out) {
                return invalid(format!("entry {key:?} -> {out} is not of degree {degree}"));
            }
            op.add_entry(key, out, c);
        }
        Ok(op)
    }

    pub(crate) fn add_entry(&mut self, key: Vec<usize>, out: usize, c: Q) {
        let slot = self.entries.entry(key.clone()).or_default();
        let v = slot.entry(out).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            slot.remove(&out);
            if slot.is_empty() {
                self.entries.remove(&key);
            }
        }
    }

    fn add_vec(&mut self, key: Vec<usize>, v: &SparseVec, c: &Q) {
        for (&o, x) in v {
            self.add_entry(key.clone(), o, x * c);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, SparseVec> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.values().map(|v| v.len()).sum()
    }

    /// Value on a tuple of basis vectors.
    pub fn eval(&self, key: &[usize]) -> SparseVec {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    /// Value of a unary operator on a vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in v {
            if let Some(w) = self.entries.get(&vec![i]) {
                crate::linalg::sparse_add_scaled(&mut out, w, c);
            }
        }
        out
    }

    pub fn is_homogeneous(&self, space: &GradedSpace) -> bool {
        self.entries.iter().all(|(k, v)| v.keys().all(|&o| space.total_degree(k) + self.degree == space.degree(o)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = MultilinearOp::zero(self.arity, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.entries {
            out.add_vec(k.clone(), v, c);
        }
        out
    }

    /// `self + c·other`; the degree of a zero summand is ignored.
    pub fn add_scaled(&self, other: &Self, c: &Q) -> Self {
        assert_eq!(self.arity, other.arity, "arity mismatch in sum");
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut out = MultilinearOp { degree, ..self.clone() };
        for (k, v) in &other.entries {
            out.add_vec(k.clone(), v, c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-Q::one())
    }

    /// Partial composition f ∘_i g (1-based), with the Koszul sign
    /// (−1)^{|g|(|a₁|+⋯+|a_{i−1}|)}.
    pub fn compose(&self, i: usize, g: &MultilinearOp, space: &GradedSpace) -> Self {
        assert!(i >= 1 && i <= self.arity, "slot {i} outside 1..={}", self.arity);
        let mut by_output: HashMap<usize, Vec<(&Vec<usize>, &Q)>> = HashMap::new();
        for (k, v) in &g.entries {
            for (o, c) in v {
                by_output.entry(*o).or_default().push((k, c));
            }
        }
        let mut out = MultilinearOp::zero(self.arity + g.arity - 1, self.degree + g.degree);
        for (kf, vf) in &self.entries {
            let Some(list) = by_output.get(&kf[i - 1]) else { continue };
            let sign = koszul(g.degree, space.total_degree(&kf[..i - 1]));
            for (kg, cg) in list {
                let mut key = kf[..i - 1].to_vec();
                key.extend_from_slice(kg);
                key.extend_from_slice(&kf[i..]);
                out.add_vec(key, vf, &(*cg * &sign));
            }
        }
        out
    }

    /// Keeps the entries whose inputs satisfy the predicate.
    pub fn restrict(&self, keep: impl Fn(&[usize]) -> bool) -> Self {
        let entries = self.entries.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
        MultilinearOp { entries, ..self.clone() }
    }

    /// Sparse triples `(inputs, output, coefficient)`.
    pub fn triples(&self) -> Vec<(Vec<usize>, usize, Q)> {
        self.entries.iter().flat_map(|(k, v)| v.iter().map(move |(o, c)| (k.clone(), *o, c.clone()))).collect()
    }
}

/// Graded commutator D₁D₂ − (−1)^{|D₁||D₂|}D₂D₁ of unary operators.
pub fn commutator(d1: &MultilinearOp, d2: &MultilinearOp, space: &GradedSpace) -> MultilinearOp {
    let a = d1.compose(1, d2, space);
    let b = d2.compose(1, d1, space);
    a.add_scaled(&b, &-koszul(d1.degree, d2.degree))
}

/// Word-length data of a truncated tensor algebra: basis lengths and cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthFilter {
    pub lengths: Vec<usize>,
    pub cap: usize,
}

/// A graded associative (or candidate) algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub space: GradedSpace,
    pub product: MultilinearOp,
    pub filter: Option<LengthFilter>,
}

impl Algebra {
    pub fn new(space: GradedSpace, product: MultilinearOp) -> Result<Self> {
        if product.arity() != 2 || product.degree() != 0 || !product.is_homogeneous(&space) {
            return invalid("the product must be a binary operation of degree 0");
        }
        Ok(Algebra { space, product, filter: None })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Whether identities are asserted on this input tuple: inputs of total
    /// word length at most the truncation for tensor algebras, all tuples
    /// otherwise.
    pub fn admissible(&self, key: &[usize]) -> bool {
        match &self.filter {
            None => true,
            Some(f) => key.iter().map(|&i| f.lengths[i]).sum::<usize>() <= f.cap,
        }
    }

    /// The operator restricted to admissible inputs.
    pub fn admissible_part(&self, op: &MultilinearOp) -> MultilinearOp {
        op.restrict(|k| self.admissible(k))
    }

    pub fn vanishes(&self, op: &MultilinearOp) -> bool {
        op.entries().keys().all(|k| !self.admissible(k))
    }

    /// First admissible input with a nonzero value.
    pub fn witness(&self, op: &MultilinearOp) -> Option<Vec<usize>> {
        op.entries().keys().find(|k| self.admissible(k)).cloned()
    }

    pub fn compose(&self, f: &MultilinearOp, i: usize, g: &MultilinearOp) -> MultilinearOp {
        f.compose(i, g, &self.space)
    }

    pub fn associator(&self) -> MultilinearOp {
        let m = &self.product;
        self.compose(m, 1, m).sub(&self.compose(m, 2, m))
    }

    pub fn is_associative(&self) -> bool {
        self.vanishes(&self.associator())
    }

    pub fn require_associative(&self) -> Result<()> {
        match self.witness(&self.associator()) {
            None => Ok(()),
            Some(w) => invalid(format!("the product is not associative on inputs {w:?}")),
        }
    }

    /// The n-fold product as an n-ary operation (the identity for n = 1).
    pub fn product_power(&self, n: usize) -> MultilinearOp {
        let mut p = MultilinearOp::identity(&self.space);
        for _ in 1..n {
            p = self.compose(&self.product, 2, &p);
        }
        p
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if let Some(v) = self.product.entries().get(&vec![i, j]) {
                    crate::linalg::sparse_add_scaled(&mut out, v, &(a * b));
                }
            }
        }
        out
    }
}

pub(crate) fn unit_vec(i: usize) -> SparseVec {
    SparseVec::from([(i, Q::one())])
}
