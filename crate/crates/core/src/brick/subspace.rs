use crate::linalg::{Matrix, Q};
use num_traits::{One, Zero};

/// A subspace of Q^ambient stored as its reduced row echelon basis, so equal
/// subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Self {
        if vectors.is_empty() {
            return Subspace { ambient, rows: Vec::new() };
        }
        let (r, piv) = Matrix::from_rows(vectors, ambient).rref();
        Subspace { ambient, rows: (0..piv.len()).map(|i| r.row(i).to_vec()).collect() }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    /// Span of the coordinate vectors with index in `lo..hi`.
    pub fn coordinate(ambient: usize, lo: usize, hi: usize) -> Self {
        let rows = (lo..hi).map(|k| unit(ambient, k)).collect();
        Subspace { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, v)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn contains_vector(&self, v: &[Q]) -> bool {
        self.contains(&Subspace::span(self.ambient, vec![v.to_vec()]))
    }

    /// Image under the coordinate injection k ↦ map[k] into Q^ambient.
    pub fn embed(&self, ambient: usize, map: &[usize]) -> Subspace {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![Q::zero(); ambient];
                for (k, x) in r.iter().enumerate() {
                    v[map[k]] = x.clone();
                }
                v
            })
            .collect();
        Subspace::span(ambient, rows)
    }

    /// Image under the projection onto the listed coordinates.
    pub fn project(&self, coords: &[usize]) -> Subspace {
        let rows = self.rows.iter().map(|r| coords.iter().map(|&k| r[k].clone()).collect()).collect();
        Subspace::span(coords.len(), rows)
    }

    /// Whether every basis vector is supported in `lo..hi`.
    pub fn within(&self, lo: usize, hi: usize) -> bool {
        self.rows.iter().all(|r| r.iter().enumerate().all(|(k, x)| x.is_zero() || (lo..hi).contains(&k)))
    }

    /// Whether the subspace is spanned by coordinate vectors.
    pub fn is_coordinate(&self) -> bool {
        self.rows.iter().all(|r| r.iter().filter(|x| !x.is_zero()).count() == 1)
    }

    /// Coordinates not in the subspace, for a coordinate subspace.
    pub fn missing_coordinates(&self, lo: usize, hi: usize) -> Vec<usize> {
        (lo..hi).filter(|&k| !self.contains_vector(&unit(self.ambient, k))).collect()
    }
}

pub(crate) fn unit(n: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[k] = Q::one();
    v
}
