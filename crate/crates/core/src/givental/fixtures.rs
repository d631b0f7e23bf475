use super::action::OpFamily;
use super::multilinear::{Algebra, GradedSpace, MultilinearOp};
use super::tensor::TensorAlgebraTrunc;
use crate::brick::random_nonzero;
use crate::error::{invalid, Error, Result};
use crate::linalg::Q;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `(inputs, output, coefficient)` with the coefficient written as a rational.
pub type SparseTriple = (Vec<usize>, usize, String);

/// JSON schema of an algebra fixture: dimensions per degree, the product as
/// sparse triples and optional higher operations ν_k keyed by arity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFixture {
    pub name: String,
    pub dims: BTreeMap<i64, usize>,
    pub product: Vec<SparseTriple>,
    #[serde(default)]
    pub higher: BTreeMap<usize, Vec<SparseTriple>>,
}

fn parse_q(s: &str) -> Result<Q> {
    s.trim().parse::<Q>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad rational `{s}`") })
}

fn build(space: &GradedSpace, arity: usize, degree: i64, triples: &[SparseTriple]) -> Result<MultilinearOp> {
    let parsed = triples.iter().map(|(k, o, c)| Ok((k.clone(), *o, parse_q(c)?))).collect::<Result<Vec<_>>>()?;
    MultilinearOp::from_triples(space, arity, degree, parsed)
}

impl AlgebraFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixtures serialize")
    }

    pub fn space(&self) -> GradedSpace {
        GradedSpace::from_dims(&self.dims)
    }

    pub fn algebra(&self) -> Result<Algebra> {
        let space = self.space();
        let m = build(&space, 2, 0, &self.product)?;
        Algebra::new(space, m)
    }

    /// ν₂ = product and ν_k from the higher operations, of degree 2k−4.
    pub fn hypercom_family(&self) -> Result<OpFamily> {
        let space = self.space();
        let mut fam = OpFamily::from([(2, build(&space, 2, 0, &self.product)?)]);
        for (&k, t) in &self.higher {
            if k < 3 {
                return invalid("higher operations start in arity 3");
            }
            fam.insert(k, build(&space, k, 2 * k as i64 - 4, t)?);
        }
        Ok(fam)
    }

    pub fn from_algebra(name: &str, alg: &Algebra) -> Self {
        let product = alg.product.triples().into_iter().map(|(k, o, c)| (k, o, c.to_string())).collect();
        AlgebraFixture { name: name.into(), dims: alg.space.dims(), product, higher: BTreeMap::new() }
    }
}

const BUILTIN: [(&str, &str); 5] = [
    ("nilpotent2", include_str!("../../fixtures/nilpotent2.json")),
    ("upper_triangular", include_str!("../../fixtures/upper_triangular.json")),
    ("odd_square_zero", include_str!("../../fixtures/odd_square_zero.json")),
    ("unital_dual", include_str!("../../fixtures/unital_dual.json")),
    ("hypercom_nu3", include_str!("../../fixtures/hypercom_nu3.json")),
];

pub fn builtin_fixture_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|b| b.0).collect()
}

pub fn builtin_fixture(name: &str) -> Result<AlgebraFixture> {
    let (_, text) = BUILTIN.iter().find(|b| b.0 == name).ok_or_else(|| Error::UnknownName(name.into()))?;
    AlgebraFixture::from_json(text)
}

/// A random homogeneous unary operator of the given degree.
pub fn random_operator(space: &GradedSpace, degree: i64, density: f64, rng: &mut impl Rng) -> MultilinearOp {
    let mut op = MultilinearOp::zero(1, degree);
    for i in 0..space.dim() {
        for o in 0..space.dim() {
            if space.degree(i) + degree == space.degree(o) && rng.gen_bool(density) {
                op.add_entry(vec![i], o, random_nonzero(rng));
            }
        }
    }
    op
}

/// A random degree-0 k-symbol on T̄(V) whose outputs have lengths in `out_lengths`.
pub fn random_symbol(t: &TensorAlgebraTrunc, k: usize, out_lengths: std::ops::RangeInclusive<usize>, density: f64, rng: &mut impl Rng) -> MultilinearOp {
    let a = t.algebra();
    let mut op = MultilinearOp::zero(1, 0);
    for i in 0..a.dim() {
        if t.word(i).len() != k {
            continue;
        }
        for o in 0..a.dim() {
            if out_lengths.contains(&t.word(o).len()) && a.space.degree(i) == a.space.degree(o) && rng.gen_bool(density) {
                op.add_entry(vec![i], o, random_nonzero(rng));
            }
        }
    }
    op
}

/// V = span(x, y) of degrees −1, 0 with μ₂(x,x) = x, μ₂(x,y) = y and
/// μ₃(x,x,x) = y: an A∞ structure in bar form whose Δ₁ = ρ(μ₂) and
/// Δ₂ = ρ(μ₃) have degrees 1 and 3.
pub fn ainfty_bar_fixture(cap: usize) -> Result<(TensorAlgebraTrunc, Vec<MultilinearOp>)> {
    let t = TensorAlgebraTrunc::new(vec![-1, 0], cap)?;
    let v = GradedSpace::with_degrees(vec![-1, 0]);
    let one = Q::from_integer(1.into());
    let mu2 = MultilinearOp::from_triples(&v, 2, 1, [(vec![0, 0], 0, one.clone()), (vec![0, 1], 1, one.clone())])?;
    let mu3 = MultilinearOp::from_triples(&v, 3, 3, [(vec![0, 0, 0], 1, one)])?;
    let d1 = t.rho(&t.symbol_from_multilinear(&mu2)?);
    let d2 = t.rho(&t.symbol_from_multilinear(&mu3)?);
    Ok((t, vec![MultilinearOp::zero(1, -1), d1, d2]))
}
