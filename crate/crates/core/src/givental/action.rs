use super::borjeson::borjeson_unchecked;
use super::multilinear::{Algebra, GradedSpace, MultilinearOp};
use crate::error::{invalid, Error, Result};
use crate::intersection::{correlator_trr, CorrelatorIndex};
use crate::linalg::{q, qr, Q};
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;

/// Operations indexed by arity.
pub type OpFamily = BTreeMap<usize, MultilinearOp>;

const ARITY_GUARD: usize = 9;

fn guard(cap: usize) -> Result<()> {
    if cap > ARITY_GUARD {
        return Err(Error::ArityCap { arity: cap, cap: ARITY_GUARD });
    }
    Ok(())
}

fn comp(f: Option<&MultilinearOp>, i: usize, g: Option<&MultilinearOp>, space: &GradedSpace) -> Option<MultilinearOp> {
    Some(f?.compose(i, g?, space))
}

fn accumulate(acc: &mut Option<MultilinearOp>, x: Option<MultilinearOp>, c: &Q) {
    if let Some(x) = x {
        *acc = Some(match acc.take() {
            None => x.scale(c),
            Some(a) => a.add_scaled(&x, c),
        });
    }
}

/// The ncWDVV relations Σ_{j=2}^{i} ν_{n−j+1}∘_{i−j+1}ν_j = Σ_{k=2}^{n−i+1} ν_{n−k+1}∘_iν_k
/// for 3 ≤ n ≤ cap; absent arities count as zero.
pub fn check_ncwdvv(nu: &OpFamily, space: &GradedSpace, cap: usize) -> Result<()> {
    guard(cap)?;
    for (&k, op) in nu {
        if k < 2 || op.arity() != k {
            return invalid(format!("ν_{k} must be an operation of arity {k} >= 2"));
        }
        if !op.is_zero() && op.degree() != 2 * k as i64 - 4 {
            return invalid(format!("ν_{k} has degree {} instead of {}", op.degree(), 2 * k - 4));
        }
    }
    for n in 3..=cap {
        for i in 2..n {
            let mut lhs = None;
            for j in 2..=i {
                accumulate(&mut lhs, comp(nu.get(&(n - j + 1)), i - j + 1, nu.get(&j), space), &Q::one());
            }
            let mut rhs = None;
            for k in 2..=n - i + 1 {
                accumulate(&mut rhs, comp(nu.get(&(n - k + 1)), i, nu.get(&k), space), &Q::one());
            }
            let zero = MultilinearOp::zero(n, 2 * n as i64 - 6);
            let diff = lhs.unwrap_or_else(|| zero.clone()).sub(&rhs.unwrap_or(zero));
            if !diff.is_zero() {
                return invalid(format!("ncWDVV fails in arity {n} at i = {i}"));
            }
        }
    }
    Ok(())
}

/// r∘₁X_n − Σ_m X_n∘_m r for every member of a family.
pub fn conjugation_action(r: &MultilinearOp, x: &OpFamily, space: &GradedSpace) -> OpFamily {
    x.iter()
        .map(|(&n, op)| {
            let mut t = r.compose(1, op, space);
            for m in 1..=n {
                t = t.sub(&op.compose(m, r, space));
            }
            (n, t)
        })
        .collect()
}

/// τ^{(0)}_n = r₀∘₁ν_n − Σ_m ν_n∘_m r₀ for 2 ≤ n ≤ cap.
pub fn givental_tau0(r0: &MultilinearOp, nu: &OpFamily, space: &GradedSpace, cap: usize) -> Result<OpFamily> {
    check_ncwdvv(nu, space, cap)?;
    let within: OpFamily = nu.range(2..=cap).map(|(k, v)| (*k, v.clone())).collect();
    Ok(conjugation_action(r0, &within, space))
}

/// One step of the fundamental-class recursion: for 2 ≤ n ≤ cap,
/// τ'_n = Σ_{s=2}^{n−1} Σ_{j=1}^{n−s+1} (s−1)/(n−1)·τ_{n−s+1}∘_jν_s − (n−s)/(n−1)·ν_{n−s+1}∘_jτ_s.
pub fn givental_step(tau: &OpFamily, nu: &OpFamily, space: &GradedSpace, cap: usize) -> Result<OpFamily> {
    guard(cap)?;
    if let Some(&top) = tau.keys().chain(nu.keys()).max() {
        if top > cap {
            return Err(Error::ArityCap { arity: top, cap });
        }
    }
    let degree = tau.values().next().map(|t| t.degree() + 2).unwrap_or(0);
    let mut out = OpFamily::new();
    for n in 2..=cap {
        let mut acc = None;
        for s in 2..n {
            let a = qr(s as i64 - 1, n as i64 - 1);
            let b = -qr((n - s) as i64, n as i64 - 1);
            for j in 1..=n - s + 1 {
                accumulate(&mut acc, comp(tau.get(&(n - s + 1)), j, nu.get(&s), space), &a);
                accumulate(&mut acc, comp(nu.get(&(n - s + 1)), j, tau.get(&s), space), &b);
            }
        }
        out.insert(n, acc.unwrap_or_else(|| MultilinearOp::zero(n, degree)));
    }
    Ok(out)
}

/// τ^{(k)} for r z^k through τ^{(0)} and k recursion steps.
pub fn givental_tau(r: &MultilinearOp, k: usize, nu: &OpFamily, space: &GradedSpace, cap: usize) -> Result<OpFamily> {
    let mut t = givental_tau0(r, nu, space, cap)?;
    for _ in 0..k {
        t = givental_step(&t, nu, space, cap)?;
    }
    Ok(t)
}

/// The ncHyperCom structure of an associative algebra: ν₂ = m, ν_{>2} = 0.
pub fn associative_family(alg: &Algebra) -> OpFamily {
    OpFamily::from([(2, alg.product.clone())])
}

fn single_psi(arity: usize, slot: usize, power: usize) -> i128 {
    let mut ds = vec![0u32; arity];
    let mut d0 = 0;
    if slot == 0 {
        d0 = power as u32;
    } else {
        ds[slot - 1] = power as u32;
    }
    correlator_trr(&CorrelatorIndex { d0, ds })
}

/// τ^{(k)}_n read off the Givental formula on the fundamental cycle for an
/// associative algebra, whose classes sit in H⁰; ψ-integrals come from
/// the correlators.
pub fn givental_direct(r: &MultilinearOp, k: usize, alg: &Algebra, cap: usize) -> Result<OpFamily> {
    guard(cap)?;
    alg.require_associative()?;
    let space = &alg.space;
    let sign_k = if k % 2 == 1 { Q::one() } else { -Q::one() };
    let mut out = OpFamily::new();
    for n in 2..=cap {
        let alpha = alg.product_power(n);
        let mut v = MultilinearOp::zero(n, r.degree() - 2 * k as i64);
        let c0 = single_psi(n, 0, k);
        if c0 != 0 {
            v = v.add_scaled(&r.compose(1, &alpha, space), &(&sign_k * q(c0 as i64)));
        }
        for m in 1..=n {
            let c = single_psi(n, m, k);
            if c != 0 {
                v = v.add_scaled(&alpha.compose(m, r, space), &q(c as i64));
            }
        }
        for p in 1..n {
            for qq in p + 1..=n {
                if qq - p >= n - 1 {
                    continue;
                }
                let (a, b) = (n - qq + p, qq - p + 1);
                for i in 0..k {
                    let j = k - 1 - i;
                    let c = single_psi(a, p, j) * single_psi(b, 0, i);
                    if c == 0 {
                        continue;
                    }
                    let inner = r.compose(1, &alg.product_power(b), space);
                    let term = alg.product_power(a).compose(p, &inner, space);
                    let s = if i % 2 == 1 { 1 } else { -1 };
                    v = v.add_scaled(&term, &q(s * c as i64));
                }
            }
        }
        out.insert(n, v.scale(&sign_k));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub preserved: bool,
    /// First failing `(l, input tuple)`: b_{l+2}^{r_l} is nonzero there.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// Whether r(z) = Σ r_l z^l preserves the associative structure, i.e. each
/// r_l has noncommutative order at most l+1.
pub fn preserves_associative(r: &[MultilinearOp], alg: &Algebra) -> Result<PreservationReport> {
    alg.require_associative()?;
    for (l, rl) in r.iter().enumerate() {
        let b = borjeson_unchecked(rl, alg, l + 2);
        if let Some(w) = alg.witness(&b) {
            return Ok(PreservationReport { preserved: false, witness: Some((l, w)) });
        }
    }
    Ok(PreservationReport { preserved: true, witness: None })
}

/// Whether every directly evaluated deformation τ^{(l)}_n of r_l z^l
/// vanishes for 2 ≤ n ≤ cap.
pub fn direct_deformation_vanishes(r: &[MultilinearOp], alg: &Algebra, cap: usize) -> Result<bool> {
    for (l, rl) in r.iter().enumerate() {
        let fam = givental_direct(rl, l, alg, cap)?;
        if !fam.values().all(|t| alg.vanishes(t)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct NcbvReport {
    /// `(l, order of Δ_l is at most l+1)`.
    pub orders: Vec<(usize, bool)>,
    /// `(l, Σ_{i+j=l} Δ_iΔ_j = 0)`.
    pub squares: Vec<(usize, bool)>,
    pub ok: bool,
}

/// Associative ncBV∞ conditions for operators Δ₀, Δ₁, … of degrees 2l−1.
pub fn assoc_ncbv_check(alg: &Algebra, deltas: &[MultilinearOp], cap: usize) -> Result<NcbvReport> {
    alg.require_associative()?;
    for (l, d) in deltas.iter().enumerate() {
        if !d.is_zero() && d.degree() != 2 * l as i64 - 1 {
            return invalid(format!("Δ_{l} has degree {} instead of {}", d.degree(), 2 * l as i64 - 1));
        }
    }
    let orders = deltas.iter().enumerate().map(|(l, d)| (l, alg.vanishes(&borjeson_unchecked(d, alg, l + 2)))).collect::<Vec<_>>();
    let mut squares = Vec::new();
    for l in 0..=cap {
        let mut s = MultilinearOp::zero(1, 2 * l as i64 - 2);
        for i in 0..=l {
            if let (Some(a), Some(b)) = (deltas.get(i), deltas.get(l - i)) {
                s = s.add(&a.compose(1, b, &alg.space));
            }
        }
        squares.push((l, alg.vanishes(&s)));
    }
    let ok = orders.iter().chain(&squares).all(|x| x.1);
    Ok(NcbvReport { orders, squares, ok })
}

pub fn family_is_zero(f: &OpFamily) -> bool {
    f.values().all(MultilinearOp::is_zero)
}

pub fn families_equal(a: &OpFamily, b: &OpFamily) -> bool {
    let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
    keys.into_iter().all(|k| match (a.get(&k), b.get(&k)) {
        (Some(x), Some(y)) => x.sub(y).is_zero(),
        (Some(x), None) | (None, Some(x)) => x.is_zero(),
        (None, None) => true,
    })
}
