use super::multilinear::{commutator, koszul, unit_vec, Algebra, MultilinearOp};
use crate::error::{invalid, Result};
use crate::linalg::{sparse_add_scaled, Q, SparseVec};
use num_traits::{One, Zero};
use serde::Serialize;

/// b_n^D by the recursive definition.
pub fn borjeson(d: &MultilinearOp, alg: &Algebra, n: usize) -> Result<MultilinearOp> {
    if d.arity() != 1 {
        return invalid("Börjeson products are defined for unary operators");
    }
    if n == 0 {
        return invalid("n must be at least 1");
    }
    alg.require_associative()?;
    Ok(borjeson_unchecked(d, alg, n))
}

pub(crate) fn borjeson_unchecked(d: &MultilinearOp, alg: &Algebra, n: usize) -> MultilinearOp {
    let m = &alg.product;
    match n {
        1 => d.clone(),
        2 => alg.compose(d, 1, m).sub(&alg.compose(m, 1, d)).sub(&alg.compose(m, 2, d)),
        _ => {
            let dm = alg.compose(d, 1, m);
            let b3 = alg
                .compose(&dm, 2, m)
                .sub(&alg.compose(m, 1, &dm))
                .sub(&alg.compose(m, 2, &dm))
                .add(&alg.compose(m, 2, &alg.compose(m, 1, d)));
            (3..n).fold(b3, |b, _| alg.compose(&b, 2, m))
        }
    }
}

/// b_n^D assembled from its values D(a₁⋯a_n) − D(a₁⋯a_{n−1})a_n − ±a₁D(a₂⋯a_n)
/// + ±a₁D(a₂⋯a_{n−1})a_n on admissible basis tuples.
pub fn borjeson_closed(d: &MultilinearOp, alg: &Algebra, n: usize) -> Result<MultilinearOp> {
    if d.arity() != 1 || n == 0 {
        return invalid("need a unary operator and n >= 1");
    }
    alg.require_associative()?;
    if n == 1 {
        return Ok(alg.admissible_part(d));
    }
    let dim = alg.dim();
    let mut out = MultilinearOp::zero(n, d.degree());
    let mut middle: Vec<usize> = Vec::new();
    let mut stack: Vec<(Vec<usize>, SparseVec)> = vec![(Vec::new(), SparseVec::new())];
    while let Some((mid, prod)) = stack.pop() {
        if mid.len() < n - 2 {
            for x in 0..dim {
                let mut next = mid.clone();
                next.push(x);
                if !alg.admissible(&next) {
                    continue;
                }
                let p = if mid.is_empty() { unit_vec(x) } else { alg.mul(&prod, &unit_vec(x)) };
                if !p.is_zero_vec() {
                    stack.push((next, p));
                }
            }
            continue;
        }
        middle.clone_from(&mid);
        for a1 in 0..dim {
            for an in 0..dim {
                let key: Vec<usize> = [&[a1][..], &middle, &[an]].concat();
                if !alg.admissible(&key) {
                    continue;
                }
                let (e1, en) = (unit_vec(a1), unit_vec(an));
                let sign = koszul(alg.space.degree(a1), d.degree());
                let mut v = SparseVec::new();
                if n == 2 {
                    sparse_add_scaled(&mut v, &d.apply(&alg.mul(&e1, &en)), &Q::one());
                    sparse_add_scaled(&mut v, &alg.mul(&d.apply(&e1), &en), &-Q::one());
                    sparse_add_scaled(&mut v, &alg.mul(&e1, &d.apply(&en)), &-sign);
                } else {
                    let left = alg.mul(&e1, &prod);
                    let right = alg.mul(&prod, &en);
                    let all = alg.mul(&left, &en);
                    sparse_add_scaled(&mut v, &d.apply(&all), &Q::one());
                    sparse_add_scaled(&mut v, &alg.mul(&d.apply(&left), &en), &-Q::one());
                    sparse_add_scaled(&mut v, &alg.mul(&e1, &d.apply(&right)), &-sign.clone());
                    sparse_add_scaled(&mut v, &alg.mul(&alg.mul(&e1, &d.apply(&prod)), &en), &sign);
                }
                for (o, c) in v {
                    out.add_entry(key.clone(), o, c);
                }
            }
        }
    }
    Ok(out)
}

trait ZeroVec {
    fn is_zero_vec(&self) -> bool;
}

impl ZeroVec for SparseVec {
    fn is_zero_vec(&self) -> bool {
        self.values().all(Zero::is_zero)
    }
}

/// Least l with b_{l+1}^D = 0, provided the vanishing persists through
/// b_{cap+1}; `None` when no such l < cap+1 exists.
pub fn nc_order(d: &MultilinearOp, alg: &Algebra, cap: usize) -> Result<Option<usize>> {
    alg.require_associative()?;
    let vanish: Vec<bool> = (1..=cap + 1).map(|n| alg.vanishes(&borjeson_unchecked(d, alg, n))).collect();
    Ok((0..=cap).find(|&l| vanish[l..].iter().all(|&z| z)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    /// `(n, holds)` for b_n^{[D₁,D₂]} against the double sum.
    pub rows: Vec<(usize, bool)>,
    pub orders: Option<(usize, usize, usize)>,
    pub order_drop_holds: bool,
    pub ok: bool,
}

/// The double sum Σ b^{D₁}_{i+j+1}(id^i⊗b_k^{D₂}⊗id^j) − ±(D₁↔D₂).
pub fn commutator_rhs(d1: &MultilinearOp, d2: &MultilinearOp, alg: &Algebra, n: usize) -> MultilinearOp {
    let b1: Vec<MultilinearOp> = (1..=n).map(|k| borjeson_unchecked(d1, alg, k)).collect();
    let b2: Vec<MultilinearOp> = (1..=n).map(|k| borjeson_unchecked(d2, alg, k)).collect();
    let sign = -koszul(d1.degree(), d2.degree());
    let mut out = MultilinearOp::zero(n, d1.degree() + d2.degree());
    for k in 1..=n {
        let outer = n - k + 1;
        for i in 0..outer {
            out = out.add(&alg.compose(&b1[outer - 1], i + 1, &b2[k - 1]));
            out = out.add_scaled(&alg.compose(&b2[outer - 1], i + 1, &b1[k - 1]), &sign);
        }
    }
    out
}

pub fn commutator_check(d1: &MultilinearOp, d2: &MultilinearOp, alg: &Algebra, n_max: usize) -> Result<CommutatorReport> {
    alg.require_associative()?;
    let br = commutator(d1, d2, &alg.space);
    let rows: Vec<(usize, bool)> = (1..=n_max)
        .map(|n| {
            let lhs = borjeson_unchecked(&br, alg, n);
            (n, alg.vanishes(&lhs.sub(&commutator_rhs(d1, d2, alg, n))))
        })
        .collect();
    let cap = n_max.saturating_sub(1);
    let orders = match (nc_order(d1, alg, cap)?, nc_order(d2, alg, cap)?, nc_order(&br, alg, cap)?) {
        (Some(k), Some(l), Some(c)) => Some((k, l, c)),
        _ => None,
    };
    let order_drop_holds = orders.is_none_or(|(k, l, c)| k + l == 0 || c < (k + l).max(1));
    let ok = rows.iter().all(|r| r.1) && order_drop_holds;
    Ok(CommutatorReport { rows, orders, order_drop_holds, ok })
}

/// Checks D(a₁⋯a_n) against the expansion through values on products of at
/// most l factors, for all admissible basis tuples of length n.
pub fn order_expansion_holds(d: &MultilinearOp, alg: &Algebra, l: usize, n: usize) -> bool {
    assert!(l >= 1 && n > l);
    let term = |a: usize, b: usize| -> MultilinearOp {
        // a₁⋯a_{a−1} D(a_a⋯a_{b}) a_{b+1}⋯a_n with 1-based a ≤ b
        let mut op = alg.compose(d, 1, &alg.product_power(b - a + 1));
        let pre = a - 1;
        let post = n - b;
        if pre + post == 0 {
            return op;
        }
        let outer = alg.product_power(pre + post + 1);
        op = alg.compose(&outer, pre + 1, &op);
        op
    };
    let lhs = alg.compose(d, 1, &alg.product_power(n));
    let mut rhs = MultilinearOp::zero(n, d.degree());
    for k in 1..=n - l + 1 {
        rhs = rhs.add(&term(k, k + l - 1));
    }
    if l >= 2 {
        for k in 2..=n - l + 1 {
            rhs = rhs.sub(&term(k, k + l - 2));
        }
    }
    alg.vanishes(&lhs.sub(&rhs))
}
