//! ψ-class intersection numbers on complex brick manifolds.

use crate::error::{invalid, Result};
use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

/// Exponents of ⟨τ_{d₀} τ_{d₁} ⋯ τ_{d_n}⟩.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorIndex {
    pub d0: u32,
    pub ds: Vec<u32>,
}

impl CorrelatorIndex {
    pub fn new(d0: u32, ds: Vec<u32>) -> Result<Self> {
        if ds.len() < 2 {
            return invalid("correlators need n >= 2 inputs");
        }
        Ok(CorrelatorIndex { d0, ds })
    }

    pub fn n(&self) -> usize {
        self.ds.len()
    }

    pub fn total(&self) -> usize {
        self.d0 as usize + self.ds.iter().map(|&d| d as usize).sum::<usize>()
    }

    fn on_dimension(&self) -> bool {
        self.total() + 2 == self.n()
    }
}

/// Coefficient of the monomial in (t₀+t₂)(t₀+t₃)⋯(t₀+t_{n−1}).
pub fn correlator_closed(idx: &CorrelatorIndex) -> i128 {
    let n = idx.n();
    let ok = idx.on_dimension() && idx.ds[0] == 0 && idx.ds[n - 1] == 0 && idx.ds[1..n - 1].iter().all(|&d| d <= 1);
    i128::from(ok)
}

/// Which three-point relation strips a ψ-power at an input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InputRelation {
    /// The vertex carrying input i has i as its rightmost leaf.
    Left,
    /// The vertex carrying input i has i as its leftmost leaf.
    Right,
}

fn cache() -> &'static RwLock<HashMap<(CorrelatorIndex, InputRelation), i128>> {
    static CACHE: OnceLock<RwLock<HashMap<(CorrelatorIndex, InputRelation), i128>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// ⟨τ_{d₀} τ_{d₁} ⋯ τ_{d_{l−1}} τ₀ τ_{d_{m+1}} ⋯ τ_{d_n}⟩⟨τ₀ τ_{d_l} ⋯ τ_{d_m}⟩ with
/// 1-based l ≤ m.
fn split(idx: &CorrelatorIndex, l: usize, m: usize, rel: InputRelation) -> i128 {
    let mut outer = idx.ds[..l - 1].to_vec();
    outer.push(0);
    outer.extend_from_slice(&idx.ds[m..]);
    let inner = idx.ds[l - 1..m].to_vec();
    let a = trr(&CorrelatorIndex { d0: idx.d0, ds: outer }, rel);
    if a == 0 {
        return 0;
    }
    a * trr(&CorrelatorIndex { d0: 0, ds: inner }, rel)
}

fn trr(idx: &CorrelatorIndex, rel: InputRelation) -> i128 {
    if !idx.on_dimension() {
        return 0;
    }
    let n = idx.n();
    if let Some(v) = cache().read().unwrap().get(&(idx.clone(), rel)).copied() {
        return v;
    }
    let interior = (1..n - 1).find(|&k| idx.ds[k] > 0);
    let value = if let Some(k) = interior.or_else(|| (0..n).find(|&k| idx.ds[k] > 0)) {
        let i = k + 1;
        let mut lowered = idx.clone();
        lowered.ds[k] -= 1;
        let use_left = match rel {
            InputRelation::Left => i < n,
            InputRelation::Right => i == 1,
        };
        if use_left {
            (1..i).map(|l| split(&lowered, l, i, rel)).sum()
        } else {
            (i + 1..=n).map(|m| split(&lowered, i, m, rel)).sum()
        }
    } else if idx.d0 == 0 {
        i128::from(n == 2)
    } else {
        let mut lowered = idx.clone();
        lowered.d0 -= 1;
        let i = 1;
        let mut s = 0;
        for l in 1..=i {
            for m in i + 1..=n {
                if m - l < n - 1 {
                    s += split(&lowered, l, m, rel);
                }
            }
        }
        s
    };
    cache().write().unwrap().insert((idx.clone(), rel), value);
    value
}

/// Evaluation by the topological recursion relations.
pub fn correlator_trr(idx: &CorrelatorIndex) -> i128 {
    trr(idx, InputRelation::Left)
}

/// Evaluation preferring the given three-point relation at interior inputs.
pub fn correlator_trr_with(idx: &CorrelatorIndex, rel: InputRelation) -> i128 {
    trr(idx, rel)
}

/// Evaluation of ψ₀^{d₀+1}⋯ through the root relation at the gap (i, i+1).
pub fn correlator_root_relation(idx: &CorrelatorIndex, i: usize) -> Result<i128> {
    let n = idx.n();
    if i == 0 || i >= n {
        return invalid(format!("gap index {i} is outside 1..{}", n - 1));
    }
    if idx.d0 == 0 {
        return invalid("the root relation needs d0 >= 1");
    }
    let mut lowered = idx.clone();
    lowered.d0 -= 1;
    let mut s = 0;
    for l in 1..=i {
        for m in i + 1..=n {
            if m - l < n - 1 {
                s += split(&lowered, l, m, InputRelation::Left);
            }
        }
    }
    Ok(s)
}

/// Multivariate polynomial in t₀,…,t_n keyed by exponent vectors.
pub type Polynomial = BTreeMap<Vec<u32>, i128>;

/// (t₀+t₂)(t₀+t₃)⋯(t₀+t_{n−1}).
pub fn generating_polynomial(n: usize) -> Result<Polynomial> {
    if n < 2 {
        return invalid("n must be at least 2");
    }
    let mut p = Polynomial::new();
    p.insert(vec![0; n + 1], 1);
    for k in 2..n {
        let mut next = Polynomial::new();
        for (e, c) in &p {
            for var in [0, k] {
                let mut f = e.clone();
                f[var] += 1;
                *next.entry(f).or_insert(0) += c;
            }
        }
        p = next;
    }
    Ok(p)
}

pub fn polynomial_to_string(p: &Polynomial) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .iter()
        .rev()
        .map(|(e, c)| {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| if x == 1 { format!("t{v}") } else { format!("t{v}^{x}") })
                .collect();
            match (vars.is_empty(), *c) {
                (true, c) => c.to_string(),
                (false, 1) => vars.join("*"),
                (false, c) => format!("{c}*{}", vars.join("*")),
            }
        })
        .collect();
    terms.join(" + ")
}

/// All indices with d₀+…+d_n = n−2.
pub fn on_dimension_indices(n: usize) -> Vec<CorrelatorIndex> {
    fn go(left: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 0..=left {
            cur.push(d);
            go(left - d, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(n as u32 - 2, n + 1, &mut Vec::new(), &mut all);
    all.into_iter().map(|v| CorrelatorIndex { d0: v[0], ds: v[1..].to_vec() }).collect()
}

/// Nonzero correlators of arity n as (index, value).
pub fn nonzero_correlators(n: usize) -> Vec<(CorrelatorIndex, i128)> {
    on_dimension_indices(n).into_iter().filter_map(|i| {
        let v = correlator_trr(&i);
        (v != 0).then_some((i, v))
    }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(d0: u32, ds: &[u32]) -> CorrelatorIndex {
        CorrelatorIndex::new(d0, ds.to_vec()).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(correlator_closed(&idx(0, &[0, 0])), 1);
        assert_eq!(correlator_closed(&idx(1, &[0, 0, 0])), 1);
        assert_eq!(correlator_closed(&idx(0, &[0, 1, 0])), 1);
        assert_eq!(correlator_closed(&idx(0, &[1, 0, 0])), 0);
        assert_eq!(correlator_trr(&idx(1, &[0, 0, 0])), 1);
        assert_eq!(correlator_root_relation(&idx(1, &[0, 0, 0]), 1).unwrap(), 1);
        assert_eq!(correlator_trr(&idx(2, &[0, 0, 0, 0])), 1);
        assert_eq!(correlator_trr(&idx(0, &[1, 0, 0])), 0);
    }

    #[test]
    fn engines_agree() {
        for n in 2..=7 {
            let mut nonzero = 0;
            for i in on_dimension_indices(n) {
                let c = correlator_closed(&i);
                assert_eq!(correlator_trr(&i), c, "{i:?}");
                assert_eq!(correlator_trr_with(&i, InputRelation::Right), c, "{i:?}");
                if i.d0 > 0 {
                    for g in 1..n {
                        assert_eq!(correlator_root_relation(&i, g).unwrap(), c);
                    }
                }
                nonzero += c;
            }
            assert_eq!(nonzero, 1 << (n - 2));
        }
        assert_eq!(correlator_trr(&idx(0, &[0, 0, 0])), 0);
    }

    #[test]
    fn polynomial() {
        assert_eq!(polynomial_to_string(&generating_polynomial(2).unwrap()), "1");
        assert_eq!(polynomial_to_string(&generating_polynomial(4).unwrap()), "t0^2 + t0*t2 + t0*t3 + t2*t3");
        for n in 2..=8 {
            let p = generating_polynomial(n).unwrap();
            assert_eq!(p.len(), 1 << (n - 2));
            assert_eq!(p.values().sum::<i128>(), 1 << (n - 2));
            for (e, c) in &p {
                let i = CorrelatorIndex::new(e[0], e[1..].to_vec()).unwrap();
                assert_eq!(correlator_closed(&i), *c);
            }
        }
    }
}
