use super::config::stratum_dimension;
use crate::tree::{binomial, catalan, enumerate_trees};

/// f_i = number of trees whose stratum has dimension i.
pub fn f_vector(n: usize) -> Vec<u128> {
    let mut f = vec![0u128; n.saturating_sub(1).max(1)];
    for t in enumerate_trees(n, false) {
        f[stratum_dimension(&t)] += 1;
    }
    f
}

/// Σ h_i t^i = Σ f_i (t−1)^i.
pub fn h_vector(n: usize) -> Vec<i128> {
    let f = f_vector(n);
    let mut h = vec![0i128; f.len()];
    for (i, &fi) in f.iter().enumerate() {
        for (k, hk) in h.iter_mut().enumerate().take(i + 1) {
            let sign = if (i - k) % 2 == 0 { 1 } else { -1 };
            *hk += sign * (binomial(i as u64, k as u64) as i128) * fi as i128;
        }
    }
    h
}

/// Betti numbers of the complex brick manifold by homological degree.
pub fn complex_betti(n: usize) -> Vec<i128> {
    let h = h_vector(n);
    let mut b = vec![0; 2 * h.len() - 1];
    for (k, x) in h.into_iter().enumerate() {
        b[2 * k] = x;
    }
    b
}

/// Rational Betti numbers of the real brick manifold, b_0..b_{⌊(n−1)/2⌋}.
pub fn real_betti(n: usize) -> Vec<i128> {
    let top = (n.max(1) - 1) / 2;
    (0..=top)
        .map(|i| {
            if i == 0 {
                1
            } else {
                binomial(n as u64 - 1, i as u64) as i128 - binomial(n as u64 - 1, i as u64 - 1) as i128
            }
        })
        .collect()
}

pub fn euler_characteristic(betti: &[i128]) -> i128 {
    betti.iter().enumerate().map(|(i, b)| if i % 2 == 0 { *b } else { -*b }).sum()
}

/// 0 for odd n, (−1)^{n/2−1} C_{n/2−1} for even n.
pub fn real_euler_closed(n: usize) -> i128 {
    if n % 2 == 1 {
        return 0;
    }
    let k = n / 2 - 1;
    let c = catalan(k) as i128;
    if k % 2 == 0 {
        c
    } else {
        -c
    }
}
