//! Exact phase-one simplex with Bland's rule.

use crate::linalg::Q;
use num_traits::{One, Signed, Zero};

/// Finds x ≥ 0 with Ax = b, or reports infeasibility.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r = Vec::with_capacity(width);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Q::one() } else { Q::zero() });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut obj = vec![Q::zero(); width];
    for r in &t {
        for j in 0..n {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for v in t[r].iter_mut() {
        *v *= &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
}

/// Convex weights expressing `p` through `points`, if any.
pub fn convex_combination(p: &[Q], points: &[Vec<Q>]) -> Option<Vec<Q>> {
    let d = p.len();
    let mut a = vec![Vec::with_capacity(points.len()); d + 1];
    for pt in points {
        for k in 0..d {
            a[k].push(pt[k].clone());
        }
        a[d].push(Q::one());
    }
    let mut b = p.to_vec();
    b.push(Q::one());
    if points.is_empty() {
        return None;
    }
    feasible_point(&a, &b)
}

/// The points that are not convex combinations of the others, deduplicated, in input order.
pub fn extreme_points(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut uniq: Vec<Vec<Q>> = Vec::new();
    for p in points {
        if !uniq.contains(p) {
            uniq.push(p.clone());
        }
    }
    (0..uniq.len())
        .filter(|&i| {
            let others: Vec<Vec<Q>> = uniq.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            convex_combination(&uniq[i], &others).is_none()
        })
        .map(|i| uniq[i].clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qr};

    fn pt(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn square_with_centre() {
        let pts = vec![pt(&[0, 0]), pt(&[2, 0]), pt(&[0, 2]), pt(&[2, 2]), pt(&[1, 1]), pt(&[1, 0])];
        let ext = extreme_points(&pts);
        assert_eq!(ext.len(), 4);
        assert!(!ext.contains(&pt(&[1, 1])));
        let w = convex_combination(&pt(&[1, 1]), &pts[..4]).unwrap();
        let mut s = vec![q(0), q(0)];
        for (wi, p) in w.iter().zip(&pts[..4]) {
            s[0] += wi * &p[0];
            s[1] += wi * &p[1];
        }
        assert_eq!(s, pt(&[1, 1]));
    }

    #[test]
    fn infeasible_system() {
        let a = vec![vec![q(1), q(1)]];
        assert!(feasible_point(&a, &[q(-1)]).is_none());
        assert_eq!(feasible_point(&a, &[qr(1, 2)]).unwrap().iter().fold(q(0), |s, x| s + x), qr(1, 2));
    }
}
