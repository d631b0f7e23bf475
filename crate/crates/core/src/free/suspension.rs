use super::element::Element;
use super::monomial::{Alphabet, Generator, Monomial};
use crate::error::{invalid, Result};
use crate::linalg::Q;
use num_traits::One;

fn check_power(power: i32) -> Result<()> {
    if power != 1 && power != -1 {
        return invalid(format!("suspension power must be 1 or -1, got {power}"));
    }
    Ok(())
}

/// Alphabet after operadic suspension: a generator of arity k shifts by power*(1-k).
pub fn suspend_alphabet(a: &Alphabet, power: i32) -> Result<Alphabet> {
    check_power(power)?;
    Alphabet::new(
        a.gens()
            .iter()
            .map(|g| Generator::new(g.name.clone(), g.arity, g.degree + power as i64 * (1 - g.arity as i64)))
            .collect(),
    )
}

/// Sign picked up by a monomial under suspension (true = negative).
pub fn suspension_sign(m: &Monomial, power: i32, a: &Alphabet) -> bool {
    let p = power as i64;
    match m {
        Monomial::Leaf => false,
        Monomial::Node(g, ch) => {
            let k = ch.len();
            let deg: Vec<i64> = ch.iter().map(|c| c.degree(a)).collect();
            let ar: Vec<i64> = ch.iter().map(|c| c.arity() as i64).collect();
            let sdeg: Vec<i64> = deg.iter().zip(&ar).map(|(d, l)| d + p * (1 - l)).collect();
            let mut neg = false;
            let mut x_deg = a.get(*g).degree;
            let mut x_ar = k as i64;
            let mut after = 0i64;
            let mut safter = 0i64;
            for t in (0..k).rev() {
                neg ^= suspension_sign(&ch[t], power, a);
                neg ^= (deg[t] * after).rem_euclid(2) == 1;
                neg ^= (sdeg[t] * safter).rem_euclid(2) == 1;
                let base = if power == 1 { x_deg } else { x_deg + x_ar - 1 };
                neg ^= ((ar[t] - 1) * (base + t as i64)).rem_euclid(2) == 1;
                after += deg[t];
                safter += sdeg[t];
                x_deg += deg[t];
                x_ar += ar[t] - 1;
            }
            neg
        }
    }
}

/// Image of an element under suspension; generators keep their ids.
pub fn suspend(e: &Element, power: i32, a: &Alphabet) -> Result<Element> {
    check_power(power)?;
    Ok(e.map_monomials(|m| {
        let s = if suspension_sign(m, power, a) { -Q::one() } else { Q::one() };
        (s, m.clone())
    }))
}
