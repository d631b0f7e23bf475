//! Free nonsymmetric operads: decorated tree monomials and their linear spans.

mod element;
mod monomial;
mod order;
mod suspension;
mod text;

pub use element::{substitute, substitute_element, Element};
pub use monomial::{Alphabet, Context, GenId, Generator, Monomial};
pub use order::{MonomialOrder, OrderKind};
pub use suspension::{suspend, suspend_alphabet, suspension_sign};
pub use text::{parse_element, parse_monomial};

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use rand::Rng;

    pub fn mixed_alphabet() -> Alphabet {
        Alphabet::new(vec![
            Generator::new("m", 2, 0),
            Generator::new("b", 2, 1),
            Generator::new("t", 3, 1),
            Generator::new("u", 3, 0),
            Generator::new("d", 1, 1),
        ])
        .unwrap()
    }

    pub fn random_monomial(rng: &mut impl Rng, a: &Alphabet, vertices: std::ops::Range<usize>) -> Monomial {
        let mut m = Monomial::Leaf;
        for _ in 0..rng.gen_range(vertices) {
            let g = a.corolla(rng.gen_range(0..a.len() as GenId));
            let i = rng.gen_range(1..=m.arity());
            m = if rng.gen_bool(0.5) { m.compose(i, &g, a).unwrap().1 } else {
                let j = rng.gen_range(1..=g.arity());
                g.compose(j, &m, a).unwrap().1
            };
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sgn(neg: bool) -> i64 {
        if neg {
            -1
        } else {
            1
        }
    }

    #[test]
    fn koszul_sign_of_odd_pair() {
        let a = mixed_alphabet();
        let b = a.corolla_named("b").unwrap();
        let (n1, x) = b.compose(1, &b, &a).unwrap();
        let (n2, y) = b.compose(2, &b, &a).unwrap();
        assert!(!n1 && !n2);
        assert_ne!(x, y);
        let (n3, _) = b.compose(1, &b.compose(2, &b, &a).unwrap().1, &a).unwrap();
        assert!(!n3);
        let (n4, _) = y.compose(1, &b, &a).unwrap();
        assert!(n4);
        let (n5, _) = x.compose(1, &b, &a).unwrap();
        assert!(!n5);
    }

    #[test]
    fn path_sequence_of_comb() {
        let a = mixed_alphabet();
        let m = parse_monomial("m(m(_,_),_)", &a).unwrap();
        assert_eq!(m.path_sequence(), vec![vec![0, 0], vec![0, 0], vec![0]]);
    }

    #[test]
    fn text_round_trip() {
        let a = mixed_alphabet();
        let e = parse_element("m(m,_) - 2/3*m(_,m) + b(d(_),m)", &a).unwrap();
        assert_eq!(e.len(), 3);
        let s = e.display(&a).to_string();
        assert_eq!(parse_element(&s, &a).unwrap(), e);
        assert!(parse_element("m(_)", &a).is_err());
        assert!(parse_element("zz", &a).is_err());
        assert!(parse_element("m(m,_) + m", &a).is_err());
    }

    #[test]
    fn context_fill_recovers_monomial() {
        let a = mixed_alphabet();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = random_monomial(&mut rng, &a, 1..6);
            for p in m.vertex_paths() {
                let sub = m.subtree(&p);
                let Monomial::Node(g, _) = sub else { unreachable!() };
                let pat = a.corolla(*g);
                let ctx = m.context_at(&p, &pat);
                let (_, filled) = ctx.fill(&pat, &a);
                assert_eq!(filled, m);
            }
        }
    }

    #[test]
    fn suspension_of_corolla_composition() {
        let a = Alphabet::new(vec![Generator::new("m", 2, 0)]).unwrap();
        let m = a.corolla(0);
        let x = m.compose(1, &m, &a).unwrap().1;
        let y = m.compose(2, &m, &a).unwrap().1;
        // Under suspension the associator becomes a graded one.
        assert_ne!(suspension_sign(&x, 1, &a), suspension_sign(&y, 1, &a));
    }

    proptest! {
        #[test]
        fn composition_axioms(seed in any::<u64>()) {
            let a = mixed_alphabet();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_monomial(&mut rng, &a, 1..4);
            let y = random_monomial(&mut rng, &a, 1..4);
            let z = random_monomial(&mut rng, &a, 1..4);
            let (kx, ky) = (x.arity(), y.arity());
            let i = rng.gen_range(1..=kx);
            let j = rng.gen_range(1..=ky);
            let (s1, xy) = x.compose(i, &y, &a).unwrap();
            let (s2, lhs) = xy.compose(i + j - 1, &z, &a).unwrap();
            let (s3, yz) = y.compose(j, &z, &a).unwrap();
            let (s4, rhs) = x.compose(i, &yz, &a).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(s1 ^ s2, s3 ^ s4);
            if kx >= 2 {
                let i = rng.gen_range(1..kx);
                let k = rng.gen_range(i + 1..=kx);
                let (t1, xy) = x.compose(i, &y, &a).unwrap();
                let (t2, lhs) = xy.compose(k + ky - 1, &z, &a).unwrap();
                let (t3, xz) = x.compose(k, &z, &a).unwrap();
                let (t4, rhs) = xz.compose(i, &y, &a).unwrap();
                prop_assert_eq!(&lhs, &rhs);
                let swap = (y.degree(&a) * z.degree(&a)).rem_euclid(2) == 1;
                prop_assert_eq!(t1 ^ t2, t3 ^ t4 ^ swap);
            }
        }

        #[test]
        fn suspension_is_a_morphism(seed in any::<u64>(), power in prop::sample::select(vec![1i32, -1])) {
            let a = mixed_alphabet();
            let sa = suspend_alphabet(&a, power).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_monomial(&mut rng, &a, 0..4);
            let y = random_monomial(&mut rng, &a, 0..4);
            let i = rng.gen_range(1..=x.arity());
            let (s, xy) = x.compose(i, &y, &a).unwrap();
            let (ss, sxy) = x.compose(i, &y, &sa).unwrap();
            prop_assert_eq!(&xy, &sxy);
            let l = y.arity() as i64;
            let base = if power == 1 { x.degree(&a) } else { x.degree(&a) + x.arity() as i64 - 1 };
            let eps = ((l - 1) * (base + i as i64 - 1)).rem_euclid(2) == 1;
            let lhs = sgn(s) * sgn(suspension_sign(&xy, power, &a));
            let rhs = sgn(eps) * sgn(suspension_sign(&x, power, &a)) * sgn(suspension_sign(&y, power, &a)) * sgn(ss);
            prop_assert_eq!(lhs, rhs);
            let e = Element::monomial(xy.clone());
            let back = suspend(&suspend(&e, power, &a).unwrap(), -power, &sa).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn orders_are_compatible(seed in any::<u64>(), kind in 0usize..3, rev in any::<bool>()) {
            let a = mixed_alphabet();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let kind = match kind {
                0 => OrderKind::PathLex,
                1 => OrderKind::DegPathLex,
                _ => OrderKind::WeightFirst(vec![0, 1, 1, 2, 1]),
            };
            let mut prec: Vec<GenId> = a.ids().collect();
            prec.reverse();
            let ord = MonomialOrder::new(kind, prec, rev, &a).unwrap();
            let x = random_monomial(&mut rng, &a, 3..4);
            let n = x.arity();
            let mut y = random_monomial(&mut rng, &a, 3..4);
            for _ in 0..50 {
                if y.arity() == n { break; }
                y = random_monomial(&mut rng, &a, 3..4);
            }
            prop_assume!(y.arity() == n && x != y);
            let z = random_monomial(&mut rng, &a, 2..3);
            let c = ord.cmp(&x, &y);
            prop_assert_ne!(c, std::cmp::Ordering::Equal);
            let i = rng.gen_range(1..=n);
            prop_assert_eq!(ord.cmp(&x.compose(i, &z, &a).unwrap().1, &y.compose(i, &z, &a).unwrap().1), c);
            let j = rng.gen_range(1..=z.arity());
            prop_assert_eq!(ord.cmp(&z.compose(j, &x, &a).unwrap().1, &z.compose(j, &y, &a).unwrap().1), c);
        }

        #[test]
        fn element_linearity(seed in any::<u64>()) {
            let a = mixed_alphabet();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = random_monomial(&mut rng, &a, 2..3);
            let y = random_monomial(&mut rng, &a, 2..3);
            let e = Element::term(q(3), x.clone()).minus(&Element::term(q(3), x));
            prop_assert!(e.is_zero());
            let f = Element::monomial(y.clone()).scaled(&q(-2));
            prop_assert_eq!(parse_element(&f.display(&a).to_string(), &a).unwrap(), f);
        }
    }
}
