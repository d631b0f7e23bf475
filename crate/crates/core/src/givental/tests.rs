use super::*;
use crate::linalg::{q, Q};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg(name: &str) -> Algebra {
    builtin_fixture(name).unwrap().algebra().unwrap()
}

fn zero_product(dim: usize) -> Algebra {
    Algebra::new(GradedSpace::with_degrees(vec![0; dim]), MultilinearOp::zero(2, 0)).unwrap()
}

#[test]
fn fixtures_load_and_roundtrip() {
    for name in builtin_fixture_names() {
        let f = builtin_fixture(name).unwrap();
        let a = f.algebra().unwrap();
        assert!(a.is_associative(), "{name}");
        let back = AlgebraFixture::from_json(&f.to_json()).unwrap().algebra().unwrap();
        assert_eq!(back, a);
        assert_eq!(AlgebraFixture::from_algebra(name, &a).algebra().unwrap(), a);
    }
    let bad = r#"{"name":"x","dims":{"0":1,"1":1},"product":[[[0,0],1,"1"]]}"#;
    assert!(AlgebraFixture::from_json(bad).unwrap().algebra().is_err());
}

#[test]
fn borjeson_examples() {
    let a = alg("upper_triangular");
    let id = MultilinearOp::identity(&a.space);
    assert_eq!(borjeson(&id, &a, 2).unwrap(), a.product.scale(&-Q::one()));
    assert!(borjeson(&id, &a, 3).unwrap().is_zero());
    assert_eq!(nc_order(&id, &a, 5).unwrap(), Some(2));
    let z = zero_product(3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let d = random_operator(&z.space, 0, 0.7, &mut rng);
    for n in 2..=5 {
        assert!(borjeson(&d, &z, n).unwrap().is_zero());
    }
    let nil = alg("nilpotent2");
    let der = MultilinearOp::from_triples(&nil.space, 1, 0, [(vec![0], 0, q(1)), (vec![1], 1, q(2))]).unwrap();
    assert_eq!(nc_order(&der, &nil, 4).unwrap(), Some(1));
    let sp = GradedSpace::with_degrees(vec![0, 0]);
    let bad = Algebra::new(sp.clone(), MultilinearOp::from_triples(&sp, 2, 0, [(vec![0, 0], 1, q(1)), (vec![0, 1], 0, q(1))]).unwrap()).unwrap();
    assert!(!bad.is_associative());
    assert!(borjeson(&MultilinearOp::identity(&sp), &bad, 2).is_err());
}

#[test]
fn recursive_and_closed_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["nilpotent2", "upper_triangular", "odd_square_zero", "unital_dual"] {
        let a = alg(name);
        for degree in [0, 1, -1] {
            for _ in 0..3 {
                let d = random_operator(&a.space, degree, 0.6, &mut rng);
                for n in 1..=6 {
                    let r = a.admissible_part(&borjeson(&d, &a, n).unwrap());
                    assert_eq!(r, borjeson_closed(&d, &a, n).unwrap(), "{name} degree {degree} n {n}");
                }
            }
        }
    }
    let t = TensorAlgebraTrunc::new(vec![0, 0], 4).unwrap();
    let a = t.algebra();
    let d = random_operator(&a.space, 0, 0.05, &mut rng);
    for n in 1..=4 {
        assert_eq!(a.admissible_part(&borjeson(&d, a, n).unwrap()), borjeson_closed(&d, a, n).unwrap());
    }
}

#[test]
fn commutator_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["upper_triangular", "odd_square_zero", "nilpotent2"] {
        let a = alg(name);
        for (x, y) in [(0, 0), (0, 1), (1, 1), (1, -1)] {
            let d1 = random_operator(&a.space, x, 0.6, &mut rng);
            let d2 = random_operator(&a.space, y, 0.6, &mut rng);
            let rep = commutator_check(&d1, &d2, &a, 5).unwrap();
            assert!(rep.rows.iter().all(|r| r.1), "{name} {x} {y}: {rep:?}");
        }
    }
    let a = alg("upper_triangular");
    let ad = |x: usize| {
        let mut op = MultilinearOp::zero(1, 0);
        for i in 0..3 {
            let e = std::collections::BTreeMap::from([(i, Q::one())]);
            let u = std::collections::BTreeMap::from([(x, Q::one())]);
            let v: crate::linalg::SparseVec = {
                let mut s = a.mul(&u, &e);
                crate::linalg::sparse_add_scaled(&mut s, &a.mul(&e, &u), &-Q::one());
                s
            };
            for (o, c) in v {
                op.add_entry(vec![i], o, c);
            }
        }
        op
    };
    let (d1, d2) = (ad(0), ad(1));
    assert_eq!(nc_order(&d1, &a, 4).unwrap(), Some(1));
    let rep = commutator_check(&d1, &d2, &a, 4).unwrap();
    assert!(rep.ok);
    assert!(rep.orders.unwrap().2 <= 1);

    let t = TensorAlgebraTrunc::new(vec![0, 0], 4).unwrap();
    let ta = t.algebra();
    for _ in 0..3 {
        let f = t.rho(&random_symbol(&t, 2, 2..=3, 0.3, &mut rng));
        let g = t.rho(&random_symbol(&t, 2, 2..=3, 0.3, &mut rng));
        let br = commutator(&f, &g, &ta.space);
        assert!(ta.vanishes(&borjeson(&br, ta, 4).unwrap()));
        let rep = commutator_check(&f, &g, ta, 4).unwrap();
        assert!(rep.ok, "{rep:?}");
    }
}

#[test]
fn rho_and_decompose() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = TensorAlgebraTrunc::new(vec![0, 0], 4).unwrap();
    let a = t.algebra();
    assert!(t.decompose(&MultilinearOp::zero(1, 0)).unwrap().is_empty());
    for _ in 0..4 {
        let mut pieces = Vec::new();
        for k in 1..=3 {
            let f = random_symbol(&t, k, 1..=4, 0.2, &mut rng);
            let d = t.rho(&f);
            assert!(a.vanishes(&borjeson(&d, a, k + 1).unwrap()), "order of a {k}-symbol");
            assert_eq!(t.decompose(&d).unwrap(), vec![(k, f.clone())]);
            for n in k + 1..=4 {
                assert!(order_expansion_holds(&d, a, k, n));
            }
            pieces.push((k, f));
        }
        let d = t.rho_sum(&pieces);
        assert_eq!(t.decompose(&d).unwrap(), pieces);
        assert_eq!(t.rho_sum(&t.decompose(&d).unwrap()), d);
    }
    let top = random_symbol(&t, 4, 4..=4, 0.5, &mut rng);
    assert!(t.decompose(&t.rho(&top)).is_err());
}

#[test]
fn bar_constructions() {
    let a = alg("upper_triangular");
    let (t, delta) = bar_construction(&a, 4).unwrap();
    let ta = t.algebra();
    assert_eq!(delta.degree(), 1);
    assert!(ta.vanishes(&borjeson(&delta, ta, 3).unwrap()));
    assert!(!ta.vanishes(&borjeson(&delta, ta, 2).unwrap()));
    assert!(ta.vanishes(&delta.compose(1, &delta, &ta.space)));
    let rep = assoc_ncbv_check(ta, &[MultilinearOp::zero(1, -1), delta.clone()], 4).unwrap();
    assert!(rep.ok, "{rep:?}");
    assert!(assoc_ncbv_check(ta, &[], 3).unwrap().ok);
    assert!(assoc_ncbv_check(ta, std::slice::from_ref(&delta), 1).is_err());

    let (t, deltas) = ainfty_bar_fixture(5).unwrap();
    let ta = t.algebra();
    assert!(!deltas[2].is_zero());
    assert_eq!(nc_order(&deltas[2], ta, 4).unwrap(), Some(3));
    let rep = assoc_ncbv_check(ta, &deltas, 5).unwrap();
    assert!(rep.ok, "{rep:?}");
    let v = GradedSpace::with_degrees(vec![-1, 0]);
    let extra = MultilinearOp::from_triples(&v, 2, 1, [(vec![1, 0], 1, q(1))]).unwrap();
    let mut wrong = deltas.clone();
    wrong[1] = wrong[1].add(&t.rho(&t.symbol_from_multilinear(&extra).unwrap()));
    let rep = assoc_ncbv_check(ta, &wrong, 5).unwrap();
    assert!(!rep.ok, "{rep:?}");
}

#[test]
fn givental_examples() {
    let a = alg("upper_triangular");
    let nu = associative_family(&a);
    let id = MultilinearOp::identity(&a.space);
    let t0 = givental_tau0(&id, &nu, &a.space, 4).unwrap();
    assert_eq!(t0[&2], a.product.scale(&-Q::one()));
    let nil = alg("nilpotent2");
    let der = MultilinearOp::from_triples(&nil.space, 1, 0, [(vec![0], 0, q(1)), (vec![1], 1, q(2))]).unwrap();
    assert!(family_is_zero(&givental_tau0(&der, &associative_family(&nil), &nil.space, 5).unwrap()));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = random_operator(&a.space, 0, 0.6, &mut rng);
    let s = random_operator(&a.space, 0, 0.6, &mut rng);
    let lin = givental_tau0(&r.add_scaled(&s, &q(3)), &nu, &a.space, 4).unwrap();
    let (tr, ts) = (givental_tau0(&r, &nu, &a.space, 4).unwrap(), givental_tau0(&s, &nu, &a.space, 4).unwrap());
    for n in tr.keys() {
        assert_eq!(lin[n], tr[n].add_scaled(&ts[n], &q(3)));
    }
    let t1 = givental_step(&tr, &nu, &a.space, 4).unwrap();
    let m = &a.product;
    let half = crate::linalg::qr(1, 2);
    let expect = tr[&2]
        .compose(1, m, &a.space)
        .add(&tr[&2].compose(2, m, &a.space))
        .sub(&m.compose(1, &tr[&2], &a.space))
        .sub(&m.compose(2, &tr[&2], &a.space))
        .scale(&half);
    assert_eq!(t1[&3], expect);
    assert!(family_is_zero(&givental_step(&OpFamily::from([(2, MultilinearOp::zero(2, 0))]), &nu, &a.space, 4).unwrap()));
}

#[test]
fn recursion_matches_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for name in ["upper_triangular", "nilpotent2", "odd_square_zero", "unital_dual"] {
        let a = alg(name);
        let nu = associative_family(&a);
        for degree in [0, 1] {
            let r = random_operator(&a.space, degree, 0.6, &mut rng);
            for k in 0..=3 {
                let rec = givental_tau(&r, k, &nu, &a.space, 5).unwrap();
                let dir = givental_direct(&r, k, &a, 5).unwrap();
                assert!(families_equal(&rec, &dir), "{name} degree {degree} k {k}");
                let b = borjeson(&r, &a, k + 2).unwrap();
                assert_eq!(rec[&(k + 2)], b);
            }
        }
    }
}

#[test]
fn ncwdvv_and_higher_structure() {
    let f = builtin_fixture("hypercom_nu3").unwrap();
    let space = f.space();
    let nu = f.hypercom_family().unwrap();
    check_ncwdvv(&nu, &space, 6).unwrap();
    let mut broken = nu.clone();
    broken.insert(2, MultilinearOp::from_triples(&space, 2, 0, [(vec![0, 0], 0, q(1)), (vec![0, 1], 1, q(1))]).unwrap());
    assert!(check_ncwdvv(&broken, &space, 4).is_err());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let r = random_operator(&space, 0, 0.8, &mut rng);
    let t0 = givental_tau0(&r, &nu, &space, 5).unwrap();
    assert!(!t0[&3].is_zero());
    let t1 = givental_step(&t0, &nu, &space, 5).unwrap();
    assert!(t1.values().all(|t| t.is_homogeneous(&space)));
    assert!(givental_step(&t0, &nu, &space, 12).is_err());
}

#[test]
fn action_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let neg = |f: &OpFamily| f.iter().map(|(k, v)| (*k, v.scale(&-Q::one()))).collect::<OpFamily>();
    let sub = |f: &OpFamily, g: &OpFamily| f.iter().map(|(k, v)| (*k, v.sub(&g[k]))).collect::<OpFamily>();

    // commuting operators on a structure with ν₃ ≠ 0 act by commuting flows
    let f = builtin_fixture("hypercom_nu3").unwrap();
    let space = f.space();
    let nu = f.hypercom_family().unwrap();
    let r1 = random_operator(&space, 0, 0.8, &mut rng);
    let r2 = random_operator(&space, 0, 0.8, &mut rng);
    assert!(commutator(&r1, &r2, &space).is_zero());
    let d = |r: &MultilinearOp, x: &OpFamily| conjugation_action(r, x, &space);
    assert!(family_is_zero(&sub(&d(&r1, &d(&r2, &nu)), &d(&r2, &d(&r1, &nu)))));

    // with X_{rz^k} = (−1)^{k−1}τ^{(k)} and [X, Y] = DY·X − DX·Y one has
    // [X_a, X_b] = X_{[a,b]} for a = r₁z⁰ and b = r₁z⁰ or r₂z¹
    let a = alg("upper_triangular");
    let nu = associative_family(&a);
    let r1 = random_operator(&a.space, 0, 0.6, &mut rng);
    let r2 = random_operator(&a.space, 0, 0.6, &mut rng);
    let br = commutator(&r1, &r2, &a.space);
    assert!(!br.is_zero());
    let cap = 4;
    let x0 = |r: &MultilinearOp, x: &OpFamily| neg(&conjugation_action(r, x, &a.space));
    let lhs = sub(&x0(&r2, &x0(&r1, &nu)), &x0(&r1, &x0(&r2, &nu)));
    assert!(!family_is_zero(&lhs));
    assert!(families_equal(&lhs, &x0(&br, &nu)));

    let x = x0(&r1, &nu);
    let derivative = {
        let p = givental_step(&conjugation_action(&r2, &x, &a.space), &nu, &a.space, cap).unwrap();
        let q2 = givental_step(&conjugation_action(&r2, &nu, &a.space), &x, &a.space, cap).unwrap();
        p.iter().map(|(k, v)| (*k, v.add(&q2[k]))).collect::<OpFamily>()
    };
    let back = x0(&r1, &givental_tau(&r2, 1, &nu, &a.space, cap).unwrap());
    let bracket: OpFamily = derivative.iter().map(|(k, v)| (*k, v.sub(back.get(k).unwrap_or(&MultilinearOp::zero(*k, 0))))).collect();
    let target = givental_tau(&br, 1, &nu, &a.space, cap).unwrap();
    assert!(!family_is_zero(&target));
    assert!(families_equal(&bracket, &target));
}

#[test]
fn preservation_matches_direct_deformation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases: Vec<(String, Algebra, Vec<MultilinearOp>, bool)> = Vec::new();
    let ut = alg("upper_triangular");
    let inner = {
        let mut op = MultilinearOp::zero(1, 0);
        for i in 0..3 {
            let e = crate::linalg::SparseVec::from([(i, Q::one())]);
            let u = crate::linalg::SparseVec::from([(1, Q::one())]);
            let mut v = ut.mul(&u, &e);
            crate::linalg::sparse_add_scaled(&mut v, &ut.mul(&e, &u), &-Q::one());
            for (o, c) in v {
                op.add_entry(vec![i], o, c);
            }
        }
        op
    };
    cases.push(("inner derivation".into(), ut.clone(), vec![inner.clone(), MultilinearOp::identity(&ut.space)], true));
    cases.push(("identity at z^0".into(), ut.clone(), vec![MultilinearOp::identity(&ut.space)], false));
    let nil = alg("nilpotent2");
    let r = random_operator(&nil.space, 0, 0.8, &mut rng);
    let expect = nc_order(&r, &nil, 4).unwrap().is_some_and(|o| o <= 1);
    cases.push(("random on nilpotent2".into(), nil.clone(), vec![r], expect));
    let t = TensorAlgebraTrunc::new(vec![0, 0], 4).unwrap();
    let three = t.rho(&random_symbol(&t, 3, 3..=4, 0.5, &mut rng));
    let two = t.rho(&random_symbol(&t, 2, 2..=4, 0.5, &mut rng));
    let der = t.rho(&random_symbol(&t, 1, 1..=3, 0.5, &mut rng));
    cases.push(("order 3 at z^1".into(), t.algebra().clone(), vec![der.clone(), three.clone()], false));
    cases.push(("orders 1, 2, 3".into(), t.algebra().clone(), vec![der, two, three], true));
    let (bt, delta) = bar_construction(&alg("nilpotent2"), 4).unwrap();
    cases.push(("bar differential at z^1".into(), bt.algebra().clone(), vec![MultilinearOp::zero(1, 0), delta], true));
    for (name, a, r, expect) in cases {
        let rep = preserves_associative(&r, &a).unwrap();
        assert_eq!(rep.preserved, expect, "{name}");
        assert_eq!(rep.witness.is_none(), expect);
        assert_eq!(direct_deformation_vanishes(&r, &a, r.len() + 2).unwrap(), expect, "{name}");
    }
    let rep = preserves_associative(&[MultilinearOp::zero(1, 0), t.rho(&random_symbol(&t, 3, 3..=3, 0.6, &mut rng))], t.algebra()).unwrap();
    assert_eq!(rep.witness.as_ref().map(|w| (w.0, w.1.len())), Some((1, 3)));
}

#[test]
fn weyl_partial_compositions() {
    let space = WeylSpace::new(vec![0], 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let f = random_word_map(&space, &[(1, 1)], &mut rng);
    let g = random_word_map(&space, &[(1, 1)], &mut rng);
    let (fg, dropped) = weyl_partial(&f, &g, 1, &space);
    assert!(dropped.is_empty());
    let mut plain = WordMap::zero(0);
    for ((x, y), c) in g.entries() {
        for (z, d) in f.apply(y) {
            plain.insert(x.clone(), z, c * &d);
        }
    }
    assert_eq!(fg, plain);
    let space2 = WeylSpace::new(vec![0, 0], 3).unwrap();
    let f = random_word_map(&space2, &[(1, 2)], &mut rng);
    let g = random_word_map(&space2, &[(2, 1)], &mut rng);
    assert!(weyl_partial(&f, &g, 2, &space2).0.is_zero());
    let (fk, _) = weyl_star(&f, &g, 3, &space2);
    assert_eq!(fk.len(), 3);
    assert!(fk[1].is_zero() && fk[2].is_zero());
}

#[test]
fn weyl_lie_admissible() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let space = WeylSpace::new(vec![0, 0], 3).unwrap();
    for _ in 0..5 {
        let f = random_word_map(&space, &[(1, 1), (1, 2)], &mut rng);
        let g = random_word_map(&space, &[(1, 1), (2, 1)], &mut rng);
        let h = random_word_map(&space, &[(1, 1), (2, 2)], &mut rng);
        let (jac, dropped) = jacobiator(&f, &g, &h, 2, &space);
        assert!(dropped.is_empty(), "{dropped:?}");
        assert!(jac.iter().all(WordMap::is_zero));
    }
    let space = WeylSpace::new(vec![0, 0], 6).unwrap();
    let shapes = [(1, 1), (1, 2), (2, 1), (2, 2)];
    for _ in 0..3 {
        let f = random_word_map(&space, &shapes, &mut rng);
        let g = random_word_map(&space, &shapes, &mut rng);
        let h = random_word_map(&space, &shapes, &mut rng);
        let (jac, dropped) = jacobiator(&f, &g, &h, 4, &space);
        assert!(dropped.is_empty(), "{dropped:?}");
        assert!(jac.iter().all(WordMap::is_zero));
    }
}
