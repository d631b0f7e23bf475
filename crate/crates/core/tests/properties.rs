use ncop::brick::{h_vector, loday_vertex, random_config, vertex_missing_basis};
use ncop::givental::{
    borjeson, borjeson_closed, builtin_fixture, commutator, random_operator, AlgebraFixture, GradedSpace,
    TensorAlgebraTrunc,
};
use ncop::intersection::{correlator_closed, correlator_trr, correlator_trr_with, CorrelatorIndex, InputRelation};
use ncop::ordinal::Ordinal;
use ncop::tree::{catalan, enumerate_trees, PlanarTree};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn tree_text_round_trip(n in 1usize..7, pick in any::<prop::sample::Index>()) {
        let trees = enumerate_trees(n, false);
        let t = &trees[pick.index(trees.len())];
        prop_assert_eq!(&PlanarTree::parse(&t.to_text()).unwrap(), t);
        prop_assert_eq!(&PlanarTree::deserialize(&t.serialize()).unwrap(), t);
    }

    #[test]
    fn loday_vertices(n in 2usize..8, pick in any::<prop::sample::Index>()) {
        let trees = enumerate_trees(n, true);
        prop_assert_eq!(trees.len() as u128, catalan(n - 1));
        let t = &trees[pick.index(trees.len())];
        let v = loday_vertex(t).unwrap();
        prop_assert_eq!(v.iter().sum::<i64>(), (n * (n - 1) / 2) as i64);
        prop_assert!(v.iter().all(|&x| x >= 1));
        prop_assert_eq!(vertex_missing_basis(t).unwrap(), v);
    }

    #[test]
    fn h_vector_is_palindromic(n in 2usize..9) {
        let h = h_vector(n);
        let mut r = h.clone();
        r.reverse();
        prop_assert_eq!(h, r);
    }

    #[test]
    fn brick_composition_is_associative(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, c in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_config(a, &mut rng).unwrap().1.relabel(Ordinal::range(1, a)).unwrap();
        let y = random_config(b, &mut rng).unwrap().1.relabel(Ordinal::range(10, b)).unwrap();
        let z = random_config(c, &mut rng).unwrap().1.relabel(Ordinal::range(20, c)).unwrap();
        let i = 1 + (seed as u32 % a as u32);
        let j = 10 + ((seed >> 8) as u32 % b as u32);
        let left = x.compose(i, &y).unwrap().compose(j, &z).unwrap();
        let right = x.compose(i, &y.compose(j, &z).unwrap()).unwrap();
        prop_assert!(left.validate().is_ok());
        prop_assert_eq!(left.len(), a + b + c - 2);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn stratum_of_random_point(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, c) = random_config(n, &mut rng).unwrap();
        prop_assert_eq!(c.stratum(), t);
    }

    #[test]
    fn correlator_engines_agree(ds in prop::collection::vec(0u32..3, 2..7), d0 in 0u32..4) {
        let i = CorrelatorIndex::new(d0, ds).unwrap();
        let c = correlator_closed(&i);
        prop_assert_eq!(correlator_trr(&i), c);
        prop_assert_eq!(correlator_trr_with(&i, InputRelation::Right), c);
        prop_assert!(c == 0 || c == 1);
    }

    #[test]
    fn borjeson_forms_agree(seed in any::<u64>(), degree in -1i64..2, pick in 0usize..4) {
        let name = ["nilpotent2", "upper_triangular", "odd_square_zero", "unital_dual"][pick];
        let a = builtin_fixture(name).unwrap().algebra().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_operator(&a.space, degree, 0.5, &mut rng);
        for n in 1..=4 {
            prop_assert_eq!(a.admissible_part(&borjeson(&d, &a, n).unwrap()), borjeson_closed(&d, &a, n).unwrap());
        }
    }

    #[test]
    fn commutator_is_antisymmetric(seed in any::<u64>(), x in 0i64..2, y in 0i64..2) {
        let space = GradedSpace::with_degrees(vec![0, 1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_operator(&space, x, 0.5, &mut rng);
        let g = random_operator(&space, y, 0.5, &mut rng);
        let fg = commutator(&f, &g, &space);
        let gf = commutator(&g, &f, &space);
        let sign = if (x * y) % 2 == 0 { -1 } else { 1 };
        prop_assert_eq!(fg, gf.scale(&ncop::linalg::Q::from_integer(sign.into())));
    }

    #[test]
    fn fixtures_round_trip_through_json(pick in 0usize..4) {
        let name = ["nilpotent2", "upper_triangular", "odd_square_zero", "unital_dual"][pick];
        let f = builtin_fixture(name).unwrap();
        let g = AlgebraFixture::from_json(&f.to_json()).unwrap();
        prop_assert_eq!(g.algebra().unwrap(), f.algebra().unwrap());
    }

    #[test]
    fn rho_decompose_round_trip(seed in any::<u64>(), k in 1usize..4) {
        let t = TensorAlgebraTrunc::new(vec![0, 0], 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ncop::givental::random_symbol(&t, k, k..=4, 0.3, &mut rng);
        prop_assume!(!f.is_zero());
        prop_assert_eq!(t.decompose(&t.rho(&f)).unwrap(), vec![(k, f)]);
    }
}
