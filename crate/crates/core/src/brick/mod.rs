//! Brick manifolds as configurations of rational subspaces, and the Loday
//! polytopes and fans attached to them.

mod betti;
mod config;
mod polytope;
mod subspace;

pub use betti::{complex_betti, euler_characteristic, f_vector, h_vector, real_betti, real_euler_closed};
pub use config::{random_config, random_nonzero, stratum_dimension, SubspaceConfig};
pub use polytope::{loday_polytope, loday_vertices_certified, supporting_functional, loday_vertex, loday_via_minkowski, normal_fan, vertex_missing_basis, Fan, LatticePolytope, Wall};
pub use subspace::Subspace;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, Q};
    use crate::ordinal::Ordinal;
    use crate::tree::{catalan, enumerate_trees, narayana, PlanarTree};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b2(first: u32) -> SubspaceConfig {
        SubspaceConfig::point(Ordinal::range(first, 2)).unwrap()
    }

    #[test]
    fn two_point_compositions() {
        let l = b2(1).compose(1, &b2(10)).unwrap();
        assert_eq!(l.ordinal().labels(), &[10, 11, 2]);
        assert_eq!(l.space(1, 1), Subspace::coordinate(2, 0, 1));
        let r = b2(1).compose(2, &b2(10)).unwrap();
        assert_eq!(r.space(1, 1), Subspace::coordinate(2, 1, 2));
        l.validate().unwrap();
        r.validate().unwrap();
    }

    #[test]
    fn validation_rejects_bad_spaces() {
        let mut c = SubspaceConfig::open_stratum_point(4, &[q(2), q(3)]).unwrap();
        c.validate().unwrap();
        let text = c.to_text().replace("V 2 2\n  1 2 0", "V 2 2\n  0 0 1");
        assert!(SubspaceConfig::from_text(&text).is_err());
        c = SubspaceConfig::from_text(&c.to_text()).unwrap();
        assert_eq!(c.stratum(), PlanarTree::corolla(4));
    }

    #[test]
    fn four_leaf_blowup_stratum() {
        // V22 = V33 = G(2,3) with V23 a generic line in span(e12, e34) plus G(2,3).
        let t = PlanarTree::parse("(1,(2,3),4)").unwrap();
        let c = SubspaceConfig::in_stratum(&t, &mut || q(5)).unwrap();
        assert_eq!(c.space(1, 1), Subspace::coordinate(3, 1, 2));
        assert_eq!(c.space(2, 2), Subspace::coordinate(3, 1, 2));
        let v23 = c.space(1, 2);
        assert!(v23.contains(&Subspace::coordinate(3, 1, 2)) && !v23.is_coordinate());
        assert_eq!(c.stratum(), t);
    }

    #[test]
    fn fixed_points_recover_binary_trees() {
        for n in 2..=6 {
            for t in enumerate_trees(n, true) {
                let c = SubspaceConfig::fixed_point(&t).unwrap();
                c.validate().unwrap();
                assert_eq!(c.stratum(), t);
                assert_eq!(stratum_dimension(&t), 0);
            }
        }
    }

    #[test]
    fn random_points_land_in_their_strata() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = rand::Rng::gen_range(&mut rng, 1..=7);
            let (t, c) = random_config(n, &mut rng).unwrap();
            c.validate().unwrap();
            assert_eq!(c.stratum(), t);
        }
    }

    #[test]
    fn divisor_bijection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=7usize {
            for l in 0..n {
                for r in l + 1..n {
                    if l == 0 && r == n - 1 {
                        continue;
                    }
                    let p = n - (r - l);
                    let outer: Vec<Q> = (0..p.saturating_sub(2)).map(|_| random_nonzero(&mut rng)).collect();
                    let inner: Vec<Q> = (0..r - l - 1).map(|_| random_nonzero(&mut rng)).collect();
                    let c1 = SubspaceConfig::open_stratum_point(p, &outer).unwrap();
                    let c2 = SubspaceConfig::open_stratum_point(r - l + 1, &inner).unwrap();
                    let c = c1.compose_at_position(l, &c2).unwrap();
                    c.validate().unwrap();
                    let mut t = vec![PlanarTree::Leaf; p];
                    t[l] = PlanarTree::corolla(r - l + 1);
                    assert_eq!(c.stratum(), PlanarTree::Node(t));
                    let (d1, d2) = c.decompose(l, r).unwrap();
                    assert_eq!((d1, d2), (c1, c2));
                }
            }
        }
    }

    #[test]
    fn operad_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let draw = |start: u32, rng: &mut ChaCha8Rng| {
            let n = rand::Rng::gen_range(rng, 1..=4);
            random_config(n, rng).unwrap().1.relabel(Ordinal::range(start, n)).unwrap()
        };
        for _ in 0..120 {
            let a = draw(1, &mut rng);
            let b = draw(20, &mut rng);
            let c = draw(40, &mut rng);
            let la = a.ordinal().labels().to_vec();
            let lb = b.ordinal().labels().to_vec();
            let i = la[rand::Rng::gen_range(&mut rng, 0..la.len())];
            let j = lb[rand::Rng::gen_range(&mut rng, 0..lb.len())];
            let left = a.compose(i, &b).unwrap().compose(j, &c).unwrap();
            let right = a.compose(i, &b.compose(j, &c).unwrap()).unwrap();
            left.validate().unwrap();
            assert_eq!(left, right);
            if la.len() > 1 {
                let k = *la.iter().find(|&&k| k != i).unwrap();
                let x = a.compose(i, &b).unwrap().compose(k, &c).unwrap();
                let y = a.compose(k, &c).unwrap().compose(i, &b).unwrap();
                x.validate().unwrap();
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn stratum_dimensions() {
        assert_eq!(stratum_dimension(&PlanarTree::corolla(5)), 3);
        let t = PlanarTree::parse("(1,(2,3),4)").unwrap();
        assert_eq!(stratum_dimension(&t), 1);
    }

    #[test]
    fn loday_small() {
        assert_eq!(loday_polytope(2).unwrap().vertices, vec![vec![1]]);
        let l3 = loday_polytope(3).unwrap().vertex_set();
        assert_eq!(l3, [vec![1, 2], vec![2, 1]].into_iter().collect());
        assert_eq!(loday_vertex(&PlanarTree::left_comb(3)).unwrap(), vec![1, 2]);
        assert_eq!(vertex_missing_basis(&PlanarTree::left_comb(3)).unwrap(), vec![1, 2]);
        assert_eq!(vertex_missing_basis(&PlanarTree::right_comb(3)).unwrap(), vec![2, 1]);
        assert!(loday_vertex(&PlanarTree::corolla(3)).is_err());
    }

    #[test]
    fn three_constructions_agree() {
        for n in 2..=6usize {
            let p = loday_polytope(n).unwrap();
            assert_eq!(p.vertices.len() as u128, catalan(n - 1));
            let total = (n * (n - 1) / 2) as i64;
            assert!(p.vertices.iter().all(|v| v.iter().sum::<i64>() == total));
            assert_eq!(loday_via_minkowski(n).unwrap().vertex_set(), p.vertex_set());
            for t in enumerate_trees(n, true) {
                assert_eq!(vertex_missing_basis(&t).unwrap(), loday_vertex(&t).unwrap());
            }
            assert!(loday_vertices_certified(n).unwrap());
            if n <= 5 {
                assert!(p.vertices_are_extreme());
            }
        }
        assert_eq!(loday_via_minkowski(7).unwrap().vertex_set(), loday_polytope(7).unwrap().vertex_set());
        assert!(loday_vertices_certified(7).unwrap());
    }

    #[test]
    fn fans() {
        let f3 = normal_fan(3).unwrap();
        assert_eq!(f3.rays.len(), 2);
        let f4 = normal_fan(4).unwrap();
        assert_eq!((f4.cones.len(), f4.walls.len()), (5, 5));
        for n in 3..=6 {
            let f = normal_fan(n).unwrap();
            assert!(f.cones_strongly_convex());
            assert!(f.intersections_are_faces().unwrap());
            assert!(f.walls_on_hyperplanes());
            assert!(f.is_complete());
        }
        let f3w = &f3.walls[0];
        assert_eq!(f3w.hyperplane, (1, 2));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(f_vector(4), vec![5, 5, 1]);
        assert_eq!(h_vector(4), vec![1, 3, 1]);
        for n in 2..=7usize {
            let h = h_vector(n);
            for (k, x) in h.iter().enumerate() {
                assert_eq!(*x as u128, narayana(n as u64 - 1, k as u64 + 1));
            }
        }
        assert_eq!(real_betti(4), vec![1, 2]);
        assert_eq!(real_betti(5), vec![1, 3, 2]);
        for n in 2..=9 {
            assert_eq!(euler_characteristic(&real_betti(n)), real_euler_closed(n));
        }
        assert_eq!(complex_betti(4), vec![1, 0, 3, 0, 1]);
    }
}
