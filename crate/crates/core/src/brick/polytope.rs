use super::config::SubspaceConfig;
use crate::error::{invalid, Result};
use crate::linalg::{q, Matrix, Q};
use crate::lp::extreme_points;
use crate::tree::{enumerate_trees, PlanarTree};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    pub ambient: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl LatticePolytope {
    fn rational(&self) -> Vec<Vec<Q>> {
        self.vertices.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()
    }

    /// Whether the listed points are exactly the extreme points of their hull.
    pub fn vertices_are_extreme(&self) -> bool {
        extreme_points(&self.rational()).len() == self.vertices.len()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vec<i64>> {
        self.vertices.iter().cloned().collect()
    }

    /// One integer point per line.
    pub fn to_poly_text(&self) -> String {
        self.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect()
    }
}

/// Coordinate i is |D^l(v_i)|·|D^r(v_i)| for the vertex v_i separating leaves i and i+1.
pub fn loday_vertex(t: &PlanarTree) -> Result<Vec<i64>> {
    if !t.is_binary() {
        return invalid("Loday vertices are defined for binary trees");
    }
    fn go(t: &PlanarTree, start: usize, out: &mut [i64]) {
        if let PlanarTree::Node(ch) = t {
            let l = ch[0].leaves();
            let r = ch[1].leaves();
            out[start + l - 1] = (l * r) as i64;
            go(&ch[0], start, out);
            go(&ch[1], start + l, out);
        }
    }
    let mut out = vec![0; t.leaves() - 1];
    go(t, 0, &mut out);
    Ok(out)
}

pub fn loday_polytope(n: usize) -> Result<LatticePolytope> {
    if n < 2 {
        return invalid("Loday polytopes start at n = 2");
    }
    let vertices = enumerate_trees(n, true).iter().map(loday_vertex).collect::<Result<_>>()?;
    Ok(LatticePolytope { ambient: n - 1, vertices })
}

/// Newton polytope of ∏_{i≤j}(t_i+…+t_j) as the Minkowski sum of the interval
/// simplices Δ_{[i,j]}. A generic direction c is maximised on the sum at the sum
/// of the maximisers e_{argmax c|[i,j]}, which depends only on the order of the
/// entries of c, so the vertices are read off from all orderings.
pub fn loday_via_minkowski(n: usize) -> Result<LatticePolytope> {
    if n < 2 {
        return invalid("Loday polytopes start at n = 2");
    }
    let d = n - 1;
    let mut found = BTreeSet::new();
    let mut rank: Vec<usize> = (0..d).collect();
    permutations(&mut rank, 0, &mut |c| {
        let mut v = vec![0i64; d];
        for i in 0..d {
            for j in i..d {
                let k = (i..=j).max_by_key(|&k| c[k]).unwrap();
                v[k] += 1;
            }
        }
        found.insert(v);
    });
    Ok(LatticePolytope { ambient: d, vertices: found.into_iter().collect() })
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Sum of the rays of the cone of T: a functional minimised on L_n exactly at p_T.
pub fn supporting_functional(t: &PlanarTree) -> Vec<i64> {
    let n = t.leaves();
    let mut y = vec![0i64; n - 1];
    for (l, r) in t.edge_intervals() {
        for (g, yg) in indicator(n, l, r).iter().zip(y.iter_mut()) {
            *yg += g;
        }
    }
    y
}

/// Exact extremality certificate for the Loday vertices via the fan functionals.
pub fn loday_vertices_certified(n: usize) -> Result<bool> {
    let trees = enumerate_trees(n, true);
    let verts: Vec<Vec<i64>> = trees.iter().map(loday_vertex).collect::<Result<_>>()?;
    let dot = |y: &[i64], x: &[i64]| y.iter().zip(x).map(|(a, b)| a * b).sum::<i64>();
    Ok(trees.iter().enumerate().all(|(a, t)| {
        let y = supporting_functional(t);
        let best = dot(&y, &verts[a]);
        verts.iter().enumerate().all(|(b, v)| b == a || dot(&y, v) > best)
    }))
}

/// e_{1,2}+…+e_{n−1,n} plus the missing basis vector of every interior V_{l,r}
/// at the torus fixed point of T.
pub fn vertex_missing_basis(t: &PlanarTree) -> Result<Vec<i64>> {
    let c = SubspaceConfig::fixed_point(t)?;
    let n = t.leaves();
    let mut out = vec![1i64; n - 1];
    for a in 1..n.saturating_sub(1) {
        for b in a..n - 1 {
            let miss = c.space(a, b).missing_coordinates(a - 1, b + 1);
            if miss.len() != 1 {
                return invalid("fixed point space is not a coordinate hyperplane");
            }
            out[miss[0]] += 1;
        }
    }
    Ok(out)
}

/// Complete simplicial fan modulo the diagonal: rays live in Z^{n−1}/Z(1,…,1),
/// written with the last coordinate normalised to zero and dropped.
#[derive(Clone, Debug, Serialize)]
pub struct Fan {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub ray_intervals: Vec<(usize, usize)>,
    pub cones: Vec<Vec<usize>>,
    pub cone_trees: Vec<String>,
    pub walls: Vec<Wall>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Wall {
    pub cones: (usize, usize),
    pub rays: Vec<usize>,
    /// 1-based (j−1, k) with wall on y_{j−1} = y_k.
    pub hyperplane: (usize, usize),
}

fn indicator(n: usize, l: usize, r: usize) -> Vec<i64> {
    (1..n).map(|g| i64::from(l <= g && g < r)).collect()
}

fn reduce_mod_diagonal(v: &[i64]) -> Vec<i64> {
    let last = *v.last().unwrap();
    v[..v.len() - 1].iter().map(|x| x - last).collect()
}

/// Normal fan of L_n: one ray per facet [l,r], one maximal cone per binary tree.
pub fn normal_fan(n: usize) -> Result<Fan> {
    if n < 3 {
        return invalid("the fan is defined for n >= 3");
    }
    let ray_intervals: Vec<(usize, usize)> =
        (1..=n).flat_map(|l| (l + 1..=n).map(move |r| (l, r))).filter(|&(l, r)| !(l == 1 && r == n)).collect();
    let rays = ray_intervals.iter().map(|&(l, r)| reduce_mod_diagonal(&indicator(n, l, r))).collect();
    let trees = enumerate_trees(n, true);
    let cones: Vec<Vec<usize>> = trees
        .iter()
        .map(|t| {
            let mut c: Vec<usize> = t.edge_intervals().iter().map(|e| ray_intervals.iter().position(|x| x == e).unwrap()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let mut walls = Vec::new();
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let shared: Vec<usize> = cones[a].iter().filter(|x| cones[b].contains(x)).copied().collect();
            if shared.len() + 1 == n - 2 {
                let ea = ray_intervals[*cones[a].iter().find(|x| !shared.contains(x)).unwrap()];
                let eb = ray_intervals[*cones[b].iter().find(|x| !shared.contains(x)).unwrap()];
                let (left, right) = if ea.0 < eb.0 { (ea, eb) } else { (eb, ea) };
                walls.push(Wall { cones: (a, b), rays: shared, hyperplane: (right.0 - 1, left.1) });
            }
        }
    }
    Ok(Fan { rank: n - 2, rays, ray_intervals, cones, cone_trees: trees.iter().map(|t| t.to_text()).collect(), walls })
}

impl Fan {
    fn leaves(&self) -> usize {
        self.rank + 2
    }

    /// Maximal cones are simplicial of full rank.
    pub fn cones_strongly_convex(&self) -> bool {
        self.cones.iter().all(|c| {
            let rows = c.iter().map(|&i| self.rays[i].iter().map(|&x| q(x)).collect()).collect();
            c.len() == self.rank && Matrix::from_rows(rows, self.rank).rank() == self.rank
        })
    }

    /// For every pair of maximal cones, y ↦ ⟨y, p_T − p_T'⟩ separates them
    /// and vanishes on exactly the shared rays, so they meet in a common face.
    pub fn intersections_are_faces(&self) -> Result<bool> {
        let n = self.leaves();
        let trees = enumerate_trees(n, true);
        let verts: Vec<Vec<i64>> = trees.iter().map(loday_vertex).collect::<Result<_>>()?;
        let full: Vec<Vec<i64>> = self.ray_intervals.iter().map(|&(l, r)| indicator(n, l, r)).collect();
        let dot = |y: &[i64], x: &[i64]| y.iter().zip(x).map(|(a, b)| a * b).sum::<i64>();
        for a in 0..self.cones.len() {
            for b in a + 1..self.cones.len() {
                let h: Vec<i64> = verts[a].iter().zip(&verts[b]).map(|(x, y)| x - y).collect();
                let zero_a: BTreeSet<usize> = self.cones[a].iter().filter(|&&r| dot(&full[r], &h) == 0).copied().collect();
                let zero_b: BTreeSet<usize> = self.cones[b].iter().filter(|&&r| dot(&full[r], &h) == 0).copied().collect();
                let shared: BTreeSet<usize> = self.cones[a].iter().filter(|x| self.cones[b].contains(x)).copied().collect();
                let signs = self.cones[a].iter().all(|&r| dot(&full[r], &h) <= 0) && self.cones[b].iter().all(|&r| dot(&full[r], &h) >= 0);
                if !signs || zero_a != shared || zero_b != shared {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Each wall lies on its hyperplane y_{j−1} = y_k while the two opposite rays do not.
    pub fn walls_on_hyperplanes(&self) -> bool {
        let n = self.leaves();
        self.walls.iter().all(|w| {
            let (u, v) = w.hyperplane;
            let on = |r: usize| {
                let (l, rr) = self.ray_intervals[r];
                let f = indicator(n, l, rr);
                f[u - 1] == f[v - 1]
            };
            let opposite = self.cones[w.cones.0].iter().chain(&self.cones[w.cones.1]).filter(|r| !w.rays.contains(r));
            w.rays.iter().all(|&r| on(r)) && opposite.into_iter().all(|&r| !on(r))
        })
    }

    /// Every codimension-one face of a maximal cone is shared by exactly two maximal cones.
    pub fn is_complete(&self) -> bool {
        let mut count = std::collections::BTreeMap::<Vec<usize>, usize>::new();
        for c in &self.cones {
            for skip in 0..c.len() {
                let mut f = c.clone();
                f.remove(skip);
                *count.entry(f).or_default() += 1;
            }
        }
        count.values().all(|&k| k == 2) && count.len() == self.walls.len()
    }
}
