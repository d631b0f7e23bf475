use super::presentation::{Homogeneity, Presentation};
use crate::error::{invalid, Result};
use crate::free::{suspend, Alphabet, Element, Generator, Monomial};
use crate::linalg::{sparse_rank, Matrix, SparseVec, Q};
use num_traits::Zero;

/// Two-vertex monomials of arity n, in canonical order.
pub fn quadratic_monomials(a: &Alphabet, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for g in a.ids() {
        let k = a.get(g).arity;
        for h in a.ids() {
            let l = a.get(h).arity;
            if k + l != n + 1 {
                continue;
            }
            let lower = a.corolla(h);
            for i in 0..k {
                let mut ch = vec![Monomial::Leaf; k];
                ch[i] = lower.clone();
                out.push(Monomial::Node(g, ch));
            }
        }
    }
    out.sort();
    out
}

/// Coefficient matrix of elements against a list of monomials.
pub fn pairing_matrix(rels: &[&Element], cols: &[Monomial]) -> Matrix {
    let rows = rels.iter().map(|r| cols.iter().map(|m| r.coefficient(m)).collect()).collect();
    Matrix::from_rows(rows, cols.len())
}

fn span_rank(rels: &[&Element], cols: &[Monomial]) -> usize {
    pairing_matrix(rels, cols).rank()
}

fn max_quadratic_arity(a: &Alphabet) -> usize {
    2 * a.gens().iter().map(|g| g.arity).max().unwrap_or(1) - 1
}

/// Koszul dual presentation: generators shift to degree arity-2-d and the
/// relations are the annihilator of the desuspended relations under the
/// pairing in which distinct monomials are orthogonal and each has square 1.
pub fn koszul_dual(p: &Presentation, names: Option<&[&str]>) -> Result<Presentation> {
    if p.homogeneity != Homogeneity::Quadratic {
        return invalid(format!("{} is not quadratic", p.name));
    }
    let a = &p.alphabet;
    if let Some(ns) = names {
        if ns.len() != a.len() {
            return invalid("dual name list differs in length from the alphabet");
        }
    }
    let gens = a
        .gens()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let name = names.map(|ns| ns[k].to_string()).unwrap_or_else(|| g.name.clone());
            Generator::new(name, g.arity, g.arity as i64 - 2 - g.degree)
        })
        .collect();
    let dual = Alphabet::new(gens)?;
    let desusp: Vec<Element> = p.relations.iter().map(|r| suspend(r, -1, a)).collect::<Result<_>>()?;
    let mut rels = Vec::new();
    for n in 1..=max_quadratic_arity(a) {
        let cols = quadratic_monomials(a, n);
        if cols.is_empty() {
            continue;
        }
        let rows: Vec<&Element> = desusp.iter().filter(|r| r.arity() == n).collect();
        let kernel = if rows.is_empty() {
            Matrix::identity(cols.len()).row_vecs()
        } else {
            let k = pairing_matrix(&rows, &cols).kernel();
            if k.is_empty() {
                Vec::new()
            } else {
                let (r, piv) = Matrix::from_rows(k, cols.len()).rref();
                (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
            }
        };
        for v in kernel {
            let e = Element::from_terms(n, v.into_iter().zip(&cols).filter(|(c, _)| !c.is_zero()).map(|(c, m)| (c, m.clone())))?;
            rels.push(e);
        }
    }
    let name = format!("{}^!", p.name);
    Presentation::new(name, dual, rels)
}

/// Whether two relation lists span the same space in every arity.
pub fn same_relation_space(r1: &[Element], r2: &[Element]) -> bool {
    let arities: std::collections::BTreeSet<usize> = r1.iter().chain(r2).map(|r| r.arity()).collect();
    for n in arities {
        let mut cols: Vec<Monomial> = r1.iter().chain(r2).filter(|r| r.arity() == n).flat_map(|r| r.terms().keys().cloned()).collect();
        cols.sort();
        cols.dedup();
        let x: Vec<&Element> = r1.iter().filter(|r| r.arity() == n).collect();
        let y: Vec<&Element> = r2.iter().filter(|r| r.arity() == n).collect();
        let both: Vec<&Element> = x.iter().chain(&y).copied().collect();
        let (rx, ry, rb) = (span_rank(&x, &cols), span_rank(&y, &cols), span_rank(&both, &cols));
        if rx != rb || ry != rb {
            return false;
        }
    }
    true
}

/// Per-arity report that two quadratic relation spaces annihilate each other
/// and have complementary dimensions: `(n, dim r1, dim r2, total)`.
pub fn annihilator_check(a: &Alphabet, r1: &[Element], r2: &[Element], n: usize) -> (bool, usize, usize, usize) {
    let cols = quadratic_monomials(a, n);
    let x: Vec<&Element> = r1.iter().filter(|r| r.arity() == n).collect();
    let y: Vec<&Element> = r2.iter().filter(|r| r.arity() == n).collect();
    let orthogonal = x.iter().all(|u| {
        y.iter().all(|v| {
            let mut s = Q::zero();
            for (m, c) in u.terms() {
                s += c * v.coefficient(m);
            }
            s.is_zero()
        })
    });
    let to_sparse = |e: &&Element| -> SparseVec {
        cols.iter().enumerate().filter_map(|(k, m)| {
            let c = e.coefficient(m);
            (!c.is_zero()).then_some((k, c))
        }).collect()
    };
    let dx = sparse_rank(x.iter().map(to_sparse), cols.len());
    let dy = sparse_rank(y.iter().map(to_sparse), cols.len());
    (orthogonal && dx + dy == cols.len(), dx, dy, cols.len())
}
