use super::multilinear::{koszul, Algebra, GradedSpace, LengthFilter, MultilinearOp};
use crate::error::{invalid, Error, Result};
use crate::linalg::Q;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Non-unital tensor algebra T̄(V) in which words longer than the cap vanish.
#[derive(Clone, Debug)]
pub struct TensorAlgebraTrunc {
    letters: Vec<i64>,
    cap: usize,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    algebra: Algebra,
}

impl TensorAlgebraTrunc {
    /// `letters` are the degrees of a basis of V.
    pub fn new(letters: Vec<i64>, cap: usize) -> Result<Self> {
        if cap == 0 || letters.is_empty() {
            return invalid("the truncation length and dim V must be positive");
        }
        let total: usize = (1..=cap).map(|l| letters.len().pow(l as u32)).sum();
        if total > 20_000 {
            return Err(Error::Resource(format!("T(V) truncated at {cap} has {total} words")));
        }
        let mut words: Vec<Vec<usize>> = letters.iter().enumerate().map(|(i, _)| vec![i]).collect();
        let mut layer = words.clone();
        for _ in 1..cap {
            layer = layer.iter().flat_map(|w| (0..letters.len()).map(move |x| [w.as_slice(), &[x]].concat())).collect();
            words.extend(layer.iter().cloned());
        }
        let index: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let alpha = "xyzuvw";
        let labels = words
            .iter()
            .map(|w| w.iter().map(|&x| alpha.chars().nth(x).map(String::from).unwrap_or_else(|| format!("v{x}"))).collect())
            .collect();
        let degrees = words.iter().map(|w| w.iter().map(|&x| letters[x]).sum()).collect();
        let space = GradedSpace::new(degrees, labels)?;
        let mut product = MultilinearOp::zero(2, 0);
        for (i, a) in words.iter().enumerate() {
            for (j, b) in words.iter().enumerate() {
                if a.len() + b.len() <= cap {
                    product.add_entry(vec![i, j], index[&[a.as_slice(), b].concat()], Q::one());
                }
            }
        }
        let filter = Some(LengthFilter { lengths: words.iter().map(Vec::len).collect(), cap });
        let algebra = Algebra { space, product, filter };
        Ok(TensorAlgebraTrunc { letters, cap, words, index, algebra })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim_v(&self) -> usize {
        self.letters.len()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn word_index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    fn letters_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&x| self.letters[x]).sum()
    }

    /// Embeds a map V^⊗k → V as a k-symbol.
    pub fn symbol_from_multilinear(&self, op: &MultilinearOp) -> Result<MultilinearOp> {
        let mut out = MultilinearOp::zero(1, op.degree());
        for (key, v) in op.entries() {
            if key.len() > self.cap || key.iter().chain(v.keys()).any(|&x| x >= self.letters.len()) {
                return invalid("the map does not act on V within the truncation");
            }
            for (&o, c) in v {
                out.add_entry(vec![self.index[key]], o, c.clone());
            }
        }
        Ok(out)
    }

    /// ρ(f): every window of a word matching an input of f is replaced by
    /// the value of f, words past the cap being dropped.
    pub fn rho(&self, f: &MultilinearOp) -> MultilinearOp {
        assert_eq!(f.arity(), 1, "symbols are unary");
        let mut out = MultilinearOp::zero(1, f.degree());
        let by_len: Vec<(usize, &Vec<usize>, &crate::linalg::SparseVec)> =
            f.entries().iter().map(|(k, v)| (self.words[k[0]].len(), &self.words[k[0]], v)).collect();
        for (wi, w) in self.words.iter().enumerate() {
            for &(k, pat, v) in &by_len {
                if k > w.len() {
                    continue;
                }
                for p in 0..=w.len() - k {
                    if &w[p..p + k] != pat.as_slice() {
                        continue;
                    }
                    let sign = koszul(f.degree(), self.letters_degree(&w[..p]));
                    for (&o, c) in v {
                        let u = &self.words[o];
                        let new = [&w[..p], u.as_slice(), &w[p + k..]].concat();
                        if let Some(&ni) = self.index.get(&new) {
                            out.add_entry(vec![wi], ni, c * &sign);
                        }
                    }
                }
            }
        }
        out
    }

    /// The part of a unary operator on words of length exactly k.
    pub fn component(&self, d: &MultilinearOp, k: usize) -> MultilinearOp {
        d.restrict(|key| self.words[key[0]].len() == k)
    }

    /// Recovers symbols f₁,…,f_k with D = Σρ(f_j) by peeling the lowest
    /// component; returns the nonzero `(length, symbol)` pairs.
    pub fn decompose(&self, d: &MultilinearOp) -> Result<Vec<(usize, MultilinearOp)>> {
        let mut rest = d.clone();
        let mut out = Vec::new();
        for j in 1..=self.cap {
            let piece = self.component(&rest, j);
            if piece.is_zero() {
                continue;
            }
            if j == self.cap {
                return Err(Error::Resource(format!("a component on words of length {j} reaches the truncation; increase the cap")));
            }
            rest = rest.sub(&self.rho(&piece));
            out.push((j, piece));
        }
        debug_assert!(rest.is_zero());
        Ok(out)
    }

    /// Sum of the ρ images of a list of symbols.
    pub fn rho_sum(&self, pieces: &[(usize, MultilinearOp)]) -> MultilinearOp {
        let mut out = MultilinearOp::zero(1, pieces.first().map(|p| p.1.degree()).unwrap_or(0));
        for (_, f) in pieces {
            out = out.add(&self.rho(f));
        }
        out
    }

    /// A k-symbol with the given entries `(input word, output word, c)`.
    pub fn symbol(&self, degree: i64, entries: &[(Vec<usize>, Vec<usize>, Q)]) -> Result<MultilinearOp> {
        let mut triples = Vec::new();
        for (a, b, c) in entries {
            let (Some(i), Some(o)) = (self.word_index(a), self.word_index(b)) else {
                return invalid("symbol words must be nonempty and within the truncation");
            };
            if !c.is_zero() {
                triples.push((vec![i], o, c.clone()));
            }
        }
        MultilinearOp::from_triples(&self.algebra.space, 1, degree, triples)
    }
}

/// Bar construction T̄(s⁻¹A) of an algebra concentrated in degree 0, with
/// the differential Δ = ρ(s⁻¹m(s⊗s)).
pub fn bar_construction(a: &Algebra, cap: usize) -> Result<(TensorAlgebraTrunc, MultilinearOp)> {
    if a.space.degrees().iter().any(|&d| d != 0) {
        return invalid("the bar construction fixture expects an ungraded algebra");
    }
    a.require_associative()?;
    let t = TensorAlgebraTrunc::new(vec![-1; a.dim()], cap)?;
    let mu = a.product.scale(&-Q::one());
    let mut shifted = MultilinearOp::zero(2, 1);
    for (k, out, c) in mu.triples() {
        shifted.add_entry(k, out, c);
    }
    let sym = t.symbol_from_multilinear(&shifted)?;
    let delta = t.rho(&sym);
    Ok((t, delta))
}
