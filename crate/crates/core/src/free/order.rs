use super::monomial::{Alphabet, GenId, Monomial};
use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    /// Compare path sequences lexicographically, words by length then letters.
    PathLex,
    /// Number of vertices first, then path-lex.
    DegPathLex,
    /// Total generator weight first, then path-lex.
    WeightFirst(Vec<i64>),
}

/// A total order on tree monomials of each arity, compatible with composition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Generators from largest to smallest.
    pub precedence: Vec<GenId>,
    pub reversed: bool,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<GenId>, reversed: bool, a: &Alphabet) -> Result<Self> {
        let mut seen = vec![false; a.len()];
        for &g in &precedence {
            if g as usize >= a.len() || seen[g as usize] {
                return invalid("precedence list is not a permutation of the alphabet");
            }
            seen[g as usize] = true;
        }
        if seen.iter().any(|s| !s) {
            return invalid("precedence list is not a permutation of the alphabet");
        }
        if let OrderKind::WeightFirst(w) = &kind {
            if w.len() != a.len() {
                return invalid("weight vector length differs from alphabet size");
            }
        }
        Ok(MonomialOrder { kind, precedence, reversed })
    }

    /// Path-lex with generators ranked in alphabet order, first largest.
    pub fn path_lex(a: &Alphabet) -> Self {
        MonomialOrder { kind: OrderKind::PathLex, precedence: a.ids().collect(), reversed: false }
    }

    pub fn deg_path_lex(a: &Alphabet) -> Self {
        MonomialOrder { kind: OrderKind::DegPathLex, precedence: a.ids().collect(), reversed: false }
    }

    fn rank(&self, g: GenId) -> i64 {
        let pos = self.precedence.iter().position(|&h| h == g).expect("generator in precedence");
        (self.precedence.len() - pos) as i64
    }

    pub fn key(&self, m: &Monomial) -> Vec<i64> {
        let mut key = Vec::new();
        match &self.kind {
            OrderKind::PathLex => {}
            OrderKind::DegPathLex => key.push(m.weight() as i64),
            OrderKind::WeightFirst(w) => {
                let mut s = 0;
                m.visit(&mut |g| s += w[g as usize]);
                key.push(s);
            }
        }
        for word in m.path_sequence() {
            key.push(word.len() as i64);
            key.extend(word.iter().map(|&g| self.rank(g)));
        }
        if self.reversed {
            for x in key.iter_mut() {
                *x = -*x;
            }
        }
        key
    }

    pub fn cmp(&self, x: &Monomial, y: &Monomial) -> Ordering {
        if x == y {
            return Ordering::Equal;
        }
        self.key(x).cmp(&self.key(y))
    }
}
