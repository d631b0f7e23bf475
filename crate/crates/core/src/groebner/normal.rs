use super::basis::GroebnerBasis;
use crate::error::{Error, Result};
use crate::free::{Alphabet, GenId, Monomial};
use std::collections::{BTreeMap, HashMap};

/// Monomials by (arity, weight), built bottom-up; `keep` sees each candidate
/// whose children were all kept, so it only needs to test the root.
pub(crate) struct MonomialTable<'a, F: Fn(&Monomial) -> bool> {
    alphabet: &'a Alphabet,
    keep: F,
    memo: HashMap<(usize, usize), Vec<Monomial>>,
    pub(crate) limit: usize,
    total: usize,
}

impl<'a, F: Fn(&Monomial) -> bool> MonomialTable<'a, F> {
    pub(crate) fn new(alphabet: &'a Alphabet, keep: F) -> Self {
        MonomialTable { alphabet, keep, memo: HashMap::new(), limit: 5_000_000, total: 0 }
    }

    pub(crate) fn get(&mut self, arity: usize, weight: usize) -> Result<&[Monomial]> {
        if !self.memo.contains_key(&(arity, weight)) {
            let v = self.build(arity, weight)?;
            self.total += v.len();
            if self.total > self.limit {
                return Err(Error::Resource(format!("more than {} monomials enumerated", self.limit)));
            }
            self.memo.insert((arity, weight), v);
        }
        Ok(&self.memo[&(arity, weight)])
    }

    fn build(&mut self, arity: usize, weight: usize) -> Result<Vec<Monomial>> {
        if weight == 0 {
            return Ok(if arity == 1 { vec![Monomial::Leaf] } else { Vec::new() });
        }
        let mut out = Vec::new();
        let ids: Vec<GenId> = self.alphabet.ids().collect();
        for g in ids {
            let k = self.alphabet.get(g).arity;
            if k > arity {
                continue;
            }
            let mut acc = Vec::new();
            self.tuples(k, arity, weight - 1, &mut Vec::new(), &mut acc)?;
            for ch in acc {
                let m = Monomial::Node(g, ch);
                if (self.keep)(&m) {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    /// All k-tuples of kept monomials with the given total arity and weight.
    pub(crate) fn tuples(&mut self, k: usize, arity: usize, weight: usize, cur: &mut Vec<Monomial>, out: &mut Vec<Vec<Monomial>>) -> Result<()> {
        if k == 0 {
            if arity == 0 && weight == 0 {
                out.push(cur.clone());
            }
            return Ok(());
        }
        if arity < k {
            return Ok(());
        }
        for a in 1..=arity - (k - 1) {
            for w in 0..=weight {
                let choices = self.get(a, w)?.to_vec();
                for c in choices {
                    cur.push(c);
                    self.tuples(k - 1, arity - a, weight - w, cur, out)?;
                    cur.pop();
                }
            }
        }
        Ok(())
    }

    /// All kept monomials of the given arity, over every weight that can occur.
    pub(crate) fn all_of_arity(&mut self, n: usize) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        for w in 0.. {
            let mut any = false;
            for a in 1..=n {
                let v = self.get(a, w)?;
                if !v.is_empty() {
                    any = true;
                }
                if a == n {
                    out.extend_from_slice(v);
                }
            }
            if !any && w > 0 {
                break;
            }
        }
        Ok(out)
    }

    /// Largest weight at which some kept monomial of arity at most n exists.
    pub(crate) fn max_weight(&mut self, n: usize) -> Result<usize> {
        let mut best = 0;
        for w in 0.. {
            let mut any = false;
            for a in 1..=n {
                if !self.get(a, w)?.is_empty() {
                    any = true;
                }
            }
            if !any && w > 0 {
                break;
            }
            best = w;
        }
        Ok(best)
    }
}

impl GroebnerBasis {
    fn check_range(&self, n: usize) -> Result<()> {
        if !self.complete_up_to_cap {
            return Err(Error::Invalid("basis has not been completed".into()));
        }
        if n > self.arity_cap {
            return Err(Error::ArityCap { arity: n, cap: self.arity_cap });
        }
        Ok(())
    }

    fn root_is_normal(&self, m: &Monomial) -> bool {
        self.rules.iter().all(|r| !m.divides_at_root(&r.lead))
    }

    /// Monomials of arity n containing no lead, in canonical order.
    pub fn normal_monomials(&self, n: usize) -> Result<Vec<Monomial>> {
        self.check_range(n)?;
        let mut table = MonomialTable::new(&self.alphabet, |m| self.root_is_normal(m));
        let mut v = table.all_of_arity(n)?;
        v.sort();
        Ok(v)
    }

    /// Number of normal monomials of arity n per homological degree.
    pub fn hilbert(&self, n: usize) -> Result<BTreeMap<i64, usize>> {
        let mut h = BTreeMap::new();
        for m in self.normal_monomials(n)? {
            *h.entry(m.degree(&self.alphabet)).or_insert(0) += 1;
        }
        Ok(h)
    }
}

/// `{arity: {degree: dim}}` as JSON.
pub fn hilbert_json(table: &BTreeMap<usize, BTreeMap<i64, usize>>) -> serde_json::Value {
    let mut obj = serde_json::Map::new();
    for (n, row) in table {
        let mut inner = serde_json::Map::new();
        for (d, c) in row {
            inner.insert(d.to_string(), serde_json::Value::from(*c));
        }
        obj.insert(n.to_string(), serde_json::Value::Object(inner));
    }
    serde_json::Value::Object(obj)
}
