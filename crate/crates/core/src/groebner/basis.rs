use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::free::{Alphabet, Element, Monomial, MonomialOrder};
use crate::linalg::Q;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A rewriting rule `lead -> lead - poly`; `poly` is monic in `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Monomial,
    pub poly: Element,
}

impl Rule {
    pub fn tail(&self) -> Element {
        let mut t = self.poly.clone();
        t.add_term(-Q::one(), self.lead.clone());
        t.scaled(&-Q::one())
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub alphabet: Alphabet,
    pub order: MonomialOrder,
    pub rules: Vec<Rule>,
    pub arity_cap: usize,
    pub complete_up_to_cap: bool,
    /// Rules that arose from critical pairs rather than from the input span.
    pub additions: usize,
    by_root: Vec<Vec<usize>>,
}

fn merge(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    match (a, b) {
        (Monomial::Leaf, x) | (x, Monomial::Leaf) => Some(x.clone()),
        (Monomial::Node(g, ac), Monomial::Node(h, bc)) => {
            if g != h || ac.len() != bc.len() {
                return None;
            }
            Some(Monomial::Node(*g, ac.iter().zip(bc).map(|(x, y)| merge(x, y)).collect::<Option<_>>()?))
        }
    }
}

/// Common multiples of two leads obtained by rooting `l2` at a vertex of `l1`.
fn overlaps(l1: &Monomial, l2: &Monomial, same: bool) -> Vec<(Vec<usize>, Monomial)> {
    let mut out = Vec::new();
    for p in l1.vertex_paths() {
        if same && p.is_empty() {
            continue;
        }
        if let Some(m) = merge(l1.subtree(&p), l2) {
            out.push((p.clone(), l1.replace_subtree(&p, m)));
        }
    }
    out
}

impl GroebnerBasis {
    pub fn empty(alphabet: Alphabet, order: MonomialOrder, arity_cap: usize) -> Self {
        let by_root = vec![Vec::new(); alphabet.len()];
        GroebnerBasis { alphabet, order, rules: Vec::new(), arity_cap, complete_up_to_cap: false, additions: 0, by_root }
    }

    pub fn leads(&self) -> Vec<&Monomial> {
        self.rules.iter().map(|r| &r.lead).collect()
    }

    fn reindex(&mut self) {
        self.by_root = vec![Vec::new(); self.alphabet.len()];
        for (k, r) in self.rules.iter().enumerate() {
            if let Monomial::Node(g, _) = &r.lead {
                self.by_root[*g as usize].push(k);
            }
        }
    }

    fn find_divisor(&self, m: &Monomial) -> Option<(usize, Vec<usize>)> {
        for p in m.vertex_paths() {
            let sub = m.subtree(&p);
            if let Monomial::Node(g, _) = sub {
                for &k in &self.by_root[*g as usize] {
                    if sub.divides_at_root(&self.rules[k].lead) {
                        return Some((k, p));
                    }
                }
            }
        }
        None
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.find_divisor(m).is_none()
    }

    /// Normal form modulo the rules.
    pub fn reduce(&self, e: &Element) -> Result<Element> {
        if e.arity() > self.arity_cap {
            return Err(Error::ArityCap { arity: e.arity(), cap: self.arity_cap });
        }
        Ok(self.reduce_unchecked(e))
    }

    fn reduce_unchecked(&self, e: &Element) -> Element {
        let a = &self.alphabet;
        let mut work: BTreeMap<Vec<i64>, (Monomial, Q)> = BTreeMap::new();
        let push = |work: &mut BTreeMap<Vec<i64>, (Monomial, Q)>, m: &Monomial, c: Q| {
            let key = self.order.key(m);
            let entry = work.entry(key).or_insert_with(|| (m.clone(), Q::zero()));
            entry.1 += c;
            if entry.1.is_zero() {
                let key = self.order.key(m);
                work.remove(&key);
            }
        };
        for (m, c) in e.terms() {
            push(&mut work, m, c.clone());
        }
        let mut done = Element::zero(e.arity());
        while let Some((_, (m, c))) = work.pop_last() {
            match self.find_divisor(&m) {
                Some((k, p)) => {
                    let rule = &self.rules[k];
                    let ctx = m.context_at(&p, &rule.lead);
                    let f = Element::fill(&ctx, &rule.poly, a);
                    let scale = -(&c / f.coefficient(&m));
                    for (t, v) in f.terms() {
                        if *t != m {
                            push(&mut work, t, &scale * v);
                        }
                    }
                }
                None => done.add_term(c, m),
            }
        }
        done
    }

    fn s_polynomial(&self, i: usize, j: usize, path: &[usize], m: &Monomial) -> Element {
        let a = &self.alphabet;
        let (r1, r2) = (&self.rules[i], &self.rules[j]);
        let f1 = Element::fill(&m.context_at(&[], &r1.lead), &r1.poly, a);
        let f2 = Element::fill(&m.context_at(path, &r2.lead), &r2.poly, a);
        let s1 = Q::one() / f1.coefficient(m);
        let s2 = Q::one() / f2.coefficient(m);
        let mut s = f1.scaled(&s1);
        s.add_scaled(&-s2, &f2);
        s
    }

    /// Checks that every critical pair up to the cap reduces to zero.
    pub fn verify(&self) -> Result<bool> {
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                for (p, m) in overlaps(&self.rules[i].lead, &self.rules[j].lead, i == j) {
                    if m.arity() > self.arity_cap {
                        continue;
                    }
                    if !self.reduce_unchecked(&self.s_polynomial(i, j, &p, &m)).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

struct Completion {
    gb: GroebnerBasis,
    alive: Vec<bool>,
    queue: BTreeSet<(usize, Vec<i64>, usize, usize, Vec<usize>)>,
}

impl Completion {
    fn enqueue(&mut self, i: usize, j: usize) {
        let (l1, l2) = (&self.gb.rules[i].lead, &self.gb.rules[j].lead);
        for (p, m) in overlaps(l1, l2, i == j) {
            if m.arity() <= self.gb.arity_cap {
                self.queue.insert((m.arity(), self.gb.order.key(&m), i, j, p));
            }
        }
    }

    fn add(&mut self, poly: Element) {
        let mut pending = vec![poly];
        while let Some(p) = pending.pop() {
            let p = self.gb.reduce_unchecked(&p);
            if p.is_zero() {
                continue;
            }
            let lead = p.leading(&self.gb.order).expect("nonzero").0.clone();
            let p = p.make_monic(&self.gb.order);
            for k in 0..self.gb.rules.len() {
                if self.alive[k] && self.gb.rules[k].lead.contains(&lead) {
                    self.alive[k] = false;
                    if let Monomial::Node(g, _) = &self.gb.rules[k].lead {
                        self.gb.by_root[*g as usize].retain(|&x| x != k);
                    }
                    pending.push(self.gb.rules[k].poly.clone());
                }
            }
            self.gb.rules.push(Rule { lead, poly: p });
            self.alive.push(true);
            let new = self.gb.rules.len() - 1;
            if let Monomial::Node(g, _) = &self.gb.rules[new].lead {
                self.gb.by_root[*g as usize].push(new);
            }
            for k in 0..=new {
                if self.alive[k] {
                    self.enqueue(new, k);
                    if k != new {
                        self.enqueue(k, new);
                    }
                }
            }
        }
    }
}

/// Buchberger-style completion of a presentation up to an arity cap.
pub fn complete(p: &Presentation, order: &MonomialOrder, cap: usize) -> Result<GroebnerBasis> {
    let mut rels: Vec<&Element> = p.relations.iter().filter(|r| r.arity() <= cap).collect();
    rels.sort_by_cached_key(|r| (r.arity(), r.leading(order).map(|(m, _)| order.key(m))));
    let mut c = Completion {
        gb: GroebnerBasis::empty(p.alphabet.clone(), order.clone(), cap),
        alive: Vec::new(),
        queue: BTreeSet::new(),
    };
    for r in rels {
        c.add(r.clone());
    }
    while let Some((_, _, i, j, path)) = c.queue.pop_first() {
        if !c.alive[i] || !c.alive[j] {
            continue;
        }
        let m = {
            let l1 = &c.gb.rules[i].lead;
            let sub = merge(l1.subtree(&path), &c.gb.rules[j].lead).expect("overlap");
            l1.replace_subtree(&path, sub)
        };
        let s = c.gb.reduce_unchecked(&c.gb.s_polynomial(i, j, &path, &m));
        if !s.is_zero() {
            c.gb.additions += 1;
            c.add(s);
        }
    }
    let mut gb = c.gb;
    gb.rules = gb.rules.into_iter().zip(c.alive).filter(|(_, a)| *a).map(|(r, _)| r).collect();
    gb.rules.sort_by_cached_key(|r| (r.lead.arity(), order.key(&r.lead)));
    gb.reindex();
    for k in 0..gb.rules.len() {
        let tail = gb.rules[k].tail();
        let reduced = gb.reduce_unchecked(&tail);
        let mut poly = Element::monomial(gb.rules[k].lead.clone());
        poly.add_scaled(&-Q::one(), &reduced);
        gb.rules[k].poly = poly;
    }
    gb.complete_up_to_cap = true;
    Ok(gb)
}
