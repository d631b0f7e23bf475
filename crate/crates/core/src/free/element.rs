use super::monomial::{Alphabet, Context, GenId, Monomial};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::linalg::{q_to_string, Q};
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// A finite linear combination of monomials of a fixed arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    arity: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Element {
    pub fn zero(arity: usize) -> Self {
        Element { arity, terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Q::one(), m)
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut e = Element::zero(m.arity());
        e.add_term(c, m);
        e
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Q, Monomial)>) -> Result<Self> {
        let mut e = Element::zero(arity);
        for (c, m) in terms {
            if m.arity() != arity {
                return Err(Error::Invalid(format!("term of arity {} in element of arity {}", m.arity(), arity)));
            }
            e.add_term(c, m);
        }
        Ok(e)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, c: Q, m: Monomial) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.arity(), self.arity);
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(c * v, m.clone());
        }
    }

    pub fn scaled(&self, c: &Q) -> Element {
        let mut e = Element::zero(self.arity);
        e.add_scaled(c, self);
        e
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(&Q::one(), other);
        e
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(&-Q::one(), other);
        e
    }

    /// The common degree of all terms, if the element is homogeneous.
    pub fn degree(&self, a: &Alphabet) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.degree(a));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn weight(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.weight());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    /// Bilinear extension of monomial composition.
    pub fn compose(&self, i: usize, other: &Element, a: &Alphabet) -> Result<Element> {
        if i == 0 || i > self.arity {
            return Err(Error::OutOfRange { index: i, len: self.arity });
        }
        let mut e = Element::zero(self.arity + other.arity - 1);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let (neg, m) = m1.compose(i, m2, a)?;
                let c = c1 * c2;
                e.add_term(if neg { -c } else { c }, m);
            }
        }
        Ok(e)
    }

    pub fn fill(ctx: &Context, x: &Element, a: &Alphabet) -> Element {
        let arity = ctx.upper.arity() - 1 + ctx.lowers.iter().map(|l| l.arity()).sum::<usize>();
        let mut e = Element::zero(arity);
        for (m, c) in &x.terms {
            let (neg, y) = ctx.fill(m, a);
            e.add_term(if neg { -c.clone() } else { c.clone() }, y);
        }
        e
    }

    /// Largest term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Q)> {
        self.terms.iter().max_by(|x, y| order.cmp(x.0, y.0))
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Element {
        match self.leading(order) {
            Some((_, c)) => {
                let inv = Q::one() / c;
                self.scaled(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> (Q, Monomial)) -> Element {
        let mut e = Element::zero(self.arity);
        for (m, c) in &self.terms {
            let (s, n) = f(m);
            e.add_term(c * s, n);
        }
        e
    }

    pub fn display<'a>(&'a self, a: &'a Alphabet) -> ElementDisplay<'a> {
        ElementDisplay { e: self, a }
    }
}

pub struct ElementDisplay<'a> {
    e: &'a Element,
    a: &'a Alphabet,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.e.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            write!(f, "{}*{}", q_to_string(&abs), m.display(self.a))?;
        }
        Ok(())
    }
}

/// Image of a monomial under the operad morphism from the free operad that
/// sends each generator to `image(g)`; images must preserve degree and arity.
pub fn substitute(m: &Monomial, src: &Alphabet, dst: &Alphabet, image: &dyn Fn(GenId) -> Element) -> Result<Element> {
    match m {
        Monomial::Leaf => Ok(Element::monomial(Monomial::Leaf)),
        Monomial::Node(g, ch) => {
            let k = ch.len();
            let degs: Vec<i64> = ch.iter().map(|c| c.degree(src)).collect();
            let mut acc = image(*g);
            if acc.arity() != k {
                return Err(Error::Invalid(format!("image of {} has wrong arity", src.get(*g).name)));
            }
            let mut after = 0i64;
            let mut neg = false;
            for t in (0..k).rev() {
                neg ^= (degs[t] * after).rem_euclid(2) == 1;
                after += degs[t];
                if let Monomial::Leaf = ch[t] {
                    continue;
                }
                let sub = substitute(&ch[t], src, dst, image)?;
                acc = acc.compose(t + 1, &sub, dst)?;
            }
            Ok(if neg { acc.scaled(&-Q::one()) } else { acc })
        }
    }
}

pub fn substitute_element(e: &Element, src: &Alphabet, dst: &Alphabet, image: &dyn Fn(GenId) -> Element) -> Result<Element> {
    let mut out: Option<Element> = None;
    for (m, c) in e.terms() {
        let s = substitute(m, src, dst, image)?;
        match &mut out {
            None => out = Some(s.scaled(c)),
            Some(o) => o.add_scaled(c, &s),
        }
    }
    Ok(out.unwrap_or_else(|| Element::zero(e.arity())))
}
