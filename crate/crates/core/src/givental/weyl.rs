use super::multilinear::koszul;
use crate::error::{invalid, Result};
use crate::linalg::Q;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

type Word = Vec<usize>;

/// A homogeneous element of Hom(T̄(V), T̄(V)) as a sum of word-to-word maps
/// V^⊗p → V^⊗q, with pieces past the truncation dropped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordMap {
    pub degree: i64,
    entries: BTreeMap<(Word, Word), Q>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Dropped {
    /// `(input length, output length)` of pieces lost to the truncation.
    pub shapes: Vec<(usize, usize)>,
}

impl Dropped {
    fn note(&mut self, p: usize, q: usize) {
        if !self.shapes.contains(&(p, q)) {
            self.shapes.push((p, q));
            self.shapes.sort();
        }
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }
}

/// Letter degrees of V and the truncation length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylSpace {
    pub letters: Vec<i64>,
    pub cap: usize,
}

impl WeylSpace {
    pub fn new(letters: Vec<i64>, cap: usize) -> Result<Self> {
        if letters.is_empty() || cap == 0 {
            return invalid("dim V and the truncation must be positive");
        }
        Ok(WeylSpace { letters, cap })
    }

    fn deg(&self, w: &[usize]) -> i64 {
        w.iter().map(|&x| self.letters[x]).sum()
    }

    fn words(&self, len: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| (0..self.letters.len()).map(move |x| [w.as_slice(), &[x]].concat())).collect();
        }
        out
    }
}

impl WordMap {
    pub fn zero(degree: i64) -> Self {
        WordMap { degree, entries: BTreeMap::new() }
    }

    pub fn entries(&self) -> &BTreeMap<(Word, Word), Q> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, input: Word, output: Word, c: Q) {
        let v = self.entries.entry((input.clone(), output.clone())).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.entries.remove(&(input, output));
        }
    }

    /// Builds a map from `(input, output, c)`; inhomogeneous entries are errors.
    pub fn from_entries(space: &WeylSpace, degree: i64, entries: impl IntoIterator<Item = (Word, Word, Q)>) -> Result<Self> {
        let mut m = WordMap::zero(degree);
        for (a, b, c) in entries {
            if a.is_empty() || b.is_empty() || a.len() > space.cap || b.len() > space.cap {
                return invalid("words must be nonempty and within the truncation");
            }
            if space.deg(&b) != space.deg(&a) + degree {
                return invalid("entry is not of the stated degree");
            }
            m.insert(a, b, c);
        }
        Ok(m)
    }

    pub fn add_scaled(&self, other: &WordMap, c: &Q) -> WordMap {
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        for ((a, b), x) in &other.entries {
            out.insert(a.clone(), b.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &WordMap) -> WordMap {
        self.add_scaled(other, &-Q::one())
    }

    /// The component V^⊗p → V^⊗q.
    pub fn piece(&self, p: usize, q: usize) -> WordMap {
        let entries = self.entries.iter().filter(|((a, b), _)| a.len() == p && b.len() == q).map(|(k, v)| (k.clone(), v.clone())).collect();
        WordMap { degree: self.degree, entries }
    }

    /// Value on a word, as output word → coefficient.
    pub fn apply(&self, w: &[usize]) -> BTreeMap<Word, Q> {
        self.entries.iter().filter(|((a, _), _)| a == w).map(|((_, b), c)| (b.clone(), c.clone())).collect()
    }
}

fn push(out: &mut WordMap, dropped: &mut Dropped, space: &WeylSpace, a: Word, b: Word, c: Q) {
    if a.len() > space.cap || b.len() > space.cap {
        dropped.note(a.len(), b.len());
    } else {
        out.insert(a, b, c);
    }
}

/// Partial k-composition f ∘^{(k)} g. For k = p = s it is the plain
/// composite f∘g.
pub fn weyl_partial(f: &WordMap, g: &WordMap, k: usize, space: &WeylSpace) -> (WordMap, Dropped) {
    let mut out = WordMap::zero(f.degree + g.degree);
    let mut dropped = Dropped::default();
    for ((a, b), cf) in &f.entries {
        let p = a.len();
        for ((x, y), cg) in &g.entries {
            let s = y.len();
            let c = cf * cg;
            if k == 0 || k > p.min(s) {
                continue;
            }
            if k == p && k == s {
                if y == a {
                    push(&mut out, &mut dropped, space, x.clone(), b.clone(), c);
                }
            } else if k == p {
                for i in 0..=s - p {
                    if &y[i..i + p] == a.as_slice() {
                        let sign = koszul(f.degree, space.deg(&y[..i]));
                        let o = [&y[..i], b.as_slice(), &y[i + p..]].concat();
                        push(&mut out, &mut dropped, space, x.clone(), o, &c * sign);
                    }
                }
            } else if k == s {
                for i in 0..=p - s {
                    if &a[i..i + s] == y.as_slice() {
                        let sign = koszul(g.degree, space.deg(&a[..i]));
                        let input = [&a[..i], x.as_slice(), &a[i + s..]].concat();
                        push(&mut out, &mut dropped, space, input, b.clone(), &c * sign);
                    }
                }
            } else {
                if y[..k] == a[p - k..] {
                    let u = &a[..p - k];
                    let sign = koszul(g.degree, space.deg(u));
                    let input = [u, x.as_slice()].concat();
                    let o = [b.as_slice(), &y[k..]].concat();
                    push(&mut out, &mut dropped, space, input, o, &c * sign);
                }
                if y[s - k..] == a[..k] {
                    let pre = &y[..s - k];
                    let sign = koszul(f.degree, space.deg(pre));
                    let input = [x.as_slice(), &a[k..]].concat();
                    let o = [pre, b.as_slice()].concat();
                    push(&mut out, &mut dropped, space, input, o, &c * sign);
                }
            }
        }
    }
    (out, dropped)
}

/// f ⋆ g = Σ_{k≥1} (f∘^{(k)}g) ħ^k up to ħ^order; index t holds ħ^{t+1}.
pub fn weyl_star(f: &WordMap, g: &WordMap, order: usize, space: &WeylSpace) -> (Vec<WordMap>, Dropped) {
    let mut dropped = Dropped::default();
    let mut out = Vec::new();
    for k in 1..=order {
        let (m, d) = weyl_partial(f, g, k, space);
        for s in d.shapes {
            dropped.note(s.0, s.1);
        }
        out.push(m);
    }
    (out, dropped)
}

/// ħ-series of word maps; entry t is the coefficient of ħ^t.
pub type HbarSeries = Vec<WordMap>;

fn series_add(a: &mut HbarSeries, b: &HbarSeries, c: &Q) {
    while a.len() < b.len() {
        a.push(WordMap::zero(0));
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x = x.add_scaled(y, c);
    }
}

/// Star product of ħ-series truncated at ħ^order.
pub fn star_series(f: &HbarSeries, g: &HbarSeries, order: usize, space: &WeylSpace) -> (HbarSeries, Dropped) {
    let mut out: HbarSeries = vec![WordMap::zero(0); order + 1];
    let mut dropped = Dropped::default();
    for (i, x) in f.iter().enumerate() {
        for (j, y) in g.iter().enumerate() {
            for k in 1..=order {
                if i + j + k > order {
                    break;
                }
                let (m, d) = weyl_partial(x, y, k, space);
                for s in d.shapes {
                    dropped.note(s.0, s.1);
                }
                out[i + j + k] = out[i + j + k].add_scaled(&m, &Q::one());
            }
        }
    }
    (out, dropped)
}

/// Star commutator of series of degree-0 maps.
pub fn star_bracket(f: &HbarSeries, g: &HbarSeries, order: usize, space: &WeylSpace) -> (HbarSeries, Dropped) {
    let (mut a, mut d1) = star_series(f, g, order, space);
    let (b, d2) = star_series(g, f, order, space);
    series_add(&mut a, &b, &-Q::one());
    for s in d2.shapes {
        d1.note(s.0, s.1);
    }
    (a, d1)
}

/// Jacobiator of the star commutator through ħ^order on three degree-0
/// maps, with whatever the truncation dropped along the way.
pub fn jacobiator(f: &WordMap, g: &WordMap, h: &WordMap, order: usize, space: &WeylSpace) -> (HbarSeries, Dropped) {
    let lift = |m: &WordMap| vec![m.clone()];
    let (f, g, h) = (lift(f), lift(g), lift(h));
    let mut dropped = Dropped::default();
    let mut total: HbarSeries = vec![WordMap::zero(0); order + 1];
    for (x, y, z) in [(&f, &g, &h), (&g, &h, &f), (&h, &f, &g)] {
        let (yz, d1) = star_bracket(y, z, order, space);
        let (xyz, d2) = star_bracket(x, &yz, order, space);
        for s in d1.shapes.into_iter().chain(d2.shapes) {
            dropped.note(s.0, s.1);
        }
        series_add(&mut total, &xyz, &Q::one());
    }
    (total, dropped)
}

/// A random degree-0 map with pieces of the given shapes and small integer
/// coefficients; V is taken ungraded.
pub fn random_word_map(space: &WeylSpace, shapes: &[(usize, usize)], rng: &mut impl rand::Rng) -> WordMap {
    let mut m = WordMap::zero(0);
    for &(p, q) in shapes {
        for a in space.words(p) {
            for b in space.words(q) {
                if space.deg(&a) == space.deg(&b) && rng.gen_bool(0.5) {
                    let c: i64 = rng.gen_range(-3..=3);
                    m.insert(a.clone(), b, Q::from_integer(c.into()));
                }
            }
        }
    }
    m
}
