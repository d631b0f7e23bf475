use crate::error::{invalid, Error, Result};
use crate::free::{parse_element, Alphabet, Element, Generator};
use crate::linalg::Q;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Homogeneity {
    Quadratic,
    QuadraticLinear,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Alphabet,
    pub relations: Vec<Element>,
    pub homogeneity: Homogeneity,
    /// Diagnostics from canonicalization (dropped or duplicate relations).
    pub warnings: Vec<String>,
}

fn normalize(e: &Element) -> Element {
    match e.terms().iter().next() {
        Some((_, c)) => e.scaled(&(Q::one() / c)),
        None => e.clone(),
    }
}

impl Presentation {
    pub fn new(name: impl Into<String>, alphabet: Alphabet, relations: Vec<Element>) -> Result<Self> {
        let mut warnings = Vec::new();
        let mut rels: Vec<Element> = Vec::new();
        let mut seen: Vec<Element> = Vec::new();
        for (k, r) in relations.into_iter().enumerate() {
            if r.terms().keys().any(|m| !m.is_well_formed(&alphabet)) {
                return invalid(format!("relation {k} uses a monomial not over the alphabet"));
            }
            if r.is_zero() {
                warnings.push(format!("relation {k} is zero and was dropped"));
                continue;
            }
            let n = normalize(&r);
            if seen.contains(&n) {
                warnings.push(format!("relation {k} duplicates an earlier one"));
                continue;
            }
            seen.push(n);
            rels.push(r);
        }
        let weights: Vec<usize> = rels.iter().flat_map(|r| r.terms().keys().map(|m| m.weight())).collect();
        let homogeneity = if weights.iter().all(|&w| w == 2) {
            Homogeneity::Quadratic
        } else if weights.iter().all(|&w| w == 1 || w == 2) && rels.iter().all(|r| r.terms().keys().any(|m| m.weight() == 2)) {
            Homogeneity::QuadraticLinear
        } else {
            Homogeneity::General
        };
        Ok(Presentation { name: name.into(), alphabet, relations: rels, homogeneity, warnings })
    }

    pub fn from_strings(name: &str, gens: &[(&str, usize, i64)], rels: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(gens.iter().map(|(n, a, d)| Generator::new(*n, *a, *d)).collect())?;
        let relations = rels.iter().map(|s| parse_element(s, &alphabet)).collect::<Result<Vec<_>>>()?;
        Presentation::new(name, alphabet, relations)
    }

    pub fn max_relation_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity()).max().unwrap_or(1)
    }

    pub fn relations_in_arity(&self, n: usize) -> Vec<&Element> {
        self.relations.iter().filter(|r| r.arity() == n).collect()
    }

    pub fn is_weight_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.weight().is_some())
    }

    pub fn is_content_homogeneous(&self) -> bool {
        let g = self.alphabet.len();
        self.relations.iter().all(|r| {
            let mut it = r.terms().keys().map(|m| m.content(g));
            let first = it.next();
            it.all(|c| Some(c) == first)
        })
    }

    pub fn is_degree_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| r.degree(&self.alphabet).is_some())
    }

    /// Line-oriented text: `gen name arity degree` and `rel <element>`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "name {}", self.name).unwrap();
        for g in self.alphabet.gens() {
            writeln!(s, "gen {} {} {}", g.name, g.arity, g.degree).unwrap();
        }
        for r in &self.relations {
            writeln!(s, "rel {}", r.display(&self.alphabet)).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut name = String::from("unnamed");
        let mut gens = Vec::new();
        let mut rel_lines = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "name" => name = rest.to_string(),
                "gen" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(Error::Parse { pos: ln + 1, msg: "expected `gen name arity degree`".into() });
                    }
                    let arity = parts[1].parse().map_err(|_| Error::Parse { pos: ln + 1, msg: "bad arity".into() })?;
                    let degree = parts[2].parse().map_err(|_| Error::Parse { pos: ln + 1, msg: "bad degree".into() })?;
                    gens.push(Generator::new(parts[0], arity, degree));
                }
                "rel" => rel_lines.push((ln + 1, rest.to_string())),
                _ => return Err(Error::Parse { pos: ln + 1, msg: format!("unknown directive `{head}`") }),
            }
        }
        let alphabet = Alphabet::new(gens)?;
        let mut rels = Vec::new();
        for (ln, r) in rel_lines {
            rels.push(parse_element(&r, &alphabet).map_err(|e| Error::Parse { pos: ln, msg: e.to_string() })?);
        }
        Presentation::new(name, alphabet, rels)
    }

    /// Translates an element over another alphabet by generator names.
    pub fn import(&self, e: &Element, from: &Alphabet) -> Result<Element> {
        fn go(m: &crate::free::Monomial, from: &Alphabet, to: &Alphabet) -> Result<crate::free::Monomial> {
            use crate::free::Monomial;
            Ok(match m {
                Monomial::Leaf => Monomial::Leaf,
                Monomial::Node(g, ch) => {
                    let src = from.get(*g);
                    let id = to.id(&src.name)?;
                    let dst = to.get(id);
                    if dst.arity != src.arity || dst.degree != src.degree {
                        return invalid(format!("generator {} differs between alphabets", src.name));
                    }
                    Monomial::Node(id, ch.iter().map(|c| go(c, from, to)).collect::<Result<_>>()?)
                }
            })
        }
        let mut out = Element::zero(e.arity());
        for (m, c) in e.terms() {
            if c.is_zero() {
                continue;
            }
            out.add_term(c.clone(), go(m, from, &self.alphabet)?);
        }
        Ok(out)
    }
}
