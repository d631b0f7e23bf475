use crate::error::{invalid, Error, Result};
use crate::free::{parse_element, suspend, suspend_alphabet, Alphabet, Element, Generator, GenId, MonomialOrder, OrderKind};
use crate::groebner::{DimTable, Presentation};
use crate::linalg::Q;
use crate::tree::{binomial, narayana};
use num_traits::One;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZooName {
    As,
    As1,
    AsM(Vec<(String, i64)>),
    NcGerst,
    NcBV3,
    NcBV2,
    QncBV,
    NcGrav,
    NcHyperCom,
    TAs(usize),
    PAs(usize),
    TwoNcGerst,
    D,
}

pub fn zoo_names() -> Vec<&'static str> {
    vec!["As", "As1", "As_M", "ncGerst", "ncBV3", "ncBV2", "qncBV", "ncGrav", "ncHyperCom", "tAs3", "pAs3", "2ncGerst", "D"]
}

impl FromStr for ZooName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let k_of = |rest: &str| -> Result<usize> {
            let t = rest.trim_matches(|c| c == '(' || c == ')' || c == '_' || c == ':');
            let k: usize = t.parse().map_err(|_| Error::UnknownName(s.to_string()))?;
            if k < 2 {
                return invalid("k-ary operads need k >= 2");
            }
            Ok(k)
        };
        Ok(match s {
            "As" => ZooName::As,
            "As1" => ZooName::As1,
            "As_M" => ZooName::AsM(vec![("m".into(), 0), ("b".into(), 1)]),
            "ncGerst" => ZooName::NcGerst,
            "ncBV" | "ncBV3" => ZooName::NcBV3,
            "ncBV2" => ZooName::NcBV2,
            "qncBV" => ZooName::QncBV,
            "ncGrav" => ZooName::NcGrav,
            "ncHyperCom" => ZooName::NcHyperCom,
            "2ncGerst" => ZooName::TwoNcGerst,
            "D" => ZooName::D,
            _ if s.starts_with("tAs") => ZooName::TAs(k_of(&s[3..])?),
            _ if s.starts_with("pAs") => ZooName::PAs(k_of(&s[3..])?),
            _ => return Err(Error::UnknownName(s.to_string())),
        })
    }
}

impl fmt::Display for ZooName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZooName::As => write!(f, "As"),
            ZooName::As1 => write!(f, "As1"),
            ZooName::AsM(_) => write!(f, "As_M"),
            ZooName::NcGerst => write!(f, "ncGerst"),
            ZooName::NcBV3 => write!(f, "ncBV3"),
            ZooName::NcBV2 => write!(f, "ncBV2"),
            ZooName::QncBV => write!(f, "qncBV"),
            ZooName::NcGrav => write!(f, "ncGrav"),
            ZooName::NcHyperCom => write!(f, "ncHyperCom"),
            ZooName::TAs(k) => write!(f, "tAs{k}"),
            ZooName::PAs(k) => write!(f, "pAs{k}"),
            ZooName::TwoNcGerst => write!(f, "2ncGerst"),
            ZooName::D => write!(f, "D"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedOperad {
    pub name: ZooName,
    pub presentation: Presentation,
    pub preferred_order: MonomialOrder,
    /// Largest arity of a generator or relation included.
    pub cap: usize,
}

impl NamedOperad {
    pub fn expected_dims(&self, n: usize) -> Option<DimTable> {
        closed_form_dims(&self.name, n)
    }
}

fn corolla(a: &Alphabet, name: &str) -> Element {
    Element::monomial(a.corolla_named(name).expect("generator exists"))
}

fn comp(a: &Alphabet, x: &str, i: usize, y: &str) -> Element {
    corolla(a, x).compose(i, &corolla(a, y), a).expect("slot in range")
}

fn sum(n: usize, terms: impl IntoIterator<Item = (Q, Element)>) -> Element {
    let mut e = Element::zero(n);
    for (c, t) in terms {
        e.add_scaled(&c, &t);
    }
    e
}

fn from_parts(name: &str, gens: Vec<Generator>, rels: &[&str]) -> Result<Presentation> {
    let a = Alphabet::new(gens)?;
    let r = rels.iter().map(|s| parse_element(s, &a)).collect::<Result<Vec<_>>>()?;
    Presentation::new(name, a, r)
}

fn as_m(basis: &[(String, i64)]) -> Result<Presentation> {
    let a = Alphabet::new(basis.iter().map(|(n, d)| Generator::new(n.clone(), 2, *d)).collect())?;
    let mut rels = Vec::new();
    for (x, dx) in basis {
        for (y, dy) in basis {
            let sign = if (dx * dy).rem_euclid(2) == 1 { -Q::one() } else { Q::one() };
            rels.push(sum(3, [(Q::one(), comp(&a, x, 1, y)), (-sign, comp(&a, y, 2, x))]));
        }
    }
    Presentation::new("As_M", a, rels)
}

pub fn suspend_presentation(p: &Presentation, power: i32, name: &str) -> Result<Presentation> {
    let a = suspend_alphabet(&p.alphabet, power)?;
    let rels = p.relations.iter().map(|r| suspend(r, power, &p.alphabet)).collect::<Result<Vec<_>>>()?;
    Presentation::new(name, a, rels)
}

fn grav_alphabet(prefix: &str, cap: usize, degree: impl Fn(usize) -> i64) -> Result<Alphabet> {
    Alphabet::new((2..=cap.max(2)).map(|k| Generator::new(format!("{prefix}{k}"), k, degree(k))).collect())
}

fn nc_grav(cap: usize) -> Result<Presentation> {
    let a = grav_alphabet("l", cap, |_| 1)?;
    let l = |k: usize| format!("l{k}");
    let mut rels = Vec::new();
    for n in 3..=cap {
        for k in 3..n {
            for r in 1..=n - k + 1 {
                let mut e = sum(n, (r..=r + k - 2).map(|j| (Q::one(), comp(&a, &l(n - 1), j, &l(2)))));
                e.add_scaled(&-Q::one(), &comp(&a, &l(n - k + 1), r, &l(k)));
                rels.push(e);
            }
        }
        rels.push(sum(n, (1..n).map(|j| (Q::one(), comp(&a, &l(n - 1), j, &l(2))))));
    }
    Presentation::new("ncGrav", a, rels)
}

fn nc_hypercom(cap: usize) -> Result<Presentation> {
    let a = grav_alphabet("nu", cap, |k| 2 * k as i64 - 4)?;
    let nu = |k: usize| format!("nu{k}");
    let mut rels = Vec::new();
    for n in 3..=cap {
        for i in 2..n {
            let mut e = sum(n, (2..=i).map(|j| (Q::one(), comp(&a, &nu(n - j + 1), i - j + 1, &nu(j)))));
            for k in 2..=n - i + 1 {
                e.add_scaled(&-Q::one(), &comp(&a, &nu(n - k + 1), i, &nu(k)));
            }
            rels.push(e);
        }
    }
    Presentation::new("ncHyperCom", a, rels)
}

fn t_as(k: usize) -> Result<Presentation> {
    let a = Alphabet::new(vec![Generator::new("a", k, 0)])?;
    let rels = (1..k).map(|i| comp(&a, "a", i, "a").minus(&comp(&a, "a", k, "a"))).collect();
    Presentation::new(format!("tAs{k}"), a, rels)
}

fn p_as(k: usize) -> Result<Presentation> {
    let a = Alphabet::new(vec![Generator::new("a", k, k as i64 - 2)])?;
    let n = 2 * k - 1;
    let r = sum(n, (1..=k).map(|i| (if ((k - 1) * (i - 1)) % 2 == 1 { -Q::one() } else { Q::one() }, comp(&a, "a", i, "a"))));
    Presentation::new(format!("pAs{k}"), a, vec![r])
}

fn weight_first_grav(a: &Alphabet, reversed: bool) -> MonomialOrder {
    let weights = a.gens().iter().map(|g| if g.arity == 2 { 0 } else { 1 }).collect();
    MonomialOrder { kind: OrderKind::WeightFirst(weights), precedence: a.ids().collect(), reversed }
}

fn path_lex_with(a: &Alphabet, first: &[&str]) -> MonomialOrder {
    let mut prec: Vec<GenId> = first.iter().map(|n| a.id(n).expect("generator exists")).collect();
    let rest: Vec<GenId> = a.ids().filter(|g| !prec.contains(g)).collect();
    prec.extend(rest);
    MonomialOrder { kind: OrderKind::PathLex, precedence: prec, reversed: false }
}

const NCGERST: [&str; 4] = ["m(m,_) - m(_,m)", "m(b,_) - b(_,m)", "b(m,_) - m(_,b)", "b(b,_) + b(_,b)"];

/// The named operad, with generators and relations up to arity `cap` for the
/// infinitely generated families.
pub fn presentation_of(name: &ZooName, cap: usize) -> Result<NamedOperad> {
    let mb = || vec![Generator::new("m", 2, 0), Generator::new("b", 2, 1)];
    let dmb = || vec![Generator::new("D", 1, 1), Generator::new("m", 2, 0), Generator::new("b", 2, 1)];
    let p = match name {
        ZooName::As => from_parts("As", vec![Generator::new("m", 2, 0)], &["m(m,_) - m(_,m)"])?,
        ZooName::As1 => suspend_presentation(&presentation_of(&ZooName::As, cap)?.presentation, -1, "As1")?,
        ZooName::AsM(basis) => as_m(basis)?,
        ZooName::NcGerst => from_parts("ncGerst", mb(), &NCGERST)?,
        ZooName::NcBV3 => from_parts(
            "ncBV3",
            dmb(),
            &[
                "D(D)",
                NCGERST[0],
                NCGERST[1],
                NCGERST[2],
                NCGERST[3],
                "D(m) - m(D,_) - m(_,D) - b",
                "D(b) + b(D,_) + b(_,D)",
            ],
        )?,
        ZooName::NcBV2 => from_parts(
            "ncBV2",
            vec![Generator::new("D", 1, 1), Generator::new("m", 2, 0)],
            &["D(D)", "m(m,_) - m(_,m)", "D(m(_,m)) - m(D(m),_) - m(_,D(m)) + m(_,m(D,_))"],
        )?,
        ZooName::QncBV => from_parts(
            "qncBV",
            dmb(),
            &[
                "D(D)",
                NCGERST[0],
                NCGERST[1],
                NCGERST[2],
                NCGERST[3],
                "D(m) - m(D,_) - m(_,D)",
                "D(b) + b(D,_) + b(_,D)",
            ],
        )?,
        ZooName::NcGrav => nc_grav(cap)?,
        ZooName::NcHyperCom => nc_hypercom(cap)?,
        ZooName::TAs(k) => t_as(*k)?,
        ZooName::PAs(k) => p_as(*k)?,
        ZooName::TwoNcGerst => from_parts(
            "2ncGerst",
            vec![Generator::new("m", 2, 0), Generator::new("c", 3, 1)],
            &["m(m,_) - m(_,m)", "c(m,_,_) - m(_,c)", "c(_,m,_)", "c(_,_,m) - m(c,_)", "c(c,_,_) + c(_,c,_) + c(_,_,c)"],
        )?,
        ZooName::D => from_parts("D", vec![Generator::new("D", 1, 1)], &["D(D)"])?,
    };
    let a = &p.alphabet;
    let order = match name {
        ZooName::NcGrav => weight_first_grav(a, false),
        ZooName::NcHyperCom => weight_first_grav(a, true),
        ZooName::NcBV3 | ZooName::NcBV2 | ZooName::QncBV => path_lex_with(a, &["D"]),
        ZooName::TwoNcGerst => MonomialOrder { kind: OrderKind::DegPathLex, precedence: a.ids().collect(), reversed: false },
        _ => MonomialOrder::path_lex(a),
    };
    Ok(NamedOperad { name: name.clone(), presentation: p, preferred_order: order, cap })
}

fn single(d: i64, c: u128) -> DimTable {
    let mut t = DimTable::new();
    if c > 0 {
        t.insert(d, c as usize);
    }
    t
}

/// Dimensions from the closed formulas; None where no formula is recorded.
pub fn closed_form_dims(name: &ZooName, n: usize) -> Option<DimTable> {
    if n == 0 {
        return Some(DimTable::new());
    }
    let n64 = n as u64;
    Some(match name {
        ZooName::As => single(0, 1),
        ZooName::As1 => single(n as i64 - 1, 1),
        ZooName::AsM(basis) => {
            let mut t = single(0, 1);
            for _ in 1..n {
                let mut u = DimTable::new();
                for (d, c) in &t {
                    for (_, e) in basis {
                        *u.entry(d + e).or_insert(0) += c;
                    }
                }
                t = u;
            }
            t
        }
        ZooName::NcGerst => (0..n).map(|k| (k as i64, binomial(n64 - 1, k as u64) as usize)).collect(),
        ZooName::NcBV3 | ZooName::NcBV2 | ZooName::QncBV => {
            let mut t = DimTable::new();
            for a in 0..n {
                for c in 0..=n {
                    *t.entry((a + c) as i64).or_insert(0) += (binomial(n64 - 1, a as u64) * binomial(n64, c as u64)) as usize;
                }
            }
            t
        }
        ZooName::NcGrav => {
            if n == 1 {
                single(0, 1)
            } else {
                (1..n).map(|d| (d as i64, binomial(n64 - 2, d as u64 - 1) as usize)).filter(|x| x.1 > 0).collect()
            }
        }
        ZooName::NcHyperCom => {
            if n == 1 {
                single(0, 1)
            } else {
                (0..n - 1).map(|k| (2 * k as i64, narayana(n64 - 1, k as u64 + 1) as usize)).filter(|x| x.1 > 0).collect()
            }
        }
        ZooName::TAs(k) => {
            if (n - 1) % (k - 1) == 0 {
                single(0, 1)
            } else {
                DimTable::new()
            }
        }
        ZooName::PAs(k) => {
            let m = k - 1;
            if (n - 1) % m != 0 {
                DimTable::new()
            } else {
                let j = (n - 1) / m;
                let c = binomial(n64, j as u64) / n as u128;
                single((j * (k - 2)) as i64, c)
            }
        }
        ZooName::TwoNcGerst => {
            let mut t = DimTable::new();
            let p3 = |m: usize| closed_form_dims(&ZooName::PAs(3), m).unwrap();
            for parts in crate::tree::compositions_all(n) {
                let mut acc = single(0, 1);
                for part in parts {
                    let mut u = DimTable::new();
                    for (d, c) in &acc {
                        for (e, x) in p3(part) {
                            *u.entry(d + e).or_insert(0) += c * x;
                        }
                    }
                    acc = u;
                }
                for (d, c) in acc {
                    *t.entry(d).or_insert(0) += c;
                }
            }
            t.retain(|_, c| *c > 0);
            t
        }
        ZooName::D => {
            if n == 1 {
                let mut t = single(0, 1);
                t.insert(1, 1);
                t
            } else {
                DimTable::new()
            }
        }
    })
}
