use super::normal::MonomialTable;
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::free::{Context, Element, Monomial};
use crate::linalg::{Echelon, SparseVec};
use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

/// Dimensions indexed by homological degree.
pub type DimTable = BTreeMap<i64, usize>;

struct Block {
    columns: HashMap<Monomial, usize>,
    echelon: Echelon,
}

/// Contexts with `hole` inputs, total arity `n` and context weight `w`.
fn contexts<F: Fn(&Monomial) -> bool>(table: &mut MonomialTable<F>, hole: usize, n: usize, w: usize) -> Result<Vec<Context>> {
    let mut out = Vec::new();
    if hole > n {
        return Ok(out);
    }
    for a in 1..=n + 1 - hole {
        for wu in 0..=w {
            let uppers = table.get(a, wu)?.to_vec();
            if uppers.is_empty() {
                continue;
            }
            let mut lowers = Vec::new();
            table.tuples(hole, n + 1 - a, w - wu, &mut Vec::new(), &mut lowers)?;
            for u in &uppers {
                for slot in 1..=a {
                    for l in &lowers {
                        out.push(Context { upper: u.clone(), slot, lowers: l.clone() });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Dimension of span/ideal in arity `n`, split into blocks by `key`.
fn quotient<K, KF, FF>(p: &Presentation, n: usize, key: KF, filter: FF) -> Result<BTreeMap<K, usize>>
where
    K: Ord + Hash + Clone,
    KF: Fn(&Monomial) -> K,
    FF: Fn(&Monomial) -> bool,
{
    if !p.is_degree_homogeneous() {
        return Err(Error::Invalid("relations are not degree-homogeneous".into()));
    }
    let a = &p.alphabet;
    let patterns: Vec<Monomial> =
        p.relations.iter().filter(|r| r.len() == 1).map(|r| r.terms().keys().next().unwrap().clone()).collect();
    let rels: Vec<&Element> = p.relations.iter().filter(|r| r.len() > 1).collect();
    let keep_root = |m: &Monomial| patterns.iter().all(|pat| !m.divides_at_root(pat));
    let kept = |m: &Monomial| patterns.iter().all(|pat| !m.contains(pat));
    let mut table = MonomialTable::new(a, keep_root);
    let wmax = table.max_weight(n)?;

    let mut blocks: BTreeMap<K, Block> = BTreeMap::new();
    for w in 0..=wmax {
        for m in table.get(n, w)?.to_vec() {
            if !filter(&m) {
                continue;
            }
            let b = blocks.entry(key(&m)).or_insert_with(|| Block { columns: HashMap::new(), echelon: Echelon::new() });
            let idx = b.columns.len();
            b.columns.insert(m, idx);
        }
    }
    for r in rels {
        let wlo = r.terms().keys().map(|m| m.weight()).min().unwrap();
        for wc in 0..=wmax.saturating_sub(wlo) {
            if wc + wlo > wmax {
                continue;
            }
            for ctx in contexts(&mut table, r.arity(), n, wc)? {
                let f = Element::fill(&ctx, r, a);
                let mut row_key: Option<K> = None;
                let mut terms = Vec::new();
                for (m, c) in f.terms() {
                    if !filter(m) || !kept(m) {
                        continue;
                    }
                    let k = key(m);
                    match &row_key {
                        None => row_key = Some(k),
                        Some(k0) if *k0 != k => {
                            return Err(Error::Invalid("relation is not homogeneous for the chosen grading".into()))
                        }
                        _ => {}
                    }
                    terms.push((m, c));
                }
                let Some(k) = row_key else { continue };
                let b = blocks.get_mut(&k).expect("block exists for kept monomial");
                if b.echelon.rank() == b.columns.len() {
                    continue;
                }
                let row: SparseVec = terms.into_iter().map(|(m, c)| (b.columns[m], c.clone())).collect();
                b.echelon.insert(row);
            }
        }
    }
    Ok(blocks.into_iter().map(|(k, b)| (k, b.columns.len() - b.echelon.rank())).filter(|(_, d)| *d > 0).collect())
}

fn by_degree<K>(t: BTreeMap<(i64, K), usize>) -> DimTable {
    let mut out = DimTable::new();
    for ((d, _), c) in t {
        *out.entry(d).or_insert(0) += c;
    }
    out
}

/// Dimension of the arity-n component per degree by exact linear algebra on
/// the free operad, independent of any Gröbner basis.
pub fn component_dimension_bruteforce(p: &Presentation, n: usize) -> Result<DimTable> {
    let a = &p.alphabet;
    let g = a.len();
    if p.is_content_homogeneous() {
        let t = quotient(p, n, |m| (m.degree(a), m.content(g)), |_| true)?;
        Ok(by_degree(t))
    } else if p.is_weight_homogeneous() {
        let t = quotient(p, n, |m| (m.degree(a), m.weight()), |_| true)?;
        Ok(by_degree(t))
    } else {
        quotient(p, n, |m| m.degree(a), |_| true)
    }
}

/// Dimension of the slice with a fixed number of occurrences of each generator.
pub fn content_slice_dimension(p: &Presentation, n: usize, content: &[usize]) -> Result<DimTable> {
    if !p.is_content_homogeneous() {
        return Err(Error::Invalid("relations are not homogeneous in generator content".into()));
    }
    let a = &p.alphabet;
    let g = a.len();
    if content.len() != g {
        return Err(Error::Invalid("content vector length differs from alphabet size".into()));
    }
    quotient(p, n, |m| m.degree(a), |m| m.content(g) == content)
}

/// Dimensions for arities 1..=n_max.
pub fn quotient_dimensions(p: &Presentation, n_max: usize) -> Result<BTreeMap<usize, DimTable>> {
    (1..=n_max).map(|n| Ok((n, component_dimension_bruteforce(p, n)?))).collect()
}
