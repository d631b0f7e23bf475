use super::brute::{component_dimension_bruteforce, DimTable};
use super::koszul::same_relation_space;
use super::presentation::Presentation;
use crate::error::{invalid, Result};
use crate::tree::compositions;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributiveReport {
    /// `(n, dims of the composite presentation, dims of P∘Q)`.
    pub rows: Vec<(usize, DimTable, DimTable)>,
    pub ok: bool,
    pub first_mismatch: Option<(usize, i64)>,
}

fn convolve(x: &DimTable, y: &DimTable) -> DimTable {
    let mut out = DimTable::new();
    for (a, u) in x {
        for (b, v) in y {
            *out.entry(a + b).or_insert(0) += u * v;
        }
    }
    out
}

/// Graded dimensions of the composite collection (P∘Q)(n).
pub fn composite_dimensions(p: &BTreeMap<usize, DimTable>, q: &BTreeMap<usize, DimTable>, n: usize) -> DimTable {
    let empty = DimTable::new();
    let mut out = DimTable::new();
    for k in 1..=n {
        let pk = p.get(&k).unwrap_or(&empty);
        if pk.is_empty() {
            continue;
        }
        for parts in compositions(n, k) {
            let mut acc = pk.clone();
            for part in parts {
                acc = convolve(&acc, q.get(&part).unwrap_or(&empty));
            }
            for (d, c) in acc {
                *out.entry(d).or_insert(0) += c;
            }
        }
    }
    out.retain(|_, c| *c > 0);
    out
}

/// Compares dims of `pq` with those of P∘Q for arities up to `cap`, after
/// checking that the relations of P and Q lie among those of `pq`.
pub fn distributive_law_check(pq: &Presentation, p: &Presentation, q: &Presentation, cap: usize) -> Result<DistributiveReport> {
    for part in [p, q] {
        let imported: Vec<_> = part.relations.iter().map(|r| pq.import(r, &part.alphabet)).collect::<Result<_>>()?;
        let mut joint = pq.relations.clone();
        joint.extend(imported.iter().cloned());
        if !same_relation_space(&pq.relations, &joint) {
            return invalid(format!("relations of {} are not among those of {}", part.name, pq.name));
        }
    }
    let mut pd = BTreeMap::new();
    let mut qd = BTreeMap::new();
    for n in 1..=cap {
        pd.insert(n, component_dimension_bruteforce(p, n)?);
        qd.insert(n, component_dimension_bruteforce(q, n)?);
    }
    let mut rows = Vec::new();
    let mut first_mismatch = None;
    for n in 1..=cap {
        let lhs = component_dimension_bruteforce(pq, n)?;
        let rhs = composite_dimensions(&pd, &qd, n);
        if first_mismatch.is_none() && lhs != rhs {
            let d = lhs.keys().chain(rhs.keys()).find(|d| lhs.get(d) != rhs.get(d)).copied().unwrap_or(0);
            first_mismatch = Some((n, d));
        }
        rows.push((n, lhs, rhs));
    }
    Ok(DistributiveReport { ok: first_mismatch.is_none(), rows, first_mismatch })
}
