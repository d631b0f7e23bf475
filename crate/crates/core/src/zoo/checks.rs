use super::named::{closed_form_dims, presentation_of, NamedOperad, ZooName};
use crate::error::{Error, Result};
use crate::free::{substitute, Alphabet, Element, GenId, Monomial};
use crate::groebner::{complete, component_dimension_bruteforce, DimTable, GroebnerBasis};
use crate::linalg::{q, Matrix, Q};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

fn right_comb_m(a: &Alphabet, k: usize) -> Element {
    let m = a.corolla_named("m").expect("m");
    let mut t = Monomial::Leaf;
    for _ in 0..k {
        t = match t {
            Monomial::Leaf => m.clone(),
            other => Monomial::Node(a.id("m").unwrap(), vec![Monomial::Leaf, other]),
        };
    }
    Element::monomial(t)
}

/// λ_k = Σ_i m^{(k-2)} ∘_i b over the ncGerst generators.
pub fn expand_lambda(k: usize) -> Result<Element> {
    if k < 2 {
        return Err(Error::Invalid("λ_k needs k >= 2".into()));
    }
    let gerst = presentation_of(&ZooName::NcGerst, 3)?.presentation;
    let a = &gerst.alphabet;
    let comb = right_comb_m(a, k - 2);
    let b = Element::monomial(a.corolla_named("b")?);
    let mut e = Element::zero(k);
    for i in 1..=k - 1 {
        e.add_scaled(&Q::one(), &comb.compose(i, &b, a)?);
    }
    Ok(e)
}

/// Image of a monomial in the λ generators inside ncGerst.
pub fn lambda_image(m: &Monomial, grav: &Alphabet, gerst: &Alphabet) -> Result<Element> {
    let mut cache: HashMap<GenId, Element> = HashMap::new();
    for g in grav.ids() {
        cache.insert(g, expand_lambda(grav.get(g).arity)?);
    }
    substitute(m, grav, gerst, &|g| cache[&g].clone())
}

fn lambda_image_element(e: &Element, grav: &Alphabet, gerst: &Alphabet) -> Result<Element> {
    let mut out = Element::zero(e.arity());
    for (m, c) in e.terms() {
        out.add_scaled(c, &lambda_image(m, grav, gerst)?);
    }
    Ok(out)
}

fn gerst_basis(n: usize) -> Result<(NamedOperad, GroebnerBasis)> {
    let g = presentation_of(&ZooName::NcGerst, n.max(3))?;
    let gb = complete(&g.presentation, &g.preferred_order, n.max(3))?;
    Ok((g, gb))
}

/// Per arity, whether the λ-relations map to zero in ncGerst.
pub fn grav_relations_hold_in_ncgerst(n_max: usize) -> Result<Vec<(usize, bool)>> {
    let grav = presentation_of(&ZooName::NcGrav, n_max)?.presentation;
    let (g, gb) = gerst_basis(n_max)?;
    let mut out = Vec::new();
    for n in 3..=n_max {
        let mut ok = true;
        for r in grav.relations_in_arity(n) {
            let img = lambda_image_element(r, &grav.alphabet, &g.presentation.alphabet)?;
            ok &= gb.reduce(&img)?.is_zero();
        }
        out.push((n, ok));
    }
    Ok(out)
}

/// Odd derivation relabelling one generator as another, with the sign of
/// passing the vertices that precede it in preorder.
fn derivation(m: &Monomial, a: &Alphabet, from: GenId, to: GenId) -> Element {
    fn go(m: &Monomial, a: &Alphabet, from: GenId, before: &mut i64, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if let Monomial::Node(g, ch) = m {
            if *g == from {
                out.push((path.clone(), *before));
            }
            *before += a.get(*g).degree;
            for (k, c) in ch.iter().enumerate() {
                path.push(k);
                go(c, a, from, before, path, out);
                path.pop();
            }
        }
    }
    let mut sites = Vec::new();
    go(m, a, from, &mut 0, &mut Vec::new(), &mut sites);
    let mut e = Element::zero(m.arity());
    for (p, before) in sites {
        let Monomial::Node(_, ch) = m.subtree(&p) else { unreachable!() };
        let relabeled = m.replace_subtree(&p, Monomial::Node(to, ch.clone()));
        e.add_term(if before.rem_euclid(2) == 1 { -Q::one() } else { Q::one() }, relabeled);
    }
    e
}

fn derivation_element(e: &Element, a: &Alphabet, from: GenId, to: GenId) -> Element {
    let mut out = Element::zero(e.arity());
    for (m, c) in e.terms() {
        out.add_scaled(c, &derivation(m, a, from, to));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct D1H1Report {
    pub n: usize,
    pub dim: usize,
    pub derivations_preserve_ideal: bool,
    pub homotopy_identity: bool,
    pub d1_squared_zero: bool,
    pub h1_squared_zero: bool,
    pub rank_d1: usize,
    pub dim_ker_d1: usize,
    pub lambda_rank: usize,
    pub lambda_in_kernel: bool,
    pub ok: bool,
}

/// D₁(m)=b, H₁(b)=m on the arity-n component of ncGerst.
pub fn d1_h1_check(n: usize) -> Result<D1H1Report> {
    if n < 2 {
        return Err(Error::Invalid("d1/h1 check needs n >= 2".into()));
    }
    let (g, gb) = gerst_basis(n)?;
    let a = &g.presentation.alphabet;
    let (m, b) = (a.id("m")?, a.id("b")?);
    let preserve = g.presentation.relations.iter().all(|r| {
        gb.reduce(&derivation_element(r, a, m, b)).map(|x| x.is_zero()).unwrap_or(false)
            && gb.reduce(&derivation_element(r, a, b, m)).map(|x| x.is_zero()).unwrap_or(false)
    });
    let basis = gb.normal_monomials(n)?;
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let dim = basis.len();
    let to_col = |e: &Element| -> Result<Vec<Q>> {
        let r = gb.reduce(e)?;
        let mut v = vec![Q::zero(); dim];
        for (t, c) in r.terms() {
            v[index[t]] = c.clone();
        }
        Ok(v)
    };
    let matrix_of = |from: GenId, to: GenId| -> Result<Matrix> {
        let mut mat = Matrix::zeros(dim, dim);
        for (j, x) in basis.iter().enumerate() {
            for (i, c) in to_col(&derivation(x, a, from, to))?.into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        Ok(mat)
    };
    let d = matrix_of(m, b)?;
    let h = matrix_of(b, m)?;
    let dh = d.mul(&h);
    let hd = h.mul(&d);
    let mut homotopy = true;
    for i in 0..dim {
        for j in 0..dim {
            let expect = if i == j { q(n as i64 - 1) } else { Q::zero() };
            if dh.get(i, j) + hd.get(i, j) != expect {
                homotopy = false;
            }
        }
    }
    let is_zero = |x: &Matrix| (0..dim).all(|i| x.row(i).iter().all(|c| c.is_zero()));
    let d2 = is_zero(&d.mul(&d));
    let h2 = is_zero(&h.mul(&h));
    let rank_d1 = d.rank();
    let dim_ker_d1 = dim - rank_d1;

    let grav = presentation_of(&ZooName::NcGrav, n.max(3))?;
    let ggb = complete(&grav.presentation, &grav.preferred_order, n.max(3))?;
    let mut lambda_cols = Vec::new();
    for x in ggb.normal_monomials(n)? {
        lambda_cols.push(to_col(&lambda_image(&x, &grav.presentation.alphabet, a)?)?);
    }
    let lam = Matrix::from_rows(lambda_cols.clone(), dim);
    let lambda_rank = lam.rank();
    let lambda_in_kernel = lambda_cols.iter().all(|v| {
        (0..dim).all(|i| {
            let mut s = Q::zero();
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    s += d.get(i, j) * c;
                }
            }
            s.is_zero()
        })
    });
    let ok = preserve && homotopy && d2 && h2 && dim_ker_d1 == rank_d1 && lambda_rank == dim_ker_d1 && lambda_in_kernel;
    Ok(D1H1Report {
        n,
        dim,
        derivations_preserve_ideal: preserve,
        homotopy_identity: homotopy,
        d1_squared_zero: d2,
        h1_squared_zero: h2,
        rank_d1,
        dim_ker_d1,
        lambda_rank,
        lambda_in_kernel,
        ok,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CertificateRow {
    pub n: usize,
    pub groebner: DimTable,
    pub brute: Option<DimTable>,
    pub closed: DimTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub name: String,
    pub range: (usize, usize),
    pub status: String,
    pub tables: Vec<CertificateRow>,
    pub first_discrepancy: Option<(usize, i64)>,
}

fn first_difference(x: &DimTable, y: &DimTable) -> Option<i64> {
    x.keys().chain(y.keys()).find(|d| x.get(d) != y.get(d)).copied()
}

/// Gröbner, brute-force and closed-form dimensions for arities 1..=n_max;
/// brute force runs up to `brute_max`.
pub fn certify_dimensions(name: &ZooName, n_max: usize, brute_max: usize) -> Result<Certificate> {
    let named = presentation_of(name, n_max)?;
    let gb_source = match name {
        ZooName::NcBV3 | ZooName::NcBV2 => presentation_of(&ZooName::QncBV, n_max)?,
        _ => named.clone(),
    };
    let cap = n_max.max(gb_source.presentation.max_relation_arity());
    let gb = complete(&gb_source.presentation, &gb_source.preferred_order, cap)?;
    let mut tables = Vec::new();
    let mut first = None;
    for n in 1..=n_max {
        let groebner = gb.hilbert(n)?;
        let closed = closed_form_dims(name, n).ok_or_else(|| Error::Invalid(format!("no closed form for {name}")))?;
        let brute = if n <= brute_max { Some(component_dimension_bruteforce(&named.presentation, n)?) } else { None };
        if first.is_none() {
            let mut d = first_difference(&groebner, &closed);
            if d.is_none() {
                if let Some(bt) = &brute {
                    d = first_difference(bt, &closed);
                }
            }
            if let Some(d) = d {
                first = Some((n, d));
            }
        }
        tables.push(CertificateRow { n, groebner, brute, closed });
    }
    let cert = Certificate {
        name: name.to_string(),
        range: (1, n_max),
        status: if first.is_none() { "PASS".into() } else { "FAIL".into() },
        tables,
        first_discrepancy: first,
    };
    if let Some((n, d)) = first {
        return Err(Error::Certificate(format!("{name}: dimensions disagree at arity {n}, degree {d}")));
    }
    Ok(cert)
}

type Series = BTreeMap<(usize, i64), i128>;

fn mul(x: &Series, y: &Series, zmax: usize) -> Series {
    let mut out = Series::new();
    for ((a, p), u) in x {
        for ((b, r), v) in y {
            if a + b <= zmax {
                *out.entry((a + b, p + r)).or_insert(0) += u * v;
            }
        }
    }
    out
}

fn add_into(x: &mut Series, y: &Series, c: i128) {
    for (k, v) in y {
        *x.entry(*k).or_insert(0) += c * v;
    }
}

/// Nonzero coefficients of q²f² − f(1 − z + zq²) + z through z^{zmax}, where f is
/// the series Σ dim_d(n) z^n q^d built from `dims` (arity 1 contributes z).
pub fn generating_function_residual(dims: &BTreeMap<usize, DimTable>, zmax: usize) -> Vec<((usize, i64), i128)> {
    let mut f = Series::new();
    f.insert((1, 0), 1);
    for (n, row) in dims {
        if *n >= 2 && *n <= zmax {
            for (d, c) in row {
                f.insert((*n, *d), *c as i128);
            }
        }
    }
    let mut r = Series::new();
    let ff = mul(&f, &f, zmax);
    for ((a, p), v) in ff {
        *r.entry((a, p + 2)).or_insert(0) += v;
    }
    let lin: Series = [((0, 0), 1), ((1, 0), -1), ((1, 2), 1)].into_iter().collect();
    add_into(&mut r, &mul(&f, &lin, zmax), -1);
    *r.entry((1, 0)).or_insert(0) += 1;
    r.into_iter().filter(|(_, v)| *v != 0).collect()
}
