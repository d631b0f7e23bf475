//! Command-line front end. Every verb calls into the library and renders the
//! result as a table.

use crate::acceptance::{self, DEFAULT_SEED};
use crate::brick::{
    complex_betti, euler_characteristic, f_vector, h_vector, loday_polytope, loday_vertex, loday_via_minkowski,
    normal_fan, random_config, real_betti, stratum_dimension, vertex_missing_basis,
};
use crate::error::{Error, Result};
use crate::givental::{
    associative_family, borjeson, borjeson_closed, builtin_fixture, builtin_fixture_names, families_equal,
    givental_direct, givental_tau, nc_order, random_operator, AlgebraFixture,
};
use crate::groebner::complete;
use crate::intersection::{correlator_trr, generating_polynomial, on_dimension_indices, polynomial_to_string};
use crate::tree::enumerate_trees;
use crate::zoo::{certify_dimensions, closed_form_dims, presentation_of, zoo_names, ZooName};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const CACHE_ENV: &str = "NCOP_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(name = "ncop", version, about = "Operads of brick manifolds, Loday polytopes and their algebra")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "markdown", global = true)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The named operads.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Graded dimensions by Gröbner basis, brute force and closed form.
    Dims {
        name: String,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        brute_max: usize,
    },
    /// Rewriting rules of the completed presentation.
    Groebner {
        name: String,
        #[arg(long, default_value_t = 5)]
        cap: usize,
    },
    /// Nonzero genus-zero correlators with n + 1 points.
    Correlators {
        #[arg(long)]
        n: usize,
        /// Include vanishing correlators of the right dimension.
        #[arg(long)]
        all: bool,
        /// Print the generating polynomial instead of the table.
        #[arg(long)]
        polynomial: bool,
    },
    /// Loday polytope vertices with optional checks
    Polytope {
        #[command(subcommand)]
        kind: PolytopeKind,
    },
    /// Normal fan of the Loday polytope.
    Fan {
        #[arg(long)]
        n: usize,
    },
    /// f- and h-vectors, complex and real Betti numbers.
    Betti {
        #[arg(long)]
        n: usize,
    },
    /// Strata and sampled configurations of the brick manifold
    Brick {
        #[command(subcommand)]
        action: BrickAction,
    },
    /// Börjeson products of a random operator on a fixture algebra.
    Borjeson {
        #[arg(long, default_value = "upper_triangular")]
        fixture: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Givental action of r z^k on the associative structure of a fixture.
    Givental {
        #[arg(long, default_value = "upper_triangular")]
        fixture: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        degree: i64,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    /// One acceptance criterion.
    Certify {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=9))]
        criterion: u64,
    },
    /// The whole acceptance suite; without --quick also every closed-form certificate.
    CertifyAll {
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZooAction {
    List,
    Relations {
        name: String,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    Dims {
        name: String,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolytopeKind {
    Loday {
        #[arg(long)]
        n: usize,
        /// Comma-separated: minkowski, missing-basis.
        #[arg(long, value_delimiter = ',')]
        check: Vec<Check>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Minkowski,
    MissingBasis,
}

#[derive(Debug, Subcommand)]
pub enum BrickAction {
    /// Planar trees indexing the strata, with their dimensions.
    Strata {
        #[arg(long)]
        n: usize,
    },
    /// A random point of the brick manifold.
    Sample {
        #[arg(long)]
        n: usize,
    },
}

pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

pub fn render(tables: &[Table], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let v: Vec<Value> =
                tables.iter().map(|t| json!({"title": t.title, "columns": t.columns, "rows": t.rows})).collect();
            out = serde_json::to_string_pretty(&v).expect("tables serialize");
            out.push('\n');
        }
        Format::Csv => {
            for (k, t) in tables.iter().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                if tables.len() > 1 {
                    out.push_str(&format!("# {}\n", t.title));
                }
                out.push_str(&t.columns.iter().cloned().map(csv_field).collect::<Vec<_>>().join(","));
                out.push('\n');
                for r in &t.rows {
                    out.push_str(&r.iter().map(|c| csv_field(cell(c))).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
            }
        }
        Format::Markdown => {
            for (k, t) in tables.iter().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("## {}\n\n", t.title));
                out.push_str(&format!("| {} |\n", t.columns.join(" | ")));
                out.push_str(&format!("|{}\n", "---|".repeat(t.columns.len())));
                for r in &t.rows {
                    let cells: Vec<String> = r.iter().map(|c| cell(c).replace('|', "\\|").replace('\n', "<br>")).collect();
                    out.push_str(&format!("| {} |\n", cells.join(" | ")));
                }
            }
        }
    }
    out
}

/// A failure that still produced output.
struct Failed {
    tables: Vec<Table>,
    witness: String,
}

enum Outcome {
    Ok(Vec<Table>),
    Failed(Failed),
}

fn fixture(name: &str) -> Result<AlgebraFixture> {
    if name.ends_with(".json") {
        let text = std::fs::read_to_string(name).map_err(|e| Error::Invalid(format!("{name}: {e}")))?;
        AlgebraFixture::from_json(&text)
    } else {
        builtin_fixture(name).map_err(|_| {
            Error::UnknownName(format!("{name} (builtin fixtures: {})", builtin_fixture_names().join(", ")))
        })
    }
}

fn dim_text(t: &crate::groebner::DimTable) -> String {
    t.iter().map(|(d, c)| format!("{d}:{c}")).collect::<Vec<_>>().join(" ")
}

fn cmd_zoo(action: &ZooAction) -> Result<Outcome> {
    match action {
        ZooAction::List => {
            let mut t = Table::new("named operads", &["name", "generators", "quadratic relations", "closed form"]);
            for name in zoo_names() {
                let z: ZooName = name.parse()?;
                let p = presentation_of(&z, 4)?.presentation;
                let gens: Vec<String> = p.alphabet.gens().iter().map(|g| format!("{}({},{})", g.name, g.arity, g.degree)).collect();
                t.push(vec![json!(name), json!(gens.join(" ")), json!(p.relations.len()), json!(closed_form_dims(&z, 2).is_some())]);
            }
            Ok(Outcome::Ok(vec![t]))
        }
        ZooAction::Relations { name, cap } => {
            let z: ZooName = name.parse()?;
            let p = presentation_of(&z, *cap)?.presentation;
            let mut g = Table::new(format!("{name} generators"), &["name", "arity", "degree"]);
            for x in p.alphabet.gens() {
                g.push(vec![json!(x.name), json!(x.arity), json!(x.degree)]);
            }
            let mut r = Table::new(format!("{name} relations"), &["arity", "relation"]);
            for e in &p.relations {
                r.push(vec![json!(e.arity()), json!(e.display(&p.alphabet).to_string())]);
            }
            Ok(Outcome::Ok(vec![g, r]))
        }
        ZooAction::Dims { name, n_max } => cmd_dims(name, 1, *n_max, (*n_max).min(5)),
    }
}

fn cmd_dims(name: &str, n_min: usize, n_max: usize, brute_max: usize) -> Result<Outcome> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::Invalid(format!("empty arity range {n_min}..={n_max}")));
    }
    let z: ZooName = name.parse()?;
    let (cert, witness) = match certify_dimensions(&z, n_max, brute_max) {
        Ok(c) => (c, None),
        Err(Error::Certificate(w)) => {
            let mut c = certify_dimensions(&z, n_max, 0).or_else(|_| certify_dimensions(&z, 1, 0))?;
            c.status = "FAIL".into();
            (c, Some(w))
        }
        Err(e) => return Err(e),
    };
    let rows: Vec<_> = cert.tables.iter().filter(|r| r.n >= n_min).collect();
    let mut cols: Vec<String> = vec!["degree".into()];
    cols.extend(rows.iter().map(|r| format!("n={}", r.n)));
    let degrees: std::collections::BTreeSet<i64> = rows.iter().flat_map(|r| r.groebner.keys().copied()).collect();
    let mut t = Table { title: format!("{name} dimensions"), columns: cols, rows: Vec::new() };
    for d in degrees {
        let mut row = vec![json!(d)];
        row.extend(rows.iter().map(|r| json!(r.groebner.get(&d).copied().unwrap_or(0))));
        t.push(row);
    }
    let mut total = vec![json!("total")];
    total.extend(rows.iter().map(|r| json!(r.groebner.values().sum::<usize>())));
    t.push(total);
    let mut s = Table::new(format!("{name} agreement"), &["n", "groebner", "brute force", "closed form", "status"]);
    for r in &rows {
        let agree = r.brute.as_ref().is_none_or(|b| b == &r.groebner) && r.closed == r.groebner;
        s.push(vec![
            json!(r.n),
            json!(dim_text(&r.groebner)),
            json!(r.brute.as_ref().map(dim_text).unwrap_or_else(|| "-".into())),
            json!(dim_text(&r.closed)),
            json!(if agree { "PASS" } else { "FAIL" }),
        ]);
    }
    let tables = vec![t, s];
    Ok(match witness {
        None => Outcome::Ok(tables),
        Some(w) => Outcome::Failed(Failed { tables, witness: w }),
    })
}

fn cmd_groebner(name: &str, cap: usize) -> Result<Outcome> {
    let z: ZooName = name.parse()?;
    let op = presentation_of(&z, cap)?;
    let g = complete(&op.presentation, &op.preferred_order, cap)?;
    let mut s = Table::new(format!("{name} completion"), &["arity cap", "rules", "additions", "complete to cap"]);
    s.push(vec![json!(cap), json!(g.rules.len()), json!(g.additions), json!(g.complete_up_to_cap)]);
    let mut t = Table::new(format!("{name} rewriting rules"), &["arity", "lead", "rule"]);
    for r in &g.rules {
        t.push(vec![json!(r.lead.arity()), json!(r.lead.display(&g.alphabet).to_string()), json!(r.poly.display(&g.alphabet).to_string())]);
    }
    let mut h = Table::new(format!("{name} normal monomials"), &["n", "graded", "total"]);
    for n in 1..=cap {
        let d = g.hilbert(n)?;
        h.push(vec![json!(n), json!(dim_text(&d)), json!(d.values().sum::<usize>())]);
    }
    Ok(Outcome::Ok(vec![s, t, h]))
}

fn correlator_rows(n: usize, all: bool) -> Result<Vec<(Vec<u32>, i128)>> {
    let cache = std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join(format!("correlators-{n}{}.json", if all { "-all" } else { "" })));
    if let Some(p) = &cache {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(rows) = serde_json::from_str(&text) {
                return Ok(rows);
            }
        }
    }
    if n < 2 {
        return Err(Error::Invalid("correlators need n >= 2".into()));
    }
    if n > 14 {
        return Err(Error::Resource(format!("correlators with n = {n} exceed the enumeration guard of 14")));
    }
    let rows: Vec<(Vec<u32>, i128)> = on_dimension_indices(n)
        .into_iter()
        .map(|i| {
            let v = correlator_trr(&i);
            let mut key = vec![i.d0];
            key.extend(&i.ds);
            (key, v)
        })
        .filter(|(_, v)| all || *v != 0)
        .collect();
    if let Some(p) = &cache {
        if let Some(dir) = p.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let _ = std::fs::write(p, serde_json::to_string(&rows).expect("rows serialize"));
    }
    Ok(rows)
}

fn cmd_correlators(n: usize, all: bool, polynomial: bool) -> Result<Outcome> {
    if polynomial {
        let mut p = Table::new("generating polynomial", &["n", "polynomial"]);
        p.push(vec![json!(n), json!(polynomial_to_string(&generating_polynomial(n)?))]);
        return Ok(Outcome::Ok(vec![p]));
    }
    let rows = correlator_rows(n, all)?;
    let mut cols: Vec<String> = (0..=n).map(|i| format!("d{i}")).collect();
    cols.push("value".into());
    let mut t = Table { title: format!("correlators with n = {n}"), columns: cols, rows: Vec::new() };
    for (key, v) in rows {
        let mut row: Vec<Value> = key.into_iter().map(|d| json!(d)).collect();
        row.push(json!(v));
        t.push(row);
    }
    Ok(Outcome::Ok(vec![t]))
}

fn vec_text(v: &[i64]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn cmd_loday(n: usize, checks: &[Check]) -> Result<Outcome> {
    let p = loday_polytope(n)?;
    let mut t = Table::new(format!("vertices of L_{n}"), &["tree", "vertex"]);
    for tree in enumerate_trees(n, true) {
        t.push(vec![json!(tree.to_text()), json!(vec_text(&loday_vertex(&tree)?))]);
    }
    let mut tables = vec![t];
    if !checks.is_empty() {
        let mut c = Table::new("checks", &["check", "status"]);
        let mut witness = None;
        for ch in checks {
            let (label, ok) = match ch {
                Check::Minkowski => ("minkowski", loday_via_minkowski(n)?.vertex_set() == p.vertex_set()),
                Check::MissingBasis => {
                    let mut ok = true;
                    for tree in enumerate_trees(n, true) {
                        if vertex_missing_basis(&tree)? != loday_vertex(&tree)? {
                            witness.get_or_insert_with(|| format!("missing-basis vertex differs at {}", tree.to_text()));
                            ok = false;
                            break;
                        }
                    }
                    ("missing-basis", ok)
                }
            };
            if !ok {
                witness.get_or_insert_with(|| format!("{label} check failed for n = {n}"));
            }
            c.push(vec![json!(label), json!(if ok { "PASS" } else { "FAIL" })]);
        }
        tables.push(c);
        if let Some(w) = witness {
            return Ok(Outcome::Failed(Failed { tables, witness: w }));
        }
    }
    Ok(Outcome::Ok(tables))
}

fn cmd_fan(n: usize) -> Result<Outcome> {
    let f = normal_fan(n)?;
    let mut r = Table::new(format!("rays of the fan of L_{n}"), &["ray", "interval", "vector"]);
    for (k, (v, iv)) in f.rays.iter().zip(&f.ray_intervals).enumerate() {
        r.push(vec![json!(k), json!(format!("[{},{}]", iv.0, iv.1)), json!(vec_text(v))]);
    }
    let mut c = Table::new("maximal cones", &["cone", "tree", "rays"]);
    for (k, (rays, tree)) in f.cones.iter().zip(&f.cone_trees).enumerate() {
        c.push(vec![json!(k), json!(tree), json!(rays.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))]);
    }
    let mut w = Table::new("walls", &["cones", "hyperplane"]);
    for x in &f.walls {
        w.push(vec![json!(format!("{} {}", x.cones.0, x.cones.1)), json!(format!("y{} = y{}", x.hyperplane.0, x.hyperplane.1))]);
    }
    let mut s = Table::new("checks", &["check", "status"]);
    let pf = |b: bool| json!(if b { "PASS" } else { "FAIL" });
    let checks = [
        ("strongly convex", f.cones_strongly_convex()),
        ("intersections are faces", f.intersections_are_faces()?),
        ("walls on hyperplanes", f.walls_on_hyperplanes()),
        ("complete", f.is_complete()),
    ];
    for (name, ok) in checks {
        s.push(vec![json!(name), pf(ok)]);
    }
    let tables = vec![r, c, w, s];
    Ok(match checks.iter().find(|x| !x.1) {
        None => Outcome::Ok(tables),
        Some((name, _)) => Outcome::Failed(Failed { tables, witness: format!("fan of L_{n}: {name} fails") }),
    })
}

fn cmd_betti(n: usize) -> Result<Outcome> {
    if n < 2 {
        return Err(Error::Invalid("betti numbers need n >= 2".into()));
    }
    let mut t = Table::new(format!("brick manifold with n = {n}"), &["sequence", "values"]);
    let join = |v: Vec<String>| v.join(" ");
    t.push(vec![json!("f-vector"), json!(join(f_vector(n).iter().map(|x| x.to_string()).collect()))]);
    t.push(vec![json!("h-vector"), json!(join(h_vector(n).iter().map(|x| x.to_string()).collect()))]);
    t.push(vec![json!("complex betti"), json!(join(complex_betti(n).iter().map(|x| x.to_string()).collect()))]);
    let rb = real_betti(n);
    t.push(vec![json!("real betti"), json!(join(rb.iter().map(|x| x.to_string()).collect()))]);
    t.push(vec![json!("real euler characteristic"), json!(euler_characteristic(&rb).to_string())]);
    Ok(Outcome::Ok(vec![t]))
}

fn cmd_brick(action: &BrickAction, seed: u64) -> Result<Outcome> {
    match action {
        BrickAction::Strata { n } => {
            let mut t = Table::new(format!("strata with n = {n}"), &["tree", "dimension"]);
            for tree in enumerate_trees(*n, false) {
                t.push(vec![json!(tree.to_text()), json!(stratum_dimension(&tree))]);
            }
            Ok(Outcome::Ok(vec![t]))
        }
        BrickAction::Sample { n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (tree, c) = random_config(*n, &mut rng)?;
            c.validate()?;
            let mut t = Table::new(format!("random point with n = {n}"), &["stratum", "configuration"]);
            t.push(vec![json!(tree.to_text()), json!(c.to_text().trim_end())]);
            Ok(Outcome::Ok(vec![t]))
        }
    }
}

fn cmd_borjeson(name: &str, degree: i64, n_max: usize, seed: u64) -> Result<Outcome> {
    let a = fixture(name)?.algebra()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = random_operator(&a.space, degree, 0.6, &mut rng);
    let mut t = Table::new(format!("Börjeson products on {name}"), &["n", "nonzero entries", "vanishes", "closed form agrees"]);
    let mut witness = None;
    for n in 1..=n_max {
        let b = a.admissible_part(&borjeson(&d, &a, n)?);
        let agrees = b == borjeson_closed(&d, &a, n)?;
        if !agrees {
            witness.get_or_insert_with(|| format!("closed form differs from the recursion at n = {n}"));
        }
        t.push(vec![json!(n), json!(b.nnz()), json!(a.vanishes(&b)), json!(agrees)]);
    }
    let mut o = Table::new("order", &["operator degree", "nc order"]);
    let order = nc_order(&d, &a, n_max)?;
    o.push(vec![json!(degree), order.map_or(json!(format!("> {}", n_max - 1)), |k| json!(k))]);
    let tables = vec![t, o];
    Ok(match witness {
        None => Outcome::Ok(tables),
        Some(w) => Outcome::Failed(Failed { tables, witness: w }),
    })
}

fn cmd_givental(name: &str, degree: i64, k_max: usize, cap: usize, seed: u64) -> Result<Outcome> {
    let a = fixture(name)?.algebra()?;
    let nu = associative_family(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = random_operator(&a.space, degree, 0.6, &mut rng);
    let mut t = Table::new(format!("Givental action on {name}"), &["k", "n", "nonzero entries", "direct evaluation agrees"]);
    let mut witness = None;
    for k in 0..=k_max {
        let rec = givental_tau(&r, k, &nu, &a.space, cap)?;
        let dir = givental_direct(&r, k, &a, cap)?;
        let agrees = families_equal(&rec, &dir);
        if !agrees {
            witness.get_or_insert_with(|| format!("recursion differs from direct evaluation at k = {k}"));
        }
        for (n, op) in &rec {
            t.push(vec![json!(k), json!(n), json!(op.nnz()), json!(agrees)]);
        }
    }
    Ok(match witness {
        None => Outcome::Ok(vec![t]),
        Some(w) => Outcome::Failed(Failed { tables: vec![t], witness: w }),
    })
}

fn criteria_table(results: &[acceptance::Criterion]) -> Table {
    let mut t = Table::new("acceptance", &["criterion", "name", "status", "detail"]);
    for c in results {
        t.push(vec![json!(c.id), json!(c.name), json!(if c.pass { "PASS" } else { "FAIL" }), json!(c.detail)]);
    }
    t
}

fn cmd_certify(ids: &[usize], extended: bool, seed: u64) -> Result<Outcome> {
    let results: Vec<_> = ids.iter().map(|&i| acceptance::run(i, seed)).collect::<Result<_>>()?;
    let mut tables = vec![criteria_table(&results)];
    let mut witness = results.iter().find(|c| !c.pass).map(|c| format!("criterion {}: {}", c.id, c.detail));
    if extended {
        let mut t = Table::new("closed-form certificates", &["operad", "arities", "status"]);
        for (name, n) in [
            ("As", 6),
            ("As1", 6),
            ("As_M", 5),
            ("ncGerst", 6),
            ("ncBV3", 4),
            ("ncBV2", 4),
            ("qncBV", 4),
            ("ncGrav", 7),
            ("ncHyperCom", 7),
            ("tAs3", 7),
            ("pAs3", 7),
            ("2ncGerst", 6),
            ("D", 3),
        ] {
            let z: ZooName = name.parse()?;
            let status = match certify_dimensions(&z, n, n.min(5)) {
                Ok(_) => "PASS".to_string(),
                Err(Error::Certificate(w)) => {
                    witness.get_or_insert_with(|| w.clone());
                    "FAIL".to_string()
                }
                Err(e) => return Err(e),
            };
            t.push(vec![json!(name), json!(format!("1..{n}")), json!(status)]);
        }
        tables.push(t);
    }
    Ok(match witness {
        None => Outcome::Ok(tables),
        Some(w) => Outcome::Failed(Failed { tables, witness: w }),
    })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Zoo { action } => cmd_zoo(action),
        Command::Dims { name, n_min, n_max, brute_max } => cmd_dims(name, *n_min, *n_max, *brute_max),
        Command::Groebner { name, cap } => cmd_groebner(name, *cap),
        Command::Correlators { n, all, polynomial } => cmd_correlators(*n, *all, *polynomial),
        Command::Polytope { kind: PolytopeKind::Loday { n, check } } => cmd_loday(*n, check),
        Command::Fan { n } => cmd_fan(*n),
        Command::Betti { n } => cmd_betti(*n),
        Command::Brick { action } => cmd_brick(action, cli.seed),
        Command::Borjeson { fixture, degree, n_max } => cmd_borjeson(fixture, *degree, *n_max, cli.seed),
        Command::Givental { fixture, degree, k_max, cap } => cmd_givental(fixture, *degree, *k_max, *cap, cli.seed),
        Command::Certify { criterion } => cmd_certify(&[*criterion as usize], false, cli.seed),
        Command::CertifyAll { quick } => cmd_certify(&(1..=9).collect::<Vec<_>>(), !quick, cli.seed),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code: 0 success, 1 certificate failure, 2 usage or input error, 3 resource guard.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    finish(execute(&cli), cli.format, cli.output.as_deref(), out, err)
}

fn finish(result: Result<Outcome>, format: Format, output: Option<&std::path::Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (tables, code) = match result {
        Ok(Outcome::Ok(t)) => (t, 0),
        Ok(Outcome::Failed(f)) => {
            let _ = writeln!(err, "certificate failed: {}", f.witness);
            (f.tables, 1)
        }
        Err(e) => {
            let code = match e {
                Error::Certificate(_) => 1,
                Error::Resource(_) | Error::ArityCap { .. } => 3,
                _ => 2,
            };
            let _ = writeln!(err, "error: {e}");
            return code;
        }
    };
    let text = render(&tables, format);
    match output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code_of(result: Result<Outcome>) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = finish(result, Format::Csv, None, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        let mut t = Table::new("x", &["a"]);
        t.push(vec![json!(1)]);
        let (code, out, err) = code_of(Ok(Outcome::Failed(Failed { tables: vec![t], witness: "arity 3".into() })));
        assert_eq!((code, out.as_str()), (1, "a\n1\n"));
        assert!(err.contains("certificate failed: arity 3"));
        assert_eq!(code_of(Err(Error::Certificate("w".into()))).0, 1);
        assert_eq!(code_of(Err(Error::ArityCap { arity: 12, cap: 9 })).0, 3);
        assert_eq!(code_of(Err(Error::UnknownName("x".into()))).0, 2);
        assert_eq!(code_of(Ok(Outcome::Ok(vec![]))).0, 0);
    }

    #[test]
    fn csv_quoting() {
        let mut t = Table::new("x", &["a", "b"]);
        t.push(vec![json!("p,q"), json!("say \"hi\"")]);
        assert_eq!(render(&[t], Format::Csv), "a,b\n\"p,q\",\"say \"\"hi\"\"\"\n");
    }
}
