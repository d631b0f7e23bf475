use ncop::acceptance::{run, DEFAULT_SEED};
use ncop::brick::{complex_betti, h_vector, loday_polytope, real_betti};
use ncop::groebner::DimTable;
use ncop::intersection::{generating_polynomial, polynomial_to_string};
use ncop::zoo::{certify_dimensions, ZooName};
use std::io::Write;

fn table(pairs: &[(i64, usize)]) -> DimTable {
    pairs.iter().copied().collect()
}

#[test]
fn all_criteria() {
    let mut failed = Vec::new();
    for id in 1..=9 {
        let c = run(id, DEFAULT_SEED).unwrap();
        // the stderr handle bypasses libtest capture
        writeln!(std::io::stderr(), "{}", c.line()).unwrap();
        if !c.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

#[test]
fn frozen_hypercom_table() {
    let c = certify_dimensions(&ZooName::NcHyperCom, 6, 5).unwrap();
    let rows: Vec<DimTable> = c.tables.iter().map(|r| r.groebner.clone()).collect();
    assert_eq!(
        rows,
        vec![
            table(&[(0, 1)]),
            table(&[(0, 1)]),
            table(&[(0, 1), (2, 1)]),
            table(&[(0, 1), (2, 3), (4, 1)]),
            table(&[(0, 1), (2, 6), (4, 6), (6, 1)]),
            table(&[(0, 1), (2, 10), (4, 20), (6, 10), (8, 1)]),
        ]
    );
}

#[test]
fn frozen_grav_and_gerst_tables() {
    let g = certify_dimensions(&ZooName::NcGrav, 5, 5).unwrap();
    assert_eq!(g.tables[4].groebner, table(&[(1, 1), (2, 3), (3, 3), (4, 1)]));
    let n = certify_dimensions(&ZooName::NcGerst, 4, 4).unwrap();
    assert_eq!(n.tables[3].groebner, table(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
    let b = certify_dimensions(&ZooName::QncBV, 2, 2).unwrap();
    assert_eq!(b.tables[1].groebner, table(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
}

#[test]
fn frozen_correlator_polynomials() {
    let p = |n| polynomial_to_string(&generating_polynomial(n).unwrap());
    assert_eq!(p(2), "1");
    assert_eq!(p(3), "t0 + t2");
    assert_eq!(p(4), "t0^2 + t0*t2 + t0*t3 + t2*t3");
}

#[test]
fn frozen_polytope_and_betti() {
    let l4: Vec<Vec<i64>> = loday_polytope(4).unwrap().vertex_set().into_iter().collect();
    assert_eq!(l4, vec![vec![1, 2, 3], vec![1, 4, 1], vec![2, 1, 3], vec![3, 1, 2], vec![3, 2, 1]]);
    assert_eq!(h_vector(5), vec![1, 6, 6, 1]);
    assert_eq!(complex_betti(5), vec![1, 0, 6, 0, 6, 0, 1]);
    assert_eq!(real_betti(6), vec![1, 4, 5]);
    assert_eq!(real_betti(7), vec![1, 5, 9, 5]);
}
