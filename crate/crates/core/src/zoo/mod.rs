//! Presentations of the named operads and the cross-checks relating them.

mod checks;
mod named;

pub use checks::{
    certify_dimensions, d1_h1_check, expand_lambda, generating_function_residual, grav_relations_hold_in_ncgerst,
    lambda_image, Certificate, CertificateRow, D1H1Report,
};
pub use named::{closed_form_dims, presentation_of, suspend_presentation, zoo_names, NamedOperad, ZooName};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{complete, koszul_dual, same_relation_space};

    fn gb(name: &ZooName, cap: usize) -> crate::groebner::GroebnerBasis {
        let op = presentation_of(name, cap).unwrap();
        complete(&op.presentation, &op.preferred_order, cap).unwrap()
    }

    fn total(name: &ZooName, cap: usize) -> Vec<usize> {
        let g = gb(name, cap);
        (1..=cap).map(|n| g.hilbert(n).unwrap().values().sum()).collect()
    }

    #[test]
    fn small_totals() {
        assert_eq!(total(&ZooName::As, 5), vec![1, 1, 1, 1, 1]);
        assert_eq!(total(&ZooName::NcGerst, 5), vec![1, 2, 4, 8, 16]);
        assert_eq!(total(&ZooName::NcGrav, 6), vec![1, 1, 2, 4, 8, 16]);
        assert_eq!(total(&ZooName::NcHyperCom, 6), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(total(&ZooName::QncBV, 4), vec![2, 8, 32, 128]);
    }

    #[test]
    fn grav_completes_without_additions() {
        let g = gb(&ZooName::NcGrav, 6);
        assert_eq!(g.additions, 0);
        assert!(g.complete_up_to_cap);
    }

    #[test]
    fn hypercom_leads_are_right_combs() {
        let g = gb(&ZooName::NcHyperCom, 5);
        let a = &g.alphabet;
        let nu2 = a.id("nu2").unwrap();
        for l in g.leads() {
            let Monomial::Node(_, ch) = l else { panic!() };
            let inner: Vec<_> = ch.iter().filter(|c| !matches!(c, Monomial::Leaf)).collect();
            assert_eq!(inner.len(), 1);
            assert!(!matches!(ch[0], Monomial::Node(..)));
            assert!(matches!(inner[0], Monomial::Node(h, _) if *h == nu2), "{}", l.display(a));
        }
    }

    use crate::free::Monomial;

    #[test]
    fn closed_forms_match_groebner() {
        for (name, n) in [
            (ZooName::NcGrav, 6),
            (ZooName::NcHyperCom, 6),
            (ZooName::NcBV3, 4),
            (ZooName::NcBV2, 4),
            (ZooName::TAs(3), 7),
            (ZooName::PAs(3), 7),
            (ZooName::TwoNcGerst, 5),
            (ZooName::D, 3),
            (ZooName::As1, 5),
        ] {
            let c = certify_dimensions(&name, n, n.min(4));
            assert!(c.is_ok(), "{name}: {:?}", c.err());
        }
    }

    #[test]
    fn lambda_relations_vanish() {
        assert!(grav_relations_hold_in_ncgerst(5).unwrap().iter().all(|x| x.1));
    }

    #[test]
    fn d1_h1_small() {
        for n in 2..=5 {
            let r = d1_h1_check(n).unwrap();
            assert!(r.ok, "{r:?}");
            assert_eq!(r.dim_ker_d1, 1 << (n - 2));
        }
    }

    #[test]
    fn gf_residual_vanishes() {
        let mut dims = std::collections::BTreeMap::new();
        for n in 2..=6 {
            dims.insert(n, closed_form_dims(&ZooName::NcHyperCom, n).unwrap());
        }
        assert!(generating_function_residual(&dims, 6).is_empty());
        dims.insert(5, closed_form_dims(&ZooName::NcGrav, 5).unwrap());
        assert!(!generating_function_residual(&dims, 6).is_empty());
    }

    #[test]
    fn koszul_duals() {
        let as_ = presentation_of(&ZooName::As, 3).unwrap().presentation;
        let d = koszul_dual(&as_, None).unwrap();
        assert!(same_relation_space(&d.relations, &as_.relations));
        let t = presentation_of(&ZooName::TAs(3), 5).unwrap().presentation;
        let p = presentation_of(&ZooName::PAs(3), 5).unwrap().presentation;
        let td = koszul_dual(&t, None).unwrap();
        let imported: Vec<_> = td.relations.iter().map(|r| p.import(r, &td.alphabet).unwrap()).collect();
        assert!(same_relation_space(&imported, &p.relations));
        let g = presentation_of(&ZooName::NcGerst, 3).unwrap().presentation;
        let gg = koszul_dual(&koszul_dual(&g, None).unwrap(), None).unwrap();
        assert!(same_relation_space(&gg.relations, &g.relations));
        let grav = presentation_of(&ZooName::NcGrav, 4).unwrap().presentation;
        let hyp = presentation_of(&ZooName::NcHyperCom, 4).unwrap().presentation;
        let names: Vec<String> = hyp.alphabet.gens().iter().map(|g| g.name.clone()).collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let sgrav = suspend_presentation(&grav, 1, "S ncGrav").unwrap();
        let gd = koszul_dual(&sgrav, Some(&names)).unwrap();
        let imported: Vec<_> =
            gd.relations.iter().filter(|r| r.arity() <= 4).map(|r| hyp.import(r, &gd.alphabet).unwrap()).collect();
        assert!(same_relation_space(&imported, &hyp.relations));
        for n in 3..=4 {
            assert_eq!(hyp.relations_in_arity(n).len(), n - 2);
            assert_eq!(grav.relations_in_arity(n).len(), n * (n - 1) / 2 - 1 - (n - 2));
        }
    }
}
