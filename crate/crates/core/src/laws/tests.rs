use std::sync::Arc;

use super::*;
use crate::algebra::{Fqsym, Hck, HckVariant};
use crate::halfprod::build_table;
use crate::pforest::{parse_forest, DecorationSet};

fn quick(max: usize) -> Options {
    Options { max_degree: max, exhaustive: 4, samples: 40, seed: 7 }
}

fn hck(variant: HckVariant, labels: &[(&str, usize)], bound: usize) -> Hck {
    Hck::new(DecorationSet::from_pairs(labels).unwrap(), bound, variant).unwrap()
}

#[test]
fn compositions_and_products() {
    assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    assert!(compositions(2, 3).is_empty());
    assert_eq!(product(&[&[1, 2][..], &[3][..]]), vec![vec![1, 3], vec![2, 3]]);
}

#[test]
fn fqsym_is_bidendriform() {
    let r = run_suite("bidendriform", &Fqsym, &quick(5)).unwrap();
    assert!(r.passed(), "{r}");
    assert!(r.laws.iter().all(|l| l.instances > 0));
    for suite in ["dend-bialgebra", "codend-bialgebra", "pairing", "module", "tensor"] {
        let r = run_suite(suite, &Fqsym, &quick(5)).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn forests_are_bidendriform() {
    let h = hck(HckVariant::Standard, &[("*", 1)], 5);
    for suite in ["dendriform", "codendriform", "bidendriform", "dend-bialgebra", "pairing"] {
        let r = run_suite(suite, &h, &quick(5)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.max_degree, 5);
    }
    let two = hck(HckVariant::Standard, &[("a", 1), ("b", 2)], 4);
    let r = run_suite("bidendriform", &two, &quick(6)).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.max_degree, 4);
}

#[test]
fn cut_variant_breaks_e8() {
    let h = hck(HckVariant::Prime, &[("d", 1)], 4);
    let r = run_suite("codend-bialgebra", &h, &quick(4)).unwrap();
    assert!(r.passed(), "{r}");
    let r = run_suite("bidendriform", &h, &quick(4)).unwrap();
    assert!(!r.passed());
    assert!(r.failed_laws().contains(&"E8"));
    let w = r.failures.iter().find(|f| f.law == "E8").unwrap();
    assert_eq!(w.inputs, vec!["d", "d"]);
    assert_eq!(w.lhs, "0");
    assert_eq!(w.rhs, "1*(d # d)");
    let d = DecorationSet::from_pairs(&[("d", 1)]).unwrap();
    let f = parse_forest("d", &d).unwrap();
    let prod = crate::algebra::Bidendriform::prec(&h, &f, &f);
    assert_eq!(prod, LinComb::basis(parse_forest("d[d]", &d).unwrap()));
}

#[test]
fn corrupted_table_is_caught() {
    let d = DecorationSet::single();
    let mut table = build_table(&d, 3).unwrap();
    let s = parse_forest("*", &d).unwrap();
    let wrong = LinComb::basis(parse_forest("* *", &d).unwrap());
    table.corrupt(&s, &s, wrong);
    let h = Hck::with_table(Arc::new(table), HckVariant::Standard);
    let r = check_module_axioms(&h, &quick(3)).unwrap();
    assert!(!r.passed());
    assert!(!r.failures.is_empty());
    let clean = hck(HckVariant::Standard, &[("*", 1)], 3);
    assert!(check_module_axioms(&clean, &quick(3)).unwrap().passed());
}

#[test]
fn seeded_reports_repeat() {
    let o = Options { max_degree: 6, exhaustive: 3, samples: 25, seed: 11 };
    let a = run_suite("dendriform", &Fqsym, &o).unwrap();
    let b = run_suite("dendriform", &Fqsym, &o).unwrap();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn unknown_suite() {
    assert!(matches!(run_suite("nope", &Fqsym, &quick(2)), Err(Error::Unknown { .. })));
    assert_eq!(suite_names().len(), 8);
}

#[test]
fn laws_print() {
    let e8 = catalog::find("E8").unwrap();
    assert_eq!(e8.lhs.to_string(), "Δ≺(a≺b)");
    assert!(catalog().iter().all(|l| !l.rhs.to_string().is_empty()));
}
