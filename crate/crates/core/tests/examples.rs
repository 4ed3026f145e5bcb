//! Worked examples on the named fixtures and parametric families.

use hoops::filters::{
    all_filters, distinguished_subsets, filter, generated_filter, is_maximal, is_prime, quotient,
    quotient_sqrt, sqrt_image_filter, sqrt_quotient_isomorphism, up_set_subalgebra,
};
use hoops::fixtures::{b4, g3, hoop6, l3, trivial, two};
use hoops::hoop::Order;
use hoops::morphisms::{find_isomorphism, product, product_sqrt, transport_root};
use hoops::parametric::{rational, ParametricHoop, SamplePlan};
use hoops::roots::{classify_sqrt, nth_root_solve, sqrt_oracle, sqrt_solve};
use hoops::term::{check_identity, parse_identity, FiniteModel, Model, ParametricModel, Verdict};
use hoops::{ElemSet, PropertyFlag};

fn set(n: usize, xs: &[usize]) -> ElemSet {
    ElemSet::from_elems(n, xs.iter().copied())
}

#[test]
fn order_powers_and_negation() {
    let (t, g, l) = (two(), g3(), l3());
    assert!(t.leq(0, 1));
    assert!(!g.leq(1, 0));
    assert_eq!(l.ord(1).unwrap(), Order::Finite(2));
    assert_eq!(g.ord(1).unwrap(), Order::Infinite);
    for h in [t.clone(), g.clone(), l.clone(), b4(), hoop6()] {
        assert_eq!(h.neg(h.one()).unwrap(), h.zero().unwrap());
        assert!(h.elements().all(|x| h.leq(x, x)));
    }
    assert!(t.is_join_hoop());
    assert_eq!(t.join_candidate(0, 1), 1);
    assert_eq!(l.join_candidate(1, 1), 1);
}

#[test]
fn property_flags_of_the_chains() {
    assert!(g3().has_property(PropertyFlag::Basic));
    assert!(!g3().has_property(PropertyFlag::Dnp));
    assert!(l3().has_property(PropertyFlag::Wajsberg));
    assert!(trivial().has_property(PropertyFlag::Cancellative));
    assert!(!b4().has_property(PropertyFlag::Cancellative));
}

#[test]
fn roots_of_the_fixtures() {
    for h in [two(), g3(), b4()] {
        assert!(sqrt_solve(&h).unwrap().is_identity());
        assert_eq!(sqrt_oracle(&h, 6).unwrap(), sqrt_solve(&h));
    }
    assert_eq!(sqrt_solve(&l3()), None);
    assert_eq!(sqrt_oracle(&l3(), 6).unwrap(), None);
    assert!(nth_root_solve(&l3(), 1).unwrap().is_identity());
    assert!(nth_root_solve(&g3(), 3).unwrap().is_identity());
    assert_eq!(nth_root_solve(&l3(), 2), None);

    let s = sqrt_solve(&g3()).unwrap();
    let c = classify_sqrt(&g3(), &s).unwrap();
    assert!(c.good && !c.strict && c.sq1 && c.sq2 && c.sq3);
    let c = classify_sqrt(&trivial(), &sqrt_solve(&trivial()).unwrap()).unwrap();
    assert!(c.good && c.strict);
}

#[test]
fn filters_of_the_fixtures() {
    let sets = |h: hoops::FiniteHoop| {
        all_filters(&h)
            .iter()
            .map(|f| f.to_vec())
            .collect::<Vec<_>>()
    };
    assert_eq!(sets(two()), vec![vec![1], vec![0, 1]]);
    assert_eq!(sets(g3()), vec![vec![2], vec![1, 2], vec![0, 1, 2]]);
    assert!(filter(&l3(), set(3, &[1, 2])).is_err());
    assert_eq!(
        generated_filter(&l3(), &set(3, &[1])).to_vec(),
        vec![0, 1, 2]
    );
    assert_eq!(generated_filter(&g3(), &set(3, &[1])).to_vec(), vec![1, 2]);
    assert_eq!(generated_filter(&b4(), &set(4, &[3])).to_vec(), vec![3]);

    let top = filter(&g3(), set(3, &[2])).unwrap();
    assert!(is_prime(&g3(), &top).unwrap());
    let b = b4();
    assert!(!is_prime(&b, &filter(&b, set(4, &[3])).unwrap()).unwrap());
    assert!(is_maximal(&b, &filter(&b, set(4, &[1, 3])).unwrap()).unwrap());
}

#[test]
fn boolean_quotient_and_its_root() {
    let b = b4();
    let f = filter(&b, set(4, &[1, 3])).unwrap();
    let q = quotient(&b, &f).unwrap();
    assert_eq!(q.classes, vec![vec![0, 2], vec![1, 3]]);
    assert!(find_isomorphism(&q.hoop, &two()).is_some());
    let s = sqrt_solve(&b).unwrap();
    assert!(quotient_sqrt(&b, &q, &s).unwrap().is_identity());
    assert_eq!(sqrt_image_filter(&b, &f, &s).unwrap().to_vec(), vec![1, 3]);
    assert!(sqrt_quotient_isomorphism(&b, &f, &s).unwrap());

    let g = g3();
    let q = quotient(&g, &filter(&g, set(3, &[1, 2])).unwrap()).unwrap();
    assert_eq!(q.hoop.size(), 2);
    assert!(quotient_sqrt(&g, &q, &sqrt_solve(&g).unwrap())
        .unwrap()
        .is_identity());
}

#[test]
fn distinguished_subsets_and_up_sets() {
    let d = distinguished_subsets(&b4()).unwrap();
    assert_eq!(d.boolean, vec![0, 1, 2, 3]);
    assert_eq!(d.dense, vec![3]);
    let d = distinguished_subsets(&l3()).unwrap();
    assert_eq!(d.idempotent, vec![0, 2]);
    assert_eq!(d.nilpotent, vec![0, 1]);

    let (sub, embed) = up_set_subalgebra(&g3(), 1).unwrap();
    assert_eq!((sub.size(), embed), (2, vec![1, 2]));
    assert_eq!(up_set_subalgebra(&b4(), 3).unwrap().0.size(), 1);
    assert_eq!(up_set_subalgebra(&b4(), 1).unwrap().1, vec![1, 3]);
}

#[test]
fn products_and_transport() {
    let t = two();
    let p = product(&t, &t);
    assert!(find_isomorphism(&p, &b4()).is_some());
    assert!(find_isomorphism(&g3(), &l3()).is_none());
    let s = sqrt_solve(&t).unwrap();
    let ps = product_sqrt(&t, &s, &t, &s).unwrap();
    assert!(ps.is_identity());
    let iso = find_isomorphism(&p, &b4()).unwrap();
    assert!(transport_root(&p, &b4(), &iso, &ps).unwrap().is_identity());
}

#[test]
fn parametric_operations_are_exact() {
    let l = ParametricHoop::lukasiewicz();
    assert_eq!(
        l.mul(&rational(1, 2), &rational(1, 2)).unwrap(),
        rational(0, 1)
    );
    assert_eq!(l.sqrt(&rational(0, 1)).unwrap(), rational(1, 2));
    let p = ParametricHoop::product();
    assert_eq!(
        p.imp(&rational(3, 4), &rational(1, 2)).unwrap(),
        rational(2, 3)
    );
    let gamma = ParametricHoop::gamma(rational(1, 1));
    assert_eq!(gamma.sqrt(&rational(0, 1)).unwrap(), rational(1, 2));
    let free = ParametricHoop::free_exponent();
    assert_eq!(free.sqrt(&rational(3, 2)).unwrap(), rational(3, 4));
    let g = ParametricHoop::godel();
    for x in g.assignments(&SamplePlan::default(), 1) {
        assert_eq!(g.imp(&x[0], &x[0]).unwrap(), g.one());
    }
}

#[test]
fn strict_and_good_families() {
    let plan = SamplePlan::default();
    let classify = |name: &str| {
        name.parse::<ParametricHoop>()
            .unwrap()
            .classify(&plan)
            .unwrap()
    };
    for name in ["lukasiewicz", "gamma:1"] {
        let c = classify(name);
        assert_eq!(c.sqrt_zero, Some(rational(1, 2)));
        assert_eq!(c.strict, Some(true));
        assert!(!c.good);
    }
    assert!(classify("godel").good);
    assert!(classify("free").good);
}

fn sampled(name: &str, identity: &str) -> Verdict {
    let m = ParametricModel::new(name.parse().unwrap(), SamplePlan::default()).unwrap();
    check_identity(Model::Sampled(&m), &parse_identity(identity).unwrap())
        .unwrap()
        .verdict
}

fn finite(h: hoops::FiniteHoop, identity: &str) -> Verdict {
    let m = FiniteModel::new(h);
    check_identity(Model::Finite(&m), &parse_identity(identity).unwrap())
        .unwrap()
        .verdict
}

#[test]
fn identity_checks() {
    assert!(sampled("lukasiewicz", "s(x) * s(x) = x").is_pass());
    assert!(sampled("lukasiewicz", "s(x * y) = s(x) * s(y)").is_fail());
    assert!(sampled("godel", "s(x -> y) = s(x) -> s(y)").is_pass());
    assert!(finite(g3(), "(x -> y) * (y -> z) <= x -> z").is_pass());
    assert!(matches!(
        finite(l3(), "{sqrt} s(x -> y) <= s(x) -> s(y)"),
        Verdict::Vacuous { .. }
    ));
    assert!(finite(b4(), "{sqrt} s(0) = 0").is_pass());
}
