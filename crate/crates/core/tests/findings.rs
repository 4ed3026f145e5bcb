//! Observations that go beyond the catalog: readings of statements that turn
//! out false, and facts about the small models that the catalog relies on.

use hoops::enumerate::{enumerate_hoops, DEFAULT_BOUND};
use hoops::fixtures::{hoop6, hoop6_printed_unit_row, hoop6_rows};
use hoops::parametric::SamplePlan;
use hoops::roots::{sq2_holds, sqrt_solve};
use hoops::term::{check_identity, parse_identity, Model, ParametricModel, Verdict};
use hoops::{build_hoop, Axiom, BuildError};

fn lukasiewicz_verdict(identity: &str) -> Verdict {
    let m = ParametricModel::new("lukasiewicz".parse().unwrap(), SamplePlan::default()).unwrap();
    check_identity(Model::Sampled(&m), &parse_identity(identity).unwrap())
        .unwrap()
        .verdict
}

fn assignment(v: &Verdict) -> Vec<(String, String)> {
    match v {
        Verdict::Fail {
            witness: Some(w), ..
        } => w.assignment.clone(),
        other => panic!("expected a failure with witness, got {other:?}"),
    }
}

#[test]
fn hoop6_printed_unit_row_breaks_the_unit_law() {
    let (mut mul, imp) = hoop6_rows();
    mul[5] = hoop6_printed_unit_row();
    let Err(BuildError::Axioms(report)) = build_hoop(6, &mul, &imp, 5, Some(0)) else {
        panic!("the printed unit row should not certify");
    };
    assert_eq!(report.violation(Axiom::Unit).unwrap().witness, vec![5, 0]);
    assert!(hoop6().is_bounded());
}

#[test]
fn pointwise_idempotent_fixed_point_reading_fails() {
    let v = lukasiewicz_verdict("{sqrt} x * x = x => s(x) = x");
    assert_eq!(assignment(&v), vec![("x".to_string(), "0".to_string())]);
}

#[test]
fn pointwise_meet_product_reading_fails() {
    let v = lukasiewicz_verdict("{sqrt} x * y = x /\\ y => s(x * y) = s(x) * s(y)");
    assert!(assignment(&v).contains(&("y".to_string(), "0".to_string())));
}

#[test]
fn goedel_family_lacks_double_negation() {
    let m = ParametricModel::new("godel".parse().unwrap(), SamplePlan::default()).unwrap();
    let v = check_identity(Model::Sampled(&m), &parse_identity("x'' = x").unwrap())
        .unwrap()
        .verdict;
    let a = assignment(&v);
    let x: hoops::parametric::Rational = a[0].1.parse().unwrap();
    assert!(x > num_traits::Zero::zero() && x < num_traits::One::one());
}

#[test]
fn maximality_equation_survives_without_joins() {
    let mut outside = Vec::new();
    for n in 1..=DEFAULT_BOUND {
        for h in enumerate_hoops(n).unwrap().models {
            if let Some(s) = sqrt_solve(&h) {
                assert!(sq2_holds(&h, s.map()), "\n{h}");
                if !h.is_join_hoop() {
                    outside.push(h);
                }
            }
        }
    }
    // one idempotent hoop of size 5 has a candidate join above the true join
    assert_eq!(outside.len(), 1);
    let h = &outside[0];
    assert_eq!(h.size(), 5);
    assert!(h.elements().any(|x| h
        .elements()
        .any(|y| !h.is_lub(x, y, h.join_candidate(x, y)))));
}
