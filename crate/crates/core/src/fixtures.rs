//! Small named hoops used throughout the tests, the CLI fixtures and the docs.
//!
//! Element indices follow the carrier order given in each constructor.

use crate::hoop::{build_hoop, Elem, FiniteHoop};

fn labelled(h: FiniteHoop, labels: &[&str]) -> FiniteHoop {
    h.with_labels(labels.iter().map(|s| s.to_string()).collect())
        .expect("fixture labels are distinct")
}

/// The one-element hoop `{1}`.
pub fn trivial() -> FiniteHoop {
    labelled(
        build_hoop(1, &[vec![0]], &[vec![0]], 0, Some(0)).unwrap(),
        &["1"],
    )
}

/// The two-element Boolean chain `{0, 1}`.
pub fn two() -> FiniteHoop {
    labelled(
        build_hoop(
            2,
            &[vec![0, 0], vec![0, 1]],
            &[vec![1, 1], vec![0, 1]],
            1,
            Some(0),
        )
        .unwrap(),
        &["0", "1"],
    )
}

/// Goedel chain `{0, m, 1}`: `x * y = min(x, y)`.
pub fn g3() -> FiniteHoop {
    let mul = vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]];
    let imp = vec![vec![2, 2, 2], vec![0, 2, 2], vec![0, 1, 2]];
    labelled(
        build_hoop(3, &mul, &imp, 2, Some(0)).unwrap(),
        &["0", "m", "1"],
    )
}

/// Lukasiewicz chain `{0, m, 1}` with `m = 1/2`.
pub fn l3() -> FiniteHoop {
    let mul = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2]];
    let imp = vec![vec![2, 2, 2], vec![1, 2, 2], vec![0, 1, 2]];
    labelled(
        build_hoop(3, &mul, &imp, 2, Some(0)).unwrap(),
        &["0", "m", "1"],
    )
}

/// Four-element Boolean algebra `{0, a, b, 1}` with `* = meet`,
/// `x -> y = x' \/ y`.
pub fn b4() -> FiniteHoop {
    // bit encoding: 0 = 00, a = 01, b = 10, 1 = 11
    let mul: Vec<Vec<Elem>> = (0..4).map(|x| (0..4).map(|y| x & y).collect()).collect();
    let imp: Vec<Vec<Elem>> = (0..4)
        .map(|x| (0..4).map(|y| (!x & 3) | y).collect())
        .collect();
    labelled(
        build_hoop(4, &mul, &imp, 3, Some(0)).unwrap(),
        &["0", "a", "b", "1"],
    )
}

pub const HOOP6_LABELS: [&str; 6] = ["0", "a", "b", "c", "d", "1"];

/// Rows of the six-element example over `{0, a, b, c, d, 1}`, with the
/// multiplication row of `1` set to the identity row.
pub fn hoop6_rows() -> (Vec<Vec<Elem>>, Vec<Vec<Elem>>) {
    let mul = vec![
        vec![0, 0, 0, 0, 0, 0],
        vec![0, 2, 2, 4, 0, 1],
        vec![0, 2, 2, 0, 0, 2],
        vec![0, 4, 0, 3, 4, 3],
        vec![0, 0, 0, 4, 0, 4],
        vec![0, 1, 2, 3, 4, 5],
    ];
    let imp = vec![
        vec![5, 5, 5, 5, 5, 5],
        vec![4, 5, 1, 3, 3, 5],
        vec![3, 5, 5, 3, 3, 5],
        vec![2, 1, 2, 5, 1, 5],
        vec![1, 5, 1, 5, 5, 5],
        vec![0, 1, 2, 3, 4, 5],
    ];
    (mul, imp)
}

/// The multiplication row of `1` as printed, `a b c d e f`. The symbols `e`
/// and `f` are not in the carrier; they are read as `d` (the printed value of
/// `d * 1`) and `1`, which leaves only the shifted prefix in conflict with the
/// unit law.
pub fn hoop6_printed_unit_row() -> Vec<Elem> {
    vec![1, 2, 3, 4, 4, 5]
}

/// The corrected six-element bounded hoop.
pub fn hoop6() -> FiniteHoop {
    let (mul, imp) = hoop6_rows();
    labelled(
        build_hoop(6, &mul, &imp, 5, Some(0)).unwrap(),
        &HOOP6_LABELS,
    )
}
