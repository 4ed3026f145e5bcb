//! Brute-force cross-checks of the finite machinery against definitions.

use hoops::enumerate::{enumerate_hoops, reference, sqrt_census, DEFAULT_BOUND};
use hoops::filters::{all_filters, generated_filter, quotient, quotient_sqrt};
use hoops::fixtures;
use hoops::morphisms::{find_isomorphism, is_homomorphism, preserves_root};
use hoops::roots::sqrt_solve;
use hoops::{build_hoop, ElemSet, Exec, FiniteHoop, OpTable};

fn corpus() -> Vec<FiniteHoop> {
    let mut all: Vec<FiniteHoop> = (1..=DEFAULT_BOUND)
        .flat_map(|n| enumerate_hoops(n).unwrap().models)
        .collect();
    all.extend([fixtures::b4(), fixtures::hoop6()]);
    all
}

fn subsets(n: usize) -> impl Iterator<Item = ElemSet> {
    (0u32..1 << n).map(move |bits| ElemSet::from_elems(n, (0..n).filter(|i| bits >> i & 1 == 1)))
}

fn is_filter_by_definition(h: &FiniteHoop, set: &ElemSet) -> bool {
    set.contains(h.one())
        && set
            .iter()
            .all(|x| set.iter().all(|y| set.contains(h.mul(x, y))))
        && set
            .iter()
            .all(|x| h.elements().all(|y| !h.leq(x, y) || set.contains(y)))
}

#[test]
fn meet_is_the_greatest_lower_bound() {
    for h in corpus() {
        for x in h.elements() {
            for y in h.elements() {
                let lower: Vec<_> = h
                    .elements()
                    .filter(|&z| h.leq(z, x) && h.leq(z, y))
                    .collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&m| lower.iter().all(|&z| h.leq(z, m)));
                assert_eq!(Some(h.meet(x, y)), glb, "\n{h}\nmeet({x},{y})");
            }
        }
    }
}

#[test]
fn join_flag_matches_exhaustive_upper_bound_search() {
    for h in corpus() {
        let brute = h.elements().all(|x| {
            h.elements().all(|y| {
                let j = h.join_candidate(x, y);
                let upper: Vec<_> = h
                    .elements()
                    .filter(|&z| h.leq(x, z) && h.leq(y, z))
                    .collect();
                upper.contains(&j) && upper.iter().all(|&z| h.leq(j, z))
            })
        });
        assert_eq!(h.is_join_hoop(), brute, "\n{h}");
    }
}

#[test]
fn filters_match_the_definition() {
    for h in corpus() {
        let listed: Vec<ElemSet> = all_filters(&h)
            .iter()
            .map(|f| f.members().clone())
            .collect();
        let brute: Vec<ElemSet> = subsets(h.size())
            .filter(|s| is_filter_by_definition(&h, s))
            .collect();
        let mut a = listed.clone();
        let mut b = brute;
        a.sort();
        b.sort();
        assert_eq!(a, b, "\n{h}");

        for gens in subsets(h.size()) {
            let least = listed
                .iter()
                .filter(|f| gens.is_subset(f))
                .fold(ElemSet::full(h.size()), |acc, f| acc.intersection(f));
            assert_eq!(
                generated_filter(&h, &gens).members(),
                &least,
                "\n{h}\n{gens:?}"
            );
        }
    }
}

#[test]
fn quotient_order_is_residual_membership() {
    for h in corpus() {
        for f in all_filters(&h) {
            let q = quotient(&h, &f).unwrap();
            for x in h.elements() {
                for y in h.elements() {
                    assert_eq!(
                        q.hoop.leq(q.class_of(x), q.class_of(y)),
                        f.contains(h.imp(x, y)),
                        "\n{h}\nF = {:?}",
                        f.to_vec()
                    );
                }
            }
            assert!(is_homomorphism(&h, &q.hoop, &q.projection));
        }
    }
}

#[test]
fn projections_carry_the_root() {
    for h in corpus().into_iter().filter(|h| h.is_bounded()) {
        let Some(s) = sqrt_solve(&h) else { continue };
        for f in all_filters(&h) {
            let q = quotient(&h, &f).unwrap();
            let t = quotient_sqrt(&h, &q, &s).unwrap();
            assert!(preserves_root(&s, &t, &q.projection));
        }
    }
}

#[test]
fn homomorphisms_push_roots_below_roots() {
    let small: Vec<FiniteHoop> = (1..=4)
        .flat_map(|n| enumerate_hoops(n).unwrap().models)
        .filter(|h| h.is_bounded())
        .collect();
    let rooted: Vec<_> = small
        .iter()
        .filter_map(|h| sqrt_solve(h).map(|s| (h, s)))
        .collect();
    let mut homs = 0;
    for (a, s) in &rooted {
        for (b, t) in rooted.iter().filter(|(b, _)| b.size() <= 3) {
            let m = b.size();
            for code in 0..m.pow(a.size() as u32) {
                let map: Vec<usize> = (0..a.size()).map(|i| code / m.pow(i as u32) % m).collect();
                if !is_homomorphism(a, b, &map) {
                    continue;
                }
                homs += 1;
                for x in a.elements() {
                    assert!(b.leq(map[s.apply(x)], t.apply(map[x])));
                }
            }
        }
    }
    assert!(homs > 10);
}

#[test]
fn enumeration_matches_the_naive_generator() {
    for n in 1..=reference::MAX_SIZE {
        let fast = enumerate_hoops(n).unwrap().models;
        let slow = reference::all_hoops(n);
        assert_eq!(fast.len(), slow.len(), "size {n}");
        for h in &slow {
            let hits = fast
                .iter()
                .filter(|g| find_isomorphism(g, h).is_some())
                .count();
            assert_eq!(hits, 1, "size {n}\n{h}");
        }
    }
}

/// Every commutative table with unit `n - 1` and absorbing `0`, kept when
/// associative and residuated, merged up to isomorphism.
fn direct_search(n: usize) -> Vec<FiniteHoop> {
    let inner: Vec<(usize, usize)> = (1..n - 1)
        .flat_map(|x| (x..n - 1).map(move |y| (x, y)))
        .collect();
    let mut found: Vec<FiniteHoop> = Vec::new();
    for code in 0..(n - 1).pow(inner.len() as u32) {
        let mut t = vec![0; n * n];
        for x in 0..n {
            t[x * n + n - 1] = x;
            t[(n - 1) * n + x] = x;
        }
        for (k, &(x, y)) in inner.iter().enumerate() {
            let v = code / (n - 1).pow(k as u32) % (n - 1);
            t[x * n + y] = v;
            t[y * n + x] = v;
        }
        let assoc = (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]]))
        });
        if !assoc {
            continue;
        }
        let mul = OpTable::from_fn(n, |x, y| t[x * n + y]);
        if let Some(h) = FiniteHoop::from_mul_residuated(mul, n - 1, Some(0)) {
            if !found.iter().any(|g| find_isomorphism(g, &h).is_some()) {
                found.push(h);
            }
        }
    }
    found
}

#[test]
fn enumeration_matches_a_direct_search() {
    for n in 3..=5 {
        let fast = enumerate_hoops(n).unwrap().models;
        let slow = direct_search(n);
        assert_eq!(fast.len(), slow.len(), "size {n}");
        for h in &slow {
            assert!(
                fast.iter().any(|g| find_isomorphism(g, h).is_some()),
                "size {n}\n{h}"
            );
        }
    }
}

#[test]
fn enumerated_models_recertify_and_are_pairwise_distinct() {
    for n in 1..=4 {
        let models = enumerate_hoops(n).unwrap().models;
        for h in &models {
            let again = build_hoop(
                n,
                &h.mul_table().rows(),
                &h.imp_table().rows(),
                h.one(),
                h.zero(),
            );
            assert!(again.is_ok(), "\n{h}");
        }
        for (i, a) in models.iter().enumerate() {
            for b in &models[i + 1..] {
                assert!(find_isomorphism(a, b).is_none());
            }
        }
    }
}

#[test]
fn census_invariants() {
    for n in 1..=DEFAULT_BOUND {
        let census = sqrt_census(&enumerate_hoops(n).unwrap(), Exec::default());
        assert!(census.rigidity_exceptions().is_empty());
        for r in &census.rows {
            assert!(!r.wajsberg || r.basic, "size {n} row {}", r.index);
            if r.bounded {
                assert_eq!(r.dnp, r.wajsberg, "size {n} row {}", r.index);
            }
            assert_eq!(r.has_sqrt, r.idempotent);
            if let (Some(good), Some(strict)) = (r.good, r.strict) {
                assert_eq!(good && strict, n == 1, "size {n} row {}", r.index);
            }
        }
    }
}

#[test]
fn idempotent_cancellative_hoops_are_trivial() {
    use hoops::PropertyFlag::{Cancellative, Idempotent};
    for h in corpus() {
        if h.has_property(Idempotent) && h.has_property(Cancellative) {
            assert_eq!(h.size(), 1);
        }
    }
}
