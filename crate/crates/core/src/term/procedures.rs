//! Catalog statements about filters, quotients, products and morphisms that
//! are not single identities. Each runs exhaustively on a finite model.

use std::fmt;
use std::str::FromStr;

use super::eval::FiniteModel;
use crate::elemset::ElemSet;
use crate::filters::{
    all_filters, is_filter, is_prime, orbit_complement_check, principal_filter, quotient,
    quotient_sqrt, restrict_root, sqrt_image_filter, sqrt_quotient_isomorphism,
};
use crate::hoop::{Elem, FiniteHoop, PropertyFlag};
use crate::morphisms::{is_homomorphism, preserves_root, product, product_sqrt, transport_root};
use crate::roots::{certify_root, sqrt_solve, RootMap};

/// Result of one procedural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// number of instances examined
    Pass(usize),
    Fail(String),
    Vacuous(String),
}

macro_rules! procedures {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum Procedure {
            $($variant,)*
        }

        impl Procedure {
            pub const ALL: &'static [Procedure] = &[$(Procedure::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Procedure::$variant => $name,)*
                }
            }
        }
    };
}

procedures! {
    RootFilterInclusion => "root-filter-inclusion",
    GeneratedFilterRoot => "generated-filter-root",
    PrimeRootCriterion => "prime-root-criterion",
    ProperFilterAvoidsRootOrbit => "proper-filter-avoids-root-orbit",
    OrbitComplement => "orbit-complement",
    QuotientRoot => "quotient-root",
    RootImageSubalgebra => "root-image-subalgebra",
    SqrtQuotientIsomorphism => "sqrt-quotient-isomorphism",
    UpSetRoot => "up-set-root",
    ProductRoot => "product-root",
    HomomorphismRootTransfer => "homomorphism-root-transfer",
    NilpotentRoot => "nilpotent-root",
    LocallyFiniteRoot => "locally-finite-root",
    IrreducibleRoot => "irreducible-root",
    FiniteRigidity => "finite-rigidity",
    FiniteChainGoedel => "finite-chain-goedel",
    CancellativeTrivial => "cancellative-trivial",
    RegularRootCriterion => "regular-root-criterion",
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Procedure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Procedure::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown procedure `{s}`"))
    }
}

/// Accumulates instance counts; the first failure short-circuits via `?`.
struct Tally(usize);

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
        self.0 += 1;
        if ok {
            Ok(())
        } else {
            Err(detail())
        }
    }
}

fn set_labels(h: &FiniteHoop, set: &ElemSet) -> String {
    let ls: Vec<&str> = set.iter().map(|x| h.label(x)).collect();
    format!("{{{}}}", ls.join(", "))
}

fn image(h: &FiniteHoop, set: &ElemSet, r: &RootMap) -> ElemSet {
    ElemSet::from_elems(h.size(), set.iter().map(|x| r.apply(x)))
}

fn nilpotent(h: &FiniteHoop, x: Elem) -> bool {
    h.ord(x).map(|o| o.is_finite()).unwrap_or(false)
}

fn meet_irreducible(h: &FiniteHoop, x: Elem) -> bool {
    h.elements()
        .all(|a| h.elements().all(|b| h.meet(a, b) != x || a == x || b == x))
}

fn join_irreducible(h: &FiniteHoop, x: Elem) -> bool {
    h.elements().all(|a| {
        h.elements()
            .all(|b| h.join_candidate(a, b) != x || a == x || b == x)
    })
}

impl Procedure {
    /// Run on a finite model whose catalog hypotheses already hold.
    pub fn run(self, m: &FiniteModel) -> Outcome {
        let h = m.hoop();
        let Some(s) = m.sqrt_map() else {
            return Outcome::Vacuous("no square root".into());
        };
        let mut t = Tally(0);
        let result = match self {
            Procedure::RootFilterInclusion => root_filter_inclusion(h, s, &mut t),
            Procedure::GeneratedFilterRoot => generated_filter_root(h, s, &mut t),
            Procedure::PrimeRootCriterion => {
                if !(m.has_property(PropertyFlag::Basic) || s.is_multiplicative(h)) {
                    return Outcome::Vacuous("neither basic nor multiplicative square root".into());
                }
                prime_root_criterion(h, s, &mut t)
            }
            Procedure::ProperFilterAvoidsRootOrbit => proper_filter_avoids_orbit(h, s, &mut t),
            Procedure::OrbitComplement => match orbit_complement_check(h, s) {
                Ok(r) => t.check(r.holds(), || {
                    format!(
                        "complement {:?} is neither a maximal filter nor generating",
                        r.complement
                    )
                }),
                Err(e) => Err(e.to_string()),
            },
            Procedure::QuotientRoot => quotient_root(h, s, &mut t),
            Procedure::RootImageSubalgebra => root_image_subalgebra(h, s, &mut t),
            Procedure::SqrtQuotientIsomorphism => sqrt_quotient_iso(h, s, &mut t),
            Procedure::UpSetRoot => up_set_root(m, &mut t),
            Procedure::ProductRoot => product_root_check(h, s, &mut t),
            Procedure::HomomorphismRootTransfer => homomorphism_transfer(m, s, &mut t),
            Procedure::NilpotentRoot => nilpotent_root(h, s, &mut t),
            Procedure::LocallyFiniteRoot => {
                let lf = m.has_property(PropertyFlag::LocallyFinite);
                let roots_nilpotent = h
                    .elements()
                    .filter(|&x| x != h.one())
                    .all(|x| nilpotent(h, s.apply(x)));
                t.check(lf == roots_nilpotent, || {
                    format!(
                        "locally finite is {lf} but nilpotent roots below 1 is {roots_nilpotent}"
                    )
                })
            }
            Procedure::IrreducibleRoot => irreducible_root(m, s, &mut t),
            Procedure::FiniteRigidity => t
                .check(s.is_identity(), || "square root is not the identity".into())
                .and_then(|_| {
                    t.check(m.has_property(PropertyFlag::Idempotent), || {
                        "not idempotent".into()
                    })
                }),
            Procedure::FiniteChainGoedel => finite_chain_goedel(m, &mut t),
            Procedure::CancellativeTrivial => {
                t.check(h.size() == 1, || format!("size is {}", h.size()))
            }
            Procedure::RegularRootCriterion => regular_root_criterion(m, s, &mut t),
        };
        match result {
            Ok(()) => Outcome::Pass(t.0),
            Err(detail) => Outcome::Fail(detail),
        }
    }
}

fn root_filter_inclusion(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    let mult = s.is_multiplicative(h);
    for f in all_filters(h) {
        let sf = image(h, f.members(), s);
        t.check(sf.is_subset(f.members()), || {
            format!("s({}) is not inside the filter", set_labels(h, f.members()))
        })?;
        if mult {
            t.check(&sf == f.members(), || {
                format!("s({}) differs from the filter", set_labels(h, f.members()))
            })?;
        }
    }
    Ok(())
}

fn generated_filter_root(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    for x in h.elements() {
        let fx = principal_filter(h, x);
        for k in 1..=3 {
            let y = s.iterate(x, k);
            t.check(principal_filter(h, y) == fx, || {
                format!(
                    "filter generated by {} differs from that of s^{k} of it",
                    h.label(x)
                )
            })?;
        }
    }
    Ok(())
}

fn prime_root_criterion(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    for f in all_filters(h).into_iter().filter(|f| f.is_proper()) {
        let prime = is_prime(h, &f).map_err(|e| e.to_string())?;
        let root_prime = h.elements().all(|x| {
            h.elements().all(|y| {
                let (sx, sy) = (s.apply(x), s.apply(y));
                !f.contains(h.join_candidate(sx, sy)) || f.contains(sx) || f.contains(sy)
            })
        });
        t.check(prime == root_prime, || {
            format!(
                "filter {}: prime is {prime}, root criterion is {root_prime}",
                set_labels(h, f.members())
            )
        })?;
    }
    Ok(())
}

fn proper_filter_avoids_orbit(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    let zero = h.require_zero().map_err(|e| e.to_string())?;
    let s0 = s.apply(zero);
    let n = h.size() as u32 + 1;
    for f in all_filters(h).into_iter().filter(|f| f.is_proper()) {
        for x in h.elements().filter(|&x| h.leq(x, s0)) {
            for k in 1..=n {
                let p = h.pow(s.apply(x), k);
                let it = s.iterate(x, k);
                t.check(!f.contains(p) && !f.contains(it), || {
                    format!(
                        "proper filter {} meets the root orbit of {} at step {k}",
                        set_labels(h, f.members()),
                        h.label(x)
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn quotient_root(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    for f in all_filters(h) {
        let q = quotient(h, &f).map_err(|e| e.to_string())?;
        let r = quotient_sqrt(h, &q, s);
        t.check(r.is_ok(), || {
            format!(
                "quotient by {}: {}",
                set_labels(h, f.members()),
                r.unwrap_err()
            )
        })?;
    }
    Ok(())
}

fn root_image_subalgebra(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    let img = ElemSet::from_elems(h.size(), h.elements().map(|x| s.apply(x)));
    t.check(h.is_subuniverse(&img), || "s(H) is not a subalgebra".into())?;
    for f in all_filters(h) {
        let sf = sqrt_image_filter(h, &f, s);
        t.check(sf.as_ref().is_ok_and(|g| is_filter(h, g.members())), || {
            format!("s({}) is not a filter", set_labels(h, f.members()))
        })?;
    }
    Ok(())
}

fn sqrt_quotient_iso(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    for f in all_filters(h) {
        let r = sqrt_quotient_isomorphism(h, &f, s);
        t.check(r == Ok(true), || {
            format!("filter {}: {r:?}", set_labels(h, f.members()))
        })?;
    }
    Ok(())
}

fn up_set_root(m: &FiniteModel, t: &mut Tally) -> Result<(), String> {
    let h = m.hoop();
    for d in 2..=3 {
        let Some(r) = m.root_map(d) else { continue };
        for a in h.elements().filter(|&a| h.is_idempotent_elem(a)) {
            let res = restrict_root(h, a, r);
            t.check(res.is_ok(), || {
                format!(
                    "root of degree {d} on the up-set of {}: {}",
                    h.label(a),
                    res.unwrap_err()
                )
            })?;
        }
    }
    Ok(())
}

fn product_root_check(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    let p = product(h, h);
    let ps = product_sqrt(h, s, h, s).map_err(|e| format!("componentwise root rejected: {e}"))?;
    t.check(sqrt_solve(&p).as_ref() == Some(&ps), || {
        "the square root of H x H is not componentwise".into()
    })
}

/// A map `f: H -> G` into a hoop `G` with root `g_root`. `injective` enables
/// the reflecting direction.
struct Arrow<'a> {
    g: &'a FiniteHoop,
    g_root: &'a RootMap,
    f: &'a [Elem],
    injective: bool,
}

/// Checks one root-preserving homomorphism.
fn transfer_along(
    h: &FiniteHoop,
    s: &RootMap,
    arrow: Arrow<'_>,
    what: &str,
    t: &mut Tally,
) -> Result<(), String> {
    let Arrow {
        g,
        g_root,
        f,
        injective,
    } = arrow;
    t.check(is_homomorphism(h, g, f), || {
        format!("{what} is not a homomorphism")
    })?;
    t.check(preserves_root(s, g_root, f), || {
        format!("{what} does not preserve the root")
    })?;
    let img = ElemSet::from_elems(g.size(), f.iter().copied());
    t.check(img.iter().all(|y| img.contains(g_root.apply(y))), || {
        format!("image of {what} is not closed under the root")
    })?;
    let (hz, gz) = (
        h.require_zero().map_err(|e| e.to_string())?,
        g.require_zero().map_err(|e| e.to_string())?,
    );
    let hn = |x| h.imp(x, hz);
    let gn = |x| g.imp(x, gz);
    for x in h.elements() {
        let (sx, tx) = (s.apply(x), g_root.apply(f[x]));
        let pairs = [
            ("nilpotent", nilpotent(h, sx), nilpotent(g, tx)),
            ("dense", hn(sx) == hz, gn(tx) == gz),
            ("regular", hn(hn(sx)) == sx, gn(gn(tx)) == tx),
        ];
        for (name, src, tgt) in pairs {
            t.check(!src || tgt, || {
                format!("{what}: {name} root at {} is not carried over", h.label(x))
            })?;
            if injective {
                t.check(!tgt || src, || {
                    format!("{what}: {name} root at {} is not reflected", h.label(x))
                })?;
            }
        }
        if injective {
            t.check(!meet_irreducible(g, tx) || meet_irreducible(h, sx), || {
                format!(
                    "{what}: meet-irreducibility at {} is not reflected",
                    h.label(x)
                )
            })?;
            t.check(!join_irreducible(g, tx) || join_irreducible(h, sx), || {
                format!(
                    "{what}: join-irreducibility at {} is not reflected",
                    h.label(x)
                )
            })?;
        }
    }
    Ok(())
}

fn homomorphism_transfer(m: &FiniteModel, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    let h = m.hoop();
    let zero = h.require_zero().map_err(|e| e.to_string())?;
    let good = s.apply(zero) == zero;
    let strict = s.apply(zero) == h.imp(s.apply(zero), zero);
    let basic = m.has_property(PropertyFlag::Basic);

    for f in all_filters(h) {
        let q = quotient(h, &f).map_err(|e| e.to_string())?;
        let qs = quotient_sqrt(h, &q, s).map_err(|e| e.to_string())?;
        let what = format!("projection onto H/{}", set_labels(h, f.members()));
        let arrow = Arrow {
            g: &q.hoop,
            g_root: &qs,
            f: &q.projection,
            injective: false,
        };
        transfer_along(h, s, arrow, &what, t)?;
        let qz = q
            .hoop
            .zero()
            .expect("quotients of bounded hoops are bounded");
        let q0 = qs.apply(qz);
        t.check(!good || q0 == qz, || format!("{what}: goodness is lost"))?;
        t.check(!strict || q0 == q.hoop.imp(q0, qz), || {
            format!("{what}: strictness is lost")
        })?;
        if basic {
            for x in h.elements() {
                for y in h.elements() {
                    let (px, py) = (q.projection[x], q.projection[y]);
                    t.check(
                        q.projection[s.apply(h.meet(x, y))]
                            == q.hoop.meet(qs.apply(px), qs.apply(py))
                            && q.projection[s.apply(h.join_candidate(x, y))]
                                == q.hoop.join_candidate(qs.apply(px), qs.apply(py)),
                        || {
                            format!(
                                "{what}: root of meet or join at ({}, {})",
                                h.label(x),
                                h.label(y)
                            )
                        },
                    )?;
                }
            }
        }
    }

    let g = product(h, h);
    let gs = product_sqrt(h, s, h, s).map_err(|e| e.to_string())?;
    let diag: Vec<Elem> = h.elements().map(|x| x * h.size() + x).collect();
    let arrow = Arrow {
        g: &g,
        g_root: &gs,
        f: &diag,
        injective: true,
    };
    transfer_along(h, s, arrow, "diagonal embedding", t)?;
    let img = ElemSet::from_elems(g.size(), diag.iter().copied());
    let (sub, embed) = g
        .subalgebra(&img)
        .ok_or_else(|| "diagonal image is not a subalgebra".to_string())?;
    let restricted: Vec<Elem> = embed
        .iter()
        .map(|&y| {
            embed
                .binary_search(&gs.apply(y))
                .expect("image closed under the root")
        })
        .collect();
    let sub = sub.with_bottom();
    t.check(certify_root(&sub, 2, restricted).is_ok(), || {
        "restricted root on the diagonal image is not a square root".into()
    })?;

    // relabelling by reversing the elements strictly between 0 and 1
    let n = h.size();
    let mut perm: Vec<Elem> = (0..n).collect();
    let inner: Vec<Elem> = h
        .elements()
        .filter(|&x| x != zero && x != h.one())
        .collect();
    for (a, b) in inner.iter().zip(inner.iter().rev()) {
        perm[*a] = *b;
    }
    let p = h.permuted(&perm);
    let moved =
        transport_root(h, &p, &perm, s).map_err(|e| format!("transported root rejected: {e}"))?;
    t.check(sqrt_solve(&p).as_ref() == Some(&moved), || {
        "transported root is not the root of the relabelled copy".into()
    })?;
    let arrow = Arrow {
        g: &p,
        g_root: &moved,
        f: &perm,
        injective: true,
    };
    transfer_along(h, s, arrow, "relabelling", t)
}

fn nilpotent_root(h: &FiniteHoop, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    for x in h.elements() {
        let (a, b) = (nilpotent(h, x), nilpotent(h, s.apply(x)));
        t.check(a == b, || {
            format!("{} nilpotent is {a}, its root nilpotent is {b}", h.label(x))
        })?;
    }
    Ok(())
}

fn irreducible_root(m: &FiniteModel, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    let h = m.hoop();
    let onto = s.is_injective();
    let join = m.has_property(PropertyFlag::JoinHoop);
    for x in h.elements() {
        let sx = s.apply(x);
        t.check(!meet_irreducible(h, sx) || meet_irreducible(h, x), || {
            format!("s({0}) is meet-irreducible but {0} is not", h.label(x))
        })?;
        if onto {
            t.check(!meet_irreducible(h, x) || meet_irreducible(h, sx), || {
                format!("{0} is meet-irreducible but s({0}) is not", h.label(x))
            })?;
        }
        if join {
            t.check(!join_irreducible(h, sx) || join_irreducible(h, x), || {
                format!("s({0}) is join-irreducible but {0} is not", h.label(x))
            })?;
        }
    }
    Ok(())
}

fn finite_chain_goedel(m: &FiniteModel, t: &mut Tally) -> Result<(), String> {
    let h = m.hoop();
    if h.is_chain() {
        for x in h.elements() {
            for y in h.elements() {
                let min = if h.leq(x, y) { x } else { y };
                let goedel = if h.leq(x, y) { h.one() } else { y };
                t.check(h.mul(x, y) == min && h.imp(x, y) == goedel, || {
                    format!(
                        "chain operations at ({}, {}) are not the Goedel ones",
                        h.label(x),
                        h.label(y)
                    )
                })?;
            }
        }
    }
    if m.has_property(PropertyFlag::JoinHoop) && m.has_property(PropertyFlag::Dnp) {
        t.check(m.has_property(PropertyFlag::Idempotent), || {
            "involutive join-hoop with a root is not Boolean".into()
        })?;
    }
    Ok(())
}

fn regular_root_criterion(m: &FiniteModel, s: &RootMap, t: &mut Tally) -> Result<(), String> {
    let h = m.hoop();
    let zero = h.require_zero().map_err(|e| e.to_string())?;
    let criterion = h.elements().all(|x| {
        h.elements()
            .all(|y| s.apply(x) == zero || s.apply(y) == zero || s.apply(h.meet(x, y)) != zero)
    });
    let regular = m.has_property(PropertyFlag::Regular);
    t.check(regular == criterion, || {
        format!("regular is {regular}, root criterion is {criterion}")
    })
}
