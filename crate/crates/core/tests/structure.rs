//! Local-ring bounds, isomorphism and structure checks over the built-in catalog.

use zpk_core::arith::{factorize, prime_power};
use zpk_core::catalog::{builtin_catalog, iso_check, materialize_catalog, CatalogRing, DEFAULT_ISO_CAP};
use zpk_core::formulas::{bk, c25_bounds_k3, explicit_upper, field_zp, t1_bounds};
use zpk_core::ring::{build_zn, RingBuilder};
use zpk_core::zero::{is_local, zero_divisors, zero_profile, zsquare_is_zero};
use zpk_core::{materialize, parse_expr, zp_exact, TableRing};

fn catalog(max_order: u64) -> Vec<CatalogRing> {
    let entries = builtin_catalog(max_order).unwrap();
    materialize_catalog(&entries, &RingBuilder::default()).unwrap()
}

fn ring(text: &str) -> TableRing {
    materialize(&parse_expr(text).unwrap()).unwrap()
}

/// Models of the local rings of order `p^alpha` whose maximal ideal has index `p` and squares to zero.
fn m2_models(p: u64, alpha: u32) -> Vec<TableRing> {
    match alpha {
        1 => vec![ring(&format!("Z{p}"))],
        2 => vec![ring(&format!("Ideal(Z{p},1)")), ring(&format!("Z{}", p * p))],
        _ => {
            let ps = vec![p.to_string(); alpha as usize - 2].join(",");
            vec![ring(&format!("Ideal(Z{p},{})", alpha - 1)), ring(&format!("Ideal(Z{},[{ps}])", p * p))]
        }
    }
}

#[test]
fn local_bound_and_its_attainment() {
    let mut attained = 0;
    for c in catalog(32) {
        if !is_local(&c.ring) {
            continue;
        }
        let (p, alpha) = prime_power(c.order()).unwrap();
        let z = zero_divisors(&c.ring).len() as u64;
        let sharp = z * p == c.order() && zsquare_is_zero(&c.ring);
        if sharp && c.order() <= DEFAULT_ISO_CAP as u64 {
            let models = m2_models(p, alpha);
            assert!(models.iter().any(|m| iso_check(&c.ring, m).unwrap()), "{} matches no model", c.name());
        }
        for k in 2..=6 {
            let value = zp_exact(&c.ring, k).unwrap();
            let bound = bk(p, alpha, k).unwrap();
            assert!(value <= bound, "{} k={k}", c.name());
            assert_eq!(value == bound, sharp, "{} k={k}", c.name());
            attained += usize::from(sharp);
        }
    }
    assert!(attained > 0);
}

#[test]
fn prime_power_order_bound() {
    for c in catalog(64) {
        let Some((p, alpha)) = prime_power(c.order()) else { continue };
        for k in 2..=6 {
            let value = zp_exact(&c.ring, k).unwrap();
            let bound = field_zp(p, k).unwrap();
            assert!(value <= bound, "{} k={k}", c.name());
            assert_eq!(value == bound, alpha == 1, "{} k={k}", c.name());
        }
    }
}

#[test]
fn bk_is_explicit_upper_at_index_p() {
    for p in [2u64, 3, 5, 7] {
        for alpha in 1..=4 {
            for k in 2..=9 {
                let n = p.pow(alpha);
                assert_eq!(bk(p, alpha, k).unwrap(), explicit_upper(n, n / p, k).unwrap());
            }
        }
    }
}

#[test]
fn isomorphism_is_reflexive_symmetric_and_preserves_zp() {
    let cat = catalog(16);
    for (i, a) in cat.iter().enumerate() {
        assert!(iso_check(&a.ring, &a.ring).unwrap(), "{}", a.name());
        for b in &cat[i + 1..] {
            let ab = iso_check(&a.ring, &b.ring).unwrap();
            assert_eq!(ab, iso_check(&b.ring, &a.ring).unwrap(), "{} / {}", a.name(), b.name());
            if ab {
                for k in 2..=8 {
                    assert_eq!(zp_exact(&a.ring, k).unwrap(), zp_exact(&b.ring, k).unwrap());
                }
            }
        }
    }
}

#[test]
fn residue_rings_factor_over_primes() {
    for n in [4u64, 6, 12, 18, 36] {
        let zn = build_zn(n).unwrap();
        for k in 2..=4 {
            let per_prime =
                factorize(n).into_iter().map(|(p, a)| zp_exact(&build_zn(p.pow(a)).unwrap(), k).unwrap());
            assert_eq!(zp_exact(&zn, k).unwrap(), per_prime.product(), "Z{n} k={k}");
        }
    }
}

#[test]
fn cubic_bounds_match_general_form() {
    for c in catalog(64) {
        let profile = zero_profile(&c.ring, 3).unwrap();
        let (t1, c25) = (t1_bounds(&profile).unwrap(), c25_bounds_k3(&profile).unwrap());
        assert_eq!(t1.lower, c25.lower, "{}", c.name());
        assert_eq!(t1.upper, c25.upper, "{}", c.name());
    }
}
