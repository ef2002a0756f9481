use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;
use crate::ring::{parse_poly, Context, Field, Monomial};

fn ctx(names: &[&str]) -> Arc<Context> {
    Context::new(names).unwrap()
}

fn over(s: &str, names: &[&str], field: Field) -> Poly {
    parse_poly(s, &ctx(names), field).unwrap()
}

fn q(s: &str, names: &[&str]) -> Poly {
    over(s, names, Field::RATIONALS)
}

fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn ri(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

const XYZ: [&str; 3] = ["x", "y", "z"];

#[test]
fn finite_characteristic() {
    for p in [2u64, 3, 5, 7] {
        let g = over(&format!("x^{p} + x^{}", p + 1), &["x"], fp(p));
        assert_eq!(milnor_number(&g).unwrap().mu, Dim::Finite(p));
        let f = over(&format!("x^{p}"), &["x"], fp(p));
        assert_eq!(milnor_number(&f).unwrap().mu, Dim::Infinite);
        assert_eq!(
            truncation_oracle_mu(&f, 1, 12).unwrap_err(),
            Error::TruncationCapExceeded(12)
        );
        assert_eq!(truncation_oracle_mu(&g, 1, 12).unwrap().mu, Dim::Finite(p));
    }
}

#[test]
fn small_examples() {
    assert_eq!(
        milnor_number(&q("x^2 + y^2 + z^2", &XYZ)).unwrap().mu,
        Dim::Finite(1)
    );
    assert_eq!(
        milnor_number(&q("x + y^2", &["x", "y"])).unwrap().mu,
        Dim::Finite(0)
    );
    let r = milnor_number(&q("x^3 + y^5", &["x", "y"])).unwrap();
    assert_eq!(r.mu, Dim::Finite(8));
    assert_eq!(
        r.leading_ideal,
        vec![q("y^4", &["x", "y"]), q("x^2", &["x", "y"])]
    );
    assert_eq!(
        milnor_number(&q("x^2*y + y^3", &["x", "y"])).unwrap().mu,
        Dim::Finite(4)
    );
    assert_eq!(
        milnor_number(&q("x*y", &["x", "y"])).unwrap().mu,
        Dim::Finite(1)
    );
    assert_eq!(
        milnor_number(&q("x^2", &["x", "y"])).unwrap().mu,
        Dim::Infinite
    );
    assert_eq!(
        milnor_number(&q("1 + x^2", &["x"])).unwrap_err(),
        Error::ConstantTerm
    );
}

#[test]
fn determinant_germ_with_high_term() {
    let f = q("x^5 + x*y^3 + z^3 - 3*x^2*y*z + x^6", &XYZ);
    assert_eq!(milnor_number(&f).unwrap().mu, Dim::Finite(25));
    assert_eq!(
        truncation_oracle_mu(&f, 1, DEFAULT_TRUNCATION_CAP)
            .unwrap()
            .mu,
        Dim::Finite(25)
    );
}

#[test]
fn oracle_certification_orders() {
    let r = truncation_oracle_mu(&q("x^3 + y^5", &["x", "y"]), 1, 40).unwrap();
    assert_eq!((r.mu, r.certified_at), (Dim::Finite(8), Some(5)));
    let r = truncation_oracle_mu(&q("x^2 + y^2 + z^2", &XYZ), 1, 40).unwrap();
    assert_eq!((r.mu, r.certified_at), (Dim::Finite(1), Some(1)));
    assert_eq!(
        truncation::truncated_colength(&[q("x^2", &["x", "y"]), q("y^4", &["x", "y"])], 2, 7),
        8
    );
    assert_eq!(truncation::truncated_colength(&[], 2, 3), 6);
}

#[test]
fn reports() {
    let gn = over("x*y + x^5 + y^5", &["x", "y"], fp(5));
    let r = mu_nu_report(&gn).unwrap();
    assert_eq!(
        (
            r.mu,
            r.nu.clone(),
            r.convenient,
            r.nondegenerate,
            r.consistent
        ),
        (Dim::Finite(1), ri(1), true, false, true)
    );
    assert!(r.equality_without_nondegeneracy);
    let b = mu_nu_report(&q("x^3 + y^5", &["x", "y"])).unwrap();
    assert_eq!(
        (
            b.mu,
            b.nu.clone(),
            b.convenient,
            b.nondegenerate,
            b.consistent
        ),
        (Dim::Finite(8), ri(8), true, true, true)
    );
    assert!(!b.equality_without_nondegeneracy);
    let j = b.to_json();
    assert_eq!(j["mu"], serde_json::json!("8"));
    assert_eq!(j["nu"], serde_json::json!("8"));
}

fn with_powers(nvars: usize) -> impl Strategy<Value = Poly> {
    let names = ["x", "y", "z"];
    (
        prop::collection::vec(2u32..6, nvars),
        prop::collection::vec((prop::collection::vec(0u32..4, nvars), -3i64..=3), 0..5),
    )
        .prop_map(move |(powers, rest)| {
            let c = ctx(&names[..nvars]);
            let fld = Field::RATIONALS;
            let mut terms: Vec<(Monomial, Coeff)> = rest
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() >= 2)
                .map(|(e, k)| (Monomial::new(e), Coeff::from_i64(k, fld)))
                .collect();
            for (i, &p) in powers.iter().enumerate() {
                terms.push((Monomial::var(nvars, i, p), Coeff::one(fld)));
            }
            Poly::from_terms(&c, fld, terms)
        })
}

/// Unimodular matrix as a product of elementary shears.
fn unimodular(n: usize, shears: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(a, b, k) in shears {
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        for j in 0..n {
            m[a][j] += k * m[b][j];
        }
    }
    m
}

fn linear_change(f: &Poly, m: &[Vec<i64>]) -> Poly {
    let c = f.ctx().clone();
    let fld = f.field();
    let images: Vec<Poly> = m
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(Poly::zero(&c, fld), |acc, (j, &k)| {
                    acc + Poly::var(&c, fld, j).scale_i64(k)
                })
        })
        .collect();
    f.substitute(&images).unwrap()
}

proptest! {
    #![proptest_config(crate::testutil::config(32))]

    #[test]
    fn oracle_agrees_with_standard_basis(f in prop_oneof![with_powers(2), with_powers(3)]) {
        let sb = milnor_number(&f).unwrap().mu;
        prop_assume!(sb.finite().is_some_and(|m| m <= 40));
        prop_assert_eq!(truncation_oracle_mu(&f, 1, DEFAULT_TRUNCATION_CAP).unwrap().mu, sb);
    }

    #[test]
    fn invariant_under_unimodular_change(
        f in with_powers(2),
        shears in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 1..4),
    ) {
        let m = unimodular(2, &shears);
        let g = linear_change(&f, &m);
        prop_assert_eq!(milnor_number(&g).unwrap().mu, milnor_number(&f).unwrap().mu);
    }

    #[test]
    fn invariant_under_unimodular_change_3(
        f in with_powers(3),
        shears in prop::collection::vec((0usize..3, 0usize..3, -1i64..=1), 1..3),
    ) {
        let mu = milnor_number(&f).unwrap().mu;
        prop_assume!(mu.finite().is_some_and(|m| m <= 30));
        let g = linear_change(&f, &unimodular(3, &shears));
        prop_assert_eq!(milnor_number(&g).unwrap().mu, mu);
    }

    #[test]
    fn suspension_keeps_mu(f in with_powers(2), hyperbolic in prop::bool::ANY) {
        let ext = f.ctx().extended(&["u", "v"]).unwrap();
        let fld = f.field();
        let (u, v) = (Poly::var(&ext, fld, 2), Poly::var(&ext, fld, 3));
        let quad = if hyperbolic { &u * &v } else { &u * &u + &v * &v };
        let g = f.embed(&ext).unwrap() + quad;
        prop_assert_eq!(milnor_number(&g).unwrap().mu, milnor_number(&f).unwrap().mu);
    }

    #[test]
    fn mu_bounds_nu(f in prop_oneof![with_powers(2), with_powers(3)]) {
        let r = mu_nu_report(&f).unwrap();
        prop_assert!(r.convenient);
        prop_assert!(r.consistent, "mu {} nu {} nondeg {}", r.mu, r.nu, r.nondegenerate);
    }
}
