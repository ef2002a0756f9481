use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::diagram::cdiagram_build;
use crate::ring::{parse_poly, Context, Field};

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

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn characteristic_dependent_example() {
    for p in [3, 5, 7] {
        let f = over(&format!("x*y + x^{p} + y^{p}"), &["x", "y"], fp(p));
        let rep = is_nondegenerate(&f).unwrap();
        assert!(!rep.verdict, "p = {p}");
        let bad: Vec<_> = rep.failing().collect();
        let d = newton_diagram(&f).unwrap();
        assert_eq!(bad.len(), 2);
        // the vertices x^p and y^p have identically vanishing toric derivatives
        for b in bad {
            assert_eq!(d.faces()[b.id].dim, 0);
            assert_eq!(b.witness, Some(vec![0, 1]));
        }
        let rat = q(&format!("x*y + x^{p} + y^{p}"), &["x", "y"]);
        assert!(is_nondegenerate(&rat).unwrap().verdict);
    }
}

#[test]
fn quadric_is_degenerate() {
    let f = q("(y+x)^2 + x*z + z^2", &["x", "y", "z"]);
    let rep = is_nondegenerate(&f).unwrap();
    assert!(!rep.verdict);
    let d = newton_diagram(&f).unwrap();
    let bad = &d.faces()[rep.failing().next().unwrap().id];
    assert_eq!(bad.points.len(), 3);
    assert_eq!(bad.on_axes, vec![2]);
}

#[test]
fn weak_test() {
    let f = over("x*y + x^5 + y^5", &["x", "y"], fp(5));
    let rep = is_weakly_nondegenerate(&f).unwrap();
    assert!(rep.verdict);
    assert_eq!(rep.faces.len(), 2);
    assert!(
        is_weakly_nondegenerate(&q("x^3 + y^5", &["x", "y"]))
            .unwrap()
            .verdict
    );
    // the single facet of the quadric has no torus critical point
    let quadric = q("(y+x)^2 + x*z + z^2", &["x", "y", "z"]);
    let rep = is_weakly_nondegenerate(&quadric).unwrap();
    assert_eq!(rep.faces.len(), 1);
    assert!(rep.verdict);
    // a degenerate facet: the Tjurina system of (x+y)^2 vanishes on y = -x
    let g = q("(x+y)^2", &["x", "y"]);
    assert!(!is_weakly_nondegenerate(&g).unwrap().verdict);
}

#[test]
fn inner_test() {
    let f = q("x^2 + y^3", &["x", "y"]);
    let cd = newton_diagram(&f).unwrap().natural_cdiagram().unwrap();
    let rep = is_inner_nondegenerate(&f, &cd).unwrap();
    assert!(rep.verdict);
    assert_eq!(rep.faces.len(), 1);

    for p in [2u64, 3, 5, 7] {
        let f = over(&format!("x^{p}"), &["x"], fp(p));
        let cd = newton_diagram(&f).unwrap().natural_cdiagram().unwrap();
        let rep = is_inner_nondegenerate(&f, &cd).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.faces[0].witness, Some(vec![0]));
        assert_eq!(rep.axis_excluded_verdict, Some(true));
        let g = over(&format!("x*y + x^{p} + y^{p}"), &["x", "y"], fp(p));
        let cd = newton_diagram(&g).unwrap().natural_cdiagram().unwrap();
        let rep = is_inner_nondegenerate(&g, &cd).unwrap();
        assert!(rep.verdict, "p = {p}");
        // for p = 2 the three points are collinear
        assert_eq!(rep.faces.len(), if p == 2 { 1 } else { 3 });
    }
}

#[test]
fn inner_test_with_rational_diagram() {
    // x^3 + x y^3 is E7; all of its support lies above the diagram (1/3, 2/9)
    let f = q("x^3 + x*y^3", &["x", "y"]);
    let cd = cdiagram_build(&[vec![r(1, 3), r(2, 9)]]).unwrap();
    assert!(is_inner_nondegenerate(&f, &cd).unwrap().verdict);
    let g = q("x^3 + x*y^2", &["x", "y"]);
    assert_eq!(
        is_inner_nondegenerate(&g, &cd).unwrap_err(),
        Error::SupportOutsideDiagram(vec![1, 2])
    );
    // a face whose polynomial is a square is caught on the torus
    let h = q("(x - y)^2 * x*y + x^9 + y^9", &["x", "y"]);
    let cd = cdiagram_build(&[vec![r(1, 4), r(1, 4)]]).unwrap();
    let rep = is_inner_nondegenerate(&h, &cd).unwrap();
    assert!(!rep.verdict);
    assert_eq!(rep.failing().next().unwrap().witness, Some(vec![0, 1]));
}

#[test]
fn multiplicity_criterion() {
    let f = q("x^3 + y^5", &["x", "y"]);
    let out = bivia_test(&f, 3, 1).unwrap();
    assert_eq!(
        out,
        BiviaOutcome {
            verdict: true,
            multiplicity: 15,
            volume_term: r(15, 1)
        }
    );
    let g = q("x*y + x^5 + y^5", &["x", "y"]);
    let out = bivia_test(&g, 3, 1).unwrap();
    assert_eq!(
        out,
        BiviaOutcome {
            verdict: true,
            multiplicity: 10,
            volume_term: r(10, 1)
        }
    );
    let h = q("(x+y)^2 + x^4 + y^4", &["x", "y"]);
    let out = bivia_test(&h, 3, 1).unwrap();
    assert!(!out.verdict);
    assert_eq!(out.volume_term, r(4, 1));
    assert!(out.multiplicity > 4);
    assert!(!is_nondegenerate(&h).unwrap().verdict);
    // the toric Jacobian ideal of the quadric vanishes along y = -x, z = 0
    let quadric = q("(y+x)^2 + x*z + z^2", &["x", "y", "z"]);
    assert_eq!(
        bivia_test(&quadric, 3, 1).unwrap_err(),
        Error::InfiniteColength
    );
}

#[test]
fn generic_coefficients() {
    let f = q("x^3 + y^5 + x^2*y^3", &["x", "y"]);
    let d = newton_diagram(&f).unwrap();
    assert_eq!(
        generic_for_diagram(&d, CoefficientScheme::Counting),
        q("x^3 + 2*y^5", &["x", "y"])
    );
    let g = q("3*x^4 - x^2*y + 7*x*y^2 + y^4", &["x", "y"]);
    let d = newton_diagram(&g).unwrap();
    assert_eq!(
        d.faces()
            .iter()
            .flat_map(|f| f.points.iter())
            .collect::<std::collections::BTreeSet<_>>()
            .len(),
        4
    );
    assert_eq!(
        generic_for_diagram(&d, CoefficientScheme::Ones),
        q("x^4 + x^2*y + x*y^2 + y^4", &["x", "y"])
    );
    let f25 = q("x^5 + x*y^3 + z^3 - 3*x^2*y*z + x^6", &["x", "y", "z"]);
    let d = newton_diagram(&f25).unwrap();
    let gen = generic_for_diagram(&d, CoefficientScheme::Counting);
    assert_eq!(
        gen,
        q("x^5 + 2*x^2*y*z + 3*x*y^3 + 4*z^3", &["x", "y", "z"])
    );
    let a = generic_for_diagram(&d, CoefficientScheme::SeededRandom(9));
    let b = generic_for_diagram(&d, CoefficientScheme::SeededRandom(9));
    assert_eq!(a, b);
    assert_eq!(a.num_terms(), 4);
    let h = over("x^3 + y^5 + x*y", &["x", "y"], fp(2));
    let d = newton_diagram(&h).unwrap();
    assert_eq!(
        generic_for_diagram(&d, CoefficientScheme::Counting),
        over("x^3 + x*y + y^5", &["x", "y"], fp(2))
    );
}

#[test]
fn report_json() {
    let f = over("x*y + x^5 + y^5", &["x", "y"], fp(5));
    let j = is_nondegenerate(&f).unwrap().to_json();
    assert_eq!(j["mode"], serde_json::json!("kouchnirenko"));
    assert_eq!(j["verdict"], serde_json::json!(false));
    let failing: Vec<_> = j["faces"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|f| f["passed"] == false)
        .collect();
    assert_eq!(
        failing[0]["witness_nonvanishing"],
        serde_json::json!(["x", "y"])
    );
}

fn arb_poly(nvars: usize) -> impl Strategy<Value = Poly> {
    let names = ["x", "y", "z"];
    prop::collection::vec((prop::collection::vec(0u32..4, nvars), -2i64..=2), 1..6).prop_map(
        move |terms| {
            let c = ctx(&names[..nvars]);
            Poly::from_terms(
                &c,
                Field::RATIONALS,
                terms
                    .into_iter()
                    .filter(|(e, _)| e.iter().any(|&x| x > 0))
                    .map(|(e, k)| (Monomial::new(e), Coeff::from_i64(k, Field::RATIONALS))),
            )
        },
    )
}

fn arb_convenient2() -> impl Strategy<Value = Poly> {
    (2u32..6, 2u32..6, 1i64..3, 1i64..3, arb_poly(2)).prop_map(|(a, b, ca, cb, f)| {
        let c = f.ctx().clone();
        let fld = Field::RATIONALS;
        f + Poly::term(Monomial::new(vec![a, 0]), Coeff::from_i64(ca, fld), &c, fld)
            + Poly::term(Monomial::new(vec![0, b]), Coeff::from_i64(cb, fld), &c, fld)
    })
}

proptest! {
    #![proptest_config(crate::testutil::config(48))]

    #[test]
    fn toric_and_plain_partials_agree(f in arb_poly(3).prop_filter("nonzero", |f| !f.is_zero())) {
        let a = is_nondegenerate_with(&f, FaceSystem::Toric).unwrap();
        let b = is_nondegenerate_with(&f, FaceSystem::Partials).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn verdict_invariant_under_torus_scaling(
        f in arb_poly(3).prop_filter("nonzero", |f| !f.is_zero()),
        scales in prop::collection::vec((1i64..5, 1i64..5, prop::bool::ANY), 3),
    ) {
        let c = f.ctx().clone();
        let fld = f.field();
        let images: Vec<Poly> = scales
            .iter()
            .enumerate()
            .map(|(i, &(n, d, neg))| {
                let s = BigRational::new(BigInt::from(if neg { -n } else { n }), BigInt::from(d));
                Poly::var(&c, fld, i).scale(&Coeff::from_rational(&s, fld).unwrap())
            })
            .collect();
        let g = f.substitute(&images).unwrap();
        prop_assert_eq!(is_nondegenerate(&f).unwrap().verdict, is_nondegenerate(&g).unwrap().verdict);
    }

    #[test]
    fn verdict_invariant_under_permutation(f in arb_poly(3).prop_filter("nonzero", |f| !f.is_zero())) {
        let c = f.ctx().clone();
        let fld = f.field();
        let verdict = is_nondegenerate(&f).unwrap().verdict;
        for p in [[1usize, 2, 0], [1, 0, 2]] {
            let images: Vec<Poly> = p.iter().map(|&i| Poly::var(&c, fld, i)).collect();
            prop_assert_eq!(is_nondegenerate(&f.substitute(&images).unwrap()).unwrap().verdict, verdict);
        }
    }

    #[test]
    fn report_depends_only_on_principal_part(
        f in arb_poly(3).prop_filter("nonzero", |f| !f.is_zero()),
        extra in prop::collection::vec(0u32..3, 3),
        k in 1i64..4,
    ) {
        let d = newton_diagram(&f).unwrap();
        // push a monomial strictly above every face
        let base = d.vertices()[0].points[0].clone();
        let mut e = base.exponents().to_vec();
        for (i, x) in extra.iter().enumerate() {
            e[i] += x;
        }
        e[0] += 1;
        let m = Monomial::new(e);
        prop_assume!(d.faces().iter().all(|fc| weight(&m, &fc.covector) > BigRational::one()));
        let g = f.clone() + Poly::term(m, Coeff::from_i64(k, f.field()), f.ctx(), f.field());
        prop_assert_eq!(is_nondegenerate(&f).unwrap(), is_nondegenerate(&g).unwrap());
    }

    #[test]
    fn multiplicity_criterion_matches_face_test(f in arb_convenient2()) {
        match bivia_test(&f, 3, 7) {
            Ok(out) => prop_assert_eq!(out.verdict, is_nondegenerate(&f).unwrap().verdict),
            Err(Error::InfiniteColength) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
