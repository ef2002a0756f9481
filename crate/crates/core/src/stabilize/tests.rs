use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::milnor::milnor_number;
use crate::ndeg::is_nondegenerate;
use crate::ring::{Context, Monomial};

fn ctx(names: &[&str]) -> Arc<Context> {
    Context::new(names).unwrap()
}

fn over(s: &str, c: &Arc<Context>, field: Field) -> Poly {
    parse_poly(s, c, field).unwrap()
}

fn q(s: &str, c: &Arc<Context>) -> Poly {
    over(s, c, Field::RATIONALS)
}

fn xyz() -> Arc<Context> {
    ctx(&["x", "y", "z"])
}

#[test]
fn luengo_example() {
    let c = xyz();
    let f = q("x^9 + y*(x*y^3 + z^4)^2 + y^10", &c);
    let phi = q("x*y^3 + z^4", &c);
    let d = Decomposition::find(&f, &phi, 2).unwrap().unwrap();
    assert_eq!(d.m, q("y", &c));
    assert_eq!(d.g, q("x^9 + y^10", &c));
    let (out, trace) = basic_trick(&f, &d).unwrap();
    let e = out.ctx().clone();
    assert_eq!(e.names(), &["x", "y", "z", "u", "v"]);
    assert_eq!(out, q("-u*v + u*(x*y^3 + z^4) + y*v^2 + x^9 + y^10", &e));
    assert!(verify_stable_equiv(&trace));
    assert_eq!(trace.steps.len(), 1);
    assert_eq!(trace.steps[0].rule, Rule::BasicTrick);
}

#[test]
fn luengo_deformation() {
    let c = ctx(&["x", "y", "z", "t"]);
    let phi = q("x*y^3 + z^4", &c);
    let f = q("x^9 + y*(x*y^3 + z^4)^2 + y^10 + t*x^5*(x*y^3 + z^4)", &c);
    let g = q("x^9 + y^10", &c);
    let terms = [(q("y", &c), 2), (q("t*x^5", &c), 1)];
    let (out, trace) = multi_term_trick(&f, &phi, &terms, &g).unwrap();
    let e = out.ctx().clone();
    assert_eq!(
        out,
        q("-u*v + u*(x*y^3 + z^4) + y*v^2 + t*v*x^5 + y^10 + x^9", &e)
    );
    assert!(verify_stable_equiv(&trace));
    let last = trace.steps.last().unwrap();
    assert_eq!(last.rule, Rule::Rename);
    assert_eq!(
        last.certificate,
        vec![Subst::Shift {
            var: 4,
            by: q("t*x^5", &e)
        }]
    );
}

#[test]
fn linear_case() {
    let c = ctx(&["x", "y"]);
    let f = q("x^3 + x*y", &c);
    let d = Decomposition::new(q("x^3", &c), q("x", &c), q("y", &c), 1).unwrap();
    let (out, trace) = basic_trick(&f, &d).unwrap();
    assert_eq!(out, q("-u*v + u*y + v*x + x^3", out.ctx()));
    assert!(verify_stable_equiv(&trace));
    let wrong = Decomposition::new(q("x^3", &c), q("x", &c), q("y", &c), 2).unwrap();
    assert_eq!(
        basic_trick(&f, &wrong).unwrap_err(),
        Error::DecompositionMismatch
    );
}

#[test]
fn square_case_form() {
    let c = ctx(&["x", "y"]);
    let f = q("y^3 + (x^2 + y^2)^2", &c);
    let (out, trace) = square_case(&f, &q("y^3", &c), &q("x^2 + y^2", &c)).unwrap();
    assert_eq!(out, q("-1/4*u^2 + u*(x^2 + y^2) + y^3", out.ctx()));
    assert!(verify_stable_equiv(&trace));
    assert_eq!(
        milnor_number(&out).unwrap().mu,
        milnor_number(&f).unwrap().mu
    );
    let f2 = over("y^3 + x^4", &c, Field::prime(2).unwrap());
    let err = square_case(
        &f2,
        &over("y^3", &c, Field::prime(2).unwrap()),
        &over("x^2", &c, Field::prime(2).unwrap()),
    );
    assert_eq!(err.unwrap_err(), Error::CharacteristicTwo);
}

#[test]
fn two_terms_sheared() {
    let c = ctx(&["x", "y"]);
    let phi = q("x + y^2", &c);
    let m1 = q("y", &c);
    let m2 = q("x^2", &c);
    let g = q("y^7", &c);
    let f = g.clone() + &m1 * &phi.pow(2) + &m2 * &phi.pow(3);
    let (out, trace) = multi_term_trick(&f, &phi, &[(m1, 2), (m2, 3)], &g).unwrap();
    let e = out.ctx().clone();
    assert_eq!(e.names(), &["x", "y", "u1", "v1", "u2", "v2"]);
    assert_eq!(
        out,
        q(
            "-u1*v1 + u1*v2 - u2*v2 + u2*(x + y^2) + y*v1^2 + x^2*v2^3 + y^7",
            &e
        )
    );
    assert!(verify_stable_equiv(&trace));
    assert_eq!(trace.fresh_count(), 4);
}

#[test]
fn three_terms_chain() {
    let c = ctx(&["x", "y"]);
    let phi = q("x - y", &c);
    let terms = [(q("x", &c), 2), (q("y", &c), 2), (q("1", &c), 3)];
    let g = q("x^5 + y^5", &c);
    let f = terms
        .iter()
        .fold(g.clone(), |acc, (m, k)| acc + m * &phi.pow(*k));
    let (out, trace) = multi_term_trick(&f, &phi, &terms, &g).unwrap();
    let e = out.ctx().clone();
    let expect =
        "-u1*v1 + u1*v2 - u2*v2 + u2*v3 - u3*v3 + u3*(x - y) + x*v1^2 + y*v2^2 + v3^3 + x^5 + y^5";
    assert_eq!(out, q(expect, &e));
    assert!(verify_stable_equiv(&trace));
}

#[test]
fn star_shear_pairs_every_term() {
    let c = ctx(&["x", "y"]);
    let phi = q("x - y^2", &c);
    let terms = [(q("y", &c), 2), (q("x", &c), 1), (q("x*y", &c), 1)];
    let g = q("y^9", &c);
    let f = terms
        .iter()
        .fold(g.clone(), |acc, (m, k)| acc + m * &phi.pow(*k));
    let names: Vec<[String; 2]> = (1..=3)
        .map(|i| [format!("a{i}"), format!("b{i}")])
        .collect();
    let (out, trace) = multi_term_paired(&f, &phi, &terms, &g, &names, Shear::Star).unwrap();
    let e = out.ctx().clone();
    let expect =
        "-a1*b1 - a2*b2 + a1*b3 + a2*b3 - a3*b3 + a3*(x - y^2) + y*b1^2 + x*b2 + x*y*b3 + y^9";
    assert_eq!(out, q(expect, &e));
    assert!(verify_stable_equiv(&trace));
    let (chain, trace) = multi_term_paired(&f, &phi, &terms, &g, &names, Shear::Chain).unwrap();
    assert!(verify_stable_equiv(&trace));
    assert_eq!(
        milnor_number(&chain).unwrap().mu,
        milnor_number(&out).unwrap().mu
    );
    assert!(multi_term_paired(&f, &phi, &terms, &g, &names[..2], Shear::Star).is_err());
}

#[test]
fn node_builders() {
    let c = xyz();
    let (x, y, z) = (q("x", &c), q("y", &c), q("z", &c));
    let (out, trace) = cubic_three_nodes(&x, &y, &z).unwrap();
    assert_eq!(out, q("-u1*v1 - u2*v2 + u1*x + u2*y + v1*v2*z", out.ctx()));
    assert!(verify_stable_equiv(&trace));
    assert_eq!(trace.steps.len(), 2);

    let (out, trace) = cubic_one_node(&z, &q("x + y + z", &c), &x, &y).unwrap();
    assert_eq!(
        out,
        q(
            "-u1*v1 - u2*v2 + u1*x + u2*y + v1^2*z + v2^2*(x + y + z)",
            out.ctx()
        )
    );
    assert!(verify_stable_equiv(&trace));
    assert!(is_nondegenerate(&out).unwrap().verdict);

    let q1 = q("x^2 + 2*y^2 - 3*z^2 + x*y", &c);
    let q2 = q("2*x^2 - y^2 + 5*z^2 + 3*y*z", &c);
    let (out, trace) = quartic_four_nodes(&q1, &q2).unwrap();
    let e = out.ctx().clone();
    assert_eq!(
        out,
        -(q("u*v", &e)) + q("u", &e) * q1.embed(&e).unwrap() + q("v", &e) * q2.embed(&e).unwrap()
    );
    assert!(verify_stable_equiv(&trace));
    assert!(is_nondegenerate(&out).unwrap().verdict);

    assert!(matches!(
        quartic_four_nodes(&x, &q2),
        Err(Error::DegreeMismatch(_))
    ));
}

#[test]
fn quintic_builder() {
    let c = xyz();
    let (l1, l2, l3) = (q("x", &c), q("y", &c), q("z", &c));
    let q1 = q("x^2 - y*z", &c);
    let q2 = q("y^2 - x*z", &c);
    let (out, trace) = quintic_four_nodes(&l1, &l2, &l3, &q1, &q2).unwrap();
    let e = out.ctx().clone();
    let expect = "-u1*v1 + u2*v1 - u2*v2 + u2*v3 - u3*v3 + u1*(x^2 - y*z) + u3*(y^2 - x*z) + v1^2*x + v2^2*y + v3^2*z";
    assert_eq!(out, q(expect, &e));
    assert!(verify_stable_equiv(&trace));
    assert_eq!(trace.steps.len(), 4);
}

#[test]
fn le_yomdin_form() {
    let c = xyz();
    let fd = q("x^3 + y^3 + z^3", &c);
    let (out, trace) = le_yomdin(&fd, &q("x + y", &c), 5).unwrap();
    assert_eq!(out, q("x^3 + y^3 + z^3 - u*v + u*(x + y) + v^5", out.ctx()));
    assert!(verify_stable_equiv(&trace));
}

#[test]
fn cubic_reduction_examples() {
    let c = ctx(&["x"]);
    let f = q("x^5", &c);
    let (out, trace) = cubic_reduction(&f).unwrap();
    assert!(out.total_degree().unwrap() <= 3);
    assert!(verify_stable_equiv(&trace));
    assert_eq!(
        milnor_number(&out).unwrap().mu,
        crate::groebner::Dim::Finite(4)
    );

    let c2 = ctx(&["x", "y"]);
    let g = q("x^3 + y^3", &c2);
    let (out, trace) = cubic_reduction(&g).unwrap();
    assert_eq!(out, g);
    assert!(trace.steps.is_empty());

    let h = q("x^4 + y^4", &c2);
    let (out, trace) = cubic_reduction(&h).unwrap();
    assert!(out.total_degree().unwrap() <= 3);
    assert!(verify_stable_equiv(&trace));
    assert_eq!(
        milnor_number(&out).unwrap().mu,
        crate::groebner::Dim::Finite(9)
    );
    let n = out.nvars();
    assert!(hessian_rank(&out, &(0..n).collect::<Vec<_>>()) >= trace.fresh_count() / 2);
}

#[test]
fn corrupted_traces_fail() {
    let c = xyz();
    let f = q("x^9 + y*(x*y^3 + z^4)^2 + y^10", &c);
    let d = Decomposition::find(&f, &q("x*y^3 + z^4", &c), 2)
        .unwrap()
        .unwrap();
    let (_, trace) = basic_trick(&f, &d).unwrap();

    let mut bad = trace.clone();
    let e = bad.steps[0].output.ctx().clone();
    bad.steps[0].output = bad.steps[0].output.clone() + q("y^10", &e);
    bad.output = bad.steps[0].output.clone();
    assert!(!verify_stable_equiv(&bad));
    assert_eq!(first_failure(&bad).unwrap().step, Some(0));

    let mut bad = trace.clone();
    bad.steps[0].quadratic = q("0", &e);
    assert!(!verify_stable_equiv(&bad));

    let mut bad = trace.clone();
    bad.steps[0].certificate[0] = Subst::Shift {
        var: 4,
        by: q("v + x", &e),
    };
    assert!(!verify_stable_equiv(&bad));

    let mut bad = trace;
    bad.output = q("x", &c);
    assert_eq!(first_failure(&bad).unwrap().step, None);
}

#[test]
fn json_round_trip() {
    let c = xyz();
    let (out, trace) = quintic_four_nodes(
        &q("x", &c),
        &q("y", &c),
        &q("z", &c),
        &q("x^2 - y*z", &c),
        &q("y^2 - x*z", &c),
    )
    .unwrap();
    let j = trace.to_json();
    let back = StabTrace::from_json(&j).unwrap();
    assert_eq!(back, trace);
    assert_eq!(back.output, out);
    assert!(verify_stable_equiv(&back));
    let text = serde_json::to_string(&j).unwrap();
    let again = StabTrace::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(again, trace);
    assert!(StabTrace::from_json(&serde_json::json!({"characteristic": 0})).is_err());
}

fn arb_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let names = ["x", "y", "z"];
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -3i64..=3),
        1..=max_terms,
    )
    .prop_map(move |t| {
        let c = ctx(&names[..nvars]);
        Poly::from_terms(
            &c,
            Field::RATIONALS,
            t.into_iter()
                .map(|(e, k)| (Monomial::new(e), Coeff::from_i64(k, Field::RATIONALS))),
        )
    })
}

fn arb_instance() -> impl Strategy<Value = (Poly, Poly, Poly, u32)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            arb_poly(n, 3, 4),
            arb_poly(n, 2, 2),
            arb_poly(n, 2, 3),
            1u32..=4,
        )
    })
}

proptest! {
    #![proptest_config(crate::testutil::config(64))]

    #[test]
    fn basic_trick_certificates_verify((g, m, phi, k) in arb_instance()) {
        let d = Decomposition::new(g, m, phi, k).unwrap();
        let f = d.recompose();
        let (out, trace) = basic_trick(&f, &d).unwrap();
        prop_assert!(verify_stable_equiv(&trace));
        prop_assert_eq!(out.nvars(), f.nvars() + 2);
        let back = StabTrace::from_json(&trace.to_json()).unwrap();
        prop_assert!(verify_stable_equiv(&back));
    }

    #[test]
    fn perturbed_output_fails((g, m, phi, k) in arb_instance(), bump in 1i64..5) {
        let d = Decomposition::new(g, m, phi, k).unwrap();
        let (_, mut trace) = basic_trick(&d.recompose(), &d).unwrap();
        let e = trace.steps[0].output.ctx().clone();
        let x = Poly::var(&e, Field::RATIONALS, 0);
        trace.steps[0].output = trace.steps[0].output.clone() + x.pow(2).scale_i64(bump);
        trace.output = trace.steps[0].output.clone();
        prop_assert!(!verify_stable_equiv(&trace));
    }

    #[test]
    fn basic_trick_keeps_mu(
        base in arb_poly(2, 4, 3),
        m in arb_poly(2, 1, 2),
        phi in arb_poly(2, 2, 2),
        k in 1u32..=3,
        a in 2u32..6,
        b in 2u32..6,
    ) {
        let c = base.ctx().clone();
        let fld = Field::RATIONALS;
        let powers = Poly::term(Monomial::new(vec![a, 0]), Coeff::one(fld), &c, fld)
            + Poly::term(Monomial::new(vec![0, b]), Coeff::one(fld), &c, fld);
        let phi = phi.clone() - Poly::constant(phi.constant_term(), &c, fld);
        let g = (base.clone() - Poly::constant(base.constant_term(), &c, fld)) + powers;
        // the coordinate change fixes the origin only if m(0) = 0 when k = 1
        let m = if k == 1 { m.clone() - Poly::constant(m.constant_term(), &c, fld) } else { m };
        let d = Decomposition::new(g, m, phi, k).unwrap();
        let f = d.recompose();
        prop_assume!(f.constant_term().is_zero());
        let mu = milnor_number(&f).unwrap().mu;
        prop_assume!(mu.finite().is_some_and(|v| v <= 30));
        let (out, _) = basic_trick(&f, &d).unwrap();
        prop_assert_eq!(milnor_number(&out).unwrap().mu, mu);
    }

    #[test]
    fn cubic_reduction_contract(f in arb_poly(2, 4, 3)) {
        let c = f.ctx().clone();
        let f = f.clone() - Poly::constant(f.constant_term(), &c, Field::RATIONALS);
        prop_assume!(!f.is_zero());
        let (out, trace) = cubic_reduction(&f).unwrap();
        prop_assert!(out.total_degree().unwrap_or(0) <= 3);
        prop_assert!(verify_stable_equiv(&trace));
        let n = out.nvars();
        let pairs = trace.fresh_count() / 2;
        prop_assert!(hessian_rank(&out, &(0..n).collect::<Vec<_>>()) >= pairs);
        for name in &out.ctx().names()[f.nvars()..] {
            prop_assert!(!f.ctx().names().contains(name));
        }
    }
}
