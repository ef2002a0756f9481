use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::ring::{parse_poly, Coeff, Context, Field};

fn ctx(names: &[&str]) -> Arc<Context> {
    Context::new(names).unwrap()
}

fn q(s: &str, names: &[&str]) -> Poly {
    parse_poly(s, &ctx(names), Field::RATIONALS).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ri(n: i64) -> BigRational {
    r(n, 1)
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

#[test]
fn two_edge_diagram() {
    let f = q("x*y + x^5 + y^5", &["x", "y"]);
    let d = newton_diagram(&f).unwrap();
    let verts: Vec<_> = d.vertices().iter().map(|v| v.points.clone()).collect();
    assert_eq!(
        verts,
        vec![
            vec![mono(&[0, 5])],
            vec![mono(&[1, 1])],
            vec![mono(&[5, 0])]
        ]
    );
    let edges: Vec<_> = d
        .faces()
        .iter()
        .filter(|f| f.dim == 1)
        .map(|f| f.points.clone())
        .collect();
    assert_eq!(
        edges,
        vec![
            vec![mono(&[0, 5]), mono(&[1, 1])],
            vec![mono(&[1, 1]), mono(&[5, 0])]
        ]
    );
    assert!(d.is_convenient());

    let edge = d
        .faces()
        .iter()
        .find(|f| f.dim == 1 && f.points.contains(&mono(&[5, 0])))
        .unwrap();
    assert_eq!(face_poly(&f, edge).unwrap(), q("x^5 + x*y", &["x", "y"]));
    assert_eq!(edge.covector, vec![r(1, 5), r(4, 5)]);
    let v = d
        .vertices()
        .into_iter()
        .find(|v| v.points == vec![mono(&[1, 1])])
        .unwrap();
    assert_eq!(face_poly(&f, v).unwrap(), q("x*y", &["x", "y"]));
    assert!(v.is_inner());
    assert_eq!(principal_part(&f).unwrap(), f);

    assert_eq!(d.volumes(), vec![ri(1), ri(10), ri(5)]);
    assert_eq!(d.newton_number(), ri(1));
}

#[test]
fn one_variable() {
    for a in 1..7 {
        let f = q(&format!("x^{a}"), &["x"]);
        let d = newton_diagram(&f).unwrap();
        assert_eq!(d.faces().len(), 1);
        assert_eq!(d.faces()[0].points, vec![mono(&[a])]);
        assert_eq!(d.newton_number(), ri(a as i64 - 1));
    }
}

#[test]
fn brieskorn_curve() {
    let f = q("x^3 + y^5", &["x", "y"]);
    assert_eq!(newton_number(&f).unwrap(), ri(8));
    let g = q("x^3 + y^5 + x^2*y^4 + x^7", &["x", "y"]);
    assert_eq!(principal_part(&g).unwrap(), f);
    assert_eq!(newton_number(&g).unwrap(), ri(8));
}

#[test]
fn determinant_germ_is_one_triangle() {
    let f = q("x^5 + x*y^3 + z^3 - 3*x^2*y*z", &["x", "y", "z"]);
    let d = newton_diagram(&f).unwrap();
    let facets = d.facets();
    assert_eq!(facets.len(), 1);
    assert_eq!(facets[0].points.len(), 4);
    assert_eq!(facets[0].covector, vec![r(1, 5), r(4, 15), r(1, 3)]);
    assert!(facets[0].is_inner());
    assert_eq!(d.faces().iter().filter(|f| f.dim == 1).count(), 3);
    assert_eq!(d.vertices().len(), 3);
    assert!(!d.is_convenient());
}

#[test]
fn face_of_another_polynomial_is_foreign() {
    let f = q("x*y + x^5 + y^5", &["x", "y"]);
    let g = q("x^3 + y^5", &["x", "y"]);
    let dg = newton_diagram(&g).unwrap();
    let facet = dg.facets()[0].clone();
    assert_eq!(face_poly(&f, &facet), Err(Error::ForeignFace));
    assert_eq!(
        newton_diagram(&Poly::zero(f.ctx(), Field::RATIONALS)).unwrap_err(),
        Error::ZeroPolynomial
    );
}

#[test]
fn non_convenient_diagram() {
    // x*y: a single vertex, region of dimension zero
    let f = q("x*y", &["x", "y"]);
    let d = newton_diagram(&f).unwrap();
    assert_eq!(d.faces().len(), 1);
    assert_eq!(d.normalized_volumes(), vec![ri(1), ri(0), ri(0)]);
    assert_eq!(d.newton_number(), ri(1));
    // x^2 + x*y^3: no vertex on the y axis, region is the cone over the edge
    let f = q("x^2 + x*y^3", &["x", "y"]);
    let d = newton_diagram(&f).unwrap();
    assert_eq!(d.normalized_volumes(), vec![ri(1), ri(2), ri(6)]);
    assert_eq!(d.newton_number(), ri(5));
    // single monomial on an axis in two variables
    let f = q("x^4", &["x", "y"]);
    assert_eq!(
        newton_diagram(&f).unwrap().normalized_volumes(),
        vec![ri(1), ri(4), ri(0)]
    );
}

#[test]
fn json_shape() {
    let f = q("x*y + x^5 + y^5", &["x", "y"]);
    let j = newton_diagram(&f).unwrap().to_json();
    assert_eq!(j["vars"], serde_json::json!(["x", "y"]));
    assert_eq!(j["nu"], serde_json::json!("1"));
    assert_eq!(j["convenient"], serde_json::json!(true));
    assert_eq!(j["faces"].as_array().unwrap().len(), 5);
    assert_eq!(j["faces"][0]["on_axes"], serde_json::json!(["x"]));
}

#[test]
fn segment_cdiagram() {
    let d = cdiagram_build(&[vec![r(1, 2), r(1, 3)]]).unwrap();
    assert_eq!(d.vertices(), vec![vec![ri(0), ri(3)], vec![ri(2), ri(0)]]);
    let inner = d.inner_faces();
    assert_eq!(inner.len(), 1);
    assert_eq!(inner[0].dim, 1);
    assert_eq!(d.newton_number(), ri(2));
}

#[test]
fn one_variable_cdiagram_vertex_verdicts() {
    let d = cdiagram_build(&[vec![r(1, 5)]]).unwrap();
    assert_eq!(d.faces().len(), 1);
    let v = &d.faces()[0];
    assert_eq!(v.vertices, vec![vec![ri(5)]]);
    assert!(v.inner);
    assert!(!v.inner_axis_excluded);
    assert_eq!(d.newton_number(), ri(4));
}

#[test]
fn simplex_cdiagram_matches_brieskorn_product() {
    for v in [2i64, 5, 7, 11] {
        let d = cdiagram_build(&[vec![r(1, 3), r(1, 5), r(1, v)]]).unwrap();
        assert_eq!(d.newton_number(), ri(2 * 4 * (v - 1)));
        assert_eq!(d.inner_faces().len(), 1);
    }
}

#[test]
fn rational_cdiagrams() {
    let f = q("x^3 + x*y^3", &["x", "y"]);
    assert_eq!(newton_number(&f).unwrap(), ri(7));
    let d = cdiagram_build(&[vec![r(1, 3), r(2, 9)]]).unwrap();
    assert_eq!(d.vertices(), vec![vec![ri(0), r(9, 2)], vec![ri(3), ri(0)]]);
    assert_eq!(d.newton_number(), ri(7));
    assert!(d.is_above(&[1, 3]));
    let d = cdiagram_build(&[vec![r(1, 3), r(1, 5)]]).unwrap();
    assert_eq!(d.newton_number(), ri(8));
    // two covectors crossing at a non-lattice point
    let d = cdiagram_build(&[vec![r(1, 3), r(1, 2)], vec![r(1, 2), r(1, 5)]]).unwrap();
    assert_eq!(d.faces().iter().filter(|f| f.dim == 1).count(), 2);
    let corner = d
        .vertices()
        .into_iter()
        .find(|v| v.iter().all(|x| x > &ri(0)))
        .unwrap();
    assert_eq!(corner, vec![r(18, 11), r(10, 11)]);
}

#[test]
fn covector_text() {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    assert_eq!(
        parse_covectors("1/3, 1/2; 1/4,1").unwrap(),
        vec![vec![r(1, 3), r(1, 2)], vec![r(1, 4), r(1, 1)]]
    );
    assert!(matches!(
        parse_covectors("1/3,x"),
        Err(Error::Syntax { pos: 4, .. })
    ));
    assert!(matches!(
        parse_covectors("1,1;1/0"),
        Err(Error::Syntax { .. })
    ));
}

#[test]
fn bad_covectors() {
    assert_eq!(
        cdiagram_build(&[vec![ri(0), ri(1)]]).unwrap_err(),
        Error::NonPositiveCovector
    );
    assert_eq!(cdiagram_build(&[]).unwrap_err(), Error::EmptyInput);
}

/// Lower convex hull by the monotone chain and the area under it, as an
/// independent computation of the Newton number of a convenient curve.
fn shoelace_nu(points: &[(i64, i64)]) -> BigRational {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    // keep the part from the y axis point to the x axis point with slopes < 0
    let start = hull.iter().position(|p| p.0 == 0).unwrap();
    let mut chain = vec![hull[start]];
    for &p in &hull[start + 1..] {
        chain.push(p);
        if p.1 == 0 {
            break;
        }
    }
    let mut twice_area = 0i64;
    for w in chain.windows(2) {
        twice_area += w[0].0 * w[1].1 - w[1].0 * w[0].1;
    }
    let a = chain.last().unwrap().0;
    let b = chain[0].1;
    ri(twice_area.abs() - a - b + 1)
}

fn arb_convenient_curve() -> impl Strategy<Value = Vec<(i64, i64)>> {
    (
        1i64..9,
        1i64..9,
        prop::collection::vec((0i64..8, 0i64..8), 0..6),
    )
        .prop_map(|(a, b, mut rest)| {
            rest.push((a, 0));
            rest.push((0, b));
            rest.retain(|p| *p != (0, 0));
            rest
        })
}

fn poly_from(points: &[(i64, i64)]) -> Poly {
    let c = ctx(&["x", "y"]);
    Poly::from_terms(
        &c,
        Field::RATIONALS,
        points
            .iter()
            .map(|&(a, b)| (mono(&[a as u32, b as u32]), Coeff::one(Field::RATIONALS))),
    )
}

fn arb_convenient3() -> impl Strategy<Value = Poly> {
    (1u32..6, 1u32..6, 1u32..6, arb_poly3()).prop_map(|(a, b, c, f)| {
        let ctx = f.ctx().clone();
        let one = Coeff::one(Field::RATIONALS);
        let powers = Poly::from_terms(
            &ctx,
            Field::RATIONALS,
            [
                (mono(&[a, 0, 0]), one.clone()),
                (mono(&[0, b, 0]), one.clone()),
                (mono(&[0, 0, c]), one),
            ],
        );
        f.checked_add(&powers).unwrap()
    })
}

fn arb_poly3() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..5, 0u32..5, 0u32..5), 1..7).prop_map(|pts| {
        let c = ctx(&["x", "y", "z"]);
        Poly::from_terms(
            &c,
            Field::RATIONALS,
            pts.into_iter()
                .filter(|p| *p != (0, 0, 0))
                .map(|(a, b, e)| (mono(&[a, b, e]), Coeff::one(Field::RATIONALS))),
        )
    })
}

proptest! {
    #![proptest_config(crate::testutil::config(96))]

    #[test]
    fn curve_nu_matches_shoelace(points in arb_convenient_curve()) {
        let f = poly_from(&points);
        prop_assert_eq!(newton_number(&f).unwrap(), shoelace_nu(&points));
    }

    #[test]
    fn support_lies_above_every_face(f in arb_poly3().prop_filter("nonzero", |f| !f.is_zero())) {
        let d = newton_diagram(&f).unwrap();
        for face in d.faces() {
            prop_assert!(face.covector.iter().all(|c| c > &ri(0)));
            let val = |m: &Monomial| -> BigRational {
                m.exponents().iter().zip(&face.covector).map(|(&e, c)| c * ri(e as i64)).sum()
            };
            let on = val(&face.points[0]);
            for p in &face.points {
                prop_assert_eq!(val(p), on.clone());
            }
            for m in d.support() {
                if !face.points.contains(m) {
                    prop_assert!(val(m) > on);
                }
            }
            let coords: Vec<Vec<BigInt>> = face.points.iter().map(|m| m.exponents().iter().map(|&e| BigInt::from(e)).collect()).collect();
            prop_assert_eq!(linalg::affine_dim(&coords), face.dim);
        }
    }

    #[test]
    fn faces_closed_under_intersection(f in arb_poly3().prop_filter("nonzero", |f| !f.is_zero())) {
        let d = newton_diagram(&f).unwrap();
        let faces = d.faces();
        for a in faces {
            for b in faces {
                let common: Vec<Monomial> = a.points.iter().filter(|p| b.points.contains(p)).cloned().collect();
                if common.is_empty() {
                    continue;
                }
                prop_assert!(faces.iter().any(|c| c.points == common));
            }
        }
        for v in d.vertices() {
            prop_assert!(d.support().contains(&v.points[0]));
        }
    }

    #[test]
    fn nu_invariant_under_permutation(f in arb_poly3().prop_filter("nonzero", |f| !f.is_zero())) {
        let c = f.ctx().clone();
        let fld = f.field();
        let perms = [[1usize, 2, 0], [1, 0, 2], [2, 1, 0]];
        let nu = newton_number(&f).unwrap();
        for p in perms {
            let images: Vec<Poly> = p.iter().map(|&i| Poly::var(&c, fld, i)).collect();
            let g = f.substitute(&images).unwrap();
            prop_assert_eq!(newton_number(&g).unwrap(), nu.clone());
        }
    }

    #[test]
    fn restriction_matches_subdiagram(f in arb_poly3().prop_filter("nonzero", |f| !f.is_zero())) {
        let d = newton_diagram(&f).unwrap();
        let gm = d.gamma_minus();
        prop_assert_eq!(gm.normalized_volumes(), d.normalized_volumes());
        for drop in 0..3usize {
            let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
            let fi = f.set_zero(&[drop]);
            let restricted: BigRational = gm
                .restricted_to(&keep)
                .iter()
                .filter(|p| p.subspace.len() == 2)
                .map(|p| p.normalized_volume.clone())
                .sum();
            let expect = if fi.is_zero() { ri(0) } else { newton_diagram(&fi).unwrap().normalized_volumes()[2].clone() };
            prop_assert_eq!(restricted, expect);
        }
    }

    #[test]
    fn cdiagram_of_lattice_covectors_matches_polynomial(f in arb_convenient3()) {
        let d = newton_diagram(&f).unwrap();
        let covs: Vec<Vec<BigRational>> = d.facets().iter().map(|fc| fc.covector.clone()).collect();
        let cd = cdiagram_build(&covs).unwrap();
        prop_assert_eq!(cd.newton_number(), d.newton_number());
        prop_assert_eq!(cd.faces().len(), d.faces().len());
    }
}
