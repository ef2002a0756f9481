use super::generic::{draw_rows, COMMITTED};
use super::*;
use crate::ring::{parse_in, Field};
use crate::stabilize::verify_stable_equiv;

fn assert_passes(name: &str) {
    let r = run_fixture(name, &Options::default()).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn committed_rows_come_from_the_seed() {
    let rows = draw_rows(GENERIC_SEED);
    assert_eq!(rows.len(), COMMITTED.len());
    for (r, c) in rows.iter().zip(COMMITTED) {
        assert_eq!(r.as_slice(), c);
    }
}

#[test]
fn determinant_suite() {
    assert!(determinant_consistency());
    let minors: Vec<String> = delta_minors().iter().map(|p| p.to_string()).collect();
    assert_eq!(minors, ["-x*z + y^2", "-x^3 + y*z", "-x^2*y + z^2"]);
    assert!(same_ideal(&delta_minors(), &monomial_curve_ideal([3, 4, 5]).unwrap()).unwrap());
    assert!(is_weighted_homogeneous(
        &f_delta(),
        &DELTA_WEIGHTS,
        DELTA_DEGREE
    ));
    let not = parse_in("x^2 - y", &["x", "y", "z"], Field::rationals()).unwrap();
    assert!(!same_ideal(&delta_minors(), &[not]).unwrap());
}

#[test]
fn primitive_ideals() {
    let v = ["x", "y", "z"];
    let p = |t: &str| parse_in(t, &v, Field::rationals()).unwrap();
    let ideal = [p("x*y"), p("x*z"), p("y*z")];
    assert_eq!(
        primitive_ideal_check(&p("x*y*z"), &ideal).unwrap(),
        (true, false)
    );
    assert_eq!(
        primitive_ideal_check(&(p("x*y") * p("y*z")), &ideal).unwrap(),
        (true, true)
    );
    assert_eq!(
        primitive_ideal_check(&p("x^2*y"), &ideal).unwrap(),
        (false, false)
    );
    assert_eq!(
        primitive_ideal_check(&f_delta(), &delta_minors()).unwrap(),
        (true, false)
    );
}

#[test]
fn series_members_and_thresholds() {
    assert_eq!(series_threshold(7).unwrap(), 6);
    assert_eq!(series_threshold(8).unwrap(), 5);
    assert_eq!(series_threshold(9).unwrap(), 5);
    let s = counterexample_series(7, 6).unwrap();
    assert_eq!(s.poly.to_string(), "x^6 + x^5 - 3*x^2*y*z + x*y^3 + z^3");
    assert_eq!(s.weight, 18);
    assert!(s.warning.is_none());
    assert_eq!(counterexample_series(8, 6).unwrap().weight, 19);
    assert_eq!(counterexample_series(9, 6).unwrap().weight, 20);
    assert!(counterexample_series(7, 5).unwrap().warning.is_some());
    assert!(counterexample_series(10, 6).is_err());
    assert!(counterexample_series(7, 0).is_err());
}

#[test]
fn unknown_fixture() {
    assert_eq!(
        run_fixture("nope", &Options::default()).unwrap_err(),
        Error::UnknownFixture("nope".into())
    );
}

#[test]
fn fixture_names_are_unique() {
    let mut names: Vec<&str> = fixtures().iter().map(|f| f.name).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), fixtures().len());
}

#[test]
fn small_fixtures_pass() {
    for name in [
        "char-p-mu",
        "gn-example",
        "quadric",
        "cubic-one-node",
        "cubic-three-nodes",
        "quartic-four-nodes",
        "quintic-four-nodes",
        "le-yomdin",
        "determinant",
        "primitive-ideals",
        "counterexample-series",
        "semigroup-2-3",
        "semigroup-4-6-13",
    ] {
        assert_passes(name);
    }
}

#[test]
fn luengo_fixture_passes() {
    assert_passes("luengo");
}

#[test]
fn reports_are_reproducible() {
    let a = run_fixture("quadric", &Options::default()).unwrap();
    let b = run_fixture("quadric", &Options::default()).unwrap();
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    assert_eq!(a.to_text(), b.to_text());
    assert!(a.to_text().starts_with("PASS quadric\n"));
    let j = run_fixture("determinant", &Options::default())
        .unwrap()
        .to_json();
    assert_eq!(j["metadata"]["geometric-genus"], "2");
    assert_eq!(j["passed"], true);
}

#[test]
fn reseeded_traces_verify() {
    for (label, t) in traces(&Options { seed: 7 })
        .unwrap()
        .iter()
        .filter(|(l, _)| !l.starts_with("semigroup"))
    {
        assert!(verify_stable_equiv(t), "{label}");
    }
}

#[test]
fn members_cover_the_fixtures() {
    let m = members().unwrap();
    for f in [
        "char-p-mu",
        "gn-example",
        "quadric",
        "luengo",
        "determinant",
        "counterexample-series",
    ] {
        assert!(m.iter().any(|x| x.fixture == f), "{f}");
    }
    assert!(m
        .iter()
        .all(|x| fixtures().iter().any(|f| f.name == x.fixture)));
}
