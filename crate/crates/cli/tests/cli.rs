use std::process::{Command, Output};

use stabnd::ring::{parse_poly, Context, Field};

fn stabnd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabnd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn degenerate_germ_lists_failing_faces() {
    let o = stabnd(&["ndeg", "--vars", "x,y", "--char", "5", "x*y + x^5 + y^5"]);
    assert_eq!(code(&o), 1);
    let s = stdout(&o);
    assert!(s.starts_with("verdict: false\n"), "{s}");
    assert!(s.contains("failing face") && s.contains("x^5"), "{s}");
    let o = stabnd(&["ndeg", "--vars", "x,y", "x*y + x^5 + y^5"]);
    assert_eq!(code(&o), 0);
    let o = stabnd(&[
        "ndeg",
        "--mode",
        "inner",
        "--vars",
        "x,y",
        "--char",
        "5",
        "x*y + x^5 + y^5",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn milnor_number_in_characteristic_p() {
    let o = stabnd(&["mu", "--vars", "x", "--char", "5", "x^5 + x^6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "5\n");
    let o = stabnd(&["mu", "--vars", "x", "--char", "5", "x^5"]);
    assert_eq!(stdout(&o), "infinite\n");
    let o = stabnd(&["mu", "--pipeline", "both", "x^3 + y^5", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mu"], "8");
    assert_eq!(v["agree"], true);
}

#[test]
fn semigroup_stabilization() {
    let o = stabnd(&["semigroup", "stabilize", "--gens", "4,6,13"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(
        s.starts_with("-u0^5*u1 - u0^3*v2 + u1^2*v2 - v2*w2 + w2^2\n"),
        "{s}"
    );
    assert!(
        s.contains("mu(curve) = 16, mu(output) = 16, conductor = 16"),
        "{s}"
    );
    assert!(s.contains("trace verified: true"));
}

#[test]
fn semigroup_queries_and_rejections() {
    let o = stabnd(&["semigroup", "validate", "--gens", "4,6,13"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("conductor: 16"));
    let o = stabnd(&["semigroup", "validate", "--gens", "4,6,12", "--json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rejection"]["condition"], "gcd-not-one");
    let o = stabnd(&["semigroup", "puiseux", "--gens", "4,6,13"]);
    assert_eq!(
        stdout(&o),
        "characteristic: (4; 6, 7)\npairs: (3, 2) (7, 2)\n"
    );
    let o = stabnd(&["semigroup", "equations", "--gens", "4,6,13"]);
    assert_eq!(stdout(&o), "-u0^3 + u1^2\n-u0^5*u1 + u2^2\n");
    let o = stabnd(&["semigroup", "plane-curve", "--gens", "2,3"]);
    assert_eq!(stdout(&o), "-u0^3 + u1^2\n");
    let o = stabnd(&["semigroup", "validate", "--gens", "4,x"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&stabnd(&["frobnicate"])), 2);
    assert_eq!(code(&stabnd(&["mu", "x^3 +"])), 2);
    assert_eq!(code(&stabnd(&["mu", "--char", "4", "x^3"])), 2);
    assert_eq!(code(&stabnd(&["mu", "--vars", "x", "x^3 + y"])), 2);
    assert_eq!(code(&stabnd(&["gallery", "run", "missing"])), 2);
    assert_eq!(
        code(&stabnd(&[
            "ndeg",
            "--mode",
            "inner",
            "--cdiagram",
            "1/5,1/5",
            "x*y + x^5 + y^5"
        ])),
        2
    );
    assert_eq!(code(&stabnd(&["verify", "/nonexistent/trace.json"])), 2);
    assert_eq!(code(&stabnd(&["--help"])), 0);
}

#[test]
fn json_polynomials_round_trip() {
    let f = "x^9 + y*(x*y^3 + z^4)^2 + y^10";
    let o = stabnd(&["stabilize", f, "--phi", "x*y^3 + z^4", "--k", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let vars: Vec<String> = serde_json::from_value(v["output"]["vars"].clone()).unwrap();
    let ctx = Context::new(&vars).unwrap();
    let text = v["output"]["poly"].as_str().unwrap();
    let parsed = parse_poly(text, &ctx, Field::rationals()).unwrap();
    let expected = parse_poly(
        "-u*v + u*(x*y^3 + z^4) + y*v^2 + x^9 + y^10",
        &ctx,
        Field::rationals(),
    )
    .unwrap();
    assert_eq!(parsed, expected);
    assert_eq!(parsed.to_string(), text);
    assert_eq!(v["verified"], true);
}

#[test]
fn traces_verify_and_corruption_is_caught() {
    let dir = std::env::temp_dir().join(format!("stabnd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trace.json");
    let p = path.to_str().unwrap();
    let o = stabnd(&["cubic-reduce", "--vars", "x,y", "x^5 + y^4", "--trace", p]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&stabnd(&["verify", p])), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["steps"][0]["output"]["poly"] = "x^3*u1 + y^4 + x^2*v1 - u1*v1 + x^7".into();
    std::fs::write(&path, v.to_string()).unwrap();
    let o = stabnd(&["verify", p]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("not verified: step 0"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_reproducible() {
    let args = ["gallery", "run", "cubic-one-node", "--json"];
    let a = stabnd(&args);
    let b = stabnd(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let reseeded = stabnd(&["gallery", "run", "cubic-one-node", "--json", "--seed", "5"]);
    assert_ne!(a.stdout, reseeded.stdout);
}

#[test]
fn gallery_listing_and_reports() {
    let o = stabnd(&["gallery", "list"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("luengo ")));
    let o = stabnd(&["gallery", "run", "quadric"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS quadric\n"));
}

#[test]
fn diagram_report_and_primitive_check() {
    let o = stabnd(&["diagram", "x^3 + x*y + y^4"]);
    let s = stdout(&o);
    assert!(
        s.contains("face 3 (dim 1) inner: y^4 x*y covector (3/4, 1/4)"),
        "{s}"
    );
    assert!(s.ends_with("convenient: true\nnu: 1\n"));
    let o = stabnd(&["nu", "--vars", "x,y", "x^3 + y^5"]);
    assert_eq!(stdout(&o), "8\n");
    let o = stabnd(&["nu", "--vars", "x,y", "--cdiagram", "1/3,1/5", "x^3 + y^5"]);
    assert_eq!(stdout(&o), "8\n");
    let o = stabnd(&["report", "(y + x)^2 + x*z + z^2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("mu = nu without non-degeneracy: true"));
    let o = stabnd(&["primitive-check", "x*y*z", "--ideal", "x*y; x*z; y*z"]);
    assert_eq!(stdout(&o), "in primitive ideal: true\nin square: false\n");
}
