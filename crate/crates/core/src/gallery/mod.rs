//! Named fixtures with executable expectations, and the polynomials and
//! stabilization traces they contain.

mod fixtures;
pub mod generic;
mod ops;

use std::fmt::{self, Display, Write as _};

use serde::Serialize;

use crate::curves::{plane_curve_from_semigroup, stabilize_simple_branch, validate_semigroup};
use crate::ring::Poly;
use crate::stabilize::StabTrace;
use crate::{Error, Result};

pub use generic::GENERIC_SEED;
pub use ops::{
    counterexample_series, delta_matrix, delta_minors, determinant_consistency, f_delta,
    is_weighted_homogeneous, lies_above_diagram, monomial_curve_ideal, primitive_ideal_check,
    same_ideal, series_monomial, series_threshold, series_weight, SeriesMember, DELTA_DEGREE,
    DELTA_WEIGHTS,
};

/// How an expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    /// Stated in the literature.
    Published,
    /// Computed by an independent method.
    Derived,
    /// Immediate from the definitions.
    Trivial,
}

impl Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Published => "published",
            Origin::Derived => "derived",
            Origin::Trivial => "trivial",
        })
    }
}

/// One executed expectation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub check: String,
    pub origin: Origin,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

/// Collects outcomes while a fixture runs.
#[derive(Debug, Default)]
pub struct Checks {
    outcomes: Vec<Outcome>,
    warnings: Vec<String>,
}

impl Checks {
    fn check(
        &mut self,
        check: impl Into<String>,
        origin: Origin,
        expected: impl Display,
        computed: impl Display,
    ) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let passed = expected == computed;
        self.outcomes.push(Outcome {
            check: check.into(),
            origin,
            expected,
            computed,
            passed,
        });
    }

    fn warn(&mut self, w: String) {
        self.warnings.push(w);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Seed for the coefficients of the node examples; [`GENERIC_SEED`]
    /// selects the committed values.
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: GENERIC_SEED }
    }
}

type Body = fn(&Options, &mut Checks) -> Result<()>;

/// A named example with its expectations.
#[derive(Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    /// Stored facts that are not computed.
    pub metadata: &'static [(&'static str, &'static str)],
    body: Body,
}

impl fmt::Debug for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fixture").field("name", &self.name).finish()
    }
}

const SURFACE_NOTES: &[(&str, &str)] = &[
    ("zeta", "(1 - t^v)(1 - t^5)(1 - t^3)"),
    ("zeta-comparison", "the same zeta function as for T_{3,5,v}"),
    ("geometric-genus", "2"),
    ("fundamental-cycle-self-intersection", "-1"),
];

static FIXTURES: &[Fixture] = &[
    Fixture {
        name: "char-p-mu",
        summary: "x^p and x^p + x^(p+1) over F_p for p = 2, 3, 5, 7",
        metadata: &[],
        body: fixtures::char_p_mu,
    },
    Fixture {
        name: "gn-example",
        summary: "x*y + x^p + y^p over F_p and over Q",
        metadata: &[],
        body: fixtures::gn_example,
    },
    Fixture {
        name: "quadric",
        summary: "(y + x)^2 + x*z + z^2",
        metadata: &[],
        body: fixtures::quadric_fixture,
    },
    Fixture {
        name: "luengo",
        summary: "x^9 + y*(x*y^3 + z^4)^2 + y^10 with and without x^5*(x*y^3 + z^4)",
        metadata: &[],
        body: fixtures::luengo_fixture,
    },
    Fixture {
        name: "cubic-one-node",
        summary: "l1*m1^2 + l2*m2^2",
        metadata: &[],
        body: fixtures::cubic_one_node_fixture,
    },
    Fixture {
        name: "cubic-three-nodes",
        summary: "l1*l2*l3",
        metadata: &[],
        body: fixtures::cubic_three_nodes_fixture,
    },
    Fixture {
        name: "quartic-four-nodes",
        summary: "q1*q2",
        metadata: &[],
        body: fixtures::quartic_fixture,
    },
    Fixture {
        name: "quintic-four-nodes",
        summary: "l1*q1^2 + l2*(q1 + q2)^2 + l3*q2^2",
        metadata: &[],
        body: fixtures::quintic_fixture,
    },
    Fixture {
        name: "le-yomdin",
        summary: "one-node cubic plus l^5",
        metadata: &[],
        body: fixtures::le_yomdin_fixture,
    },
    Fixture {
        name: "determinant",
        summary: "x^5 + x*y^3 + z^3 - 3*x^2*y*z as a symmetric determinant",
        metadata: SURFACE_NOTES,
        body: fixtures::determinant_fixture,
    },
    Fixture {
        name: "primitive-ideals",
        summary: "membership in primitive ideals and in squares",
        metadata: &[],
        body: fixtures::primitive_fixture,
    },
    Fixture {
        name: "counterexample-series",
        summary: "f_delta plus x^k, x^(k-1)*y or x^(k-1)*z for k = 6, 7, 8",
        metadata: SURFACE_NOTES,
        body: fixtures::series_fixture,
    },
    Fixture {
        name: "semigroup-2-3",
        summary: "<2, 3>",
        metadata: &[],
        body: fixtures::semigroup_2_3,
    },
    Fixture {
        name: "semigroup-4-6-13",
        summary: "<4, 6, 13>",
        metadata: &[],
        body: fixtures::semigroup_4_6_13,
    },
    Fixture {
        name: "semigroup-12-18-39-82",
        summary: "<12, 18, 39, 82>",
        metadata: &[],
        body: fixtures::semigroup_12_18_39_82,
    },
    Fixture {
        name: "semigroup-16-24-52-106-215",
        summary: "<16, 24, 52, 106, 215>, a genus four branch",
        metadata: &[],
        body: fixtures::semigroup_g4,
    },
];

pub fn fixtures() -> &'static [Fixture] {
    FIXTURES
}

pub fn find_fixture(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Outcome of running one fixture. A computation error stops the fixture
/// and is kept next to the outcomes gathered so far.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub outcomes: Vec<Outcome>,
    pub warnings: Vec<String>,
    pub metadata: Vec<(String, String)>,
    pub error: Option<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.outcomes.iter().all(|o| o.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable report");
        v["passed"] = self.passed().into();
        v["metadata"] = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::from(v.as_str())))
            .collect();
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict} {}", self.name);
        for o in &self.outcomes {
            let mark = if o.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(
                s,
                "  {mark} {} [{}]: expected {}, computed {}",
                o.check, o.origin, o.expected, o.computed
            );
        }
        for w in &self.warnings {
            let _ = writeln!(s, "  warning: {w}");
        }
        for (k, v) in &self.metadata {
            let _ = writeln!(s, "  note {k}: {v}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "  error: {e}");
        }
        s
    }
}

impl Fixture {
    pub fn run(&self, opts: &Options) -> FixtureReport {
        let mut checks = Checks::default();
        let error = (self.body)(opts, &mut checks).err().map(|e| e.to_string());
        FixtureReport {
            name: self.name.to_string(),
            outcomes: checks.outcomes,
            warnings: checks.warnings,
            metadata: self
                .metadata
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            error,
        }
    }
}

pub fn run_fixture(name: &str, opts: &Options) -> Result<FixtureReport> {
    Ok(find_fixture(name)?.run(opts))
}

/// Runs every fixture on its own thread; reports keep the registry order.
pub fn run_all(opts: &Options) -> Vec<FixtureReport> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = FIXTURES
            .iter()
            .map(|f| scope.spawn(move || f.run(opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("fixture thread"))
            .collect()
    })
}

/// A polynomial appearing in a fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub fixture: &'static str,
    pub label: String,
    pub poly: Poly,
}

/// The germs of the gallery with moderate Milnor numbers, for checks that
/// sweep over all of them.
pub fn members() -> Result<Vec<Member>> {
    let mut out = Vec::new();
    let mut add = |fixture: &'static str, label: String, poly: Poly| {
        out.push(Member {
            fixture,
            label,
            poly,
        })
    };
    for p in fixtures::PRIMES {
        let [xp, xp1, gn] = fixtures::char_p_polys(p)?;
        add("char-p-mu", format!("x^{p} over F_{p}"), xp);
        add("char-p-mu", format!("x^{p} + x^{} over F_{p}", p + 1), xp1);
        add(
            "gn-example",
            format!("x*y + x^{p} + y^{p} over F_{p}"),
            gn.clone(),
        );
        add(
            "gn-example",
            format!("x*y + x^{p} + y^{p} over Q"),
            gn.change_field(crate::ring::Field::rationals())?,
        );
    }
    add(
        "quadric",
        "(y + x)^2 + x*z + z^2".into(),
        fixtures::quadric()?,
    );
    let l = fixtures::luengo()?;
    add("luengo", "f".into(), l.input);
    add("luengo", "stabilized".into(), l.output);
    let t = fixtures::luengo_deformed()?;
    add("luengo", "f_t, t = 1".into(), t.input);
    add("luengo", "stabilized f_t, t = 1".into(), t.output);
    add("determinant", "f_delta".into(), f_delta());
    for variant in [7, 8, 9] {
        for k in fixtures::SERIES_KS {
            add(
                "counterexample-series",
                format!("variant {variant}, k = {k}"),
                counterexample_series(variant, k)?.poly,
            );
        }
    }
    for gens in [&[2, 3][..], &[4, 6, 13]] {
        let s = validate_semigroup(gens).map_err(|r| Error::InvalidSemigroup(r.to_string()))?;
        let name = if gens.len() == 2 {
            "semigroup-2-3"
        } else {
            "semigroup-4-6-13"
        };
        add(name, "plane curve".into(), plane_curve_from_semigroup(&s));
        add(name, "stabilized".into(), stabilize_simple_branch(&s)?.0);
    }
    Ok(out)
}

/// Every stabilization trace built by the fixtures, labelled.
pub fn traces(opts: &Options) -> Result<Vec<(String, StabTrace)>> {
    fixtures::all_traces(opts)
}

#[cfg(test)]
mod tests;
