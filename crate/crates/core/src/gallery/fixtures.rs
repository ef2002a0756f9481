//! Fixture bodies and the stabilizations they share with [`super::traces`].

use std::sync::Arc;

use super::generic::generic_forms;
use super::ops::{
    counterexample_series, delta_minors, determinant_consistency, f_delta, is_weighted_homogeneous,
    monomial_curve_ideal, primitive_ideal_check, same_ideal, series_threshold, xyz, DELTA_DEGREE,
    DELTA_WEIGHTS,
};
use super::{Checks, Options, Origin};
use crate::curves::{
    branch_evidence, plane_curve_from_semigroup, puiseux_characteristic, special_semigroup_extend,
    stabilize_branch_g4, stabilize_simple_branch, validate_semigroup, Semigroup,
};
use crate::diagram::newton_diagram;
use crate::groebner::Dim;
use crate::milnor::{milnor_number, mu_nu_report, truncation_oracle_mu, DEFAULT_TRUNCATION_CAP};
use crate::ndeg::{is_inner_nondegenerate, is_nondegenerate, is_weakly_nondegenerate};
use crate::ring::{parse_poly, Context, Field, Poly};
use crate::stabilize::{
    basic_trick, cubic_one_node, cubic_three_nodes, le_yomdin, multi_term_trick,
    quartic_four_nodes, quintic_four_nodes, verify_stable_equiv, Decomposition, StabTrace,
};
use crate::{Error, Result};

pub(super) const PRIMES: [u64; 4] = [2, 3, 5, 7];

pub(super) fn parse(text: &str, ctx: &Arc<Context>, field: Field) -> Result<Poly> {
    parse_poly(text, ctx, field)
}

fn rat(text: &str, ctx: &Arc<Context>) -> Result<Poly> {
    parse(text, ctx, Field::rationals())
}

fn mu(f: &Poly) -> Result<Dim> {
    Ok(milnor_number(f)?.mu)
}

fn oracle_mu(f: &Poly) -> Result<Dim> {
    Ok(truncation_oracle_mu(f, 1, DEFAULT_TRUNCATION_CAP)?.mu)
}

fn ndeg(f: &Poly) -> Result<bool> {
    Ok(is_nondegenerate(f)?.verdict)
}

fn sg(gens: &[u64]) -> Result<Semigroup> {
    validate_semigroup(gens).map_err(|r| Error::InvalidSemigroup(r.to_string()))
}

pub(super) fn one_var() -> Arc<Context> {
    Context::new(&["x"]).expect("valid names")
}

pub(super) fn two_vars() -> Arc<Context> {
    Context::new(&["x", "y"]).expect("valid names")
}

/// `x^p`, `x^p + x^(p+1)` and `x y + x^p + y^p` over `F_p`.
pub(super) fn char_p_polys(p: u64) -> Result<[Poly; 3]> {
    let field = Field::prime(p)?;
    Ok([
        parse(&format!("x^{p}"), &one_var(), field)?,
        parse(&format!("x^{p} + x^{}", p + 1), &one_var(), field)?,
        parse(&format!("x*y + x^{p} + y^{p}"), &two_vars(), field)?,
    ])
}

pub(super) fn quadric() -> Result<Poly> {
    rat("(y + x)^2 + x*z + z^2", &xyz())
}

pub(super) const LUENGO: &str = "x^9 + y*(x*y^3 + z^4)^2 + y^10";
const LUENGO_T: &str = "x^9 + y*(x*y^3 + z^4)^2 + y^10 + x^5*(x*y^3 + z^4)";
const LUENGO_FORM: &str = "-u*v + u*(x*y^3 + z^4) + y*v^2 + x^9 + y^10";
const LUENGO_T_FORM: &str = "-u*v + u*(x*y^3 + z^4) + y*v^2 + v*x^5 + y^10 + x^9";

pub(super) struct Stabilized {
    pub input: Poly,
    pub output: Poly,
    pub trace: StabTrace,
}

pub(super) fn luengo() -> Result<Stabilized> {
    let c = xyz();
    let f = rat(LUENGO, &c)?;
    let phi = rat("x*y^3 + z^4", &c)?;
    let d = Decomposition::find(&f, &phi, 2)?.ok_or(Error::DecompositionMismatch)?;
    let (output, trace) = basic_trick(&f, &d)?;
    Ok(Stabilized {
        input: f,
        output,
        trace,
    })
}

pub(super) fn luengo_deformed() -> Result<Stabilized> {
    let c = xyz();
    let f = rat(LUENGO_T, &c)?;
    let phi = rat("x*y^3 + z^4", &c)?;
    let terms = [(rat("y", &c)?, 2), (rat("x^5", &c)?, 1)];
    let (output, trace) = multi_term_trick(&f, &phi, &terms, &rat("x^9 + y^10", &c)?)?;
    Ok(Stabilized {
        input: f,
        output,
        trace,
    })
}

/// Linear and quadratic forms of the node examples for `opts.seed`.
struct Forms(Vec<Poly>);

impl Forms {
    fn new(opts: &Options) -> Self {
        Forms(generic_forms(opts.seed, &xyz()))
    }
}

pub(super) fn one_node_explicit() -> Result<Stabilized> {
    let c = xyz();
    let (l1, l2, m1, m2) = (
        rat("z", &c)?,
        rat("x + y + z", &c)?,
        rat("x", &c)?,
        rat("y", &c)?,
    );
    let (output, trace) = cubic_one_node(&l1, &l2, &m1, &m2)?;
    Ok(Stabilized {
        input: trace.input.clone(),
        output,
        trace,
    })
}

fn one_node_generic(opts: &Options) -> Result<(Stabilized, [Poly; 4])> {
    let f = Forms::new(opts).0;
    let [m1, m2, l1, l2] = [f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()];
    let (output, trace) = cubic_one_node(&l1, &l2, &m1, &m2)?;
    Ok((
        Stabilized {
            input: trace.input.clone(),
            output,
            trace,
        },
        [m1, m2, l1, l2],
    ))
}

pub(super) fn three_nodes_explicit() -> Result<Stabilized> {
    let c = xyz();
    let (output, trace) = cubic_three_nodes(&rat("x", &c)?, &rat("y", &c)?, &rat("z", &c)?)?;
    Ok(Stabilized {
        input: trace.input.clone(),
        output,
        trace,
    })
}

fn three_nodes_generic(opts: &Options) -> Result<(Stabilized, [Poly; 3])> {
    let f = Forms::new(opts).0;
    let ls = [f[4].clone(), f[5].clone(), f[6].clone()];
    let (output, trace) = cubic_three_nodes(&ls[0], &ls[1], &ls[2])?;
    Ok((
        Stabilized {
            input: trace.input.clone(),
            output,
            trace,
        },
        ls,
    ))
}

fn quartic_generic(opts: &Options) -> Result<(Stabilized, [Poly; 2])> {
    let f = Forms::new(opts).0;
    let qs = [f[7].clone(), f[8].clone()];
    let (output, trace) = quartic_four_nodes(&qs[0], &qs[1])?;
    Ok((
        Stabilized {
            input: trace.input.clone(),
            output,
            trace,
        },
        qs,
    ))
}

fn quintic_generic(opts: &Options) -> Result<(Stabilized, [Poly; 5])> {
    let f = Forms::new(opts).0;
    let fs = [
        f[9].clone(),
        f[10].clone(),
        f[11].clone(),
        f[12].clone(),
        f[13].clone(),
    ];
    let (output, trace) = quintic_four_nodes(&fs[0], &fs[1], &fs[2], &fs[3], &fs[4])?;
    Ok((
        Stabilized {
            input: trace.input.clone(),
            output,
            trace,
        },
        fs,
    ))
}

pub(super) const LE_YOMDIN_K: u32 = 5;

/// The one-node cubic plus `l^k`, first stabilized as a cubic, then by the
/// Le-Yomdin step.
fn le_yomdin_generic(opts: &Options) -> Result<(Stabilized, Stabilized, Poly)> {
    let (cubic, _) = one_node_generic(opts)?;
    let l = Forms::new(opts).0[14].embed(cubic.output.ctx())?;
    let (output, trace) = le_yomdin(&cubic.output, &l, LE_YOMDIN_K)?;
    let surface = cubic.input.clone() + Forms::new(opts).0[14].pow(LE_YOMDIN_K);
    Ok((
        cubic,
        Stabilized {
            input: trace.input.clone(),
            output,
            trace,
        },
        surface,
    ))
}

/// Every stabilization trace produced by the gallery.
pub(super) fn all_traces(opts: &Options) -> Result<Vec<(String, StabTrace)>> {
    let mut out = vec![
        ("luengo".to_string(), luengo()?.trace),
        ("luengo-deformed".to_string(), luengo_deformed()?.trace),
        (
            "cubic-one-node-explicit".to_string(),
            one_node_explicit()?.trace,
        ),
        (
            "cubic-one-node".to_string(),
            one_node_generic(opts)?.0.trace,
        ),
        (
            "cubic-three-nodes-explicit".to_string(),
            three_nodes_explicit()?.trace,
        ),
        (
            "cubic-three-nodes".to_string(),
            three_nodes_generic(opts)?.0.trace,
        ),
        (
            "quartic-four-nodes".to_string(),
            quartic_generic(opts)?.0.trace,
        ),
        (
            "quintic-four-nodes".to_string(),
            quintic_generic(opts)?.0.trace,
        ),
    ];
    let (cubic, ly, _) = le_yomdin_generic(opts)?;
    out.push(("le-yomdin-cubic".into(), cubic.trace));
    out.push(("le-yomdin".into(), ly.trace));
    for gens in [&[4, 6, 13][..], &[12, 18, 39, 82]] {
        let (_, t) = stabilize_simple_branch(&sg(gens)?)?;
        out.push((format!("semigroup-{}", join(gens)), t));
    }
    let (_, t) = stabilize_branch_g4(&sg(&G4)?)?;
    out.push((format!("semigroup-{}", join(&G4)), t));
    Ok(out)
}

pub(super) const G4: [u64; 5] = [16, 24, 52, 106, 215];

pub(super) fn join(gens: &[u64]) -> String {
    gens.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

fn display(p: &Poly) -> String {
    p.to_string()
}

/// Expected polynomial text rendered in the ring of `actual`.
fn form(text: &str, actual: &Poly) -> Result<String> {
    Ok(display(&parse(text, actual.ctx(), actual.field())?))
}

fn check_trace(c: &mut Checks, label: &str, trace: &StabTrace) {
    c.check(
        format!("{label}: trace verifies"),
        Origin::Derived,
        true,
        verify_stable_equiv(trace),
    );
}

pub(super) fn char_p_mu(_: &Options, c: &mut Checks) -> Result<()> {
    for p in PRIMES {
        let [xp, xp1, _] = char_p_polys(p)?;
        c.check(
            format!("mu(x^{p}) over F_{p}"),
            Origin::Published,
            Dim::Infinite,
            mu(&xp)?,
        );
        c.check(
            format!("mu(x^{p} + x^{}) over F_{p}", p + 1),
            Origin::Published,
            p,
            mu(&xp1)?,
        );
        let cd = newton_diagram(&xp)?.natural_cdiagram()?;
        let inner = is_inner_nondegenerate(&xp, &cd)?.verdict;
        c.check(
            format!("x^{p} inner non-degenerate over F_{p}"),
            Origin::Derived,
            false,
            inner,
        );
    }
    Ok(())
}

pub(super) fn gn_example(_: &Options, c: &mut Checks) -> Result<()> {
    for p in PRIMES {
        let [_, _, f] = char_p_polys(p)?;
        let d = newton_diagram(&f)?;
        c.check(format!("mu over F_{p}"), Origin::Published, 1, mu(&f)?);
        c.check(
            format!("nu over F_{p}"),
            Origin::Published,
            1,
            crate::diagram::fmt_rat(&d.newton_number()),
        );
        c.check(
            format!("non-degenerate over F_{p}"),
            Origin::Published,
            false,
            ndeg(&f)?,
        );
        let inner = is_inner_nondegenerate(&f, &d.natural_cdiagram()?)?.verdict;
        c.check(
            format!("inner non-degenerate over F_{p}"),
            Origin::Published,
            true,
            inner,
        );
        let fq = parse(
            &format!("x*y + x^{p} + y^{p}"),
            &two_vars(),
            Field::rationals(),
        )?;
        c.check(
            format!("x*y + x^{p} + y^{p} non-degenerate over Q"),
            Origin::Derived,
            true,
            ndeg(&fq)?,
        );
    }
    Ok(())
}

pub(super) fn quadric_fixture(_: &Options, c: &mut Checks) -> Result<()> {
    let f = quadric()?;
    let r = mu_nu_report(&f)?;
    c.check("mu", Origin::Derived, 1, r.mu);
    c.check("nu", Origin::Derived, 1, crate::diagram::fmt_rat(&r.nu));
    c.check("non-degenerate", Origin::Published, false, r.nondegenerate);
    c.check(
        "weakly non-degenerate",
        Origin::Derived,
        true,
        is_weakly_nondegenerate(&f)?.verdict,
    );
    c.check(
        "mu = nu without non-degeneracy",
        Origin::Derived,
        true,
        r.equality_without_nondegeneracy,
    );
    Ok(())
}

pub(super) fn luengo_fixture(_: &Options, c: &mut Checks) -> Result<()> {
    let s = luengo()?;
    c.check(
        "stabilized form",
        Origin::Published,
        form(LUENGO_FORM, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "stabilized form", &s.trace);
    let reference = oracle_mu(&s.input)?;
    c.check(
        "mu(f): standard basis vs truncation oracle",
        Origin::Derived,
        reference,
        mu(&s.input)?,
    );
    c.check(
        "mu(stabilized): standard basis vs mu(f)",
        Origin::Derived,
        reference,
        mu(&s.output)?,
    );
    c.check(
        "mu(stabilized): truncation oracle vs mu(f)",
        Origin::Derived,
        reference,
        oracle_mu(&s.output)?,
    );
    c.check(
        "stabilized form non-degenerate",
        Origin::Published,
        true,
        ndeg(&s.output)?,
    );

    let t = luengo_deformed()?;
    c.check(
        "deformed form (t = 1)",
        Origin::Published,
        form(LUENGO_T_FORM, &t.output)?,
        display(&t.output),
    );
    check_trace(c, "deformed form", &t.trace);
    c.check(
        "mu(deformed form) vs mu(f_t)",
        Origin::Derived,
        mu(&t.input)?,
        mu(&t.output)?,
    );
    c.check(
        "deformed form non-degenerate",
        Origin::Published,
        true,
        ndeg(&t.output)?,
    );
    Ok(())
}

pub(super) fn cubic_one_node_fixture(opts: &Options, c: &mut Checks) -> Result<()> {
    let s = one_node_explicit()?;
    let text = "-u1*v1 - u2*v2 + u1*x + u2*y + v1^2*z + v2^2*(x + y + z)";
    c.check(
        "explicit form",
        Origin::Published,
        form(text, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "explicit form", &s.trace);
    c.check(
        "explicit form non-degenerate",
        Origin::Derived,
        true,
        ndeg(&s.output)?,
    );

    let (s, [m1, m2, l1, l2]) = one_node_generic(opts)?;
    let text = format!("-u1*v1 - u2*v2 + u1*({m1}) + u2*({m2}) + v1^2*({l1}) + v2^2*({l2})");
    c.check(
        "generic form",
        Origin::Published,
        form(&text, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "generic form", &s.trace);
    c.check(
        "generic form non-degenerate",
        Origin::Published,
        true,
        ndeg(&s.output)?,
    );
    Ok(())
}

pub(super) fn cubic_three_nodes_fixture(opts: &Options, c: &mut Checks) -> Result<()> {
    let s = three_nodes_explicit()?;
    let first = &s.trace.steps[0].output;
    c.check(
        "first trick",
        Origin::Published,
        form("-u1*v1 + u1*x + v1*y*z", first)?,
        display(first),
    );
    let text = "-u1*v1 - u2*v2 + u1*x + u2*y + v1*v2*z";
    c.check(
        "second trick",
        Origin::Published,
        form(text, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "explicit form", &s.trace);
    c.check(
        "explicit form non-degenerate",
        Origin::Derived,
        true,
        ndeg(&s.output)?,
    );

    let (s, [l1, l2, l3]) = three_nodes_generic(opts)?;
    let text = format!("-u1*v1 - u2*v2 + u1*({l1}) + u2*({l2}) + v1*v2*({l3})");
    c.check(
        "generic form",
        Origin::Published,
        form(&text, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "generic form", &s.trace);
    Ok(())
}

pub(super) fn quartic_fixture(opts: &Options, c: &mut Checks) -> Result<()> {
    let (s, [q1, q2]) = quartic_generic(opts)?;
    let text = format!("-u*v + u*({q1}) + v*({q2})");
    c.check(
        "generic form",
        Origin::Published,
        form(&text, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "generic form", &s.trace);
    c.check(
        "generic form non-degenerate",
        Origin::Derived,
        true,
        ndeg(&s.output)?,
    );
    Ok(())
}

pub(super) fn quintic_fixture(opts: &Options, c: &mut Checks) -> Result<()> {
    let (s, [l1, l2, l3, q1, q2]) = quintic_generic(opts)?;
    let text = format!(
        "-u1*v1 + u2*v1 - u2*v2 + u2*v3 - u3*v3 + u1*({q1}) + u3*({q2}) + v1^2*({l1}) + v2^2*({l2}) + v3^2*({l3})"
    );
    c.check(
        "generic form",
        Origin::Published,
        form(&text, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "generic form", &s.trace);
    Ok(())
}

pub(super) fn le_yomdin_fixture(opts: &Options, c: &mut Checks) -> Result<()> {
    let (cubic, s, surface) = le_yomdin_generic(opts)?;
    let l = Forms::new(opts).0[14].clone();
    let text = format!("{} - u*v + u*({l}) + v^{LE_YOMDIN_K}", cubic.output);
    c.check(
        "stabilized form",
        Origin::Published,
        form(&text, &s.output)?,
        display(&s.output),
    );
    check_trace(c, "cubic", &cubic.trace);
    check_trace(c, "Le-Yomdin step", &s.trace);
    c.check(
        "mu(stabilized) vs mu(f_3 + l^k)",
        Origin::Derived,
        mu(&surface)?,
        mu(&s.output)?,
    );
    Ok(())
}

pub(super) fn determinant_fixture(_: &Options, c: &mut Checks) -> Result<()> {
    c.check(
        "-det equals f_delta",
        Origin::Published,
        true,
        determinant_consistency(),
    );
    let f = f_delta();
    let homogeneous = is_weighted_homogeneous(&f, &DELTA_WEIGHTS, DELTA_DEGREE);
    c.check(
        "weights (3,4,5), degree 15",
        Origin::Derived,
        true,
        homogeneous,
    );
    let minors = delta_minors();
    let shown: Vec<String> = minors.iter().map(display).collect();
    let expected = ["y^2 - x*z", "y*z - x^3", "z^2 - x^2*y"]
        .iter()
        .map(|t| form(t, &f))
        .collect::<Result<Vec<_>>>()?;
    c.check(
        "minors of the first two rows",
        Origin::Published,
        expected.join(", "),
        shown.join(", "),
    );
    let curve = monomial_curve_ideal([3, 4, 5])?;
    c.check(
        "minors cut out the curve (t^3, t^4, t^5)",
        Origin::Published,
        true,
        same_ideal(&minors, &curve)?,
    );
    c.check("mu(f_delta)", Origin::Derived, Dim::Infinite, mu(&f)?);
    Ok(())
}

pub(super) fn primitive_fixture(_: &Options, c: &mut Checks) -> Result<()> {
    let x = xyz();
    let fmt = |r: (bool, bool)| format!("({}, {})", r.0, r.1);
    let ideal = [rat("x*y", &x)?, rat("x*z", &x)?, rat("y*z", &x)?];
    c.check(
        "x*y*z in (xy, xz, yz)",
        Origin::Published,
        "(true, false)",
        fmt(primitive_ideal_check(&rat("x*y*z", &x)?, &ideal)?),
    );
    let r = primitive_ideal_check(&f_delta(), &delta_minors())?;
    c.check(
        "f_delta in its minor ideal",
        Origin::Published,
        "(true, false)",
        fmt(r),
    );
    let xy = two_vars();
    let r = primitive_ideal_check(&rat("(x*y)^2", &xy)?, &[rat("x", &xy)?, rat("y", &xy)?])?;
    c.check("(x*y)^2 in (x, y)", Origin::Trivial, "(true, true)", fmt(r));
    Ok(())
}

pub(super) const SERIES_KS: [u32; 3] = [6, 7, 8];

pub(super) fn series_fixture(_: &Options, c: &mut Checks) -> Result<()> {
    for (variant, expected) in [(7, 6), (8, 5), (9, 5)] {
        c.check(
            format!("variant {variant}: threshold"),
            Origin::Derived,
            expected,
            series_threshold(variant)?,
        );
        for k in SERIES_KS {
            let s = counterexample_series(variant, k)?;
            if let Some(w) = &s.warning {
                c.warn(format!("variant {variant}: {w}"));
            }
            c.check(
                format!("variant {variant}, k = {k}: mu = 7 + v"),
                Origin::Published,
                7 + s.weight,
                mu(&s.poly)?,
            );
            c.check(
                format!("variant {variant}, k = {k}: non-degenerate"),
                Origin::Published,
                false,
                ndeg(&s.poly)?,
            );
        }
    }
    Ok(())
}

fn semigroup_basics(c: &mut Checks, s: &Semigroup, plane: &Poly) -> Result<()> {
    c.check(
        "mu(plane curve) = conductor",
        Origin::Derived,
        s.conductor(),
        mu(plane)?,
    );
    c.check(
        "Puiseux data consistent",
        Origin::Derived,
        true,
        puiseux_characteristic(s).is_consistent(s),
    );
    Ok(())
}

pub(super) fn semigroup_2_3(_: &Options, c: &mut Checks) -> Result<()> {
    let s = sg(&[2, 3])?;
    let f = plane_curve_from_semigroup(&s);
    c.check(
        "plane curve",
        Origin::Derived,
        form("u1^2 - u0^3", &f)?,
        display(&f),
    );
    semigroup_basics(c, &s, &f)
}

pub(super) fn semigroup_4_6_13(_: &Options, c: &mut Checks) -> Result<()> {
    let s = sg(&[4, 6, 13])?;
    let f = plane_curve_from_semigroup(&s);
    c.check(
        "plane curve",
        Origin::Published,
        form("(u1^2 - u0^3)^2 - u0^5*u1", &f)?,
        display(&f),
    );
    semigroup_basics(c, &s, &f)?;
    let (out, trace) = stabilize_simple_branch(&s)?;
    let text = "-v2*w2 + v2*(u1^2 - u0^3) + w2^2 - u0^5*u1";
    c.check(
        "stabilized form",
        Origin::Published,
        form(text, &out)?,
        display(&out),
    );
    check_trace(c, "stabilized form", &trace);
    c.check(
        "mu(stabilized) = conductor",
        Origin::Derived,
        s.conductor(),
        mu(&out)?,
    );
    c.check(
        "stabilized form non-degenerate",
        Origin::Published,
        true,
        ndeg(&out)?,
    );
    Ok(())
}

pub(super) fn semigroup_12_18_39_82(_: &Options, c: &mut Checks) -> Result<()> {
    let base = sg(&[4, 6, 13])?;
    let s = special_semigroup_extend(&base, 3, 82)
        .map_err(|r| Error::InvalidSemigroup(r.to_string()))?;
    c.check(
        "extension of <4,6,13> by 3 and 82",
        Origin::Derived,
        "12, 18, 39, 82",
        join(&s.gens).replace('-', ", "),
    );
    let f = plane_curve_from_semigroup(&s);
    semigroup_basics(c, &s, &f)?;
    let (out, trace) = stabilize_simple_branch(&s)?;
    let text = "-v3*w3 - v2*w2 + v2*(u1^2 - u0^3) + v3*w2^2 + w3^3 - v3*u0^5*u1 - u0^19*u1";
    c.check(
        "stabilized form",
        Origin::Published,
        form(text, &out)?,
        display(&out),
    );
    check_trace(c, "stabilized form", &trace);
    let ev = branch_evidence(&out)?;
    c.check("number of monomials", Origin::Published, 8, ev.monomials);
    c.check(
        "every facet is a simplex",
        Origin::Derived,
        true,
        ev.facets_are_simplices,
    );
    c.check(
        "mu(stabilized) = conductor",
        Origin::Derived,
        s.conductor(),
        mu(&out)?,
    );
    Ok(())
}

pub(super) fn semigroup_g4(_: &Options, c: &mut Checks) -> Result<()> {
    let s = sg(&G4)?;
    c.check("genus", Origin::Derived, 4, s.genus());
    c.check("conductor", Origin::Derived, 382, s.conductor());
    let f = plane_curve_from_semigroup(&s);
    c.check(
        "mu(plane curve) = conductor",
        Origin::Derived,
        s.conductor(),
        mu(&f)?,
    );
    let (out, trace) = stabilize_branch_g4(&s)?;
    check_trace(c, "stabilized form", &trace);
    c.check(
        "mu(stabilized) = conductor",
        Origin::Derived,
        s.conductor(),
        mu(&out)?,
    );
    Ok(())
}
