//! Stabilized normal forms for plane curves with nodes, built from linear
//! and quadratic forms.

use super::tricks::{basic_trick_named, rename_step, Decomposition};
use super::{Rule, StabTrace, Subst};
use crate::ring::Poly;
use crate::{Error, Result};

fn check_form(p: &Poly, degree: u32, what: &str) -> Result<()> {
    if p.is_zero() || p.terms().any(|(m, _)| m.degree() != degree) {
        return Err(Error::DegreeMismatch(format!(
            "{what} must be a nonzero form of degree {degree}"
        )));
    }
    Ok(())
}

fn same_ring(ps: &[&Poly]) -> Result<()> {
    for p in &ps[1..] {
        ps[0].check_same_ring(p)?;
    }
    Ok(())
}

/// Applies the basic trick to `current = rest + m phi^k` and appends it.
fn trick(
    current: &Poly,
    m: &Poly,
    phi: &Poly,
    k: u32,
    hints: [&str; 2],
    trace: &mut StabTrace,
) -> Result<Poly> {
    let m = m.embed(current.ctx())?;
    let phi = phi.embed(current.ctx())?;
    let g = current.clone() - &m * &phi.pow(k);
    let (out, t) = basic_trick_named(current, &Decomposition { g, m, phi, k }, hints)?;
    trace.extend(t);
    Ok(out)
}

/// `l1 m1^2 + l2 m2^2` becomes `-u1 v1 - u2 v2 + u1 m1 + u2 m2 + v1^2 l1 + v2^2 l2`.
pub fn cubic_one_node(l1: &Poly, l2: &Poly, m1: &Poly, m2: &Poly) -> Result<(Poly, StabTrace)> {
    same_ring(&[l1, l2, m1, m2])?;
    for (p, w) in [(l1, "l1"), (l2, "l2"), (m1, "m1"), (m2, "m2")] {
        check_form(p, 1, w)?;
    }
    let f = l1 * &m1.pow(2) + l2 * &m2.pow(2);
    let mut trace = StabTrace::start(&f);
    let s1 = trick(&f, l1, m1, 2, ["u1", "v1"], &mut trace)?;
    let s2 = trick(&s1, l2, m2, 2, ["u2", "v2"], &mut trace)?;
    Ok((s2, trace))
}

/// `l1 l2 l3` becomes `-u1 v1 - u2 v2 + u1 l1 + u2 l2 + v1 v2 l3`.
pub fn cubic_three_nodes(l1: &Poly, l2: &Poly, l3: &Poly) -> Result<(Poly, StabTrace)> {
    same_ring(&[l1, l2, l3])?;
    for (p, w) in [(l1, "l1"), (l2, "l2"), (l3, "l3")] {
        check_form(p, 1, w)?;
    }
    let f = &(l1 * l2) * l3;
    let mut trace = StabTrace::start(&f);
    let s1 = trick(&f, &(l2 * l3), l1, 1, ["u1", "v1"], &mut trace)?;
    let ctx = s1.ctx().clone();
    let v1 = Poly::var(&ctx, f.field(), f.nvars() + 1);
    let s2 = trick(
        &s1,
        &(&v1 * &l3.embed(&ctx)?),
        l2,
        1,
        ["u2", "v2"],
        &mut trace,
    )?;
    Ok((s2, trace))
}

/// `q1 q2` becomes `-uv + u q1 + v q2`.
pub fn quartic_four_nodes(q1: &Poly, q2: &Poly) -> Result<(Poly, StabTrace)> {
    same_ring(&[q1, q2])?;
    check_form(q1, 2, "q1")?;
    check_form(q2, 2, "q2")?;
    let f = q1 * q2;
    let mut trace = StabTrace::start(&f);
    let out = trick(&f, q2, q1, 1, ["u", "v"], &mut trace)?;
    Ok((out, trace))
}

/// `l1 q1^2 + l2 (q1 + q2)^2 + l3 q2^2` becomes
/// `-u1 v1 + u2 v1 - u2 v2 + u2 v3 - u3 v3 + u1 q1 + u3 q2 + v1^2 l1 + v2^2 l2 + v3^2 l3`.
pub fn quintic_four_nodes(
    l1: &Poly,
    l2: &Poly,
    l3: &Poly,
    q1: &Poly,
    q2: &Poly,
) -> Result<(Poly, StabTrace)> {
    same_ring(&[l1, l2, l3, q1, q2])?;
    for (p, w) in [(l1, "l1"), (l2, "l2"), (l3, "l3")] {
        check_form(p, 1, w)?;
    }
    check_form(q1, 2, "q1")?;
    check_form(q2, 2, "q2")?;
    let q12 = q1.clone() + q2.clone();
    let f = l1 * &q1.pow(2) + l2 * &q12.pow(2) + l3 * &q2.pow(2);
    let mut trace = StabTrace::start(&f);
    let s1 = trick(&f, l1, q1, 2, ["u1", "v1"], &mut trace)?;
    let s2 = trick(&s1, l2, &q12, 2, ["u2", "v2"], &mut trace)?;
    let s3 = trick(&s2, l3, q2, 2, ["u3", "v3"], &mut trace)?;
    let ctx = s3.ctx().clone();
    let field = f.field();
    let n = f.nvars();
    let (u1, u2, u3) = (n, n + 2, n + 4);
    let var = |i: usize| Poly::var(&ctx, field, i);
    let out = s3.substitute_vars(&[(u1, var(u1) - var(u2)), (u3, var(u3) - var(u2))])?;
    let cert = vec![
        Subst::Shift {
            var: u1,
            by: var(u2),
        },
        Subst::Shift {
            var: u3,
            by: var(u2),
        },
    ];
    trace.push(rename_step(Rule::Rename, &s3, out.clone(), cert));
    Ok((out, trace))
}

/// `f_stab + l^k` becomes `f_stab - uv + u l + v^k`.
pub fn le_yomdin(f_stab: &Poly, l: &Poly, k: u32) -> Result<(Poly, StabTrace)> {
    same_ring(&[f_stab, l])?;
    check_form(l, 1, "l")?;
    if k == 0 {
        return Err(Error::DegreeMismatch(
            "exponent k must be at least 1".into(),
        ));
    }
    let f = f_stab.clone() + l.pow(k);
    let mut trace = StabTrace::start(&f);
    let one = Poly::one(f.ctx(), f.field());
    let out = trick(&f, &one, l, k, ["u", "v"], &mut trace)?;
    Ok((out, trace))
}
