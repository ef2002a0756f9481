//! The basic trick `g + m phi^k ~ -uv + u phi + m v^k + g` and the rewritings
//! built from it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Rule, StabTrace, Step, Subst};
use crate::ring::{Coeff, Context, Monomial, Poly};
use crate::{Error, Result};

/// `f = g + m * phi^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub g: Poly,
    pub m: Poly,
    pub phi: Poly,
    pub k: u32,
}

impl Decomposition {
    pub fn new(g: Poly, m: Poly, phi: Poly, k: u32) -> Result<Self> {
        g.check_same_ring(&m)?;
        g.check_same_ring(&phi)?;
        if k == 0 {
            return Err(Error::DegreeMismatch(
                "exponent k must be at least 1".into(),
            ));
        }
        Ok(Decomposition { g, m, phi, k })
    }

    pub fn recompose(&self) -> Poly {
        self.g.clone() + &self.m * &self.phi.pow(self.k)
    }

    /// Looks for a term `c x^a` of `f` such that every term of
    /// `c x^a / lt(phi^k) * phi^k` occurs in `f` with the same coefficient.
    pub fn find(f: &Poly, phi: &Poly, k: u32) -> Result<Option<Decomposition>> {
        f.check_same_ring(phi)?;
        if phi.is_zero() || k == 0 {
            return Ok(None);
        }
        let power = phi.pow(k);
        let (lead, lc) = power
            .sorted_terms()
            .last()
            .map(|(m, c)| ((*m).clone(), (*c).clone()))
            .unwrap();
        for (t, c) in f.sorted_terms().into_iter().rev() {
            if !lead.divides(t) {
                continue;
            }
            let coeff = c.div(&lc).ok_or(Error::DivisionByZero)?;
            let m = Poly::term(lead.quotient_of(t), coeff, f.ctx(), f.field());
            let prod = &m * &power;
            if prod.terms().all(|(pm, pc)| f.coeff(pm) == Some(pc)) {
                let g = f.clone() - prod;
                return Ok(Some(Decomposition {
                    g,
                    m,
                    phi: phi.clone(),
                    k,
                }));
            }
        }
        Ok(None)
    }
}

fn fresh_pair(ctx: &Arc<Context>, hints: [&str; 2]) -> Result<(Arc<Context>, Vec<String>)> {
    let names = ctx.fresh_names(&hints);
    Ok((ctx.extended(&names)?, names))
}

/// `sum_{j=1..k} C(k, j) v^(j-1) phi^(k-j)`, i.e. `((v + phi)^k - phi^k) / v`.
fn difference_quotient(v: &Poly, phi: &Poly, k: u32) -> Poly {
    let mut out = Poly::zero(v.ctx(), v.field());
    let mut binom = BigInt::from(1);
    for j in 1..=k {
        binom = binom * BigInt::from(k - j + 1) / BigInt::from(j);
        let c = Coeff::from_big_int(&binom, v.field());
        out = out + (&v.pow(j - 1) * &phi.pow(k - j)).scale(&c);
    }
    out
}

/// Basic trick with fresh variables named after `hints`.
pub(crate) fn basic_trick_named(
    f: &Poly,
    d: &Decomposition,
    hints: [&str; 2],
) -> Result<(Poly, StabTrace)> {
    f.check_same_ring(&d.g)?;
    if d.k == 0 {
        return Err(Error::DegreeMismatch(
            "exponent k must be at least 1".into(),
        ));
    }
    if &d.recompose() != f {
        return Err(Error::DecompositionMismatch);
    }
    let (ext, names) = fresh_pair(f.ctx(), hints)?;
    let field = f.field();
    let n = f.nvars();
    let (u, v) = (Poly::var(&ext, field, n), Poly::var(&ext, field, n + 1));
    let (g, m, phi) = (d.g.embed(&ext)?, d.m.embed(&ext)?, d.phi.embed(&ext)?);
    let out = -(&u * &v) + &u * &phi + &m * &v.pow(d.k) + g;
    let certificate = vec![
        Subst::Shift {
            var: n + 1,
            by: phi.clone(),
        },
        Subst::Shift {
            var: n,
            by: &m * &difference_quotient(&v, &phi, d.k),
        },
    ];
    let mut trace = StabTrace::start(f);
    trace.push(Step {
        rule: Rule::BasicTrick,
        fresh: names,
        input: f.clone(),
        output: out.clone(),
        certificate,
        quadratic: -(&u * &v),
    });
    Ok((out, trace))
}

/// `g + m phi^k` becomes `-uv + u phi + m v^k + g` in two fresh variables.
pub fn basic_trick(f: &Poly, d: &Decomposition) -> Result<(Poly, StabTrace)> {
    basic_trick_named(f, d, ["u", "v"])
}

/// `g + phi^2` becomes `-u^2/4 + u phi + g` in one fresh variable.
pub fn square_case(f: &Poly, g: &Poly, phi: &Poly) -> Result<(Poly, StabTrace)> {
    f.check_same_ring(g)?;
    f.check_same_ring(phi)?;
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if &(g.clone() + phi.pow(2)) != f {
        return Err(Error::DecompositionMismatch);
    }
    let names = f.ctx().fresh_names(&["u"]);
    let ext = f.ctx().extended(&names)?;
    let n = f.nvars();
    let u = Poly::var(&ext, field, n);
    let quarter = Coeff::from_rational(&BigRational::new((-1).into(), 4.into()), field).unwrap();
    let phi_e = phi.embed(&ext)?;
    let quadratic = u.pow(2).scale(&quarter);
    let out = quadratic.clone() + &u * &phi_e + g.embed(&ext)?;
    let mut trace = StabTrace::start(f);
    trace.push(Step {
        rule: Rule::SquareCase,
        fresh: names,
        input: f.clone(),
        output: out.clone(),
        certificate: vec![Subst::Shift {
            var: n,
            by: phi_e.scale_i64(2),
        }],
        quadratic,
    });
    Ok((out, trace))
}

/// A step that only changes coordinates: `output` becomes `input` after the
/// certificate.
pub(crate) fn rename_step(rule: Rule, input: &Poly, output: Poly, certificate: Vec<Subst>) -> Step {
    Step {
        rule,
        fresh: Vec::new(),
        input: input.clone(),
        output,
        certificate,
        quadratic: Poly::zero(input.ctx(), input.field()),
    }
}

/// How the `u` variables of several basic tricks on one `phi` are combined
/// so that a single `u` multiplies `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shear {
    /// New `u_j` stands for `u_1 + ... + u_j`.
    Chain,
    /// New last `u` stands for the sum of all of them.
    Star,
}

fn check_terms(f: &Poly, phi: &Poly, terms: &[(Poly, u32)], g: &Poly) -> Result<()> {
    f.check_same_ring(phi)?;
    f.check_same_ring(g)?;
    if terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut total = g.clone();
    for (m, k) in terms {
        f.check_same_ring(m)?;
        if *k == 0 {
            return Err(Error::DegreeMismatch(
                "exponent k must be at least 1".into(),
            ));
        }
        total = total + m * &phi.pow(*k);
    }
    if &total != f {
        return Err(Error::DecompositionMismatch);
    }
    Ok(())
}

/// One basic trick per listed term, then the shear. Returns the indices of
/// the `(u, v)` pairs.
fn pair_terms(
    f: &Poly,
    phi: &Poly,
    terms: &[&(Poly, u32)],
    names: &[[String; 2]],
    shear: Shear,
    trace: &mut StabTrace,
) -> Result<(Poly, Vec<(usize, usize)>)> {
    let mut current = f.clone();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (&(m, k), [hu, hv]) in terms.iter().zip(names) {
        let m = m.embed(current.ctx())?;
        let phi_c = phi.embed(current.ctx())?;
        let rest = current.clone() - &m * &phi_c.pow(*k);
        let d = Decomposition {
            g: rest,
            m,
            phi: phi_c,
            k: *k,
        };
        let (out, t) = basic_trick_named(&current, &d, [hu, hv])?;
        let n = current.nvars();
        pairs.push((n, n + 1));
        trace.extend(t);
        current = out;
    }
    if pairs.len() < 2 {
        return Ok((current, pairs));
    }
    let ctx = current.ctx().clone();
    let var = |i: usize| Poly::var(&ctx, f.field(), i);
    let (out, cert) = match shear {
        Shear::Chain => {
            let mut out = current.clone();
            for j in 1..pairs.len() {
                out =
                    out.substitute_vars(&[(pairs[j].0, var(pairs[j].0) - var(pairs[j - 1].0))])?;
            }
            let cert = (1..pairs.len())
                .rev()
                .map(|j| Subst::Shift {
                    var: pairs[j].0,
                    by: var(pairs[j - 1].0),
                })
                .collect();
            (out, cert)
        }
        Shear::Star => {
            let last = pairs[pairs.len() - 1].0;
            let others = pairs[..pairs.len() - 1]
                .iter()
                .fold(Poly::zero(&ctx, f.field()), |acc, p| acc + var(p.0));
            let out = current.substitute_vars(&[(last, var(last) - others.clone())])?;
            (
                out,
                vec![Subst::Shift {
                    var: last,
                    by: others,
                }],
            )
        }
    };
    trace.push(rename_step(Rule::MultiTerm, &current, out.clone(), cert));
    Ok((out, pairs))
}

/// `f = g + sum m_i phi^(k_i)`. The first term with `k_i >= 2` (or the first
/// term) gets the basic trick; every other term with `k_i >= 2` gets its own
/// pair and the pairs are sheared so that only the last `u` multiplies
/// `phi`; terms with `k_i = 1` are absorbed into the last `u` by a shift.
pub fn multi_term_trick(
    f: &Poly,
    phi: &Poly,
    terms: &[(Poly, u32)],
    g: &Poly,
) -> Result<(Poly, StabTrace)> {
    check_terms(f, phi, terms, g)?;
    let primary = terms.iter().position(|(_, k)| *k >= 2).unwrap_or(0);
    let mut paired: Vec<usize> = vec![primary];
    paired.extend((0..terms.len()).filter(|&i| i != primary && terms[i].1 >= 2));
    let absorbed: Vec<usize> = (0..terms.len()).filter(|i| !paired.contains(i)).collect();

    let names: Vec<[String; 2]> = if paired.len() == 1 {
        vec![["u".into(), "v".into()]]
    } else {
        (1..=paired.len())
            .map(|i| [format!("u{i}"), format!("v{i}")])
            .collect()
    };
    let mut trace = StabTrace::start(f);
    let chosen: Vec<&(Poly, u32)> = paired.iter().map(|&i| &terms[i]).collect();
    let (mut current, pairs) = pair_terms(f, phi, &chosen, &names, Shear::Chain, &mut trace)?;
    let ctx = current.ctx().clone();
    let (u_last, v_last) = *pairs.last().unwrap();
    for &i in &absorbed {
        let m = terms[i].0.embed(&ctx)?;
        let phi_c = phi.embed(&ctx)?;
        // -u v + u phi + m phi  ->  -u v + u phi + m v  under u -> u - m
        let out = current.clone() - &m * &phi_c + &m * &Poly::var(&ctx, f.field(), v_last);
        trace.push(rename_step(
            Rule::Rename,
            &current,
            out.clone(),
            vec![Subst::Shift { var: u_last, by: m }],
        ));
        current = out;
    }
    Ok((current, trace))
}

/// Like [`multi_term_trick`], but every term gets its own pair named after
/// `names`, whatever its exponent, and the pairs are combined by `shear`.
pub fn multi_term_paired(
    f: &Poly,
    phi: &Poly,
    terms: &[(Poly, u32)],
    g: &Poly,
    names: &[[String; 2]],
    shear: Shear,
) -> Result<(Poly, StabTrace)> {
    check_terms(f, phi, terms, g)?;
    if names.len() != terms.len() {
        return Err(Error::DegreeMismatch(
            "one name pair is needed per term".into(),
        ));
    }
    let mut trace = StabTrace::start(f);
    let chosen: Vec<&(Poly, u32)> = terms.iter().collect();
    let (out, _) = pair_terms(f, phi, &chosen, names, shear, &mut trace)?;
    Ok((out, trace))
}

/// Repeatedly replaces the lexicographically largest monomial of degree at
/// least four, split as `m * phi` with `deg m = floor(deg / 2)`, by the
/// basic trick with `k = 1`, until the degree is at most three.
pub fn cubic_reduction(f: &Poly) -> Result<(Poly, StabTrace)> {
    let mut trace = StabTrace::start(f);
    let mut current = f.clone();
    let mut round = 0usize;
    while let Some((mono, coeff)) = current
        .terms()
        .filter(|(m, _)| m.degree() >= 4)
        .max_by(|a, b| a.0.cmp(b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        let (m_part, phi_part) = split_monomial(&mono);
        let ctx = current.ctx().clone();
        let field = current.field();
        let term = Poly::term(mono, coeff.clone(), &ctx, field);
        let d = Decomposition {
            g: current.clone() - term,
            m: Poly::term(m_part, coeff, &ctx, field),
            phi: Poly::term(phi_part, Coeff::one(field), &ctx, field),
            k: 1,
        };
        round += 1;
        let (out, t) =
            basic_trick_named(&current, &d, [&format!("u{round}"), &format!("v{round}")])?;
        trace.extend(t);
        current = out;
    }
    Ok((current, trace))
}

/// Splits `x^a` as `x^b * x^(a-b)` with `deg x^b = floor(deg / 2)`, taking
/// the exponents of `x^b` greedily from the first variables.
fn split_monomial(m: &Monomial) -> (Monomial, Monomial) {
    let mut need = m.degree() / 2;
    let mut b = vec![0u32; m.nvars()];
    for (i, &e) in m.exponents().iter().enumerate() {
        let take = e.min(need);
        b[i] = take;
        need -= take;
    }
    let b = Monomial::new(b);
    let rest = b.quotient_of(m);
    (b, rest)
}
