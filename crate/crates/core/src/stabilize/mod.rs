//! Stable-equivalence rewriting: each step adds fresh variables and records
//! a coordinate change that certifies the step.

mod builders;
mod tricks;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ring::{parse_poly, Coeff, Context, Field, Poly};
use crate::{Error, Result};

pub use builders::{
    cubic_one_node, cubic_three_nodes, le_yomdin, quartic_four_nodes, quintic_four_nodes,
};
pub(crate) use tricks::basic_trick_named;
pub use tricks::{
    basic_trick, cubic_reduction, multi_term_paired, multi_term_trick, square_case, Decomposition,
    Shear,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    BasicTrick,
    MultiTerm,
    SquareCase,
    Rename,
}

/// Elementary coordinate change on the output variables of a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subst {
    /// `x_var -> x_var + by`, where `by` does not involve `x_var`.
    Shift { var: usize, by: Poly },
    /// `x_var -> factor * x_var` with `factor` a nonzero constant.
    Scale { var: usize, factor: Coeff },
}

impl Subst {
    fn apply(&self, p: &Poly) -> Result<Poly> {
        let (var, image) = match self {
            Subst::Shift { var, by } => (*var, Poly::var(p.ctx(), p.field(), *var) + by.clone()),
            Subst::Scale { var, factor } => {
                (*var, Poly::var(p.ctx(), p.field(), *var).scale(factor))
            }
        };
        p.substitute_vars(&[(var, image)])
    }

    fn is_elementary(&self) -> bool {
        match self {
            Subst::Shift { var, by } => by.terms().all(|(m, _)| m.exponents()[*var] == 0),
            Subst::Scale { factor, .. } => !factor.is_zero(),
        }
    }
}

/// One rewriting step. Applying `certificate` in order to `output` must give
/// `input + quadratic`, with `quadratic` a non-degenerate quadratic form in
/// the `fresh` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub fresh: Vec<String>,
    pub input: Poly,
    pub output: Poly,
    pub certificate: Vec<Subst>,
    pub quadratic: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabTrace {
    pub input: Poly,
    pub output: Poly,
    pub steps: Vec<Step>,
}

impl StabTrace {
    pub(crate) fn start(input: &Poly) -> Self {
        StabTrace {
            input: input.clone(),
            output: input.clone(),
            steps: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, step: Step) {
        self.output = step.output.clone();
        self.steps.push(step);
    }

    pub(crate) fn extend(&mut self, other: StabTrace) {
        for s in other.steps {
            self.push(s);
        }
    }

    /// Number of fresh variables introduced by all steps.
    pub fn fresh_count(&self) -> usize {
        self.steps.iter().map(|s| s.fresh.len()).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "characteristic": self.input.field().characteristic(),
            "input": poly_json(&self.input),
            "output": poly_json(&self.output),
            "steps": self.steps.iter().map(step_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let ch = v["characteristic"]
            .as_u64()
            .ok_or_else(|| bad("missing characteristic"))?;
        let field = Field::new(ch)?;
        let input = poly_from_json(&v["input"], field)?;
        let output = poly_from_json(&v["output"], field)?;
        let steps = v["steps"]
            .as_array()
            .ok_or_else(|| bad("missing steps"))?
            .iter()
            .map(|s| step_from_json(s, field))
            .collect::<Result<Vec<_>>>()?;
        Ok(StabTrace {
            input,
            output,
            steps,
        })
    }
}

fn bad(msg: &str) -> Error {
    Error::MalformedTrace(msg.to_string())
}

fn poly_json(p: &Poly) -> serde_json::Value {
    serde_json::json!({ "vars": p.ctx().names(), "poly": p.to_string() })
}

fn poly_from_json(v: &serde_json::Value, field: Field) -> Result<Poly> {
    let vars: Vec<String> =
        serde_json::from_value(v["vars"].clone()).map_err(|e| bad(&e.to_string()))?;
    let text = v["poly"]
        .as_str()
        .ok_or_else(|| bad("missing polynomial text"))?;
    parse_poly(text, &Context::new(&vars)?, field)
}

fn step_json(s: &Step) -> serde_json::Value {
    let names = s.output.ctx().names();
    let cert: Vec<serde_json::Value> = s
        .certificate
        .iter()
        .map(|c| match c {
            Subst::Shift { var, by } => {
                serde_json::json!({ "shift": names[*var], "by": by.to_string() })
            }
            Subst::Scale { var, factor } => {
                serde_json::json!({ "scale": names[*var], "factor": factor.to_string() })
            }
        })
        .collect();
    serde_json::json!({
        "rule": s.rule,
        "fresh": s.fresh,
        "input": poly_json(&s.input),
        "output": poly_json(&s.output),
        "quadratic": s.quadratic.to_string(),
        "certificate": cert,
    })
}

fn step_from_json(v: &serde_json::Value, field: Field) -> Result<Step> {
    let rule: Rule = serde_json::from_value(v["rule"].clone()).map_err(|e| bad(&e.to_string()))?;
    let fresh: Vec<String> =
        serde_json::from_value(v["fresh"].clone()).map_err(|e| bad(&e.to_string()))?;
    let input = poly_from_json(&v["input"], field)?;
    let output = poly_from_json(&v["output"], field)?;
    let ctx = output.ctx().clone();
    let quadratic = parse_poly(
        v["quadratic"]
            .as_str()
            .ok_or_else(|| bad("missing quadratic"))?,
        &ctx,
        field,
    )?;
    let var_of = |name: &serde_json::Value| -> Result<usize> {
        let name = name
            .as_str()
            .ok_or_else(|| bad("variable name must be a string"))?;
        ctx.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    };
    let mut certificate = Vec::new();
    for c in v["certificate"]
        .as_array()
        .ok_or_else(|| bad("missing certificate"))?
    {
        if let Some(by) = c.get("by") {
            let by = parse_poly(
                by.as_str()
                    .ok_or_else(|| bad("shift must be a polynomial"))?,
                &ctx,
                field,
            )?;
            certificate.push(Subst::Shift {
                var: var_of(&c["shift"])?,
                by,
            });
        } else {
            let f = parse_poly(
                c["factor"].as_str().ok_or_else(|| bad("missing factor"))?,
                &ctx,
                field,
            )?;
            if f.total_degree().unwrap_or(0) != 0 {
                return Err(bad("scale factor must be a constant"));
            }
            certificate.push(Subst::Scale {
                var: var_of(&c["scale"])?,
                factor: f.constant_term(),
            });
        }
    }
    Ok(Step {
        rule,
        fresh,
        input,
        output,
        certificate,
        quadratic,
    })
}

/// Why a trace failed to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    /// Index of the offending step, or `None` for the trace envelope.
    pub step: Option<usize>,
    pub reason: String,
}

/// Replays every certificate and checks the chaining of steps.
pub fn verify_stable_equiv(trace: &StabTrace) -> bool {
    first_failure(trace).is_none()
}

pub fn first_failure(trace: &StabTrace) -> Option<VerifyFailure> {
    let envelope = |reason: &str| {
        Some(VerifyFailure {
            step: None,
            reason: reason.to_string(),
        })
    };
    let mut current = trace.input.clone();
    for (i, s) in trace.steps.iter().enumerate() {
        if !same_poly(&s.input, &current) {
            return Some(VerifyFailure {
                step: Some(i),
                reason: "input differs from the previous output".into(),
            });
        }
        if let Err(reason) = verify_step(s) {
            return Some(VerifyFailure {
                step: Some(i),
                reason,
            });
        }
        current = s.output.clone();
    }
    if !same_poly(&trace.output, &current) {
        return envelope("output differs from the last step");
    }
    None
}

fn same_poly(a: &Poly, b: &Poly) -> bool {
    a.ctx().names() == b.ctx().names()
        && a.field() == b.field()
        && a.embed(b.ctx()).is_ok_and(|x| &x == b)
}

fn verify_step(s: &Step) -> std::result::Result<(), String> {
    let out_ctx: &Arc<Context> = s.output.ctx();
    let in_names = s.input.ctx().names();
    let expected_fresh: Vec<&String> = out_ctx
        .names()
        .iter()
        .filter(|n| !in_names.contains(n))
        .collect();
    if out_ctx.len() != in_names.len() + s.fresh.len()
        || expected_fresh.len() != s.fresh.len()
        || expected_fresh.iter().zip(&s.fresh).any(|(a, b)| *a != b)
    {
        return Err("fresh variables do not extend the input context".into());
    }
    if !s.quadratic.same_ring(&s.output) {
        return Err("quadratic form lives in another ring".into());
    }
    let fresh_idx: Vec<usize> = s
        .fresh
        .iter()
        .map(|n| out_ctx.index_of(n).unwrap())
        .collect();
    if s.quadratic
        .terms()
        .any(|(m, _)| m.degree() != 2 || m.support().any(|i| !fresh_idx.contains(&i)))
    {
        return Err("quadratic part is not a form in the fresh variables".into());
    }
    if hessian_rank(&s.quadratic, &fresh_idx) != fresh_idx.len() {
        return Err("quadratic form is degenerate".into());
    }
    let mut p = s.output.clone();
    for c in &s.certificate {
        let by_ok = match c {
            Subst::Shift { by, .. } => by.same_ring(&s.output),
            Subst::Scale { factor, .. } => factor.field() == s.output.field(),
        };
        if !by_ok || !c.is_elementary() {
            return Err("certificate is not an elementary coordinate change".into());
        }
        p = c.apply(&p).map_err(|e| e.to_string())?;
    }
    let input = s.input.embed(out_ctx).map_err(|e| e.to_string())?;
    if p != input + s.quadratic.clone() {
        return Err("replayed output differs from input plus quadratic form".into());
    }
    Ok(())
}

/// Rank of the Hessian of the degree-two part of `p` restricted to `vars`.
pub fn hessian_rank(p: &Poly, vars: &[usize]) -> usize {
    let field = p.field();
    let k = vars.len();
    let mut h = vec![vec![Coeff::zero(field); k]; k];
    for (m, c) in p.terms().filter(|(m, _)| m.degree() == 2) {
        let e = m.exponents();
        let pos: Vec<usize> = vars
            .iter()
            .enumerate()
            .filter(|(_, &v)| e[v] > 0)
            .map(|(i, _)| i)
            .collect();
        match pos.as_slice() {
            [a] if e[vars[*a]] == 2 => h[*a][*a] = h[*a][*a].add(&c.add(c)),
            [a, b] => {
                h[*a][*b] = h[*a][*b].add(c);
                h[*b][*a] = h[*b][*a].add(c);
            }
            _ => {}
        }
    }
    rank(h)
}

fn rank(mut m: Vec<Vec<Coeff>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].mul(&inv);
                for j in c..cols {
                    let v = m[i][j].sub(&f.mul(&m[r][j]));
                    m[i][j] = v;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests;
