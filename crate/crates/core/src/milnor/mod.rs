//! Milnor numbers through local standard bases, an independent truncation
//! oracle, and comparison with the Newton number.

mod truncation;

use num_rational::BigRational;
use serde::Serialize;

use crate::diagram::{fmt_rat, newton_diagram};
use crate::groebner::{local_colength, Dim};
use crate::ndeg::is_nondegenerate;
use crate::ring::{Coeff, Poly};
use crate::{Error, Result};

/// Default bound on the truncation order of the oracle.
pub const DEFAULT_TRUNCATION_CAP: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuMethod {
    StandardBasis,
    TruncationOracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuResult {
    pub mu: Dim,
    pub method: MuMethod,
    /// Minimal generators of the leading ideal of the Jacobian ideal.
    pub leading_ideal: Vec<Poly>,
    /// Order `N` at which the truncation oracle stabilized.
    pub certified_at: Option<u32>,
}

impl MuResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mu": self.mu.to_string(),
            "method": self.method,
            "certificate": {
                "leading_ideal": self.leading_ideal.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "certified_at": self.certified_at,
            },
        })
    }
}

fn check_input(f: &Poly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::ConstantTerm);
    }
    Ok(())
}

fn jacobian(f: &Poly) -> Vec<Poly> {
    f.gradient().into_iter().filter(|g| !g.is_zero()).collect()
}

/// `dim k[[x]]/(df/dx)` from a local standard basis of the Jacobian ideal.
pub fn milnor_number(f: &Poly) -> Result<MuResult> {
    check_input(f)?;
    let j = jacobian(f);
    if j.is_empty() {
        return Ok(MuResult {
            mu: Dim::Infinite,
            method: MuMethod::StandardBasis,
            leading_ideal: Vec::new(),
            certified_at: None,
        });
    }
    let (mu, lms) = local_colength(&j)?;
    let one = Coeff::one(f.field());
    let leading_ideal = lms
        .into_iter()
        .map(|m| Poly::term(m, one.clone(), f.ctx(), f.field()))
        .collect();
    Ok(MuResult {
        mu,
        method: MuMethod::StandardBasis,
        leading_ideal,
        certified_at: None,
    })
}

/// Computes `dim k[x]/(J + m^N)` for `N = start_order, start_order + 1, ...`
/// and returns the value once `m^N` lies in `J + m^(N+1)`, which makes it
/// the Milnor number. Fails with [`Error::TruncationCapExceeded`] when no
/// `N <= cap` certifies.
pub fn truncation_oracle_mu(f: &Poly, start_order: u32, cap: u32) -> Result<MuResult> {
    check_input(f)?;
    let j = jacobian(f);
    let n = f.nvars();
    let mut prev: Option<(u32, u64)> = None;
    for bound in start_order.max(1)..=cap.saturating_add(1) {
        let d = truncation::truncated_colength(&j, n, bound);
        if let Some((nprev, dprev)) = prev {
            if dprev == d {
                return Ok(MuResult {
                    mu: Dim::Finite(d),
                    method: MuMethod::TruncationOracle,
                    leading_ideal: Vec::new(),
                    certified_at: Some(nprev),
                });
            }
        }
        prev = Some((bound, d));
    }
    Err(Error::TruncationCapExceeded(cap))
}

/// Milnor and Newton numbers side by side with the face test verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuNuReport {
    pub mu: Dim,
    pub nu: BigRational,
    pub convenient: bool,
    pub nondegenerate: bool,
    /// `mu >= nu` for convenient `f`, with equality when also non-degenerate.
    pub consistent: bool,
    /// `mu = nu` although `f` is degenerate: equality does not imply
    /// non-degeneracy.
    pub equality_without_nondegeneracy: bool,
}

impl MuNuReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mu": self.mu.to_string(),
            "nu": fmt_rat(&self.nu),
            "convenient": self.convenient,
            "nondegenerate": self.nondegenerate,
            "consistent": self.consistent,
            "equality_without_nondegeneracy": self.equality_without_nondegeneracy,
        })
    }
}

fn dim_as_rational(d: Dim) -> Option<BigRational> {
    d.finite().map(|v| BigRational::from_integer(v.into()))
}

pub fn mu_nu_report(f: &Poly) -> Result<MuNuReport> {
    let mu = milnor_number(f)?.mu;
    let d = newton_diagram(f)?;
    let nu = d.newton_number();
    let convenient = d.is_convenient();
    let nondegenerate = is_nondegenerate(f)?.verdict;
    let mu_q = dim_as_rational(mu);
    let equal = mu_q.as_ref() == Some(&nu);
    let at_least = mu_q.as_ref().is_none_or(|m| m >= &nu);
    let consistent = (!convenient || at_least) && (!(convenient && nondegenerate) || equal);
    Ok(MuNuReport {
        mu,
        nu,
        convenient,
        nondegenerate,
        consistent,
        equality_without_nondegeneracy: equal && !nondegenerate,
    })
}

#[cfg(test)]
mod tests;
