//! Numerical semigroups of plane branches, their monomial curves, plane
//! equations obtained by elimination, and stabilized forms of those
//! equations.

mod branch;

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::ring::{Context, Field, Monomial, Poly};
use crate::Result;

pub use branch::{branch_evidence, stabilize_branch_g4, stabilize_simple_branch, BranchEvidence};

/// Why a generator list is not the semigroup of a plane branch, or why an
/// extension is refused. Indices refer to generator positions.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Rejection {
    #[error("a plane branch semigroup needs at least two generators")]
    TooFewGenerators,
    #[error("generator {index} is not positive")]
    NonPositive { index: usize },
    #[error("the first generator must be the smallest")]
    MultiplicityNotSmallest,
    #[error("gcd of all generators is {gcd}, not 1")]
    GcdNotOne { gcd: u64 },
    #[error("generator {index} does not lower the gcd")]
    GcdNotDropping { index: usize },
    #[error(
        "n_{index} * b_{index} = {product} is not in the semigroup of the previous generators"
    )]
    NotInPrevious { index: usize, product: u64 },
    #[error("n_{index} * b_{index} = {product} is not below the next generator {next}")]
    NotBelowNext {
        index: usize,
        product: u64,
        next: u64,
    },
    #[error("no decomposition of n_{index} * b_{index} with 0 <= l_j < n_j")]
    NoNormalizedDecomposition { index: usize },
    #[error("extension needs l_j = 0 for j >= 2 in the base semigroup")]
    BaseNotSimple,
    #[error("extension factor must be at least 2")]
    FactorTooSmall,
    #[error("gcd({factor}, {beta}) must be 1")]
    ExtensionGcd { factor: u64, beta: u64 },
    #[error("new generator {beta} must exceed {bound}")]
    ExtensionBound { beta: u64, bound: u64 },
    #[error("new generator {beta} must lie in the semigroup of the first two generators")]
    ExtensionMembership { beta: u64 },
    #[error("extended semigroup is invalid: {cause}")]
    ExtensionInvalid {
        #[serde(serialize_with = "as_text")]
        cause: Box<Rejection>,
    },
}

fn as_text<S: serde::Serializer>(r: &Rejection, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A validated plane branch semigroup `<b_0, ..., b_g>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Semigroup {
    pub gens: Vec<u64>,
    /// `e_i = gcd(b_0, ..., b_i)` for `i = 0..=g`.
    pub e: Vec<u64>,
    /// `n_i = e_(i-1) / e_i` for `i = 1..=g`, stored at position `i - 1`.
    pub n: Vec<u64>,
    /// Row `i - 1` holds `l_0, ..., l_(i-1)` with `n_i b_i = sum l_j b_j`
    /// and `0 <= l_j < n_j` for `j >= 1`.
    pub l: Vec<Vec<u64>>,
    /// Per row, the number of decompositions without the bounds on `l_j`.
    pub unnormalized_counts: Vec<u64>,
    /// Rows `i` with more than one bounded decomposition.
    pub ambiguous_rows: Vec<usize>,
}

/// Characteristic exponents and pairs derived from a semigroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuiseuxData {
    /// `(beta_0; beta_1, ..., beta_g)`.
    pub characteristic: Vec<u64>,
    /// `(m_i, n_i)` for `i = 1..=g`.
    pub pairs: Vec<(u64, u64)>,
}

impl PuiseuxData {
    /// Exponents strictly increase, `e_i m_i = beta_i` and every pair is
    /// coprime.
    pub fn is_consistent(&self, s: &Semigroup) -> bool {
        let b = &self.characteristic;
        b.windows(2).all(|w| w[0] < w[1])
            && self.pairs.iter().enumerate().all(|(k, &(m, n))| {
                let i = k + 1;
                s.e[i] * m == b[i] && m.gcd(&n) == 1 && n == s.n[k]
            })
    }
}

/// Whether `x` is a non-negative integer combination of `gens`.
pub fn in_semigroup(x: u64, gens: &[u64]) -> bool {
    let x = x as usize;
    let mut reach = vec![false; x + 1];
    reach[0] = true;
    for v in 1..=x {
        reach[v] = gens
            .iter()
            .any(|&g| g as usize <= v && g > 0 && reach[v - g as usize]);
    }
    reach[x]
}

/// Number of ways to write `x` as a non-negative combination of `gens`
/// (ordered by generator).
fn count_decompositions(x: u64, gens: &[u64]) -> u64 {
    let x = x as usize;
    let mut ways = vec![0u64; x + 1];
    ways[0] = 1;
    for &g in gens {
        for v in g as usize..=x {
            ways[v] = ways[v].saturating_add(ways[v - g as usize]);
        }
    }
    ways[x]
}

/// All `(l_0, ..., l_(i-1))` with `sum l_j b_j = target`, `l_0 >= 0` and
/// `0 <= l_j < n_j` for `j >= 1`.
fn normalized_decompositions(target: u64, gens: &[u64], n: &[u64]) -> Vec<Vec<u64>> {
    fn go(
        j: usize,
        rest: u64,
        gens: &[u64],
        n: &[u64],
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if j == 0 {
            if rest.is_multiple_of(gens[0]) {
                cur[0] = rest / gens[0];
                out.push(cur.clone());
            }
            return;
        }
        for l in 0..n[j - 1] {
            let used = l * gens[j];
            if used > rest {
                break;
            }
            cur[j] = l;
            go(j - 1, rest - used, gens, n, cur, out);
        }
        cur[j] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; gens.len()];
    go(gens.len() - 1, target, gens, n, &mut cur, &mut out);
    out
}

/// Checks the plane branch conditions and solves for the `l_j^(i)`.
pub fn validate_semigroup(gens: &[u64]) -> std::result::Result<Semigroup, Rejection> {
    if gens.len() < 2 {
        return Err(Rejection::TooFewGenerators);
    }
    if let Some(index) = gens.iter().position(|&b| b == 0) {
        return Err(Rejection::NonPositive { index });
    }
    if gens[0] >= gens[1] {
        return Err(Rejection::MultiplicityNotSmallest);
    }
    let mut e = vec![gens[0]];
    for &b in &gens[1..] {
        e.push(e.last().unwrap().gcd(&b));
    }
    let last = *e.last().unwrap();
    if last != 1 {
        return Err(Rejection::GcdNotOne { gcd: last });
    }
    let g = gens.len() - 1;
    let mut n = Vec::with_capacity(g);
    for i in 1..=g {
        if e[i] == e[i - 1] {
            return Err(Rejection::GcdNotDropping { index: i });
        }
        n.push(e[i - 1] / e[i]);
    }
    let mut l = Vec::with_capacity(g);
    let mut unnormalized_counts = Vec::with_capacity(g);
    let mut ambiguous_rows = Vec::new();
    for i in 1..=g {
        let product = n[i - 1] * gens[i];
        if !in_semigroup(product, &gens[..i]) {
            return Err(Rejection::NotInPrevious { index: i, product });
        }
        if i < g && product >= gens[i + 1] {
            return Err(Rejection::NotBelowNext {
                index: i,
                product,
                next: gens[i + 1],
            });
        }
        let sols = normalized_decompositions(product, &gens[..i], &n);
        let Some(first) = sols.first() else {
            return Err(Rejection::NoNormalizedDecomposition { index: i });
        };
        if sols.len() > 1 {
            ambiguous_rows.push(i);
        }
        l.push(first.clone());
        unnormalized_counts.push(count_decompositions(product, &gens[..i]));
    }
    Ok(Semigroup {
        gens: gens.to_vec(),
        e,
        n,
        l,
        unnormalized_counts,
        ambiguous_rows,
    })
}

impl Semigroup {
    /// Number of characteristic exponents.
    pub fn genus(&self) -> usize {
        self.gens.len() - 1
    }

    /// `n_i` for `i = 1..=g`.
    pub fn n_at(&self, i: usize) -> u64 {
        self.n[i - 1]
    }

    /// `l_j^(i)`, zero when `j >= i`.
    pub fn l_at(&self, i: usize, j: usize) -> u64 {
        self.l[i - 1].get(j).copied().unwrap_or(0)
    }

    /// Whether `l_j^(i) = 0` for all `j >= 2`.
    pub fn is_simple(&self) -> bool {
        self.l.iter().all(|row| row.iter().skip(2).all(|&x| x == 0))
    }

    /// `sum (n_i - 1) b_i - b_0 + 1`, the Milnor number of the branch.
    pub fn conductor(&self) -> u64 {
        let s: u64 = (1..=self.genus())
            .map(|i| (self.n_at(i) - 1) * self.gens[i])
            .sum();
        s + 1 - self.gens[0]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("semigroup serializes")
    }
}

/// Characteristic `(beta_0; beta_1, ..., beta_g)` from
/// `beta_i - beta_(i-1) = b_i - n_(i-1) b_(i-1)`, and pairs from
/// `beta_i = m_i e_i`.
pub fn puiseux_characteristic(s: &Semigroup) -> PuiseuxData {
    let b = &s.gens;
    let mut beta = vec![b[0], b[1]];
    for i in 2..=s.genus() {
        let prev = beta[i - 1];
        beta.push(prev + b[i] - s.n_at(i - 1) * b[i - 1]);
    }
    let pairs = (1..=s.genus())
        .map(|i| (beta[i] / s.e[i], s.n_at(i)))
        .collect();
    PuiseuxData {
        characteristic: beta,
        pairs,
    }
}

fn u_context(count: usize) -> Arc<Context> {
    let names: Vec<String> = (0..count).map(|i| format!("u{i}")).collect();
    Context::new(&names).expect("distinct names")
}

fn monomial(ctx: &Arc<Context>, exps: &[(usize, u64)]) -> Poly {
    let mut e = vec![0u32; ctx.len()];
    for &(i, x) in exps {
        e[i] += u32::try_from(x).expect("exponent fits in u32");
    }
    Poly::term(
        Monomial::new(e),
        crate::ring::Coeff::one(Field::RATIONALS),
        ctx,
        Field::RATIONALS,
    )
}

/// `f_i = u_i^(n_i) - u_0^(l_0^(i)) ... u_(i-1)^(l_(i-1)^(i))` over the
/// rationals in `u_0, ..., u_g`.
pub fn monomial_curve_equations(s: &Semigroup) -> Vec<Poly> {
    let ctx = u_context(s.gens.len());
    (1..=s.genus())
        .map(|i| {
            let rhs: Vec<(usize, u64)> = (0..i).map(|j| (j, s.l_at(i, j))).collect();
            monomial(&ctx, &[(i, s.n_at(i))]) - monomial(&ctx, &rhs)
        })
        .collect()
}

/// Eliminates `u_2, ..., u_g` from `f_i + sign * u_(i+1) = 0`.
fn eliminate(s: &Semigroup, sign: i64) -> Poly {
    let eqs = monomial_curve_equations(s);
    let plane = u_context(2);
    let field = Field::RATIONALS;
    let mut images = vec![Poly::var(&plane, field, 0), Poly::var(&plane, field, 1)];
    images.resize(s.gens.len(), Poly::zero(&plane, field));
    for (k, f) in eqs.iter().enumerate() {
        let val = f.substitute(&images).expect("images share the plane ring");
        if k + 1 == eqs.len() {
            return val;
        }
        images[k + 2] = val.scale_i64(-sign);
    }
    unreachable!("a semigroup has at least one equation")
}

/// The plane equation of the deformation `f_i + u_(i+1)`, obtained by
/// back-substituting `u_(i+1) = -f_i`.
pub fn plane_curve_from_semigroup(s: &Semigroup) -> Poly {
    eliminate(s, 1)
}

/// The plane equation of `f_i - u_(i+1)`, i.e. `u_(i+1) = f_i`. For
/// `l_j^(i) = 0` with `j >= 2` this is the nested form
/// `(...((u_1^n_1 - u_0^a)^n_2 - M_2)^n_3 ... )^n_g - M_g`.
pub fn nested_plane_curve(s: &Semigroup) -> Poly {
    eliminate(s, -1)
}

/// Builds `<n b_0, ..., n b_(g-1), beta>` from a semigroup with
/// `l_j^(i) = 0` for `j >= 2`.
pub fn special_semigroup_extend(
    s: &Semigroup,
    factor: u64,
    beta: u64,
) -> std::result::Result<Semigroup, Rejection> {
    if !s.is_simple() {
        return Err(Rejection::BaseNotSimple);
    }
    if factor < 2 {
        return Err(Rejection::FactorTooSmall);
    }
    if factor.gcd(&beta) != 1 {
        return Err(Rejection::ExtensionGcd { factor, beta });
    }
    let g = s.genus();
    let bound = s.n_at(g) * factor * s.gens[g];
    if beta <= bound {
        return Err(Rejection::ExtensionBound { beta, bound });
    }
    if !in_semigroup(beta, &s.gens[..2]) {
        return Err(Rejection::ExtensionMembership { beta });
    }
    let mut gens: Vec<u64> = s.gens.iter().map(|&b| factor * b).collect();
    gens.push(beta);
    let out = validate_semigroup(&gens)
        .map_err(|r| Rejection::ExtensionInvalid { cause: Box::new(r) })?;
    debug_assert!(out.is_simple());
    Ok(out)
}

/// Parses `4,6,13`.
pub fn parse_gens(text: &str) -> Result<Vec<u64>> {
    let mut pos = 0;
    text.split(',')
        .map(|t| {
            let at = pos;
            pos += t.len() + 1;
            t.trim().parse::<u64>().map_err(|_| crate::Error::Syntax {
                pos: at,
                msg: format!("bad generator `{}`", t.trim()),
            })
        })
        .collect()
}
