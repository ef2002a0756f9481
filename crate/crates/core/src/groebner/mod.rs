//! Gröbner bases for global orders and standard bases for local orders.

mod engine;
mod order;
mod spoly;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ring::{Coeff, Context, Field, Monomial, Poly};
use crate::{Error, Result};

use engine::Mode;
pub use order::{OrderKind, TermOrder};
use spoly::SortedPoly;

/// Dimension of a quotient ring, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Dim::Infinite
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "infinite"),
        }
    }
}

/// A Gröbner basis (global order) or standard basis (local order).
#[derive(Clone, Debug)]
pub struct GBasis {
    ctx: Arc<Context>,
    field: Field,
    order: TermOrder,
    reduced: bool,
    elems: Vec<SortedPoly>,
    ecarts: Vec<u32>,
    input: Vec<SortedPoly>,
}

impl GBasis {
    pub fn generators(&self) -> Vec<Poly> {
        self.elems
            .iter()
            .map(|g| g.to_poly(&self.ctx, self.field))
            .collect()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|g| g.lm().clone()).collect()
    }

    /// True iff the ideal is the whole ring (of polynomials, or of germs for
    /// local orders).
    pub fn is_unit_ideal(&self) -> bool {
        self.elems.iter().any(|g| g.lm().is_one())
    }

    /// Normal form for global orders; for local orders a weak normal form,
    /// which is zero exactly for members of the localized ideal.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.check(f)?;
        let sf = SortedPoly::from_poly(f, &self.order);
        let r = if self.order.is_local() {
            engine::mora_reduce(&sf, &self.elems, &self.ecarts, &self.order)
        } else {
            engine::full_reduce(
                &sf,
                &self.elems.iter().collect::<Vec<_>>(),
                &self.order,
                None,
            )
        };
        Ok(r.to_poly(&self.ctx, self.field))
    }

    /// Ideal membership. For local orders this compares leading ideals of
    /// the ideal with and without `f`, which avoids long weak-normal-form
    /// reductions on ideals of positive dimension.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        self.check(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if !self.order.is_local() {
            return Ok(self.normal_form(f)?.is_zero());
        }
        if self.is_unit_ideal() {
            return Ok(true);
        }
        let mut gens = self.input.clone();
        gens.push(SortedPoly::from_poly(f, &self.order));
        let run = engine::lazard(&gens, &self.order, true);
        let lms = self.leading_monomials();
        Ok(!run.unit
            && run
                .basis
                .iter()
                .all(|g| lms.iter().any(|m| m.divides(g.lm()))))
    }

    /// Number of monomials outside the leading ideal.
    pub fn quotient_dim(&self) -> Dim {
        staircase_size(&self.leading_monomials(), self.ctx.len())
    }

    /// Checks the Buchberger criterion: every S-polynomial has (weak) normal
    /// form zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let s = spoly::s_poly(&self.elems[i], &self.elems[j], &self.order, None);
                let r = if self.order.is_local() {
                    engine::mora_reduce(&s, &self.elems, &self.ecarts, &self.order)
                } else {
                    engine::full_reduce(
                        &s,
                        &self.elems.iter().collect::<Vec<_>>(),
                        &self.order,
                        None,
                    )
                };
                if !r.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if !Arc::ptr_eq(f.ctx(), &self.ctx) && f.ctx().names() != self.ctx.names()
            || f.field() != self.field
        {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

fn common_ring(gens: &[Poly]) -> Result<(Arc<Context>, Field)> {
    let first = gens.first().ok_or(Error::EmptyInput)?;
    for g in &gens[1..] {
        first.check_same_ring(g)?;
    }
    Ok((first.ctx().clone(), first.field()))
}

fn build(gens: &[Poly], order: &TermOrder, mode: Mode, stop_on_unit: bool) -> Result<GBasis> {
    let (ctx, field) = common_ring(gens)?;
    if let Some(w) = &order.weights {
        if w.len() != ctx.len() {
            return Err(Error::BadWeights);
        }
    }
    let sorted: Vec<SortedPoly> = gens
        .iter()
        .map(|g| SortedPoly::from_poly(g, order))
        .collect();
    let run = if order.is_local() && mode == Mode::Global {
        engine::lazard(&sorted, order, stop_on_unit)
    } else {
        engine::complete(&sorted, order, mode, stop_on_unit)
    };
    let (elems, reduced) = if run.unit {
        let one = SortedPoly {
            terms: vec![(Monomial::one(ctx.len()), Coeff::one(field))],
        };
        (vec![one], true)
    } else if order.is_local() {
        (engine::minimalize(run.basis), false)
    } else {
        (engine::interreduce(run.basis, order), true)
    };
    let ecarts = elems.iter().map(|g| g.ecart()).collect();
    Ok(GBasis {
        ctx,
        field,
        order: order.clone(),
        reduced,
        elems,
        ecarts,
        input: sorted,
    })
}

/// Gröbner basis (global order, reduced) or standard basis in the
/// localization at the origin (local order).
pub fn gbasis(gens: &[Poly], order: &TermOrder) -> Result<GBasis> {
    build(gens, order, Mode::Global, false)
}

pub fn ideal_membership(f: &Poly, basis: &GBasis) -> Result<bool> {
    basis.contains(f)
}

/// Pairwise products `g_i * h_j`, zero products dropped.
pub fn ideal_product(i: &[Poly], j: &[Poly]) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for a in i {
        for b in j {
            let p = a.checked_mul(b)?;
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Decides whether `gens` have a common zero over the algebraic closure with
/// `x_i != 0` for every `i` in `nonvanishing` and `x_j = 0` for the others.
pub fn has_torus_zero(gens: &[Poly], nonvanishing: &[usize]) -> Result<bool> {
    let (ctx, field) = common_ring(gens)?;
    let n = ctx.len();
    if nonvanishing.iter().any(|&i| i >= n) {
        return Err(Error::UnknownVariable(format!(
            "index {}",
            nonvanishing.iter().max().unwrap()
        )));
    }
    let zeroed: Vec<usize> = (0..n).filter(|i| !nonvanishing.contains(i)).collect();
    let tname = ctx.fresh_names(&["t"]);
    let ext = ctx.extended(&tname)?;
    let mut system: Vec<Poly> = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        let h = g.set_zero(&zeroed).embed(&ext)?;
        if h.is_zero() {
            continue;
        }
        if h.total_degree() == Some(0) {
            return Ok(false);
        }
        system.push(h);
    }
    let mut rel = Poly::var(&ext, field, n);
    for &i in nonvanishing {
        rel = rel * Poly::var(&ext, field, i);
    }
    system.push(rel - Poly::one(&ext, field));
    let b = build(&system, &TermOrder::deg_lex(), Mode::Global, true)?;
    Ok(!b.is_unit_ideal())
}

/// Counts monomials in `n` variables divisible by none of `lms`.
pub fn staircase_size(lms: &[Monomial], n: usize) -> Dim {
    if lms.iter().any(|m| m.is_one()) {
        return Dim::Finite(0);
    }
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let pure = lms
            .iter()
            .filter(|m| m.exponents()[i] > 0 && m.support().count() == 1)
            .map(|m| m.exponents()[i])
            .min();
        match pure {
            Some(a) => bounds.push(a),
            None => return Dim::Infinite,
        }
    }
    let all: Vec<&Monomial> = lms.iter().collect();
    let mut e = vec![0u32; n];
    Dim::Finite(count_standard(0, &all, &bounds, &mut e))
}

fn count_standard(level: usize, live: &[&Monomial], bounds: &[u32], e: &mut Vec<u32>) -> u64 {
    let n = bounds.len();
    if live.is_empty() {
        return bounds[level..].iter().map(|&b| b as u64).product();
    }
    if level == n {
        return 0;
    }
    let mut total = 0;
    for v in 0..bounds[level] {
        e[level] = v;
        let next: Vec<&Monomial> = live
            .iter()
            .copied()
            .filter(|m| m.exponents()[level] <= v)
            .collect();
        total += count_standard(level + 1, &next, bounds, e);
    }
    total
}

/// Outcome of a Samuel multiplicity computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub value: u64,
    pub trials: u32,
    pub hits: u32,
}

/// Samuel multiplicity of an ideal primary to the maximal ideal at the
/// origin: the minimal local colength of `n` random combinations of the
/// generators over `trials` seeded draws.
pub fn samuel_multiplicity(gens: &[Poly], trials: u32, seed: u64) -> Result<Multiplicity> {
    let (ctx, field) = common_ring(gens)?;
    let n = ctx.len();
    if local_colength(gens)?.0.is_infinite() {
        return Err(Error::InfiniteColength);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<u64> = None;
    let mut hits = 0;
    for _ in 0..trials.max(1) {
        let mut combos = Vec::with_capacity(n);
        for _ in 0..n {
            let mut c = Poly::zero(&ctx, field);
            for g in gens {
                let r = if field.is_rational() {
                    rng.gen_range(1..=101)
                } else {
                    rng.gen_range(0..field.characteristic()) as i64
                };
                c = c + g.scale_i64(r);
            }
            combos.push(c);
        }
        let d = match local_colength(&combos)?.0 {
            Dim::Finite(d) => d,
            Dim::Infinite => continue,
        };
        match best {
            Some(b) if d > b => {}
            Some(b) if d == b => hits += 1,
            _ => {
                best = Some(d);
                hits = 1;
            }
        }
    }
    let value = best.ok_or(Error::InfiniteColength)?;
    Ok(Multiplicity {
        value,
        trials: trials.max(1),
        hits,
    })
}

/// Local standard basis computed in the truncated ring `k[x]/m^(cap+1)`.
pub(crate) fn truncated_local_basis(gens: &[Poly], cap: u32) -> Result<Vec<Monomial>> {
    let order = TermOrder::local();
    let b = build(gens, &order, Mode::Truncated(cap), false)?;
    Ok(b.leading_monomials())
}

/// Largest truncation order tried by [`local_colength`] before it falls back
/// to a full standard basis.
const TRUNCATION_LIMIT: u32 = 64;

/// Colength of an ideal in the local ring at the origin, with the minimal
/// generators of the leading ideal that certify it.
///
/// Generators `c x_i + h` with `h` free of `x_i` are first used to
/// eliminate `x_i`. Standard bases of `I + m^(N+1)` are then tried for
/// `N = 4, 8, 16, 24, ...`. Once every monomial of degree `N` is a leading
/// monomial, `m^N` lies in the localized ideal and the standard monomials
/// below degree `N` give the colength. Otherwise a full standard basis
/// decides, including the infinite case.
pub fn local_colength(gens: &[Poly]) -> Result<(Dim, Vec<Monomial>)> {
    let (ctx, field) = common_ring(gens)?;
    let n = ctx.len();
    let (rest, gone) = eliminate_linear(gens)?;
    if gone.is_empty() {
        return colength_core(gens);
    }
    let mut lms: Vec<Monomial> = gone.iter().map(|&i| Monomial::var(n, i, 1)).collect();
    let keep: Vec<usize> = (0..n).filter(|i| !gone.contains(i)).collect();
    let rest: Vec<Poly> = rest.into_iter().filter(|p| !p.is_zero()).collect();
    if rest.iter().any(|p| !p.constant_term().is_zero()) {
        return Ok((Dim::Finite(0), vec![Monomial::one(n)]));
    }
    if keep.is_empty() {
        return Ok((Dim::Finite(1), lms));
    }
    if rest.is_empty() {
        return Ok((Dim::Infinite, lms));
    }
    let names: Vec<&str> = keep.iter().map(|&i| ctx.name(i)).collect();
    let sub = Context::new(&names)?;
    let mut images = vec![Poly::zero(&sub, field); n];
    for (j, &i) in keep.iter().enumerate() {
        images[i] = Poly::var(&sub, field, j);
    }
    let rest = rest
        .iter()
        .map(|p| p.substitute(&images))
        .collect::<Result<Vec<_>>>()?;
    let (dim, sub_lms) = colength_core(&rest)?;
    for m in sub_lms {
        let mut e = vec![0u32; n];
        for (j, &i) in keep.iter().enumerate() {
            e[i] = m.exponents()[j];
        }
        lms.push(Monomial::new(e));
    }
    Ok((dim, minimal_monomials(lms)))
}

/// Repeatedly removes a generator `c x_i + h` with `h` free of `x_i` and
/// `h(0) = 0`, substituting `x_i = -h / c` in the others. Locally the
/// quotient is unchanged. Returns the remaining generators and the indices
/// of the eliminated variables.
fn eliminate_linear(gens: &[Poly]) -> Result<(Vec<Poly>, Vec<usize>)> {
    let mut rest: Vec<Poly> = gens.to_vec();
    let mut gone = Vec::new();
    loop {
        let found = rest.iter().enumerate().find_map(|(k, g)| {
            if !g.constant_term().is_zero() {
                return None;
            }
            g.terms()
                .filter(|(m, _)| m.degree() == 1)
                .map(|(m, c)| (m.support().next().unwrap(), c.clone()))
                .find(|(i, _)| g.terms().filter(|(m, _)| m.exponents()[*i] > 0).count() == 1)
                .map(|(i, c)| (k, i, c))
        });
        let Some((k, i, c)) = found else { break };
        let g = rest.swap_remove(k);
        let x = Poly::var(g.ctx(), g.field(), i);
        let inv = c.inv().ok_or(Error::DivisionByZero)?;
        let h = (g - x.scale(&c)).scale(&inv.neg());
        rest = rest
            .iter()
            .map(|p| p.substitute_vars(&[(i, h.clone())]))
            .collect::<Result<_>>()?;
        gone.push(i);
    }
    gone.sort_unstable();
    Ok((rest, gone))
}

fn colength_core(gens: &[Poly]) -> Result<(Dim, Vec<Monomial>)> {
    let (ctx, _) = common_ring(gens)?;
    let n = ctx.len();
    let mut cap = 4;
    while cap <= TRUNCATION_LIMIT {
        let lms = minimal_monomials(truncated_local_basis(gens, cap)?);
        let mut next = if cap < 16 { cap * 2 } else { cap + 8 };
        if let Some((count, top)) = standard_monomial_stats(&lms, n) {
            if top < cap {
                return Ok((Dim::Finite(count), lms));
            }
            next = next.max(top + 1);
        }
        cap = next;
    }
    let b = gbasis(gens, &TermOrder::local())?;
    Ok((b.quotient_dim(), minimal_monomials(b.leading_monomials())))
}

fn minimal_monomials(mut lms: Vec<Monomial>) -> Vec<Monomial> {
    lms.sort();
    lms.dedup();
    let keep: Vec<Monomial> = lms
        .iter()
        .filter(|m| !lms.iter().any(|d| d != *m && d.divides(m)))
        .cloned()
        .collect();
    keep
}

/// Number and largest degree of the monomials divisible by none of `lms`,
/// or `None` when there are infinitely many.
fn standard_monomial_stats(lms: &[Monomial], n: usize) -> Option<(u64, u32)> {
    if lms.iter().any(|m| m.is_one()) {
        return Some((0, 0));
    }
    let mut bounds = Vec::with_capacity(n);
    for i in 0..n {
        let pure = lms
            .iter()
            .filter(|m| m.support().eq([i]))
            .map(|m| m.exponents()[i])
            .min()?;
        bounds.push(pure);
    }
    let mut e = vec![0u32; n];
    let mut stats = (0u64, 0u32);
    walk_standard(0, lms, &bounds, &mut e, &mut stats);
    Some(stats)
}

fn walk_standard(
    level: usize,
    lms: &[Monomial],
    bounds: &[u32],
    e: &mut Vec<u32>,
    stats: &mut (u64, u32),
) {
    if level == bounds.len() {
        let m = Monomial::new(e.clone());
        if !lms.iter().any(|d| d.divides(&m)) {
            stats.0 += 1;
            stats.1 = stats.1.max(m.degree());
        }
        return;
    }
    for v in 0..bounds[level] {
        e[level] = v;
        // once a prefix is divisible, so is every extension
        let prefix = Monomial::new(e.clone());
        if lms.iter().any(|d| d.divides(&prefix)) {
            break;
        }
        walk_standard(level + 1, lms, bounds, e, stats);
    }
    e[level] = 0;
}
