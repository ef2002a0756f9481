use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::coeff::Coeff;
use super::context::Context;
use super::field::Field;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Exact multivariate polynomial over a named variable context.
///
/// Zero coefficients are never stored. Arithmetic operators panic when the
/// operands live in different contexts or fields; the `checked_*` methods
/// report that as [`Error::ContextMismatch`] instead.
#[derive(Clone)]
pub struct Poly {
    ctx: Arc<Context>,
    field: Field,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(ctx: &Arc<Context>, field: Field) -> Self {
        Poly {
            ctx: ctx.clone(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Coeff, ctx: &Arc<Context>, field: Field) -> Self {
        Self::term(Monomial::one(ctx.len()), c, ctx, field)
    }

    pub fn from_i64(n: i64, ctx: &Arc<Context>, field: Field) -> Self {
        Self::constant(Coeff::from_i64(n, field), ctx, field)
    }

    pub fn one(ctx: &Arc<Context>, field: Field) -> Self {
        Self::from_i64(1, ctx, field)
    }

    pub fn term(m: Monomial, c: Coeff, ctx: &Arc<Context>, field: Field) -> Self {
        assert_eq!(m.nvars(), ctx.len(), "monomial length must match context");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ctx: ctx.clone(),
            field,
            terms,
        }
    }

    pub fn var(ctx: &Arc<Context>, field: Field, i: usize) -> Self {
        Self::term(
            Monomial::var(ctx.len(), i, 1),
            Coeff::one(field),
            ctx,
            field,
        )
    }

    pub fn var_named(ctx: &Arc<Context>, field: Field, name: &str) -> Result<Self> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ctx, field, i))
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I>(ctx: &Arc<Context>, field: Field, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut p = Poly::zero(ctx, field);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(|| Coeff::zero(self.field))
    }

    pub fn same_ring(&self, other: &Poly) -> bool {
        self.field == other.field && (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx)
    }

    pub fn check_same_ring(&self, other: &Poly) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same_ring(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_ring(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx, self.field);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.mul(c)))
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            field: self.field,
            terms,
        }
    }

    pub fn scale_i64(&self, n: i64) -> Poly {
        self.scale(&Coeff::from_i64(n, self.field))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), a.clone()))
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            field: self.field,
            terms,
        }
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx, self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.ctx, self.field);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[i] = e - 1;
            out.add_term(dm, &c.mul(&Coeff::from_i64(e as i64, self.field)));
        }
        out
    }

    pub fn partial_named(&self, name: &str) -> Result<Poly> {
        let i = self
            .ctx
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.partial(i))
    }

    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.partial(i)).collect()
    }

    /// Simultaneous substitution `x_i -> images[i]`; the images fix the
    /// target context and field.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(Error::ContextMismatch);
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (tctx, tfield) = (first.ctx.clone(), first.field);
        if tfield != self.field || images.iter().any(|p| !p.same_ring(first)) {
            return Err(Error::ContextMismatch);
        }
        // cached powers per variable
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(&tctx, tfield), p.clone()])
            .collect();
        let mut out = Poly::zero(&tctx, tfield);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), &tctx, tfield);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitutes the named variables and keeps every other variable.
    pub fn substitute_vars(&self, map: &[(usize, Poly)]) -> Result<Poly> {
        let mut images: Vec<Poly> = (0..self.nvars())
            .map(|i| Poly::var(&self.ctx, self.field, i))
            .collect();
        for (i, p) in map {
            self.check_same_ring(p)?;
            images[*i] = p.clone();
        }
        self.substitute(&images)
    }

    /// Sets the listed variables to zero (context unchanged).
    pub fn set_zero(&self, vars: &[usize]) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&i| m.exponents()[i] == 0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            field: self.field,
            terms,
        }
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<Context>) -> Result<Poly> {
        let map: Vec<usize> = self
            .ctx
            .names()
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| Error::UnknownVariable(n.clone()))
            })
            .collect::<Result<_>>()?;
        let mut out = Poly::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] = x;
            }
            out.add_term(Monomial::new(e), c);
        }
        Ok(out)
    }

    /// Reinterprets the coefficients in another field (reducing rationals
    /// modulo p). Fails when a denominator vanishes.
    pub fn change_field(&self, field: Field) -> Result<Poly> {
        let mut out = Poly::zero(&self.ctx, field);
        for (m, c) in &self.terms {
            let c = Coeff::from_rational(&c.to_rational(), field).ok_or(Error::DivisionByZero)?;
            out.add_term(m.clone(), &c);
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter_terms(|m, _| m.degree() == d)
    }

    pub fn filter_terms<F: Fn(&Monomial, &Coeff) -> bool>(&self, keep: F) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, c)| keep(m, c))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            field: self.field,
            terms,
        }
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0))
            .collect()
    }

    /// Minimal weighted degree, whether every term attains it, and the part
    /// of minimal weighted degree.
    pub fn weighted_degree_data(&self, w: &[BigRational]) -> Result<(BigRational, bool, Poly)> {
        if w.len() != self.nvars() || w.iter().any(|x| !x.is_positive()) {
            return Err(Error::BadWeights);
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let deg = |m: &Monomial| -> BigRational {
            m.exponents()
                .iter()
                .zip(w)
                .fold(BigRational::zero(), |acc, (&e, wi)| {
                    acc + wi * BigRational::from_integer(e.into())
                })
        };
        let min = self.terms.keys().map(deg).min().unwrap();
        let part = self.filter_terms(|m, _| deg(m) == min);
        let homogeneous = part.num_terms() == self.num_terms();
        Ok((min, homogeneous, part))
    }

    /// Terms sorted by descending degree, then descending lex; the display order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.same_ring(rhs), "context mismatch in add");
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert!(self.same_ring(rhs), "context mismatch in sub");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &c.neg());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Poly {
            ctx: self.ctx.clone(),
            field: self.field,
            terms,
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.same_ring(rhs), "context mismatch in mul");
        let mut out = Poly::zero(&self.ctx, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ctx.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Poly[{}; {}]({})",
            self.ctx.names().join(","),
            self.field,
            self
        )
    }
}
