use std::cmp::Ordering;

use super::order::TermOrder;
use crate::ring::Context;
use crate::ring::{Coeff, Field, Monomial, Poly};
use std::sync::Arc;

/// Polynomial with terms sorted in descending order for a fixed term order;
/// the working representation of the basis algorithms.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    pub terms: Vec<(Monomial, Coeff)>,
}

impl SortedPoly {
    pub fn from_poly(p: &Poly, order: &TermOrder) -> Self {
        let mut terms: Vec<(Monomial, Coeff)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        SortedPoly { terms }
    }

    pub fn to_poly(&self, ctx: &Arc<Context>, field: Field) -> Poly {
        Poly::from_terms(ctx, field, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Coeff {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    /// Total degree minus the degree of the leading monomial.
    pub fn ecart(&self) -> u32 {
        self.total_degree() - self.lm().degree()
    }

    pub fn make_monic(&mut self) {
        if self.is_zero() || self.lc().is_one() {
            return;
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        for (_, c) in &mut self.terms {
            *c = c.mul(&inv);
        }
    }

    /// `self - c * t * g`, merging in the given order; terms of total degree
    /// above `cap` are dropped when a cap is given.
    pub fn sub_scaled(
        &self,
        c: &Coeff,
        t: &Monomial,
        g: &SortedPoly,
        order: &TermOrder,
        cap: Option<u32>,
    ) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut shifted = g.terms.iter().map(|(m, a)| (m.mul(t), a)).peekable();
        let keep = |m: &Monomial| cap.is_none_or(|n| m.degree() <= n);
        loop {
            let next_self = self.terms.get(i);
            match (next_self, shifted.peek()) {
                (None, None) => break,
                (Some((m, a)), None) => {
                    out.push((m.clone(), a.clone()));
                    i += 1;
                }
                (None, Some(_)) => {
                    let (m, a) = shifted.next().unwrap();
                    if keep(&m) {
                        out.push((m, a.mul(c).neg()));
                    }
                }
                (Some((m1, a1)), Some((m2, _))) => match order.cmp(m1, m2) {
                    Ordering::Greater => {
                        out.push((m1.clone(), a1.clone()));
                        i += 1;
                    }
                    Ordering::Less => {
                        let (m, a) = shifted.next().unwrap();
                        if keep(&m) {
                            out.push((m, a.mul(c).neg()));
                        }
                    }
                    Ordering::Equal => {
                        let (m, a) = shifted.next().unwrap();
                        let s = a1.sub(&a.mul(c));
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                        i += 1;
                    }
                },
            }
        }
        SortedPoly { terms: out }
    }

    pub fn truncate(&mut self, cap: u32) {
        self.terms.retain(|(m, _)| m.degree() <= cap);
    }
}

/// S-polynomial of two nonzero sorted polynomials.
pub(crate) fn s_poly(
    f: &SortedPoly,
    g: &SortedPoly,
    order: &TermOrder,
    cap: Option<u32>,
) -> SortedPoly {
    let lcm = f.lm().lcm(g.lm());
    let tf = f.lm().quotient_of(&lcm);
    let tg = g.lm().quotient_of(&lcm);
    // lc(g) * tf * f - lc(f) * tg * g, scaled so the leading terms cancel
    let ff = scale_shift(f, &g.lc().clone(), &tf, cap);
    ff.sub_scaled(f.lc(), &tg, g, order, cap)
}

fn scale_shift(f: &SortedPoly, c: &Coeff, t: &Monomial, cap: Option<u32>) -> SortedPoly {
    SortedPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, a)| (m.mul(t), a.mul(c)))
            .filter(|(m, _)| cap.is_none_or(|n| m.degree() <= n))
            .collect(),
    }
}
