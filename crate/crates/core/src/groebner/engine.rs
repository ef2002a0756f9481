//! Buchberger's algorithm, a truncated variant working in `k[x]/m^(N+1)`,
//! Lazard's homogenization for local orders and Mora's weak normal form.

use std::collections::HashSet;

use crate::ring::{Coeff, Monomial};

use super::order::TermOrder;
use super::spoly::{s_poly, SortedPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Global order, full reduction.
    Global,
    /// Local order in the truncated ring: every term of degree above the cap
    /// is discarded, so plain top-reduction terminates.
    Truncated(u32),
}

/// Full normal form with respect to a global order, or in the truncated
/// ring when `cap` is given.
pub(crate) fn full_reduce(
    f: &SortedPoly,
    basis: &[&SortedPoly],
    order: &TermOrder,
    cap: Option<u32>,
) -> SortedPoly {
    let mut h = f.clone();
    if let Some(n) = cap {
        h.truncate(n);
    }
    let mut rem: Vec<(Monomial, Coeff)> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        match basis.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let c = h.lc().div(g.lc()).unwrap();
                let t = g.lm().quotient_of(&lm);
                h = h.sub_scaled(&c, &t, g, order, cap);
            }
            None => {
                let first = h.terms.remove(0);
                rem.push(first);
            }
        }
    }
    SortedPoly { terms: rem }
}

/// Mora's weak normal form: reducers of minimal ecart, with the current
/// remainder joining the reducer set whenever the chosen reducer has larger
/// ecart. Ties on ecart go to the earliest reducer.
pub(crate) fn mora_reduce(
    f: &SortedPoly,
    basis: &[SortedPoly],
    ecarts: &[u32],
    order: &TermOrder,
) -> SortedPoly {
    let mut h = f.clone();
    let mut extra: Vec<(SortedPoly, u32)> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm();
        let mut best: Option<(u32, usize)> = None;
        for (i, g) in basis.iter().enumerate() {
            if best.is_none_or(|b| ecarts[i] < b.0) && g.lm().divides(lm) {
                best = Some((ecarts[i], i));
            }
        }
        for (j, (g, e)) in extra.iter().enumerate() {
            if best.is_none_or(|b| *e < b.0) && g.lm().divides(lm) {
                best = Some((*e, basis.len() + j));
            }
        }
        let Some((eg, idx)) = best else { break };
        let g = if idx < basis.len() {
            basis[idx].clone()
        } else {
            extra[idx - basis.len()].0.clone()
        };
        let eh = h.ecart();
        if eg > eh {
            extra.push((h.clone(), eh));
        }
        let c = h.lc().div(g.lc()).unwrap();
        let t = g.lm().quotient_of(h.lm());
        h = h.sub_scaled(&c, &t, &g, order, None);
    }
    h
}

/// Result of a basis computation.
pub(crate) struct BasisRun {
    pub basis: Vec<SortedPoly>,
    /// A unit was found; the ideal is the whole ring.
    pub unit: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger completion with the product and chain criteria and the normal
/// strategy: the pair with the smallest lcm in the order goes first, ties to
/// insertion order. Reduction uses only elements whose leading monomial is
/// not divisible by that of a later element.
pub(crate) fn complete(
    gens: &[SortedPoly],
    order: &TermOrder,
    mode: Mode,
    stop_on_unit: bool,
) -> BasisRun {
    let cap = match mode {
        Mode::Truncated(n) => Some(n),
        Mode::Global => None,
    };
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let is_unit = |p: &SortedPoly| !p.is_zero() && p.lm().is_one();

    let push = |p: SortedPoly,
                basis: &mut Vec<SortedPoly>,
                active: &mut Vec<bool>,
                pending: &mut Vec<Pair>,
                pending_set: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g.lm().is_coprime(p.lm()) {
                continue;
            }
            let lcm = g.lm().lcm(p.lm());
            if cap.is_some_and(|n| lcm.degree() > n) {
                continue;
            }
            pending.push(Pair { i, j: k, lcm });
            pending_set.insert((i, k));
        }
        for (g, a) in basis.iter().zip(active.iter_mut()) {
            if p.lm().divides(g.lm()) {
                *a = false;
            }
        }
        active.push(true);
        basis.push(p);
    };

    for g in gens {
        let mut g = g.clone();
        if let Some(n) = cap {
            g.truncate(n);
        }
        if g.is_zero() {
            continue;
        }
        g.make_monic();
        if stop_on_unit && is_unit(&g) {
            return BasisRun {
                basis: vec![g],
                unit: true,
            };
        }
        push(g, &mut basis, &mut active, &mut pending, &mut pending_set);
    }

    while !pending.is_empty() {
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pending[a], &pending[b]);
                order
                    .cmp(&pa.lcm, &pb.lcm)
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pending.swap_remove(best);
        pending_set.remove(&(i, j));

        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let sp = s_poly(&basis[i], &basis[j], order, cap);
        if sp.is_zero() {
            continue;
        }
        let reducers: Vec<&SortedPoly> = basis
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(g, _)| g)
            .collect();
        let mut h = match mode {
            Mode::Global => full_reduce(&sp, &reducers, order, None),
            Mode::Truncated(_) => full_reduce(&sp, &reducers, order, cap),
        };
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if stop_on_unit && is_unit(&h) {
            return BasisRun {
                basis: vec![h],
                unit: true,
            };
        }
        push(h, &mut basis, &mut active, &mut pending, &mut pending_set);
    }

    let unit = basis.iter().any(is_unit);
    BasisRun { basis, unit }
}

/// Drops elements whose leading monomial is divisible by another's.
pub(crate) fn minimalize(basis: Vec<SortedPoly>) -> Vec<SortedPoly> {
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (li, lj) = (basis[i].lm(), basis[j].lm());
            if lj.divides(li) && (li != lj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(b, _)| b)
        .collect()
}

/// Reduced Gröbner basis for a global order, sorted by leading monomial.
pub(crate) fn interreduce(basis: Vec<SortedPoly>, order: &TermOrder) -> Vec<SortedPoly> {
    let mut basis = minimalize(basis);
    for i in 0..basis.len() {
        let snapshot = basis.clone();
        let others: Vec<&SortedPoly> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g)
            .collect();
        let head = basis[i].terms[0].clone();
        let tail = SortedPoly {
            terms: basis[i].terms[1..].to_vec(),
        };
        let mut reduced = full_reduce(&tail, &others, order, None);
        reduced.terms.insert(0, head);
        reduced.make_monic();
        basis[i] = reduced;
    }
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    basis
}

/// Standard basis for a local degree order via Lazard's method: homogenize
/// with a new variable placed first, compute a Gröbner basis for degree-lex
/// (which orders equal-degree monomials by decreasing power of the new
/// variable, i.e. by the local order on the rest), then set it to 1.
pub(crate) fn lazard(gens: &[SortedPoly], order: &TermOrder, stop_on_unit: bool) -> BasisRun {
    let weights: Vec<u64> = match &order.weights {
        Some(w) => w.clone(),
        None => vec![
            1;
            gens.first()
                .map_or(0, |g| g.terms.first().map_or(0, |t| t.0.nvars()))
        ],
    };
    let mut hw = vec![1u64];
    hw.extend(&weights);
    let horder = TermOrder::deg_lex().with_weights(hw);
    let wdeg = |m: &Monomial| -> u64 {
        m.exponents()
            .iter()
            .zip(&weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    };
    let homog: Vec<SortedPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let top = g.terms.iter().map(|(m, _)| wdeg(m)).max().unwrap();
            let mut terms: Vec<(Monomial, Coeff)> = g
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![(top - wdeg(m)) as u32];
                    e.extend_from_slice(m.exponents());
                    (Monomial::new(e), c.clone())
                })
                .collect();
            terms.sort_by(|a, b| horder.cmp(&b.0, &a.0));
            SortedPoly { terms }
        })
        .collect();
    let run = complete(&homog, &horder, Mode::Global, false);
    let mut out = Vec::with_capacity(run.basis.len());
    for g in run.basis {
        let mut terms: Vec<(Monomial, Coeff)> = g
            .terms
            .into_iter()
            .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut p = SortedPoly { terms };
        p.make_monic();
        if stop_on_unit && p.lm().is_one() {
            return BasisRun {
                basis: vec![p],
                unit: true,
            };
        }
        out.push(p);
    }
    let unit = out.iter().any(|p| p.lm().is_one());
    BasisRun { basis: out, unit }
}
