//! Colength of `J + m^N` by Gaussian elimination on the Macaulay matrix of
//! `J` in `k[x]/m^N`.

use std::collections::HashMap;

use crate::ring::{Coeff, Monomial, Poly};

/// All exponent vectors in `n` variables of total degree below `bound`,
/// ascending by degree.
fn monomials_below(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..bound {
        let mut e = vec![0u32; n];
        push_degree(&mut out, &mut e, 0, d);
    }
    out
}

fn push_degree(out: &mut Vec<Monomial>, e: &mut Vec<u32>, i: usize, rest: u32) {
    let n = e.len();
    if n == 0 {
        if rest == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    if i + 1 == n {
        e[i] = rest;
        out.push(Monomial::new(e.clone()));
        e[i] = 0;
        return;
    }
    for k in (0..=rest).rev() {
        e[i] = k;
        push_degree(out, e, i + 1, rest - k);
    }
    e[i] = 0;
}

type Row = Vec<(usize, Coeff)>;

fn sub_scaled(a: &Row, c: &Coeff, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul(c).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&b[j].1.mul(c));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `dim k[x]/(gens + m^bound)`.
pub(crate) fn truncated_colength(gens: &[Poly], n: usize, bound: u32) -> u64 {
    let cols = monomials_below(n, bound);
    let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for g in gens {
        let Some(ord) = g.order() else { continue };
        for a in cols.iter().take_while(|a| a.degree() + ord < bound) {
            let mut row: Row = g
                .terms()
                .filter_map(|(m, c)| {
                    let p = m.mul(a);
                    index.get(&p).map(|&i| (i, c.clone()))
                })
                .collect();
            row.sort_by_key(|t| t.0);
            while let Some((lead, c)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => row = sub_scaled(&row, &c, p),
                    None => {
                        let inv = c.inv().expect("nonzero pivot");
                        let monic: Row = row.iter().map(|(i, v)| (*i, v.mul(&inv))).collect();
                        pivots.insert(lead, monic);
                        break;
                    }
                }
            }
        }
    }
    (cols.len() - pivots.len()) as u64
}
