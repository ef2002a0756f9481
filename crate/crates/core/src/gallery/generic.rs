//! Explicit coefficients for the plane-curve examples with nodes.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::{Coeff, Context, Field, Monomial, Poly};

/// Seed that produced [`COMMITTED`].
pub const GENERIC_SEED: u64 = 1;

/// Number of linear (3) or quadratic (6) coefficient rows, in the order
/// cubic-one-node `m1 m2 l1 l2`, cubic-three-nodes `l1 l2 l3`,
/// quartic `q1 q2`, quintic `l1 l2 l3 q1 q2`, Le-Yomdin `l`.
const ROW_DEGREES: [u32; 15] = [1, 1, 1, 1, 1, 1, 1, 2, 2, 1, 1, 1, 2, 2, 1];

/// Rows drawn with [`GENERIC_SEED`]; monomials in the order `x, y, z` or
/// `x^2, x y, x z, y^2, y z, z^2`.
pub const COMMITTED: [&[i64]; 15] = [
    &[-6, 3, -5],
    &[-7, -6, -3],
    &[3, 9, -2],
    &[-5, -1, -3],
    &[-7, 6, -7],
    &[2, 8, -9],
    &[5, 4, -3],
    &[6, 4, 9, 6, 5, -6],
    &[-3, -4, 3, 3, -4, -9],
    &[-3, -9, -1],
    &[6, 8, -8],
    &[8, -1, 6],
    &[-5, -8, 1, 4, -4, -1],
    &[-3, 3, 5, 6, 8, 6],
    &[6, -6, 6],
];

fn monomials(degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push(Monomial::new(vec![a, b, degree - a - b]));
        }
    }
    out
}

/// Nonzero integers in `[-9, 9]`, one row per form.
pub fn draw_rows(seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ROW_DEGREES
        .iter()
        .map(|&d| {
            (0..monomials(d).len())
                .map(|_| {
                    let v: i64 = rng.gen_range(1..=9);
                    if rng.gen_bool(0.5) {
                        -v
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// The forms for `seed`; the committed rows when `seed` is [`GENERIC_SEED`].
pub fn generic_forms(seed: u64, ctx: &Arc<Context>) -> Vec<Poly> {
    let rows: Vec<Vec<i64>> = if seed == GENERIC_SEED {
        COMMITTED.iter().map(|r| r.to_vec()).collect()
    } else {
        draw_rows(seed)
    };
    let field = Field::rationals();
    rows.iter()
        .zip(ROW_DEGREES)
        .map(|(row, d)| {
            let terms = monomials(d)
                .into_iter()
                .zip(row)
                .map(|(m, &c)| (m, Coeff::from_i64(c, field)));
            Poly::from_terms(ctx, field, terms)
        })
        .collect()
}
