//! Extreme rays of a pointed polyhedral cone `{y : A y >= 0}` by the double
//! description method with the combinatorial adjacency test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{adjugate_columns, dot, normalize, rank};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn contains_all(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Returns the extreme rays, each primitive, for the cone given by rows of
/// `a`. The cone must be pointed (`a` of full column rank).
pub(crate) fn extreme_rays(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let d = a[0].len();
    assert_eq!(rank(a), d, "cone is not pointed");

    // greedy choice of d independent rows
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..m {
        let mut trial: Vec<Vec<BigInt>> = basis.iter().map(|&j| a[j].clone()).collect();
        trial.push(a[i].clone());
        if rank(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    let rows: Vec<Vec<BigInt>> = basis.iter().map(|&j| a[j].clone()).collect();
    let (det, cols) = adjugate_columns(&rows);
    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::new();
    for (k, mut c) in cols.into_iter().enumerate() {
        if det.is_negative() {
            for x in c.iter_mut() {
                *x = -&*x;
            }
        }
        normalize(&mut c);
        let mut tight = Bits::new(m);
        for (t, &row) in basis.iter().enumerate() {
            if t != k {
                tight.set(row);
            }
        }
        rays.push((c, tight));
    }

    let mut done = vec![false; m];
    for &b in &basis {
        done[b] = true;
    }
    let mut processed = d;
    for i in 0..m {
        if done[i] {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot(&a[i], r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, (_, t)) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    t.set(i);
                }
            }
            done[i] = true;
            processed += 1;
            continue;
        }
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|r| r == p || r == q || !rays[r].1.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (&vals[p], &vals[q]);
                let mut y: Vec<BigInt> = rays[p]
                    .0
                    .iter()
                    .zip(&rays[q].0)
                    .map(|(x, z)| x * -vq + z * vp)
                    .collect();
                normalize(&mut y);
                let mut t = common;
                t.set(i);
                next.push((y, t));
            }
        }
        for (k, (r, mut t)) in rays.into_iter().enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                t.set(i);
            }
            next.push((r, t));
        }
        rays = next;
        done[i] = true;
        processed += 1;
    }
    debug_assert_eq!(processed, m);
    rays.into_iter().map(|(r, _)| r).collect()
}
