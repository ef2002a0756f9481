//! The compact-face complex of `conv(P) + R^n_{>=0}` for a finite set of
//! integer points `P`, with normalized volumes of the cone over it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dd::extreme_rays;
use super::linalg::{affine_dim, det, dot};

#[derive(Clone, Debug)]
pub(crate) struct Facet {
    pub normal: Vec<BigInt>,
    pub points: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct RawFace {
    pub dim: usize,
    /// Indices into `Complex::points`, ascending.
    pub points: Vec<usize>,
    /// Sum of the normals of all facets containing the face; strictly
    /// positive because the face is compact.
    pub normal: Vec<BigInt>,
    pub value: BigInt,
}

#[derive(Clone, Debug)]
pub(crate) struct Complex {
    pub n: usize,
    /// Points not dominated coordinatewise by another point, sorted.
    pub points: Vec<Vec<BigInt>>,
    /// Compact faces, sorted by dimension then point lists.
    pub faces: Vec<RawFace>,
}

impl Complex {
    pub fn new(n: usize, input: &[Vec<BigInt>]) -> Complex {
        let mut pts: Vec<Vec<BigInt>> = input.to_vec();
        pts.sort();
        pts.dedup();
        let points: Vec<Vec<BigInt>> = pts
            .iter()
            .filter(|p| {
                !pts.iter()
                    .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
            })
            .cloned()
            .collect();

        let facets = if n == 0 {
            Vec::new()
        } else {
            facets_of(n, &points)
        };

        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut frontier: Vec<BTreeSet<usize>> = Vec::new();
        for f in &facets {
            if !f.points.is_empty() && seen.insert(f.points.clone()) {
                frontier.push(f.points.clone());
            }
        }
        let generators: Vec<BTreeSet<usize>> = frontier.clone();
        while let Some(s) = frontier.pop() {
            for g in &generators {
                let i: BTreeSet<usize> = s.intersection(g).copied().collect();
                if !i.is_empty() && seen.insert(i.clone()) {
                    frontier.push(i);
                }
            }
        }

        let mut faces = Vec::new();
        for s in seen {
            let mut normal = vec![BigInt::zero(); n];
            for f in facets.iter().filter(|f| f.points.is_superset(&s)) {
                for (a, b) in normal.iter_mut().zip(&f.normal) {
                    *a += b;
                }
            }
            if !normal.iter().all(|x| x.is_positive()) {
                continue;
            }
            let pts: Vec<usize> = s.into_iter().collect();
            let coords: Vec<Vec<BigInt>> = pts.iter().map(|&i| points[i].clone()).collect();
            let value = dot(&normal, &points[pts[0]]);
            faces.push(RawFace {
                dim: affine_dim(&coords),
                points: pts,
                normal,
                value,
            });
        }
        if n == 0 {
            faces.push(RawFace {
                dim: 0,
                points: vec![0],
                normal: vec![BigInt::from(1); n],
                value: BigInt::zero(),
            });
        }
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.points.cmp(&b.points)));
        Complex { n, points, faces }
    }

    /// Coordinates `i` where every point of the face vanishes.
    pub fn zero_coords(&self, face: &RawFace) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| face.points.iter().all(|&p| self.points[p][i].is_zero()))
            .collect()
    }

    /// Vertices (extreme points) of a face: its 0-dimensional subfaces.
    pub fn vertices(&self, face: &RawFace) -> Vec<usize> {
        self.faces
            .iter()
            .filter(|g| g.dim == 0 && g.points.len() == 1 && face.points.contains(&g.points[0]))
            .map(|g| g.points[0])
            .collect()
    }

    /// Pulling triangulation of each face from its lexicographically smallest
    /// point. Returns, per face index, simplices as lists of point indices.
    pub fn triangulations(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = Vec::with_capacity(self.faces.len());
        for (fi, f) in self.faces.iter().enumerate() {
            if f.dim == 0 {
                out.push(vec![vec![f.points[0]]]);
                continue;
            }
            let apex = *f
                .points
                .iter()
                .min_by(|&&a, &&b| self.points[a].cmp(&self.points[b]))
                .unwrap();
            let mut simplices = Vec::new();
            for (gi, g) in self.faces[..fi].iter().enumerate() {
                if g.dim + 1 != f.dim
                    || g.points.contains(&apex)
                    || !g.points.iter().all(|p| f.points.contains(p))
                {
                    continue;
                }
                for s in &out[gi] {
                    let mut t = vec![apex];
                    t.extend(s);
                    simplices.push(t);
                }
            }
            out.push(simplices);
        }
        out
    }

    /// `k! V_k` for `k = 0..=n`: normalized k-volumes of the cone from the
    /// origin over the complex, summed over coordinate subspaces.
    pub fn normalized_volumes(&self) -> Vec<BigInt> {
        let tri = self.triangulations();
        let mut vols = vec![BigInt::zero(); self.n + 1];
        vols[0] = BigInt::from(1);
        for (f, simplices) in self.faces.iter().zip(&tri) {
            let support: Vec<usize> = (0..self.n)
                .filter(|&i| f.points.iter().any(|&p| !self.points[p][i].is_zero()))
                .collect();
            let k = f.dim + 1;
            if support.len() != k || f.value.is_zero() {
                continue;
            }
            for s in simplices {
                let m: Vec<Vec<BigInt>> = s
                    .iter()
                    .map(|&p| support.iter().map(|&i| self.points[p][i].clone()).collect())
                    .collect();
                vols[k] += det(&m).abs();
            }
        }
        vols
    }

    /// Per-face normalized cone volume in the face's own coordinate
    /// subspace, or `None` when the face does not span a full-dimensional
    /// cone there.
    pub fn face_volume(&self, face_index: usize, tri: &[Vec<Vec<usize>>]) -> Option<BigInt> {
        let f = &self.faces[face_index];
        let support: Vec<usize> = (0..self.n)
            .filter(|&i| f.points.iter().any(|&p| !self.points[p][i].is_zero()))
            .collect();
        if support.len() != f.dim + 1 || f.value.is_zero() {
            return None;
        }
        let mut v = BigInt::zero();
        for s in &tri[face_index] {
            let m: Vec<Vec<BigInt>> = s
                .iter()
                .map(|&p| support.iter().map(|&i| self.points[p][i].clone()).collect())
                .collect();
            v += det(&m).abs();
        }
        Some(v)
    }
}

/// Facets of `conv(P) + R^n_{>=0}` from the extreme rays of the cone of
/// valid inequalities `{(w, c) : w >= 0, w.p >= c for p in P}`.
fn facets_of(n: usize, points: &[Vec<BigInt>]) -> Vec<Facet> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + points.len());
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n + 1];
        r[i] = BigInt::from(1);
        rows.push(r);
    }
    for p in points {
        let mut r = p.clone();
        r.push(BigInt::from(-1));
        rows.push(r);
    }
    let mut facets = Vec::new();
    for ray in extreme_rays(&rows) {
        let w = ray[..n].to_vec();
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        let c = ray[n].clone();
        let on: BTreeSet<usize> = (0..points.len())
            .filter(|&i| dot(&w, &points[i]) == c)
            .collect();
        facets.push(Facet {
            normal: w,
            points: on,
        });
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    facets
}
