//! Diagrams `{x >= 0 : w_j . x >= 1 for all j}` given by strictly positive
//! rational covectors; vertices need not be lattice points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::complex::Complex;
use super::dd::extreme_rays;
use super::{alternating_sum, covector_of, unnormalize, GammaMinus};
use crate::{Error, Result};

/// A compact face of a covector diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFace {
    pub dim: usize,
    /// Vertices of the face, ascending.
    pub vertices: Vec<Vec<BigRational>>,
    /// Strictly positive covector with value 1 on the face.
    pub covector: Vec<BigRational>,
    pub on_axes: Vec<usize>,
    /// Not contained in any coordinate hyperplane.
    pub inner: bool,
    /// Alternative reading in which a vertex lying on a coordinate axis is
    /// never inner; differs from `inner` only in one variable.
    pub inner_axis_excluded: bool,
}

#[derive(Clone, Debug)]
pub struct CDiagram {
    n: usize,
    covectors: Vec<Vec<BigRational>>,
    /// Common denominator of all vertex coordinates.
    scale: BigInt,
    complex: Complex,
    faces: Vec<CFace>,
}

impl CDiagram {
    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn covectors(&self) -> &[Vec<BigRational>] {
        &self.covectors
    }

    pub fn faces(&self) -> &[CFace] {
        &self.faces
    }

    pub fn inner_faces(&self) -> Vec<&CFace> {
        self.faces.iter().filter(|f| f.inner).collect()
    }

    pub fn vertices(&self) -> Vec<Vec<BigRational>> {
        self.faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| f.vertices[0].clone())
            .collect()
    }

    /// `k! V_k`, `k = 0..=n`.
    pub fn normalized_volumes(&self) -> Vec<BigRational> {
        self.complex
            .normalized_volumes()
            .into_iter()
            .enumerate()
            .map(|(k, v)| BigRational::new(v, num_traits::pow(self.scale.clone(), k)))
            .collect()
    }

    pub fn volumes(&self) -> Vec<BigRational> {
        unnormalize(self.normalized_volumes())
    }

    pub fn newton_number(&self) -> BigRational {
        alternating_sum(&self.normalized_volumes())
    }

    pub fn gamma_minus(&self) -> GammaMinus {
        GammaMinus::from_complex(&self.complex, &self.scale)
    }

    /// Whether a point lies on or above the diagram.
    pub fn is_above(&self, m: &[u32]) -> bool {
        let pt: Vec<BigRational> = m
            .iter()
            .map(|&e| BigRational::from_integer(e.into()))
            .collect();
        self.covectors
            .iter()
            .all(|w| dot_q(w, &pt) >= BigRational::one())
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let fmt = super::fmt_rat;
        let faces: Vec<serde_json::Value> = self
            .faces
            .iter()
            .map(|f| {
                serde_json::json!({
                    "dim": f.dim,
                    "points": f.vertices.iter().map(|v| v.iter().map(fmt).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "covector": f.covector.iter().map(fmt).collect::<Vec<_>>(),
                    "on_axes": f.on_axes.iter().map(|&i| names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1))).collect::<Vec<_>>(),
                    "inner": f.inner,
                    "inner_axis_excluded": f.inner_axis_excluded,
                })
            })
            .collect();
        serde_json::json!({
            "vars": names,
            "covectors": self.covectors.iter().map(|w| w.iter().map(fmt).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "faces": faces,
            "convenient": true,
            "nu": fmt(&self.newton_number()),
        })
    }
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Parses covectors written as rationals separated by commas, covectors
/// separated by semicolons: `"1/3,1/2;1/4,1"`.
pub fn parse_covectors(text: &str) -> Result<Vec<Vec<BigRational>>> {
    let bad = |pos: usize, msg: String| Error::Syntax { pos, msg };
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let mut row = Vec::new();
        let mut at = offset;
        for entry in part.split(',') {
            let t = entry.trim();
            let r = t
                .parse::<BigRational>()
                .map_err(|_| bad(at, format!("`{t}` is not a rational number")))?;
            row.push(r);
            at += entry.len() + 1;
        }
        out.push(row);
        offset += part.len() + 1;
    }
    Ok(out)
}

pub fn cdiagram_build(covectors: &[Vec<BigRational>]) -> Result<CDiagram> {
    let first = covectors.first().ok_or(Error::EmptyInput)?;
    let n = first.len();
    if n == 0 || covectors.iter().any(|w| w.len() != n) {
        return Err(Error::DegreeMismatch(
            "covectors must share one positive length".into(),
        ));
    }
    if covectors.iter().flatten().any(|x| !x.is_positive()) {
        return Err(Error::NonPositiveCovector);
    }

    // homogenized cone in (x, t): x >= 0, t >= 0, W_j . x - L_j t >= 0
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..=n {
        let mut r = vec![BigInt::zero(); n + 1];
        r[i] = BigInt::one();
        rows.push(r);
    }
    for w in covectors {
        let l = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut r: Vec<BigInt> = w
            .iter()
            .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        r.push(-l);
        rows.push(r);
    }
    let rays = extreme_rays(&rows);
    let verts: Vec<(Vec<BigInt>, BigInt)> = rays
        .into_iter()
        .filter(|r| r[n].is_positive())
        .map(|r| (r[..n].to_vec(), r[n].clone()))
        .collect();
    let scale = verts.iter().fold(BigInt::one(), |acc, (_, t)| acc.lcm(t));
    let pts: Vec<Vec<BigInt>> = verts
        .iter()
        .map(|(x, t)| x.iter().map(|v| v * (&scale / t)).collect())
        .collect();
    let complex = Complex::new(n, &pts);

    // every axis carries a vertex, so central projection onto the simplex is
    // a bijection
    debug_assert!((0..n).all(|i| complex
        .points
        .iter()
        .any(|p| p.iter().enumerate().all(|(j, x)| (j == i) != x.is_zero()))));

    let faces = complex
        .faces
        .iter()
        .map(|rf| {
            let verts = complex.vertices(rf);
            let mut vertices: Vec<Vec<BigRational>> = verts
                .iter()
                .map(|&i| {
                    complex.points[i]
                        .iter()
                        .map(|x| BigRational::new(x.clone(), scale.clone()))
                        .collect()
                })
                .collect();
            vertices.sort();
            let on_axes = complex.zero_coords(rf);
            let inner = on_axes.is_empty();
            let on_axis = n == 1 || (rf.dim == 0 && on_axes.len() + 1 == n);
            CFace {
                dim: rf.dim,
                vertices,
                covector: covector_of(&rf.normal, &rf.value, &scale),
                inner,
                inner_axis_excluded: inner && !(rf.dim == 0 && on_axis),
                on_axes,
            }
        })
        .collect();
    Ok(CDiagram {
        n,
        covectors: covectors.to_vec(),
        scale,
        complex,
        faces,
    })
}
