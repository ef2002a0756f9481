//! Newton diagrams, the region below them and Newton numbers, for
//! polynomials and for diagrams given by rational covectors.

mod cdiagram;
mod complex;
mod dd;
pub(crate) mod linalg;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::ring::{Context, Field, Monomial, Poly};
use crate::{Error, Result};

pub use cdiagram::{cdiagram_build, parse_covectors, CDiagram, CFace};
use complex::Complex;

/// A compact face of the Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    /// Support points of the polynomial lying on the face, ascending.
    pub points: Vec<Monomial>,
    /// Strictly positive covector taking the value 1 on the face (or the
    /// primitive integer normal if the face is the origin) and larger values
    /// at every other support point.
    pub covector: Vec<BigRational>,
    /// Variables whose coordinate hyperplane contains the face.
    pub on_axes: Vec<usize>,
}

impl Face {
    /// Not contained in any coordinate hyperplane.
    pub fn is_inner(&self) -> bool {
        self.on_axes.is_empty()
    }
}

/// The Newton diagram of a polynomial: all compact faces of its Newton
/// polyhedron.
#[derive(Clone, Debug)]
pub struct NewtonDiagram {
    ctx: Arc<Context>,
    field: Field,
    support: Vec<Monomial>,
    faces: Vec<Face>,
    convenient: bool,
    complex: Complex,
}

impl NewtonDiagram {
    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn support(&self) -> &[Monomial] {
        &self.support
    }

    /// Faces sorted by dimension, then by their point lists.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn is_convenient(&self) -> bool {
        self.convenient
    }

    pub fn vertices(&self) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.dim == 0).collect()
    }

    /// Faces not contained in another face.
    pub fn maximal_faces(&self) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.dim > f.dim && f.points.iter().all(|p| g.points.contains(p)))
            })
            .collect()
    }

    /// Faces of dimension `n - 1`.
    pub fn facets(&self) -> Vec<&Face> {
        let n = self.nvars();
        self.faces.iter().filter(|f| f.dim + 1 == n).collect()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.faces.iter().any(|f| f.points == face.points)
    }

    /// `k! V_k`, `k = 0..=n`.
    pub fn normalized_volumes(&self) -> Vec<BigRational> {
        self.complex
            .normalized_volumes()
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    }

    /// `V_k`, `k = 0..=n`.
    pub fn volumes(&self) -> Vec<BigRational> {
        unnormalize(self.normalized_volumes())
    }

    pub fn newton_number(&self) -> BigRational {
        alternating_sum(&self.normalized_volumes())
    }

    pub fn gamma_minus(&self) -> GammaMinus {
        GammaMinus::from_complex(&self.complex, &BigInt::one())
    }

    /// The covector diagram cut out by the facets; requires a convenient
    /// diagram.
    pub fn natural_cdiagram(&self) -> Result<CDiagram> {
        if !self.convenient {
            return Err(Error::Unsupported(
                "covector diagram of a non-convenient Newton diagram".into(),
            ));
        }
        let covs: Vec<Vec<BigRational>> =
            self.facets().iter().map(|f| f.covector.clone()).collect();
        cdiagram_build(&covs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names = self.ctx.names();
        let faces: Vec<serde_json::Value> = self
            .faces
            .iter()
            .map(|f| {
                serde_json::json!({
                    "dim": f.dim,
                    "points": f.points.iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>(),
                    "covector": f.covector.iter().map(fmt_rat).collect::<Vec<_>>(),
                    "on_axes": f.on_axes.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "vars": names,
            "faces": faces,
            "convenient": self.convenient,
            "nu": fmt_rat(&self.newton_number()),
        })
    }
}

/// Triangulated region below a diagram, by coordinate subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaMinus {
    pub nvars: usize,
    pub pieces: Vec<GammaPiece>,
}

/// The part of the region lying in the coordinate subspace spanned by
/// `subspace`, as simplices with the origin as an implicit extra vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaPiece {
    pub subspace: Vec<usize>,
    #[serde(serialize_with = "ser_simplices")]
    pub simplices: Vec<Vec<Vec<BigRational>>>,
    /// Normalized volume (`k!` times the k-volume), `k = subspace.len()`.
    #[serde(serialize_with = "ser_rat")]
    pub normalized_volume: BigRational,
}

impl GammaMinus {
    fn from_complex(c: &Complex, scale: &BigInt) -> GammaMinus {
        let tri = c.triangulations();
        let mut pieces = Vec::new();
        for (i, f) in c.faces.iter().enumerate() {
            let Some(v) = c.face_volume(i, &tri) else {
                continue;
            };
            let subspace: Vec<usize> = (0..c.n)
                .filter(|&j| f.points.iter().any(|&p| !c.points[p][j].is_zero()))
                .collect();
            let k = subspace.len();
            let simplices = tri[i]
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|&p| {
                            c.points[p]
                                .iter()
                                .map(|x| BigRational::new(x.clone(), scale.clone()))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let denom = num_traits::pow(scale.clone(), k);
            pieces.push(GammaPiece {
                subspace,
                simplices,
                normalized_volume: BigRational::new(v, denom),
            });
        }
        pieces.sort_by(|a, b| {
            a.subspace
                .len()
                .cmp(&b.subspace.len())
                .then_with(|| a.subspace.cmp(&b.subspace))
        });
        GammaMinus { nvars: c.n, pieces }
    }

    /// Pieces inside the coordinate subspace `vars`.
    pub fn restricted_to(&self, vars: &[usize]) -> Vec<&GammaPiece> {
        self.pieces
            .iter()
            .filter(|p| p.subspace.iter().all(|v| vars.contains(v)))
            .collect()
    }

    /// `k! V_k` recomputed from the pieces.
    pub fn normalized_volumes(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.nvars + 1];
        v[0] = BigRational::one();
        for p in &self.pieces {
            v[p.subspace.len()] += &p.normalized_volume;
        }
        v
    }
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

fn ser_simplices<S: serde::Serializer>(
    v: &[Vec<Vec<BigRational>>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<Vec<String>>> = v
        .iter()
        .map(|simp| {
            simp.iter()
                .map(|pt| pt.iter().map(fmt_rat).collect())
                .collect()
        })
        .collect();
    serde::Serialize::serialize(&strs, s)
}

/// `p/q`, or `p` for integers.
pub fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn alternating_sum(normalized: &[BigRational]) -> BigRational {
    let n = normalized.len() - 1;
    let mut nu = BigRational::zero();
    for (k, v) in normalized.iter().enumerate() {
        if (n - k).is_multiple_of(2) {
            nu += v;
        } else {
            nu -= v;
        }
    }
    nu
}

fn unnormalize(normalized: Vec<BigRational>) -> Vec<BigRational> {
    let mut fact = BigInt::one();
    normalized
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            v / BigRational::from_integer(fact.clone())
        })
        .collect()
}

pub fn newton_diagram(f: &Poly) -> Result<NewtonDiagram> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let support = f.support();
    let pts: Vec<Vec<BigInt>> = support
        .iter()
        .map(|m| m.exponents().iter().map(|&e| BigInt::from(e)).collect())
        .collect();
    let complex = Complex::new(n, &pts);
    let to_mono = |i: usize| {
        Monomial::new(
            complex.points[i]
                .iter()
                .map(|x| u32::try_from(x).unwrap())
                .collect(),
        )
    };
    let faces = complex
        .faces
        .iter()
        .map(|rf| {
            let mut points: Vec<Monomial> = rf.points.iter().map(|&i| to_mono(i)).collect();
            points.sort();
            Face {
                dim: rf.dim,
                points,
                covector: covector_of(&rf.normal, &rf.value, &BigInt::one()),
                on_axes: complex.zero_coords(rf),
            }
        })
        .collect();
    let convenient = (0..n).all(|i| {
        support
            .iter()
            .any(|m| m.exponents()[i] > 0 && m.support().count() == 1)
    });
    Ok(NewtonDiagram {
        ctx: f.ctx().clone(),
        field: f.field(),
        support,
        faces,
        convenient,
        complex,
    })
}

/// Covector `scale * w / c`, or `w` itself when `c = 0`.
fn covector_of(w: &[BigInt], c: &BigInt, scale: &BigInt) -> Vec<BigRational> {
    if c.is_zero() {
        return w
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
    }
    w.iter()
        .map(|x| BigRational::new(x * scale, c.clone()))
        .collect()
}

/// Restriction of `f` to the support points on `face`.
pub fn face_poly(f: &Poly, face: &Face) -> Result<Poly> {
    let d = newton_diagram(f)?;
    if !d.contains_face(face) {
        return Err(Error::ForeignFace);
    }
    Ok(f.filter_terms(|m, _| face.points.binary_search(m).is_ok()))
}

/// Sum of the terms of `f` lying on its Newton diagram.
pub fn principal_part(f: &Poly) -> Result<Poly> {
    let d = newton_diagram(f)?;
    let mut on: Vec<&Monomial> = d.faces.iter().flat_map(|fc| fc.points.iter()).collect();
    on.sort();
    on.dedup();
    Ok(f.filter_terms(|m, _| on.binary_search(&m).is_ok()))
}

pub fn newton_number(f: &Poly) -> Result<BigRational> {
    Ok(newton_diagram(f)?.newton_number())
}

#[cfg(test)]
mod tests;
