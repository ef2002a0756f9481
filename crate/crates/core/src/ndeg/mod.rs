//! Non-degeneracy deciders with respect to Newton diagrams and covector
//! diagrams, the multiplicity criterion and generic coefficient choices.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{newton_diagram, CDiagram, Face, NewtonDiagram};
use crate::groebner::{has_torus_zero, samuel_multiplicity};
use crate::ring::{Coeff, Monomial, Poly};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NdegMode {
    Kouchnirenko,
    Weak,
    Inner,
}

impl std::fmt::Display for NdegMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NdegMode::Kouchnirenko => "kouchnirenko",
            NdegMode::Weak => "weak",
            NdegMode::Inner => "inner",
        })
    }
}

/// Outcome for one face (and, in inner mode, one coordinate stratum).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    /// Index into the face list of the diagram.
    pub id: usize,
    pub passed: bool,
    /// Coordinates that are nonzero at the offending common zero.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdegReport {
    pub mode: NdegMode,
    pub verdict: bool,
    pub faces: Vec<FaceCheck>,
    /// Inner mode only: the verdict when vertices on a coordinate axis are
    /// not counted as inner faces.
    pub axis_excluded_verdict: Option<bool>,
    names: Vec<String>,
}

impl NdegReport {
    fn new(mode: NdegMode, faces: Vec<FaceCheck>, names: &[String]) -> Self {
        let verdict = faces.iter().all(|f| f.passed);
        NdegReport {
            mode,
            verdict,
            faces,
            axis_excluded_verdict: None,
            names: names.to_vec(),
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &FaceCheck> {
        self.faces.iter().filter(|f| !f.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let faces: Vec<serde_json::Value> = self
            .faces
            .iter()
            .map(|f| {
                let witness = f.witness.as_ref().map(|w| w.iter().map(|&i| self.names[i].clone()).collect::<Vec<_>>());
                serde_json::json!({ "id": f.id, "passed": f.passed, "witness_nonvanishing": witness })
            })
            .collect();
        let mut out =
            serde_json::json!({ "mode": self.mode, "verdict": self.verdict, "faces": faces });
        if let Some(v) = self.axis_excluded_verdict {
            out["axis_excluded_verdict"] = serde_json::json!(v);
        }
        out
    }
}

/// Which derivatives enter the face systems of [`is_nondegenerate_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceSystem {
    /// `x_i df/dx_i`.
    Toric,
    /// `df/dx_i`.
    Partials,
}

fn restrict(f: &Poly, face: &Face) -> Poly {
    f.filter_terms(|m, _| face.points.binary_search(m).is_ok())
}

fn all_vars(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Checks every closed face of the Newton diagram for a common zero of the
/// toric derivatives of the face polynomial on the torus.
pub fn is_nondegenerate(f: &Poly) -> Result<NdegReport> {
    is_nondegenerate_with(f, FaceSystem::Toric)
}

pub fn is_nondegenerate_with(f: &Poly, system: FaceSystem) -> Result<NdegReport> {
    let d = newton_diagram(f)?;
    let n = f.nvars();
    let mut checks = Vec::with_capacity(d.faces().len());
    for (id, face) in d.faces().iter().enumerate() {
        let fd = restrict(f, face);
        let gens: Vec<Poly> = match system {
            FaceSystem::Toric => (0..n)
                .map(|i| fd.partial(i) * Poly::var(f.ctx(), f.field(), i))
                .collect(),
            FaceSystem::Partials => fd.gradient(),
        };
        checks.push(face_check(id, &gens, &all_vars(n))?);
    }
    Ok(NdegReport::new(
        NdegMode::Kouchnirenko,
        checks,
        f.ctx().names(),
    ))
}

fn face_check(id: usize, gens: &[Poly], nonvanishing: &[usize]) -> Result<FaceCheck> {
    let zero = has_torus_zero(gens, nonvanishing)?;
    Ok(FaceCheck {
        id,
        passed: !zero,
        witness: zero.then(|| nonvanishing.to_vec()),
    })
}

/// Checks the maximal faces of the Newton diagram for a torus zero of the
/// face polynomial together with its partial derivatives.
pub fn is_weakly_nondegenerate(f: &Poly) -> Result<NdegReport> {
    let d = newton_diagram(f)?;
    let n = f.nvars();
    let mut checks = Vec::new();
    for face in d.maximal_faces() {
        let id = d.faces().iter().position(|g| g == face).unwrap();
        let fd = restrict(f, face);
        let mut gens = fd.gradient();
        gens.push(fd);
        checks.push(face_check(id, &gens, &all_vars(n))?);
    }
    Ok(NdegReport::new(NdegMode::Weak, checks, f.ctx().names()))
}

fn weight(m: &Monomial, w: &[BigRational]) -> BigRational {
    m.exponents()
        .iter()
        .zip(w)
        .map(|(&e, c)| c * BigRational::from_integer(e.into()))
        .sum()
}

/// Subsets of `0..n` as sorted index lists, excluding the empty set.
fn nonempty_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// For every inner face of the covector diagram and every coordinate
/// subspace meeting it, checks that the partials of the face polynomial
/// have no zero whose nonzero coordinates are exactly that subspace.
pub fn is_inner_nondegenerate(f: &Poly, diagram: &CDiagram) -> Result<NdegReport> {
    let n = f.nvars();
    if diagram.nvars() != n {
        return Err(Error::DegreeMismatch(format!(
            "{} variables but a diagram in {} dimensions",
            n,
            diagram.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for m in f.support() {
        if !diagram.is_above(m.exponents()) {
            return Err(Error::SupportOutsideDiagram(m.exponents().to_vec()));
        }
    }
    let one = BigRational::one();
    let mut checks = Vec::new();
    let mut excluded_ok = true;
    for (id, face) in diagram.faces().iter().enumerate() {
        if !face.inner {
            continue;
        }
        let fd = f.filter_terms(|m, _| weight(m, &face.covector) == one);
        let grad = fd.gradient();
        let mut passed = true;
        let mut witness = None;
        for subset in nonempty_subsets(n) {
            let meets = face.vertices.iter().any(|v| {
                v.iter()
                    .enumerate()
                    .all(|(i, x)| x.is_zero() || subset.contains(&i))
            });
            if !meets {
                continue;
            }
            if has_torus_zero(&grad, &subset)? {
                passed = false;
                witness = Some(subset);
                break;
            }
        }
        if face.inner_axis_excluded {
            excluded_ok &= passed;
        }
        checks.push(FaceCheck {
            id,
            passed,
            witness,
        });
    }
    let mut report = NdegReport::new(NdegMode::Inner, checks, f.ctx().names());
    report.axis_excluded_verdict = Some(excluded_ok);
    Ok(report)
}

/// Result of comparing the multiplicity of the toric Jacobian ideal with the
/// normalized volume of the region below the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiviaOutcome {
    pub verdict: bool,
    pub multiplicity: u64,
    pub volume_term: BigRational,
}

/// Non-degeneracy through the equality `e(x_i df/dx_i) = n! V_n`; fails with
/// [`Error::InfiniteColength`] when the ideal is not primary to the maximal
/// ideal.
pub fn bivia_test(f: &Poly, trials: u32, seed: u64) -> Result<BiviaOutcome> {
    let d = newton_diagram(f)?;
    let n = f.nvars();
    let gens: Vec<Poly> = (0..n)
        .map(|i| f.partial(i) * Poly::var(f.ctx(), f.field(), i))
        .collect();
    let mult = samuel_multiplicity(&gens, trials, seed)?;
    let volume_term = d.normalized_volumes()[n].clone();
    Ok(BiviaOutcome {
        verdict: BigRational::from_integer(mult.value.into()) == volume_term,
        multiplicity: mult.value,
        volume_term,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientScheme {
    Ones,
    /// `1, 2, 3, ...` in descending monomial order, skipping multiples of
    /// the characteristic.
    Counting,
    SeededRandom(u64),
}

/// A polynomial supported on the lattice points of the diagram that lie in
/// the source support.
pub fn generic_for_diagram(diagram: &NewtonDiagram, scheme: CoefficientScheme) -> Poly {
    let mut pts: Vec<&Monomial> = diagram
        .faces()
        .iter()
        .flat_map(|f| f.points.iter())
        .collect();
    pts.sort_by(|a, b| b.cmp(a));
    pts.dedup();
    let ctx = diagram.ctx();
    let field = diagram.field();
    let p = field.characteristic();
    let mut rng = match scheme {
        CoefficientScheme::SeededRandom(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        _ => None,
    };
    let mut k: u64 = 0;
    let mut terms = Vec::with_capacity(pts.len());
    for m in pts {
        let c = match scheme {
            CoefficientScheme::Ones => 1,
            CoefficientScheme::Counting => {
                k += 1;
                while p != 0 && k.is_multiple_of(p) {
                    k += 1;
                }
                k as i64
            }
            CoefficientScheme::SeededRandom(_) => {
                let r = rng.as_mut().unwrap();
                if p == 0 {
                    r.gen_range(1..=101)
                } else {
                    r.gen_range(1..p) as i64
                }
            }
        };
        terms.push((m.clone(), Coeff::from_i64(c, field)));
    }
    Poly::from_terms(ctx, field, terms)
}

#[cfg(test)]
mod tests;
