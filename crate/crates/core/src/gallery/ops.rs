//! The determinantal surface, its deformations, and primitive ideals.

use std::sync::Arc;

use num_rational::BigRational;

use crate::diagram::{newton_diagram, NewtonDiagram};
use crate::groebner::{gbasis, ideal_product, TermOrder};
use crate::ring::{parse_poly, Coeff, Context, Field, Monomial, Poly};
use crate::{Error, Result};

/// Weights making the determinantal surface quasi-homogeneous.
pub const DELTA_WEIGHTS: [u32; 3] = [3, 4, 5];
/// Its weighted degree.
pub const DELTA_DEGREE: u32 = 15;

pub fn xyz() -> Arc<Context> {
    Context::new(&["x", "y", "z"]).expect("valid names")
}

fn q(text: &str, ctx: &Arc<Context>) -> Poly {
    parse_poly(text, ctx, Field::rationals()).expect("fixed polynomial text")
}

/// `x^5 + x y^3 + z^3 - 3 x^2 y z`.
pub fn f_delta() -> Poly {
    q("x^5 + x*y^3 + z^3 - 3*x^2*y*z", &xyz())
}

/// The symmetric matrix `[[x, y, z], [y, z, x^2], [z, x^2, x y]]`.
pub fn delta_matrix() -> [[Poly; 3]; 3] {
    let c = xyz();
    let e = |t: &str| q(t, &c);
    [
        [e("x"), e("y"), e("z")],
        [e("y"), e("z"), e("x^2")],
        [e("z"), e("x^2"), e("x*y")],
    ]
}

fn det3(m: &[[Poly; 3]; 3]) -> Poly {
    let minor = |r: usize, a: usize, b: usize| &m[r][a] * &m[r + 1][b] - &m[r][b] * &m[r + 1][a];
    &m[0][0] * &minor(1, 1, 2) - &m[0][1] * &minor(1, 0, 2) + &m[0][2] * &minor(1, 0, 1)
}

/// The 2x2 minors of the first two rows, signs chosen as
/// `y^2 - x z`, `y z - x^3`, `z^2 - x^2 y`.
pub fn delta_minors() -> Vec<Poly> {
    let m = delta_matrix();
    let minor = |a: usize, b: usize| &m[0][a] * &m[1][b] - &m[0][b] * &m[1][a];
    vec![-minor(0, 1), -minor(0, 2), -minor(1, 2)]
}

/// `-det` of [`delta_matrix`] equals [`f_delta`].
pub fn determinant_consistency() -> bool {
    -det3(&delta_matrix()) == f_delta()
}

/// Every term of `f` has weighted degree `degree`.
pub fn is_weighted_homogeneous(f: &Poly, weights: &[u32], degree: u32) -> bool {
    f.terms().all(|(m, _)| {
        m.exponents()
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e * w)
            .sum::<u32>()
            == degree
    })
}

/// Generators of the ideal of the monomial curve `(t^a, t^b, t^c)` in
/// `x, y, z`, by eliminating `t` with a lexicographic basis.
pub fn monomial_curve_ideal(exps: [u32; 3]) -> Result<Vec<Poly>> {
    let big = Context::new(&["t", "x", "y", "z"])?;
    let field = Field::rationals();
    let gens: Vec<Poly> = ["x", "y", "z"]
        .iter()
        .zip(exps)
        .map(|(v, e)| Ok(Poly::var_named(&big, field, v)? - Poly::var(&big, field, 0).pow(e)))
        .collect::<Result<_>>()?;
    let basis = gbasis(&gens, &TermOrder::lex())?;
    let target = xyz();
    Ok(basis
        .generators()
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| drop_first_variable(g, &target))
        .collect())
}

fn drop_first_variable(g: &Poly, target: &Arc<Context>) -> Poly {
    let terms = g
        .terms()
        .map(|(m, c)| (Monomial::new(m.exponents()[1..].to_vec()), c.clone()));
    Poly::from_terms(target, g.field(), terms)
}

/// Both generator lists span the same ideal of the polynomial ring.
pub fn same_ideal(a: &[Poly], b: &[Poly]) -> Result<bool> {
    let order = TermOrder::deg_lex();
    let ga = gbasis(a, &order)?;
    let gb = gbasis(b, &order)?;
    for p in b {
        if !ga.contains(p)? {
            return Ok(false);
        }
    }
    for p in a {
        if !gb.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `f` lies in the primitive ideal of `ideal` (all partials in the
/// ideal) and whether it lies in the square of `ideal`.
pub fn primitive_ideal_check(f: &Poly, ideal: &[Poly]) -> Result<(bool, bool)> {
    for g in ideal {
        f.check_same_ring(g)?;
    }
    let order = TermOrder::deg_lex();
    let basis = gbasis(ideal, &order)?;
    let mut in_primitive = true;
    for d in f.gradient() {
        if !basis.contains(&d)? {
            in_primitive = false;
            break;
        }
    }
    let square = gbasis(&ideal_product(ideal, ideal)?, &order)?;
    Ok((in_primitive, square.contains(f)?))
}

/// The monomial added to [`f_delta`] in series `variant` (7, 8 or 9).
pub fn series_monomial(variant: u32, k: u32) -> Result<Monomial> {
    if k == 0 {
        return Err(Error::DegreeMismatch(
            "series index k must be positive".into(),
        ));
    }
    match variant {
        7 => Ok(Monomial::new(vec![k, 0, 0])),
        8 => Ok(Monomial::new(vec![k - 1, 1, 0])),
        9 => Ok(Monomial::new(vec![k - 1, 0, 1])),
        _ => Err(Error::Unsupported(format!(
            "series variant {variant}; expected 7, 8 or 9"
        ))),
    }
}

/// Weighted degree of the added monomial under [`DELTA_WEIGHTS`].
pub fn series_weight(variant: u32, k: u32) -> Result<u32> {
    let m = series_monomial(variant, k)?;
    Ok(m.exponents()
        .iter()
        .zip(DELTA_WEIGHTS)
        .map(|(&e, w)| e * w)
        .sum())
}

/// The added monomial lies in the Newton polyhedron of [`f_delta`] strictly
/// above its diagram: it leaves the diagram unchanged and is on no face.
pub fn lies_above_diagram(m: &Monomial) -> Result<bool> {
    let f = f_delta();
    let base = newton_diagram(&f)?;
    let g = f.clone() + Poly::term(m.clone(), Coeff::one(f.field()), f.ctx(), f.field());
    let with = newton_diagram(&g)?;
    let covectors = |d: &NewtonDiagram| -> Vec<Vec<BigRational>> {
        let mut v: Vec<Vec<BigRational>> = d.faces().iter().map(|fc| fc.covector.clone()).collect();
        v.sort();
        v
    };
    let on_face = with.faces().iter().any(|fc| fc.points.contains(m));
    Ok(covectors(&base) == covectors(&with) && !on_face)
}

/// Least `k` from which the added monomial of `variant` lies above the
/// diagram; computed, not assumed.
pub fn series_threshold(variant: u32) -> Result<u32> {
    for k in 1..=64 {
        if lies_above_diagram(&series_monomial(variant, k)?)? {
            return Ok(k);
        }
    }
    Err(Error::Unsupported(format!(
        "no threshold found for series variant {variant}"
    )))
}

/// A member of a deformation series of [`f_delta`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMember {
    pub poly: Poly,
    /// Weighted degree `v` of the added monomial; the expected Milnor
    /// number is `7 + v`.
    pub weight: u32,
    /// Set when `k` is below the threshold of [`series_threshold`].
    pub warning: Option<String>,
}

/// `f_delta + x^k`, `f_delta + x^(k-1) y` or `f_delta + x^(k-1) z` for
/// variant 7, 8 or 9.
pub fn counterexample_series(variant: u32, k: u32) -> Result<SeriesMember> {
    let m = series_monomial(variant, k)?;
    let f = f_delta();
    let poly = f.clone() + Poly::term(m, Coeff::one(f.field()), f.ctx(), f.field());
    let threshold = series_threshold(variant)?;
    let warning = (k < threshold).then(|| {
        format!("k = {k} is below {threshold}: the added monomial does not lie above the diagram")
    });
    Ok(SeriesMember {
        poly,
        weight: series_weight(variant, k)?,
        warning,
    })
}
