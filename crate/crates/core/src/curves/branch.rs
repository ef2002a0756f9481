//! Stabilized forms of plane branch equations.

use std::sync::Arc;

use serde::Serialize;

use super::{monomial, nested_plane_curve, Semigroup};
use crate::diagram::newton_diagram;
use crate::ndeg::is_nondegenerate;
use crate::ring::{Context, Field, Poly};
use crate::stabilize::{basic_trick_named, multi_term_paired, Decomposition, Shear, StabTrace};
use crate::{Error, Result};

/// Applies the basic trick to `current = rest + m phi^k` and appends it.
fn trick(
    current: &Poly,
    m: &Poly,
    phi: &Poly,
    k: u32,
    names: [&str; 2],
    trace: &mut StabTrace,
) -> Result<Poly> {
    let m = m.embed(current.ctx())?;
    let phi = phi.embed(current.ctx())?;
    let g = current.clone() - &m * &phi.pow(k);
    let (out, t) = basic_trick_named(current, &Decomposition { g, m, phi, k }, names)?;
    trace.extend(t);
    Ok(out)
}

fn exp(x: u64) -> u32 {
    u32::try_from(x).expect("exponent fits in u32")
}

/// `u_0^(l_0^(i)) u_1^(l_1^(i))` in the plane ring.
fn plane_monomial(s: &Semigroup, plane: &Arc<Context>, i: usize) -> Poly {
    monomial(plane, &[(0, s.l_at(i, 0)), (1, s.l_at(i, 1))])
}

/// `phi_2 = u_1^(n_1) - u_0^(l_0^(1))`.
fn phi2(s: &Semigroup, plane: &Arc<Context>) -> Poly {
    monomial(plane, &[(1, s.n_at(1))]) - monomial(plane, &[(0, s.l_at(1, 0))])
}

/// For `l_j^(i) = 0` with `j >= 2`: writes the nested plane curve
/// `phi_g^(n_g) - M_g` as
/// `-v_g w_g - ... - v_2 w_2 + v_2 phi_2 + v_3 w_2^(n_2) + ... + w_g^(n_g)
///  - v_3 M_2 - ... - v_g M_(g-1) - M_g`
/// by one basic trick per level. For `g = 1` the curve is returned as is.
pub fn stabilize_simple_branch(s: &Semigroup) -> Result<(Poly, StabTrace)> {
    if !s.is_simple() {
        return Err(Error::Unsupported(
            "semigroup has l_j^(i) != 0 for some j >= 2; use stabilize_branch_g4".into(),
        ));
    }
    let f = nested_plane_curve(s);
    let plane = f.ctx().clone();
    let g = s.genus();
    // phi[i] for i = 2..=g
    let mut phis = vec![Poly::zero(&plane, Field::RATIONALS); g + 1];
    if g >= 2 {
        phis[2] = phi2(s, &plane);
        for i in 3..=g {
            phis[i] = phis[i - 1].pow(exp(s.n_at(i - 1))) - plane_monomial(s, &plane, i - 1);
        }
    }
    let mut trace = StabTrace::start(&f);
    let mut current = f.clone();
    let mut m = Poly::one(&plane, Field::RATIONALS);
    for i in (2..=g).rev() {
        let (vn, wn) = (format!("v{i}"), format!("w{i}"));
        current = trick(
            &current,
            &m,
            &phis[i],
            exp(s.n_at(i)),
            [&vn, &wn],
            &mut trace,
        )?;
        m = Poly::var_named(current.ctx(), Field::RATIONALS, &vn)?;
    }
    Ok((current, trace))
}

/// Three-stage stabilization for `g = 4` with arbitrary `l_j^(i)`: one basic
/// trick on the outer power, two paired terms on the powers of `phi_3`, and
/// up to three paired terms on the powers of `phi_2`, each stage sheared so
/// that one variable multiplies `phi`.
pub fn stabilize_branch_g4(s: &Semigroup) -> Result<(Poly, StabTrace)> {
    if s.genus() != 4 {
        return Err(Error::InvalidSemigroup(format!(
            "need g = 4, got g = {}",
            s.genus()
        )));
    }
    let f = nested_plane_curve(s);
    let plane = f.ctx().clone();
    let q = Field::RATIONALS;
    let p2 = phi2(s, &plane);
    let mono = |i: usize| plane_monomial(s, &plane, i);
    let p3 = p2.pow(exp(s.n_at(2))) - mono(2);
    let p4 = p3.pow(exp(s.n_at(3))) - &p2.pow(exp(s.l_at(3, 2))) * &mono(3);
    let (l32, l42, l43) = (exp(s.l_at(3, 2)), exp(s.l_at(4, 2)), exp(s.l_at(4, 3)));

    let mut trace = StabTrace::start(&f);
    let one = Poly::one(&plane, q);
    let s1 = trick(&f, &one, &p4, exp(s.n_at(4)), ["v4", "w4"], &mut trace)?;
    let ctx1 = s1.ctx().clone();
    let v4 = Poly::var_named(&ctx1, q, "v4")?;

    // powers of phi_3: v4 phi_3^(n_3) and -phi_2^(l_2^(4)) M_4 phi_3^(l_3^(4))
    let mut terms3 = vec![(v4.clone(), exp(s.n_at(3)))];
    let outer = -(&p2.pow(l42) * &mono(4)).embed(&ctx1)?;
    if l43 > 0 {
        terms3.push((outer.clone(), l43));
    }
    let p3e = p3.embed(&ctx1)?;
    let g3 = terms3
        .iter()
        .fold(s1.clone(), |acc, (m, k)| acc - m * &p3e.pow(*k));
    let names3: Vec<[String; 2]> = (1..=terms3.len())
        .map(|j| [format!("v3_{j}"), format!("w3_{j}")])
        .collect();
    let (s2, t2) = multi_term_paired(&s1, &p3e, &terms3, &g3, &names3, Shear::Chain)?;
    trace.extend(t2);
    let ctx2 = s2.ctx().clone();
    let carrier = Poly::var_named(&ctx2, q, &names3[terms3.len() - 1][0])?;

    // powers of phi_2: the carrier times phi_2^(n_2), -v4 M_3 phi_2^(l_2^(3))
    // and -w3_2^(l_3^(4)) M_4 phi_2^(l_2^(4))
    let mut terms2 = vec![(carrier, exp(s.n_at(2)))];
    let v4 = v4.embed(&ctx2)?;
    if l32 > 0 {
        terms2.push((-(&v4 * &mono(3).embed(&ctx2)?), l32));
    }
    if l42 > 0 {
        let w = if l43 > 0 {
            Poly::var_named(&ctx2, q, "w3_2")?.pow(l43)
        } else {
            Poly::one(&ctx2, q)
        };
        terms2.push((-(&w * &mono(4).embed(&ctx2)?), l42));
    }
    let p2e = p2.embed(&ctx2)?;
    let g2 = terms2
        .iter()
        .fold(s2.clone(), |acc, (m, k)| acc - m * &p2e.pow(*k));
    let names2: Vec<[String; 2]> = (1..=terms2.len())
        .map(|j| [format!("v2_{j}"), format!("w2_{j}")])
        .collect();
    let (s3, t3) = multi_term_paired(&s2, &p2e, &terms2, &g2, &names2, Shear::Star)?;
    trace.extend(t3);
    Ok((s3, trace))
}

/// Facet shapes and face test verdict of a stabilized branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchEvidence {
    pub monomials: usize,
    pub facets: usize,
    /// Every facet has exactly `dim + 1` support points.
    pub facets_are_simplices: bool,
    pub nondegenerate: bool,
}

/// Evidence for non-degeneracy of a stabilized form: shapes of the facets
/// of its Newton diagram and the face test.
pub fn branch_evidence(f: &Poly) -> Result<BranchEvidence> {
    let d = newton_diagram(f)?;
    let facets = d.facets();
    Ok(BranchEvidence {
        monomials: f.num_terms(),
        facets: facets.len(),
        facets_are_simplices: facets.iter().all(|fc| fc.points.len() == fc.dim + 1),
        nondegenerate: is_nondegenerate(f)?.verdict,
    })
}
