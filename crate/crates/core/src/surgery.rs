//! Linking numbers in the surgered manifold, framing-coefficient
//! conversion, and first homology of extended presentations.

use crate::error::Error;
use crate::homlin::{
    h1_invariant_factors, solve_integer_system, FramedLinkData, IntMat, LinkingVector,
    SolutionVector, H1,
};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// lk in the surgered manifold with its audit trail: value is always
/// lk_s3 − correction, and the correction X₁ᵀV₂ does not depend on which
/// solution X₁ was used once V₂ lies in the image of M.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YLinkResult {
    #[serde(with = "crate::jsonint::big")]
    pub value: BigInt,
    #[serde(with = "crate::jsonint::big")]
    pub lk_s3: BigInt,
    #[serde(with = "crate::jsonint::big")]
    pub correction: BigInt,
    #[serde(with = "crate::jsonint::biglist")]
    pub solution_used: Vec<BigInt>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Linking number of two null-homologous curves in the surgered manifold.
///
/// `x1` must solve M·X = V₁ for the first curve; that precondition is the
/// caller's. V₂ is checked to lie in the image of M, which is exactly what
/// makes the result independent of the choice of `x1`.
pub fn lk_y(
    m: &IntMat,
    lk_s3: &BigInt,
    x1: &SolutionVector,
    v2: &LinkingVector,
) -> Result<YLinkResult, Error> {
    if !m.is_square() {
        return Err(Error::dimension(format!(
            "linking matrix must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if x1.x.len() != n || v2.v.len() != n {
        return Err(Error::dimension(format!(
            "matrix is {n}x{n} but X1 has length {} and V2 has length {}",
            x1.x.len(),
            v2.v.len()
        )));
    }
    if solve_integer_system(m, &v2.v)?.is_none() {
        return Err(Error::not_null_homologous(format!(
            "curve {} is not null-homologous, its linking numbers in the \
             surgered manifold are undefined",
            v2.owner
        )));
    }
    let correction = dot(&x1.x, &v2.v);
    Ok(YLinkResult {
        value: lk_s3 - &correction,
        lk_s3: lk_s3.clone(),
        correction,
        solution_used: x1.x.clone(),
    })
}

/// S³ framing coefficient realizing p-surgery on the tracked curve in the
/// surgered manifold: p + XᵀV.
pub fn framing_convert(p: &BigInt, x: &SolutionVector, v: &LinkingVector) -> Result<BigInt, Error> {
    if x.x.len() != v.v.len() {
        return Err(Error::dimension(format!(
            "solution has length {} but linking vector has length {}",
            x.x.len(),
            v.v.len()
        )));
    }
    Ok(p + dot(&x.x, &v.v))
}

/// First homology presented by the extended diagram: the original link
/// together with the tracked curve carrying the given S³ coefficient,
/// i.e. the bordered matrix [[M, V],[Vᵀ, coeff]].
pub fn extended_diagram_h1(
    link: &FramedLinkData,
    v_k: &LinkingVector,
    coeff: &BigInt,
) -> Result<H1, Error> {
    let n = link.n();
    if v_k.v.len() != n {
        return Err(Error::dimension(format!(
            "linking vector of {} has length {}, matrix is {n}x{n}",
            v_k.owner,
            v_k.v.len()
        )));
    }
    let mut b = IntMat::zero(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, link.matrix.get(i, j).clone());
        }
        b.set(i, n, v_k.v[i].clone());
        b.set(n, i, v_k.v[i].clone());
    }
    b.set(n, n, coeff.clone());
    h1_invariant_factors(&b)
}
