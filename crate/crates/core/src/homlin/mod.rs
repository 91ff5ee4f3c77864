//! Exact integer linear algebra over a surgery presentation: the linking
//! matrix, Smith normal form, integer solvability of M·X = V, and the first
//! homology of the presented manifold.
//!
//! Everything here is arbitrary-precision; no floating point.

mod intmat;
mod snf;

pub use intmat::IntMat;
pub use snf::{smith_normal_form, SnfResult};

use crate::diagram::{Diagram, Role};
use crate::error::Error;
use crate::jsonint;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Names and linking matrix of the surgery components, in canonical
/// (name-sorted) order. The matrix is symmetric with the framing
/// coefficients on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedLinkData {
    pub names: Vec<String>,
    pub matrix: IntMat,
}

impl FramedLinkData {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// S³ linking numbers of one tracked curve against each surgery component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkingVector {
    pub owner: String,
    #[serde(with = "jsonint::biglist")]
    pub v: Vec<BigInt>,
}

/// An integer solution of M·X = V together with a basis of ker M, so a
/// caller can enumerate every other solution X + z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionVector {
    #[serde(with = "jsonint::biglist")]
    pub x: Vec<BigInt>,
    #[serde(with = "jsonint::biglistlist")]
    pub kernel_basis: Vec<Vec<BigInt>>,
}

/// Invariant factors of coker M: free rank plus the torsion factors > 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1 {
    pub free_rank: usize,
    #[serde(with = "jsonint::biglist")]
    pub torsion: Vec<BigInt>,
    pub is_homology_sphere: bool,
}

/// Assembles the linking matrix of the diagram's surgery components, in
/// canonical component order: framings on the diagonal, pairwise S³ linking
/// numbers elsewhere.
pub fn linking_matrix(d: &Diagram) -> Result<FramedLinkData, Error> {
    let names: Vec<String> = d
        .components
        .iter()
        .filter(|c| c.role == Role::Surgery)
        .map(|c| c.name.clone())
        .collect();
    let n = names.len();
    let mut m = IntMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let entry = if i == j {
                let c = d.component(&names[i]).expect("name comes from diagram");
                BigInt::from(c.framing.ok_or_else(|| {
                    Error::validation(format!("surgery component {} has no framing", names[i]))
                })?)
            } else {
                BigInt::from(crate::diagram::linking_number_s3(d, &names[i], &names[j])?)
            };
            m.set(i, j, entry);
        }
    }
    Ok(FramedLinkData { names, matrix: m })
}

/// S³ linking numbers of `curve` against each surgery component, in the
/// order fixed by `link`.
pub fn linking_vector(
    d: &Diagram,
    link: &FramedLinkData,
    curve: &str,
) -> Result<LinkingVector, Error> {
    let v = link
        .names
        .iter()
        .map(|li| crate::diagram::linking_number_s3(d, curve, li).map(BigInt::from))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinkingVector {
        owner: curve.to_string(),
        v,
    })
}

/// Solves M·X = V over the integers.
///
/// Returns `None` when no integer solution exists (the tracked curve is not
/// null-homologous in the surgered manifold). The particular solution is
/// canonical: after the Smith change of basis, free coordinates are zero.
pub fn solve_integer_system(m: &IntMat, v: &[BigInt]) -> Result<Option<SolutionVector>, Error> {
    if m.rows() != v.len() {
        return Err(Error::dimension(format!(
            "matrix is {}x{} but vector has length {}",
            m.rows(),
            m.cols(),
            v.len()
        )));
    }
    let snf = smith_normal_form(m);
    let b = snf.u.mul_vec(v).expect("u is rows x rows");
    let k = m.rows().min(m.cols());
    let mut y = vec![BigInt::zero(); m.cols()];
    for i in 0..m.rows() {
        let d = if i < k {
            snf.s.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !b[i].is_zero() {
                return Ok(None);
            }
            // free coordinate: canonical choice zero
        } else {
            if !(&b[i] % &d).is_zero() {
                return Ok(None);
            }
            y[i] = &b[i] / &d;
        }
    }
    let x = snf.w.mul_vec(&y).expect("w is cols x cols");
    let kernel_basis = (0..m.cols())
        .filter(|&i| i >= k || snf.s.get(i, i).is_zero())
        .map(|i| snf.w.col(i))
        .collect();
    Ok(Some(SolutionVector { x, kernel_basis }))
}

/// Invariant factors of ℤⁿ/Mℤⁿ.
pub fn h1_invariant_factors(m: &IntMat) -> Result<H1, Error> {
    if !m.is_square() {
        return Err(Error::dimension(format!(
            "presentation matrix must be square, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let snf = smith_normal_form(m);
    let d = snf.diagonal();
    let free_rank = d.iter().filter(|x| x.is_zero()).count();
    let torsion: Vec<BigInt> = d
        .into_iter()
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect();
    let is_homology_sphere = free_rank == 0 && torsion.is_empty();
    Ok(H1 {
        free_rank,
        torsion,
        is_homology_sphere,
    })
}
