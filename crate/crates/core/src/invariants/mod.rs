//! Seifert matrices over a surgered manifold and their invariants.
//!
//! The Seifert matrix entry for basis curves c_i, c_j is the S³ linking
//! number of c_i with the push-off c_j⁺ corrected by X_iᵀV_j; push-offs
//! link the surgery components exactly as their originals do, so V_{c⁺}
//! is V_c. Signature and Alexander polynomial then follow from A by exact
//! arithmetic.

mod poly;

pub use poly::{polynomial_determinant, IntPolynomial};

use crate::diagram::{Diagram, Strand};
use crate::error::Error;
use crate::homlin::{solve_integer_system, FramedLinkData, IntMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// One generator of the surface's first homology, with its linking data:
/// `v` is the linking vector, `x` a solution of Mx = v (solved on demand
/// when absent), and `lk_s3_row` maps each curve name to the S³ linking
/// number with that curve's push-off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCurve {
    pub name: String,
    #[serde(with = "crate::jsonint::biglist")]
    pub v: Vec<BigInt>,
    #[serde(
        default,
        with = "crate::jsonint::optbiglist",
        skip_serializing_if = "Option::is_none"
    )]
    pub x: Option<Vec<BigInt>>,
    #[serde(with = "crate::jsonint::bigmap")]
    pub lk_s3_row: BTreeMap<String, BigInt>,
}

/// Seifert matrix, with a flag recording whether the basis intersects like
/// a symplectic basis (det(A − Aᵀ) = 1). A false flag is a warning for the
/// caller to surface, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    a: IntMat,
    symplectic: bool,
}

impl SeifertMatrix {
    pub fn new(a: IntMat) -> Result<Self, Error> {
        if !a.is_square() {
            return Err(Error::dimension(format!(
                "Seifert matrix must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let skew = a.sub(&a.transpose())?;
        let symplectic = skew.determinant()?.is_one();
        Ok(SeifertMatrix { a, symplectic })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.a
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn is_symplectic_basis(&self) -> bool {
        self.symplectic
    }
}

impl Serialize for SeifertMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.a.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = IntMat::deserialize(d)?;
        SeifertMatrix::new(a).map_err(serde::de::Error::custom)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Assembles A[i][j] = lk_s3_row_i[name_j] − X_iᵀV_j over the given curve
/// order. Supplied solutions are checked against MX = V; missing ones are
/// solved, failing with a not-null-homologous error when impossible.
pub fn seifert_matrix_in_y(
    curves: &[BasisCurve],
    link: &FramedLinkData,
) -> Result<SeifertMatrix, Error> {
    let n = link.n();
    let g = curves.len();
    for (i, c) in curves.iter().enumerate() {
        if c.v.len() != n {
            return Err(Error::dimension(format!(
                "curve {} has a linking vector of length {}, matrix is {n}x{n}",
                c.name,
                c.v.len()
            )));
        }
        if curves[..i].iter().any(|p| p.name == c.name) {
            return Err(Error::validation(format!(
                "duplicate basis curve name {}",
                c.name
            )));
        }
    }
    let mut xs: Vec<Vec<BigInt>> = Vec::with_capacity(g);
    for c in curves {
        match &c.x {
            Some(x) => {
                if x.len() != n {
                    return Err(Error::dimension(format!(
                        "curve {} has a solution of length {}, matrix is {n}x{n}",
                        c.name,
                        x.len()
                    )));
                }
                if link.matrix.mul_vec(x)? != c.v {
                    return Err(Error::validation(format!(
                        "supplied solution for curve {} does not satisfy MX = V",
                        c.name
                    )));
                }
                xs.push(x.clone());
            }
            None => match solve_integer_system(&link.matrix, &c.v)? {
                Some(sol) => xs.push(sol.x),
                None => {
                    return Err(Error::not_null_homologous(format!(
                        "basis curve {} has no integer solution of MX = V",
                        c.name
                    )))
                }
            },
        }
    }
    let mut a = IntMat::zero(g, g);
    for i in 0..g {
        for j in 0..g {
            let lk = curves[i].lk_s3_row.get(&curves[j].name).ok_or_else(|| {
                Error::validation(format!(
                    "curve {} has no S³ linking entry for {}",
                    curves[i].name, curves[j].name
                ))
            })?;
            a.set(i, j, lk - dot(&xs[i], &curves[j].v));
        }
    }
    SeifertMatrix::new(a)
}

/// Signature of a symmetric integer matrix by congruence diagonalization
/// over ℚ. Zero eigendirections contribute nothing.
pub fn signature_symmetric(m: &IntMat) -> Result<i64, Error> {
    if !m.is_square() {
        return Err(Error::dimension(format!(
            "signature needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_symmetric() {
        return Err(Error::validation(
            "signature needs a symmetric matrix".to_string(),
        ));
    }
    let n = m.rows();
    let mut b: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    let mut i = 0;
    while i < n {
        if b[i][i].is_zero() {
            let Some(j) = (i + 1..n).find(|&j| !b[j][i].is_zero()) else {
                // row and column i vanish on the remaining block
                i += 1;
                continue;
            };
            if !b[j][j].is_zero() {
                b.swap(i, j);
                for row in b.iter_mut() {
                    row.swap(i, j);
                }
            } else {
                // hyperbolic pair: e_i += e_j makes the diagonal 2·b[i][j]
                let row_j = b[j].clone();
                for (t, v) in row_j.iter().enumerate() {
                    b[i][t] += v;
                }
                for row in b.iter_mut() {
                    let v = row[j].clone();
                    row[i] += v;
                }
            }
            continue;
        }
        let piv = b[i][i].clone();
        sig += if piv.is_positive() { 1 } else { -1 };
        let col: Vec<BigRational> = (i + 1..n).map(|r| b[r][i].clone()).collect();
        for (ri, r) in (i + 1..n).enumerate() {
            for (si, s) in (i + 1..n).enumerate() {
                let delta = &col[ri] * &col[si] / &piv;
                b[r][s] -= delta;
            }
            b[r][i] = BigRational::zero();
            b[i][r] = BigRational::zero();
        }
        i += 1;
    }
    Ok(sig)
}

/// Signature of A + Aᵀ.
pub fn signature(a: &SeifertMatrix) -> Result<i64, Error> {
    let sym = a.matrix().add(&a.matrix().transpose())?;
    signature_symmetric(&sym)
}

/// Canonical determinant of A − t·Aᵀ.
pub fn alexander_polynomial(a: &SeifertMatrix) -> Result<IntPolynomial, Error> {
    let g = a.size();
    let m = a.matrix();
    let rows: Vec<Vec<IntPolynomial>> = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| IntPolynomial::new(vec![m.get(i, j).clone(), -m.get(j, i)]))
                .collect()
        })
        .collect();
    Ok(polynomial_determinant(&rows)?.canonical())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusBound {
    pub lower: usize,
    pub upper: usize,
    pub tight: bool,
}

/// Genus window for the knot: ⌈deg Δ / 2⌉ from the Alexander polynomial
/// below, half the basis size from the constructed surface above.
pub fn genus_bound(delta: &IntPolynomial, a: &SeifertMatrix) -> Result<GenusBound, Error> {
    if !a.size().is_multiple_of(2) {
        return Err(Error::validation(format!(
            "Seifert matrix of odd size {} cannot come from a symplectic basis",
            a.size()
        )));
    }
    let deg = delta.degree().unwrap_or(0);
    let lower = deg.div_ceil(2);
    let upper = a.size() / 2;
    Ok(GenusBound {
        lower,
        upper,
        tight: lower == upper,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertStats {
    pub circles: usize,
    pub crossings: usize,
    pub chi: i64,
    pub genus: i64,
}

/// Statistics of the classical Seifert algorithm run on the sublink named
/// by `comps` (all components when empty): smooth every crossing internal
/// to the sublink with the orientation, count the resulting circles, and
/// derive Euler characteristic and total genus of the spanning surface.
pub fn seifert_circles(d: &Diagram, comps: &[String]) -> Result<SeifertStats, Error> {
    d.validate()?;
    let chosen: Vec<String> = if comps.is_empty() {
        d.components.iter().map(|c| c.name.clone()).collect()
    } else {
        for name in comps {
            if d.component(name).is_none() {
                return Err(Error::validation(format!("unknown component {name}")));
            }
        }
        let mut seen = comps.to_vec();
        seen.sort();
        seen.dedup();
        if seen.len() != comps.len() {
            return Err(Error::validation(
                "component set contains duplicates".to_string(),
            ));
        }
        comps.to_vec()
    };
    let owners = d.edge_owners();
    let chosen_idx: Vec<usize> = chosen
        .iter()
        .map(|n| {
            d.components
                .iter()
                .position(|c| &c.name == n)
                .expect("checked above")
        })
        .collect();
    let is_chosen = |e: &i64| chosen_idx.contains(&owners[e]);

    let in_slots = d.in_slots();
    let mut edges: Vec<i64> = Vec::new();
    for &ci in &chosen_idx {
        edges.extend(d.components[ci].edges.iter().copied());
    }

    // smoothed successor: at an internal crossing the strands exchange,
    // at a crossing with the deleted remainder they pass straight through
    let mut succ: BTreeMap<i64, i64> = BTreeMap::new();
    let mut smoothed: Vec<(i64, i64)> = Vec::new();
    for comp_idx in &chosen_idx {
        let cycle = &d.components[*comp_idx].edges;
        for (pos, &e) in cycle.iter().enumerate() {
            match in_slots.get(&e) {
                None => {
                    succ.insert(e, cycle[(pos + 1) % cycle.len()]);
                }
                Some(&(xi, strand)) => {
                    let x = &d.crossings[xi];
                    let internal = is_chosen(&x.over_in) && is_chosen(&x.under_in);
                    let next = if internal {
                        match strand {
                            Strand::Over => x.under_out,
                            Strand::Under => x.over_out,
                        }
                    } else {
                        x.out_edge(strand)
                    };
                    succ.insert(e, next);
                }
            }
        }
    }
    for x in &d.crossings {
        if is_chosen(&x.over_in) && is_chosen(&x.under_in) {
            smoothed.push((x.over_in, x.under_in));
        }
    }

    // circles of the smoothed diagram
    let mut circle_of: BTreeMap<i64, usize> = BTreeMap::new();
    let mut circles = 0usize;
    for &e in &edges {
        if circle_of.contains_key(&e) {
            continue;
        }
        let id = circles;
        circles += 1;
        let mut cur = e;
        loop {
            circle_of.insert(cur, id);
            cur = succ[&cur];
            if cur == e {
                break;
            }
        }
    }

    // each smoothed crossing is a band joining two circles
    let mut parent: Vec<usize> = (0..circles).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in &smoothed {
        let ra = find(&mut parent, circle_of[a]);
        let rb = find(&mut parent, circle_of[b]);
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut roots: Vec<usize> = (0..circles).map(|c| find(&mut parent, c)).collect();
    roots.sort_unstable();
    roots.dedup();
    let surface_pieces = if circles == 0 { 0 } else { roots.len() };

    let c = smoothed.len();
    let chi = circles as i64 - c as i64;
    let mu = chosen.len() as i64;
    let genus = (2 * surface_pieces as i64 - mu - chi) / 2;
    Ok(SeifertStats {
        circles,
        crossings: c,
        chi,
        genus,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TubeResult {
    pub tubes: i64,
    pub chi_fprime: i64,
    pub genus_delta: i64,
}

/// Euler-characteristic bookkeeping for tubing away surface–link
/// intersections: each oppositely-signed pair costs one tube.
pub fn tube_bookkeeping(chi_f: i64, intersections: &[i64]) -> Result<TubeResult, Error> {
    let mut total = 0i64;
    for (i, &c) in intersections.iter().enumerate() {
        if c < 0 {
            return Err(Error::validation(format!(
                "geometric intersection count {c} for component {i} is negative"
            )));
        }
        if c % 2 != 0 {
            return Err(Error::validation(format!(
                "geometric intersection count {c} for component {i} is odd; \
                 algebraically zero intersections pair up"
            )));
        }
        total += c;
    }
    let tubes = total / 2;
    Ok(TubeResult {
        tubes,
        chi_fprime: chi_f - 2 * tubes,
        genus_delta: tubes,
    })
}
