//! Integer polynomials in one variable t, coefficients lowest degree first.

use crate::error::Error;
use crate::jsonint::{bigint_to_number, number_to_bigint};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// coeffs[k] is the coefficient of t^k; the last entry is nonzero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact quotient self / d. Fraction-free elimination only ever divides
    /// by earlier pivots, so failure here means a corrupted computation.
    pub fn div_exact(&self, d: &Self) -> Result<Self, Error> {
        if d.is_zero() {
            return Err(Error::internal("polynomial division by zero".to_string()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs.last().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot: Vec<BigInt> = Vec::new();
        while rem.len() > dd {
            let rl = rem.last().expect("nonzero length").clone();
            if rl.is_zero() {
                rem.pop();
                quot.push(BigInt::zero());
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&rl, lead);
            if !r.is_zero() {
                return Err(Error::internal(
                    "inexact polynomial division (leading coefficient)".to_string(),
                ));
            }
            let shift = rem.len() - 1 - dd;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * c;
            }
            debug_assert!(rem.last().expect("length unchanged").is_zero());
            rem.pop();
            quot.push(q);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::internal(
                "inexact polynomial division (remainder)".to_string(),
            ));
        }
        quot.reverse();
        Ok(Self::new(quot))
    }

    /// ≐ normal form: divide out the largest power of t, then force a
    /// positive leading coefficient.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let v = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        let mut coeffs: Vec<BigInt> = self.coeffs[v..].to_vec();
        if coeffs.last().expect("nonzero").is_negative() {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        IntPolynomial { coeffs }
    }

    /// t^deg · p(1/t): the coefficient sequence reversed.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// Value at t = 1.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(bigint_to_number))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        let coeffs = nums
            .iter()
            .map(|n| number_to_bigint(n).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

/// Exact determinant over ℤ[t] by fraction-free elimination. Rows are a
/// square matrix of polynomials.
pub fn polynomial_determinant(rows: &[Vec<IntPolynomial>]) -> Result<IntPolynomial, Error> {
    let n = rows.len();
    for r in rows {
        if r.len() != n {
            return Err(Error::dimension(format!(
                "polynomial determinant needs a square matrix, got a row of {} in size {n}",
                r.len()
            )));
        }
    }
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    let mut m: Vec<Vec<IntPolynomial>> = rows.to_vec();
    let mut sign = 1i32;
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(IntPolynomial::zero());
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}
