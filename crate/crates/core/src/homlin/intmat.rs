//! Dense arbitrary-precision integer matrices.
//!
//! Sizes here are tiny (surgery presentations at desk scale), so the layout
//! is a plain row-major `Vec<BigInt>` and every algorithm favors exactness
//! over speed.

use crate::error::Error;
use crate::jsonint::{bigint_to_number, number_to_bigint};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::dimension(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
        }
        Ok(IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for literals in tests and fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("literal rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn add(&self, other: &IntMat) -> Result<IntMat, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &IntMat) -> Result<IntMat, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dimension(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat, Error> {
        if self.cols != other.rows {
            return Err(Error::dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, Error> {
        if self.cols != v.len() {
            return Err(Error::dimension(format!(
                "cannot apply {}x{} to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= q * row[src]
    pub fn row_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(src, j);
            let v = self.get(dst, j) - delta;
            self.set(dst, j, v);
        }
    }

    /// col[dst] -= q * col[src]
    pub fn col_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.get(i, src);
            let v = self.get(i, dst) - delta;
            self.set(i, dst, v);
        }
    }

    /// row[dst] += row[src]
    pub fn row_add(&mut self, dst: usize, src: usize) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + self.get(src, j);
            self.set(dst, j, v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, Error> {
        if !self.is_square() {
            return Err(Error::dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    // Bareiss: division by the previous pivot is exact
                    debug_assert!((&num % &prev).is_zero());
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square()
            && self
                .determinant()
                .map(|d| d.abs().is_one())
                .unwrap_or(false)
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for IntMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Number>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| bigint_to_number(self.get(i, j)))
                    .collect()
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Number>>::deserialize(deserializer)?;
        let converted: Result<Vec<Vec<BigInt>>, String> = rows
            .iter()
            .map(|row| row.iter().map(number_to_bigint).collect())
            .collect();
        let converted = converted.map_err(D::Error::custom)?;
        IntMat::from_rows(converted).map_err(|e| D::Error::custom(e.to_string()))
    }
}
