//! Smith normal form over the integers.
//!
//! Deterministic pivoting: smallest nonzero absolute value in the remaining
//! submatrix, ties broken by row-major position. The transforms are
//! accumulated so that `u * m * w = s` exactly, with `u`, `w` unimodular.

use super::intmat::IntMat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub struct SnfResult {
    pub u: IntMat,
    pub w: IntMat,
    pub s: IntMat,
}

impl SnfResult {
    /// Diagonal entries of `s`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }
}

fn smallest_nonzero(a: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a.get(i, j).is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if a.get(i, j).abs() < a.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMat) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMat::identity(rows);
    let mut w = IntMat::identity(cols);
    let k = rows.min(cols);

    for t in 0..k {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        w.swap_cols(t, pj);

        loop {
            let mut dirty = false;

            // clear column t below the pivot
            for i in (t + 1)..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t) / a.get(t, t);
                if !q.is_zero() {
                    a.row_sub_mul(i, t, &q);
                    u.row_sub_mul(i, t, &q);
                }
                if !a.get(i, t).is_zero() {
                    // remainder is strictly smaller than the pivot; promote it
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // clear row t right of the pivot
            for j in (t + 1)..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j) / a.get(t, t);
                if !q.is_zero() {
                    a.col_sub_mul(j, t, &q);
                    w.col_sub_mul(j, t, &q);
                }
                if !a.get(t, j).is_zero() {
                    a.swap_cols(t, j);
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // force the pivot to divide the rest of the submatrix; adding the
            // offending row re-enters the clearing loop with a smaller pivot
            let piv = a.get(t, t).clone();
            let mut divides_all = true;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if !(a.get(i, j) % &piv).is_zero() {
                        a.row_add(t, i);
                        u.row_add(t, i);
                        divides_all = false;
                        break 'scan;
                    }
                }
            }
            if divides_all {
                break;
            }
        }
    }

    for i in 0..k {
        if a.get(i, i).is_negative() {
            a.negate_row(i);
            u.negate_row(i);
        }
    }

    SnfResult { u, w, s: a }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_identities(m: &IntMat, r: &SnfResult) {
        assert_eq!(r.u.mul(m).unwrap().mul(&r.w).unwrap(), r.s, "UMW != S");
        assert!(r.u.is_unimodular(), "U not unimodular");
        assert!(r.w.is_unimodular(), "W not unimodular");
        let d = r.diagonal();
        for i in 0..d.len() {
            assert!(!d[i].is_negative());
            if i + 1 < d.len() && !d[i].is_zero() {
                assert!((&d[i + 1] % &d[i]).is_zero(), "chain broken at {i}: {d:?}");
            }
            if d[i].is_zero() && i + 1 < d.len() {
                assert!(d[i + 1].is_zero(), "zero before nonzero in {d:?}");
            }
        }
        // off-diagonal of S is zero
        for i in 0..r.s.rows() {
            for j in 0..r.s.cols() {
                if i != j {
                    assert!(r.s.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_is_a_fixed_point() {
        let m = IntMat::identity(3);
        let r = smith_normal_form(&m);
        check_identities(&m, &r);
        assert_eq!(r.s, IntMat::identity(3));
        assert_eq!(r.u, IntMat::identity(3));
        assert_eq!(r.w, IntMat::identity(3));
    }

    #[test]
    fn hyperbolic_pair() {
        let m = IntMat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let r = smith_normal_form(&m);
        check_identities(&m, &r);
        assert_eq!(r.s, IntMat::identity(2));
    }

    #[test]
    fn coprime_diagonal_collects_into_lcm() {
        let m = IntMat::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let r = smith_normal_form(&m);
        check_identities(&m, &r);
        assert_eq!(r.s, IntMat::from_i64_rows(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn zero_and_rectangular_inputs() {
        for m in [
            IntMat::zero(0, 0),
            IntMat::zero(2, 3),
            IntMat::from_i64_rows(&[&[4, 6], &[2, 2], &[0, 8]]),
            IntMat::from_i64_rows(&[&[0, 0, 5]]),
        ] {
            let r = smith_normal_form(&m);
            check_identities(&m, &r);
        }
    }

    #[test]
    fn negative_determinant_still_nonnegative_diagonal() {
        let m = IntMat::from_i64_rows(&[&[0, 2], &[2, 0]]);
        let r = smith_normal_form(&m);
        check_identities(&m, &r);
        assert_eq!(r.s, IntMat::from_i64_rows(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn torsion_example() {
        let m = IntMat::from_i64_rows(&[&[2, 4], &[4, 2]]);
        let r = smith_normal_form(&m);
        check_identities(&m, &r);
        assert_eq!(r.s, IntMat::from_i64_rows(&[&[2, 0], &[0, 6]]));
    }

    #[test]
    fn one_by_one_sign_normalized() {
        let m = IntMat::from_i64_rows(&[&[-7]]);
        let r = smith_normal_form(&m);
        check_identities(&m, &r);
        assert_eq!(*r.s.get(0, 0), BigInt::from(7));
    }
}
