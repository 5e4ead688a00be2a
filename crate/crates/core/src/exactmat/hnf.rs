//! Column-style Hermite normal form.
//!
//! The canonical basis `H` of a full-rank lattice in `Z^n` (columns generate)
//! is upper triangular with positive diagonal, and every entry to the right of
//! a pivot lies in `[0, pivot)`. Two generator sets span the same lattice iff
//! their forms are identical.

use crate::error::{Error, Result};
use crate::exactmat::matrix::Matrix;
use crate::scalar::Scalar;

fn axpy<T: Scalar>(dst: &mut [T], q: &T, src: &[T]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.clone() - q.clone() * s.clone();
        }
    }
}

/// HNF of the lattice spanned by the columns of `m` (`n x k`, rank `n`).
pub fn hnf<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let n = m.rows();
    let mut active: Vec<Vec<T>> = m.columns();
    let mut pivots: Vec<Option<Vec<T>>> = vec![None; n];

    for i in (0..n).rev() {
        loop {
            let nz: Vec<usize> = (0..active.len()).filter(|&c| !active[c][i].is_zero()).collect();
            match nz.len() {
                0 => return Err(Error::Singular),
                1 => {
                    let mut col = active.swap_remove(nz[0]);
                    if col[i].is_negative() {
                        col.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    pivots[i] = Some(col);
                    break;
                }
                _ => {
                    let piv = *nz.iter().min_by_key(|&&c| active[c][i].abs()).unwrap();
                    let pcol = active[piv].clone();
                    for &c in nz.iter().filter(|&&c| c != piv) {
                        let q = active[c][i].clone() / pcol[i].clone();
                        axpy(&mut active[c], &q, &pcol);
                    }
                }
            }
        }
    }

    let mut cols: Vec<Vec<T>> = pivots.into_iter().map(|c| c.expect("pivot for every row")).collect();
    reduce_upper(&mut cols);
    Matrix::from_cols(&cols)
}

/// Reduces the off-diagonal entries of an upper triangular column basis into
/// `[0, pivot)`, row by row from the bottom.
pub(crate) fn reduce_upper<T: Scalar>(cols: &mut [Vec<T>]) {
    let n = cols.len();
    for i in (0..n).rev() {
        let (left, right) = cols.split_at_mut(i + 1);
        let pcol = &left[i];
        for col in right.iter_mut() {
            let q = col[i].div_floor(&pcol[i]);
            if !q.is_zero() {
                axpy(col, &q, pcol);
            }
        }
    }
}

pub fn is_hnf<T: Scalar>(h: &Matrix<T>) -> bool {
    let n = h.rows();
    h.is_square()
        && (0..n).all(|i| {
            h[(i, i)].is_positive()
                && (0..i).all(|j| h[(i, j)].is_zero())
                && (i + 1..n).all(|j| !h[(i, j)].is_negative() && h[(i, j)] < h[(i, i)])
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Matrix<BigInt>;

    #[test]
    fn already_reduced_is_fixed() {
        let m = M::from_i64(&[&[2, 0], &[0, 2]]);
        assert_eq!(hnf(&m).unwrap(), m);
        assert_eq!(hnf(&M::identity(4)).unwrap(), M::identity(4));
    }

    #[test]
    fn small_example() {
        // (3,0) = -2*(-1,-1) + (1,-2) and (1,1) = -(-1,-1); conversely
        // (-1,-1) = -(1,1) and (1,-2) = (3,0) - 2*(1,1).
        let m = M::from_i64(&[&[-1, 1], &[-1, -2]]);
        let h = hnf(&m).unwrap();
        assert_eq!(h, M::from_i64(&[&[3, 1], &[0, 1]]));
        assert!(is_hnf(&h));
        assert_eq!(h.det().unwrap(), BigInt::from(3));
    }

    #[test]
    fn rectangular_generators() {
        let m = M::from_i64(&[&[2, 3, 0], &[0, 0, 5]]);
        assert_eq!(hnf(&m).unwrap(), M::from_i64(&[&[1, 0], &[0, 5]]));
    }

    #[test]
    fn singular_input() {
        let m = M::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(hnf(&m).unwrap_err(), Error::Singular);
    }

    #[test]
    fn idempotent() {
        let m = M::from_i64(&[&[4, -7, 1], &[2, 9, -3], &[0, 5, 8]]);
        let h = hnf(&m).unwrap();
        assert_eq!(hnf(&h).unwrap(), h);
        assert_eq!(h.det().unwrap(), num_traits::Signed::abs(&m.det().unwrap()));
    }
}
