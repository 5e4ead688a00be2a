//! Linear algebra over the rationals, used where integer elimination is not
//! enough: inverses, kernels, and membership solves.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmat::matrix::Matrix;
use crate::scalar::Scalar;

type Q<T> = Ratio<T>;

fn to_q<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<Q<T>>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| Q::from_integer(x.clone())).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref<T: Scalar>(a: &mut [Vec<Q<T>>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let delta = f.clone() * a[r][j].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact inverse as a rational matrix (row-major rows).
pub fn inverse<T: Scalar>(m: &Matrix<T>) -> Result<Vec<Vec<Q<T>>>> {
    if !m.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut aug = to_q(m);
    for (i, row) in aug.iter_mut().enumerate() {
        row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
    }
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// The inverse scaled to an integer matrix: returns `(den, M)` with
/// `m^{-1} = M / den`, `den > 0` minimal.
pub fn integral_inverse<T: Scalar>(m: &Matrix<T>) -> Result<(T, Matrix<T>)> {
    let inv = inverse(m)?;
    let den = inv.iter().flatten().fold(T::one(), |l, q| l.lcm(q.denom()));
    let rows = inv
        .iter()
        .map(|row| row.iter().map(|q| q.numer().clone() * (den.clone() / q.denom().clone())).collect())
        .collect();
    Ok((den, Matrix::from_rows(rows)?))
}

/// A basis of the rational kernel `{x : m x = 0}`, each vector scaled to a
/// primitive integer vector.
pub fn kernel<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut a = to_q(m);
    let pivots = rref(&mut a);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::<T>::zero(); cols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Clears denominators and divides out the content.
pub fn primitive<T: Scalar>(v: &[Q<T>]) -> Vec<T> {
    let den = v.iter().fold(T::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<T> = v.iter().map(|q| q.numer().clone() * (den.clone() / q.denom().clone())).collect();
    let g = ints.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / g.clone()).collect()
}

/// Solves `m x = b` for square nonsingular `m`.
pub fn solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Result<Vec<Q<T>>> {
    let inv = inverse(m)?;
    Ok(inv
        .iter()
        .map(|row| {
            row.iter().zip(b).fold(Q::zero(), |acc, (r, x)| acc + r.clone() * Q::from_integer(x.clone()))
        })
        .collect())
}
