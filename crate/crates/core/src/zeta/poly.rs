//! Dense polynomials in one variable `X` and square matrices of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients from degree 0 upward, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    /// `c X^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x_pow(k: usize) -> Self {
        Self::monomial(T::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Power series of `self / (1 - X^n)` up to `X^max`.
    pub fn series_over_one_minus_x_pow(&self, n: usize, max: usize) -> Vec<T> {
        let mut out = vec![T::zero(); max + 1];
        for k in 0..=max {
            let mut acc = self.coeff(k);
            if k >= n {
                acc = acc + out[k - n].clone();
            }
            out[k] = acc;
        }
        out
    }

    /// Substitutes an integer for `X`.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "{abs}X")?,
                (_, true) => write!(f, "X^{k}")?,
                (_, false) => write!(f, "{abs}X^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Square matrix of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<T: Scalar> {
    entries: Vec<Vec<Poly<T>>>,
}

impl<T: Scalar> PolyMatrix<T> {
    pub fn new(entries: Vec<Vec<Poly<T>>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("polynomial matrix must be square and nonempty".into()));
        }
        Ok(PolyMatrix { entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Poly<T>) -> Self {
        PolyMatrix { entries: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() }
    }

    /// `c I`.
    pub fn scalar(n: usize, c: &Poly<T>) -> Self {
        Self::from_fn(n, |i, j| if i == j { c.clone() } else { Poly::zero() })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<T> {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<T>) {
        self.entries[i][j] = p;
    }

    pub fn row_sum(&self, i: usize) -> Poly<T> {
        self.entries[i].iter().fold(Poly::zero(), |acc, p| &acc + p)
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        let n = self.size();
        if o.size() != n {
            return Err(Error::Dimension(format!("{n}x{n} times {}x{}", o.size(), o.size())));
        }
        Ok(Self::from_fn(n, |i, j| (0..n).fold(Poly::zero(), |acc, k| &acc + &(&self.entries[i][k] * &o.entries[k][j]))))
    }

    /// Determinant by cofactor expansion; sizes here are tiny.
    pub fn det(&self) -> Poly<T> {
        let n = self.size();
        if n == 1 {
            return self.entries[0][0].clone();
        }
        let mut acc = Poly::zero();
        for j in 0..n {
            let minor = Self::from_fn(n - 1, |r, c| self.entries[r + 1][if c < j { c } else { c + 1 }].clone());
            let term = &self.entries[0][j] * &minor.det();
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = Poly<BigInt>;

    #[test]
    fn canonical_form() {
        assert_eq!(P::from_i64(&[1, 0, 0]), P::one());
        assert_eq!(P::from_i64(&[0, 0]).degree(), None);
        assert_eq!(P::x_pow(3).degree(), Some(3));
    }

    #[test]
    fn arithmetic() {
        let a = P::from_i64(&[1, 1]);
        let b = P::from_i64(&[1, -1]);
        assert_eq!(&a * &b, P::from_i64(&[1, 0, -1]));
        assert_eq!(&a - &a, P::zero());
        assert_eq!(a.to_string(), "1 + X");
        assert_eq!(P::from_i64(&[0, -2, 0, 1]).to_string(), "-2X + X^3");
    }

    #[test]
    fn series() {
        let p = P::from_i64(&[1, 1, 1]);
        assert_eq!(p.series_over_one_minus_x_pow(3, 6), vec![BigInt::from(1); 7]);
        let q = P::from_i64(&[1, 0, 1, 0, 1]);
        let expect: Vec<BigInt> = [1, 0, 1, 1, 1, 1, 1].into_iter().map(BigInt::from).collect();
        assert_eq!(q.series_over_one_minus_x_pow(3, 6), expect);
    }

    #[test]
    fn determinant() {
        let x = P::x_pow(1);
        let m = PolyMatrix::new(vec![vec![P::one(), -&x], vec![-&x, P::one()]]).unwrap();
        assert_eq!(m.det(), P::from_i64(&[1, 0, -1]));
    }

    fn poly() -> impl Strategy<Value = P> {
        prop::collection::vec(-5i64..5, 0..6).prop_map(|c| P::from_i64(&c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in -4i64..4) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }
    }
}
