//! Full-rank lattices in `Z^n`, compared through their Hermite normal form.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmat::hnf::hnf;
use crate::exactmat::matrix::Matrix;
use crate::exactmat::rational::integral_inverse;
use crate::scalar::Scalar;

/// A full-rank lattice given by a square basis matrix whose columns generate
/// it, together with its cached canonical form.
#[derive(Clone)]
pub struct Lattice<T> {
    basis: Matrix<T>,
    hnf: Matrix<T>,
}

impl<T: Scalar> Lattice<T> {
    /// `basis` must be square and nonsingular.
    pub fn new(basis: Matrix<T>) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::Dimension(format!(
                "lattice basis must be square, got {}x{}",
                basis.rows(),
                basis.cols()
            )));
        }
        let hnf = hnf(&basis)?;
        Ok(Lattice { basis, hnf })
    }

    /// The lattice spanned by an arbitrary full-row-rank generator matrix.
    pub fn from_generators(gens: &Matrix<T>) -> Result<Self> {
        let hnf = hnf(gens)?;
        Ok(Lattice { basis: hnf.clone(), hnf })
    }

    pub(crate) fn from_hnf_unchecked(hnf: Matrix<T>) -> Self {
        debug_assert!(crate::exactmat::hnf::is_hnf(&hnf));
        Lattice { basis: hnf.clone(), hnf }
    }

    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        Self::from_hnf_unchecked(Matrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.hnf.rows()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn hnf(&self) -> &Matrix<T> {
        &self.hnf
    }

    /// `|Z^n : L|`, the absolute determinant.
    pub fn det(&self) -> T {
        (0..self.dim()).fold(T::one(), |acc, i| acc * self.hnf[(i, i)].clone())
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        let n = self.dim();
        assert_eq!(v.len(), n, "vector length must match the lattice dimension");
        let mut w = v.to_vec();
        let mut coords = vec![T::zero(); n];
        for i in (0..n).rev() {
            if w[i].is_zero() {
                continue;
            }
            let (q, r) = w[i].div_rem(&self.hnf[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            for k in 0..=i {
                let h = &self.hnf[(k, i)];
                if !h.is_zero() {
                    w[k] = w[k].clone() - q.clone() * h.clone();
                }
            }
            coords[i] = q;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!("lattices of rank {} and {}", self.dim(), other.dim())));
        }
        Ok(())
    }

    /// Whether `self ⊆ sup`.
    pub fn is_sublattice_of(&self, sup: &Self) -> Result<bool> {
        self.check_dim(sup)?;
        Ok((0..self.dim()).all(|j| sup.contains(&self.hnf.col(j))))
    }

    /// `|self : sub|`; errors unless `sub ⊆ self`.
    pub fn index_of(&self, sub: &Self) -> Result<T> {
        if !sub.is_sublattice_of(self)? {
            return Err(Error::NotSublattice);
        }
        Ok(sub.det() / self.det())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Self::from_generators(&self.hnf.hconcat(&other.hnf)?)
    }

    /// Intersection through the dual lattices: `(A ∩ B)^# = A^# + B^#`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self == other {
            return Ok(self.clone());
        }
        let (da, xa) = integral_inverse(&self.hnf)?;
        let (db, xb) = integral_inverse(&other.hnf)?;
        let e = da.lcm(&db);
        // e * dual(A) has basis (e/da) * xa^T, likewise for B
        let dual_a = xa.transpose().scale(&(e.clone() / da));
        let dual_b = xb.transpose().scale(&(e.clone() / db));
        let s = hnf(&dual_a.hconcat(&dual_b)?)?;
        let (ds, y) = integral_inverse(&s)?;
        let scaled = y.transpose().scale(&e);
        let rows = (0..scaled.rows())
            .map(|i| {
                scaled
                    .row(i)
                    .iter()
                    .map(|x| {
                        let (q, r) = x.div_rem(&ds);
                        if r.is_zero() {
                            Ok(q)
                        } else {
                            Err(Error::Internal("intersection basis is not integral".into()))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_generators(&Matrix::from_rows(rows)?)
    }

    /// `c L` for a positive integer `c`.
    pub fn scale(&self, c: &T) -> Self {
        assert!(c.is_positive(), "lattices scale by positive integers");
        Lattice { basis: self.basis.scale(c), hnf: self.hnf.scale(c) }
    }

    /// `c L` for a positive rational `c`, with denominators cleared: returns
    /// `(M, den)` such that `c L = (1/den) M` with `den` minimal.
    pub fn scale_rational(&self, c: &Ratio<T>) -> (Self, T) {
        assert!(c.numer().is_positive() && c.denom().is_positive());
        let m = self.hnf.scale(c.numer());
        let g = m.content().gcd(c.denom());
        let den = c.denom().clone() / g.clone();
        (Self::from_hnf_unchecked(m.map(|x| x.clone() / g.clone())), den)
    }

    /// Largest integer `c` with `L ⊆ c Z^n`.
    pub fn content(&self) -> T {
        self.hnf.content()
    }

    /// `L / content(L)`.
    pub fn primitive(&self) -> Self {
        let c = self.content();
        Self::from_hnf_unchecked(self.hnf.map(|x| x.clone() / c.clone()))
    }

    /// The positive rational `c` with `other = c * self`, if one exists.
    pub fn scalar_multiple_to(&self, other: &Self) -> Result<Option<Ratio<T>>> {
        self.check_dim(other)?;
        if self.primitive() == other.primitive() {
            Ok(Some(Ratio::new(other.content(), self.content())))
        } else {
            Ok(None)
        }
    }

    /// Stability under `g`: `g L ⊆ L`.
    pub fn is_stable_under(&self, g: &Matrix<T>) -> bool {
        (0..self.dim()).all(|j| self.contains(&g.mul_vec(&self.hnf.col(j))))
    }
}

impl<T: Scalar> PartialEq for Lattice<T> {
    fn eq(&self, other: &Self) -> bool {
        self.hnf == other.hnf
    }
}

impl<T: Scalar> Eq for Lattice<T> {}

impl<T: Scalar> Hash for Lattice<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.hnf.hash(state)
    }
}

/// Lexicographic on HNF entries.
impl<T: Scalar> Ord for Lattice<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim().cmp(&other.dim()).then_with(|| self.hnf.entries().cmp(other.hnf.entries()))
    }
}

impl<T: Scalar> PartialOrd for Lattice<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Serialized as its Hermite normal form.
impl<T: Scalar> Serialize for Lattice<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.hnf.serialize(s)
    }
}

impl<T: Scalar> fmt::Debug for Lattice<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.hnf)
    }
}

pub fn lattice_index<T: Scalar>(sup: &Lattice<T>, sub: &Lattice<T>) -> Result<T> {
    sup.index_of(sub)
}

pub fn is_sublattice<T: Scalar>(sub: &Lattice<T>, sup: &Lattice<T>) -> Result<bool> {
    sub.is_sublattice_of(sup)
}

pub fn lattice_intersect<T: Scalar>(a: &Lattice<T>, b: &Lattice<T>) -> Result<Lattice<T>> {
    a.intersect(b)
}

pub fn lattice_sum<T: Scalar>(a: &Lattice<T>, b: &Lattice<T>) -> Result<Lattice<T>> {
    a.sum(b)
}

/// `Some(c)` with `b = c a`.
pub fn is_scalar_multiple<T: Scalar>(a: &Lattice<T>, b: &Lattice<T>) -> Result<Option<Ratio<T>>> {
    a.scalar_multiple_to(b)
}
