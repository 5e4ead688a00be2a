//! The exact integer scalar every algorithm in this crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact, signed, Euclidean integer type.
///
/// `BigInt` is the default (see the aliases at the crate root); machine
/// integers such as `i64` and `i128` satisfy the bound too and are useful for
/// the enumeration hot loops when the magnitudes are known to be small.
/// Machine integers are not overflow-checked in release builds, so only use
/// them where entries stay bounded by the lattice index.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits every scalar type")
    }

    fn from_count(v: u64) -> Self {
        Self::from_u64(v).expect("count does not fit the scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// `base^exp` by repeated squaring.
pub fn pow<T: Scalar>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    acc
}

/// The `p`-adic valuation of a nonzero `x`.
pub fn valuation<T: Scalar>(x: &T, p: &T) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// Whether `x` is a `p`-power (including `p^0 = 1`). Returns the exponent.
pub fn log_exact<T: Scalar>(x: &T, p: &T) -> Option<u32> {
    if !x.is_positive() {
        return None;
    }
    let v = valuation(x, p);
    if pow(p, v) == *x {
        Some(v)
    } else {
        None
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            out.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

pub fn valuation_u64(mut m: u64, p: u64) -> u32 {
    assert!(m != 0 && p > 1);
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// The exact integer `k` with `k^e == m`, if there is one.
pub fn exact_root(m: u64, e: u32) -> Option<u64> {
    if m <= 1 || e == 1 {
        return Some(m);
    }
    let mut k = 1u64;
    loop {
        match k.checked_pow(e) {
            Some(v) if v == m => return Some(k),
            Some(v) if v < m => k += 1,
            _ => return None,
        }
    }
}
