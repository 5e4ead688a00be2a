//! Zeta functions of the lattices `L(d)`: the local matrices `A` and `B`,
//! local factors at each prime, the global Euler product and its Dirichlet
//! coefficients.
//!
//! Local factors are rational functions in `X = p^{-s}` with the fixed
//! denominator `1 - X^n`, stored by numerator.

pub mod poly;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{exact_root, is_prime, prime_divisors, valuation_u64, Scalar};

pub use poly::{Poly, PolyMatrix};

fn local_exponent(n: usize, p: u64) -> Result<u32> {
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    match valuation_u64(n as u64 + 1, p) {
        0 => Err(Error::Invalid(format!("{p} does not divide n+1 = {}", n + 1))),
        v => Ok(v),
    }
}

/// The tridiagonal matrix of Möbius values, of size `v+1` for `v = v_p(n+1)`.
pub fn build_a<T: Scalar>(n: usize, p: u64) -> Result<PolyMatrix<T>> {
    let v = local_exponent(n, p)? as usize;
    let x = Poly::<T>::x_pow(1);
    let mid = &Poly::one() + &Poly::x_pow(n);
    Ok(PolyMatrix::from_fn(v + 1, |i, j| {
        if i == j {
            if i == 0 || i == v {
                Poly::one()
            } else {
                mid.clone()
            }
        } else if j + 1 == i {
            -&x
        } else if i + 1 == j {
            -&Poly::x_pow(n - 1)
        } else {
            Poly::zero()
        }
    }))
}

/// Numerators of the partial zeta functions between the `L(p^i)`, over the
/// common denominator `1 - X^n`.
pub fn build_b<T: Scalar>(n: usize, p: u64) -> Result<PolyMatrix<T>> {
    let v = local_exponent(n, p)? as usize;
    Ok(PolyMatrix::from_fn(v + 1, |i, j| if j >= i { Poly::x_pow((j - i) * (n - 1)) } else { Poly::x_pow(i - j) }))
}

/// `A` times the numerators of `B` equals `(1 - X^n) I`.
pub fn verify_inverse<T: Scalar>(a: &PolyMatrix<T>, b: &PolyMatrix<T>, n: usize) -> bool {
    let den = &Poly::one() - &Poly::x_pow(n);
    a.matmul(b).is_ok_and(|prod| prod == PolyMatrix::scalar(a.size(), &den))
}

/// `numerator / (1 - X^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactor<T: Scalar> {
    pub n: usize,
    pub numerator: Poly<T>,
}

impl<T: Scalar> LocalFactor<T> {
    /// Coefficients of `X^0, ..., X^max`.
    pub fn series(&self, max: usize) -> Vec<T> {
        self.numerator.series_over_one_minus_x_pow(self.n, max)
    }
}

/// `sum_{j<=i} X^j + sum_{j=i+1}^{v} X^{(j-i)(n-1)}`.
fn factor_numerator<T: Scalar>(n: usize, i: usize, v: usize) -> Poly<T> {
    let low = (0..=i).fold(Poly::zero(), |acc, j| &acc + &Poly::x_pow(j));
    (i + 1..=v).fold(low, |acc, j| &acc + &Poly::x_pow((j - i) * (n - 1)))
}

/// Zeta function of `L(p^i)` completed at `p`.
pub fn local_factor<T: Scalar>(n: usize, p: u64, i: u32) -> Result<LocalFactor<T>> {
    let v = local_exponent(n, p)?;
    if i > v {
        return Err(Error::Invalid(format!("i = {i} exceeds v_{p}(n+1) = {v}")));
    }
    Ok(LocalFactor { n, numerator: factor_numerator(n, i as usize, v as usize) })
}

/// Local factor of `L(p^i)` at a prime not dividing `n+1`: `1 / (1 - X^n)`.
pub fn trivial_local_factor<T: Scalar>(n: usize) -> LocalFactor<T> {
    LocalFactor { n, numerator: Poly::one() }
}

/// The polynomial attached to `p` in the Euler product for `L(d)`.
pub fn closed_local_factor<T: Scalar>(n: usize, p: u64, d: u64) -> Result<Poly<T>> {
    let v = local_exponent(n, p)?;
    check_divides(n, d)?;
    Ok(factor_numerator(n, valuation_u64(d, p) as usize, v as usize))
}

/// `1 + X + ... + X^{v-1}`, the closed form printed for the Specht lattice in
/// some sources. Kept only so the verification suite can test it against the
/// enumeration; it is not used to build any zeta function.
pub fn short_specht_factor<T: Scalar>(n: usize, p: u64) -> Result<Poly<T>> {
    let v = local_exponent(n, p)?;
    Ok((0..v as usize).fold(Poly::zero(), |acc, j| &acc + &Poly::x_pow(j)))
}

fn check_divides(n: usize, d: u64) -> Result<()> {
    let m = n as u64 + 1;
    if d == 0 || !m.is_multiple_of(d) {
        return Err(Error::NotALattice { d, m });
    }
    Ok(())
}

/// `zeta_Q(ns) * prod_{p | n+1} phi_p(p^{-s})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalZeta<T: Scalar> {
    pub n: usize,
    pub d: u64,
    pub riemann_exponent: usize,
    pub local_factors: Vec<(u64, Poly<T>)>,
}

#[derive(Serialize)]
struct LocalJson {
    p: u64,
    coeffs: Vec<serde_json::Value>,
}

#[derive(Serialize)]
struct GlobalJson {
    n: usize,
    d: u64,
    riemann_exponent: usize,
    local_factors: Vec<LocalJson>,
}

fn json_int<T: Scalar>(c: &T) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => v.into(),
        None => c.to_string().into(),
    }
}

impl<T: Scalar> GlobalZeta<T> {
    pub fn to_json(&self) -> serde_json::Value {
        let g = GlobalJson {
            n: self.n,
            d: self.d,
            riemann_exponent: self.riemann_exponent,
            local_factors: self
                .local_factors
                .iter()
                .map(|(p, f)| LocalJson { p: *p, coeffs: f.coeffs().iter().map(json_int).collect() })
                .collect(),
        };
        serde_json::to_value(g).expect("serializable")
    }

    /// Terms `(u, c)` of the finite product of local polynomials, meaning
    /// `c u^{-s}`; terms with `u > bound` are dropped.
    pub fn finite_terms(&self, bound: u64) -> Vec<(u64, T)> {
        let mut terms = vec![(1u64, T::one())];
        for (p, f) in &self.local_factors {
            let mut next = Vec::new();
            for (u, c) in &terms {
                for (j, a) in f.coeffs().iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let Some(w) = p.checked_pow(j as u32).and_then(|q| q.checked_mul(*u)) else { continue };
                    if w <= bound {
                        next.push((w, c.clone() * a.clone()));
                    }
                }
            }
            terms = next;
        }
        terms.sort_by_key(|t| t.0);
        terms
    }

    /// Number of stable sublattices of index `m`.
    pub fn dirichlet_coeff(&self, m: u64) -> T {
        assert!(m >= 1, "Dirichlet coefficients start at m = 1");
        self.finite_terms(m)
            .into_iter()
            .filter(|(u, _)| m.is_multiple_of(*u) && exact_root(m / u, self.riemann_exponent as u32).is_some())
            .fold(T::zero(), |acc, (_, c)| acc + c)
    }

    pub fn to_latex(&self) -> String {
        let mut s = format!("\\zeta_{{\\mathbf{{Q}}}}({}s)", self.riemann_exponent);
        for (p, f) in &self.local_factors {
            s.push_str("\\,(");
            s.push_str(&render_in_p(*p, f, |u| format!("{u}^{{-s}}")));
            s.push(')');
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("zeta_Q({}s)", self.riemann_exponent);
        for (p, f) in &self.local_factors {
            s.push_str(" * (");
            s.push_str(&render_in_p(*p, f, |u| format!("{u}^-s")));
            s.push(')');
        }
        s
    }
}

/// `sum c_j X^j` with `X^j` printed as `(p^j)^{-s}`, the base evaluated.
fn render_in_p<T: Scalar>(p: u64, f: &Poly<T>, power: impl Fn(String) -> String) -> String {
    let mut out = String::new();
    for (j, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let base = num_bigint::BigUint::from(p).pow(j as u32);
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let abs = c.abs();
        if j == 0 {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&format!("{abs}\\cdot "));
            }
            out.push_str(&power(base.to_string()));
        }
    }
    out
}

/// The zeta function of `L(d)`; fails unless `d | n+1`.
pub fn global_zeta<T: Scalar>(n: usize, d: u64) -> Result<GlobalZeta<T>> {
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    check_divides(n, d)?;
    let local_factors = prime_divisors(n as u64 + 1)
        .into_iter()
        .map(|p| Ok((p, closed_local_factor(n, p, d)?)))
        .collect::<Result<_>>()?;
    Ok(GlobalZeta { n, d, riemann_exponent: n, local_factors })
}

/// The zeta function of the lattice spanned by the Specht basis, through its
/// identification with some `L(d)`.
pub fn specht_zeta<T: Scalar>(n: usize) -> Result<GlobalZeta<T>> {
    global_zeta(n, crate::specht::identify_specht_lattice::<T>(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt>;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn a_matrix() {
        let a = build_a::<BigInt>(2, 3).unwrap();
        let x = P::x_pow(1);
        assert_eq!(a, PolyMatrix::new(vec![vec![P::one(), -&x], vec![-&x, P::one()]]).unwrap());
        let a = build_a::<BigInt>(3, 2).unwrap();
        assert_eq!(a.get(0, 1), &P::from_i64(&[0, 0, -1]));
        assert_eq!(a.get(1, 1), &P::from_i64(&[1, 0, 0, 1]));
        assert_eq!(a.get(1, 0), &P::from_i64(&[0, -1]));
        assert_eq!(a.get(0, 2), &P::zero());
        assert!(build_a::<BigInt>(3, 3).is_err());
        for n in [2usize, 4, 6, 10] {
            let p = *prime_divisors(n as u64 + 1).last().unwrap();
            if valuation_u64(n as u64 + 1, p) == 1 {
                assert_eq!(build_a::<BigInt>(n, p).unwrap().det(), &P::one() - &P::x_pow(n));
            }
        }
    }

    #[test]
    fn b_matrix() {
        let b = build_b::<BigInt>(2, 3).unwrap();
        assert_eq!(b.get(0, 1), &P::x_pow(1));
        assert_eq!(b.get(1, 0), &P::x_pow(1));
        assert_eq!(b.get(0, 0), &P::one());
        assert_eq!(build_b::<BigInt>(3, 2).unwrap().get(0, 2), &P::x_pow(4));
    }

    #[test]
    fn inversion() {
        for n in 2..=10usize {
            for p in prime_divisors(n as u64 + 1) {
                let (a, b) = (build_a::<BigInt>(n, p).unwrap(), build_b(n, p).unwrap());
                assert!(verify_inverse(&a, &b, n), "n={n} p={p}");
                let mut bad = a.clone();
                bad.set(0, 0, P::from_i64(&[1, 1]));
                assert!(!verify_inverse(&bad, &b, n));
            }
        }
    }

    #[test]
    fn local_factors() {
        assert_eq!(local_factor::<BigInt>(3, 2, 1).unwrap().numerator, P::from_i64(&[1, 1, 1]));
        assert_eq!(local_factor::<BigInt>(3, 2, 0).unwrap().numerator, P::from_i64(&[1, 0, 1, 0, 1]));
        assert_eq!(local_factor::<BigInt>(2, 3, 1).unwrap().series(5), big(&[1; 6]));
        assert_eq!(local_factor::<BigInt>(3, 2, 0).unwrap().series(6), big(&[1, 0, 1, 1, 1, 1, 1]));
        assert_eq!(trivial_local_factor::<BigInt>(3).series(6), big(&[1, 0, 0, 1, 0, 0, 1]));
        assert!(local_factor::<BigInt>(3, 2, 3).is_err());
        for n in 2..=10usize {
            for p in prime_divisors(n as u64 + 1) {
                let b = build_b::<BigInt>(n, p).unwrap();
                for i in 0..b.size() {
                    assert_eq!(local_factor::<BigInt>(n, p, i as u32).unwrap().numerator, b.row_sum(i));
                }
            }
        }
    }

    #[test]
    fn closed_local_factors() {
        assert_eq!(closed_local_factor::<BigInt>(3, 2, 1).unwrap(), P::from_i64(&[1, 0, 1, 0, 1]));
        assert_eq!(closed_local_factor::<BigInt>(3, 2, 2).unwrap(), P::from_i64(&[1, 1, 1]));
        assert_eq!(closed_local_factor::<BigInt>(3, 2, 4).unwrap(), P::from_i64(&[1, 1, 1]));
        assert_eq!(short_specht_factor::<BigInt>(3, 2).unwrap(), P::from_i64(&[1, 1]));
    }

    #[test]
    fn global_examples() {
        let z = global_zeta::<BigInt>(2, 1).unwrap();
        assert_eq!(z.local_factors, vec![(3, P::from_i64(&[1, 1]))]);
        assert_eq!(z.to_text(), "zeta_Q(2s) * (1+3^-s)");
        let z = global_zeta::<BigInt>(3, 4).unwrap();
        assert_eq!(z.to_latex(), r"\zeta_{\mathbf{Q}}(3s)\,(1+2^{-s}+4^{-s})");
        let z = global_zeta::<BigInt>(5, 1).unwrap();
        assert_eq!(z.local_factors, vec![(2, &P::one() + &P::x_pow(4)), (3, &P::one() + &P::x_pow(4))]);
        assert_eq!(global_zeta::<BigInt>(3, 3).unwrap_err(), Error::NotALattice { d: 3, m: 4 });
    }

    #[test]
    fn json_shape() {
        let z = global_zeta::<BigInt>(2, 1).unwrap();
        assert_eq!(
            z.to_json().to_string(),
            r#"{"n":2,"d":1,"riemann_exponent":2,"local_factors":[{"p":3,"coeffs":[1,1]}]}"#
        );
    }

    #[test]
    fn coefficients() {
        let z = global_zeta::<BigInt>(2, 1).unwrap();
        let a: Vec<i64> = (1..=12).map(|m| z.dirichlet_coeff(m).try_into().unwrap()).collect();
        assert_eq!(a, vec![1, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn specht_examples() {
        assert_eq!(specht_zeta::<BigInt>(2).unwrap().local_factors, vec![(3, P::from_i64(&[1, 1]))]);
        assert_eq!(specht_zeta::<BigInt>(3).unwrap().local_factors, vec![(2, P::from_i64(&[1, 1, 1]))]);
        assert_eq!(specht_zeta::<BigInt>(4).unwrap().local_factors, vec![(5, P::from_i64(&[1, 1]))]);
    }
}
