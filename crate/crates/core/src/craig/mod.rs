//! Craig's lattices `L(d)` and their scaled forms `p^a L(p^b)`, the `p`-local
//! sublattice structure (maximal sublattices, radical, `Φ_p`, Möbius values),
//! and two independent sublattice enumerators.

pub mod enumerate;
pub mod fp;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::exactmat::{Lattice, Matrix};
use crate::scalar::{self, divisors, is_prime, log_exact, valuation_u64, Scalar};
use crate::specht::{craig_generators, Generators};

pub use enumerate::{enumerate_index_sublattices, enumerate_p_sublattices, PowerLevels};
use fp::FpModule;

/// Basis of `L(d)`: `d e_1, ..., d e_{n-1}` and
/// `v = e_n + sum_{i<n} (-1)^{n+1-i} i e_i`, as columns.
pub fn craig_basis<T: Scalar>(n: usize, d: u64) -> Matrix<T> {
    let mut b = Matrix::identity(n);
    for i in 0..n - 1 {
        b[(i, i)] = T::from_count(d);
        // 1-based index i+1, sign (-1)^{n+1-(i+1)} = (-1)^{n-i}
        let coeff = (i + 1) as i64;
        b[(i, n - 1)] = T::from_int(if (n - i).is_multiple_of(2) { coeff } else { -coeff });
    }
    b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CraigLattice<T: Scalar> {
    pub n: usize,
    pub d: u64,
    pub lattice: Lattice<T>,
}

pub fn craig_lattice<T: Scalar>(n: usize, d: u64) -> Result<CraigLattice<T>> {
    if n < 2 || d == 0 {
        return Err(Error::Invalid(format!("L(d) needs n >= 2 and d >= 1, got n = {n}, d = {d}")));
    }
    Ok(CraigLattice { n, d, lattice: Lattice::new(craig_basis(n, d))? })
}

/// `g L ⊆ L` for every generator, i.e. `B^{-1} g B` is integral.
pub fn is_g_stable<T: Scalar>(l: &Lattice<T>, g: &Generators<T>) -> bool {
    l.dim() == g.n() && g.mats().iter().all(|m| l.is_stable_under(m))
}

/// The divisor `d` of `n+1` with `l` a rational multiple of `L(d)`, if any.
/// For a stable `l` this is its isomorphism class: the module is absolutely
/// irreducible, so isomorphisms between lattices in it are scalars.
pub fn identify_craig_class<T: Scalar>(l: &Lattice<T>, n: usize) -> Result<Option<u64>> {
    for d in divisors(n as u64 + 1) {
        if l.scalar_multiple_to(&craig_lattice::<T>(n, d)?.lattice)?.is_some() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// `p^a L(p^b)` inside the `n`-dimensional module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ScaledCraigLattice {
    pub n: usize,
    pub p: u64,
    pub a: u32,
    pub b: u32,
}

impl ScaledCraigLattice {
    /// A `G`-stable member: `p` prime and `p^b | n+1`.
    pub fn new(n: usize, p: u64, a: u32, b: u32) -> Result<Self> {
        let s = Self::module(n, p, a, b)?;
        let v = valuation_u64(n as u64 + 1, p);
        if b > v {
            return Err(Error::Invalid(format!("p^b = {p}^{b} does not divide n+1 = {}", n + 1)));
        }
        Ok(s)
    }

    /// Any `b`: a `Z`-module that need not be stable.
    pub fn module(n: usize, p: u64, a: u32, b: u32) -> Result<Self> {
        if n < 2 || !is_prime(p) {
            return Err(Error::Invalid(format!("need n >= 2 and p prime, got n = {n}, p = {p}")));
        }
        Ok(ScaledCraigLattice { n, p, a, b })
    }

    pub fn realize<T: Scalar>(&self) -> Result<Lattice<T>> {
        let base = craig_lattice::<T>(self.n, self.p.pow(self.b))?.lattice;
        Ok(base.scale(&T::from_count(self.p.pow(self.a))))
    }
}

fn same_family(x: &ScaledCraigLattice, y: &ScaledCraigLattice) {
    assert!(x.n == y.n && x.p == y.p, "scaled lattices from different families");
}

/// `x ⊆ y` iff `a >= a'` and `a + b >= a' + b'`.
pub fn scaled_inclusion(x: &ScaledCraigLattice, y: &ScaledCraigLattice) -> bool {
    same_family(x, y);
    x.a >= y.a && x.a + x.b >= y.a + y.b
}

pub fn scaled_intersect(x: &ScaledCraigLattice, y: &ScaledCraigLattice) -> ScaledCraigLattice {
    same_family(x, y);
    let a = x.a.max(y.a);
    let b = (x.a + x.b).max(y.a + y.b) - a;
    ScaledCraigLattice { a, b, ..*x }
}

/// `log_p |x : y|` for `y ⊆ x`: `(a_y - a_x) n + (b_y - b_x)(n - 1)`.
pub fn scaled_index(x: &ScaledCraigLattice, y: &ScaledCraigLattice) -> Result<u32> {
    same_family(x, y);
    if !scaled_inclusion(y, x) {
        return Err(Error::NotSublattice);
    }
    let n = x.n as i64;
    let e = (y.a as i64 - x.a as i64) * n + (y.b as i64 - x.b as i64) * (n - 1);
    Ok(u32::try_from(e).expect("index exponent of an inclusion is nonnegative"))
}

/// The `G`-stable lattices between `pL` and `L`, sorted.
fn lattices_over_p_multiple<T: Scalar>(
    l: &Lattice<T>,
    g: &Generators<T>,
    p: u64,
    bounds: &Bounds,
    maximal_only: bool,
) -> Result<Vec<Lattice<T>>> {
    let basis = l.hnf().clone();
    let local = g.conjugate(&basis)?;
    let small: Vec<Vec<Vec<i64>>> = local
        .mats()
        .iter()
        .map(|m| {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| x.mod_floor(&T::from_count(p)).to_i64().unwrap()).collect())
                .collect()
        })
        .collect();
    let module = FpModule::new(p, small, bounds.spin_size)?;
    let subspaces = if maximal_only { module.maximal_submodules() } else { module.submodules() };
    let pl = basis.scale(&T::from_count(p));
    let mut out: Vec<Lattice<T>> = subspaces
        .into_iter()
        .map(|s| {
            let mut gens = pl.clone();
            for v in s.basis() {
                let coords: Vec<T> = v.iter().map(|&x| T::from_count(x)).collect();
                let col = basis.mul_vec(&coords);
                gens = gens.hconcat(&Matrix::from_cols(&[col])?)?;
            }
            Lattice::from_generators(&gens)
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// All `p`-maximal sublattices: stable `N` with `pL ⊆ N ⊊ L` and `L/N` simple.
pub fn maximal_sublattices_p<T: Scalar>(
    l: &Lattice<T>,
    g: &Generators<T>,
    p: u64,
    bounds: &Bounds,
) -> Result<Vec<Lattice<T>>> {
    lattices_over_p_multiple(l, g, p, bounds, true)
}

/// Intersection of the `p`-maximal sublattices.
pub fn rad_p<T: Scalar>(l: &Lattice<T>, g: &Generators<T>, p: u64, bounds: &Bounds) -> Result<Lattice<T>> {
    let maxes = maximal_sublattices_p(l, g, p, bounds)?;
    maxes.iter().try_fold(l.clone(), |acc, m| acc.intersect(m))
}

/// The stable lattices between `rad_p(L)` and `L`, sorted.
pub fn phi_p<T: Scalar>(l: &Lattice<T>, g: &Generators<T>, p: u64, bounds: &Bounds) -> Result<Vec<Lattice<T>>> {
    let rad = rad_p(l, g, p, bounds)?;
    let all = lattices_over_p_multiple(l, g, p, bounds, false)?;
    let mut out = Vec::new();
    for n in all {
        if rad.is_sublattice_of(&n)? {
            out.push(n);
        }
    }
    Ok(out)
}

/// Members of `Φ_p(L)` isomorphic to `L(p^j)`, where `L` lives in Craig's
/// coordinates for `n = g.n()`.
pub fn phi_p_class<T: Scalar>(
    l: &Lattice<T>,
    g: &Generators<T>,
    p: u64,
    j: u32,
    bounds: &Bounds,
) -> Result<Vec<Lattice<T>>> {
    let target = craig_lattice::<T>(g.n(), p.pow(j))?.lattice;
    let mut out = Vec::new();
    for m in phi_p(l, g, p, bounds)? {
        if m.scalar_multiple_to(&target)?.is_some() {
            out.push(m);
        }
    }
    Ok(out)
}

/// `sum over J ⊆ max_p(L) with ∩J = N of (-1)^{|J|}`; the empty intersection
/// is `L`.
pub fn mu_p<T: Scalar>(l: &Lattice<T>, g: &Generators<T>, p: u64, target: &Lattice<T>, bounds: &Bounds) -> Result<i64> {
    if !phi_p(l, g, p, bounds)?.contains(target) {
        return Err(Error::Invalid("lattice is not in Φ_p(L)".into()));
    }
    let maxes = maximal_sublattices_p(l, g, p, bounds)?;
    if maxes.len() > 20 {
        return Err(Error::ScaleExceeded(format!("{} maximal sublattices", maxes.len())));
    }
    let mut mu = 0;
    for mask in 0u32..(1 << maxes.len()) {
        let mut acc = l.clone();
        for (i, m) in maxes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = acc.intersect(m)?;
            }
        }
        if acc == *target {
            mu += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(mu)
}

/// The `(a, b)` with `sub = p^a L(p^b)`, for a stable sublattice of `L(1)` of
/// `p`-power index.
pub fn classify_sublattice<T: Scalar>(sub: &Lattice<T>, n: usize, p: u64) -> Result<(u32, u32)> {
    let pt = T::from_count(p);
    let content = sub.content();
    let a = log_exact(&content, &pt)
        .ok_or_else(|| Error::Unclassified(format!("content {content} is not a power of {p}")))?;
    let prim = sub.primitive();
    let v = valuation_u64(n as u64 + 1, p);
    for b in 0..=v {
        if craig_lattice::<T>(n, p.pow(b))?.lattice == prim {
            return Ok((a, b));
        }
    }
    Err(Error::Unclassified(format!("primitive part {prim:?} is no L({p}^b) with b <= {v}")))
}

/// The Craig generators together with `L(d)`.
pub fn craig_setup<T: Scalar>(n: usize, d: u64) -> Result<(Lattice<T>, Generators<T>)> {
    Ok((craig_lattice(n, d)?.lattice, craig_generators(n)?))
}

/// Closed forms of the local structure of `L(p^i)`, as `(a, b)` pairs naming
/// `p^a L(p^b)`. `v = v_p(n+1) >= 1`.
pub fn maximal_closed_form(v: u32, i: u32) -> Vec<(u32, u32)> {
    let mut out = match i {
        0 => vec![(0, 1)],
        _ if i == v => vec![(1, v - 1)],
        _ => vec![(0, i + 1), (1, i - 1)],
    };
    out.sort();
    out
}

pub fn radical_closed_form(v: u32, i: u32) -> (u32, u32) {
    match i {
        0 => (0, 1),
        _ if i == v => (1, v - 1),
        _ => (1, i),
    }
}

pub fn phi_closed_form(v: u32, i: u32) -> Vec<(u32, u32)> {
    let mut out = match i {
        0 => vec![(0, 0), (0, 1)],
        _ if i == v => vec![(1, v - 1), (0, v)],
        _ => vec![(1, i - 1), (0, i), (1, i), (0, i + 1)],
    };
    out.sort();
    out
}

/// Möbius value of `p^a L(p^b)` relative to `L(p^i)`: `1` at the top, `-1` at
/// each maximal sublattice, `1` at the intersection of two of them.
pub fn mu_closed_form(v: u32, i: u32, ab: (u32, u32)) -> i64 {
    if ab == (0, i) {
        1
    } else if maximal_closed_form(v, i).contains(&ab) {
        -1
    } else if 0 < i && i < v && ab == (1, i) {
        1
    } else {
        0
    }
}

/// `L(d)` as the sum over `p | n+1` of `(d / p^{v_p(d)}) L(p^{v_p(d)})`.
pub fn euler_decomposition_holds<T: Scalar>(n: usize, d: u64) -> Result<bool> {
    let target = craig_lattice::<T>(n, d)?.lattice;
    let mut acc: Option<Lattice<T>> = None;
    for p in scalar::prime_divisors(n as u64 + 1) {
        let local = p.pow(valuation_u64(d, p));
        let part = craig_lattice::<T>(n, local)?.lattice.scale(&T::from_count(d / local));
        acc = Some(match acc {
            None => part,
            Some(a) => a.sum(&part)?,
        });
    }
    Ok(acc.as_ref() == Some(&target))
}

/// Exponents `(a, b)` of all `p^a L(p^b)` with `b <= v_p(n+1)` and index
/// exponent in `L(1)` at most `max_exp`.
pub fn expected_scaled_family(n: usize, p: u64, max_exp: u32) -> BTreeSet<(u32, u32)> {
    let v = valuation_u64(n as u64 + 1, p);
    let n32 = n as u32;
    let mut out = BTreeSet::new();
    for a in 0..=max_exp {
        for b in 0..=v {
            if a * n32 + b * (n32 - 1) <= max_exp {
                out.insert((a, b));
            }
        }
    }
    out
}
