//! The two integral realizations of the hook representation `(2,1^{n-1})` of
//! the symmetric group on `n+1` letters: the generator matrices in Craig's
//! coordinates and in the Specht (polytabloid) basis, and the intertwiner
//! between them.
//!
//! Matrices act on column vectors. `mats[k-1]` is the action of the adjacent
//! transposition `(k k+1)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Bounds;
use crate::craig::identify_craig_class;
use crate::error::{Error, Result};
use crate::exactmat::rational::kernel;
use crate::exactmat::{Lattice, Matrix};
use crate::scalar::Scalar;

/// Matrices of the adjacent transpositions `s_1, ..., s_n` acting on an
/// `n`-dimensional module.
#[derive(Clone, PartialEq, Eq)]
pub struct Generators<T> {
    n: usize,
    mats: Vec<Matrix<T>>,
}

impl<T: Scalar> Generators<T> {
    pub fn new(mats: Vec<Matrix<T>>) -> Result<Self> {
        let n = mats.len();
        if n == 0 || mats.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension(format!("need {n} matrices of size {n}x{n}")));
        }
        Ok(Generators { n, mats })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mats(&self) -> &[Matrix<T>] {
        &self.mats
    }

    /// `s_k` for `1 <= k <= n`.
    pub fn s(&self, k: usize) -> &Matrix<T> {
        &self.mats[k - 1]
    }

    /// The generators written in the basis `b`: `b^{-1} g b`. Fails unless all
    /// results are integral, i.e. unless the lattice spanned by `b` is stable.
    pub fn conjugate(&self, b: &Matrix<T>) -> Result<Self> {
        let (den, inv) = crate::exactmat::rational::integral_inverse(b)?;
        let mats = self
            .mats
            .iter()
            .map(|g| {
                let m = &(&inv * g) * b;
                let mut rows = Vec::with_capacity(self.n);
                for i in 0..self.n {
                    let row = m
                        .row(i)
                        .iter()
                        .map(|x| {
                            let (q, r) = x.div_rem(&den);
                            if r.is_zero() {
                                Ok(q)
                            } else {
                                Err(Error::Invalid("basis does not span a stable lattice".into()))
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
                Matrix::from_rows(rows)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Generators { n: self.n, mats })
    }

    pub fn convert<U: Scalar>(&self) -> Result<Generators<U>> {
        Ok(Generators { n: self.n, mats: self.mats.iter().map(Matrix::convert).collect::<Result<_>>()? })
    }

    pub fn to_json(&self) -> GeneratorsJson {
        GeneratorsJson { n: self.n, generators: self.mats.iter().map(Into::into).collect() }
    }

    pub fn from_json(j: &GeneratorsJson) -> Result<Self> {
        let g = Self::new(j.generators.iter().map(Matrix::try_from).collect::<Result<_>>()?)?;
        if g.n != j.n {
            return Err(Error::Json(format!("declared n = {} but {} generators", j.n, g.n)));
        }
        Ok(g)
    }
}

impl<T: Scalar> std::fmt::Debug for Generators<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Generators").field("n", &self.n).field("mats", &self.mats).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub n: usize,
    pub generators: Vec<crate::exactmat::MatrixJson>,
}

/// `s_k = E^{k,k-1} + 2E^{k,k} + E^{k,k+1} - I_n`, with out-of-range `E`
/// terms dropped.
pub fn craig_generators<T: Scalar>(n: usize) -> Result<Generators<T>> {
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    let mats = (0..n)
        .map(|k| {
            let mut m = Matrix::scalar(n, -T::one());
            m[(k, k)] = T::one();
            if k > 0 {
                m[(k, k - 1)] = T::one();
            }
            if k + 1 < n {
                m[(k, k + 1)] = T::one();
            }
            m
        })
        .collect();
    Ok(Generators { n, mats })
}

/// Every relation of the Coxeter presentation of the symmetric group that
/// fails, as human-readable strings. Empty iff the matrices define a
/// representation.
pub fn coxeter_violations<T: Scalar>(g: &Generators<T>) -> Vec<String> {
    let mut bad = Vec::new();
    let n = g.n;
    for k in 1..=n {
        if !(g.s(k) * g.s(k)).is_identity() {
            bad.push(format!("s_{k}^2 != 1"));
        }
    }
    for k in 1..n {
        let braid = (g.s(k) * g.s(k + 1)).pow(3).expect("square");
        if !braid.is_identity() {
            bad.push(format!("(s_{k} s_{})^3 != 1", k + 1));
        }
    }
    for k in 1..=n {
        for l in k + 2..=n {
            if g.s(k) * g.s(l) != g.s(l) * g.s(k) {
                bad.push(format!("s_{k} s_{l} != s_{l} s_{k}"));
            }
        }
    }
    bad
}

pub fn verify_coxeter<T: Scalar>(g: &Generators<T>) -> bool {
    coxeter_violations(g).is_empty()
}

/// A standard tableau of hook shape `(2,1^{n-1})`: the box right of the
/// corner holds `t`, the first column holds the other letters increasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HookTableau {
    pub n: usize,
    pub t: usize,
}

impl HookTableau {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n < 2 || !(2..=n + 1).contains(&t) {
            return Err(Error::Invalid(format!("no standard hook tableau with n = {n}, t = {t}")));
        }
        Ok(HookTableau { n, t })
    }

    /// All `n` standard tableaux, ordered by `t`.
    pub fn all(n: usize) -> Vec<HookTableau> {
        (2..=n + 1).map(|t| HookTableau { n, t }).collect()
    }

    /// Entries of the first column, top to bottom.
    pub fn first_column(&self) -> Vec<usize> {
        (1..=self.n + 1).filter(|&x| x != self.t).collect()
    }

    pub fn tabloid(&self) -> Tabloid {
        let col = self.first_column();
        Tabloid::new([col[0], self.t], col[1..].to_vec())
    }
}

/// A row-equivalence class of hook-shaped tableaux: the unordered first row
/// and the singleton rows below it in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tabloid {
    row_one: [usize; 2],
    singles: Vec<usize>,
}

impl Tabloid {
    pub fn new(row: [usize; 2], singles: Vec<usize>) -> Self {
        let row_one = if row[0] <= row[1] { row } else { [row[1], row[0]] };
        Tabloid { row_one, singles }
    }

    pub fn row_one(&self) -> [usize; 2] {
        self.row_one
    }

    pub fn singles(&self) -> &[usize] {
        &self.singles
    }

    /// Image under the letter permutation `perm` (given as a function).
    pub fn permute(&self, perm: impl Fn(usize) -> usize) -> Self {
        Tabloid::new([perm(self.row_one[0]), perm(self.row_one[1])], self.singles.iter().map(|&x| perm(x)).collect())
    }
}

pub type TabloidVector = BTreeMap<Tabloid, i64>;

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// The polytabloid `e_T = sum over the column stabilizer of sign(σ) σ{T}`.
pub fn polytabloid(t: &HookTableau, bounds: &Bounds) -> Result<TabloidVector> {
    if t.n > bounds.oracle_n {
        return Err(Error::ScaleExceeded(format!(
            "polytabloid expansion for n = {} has n! terms; bound is n <= {}",
            t.n, bounds.oracle_n
        )));
    }
    let col = t.first_column();
    let mut out = TabloidVector::new();
    for p in permutations(col.len()) {
        let tab = Tabloid::new([col[p[0]], t.t], p[1..].iter().map(|&i| col[i]).collect());
        *out.entry(tab).or_insert(0) += permutation_sign(&p);
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

fn transposition(k: usize) -> impl Fn(usize) -> usize {
    move |x| {
        if x == k {
            k + 1
        } else if x == k + 1 {
            k
        } else {
            x
        }
    }
}

/// Specht-basis generator matrices computed from first principles: every
/// `s_k e_T` is expanded in tabloids and re-expressed in the polytabloid
/// basis by an exact solve that is then checked against every tabloid.
pub fn specht_generators_oracle<T: Scalar>(n: usize, bounds: &Bounds) -> Result<Generators<T>> {
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    let tableaux = HookTableau::all(n);
    let basis: Vec<TabloidVector> =
        tableaux.par_iter().map(|t| polytabloid(t, bounds)).collect::<Result<Vec<_>>>()?;
    // The leading tabloid {T_u} occurs in e_{T_v} iff u = v, with coefficient
    // +1, so the coefficients of a vector in the basis are read off these
    // coordinates; the full expansion check below makes the solve exact.
    let leading: Vec<Tabloid> = tableaux.iter().map(HookTableau::tabloid).collect();
    for (u, e) in basis.iter().enumerate() {
        for (v, lead) in leading.iter().enumerate() {
            let c = e.get(lead).copied().unwrap_or(0);
            if c != i64::from(u == v) {
                return Err(Error::Internal(format!("leading tabloid of e_T{} has coefficient {c} in e_T{}", v + 2, u + 2)));
            }
        }
    }
    let mats = (1..=n)
        .into_par_iter()
        .map(|k| {
            let mut m = Matrix::<T>::zeros(n, n);
            for (col, e) in basis.iter().enumerate() {
                let mut image = TabloidVector::new();
                for (tab, c) in e {
                    *image.entry(tab.permute(transposition(k))).or_insert(0) += c;
                }
                image.retain(|_, c| *c != 0);
                let coeffs: Vec<i64> = leading.iter().map(|l| image.get(l).copied().unwrap_or(0)).collect();
                let mut recombined = TabloidVector::new();
                for (c, b) in coeffs.iter().zip(&basis) {
                    if *c != 0 {
                        for (tab, x) in b {
                            *recombined.entry(tab.clone()).or_insert(0) += c * x;
                        }
                    }
                }
                recombined.retain(|_, c| *c != 0);
                if recombined != image {
                    return Err(Error::Internal(format!(
                        "s_{k} e_T{} is not an integral combination of polytabloids",
                        col + 2
                    )));
                }
                for (row, c) in coeffs.iter().enumerate() {
                    m[(row, col)] = T::from_int(*c);
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    Generators::new(mats)
}

/// The closed-form action on the polytabloid basis `e_{T_2}, ..., e_{T_{n+1}}`:
/// `s_k` swaps `e_{T_k}` and `e_{T_{k+1}}` for `k >= 2`, negates every other
/// basis vector, and `s_1 e_{T_2} = e_{T_2} + sum_{u>=3} (-1)^u e_{T_u}`.
pub fn specht_generators_closed<T: Scalar>(n: usize) -> Result<Generators<T>> {
    if n < 2 {
        return Err(Error::Invalid(format!("n must be at least 2, got {n}")));
    }
    // basis index of e_{T_t} is t - 2
    let mats = (1..=n)
        .map(|k| {
            let mut m = Matrix::<T>::zeros(n, n);
            for t in 2..=n + 1 {
                let col = t - 2;
                if k == 1 && t == 2 {
                    m[(0, col)] = T::one();
                    for u in 3..=n + 1 {
                        m[(u - 2, col)] = if u % 2 == 0 { T::one() } else { -T::one() };
                    }
                } else if k >= 2 && t == k {
                    m[(k + 1 - 2, col)] = T::one();
                } else if k >= 2 && t == k + 1 {
                    m[(k - 2, col)] = T::one();
                } else {
                    m[(col, col)] = -T::one();
                }
            }
            m
        })
        .collect();
    Generators::new(mats)
}

/// The primitive integer matrix `P` with `b_k P = P a_k` for every
/// generator; the sign makes the first nonzero entry positive.
pub fn intertwiner<T: Scalar>(a: &Generators<T>, b: &Generators<T>) -> Result<Matrix<T>> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("generators of sizes {} and {}", a.n, b.n)));
    }
    let n = a.n;
    // unknown P[i][l] sits at index i*n + l
    let mut system = Matrix::<T>::zeros(n * n * n, n * n);
    for (k, (ak, bk)) in a.mats.iter().zip(&b.mats).enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = k * n * n + i * n + j;
                // (b_k P)[i][j] = sum_l b_k[i][l] P[l][j]
                for l in 0..n {
                    let idx = l * n + j;
                    system[(row, idx)] = system[(row, idx)].clone() + bk[(i, l)].clone();
                }
                // (P a_k)[i][j] = sum_l P[i][l] a_k[l][j]
                for l in 0..n {
                    let idx = i * n + l;
                    system[(row, idx)] = system[(row, idx)].clone() - ak[(l, j)].clone();
                }
            }
        }
    }
    let ker = kernel(&system);
    if ker.len() != 1 {
        return Err(Error::NotEquivalent(ker.len()));
    }
    let mut v = ker.into_iter().next().unwrap();
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    Matrix::from_vec(n, n, v)
}

/// The lattice spanned by the Specht basis, written in Craig's coordinates.
pub fn specht_lattice_in_craig_coordinates<T: Scalar>(n: usize) -> Result<Lattice<T>> {
    let p = intertwiner(&specht_generators_closed::<T>(n)?, &craig_generators::<T>(n)?)?;
    Lattice::new(p)
}

/// The divisor `d` of `n+1` with the Specht lattice isomorphic to `L(d)`.
pub fn identify_specht_lattice<T: Scalar>(n: usize) -> Result<u64> {
    let l = specht_lattice_in_craig_coordinates::<T>(n)?;
    identify_craig_class(&l, n)?.ok_or_else(|| {
        Error::Unclassified(format!("Specht lattice for n = {n} matches no L(d) with d | n+1"))
    })
}

/// Sanity helper used by tests and the verify suite: the lattice spanned by
/// the intertwiner really is stable under Craig's generators.
pub fn intertwined_lattice_is_stable<T: Scalar>(n: usize) -> Result<bool> {
    let l = specht_lattice_in_craig_coordinates::<T>(n)?;
    Ok(crate::craig::is_g_stable(&l, &craig_generators::<T>(n)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type G = Generators<BigInt>;
    type M = Matrix<BigInt>;

    #[test]
    fn craig_generators_small() {
        let g: G = craig_generators(2).unwrap();
        assert_eq!(g.s(1), &M::from_i64(&[&[1, 1], &[0, -1]]));
        assert_eq!(g.s(2), &M::from_i64(&[&[-1, 0], &[1, 1]]));
        assert!((g.s(1) * g.s(1)).is_identity());
        let g3: G = craig_generators(3).unwrap();
        assert_eq!(g3.s(2), &M::from_i64(&[&[-1, 0, 0], &[1, 1, 1], &[0, 0, -1]]));
        assert!(craig_generators::<BigInt>(1).is_err());
    }

    #[test]
    fn coxeter_relations() {
        for n in 2..=10 {
            assert!(verify_coxeter(&craig_generators::<BigInt>(n).unwrap()), "craig n={n}");
            assert!(verify_coxeter(&specht_generators_closed::<BigInt>(n).unwrap()), "specht n={n}");
        }
        let mut mats = craig_generators::<BigInt>(5).unwrap().mats().to_vec();
        mats[2][(2, 3)] = BigInt::from(-1);
        let broken = G::new(mats).unwrap();
        assert!(!verify_coxeter(&broken));
        assert!(!coxeter_violations(&broken).is_empty());
    }

    #[test]
    fn polytabloids_small() {
        let b = Bounds::default();
        let e2 = polytabloid(&HookTableau::new(2, 2).unwrap(), &b).unwrap();
        let expect: TabloidVector =
            [(Tabloid::new([1, 2], vec![3]), 1), (Tabloid::new([3, 2], vec![1]), -1)].into_iter().collect();
        assert_eq!(e2, expect);
        let e3 = polytabloid(&HookTableau::new(2, 3).unwrap(), &b).unwrap();
        let expect: TabloidVector =
            [(Tabloid::new([1, 3], vec![2]), 1), (Tabloid::new([2, 3], vec![1]), -1)].into_iter().collect();
        assert_eq!(e3, expect);
        for t in HookTableau::all(4) {
            let e = polytabloid(&t, &b).unwrap();
            assert_eq!(e.len(), 24);
            assert!(e.values().all(|c| c.abs() == 1));
        }
        let err = polytabloid(&HookTableau::new(8, 2).unwrap(), &b).unwrap_err();
        assert!(matches!(err, Error::ScaleExceeded(_)));
    }

    #[test]
    fn oracle_small() {
        let g: G = specht_generators_oracle(2, &Bounds::default()).unwrap();
        assert_eq!(g.s(1), &M::from_i64(&[&[1, 0], &[-1, -1]]));
        assert_eq!(g.s(2), &M::from_i64(&[&[0, 1], &[1, 0]]));
        let g3: G = specht_generators_oracle(3, &Bounds::default()).unwrap();
        // s_1 e_T2 = e_T2 - e_T3 + e_T4
        assert_eq!(g3.s(1).col(0), vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn closed_form_matches_oracle() {
        for n in 2..=6 {
            let oracle: G = specht_generators_oracle(n, &Bounds::default()).unwrap();
            let closed: G = specht_generators_closed(n).unwrap();
            assert_eq!(oracle, closed, "n={n}");
            assert!(verify_coxeter(&oracle));
        }
    }

    #[test]
    fn traces_agree() {
        for n in 2..=10 {
            let c = craig_generators::<BigInt>(n).unwrap();
            let s = specht_generators_closed::<BigInt>(n).unwrap();
            for k in 1..=n {
                let expect = BigInt::from(2 - n as i64);
                assert_eq!(c.s(k).trace(), expect);
                assert_eq!(s.s(k).trace(), expect);
            }
        }
    }

    #[test]
    fn intertwiners() {
        for n in 2..=5 {
            let c = craig_generators::<BigInt>(n).unwrap();
            let p = intertwiner(&c, &c).unwrap();
            assert_eq!(p, M::identity(n));
        }
        let s = specht_generators_closed::<BigInt>(2).unwrap();
        let c = craig_generators::<BigInt>(2).unwrap();
        let p = intertwiner(&s, &c).unwrap();
        assert_eq!(p, M::from_i64(&[&[1, -1], &[1, 2]]));
        assert_eq!(p.det().unwrap(), BigInt::from(3));
        for k in 1..=2 {
            assert_eq!(c.s(k) * &p, &p * s.s(k));
        }
        let s3 = specht_generators_closed::<BigInt>(3).unwrap();
        let p3 = intertwiner(&s3, &craig_generators(3).unwrap()).unwrap();
        // P Z^3 = L(4), of determinant 4^2
        assert_eq!(num_traits::Signed::abs(&p3.det().unwrap()), BigInt::from(16));
    }

    #[test]
    fn reducible_pair_is_rejected() {
        // identity matrices for every generator: a sum of trivial modules
        let triv = G::new(vec![M::identity(2), M::identity(2)]).unwrap();
        assert_eq!(intertwiner(&triv, &triv).unwrap_err(), Error::NotEquivalent(4));
    }

    #[test]
    fn generators_json() {
        let g = craig_generators::<BigInt>(3).unwrap();
        let j = serde_json::to_value(g.to_json()).unwrap();
        assert_eq!(j["n"], 3);
        assert_eq!(j["generators"][1]["entries"][1], serde_json::json!(["1", "1", "1"]));
        let back = G::from_json(&serde_json::from_value(j).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
