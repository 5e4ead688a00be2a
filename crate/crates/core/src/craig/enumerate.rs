//! Enumeration of `G`-stable sublattices.
//!
//! `enumerate_p_sublattices` walks down from `L` through maximal sublattices.
//! `enumerate_index_sublattices` generates Hermite normal forms of a fixed
//! determinant directly and filters by stability. Neither uses the other.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::exactmat::{Lattice, Matrix};
use crate::scalar::{divisors, is_prime, log_exact, Scalar};
use crate::specht::Generators;

use super::maximal_sublattices_p;

/// Stable sublattices of `p`-power index, grouped by the exponent.
#[derive(Debug, Clone)]
pub struct PowerLevels<T: Scalar> {
    pub p: u64,
    pub max_exp: u32,
    pub levels: BTreeMap<u32, Vec<Lattice<T>>>,
}

impl<T: Scalar> PowerLevels<T> {
    /// Counts at exponents `0..=max_exp`.
    pub fn counts(&self) -> Vec<usize> {
        (0..=self.max_exp).map(|e| self.levels.get(&e).map_or(0, Vec::len)).collect()
    }

    pub fn at(&self, e: u32) -> &[Lattice<T>] {
        self.levels.get(&e).map_or(&[], Vec::as_slice)
    }

    pub fn all(&self) -> impl Iterator<Item = (u32, &Lattice<T>)> {
        self.levels.iter().flat_map(|(&e, ls)| ls.iter().map(move |l| (e, l)))
    }

    pub fn to_json(&self, with_lattices: bool) -> serde_json::Value {
        #[derive(Serialize)]
        #[serde(bound = "")]
        struct Out<'a, T: Scalar> {
            p: u64,
            counts: BTreeMap<u32, usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            lattices: Option<BTreeMap<u32, &'a Vec<Lattice<T>>>>,
        }
        let counts = (0..=self.max_exp).zip(self.counts()).collect();
        let lattices = with_lattices.then(|| self.levels.iter().map(|(&e, l)| (e, l)).collect());
        serde_json::to_value(Out { p: self.p, counts, lattices }).expect("serializable")
    }
}

/// Maximal sublattices of a primitive lattice, tagged with their index exponent.
type Children<T> = Vec<(u32, Lattice<T>)>;

/// Every stable sublattice of `l` of index `p^j`, `j <= max_exp`.
///
/// Each such sublattice sits at the end of a chain whose steps are maximal
/// sublattices, so walking the maximal sublattices level by level is complete.
pub fn enumerate_p_sublattices<T: Scalar>(
    l: &Lattice<T>,
    g: &Generators<T>,
    p: u64,
    max_exp: u32,
    bounds: &Bounds,
) -> Result<PowerLevels<T>> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let pt = T::from_count(p);
    let mut levels: BTreeMap<u32, BTreeSet<Lattice<T>>> = BTreeMap::new();
    levels.entry(0).or_default().insert(l.clone());
    // maximal sublattices of c*M are c times those of M
    let mut cache: HashMap<Lattice<T>, Children<T>> = HashMap::new();
    for e in 0..=max_exp {
        let Some(current) = levels.get(&e).cloned() else { continue };
        let todo: Vec<Lattice<T>> =
            current.iter().map(Lattice::primitive).filter(|k| !cache.contains_key(k)).collect::<BTreeSet<_>>().into_iter().collect();
        let fresh: Vec<(Lattice<T>, Children<T>)> = todo
            .into_par_iter()
            .map(|prim| {
                let maxes = maximal_sublattices_p(&prim, g, p, bounds)?;
                let with_exp = maxes
                    .into_iter()
                    .map(|m| {
                        let idx = prim.index_of(&m)?;
                        let k = log_exact(&idx, &pt).ok_or_else(|| Error::Internal(format!("index {idx} not a power of {p}")))?;
                        Ok((k, m))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((prim, with_exp))
            })
            .collect::<Result<_>>()?;
        cache.extend(fresh);
        for lat in &current {
            let c = lat.content();
            for (k, m) in &cache[&lat.primitive()] {
                if e + k <= max_exp {
                    levels.entry(e + k).or_default().insert(m.scale(&c));
                }
            }
        }
    }
    Ok(PowerLevels { p, max_exp, levels: levels.into_iter().map(|(e, s)| (e, s.into_iter().collect())).collect() })
}

/// Every stable sublattice of `l` of index exactly `m`, sorted.
///
/// Works in the coordinates of the Hermite basis of `l`, where the candidates
/// are the upper triangular Hermite forms `H` with `det H = m`. Columns are
/// filled left to right. The first `j+1` columns span the part of the
/// sublattice supported on the first `j+1` coordinates, which must itself be
/// stable under every generator preserving those coordinates, and must
/// contain `m e_i`; both prune partial matrices.
pub fn enumerate_index_sublattices<T: Scalar>(
    l: &Lattice<T>,
    g: &Generators<T>,
    m: u64,
    bounds: &Bounds,
) -> Result<Vec<Lattice<T>>> {
    if m == 0 {
        return Err(Error::Invalid("index must be positive".into()));
    }
    if m > bounds.hnf_index {
        return Err(Error::ScaleExceeded(format!("index {m} exceeds the HNF enumeration bound {}", bounds.hnf_index)));
    }
    let n = l.dim();
    if g.n() != n {
        return Err(Error::Dimension(format!("lattice has rank {n}, generators act on {}", g.n())));
    }
    let basis = l.hnf().clone();
    let local = g.conjugate(&basis)?;
    let gens: Vec<Vec<Vec<i64>>> = local
        .mats()
        .iter()
        .map(|mat| {
            (0..n)
                .map(|i| {
                    mat.row(i)
                        .iter()
                        .map(|x| x.to_i64().ok_or_else(|| Error::ScaleExceeded("generator entry exceeds i64".into())))
                        .collect()
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    // generators usable once columns 0..=j are fixed
    let usable: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..gens.len()).filter(|&k| (j + 1..n).all(|r| (0..=j).all(|c| gens[k][r][c] == 0))).collect())
        .collect();
    let search = Search { n, m: m as i64, gens, usable };
    let found: Vec<Vec<Vec<i64>>> =
        diagonals(n, m).into_par_iter().flat_map_iter(|diag| search.with_diagonal(&diag)).collect();
    let mut out = found
        .into_iter()
        .map(|cols| {
            let cols: Vec<Vec<T>> = cols.into_iter().map(|c| c.into_iter().map(T::from_int).collect()).collect();
            let h = Matrix::from_cols(&cols)?;
            Lattice::new(basis.matmul(&h)?)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Ordered tuples of `n` positive integers with product `m`.
fn diagonals(n: usize, m: u64) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![m as i64]];
    }
    let mut out = Vec::new();
    for d in divisors(m) {
        for mut rest in diagonals(n - 1, m / d) {
            rest.insert(0, d as i64);
            out.push(rest);
        }
    }
    out
}

struct Search {
    n: usize,
    m: i64,
    gens: Vec<Vec<Vec<i64>>>,
    usable: Vec<Vec<usize>>,
}

impl Search {
    fn with_diagonal(&self, diag: &[i64]) -> Vec<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        let mut cols: Vec<Vec<i64>> = Vec::with_capacity(self.n);
        self.extend(diag, &mut cols, &mut out);
        out
    }

    fn extend(&self, diag: &[i64], cols: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
        let j = cols.len();
        if j == self.n {
            out.push(cols.clone());
            return;
        }
        // entries above the pivot: row r ranges over [0, diag[r])
        let mut col = vec![0i64; self.n];
        col[j] = diag[j];
        loop {
            cols.push(col.clone());
            if self.admissible(cols) {
                self.extend(diag, cols, out);
            }
            cols.pop();
            // odometer over rows 0..j
            let mut r = 0;
            loop {
                if r == j {
                    return;
                }
                col[r] += 1;
                if col[r] < diag[r] {
                    break;
                }
                col[r] = 0;
                r += 1;
            }
        }
    }

    fn admissible(&self, cols: &[Vec<i64>]) -> bool {
        let j = cols.len() - 1;
        let mut target = vec![0i64; self.n];
        target[j] = self.m;
        if !in_span(cols, &target) {
            return false;
        }
        self.usable[j].iter().all(|&k| {
            let g = &self.gens[k];
            cols.iter().all(|c| {
                let image: Vec<i64> = (0..self.n).map(|r| (0..=j).map(|s| g[r][s] * c[s]).sum()).collect();
                in_span(cols, &image)
            })
        })
    }
}

/// Membership in the span of upper triangular columns, by back-substitution.
fn in_span(cols: &[Vec<i64>], v: &[i64]) -> bool {
    let mut w = v.to_vec();
    if w[cols.len()..].iter().any(|&x| x != 0) {
        return false;
    }
    for r in (0..cols.len()).rev() {
        let piv = cols[r][r];
        if w[r] % piv != 0 {
            return false;
        }
        let q = w[r] / piv;
        if q != 0 {
            for (x, c) in w.iter_mut().zip(&cols[r]).take(r + 1) {
                *x -= q * c;
            }
        }
    }
    true
}
