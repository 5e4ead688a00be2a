//! Submodules of `F_p^n` under a set of matrices, found by spinning.
//!
//! Every submodule is a sum of cyclic submodules, and each cyclic submodule is
//! the closure of a single vector under the generators. Spinning one
//! representative of every line yields all cyclic submodules; closing that set
//! under sums yields the whole submodule lattice.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};

/// A subspace of `F_p^n` in reduced row echelon form (canonical).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn pivot(row: &[u64]) -> usize {
        row.iter().position(|&x| x != 0).expect("rows are nonzero")
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    fn insert(&mut self, mut v: Vec<u64>, p: u64) -> bool {
        for row in &self.rows {
            let c = Self::pivot(row);
            let f = v[c];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - f) * r) % p;
                }
            }
        }
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inverse_mod(v[c], p);
        v.iter_mut().for_each(|x| *x = *x * inv % p);
        for row in &mut self.rows {
            let f = row[c];
            if f != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + (p - f) * r) % p;
                }
            }
        }
        let at = self.rows.iter().position(|r| Self::pivot(r) > c).unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[u64], p: u64) -> bool {
        let mut s = self.clone();
        !s.insert(v.to_vec(), p)
    }

    pub fn is_subspace_of(&self, other: &Subspace, p: u64) -> bool {
        self.rows.iter().all(|r| other.contains(r, p))
    }

    fn sum(&self, other: &Subspace, p: u64) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone(), p);
        }
        s
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// `F_p^n` with the action of finitely many matrices.
#[derive(Debug, Clone)]
pub struct FpModule {
    p: u64,
    n: usize,
    gens: Vec<Vec<Vec<u64>>>,
}

impl FpModule {
    /// `gens` are integer matrices (row-major rows); entries are reduced mod `p`.
    pub fn new(p: u64, gens: Vec<Vec<Vec<i64>>>, spin_limit: u64) -> Result<Self> {
        let n = gens.first().map_or(0, Vec::len);
        let size = (p as f64).powi(n as i32);
        if size > spin_limit as f64 {
            return Err(Error::ScaleExceeded(format!(
                "spinning over F_{p}^{n} visits {p}^{n} vectors; bound is {spin_limit}"
            )));
        }
        let pi = p as i64;
        let gens = gens
            .into_iter()
            .map(|m| m.into_iter().map(|row| row.into_iter().map(|x| x.rem_euclid(pi) as u64).collect()).collect())
            .collect();
        Ok(FpModule { p, n, gens })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, g: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        g.iter().map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % self.p)).collect()
    }

    /// The smallest submodule containing `seeds`.
    pub fn spin(&self, seeds: &[Vec<u64>]) -> Subspace {
        let mut space = Subspace::zero();
        let mut queue = Vec::new();
        for s in seeds {
            if space.insert(s.clone(), self.p) {
                queue.push(s.clone());
            }
        }
        while let Some(w) = queue.pop() {
            if space.dim() == self.n {
                break;
            }
            for g in &self.gens {
                let u = self.apply(g, &w);
                if space.insert(u.clone(), self.p) {
                    queue.push(u);
                }
            }
        }
        space
    }

    /// One vector per line: first nonzero coordinate equal to 1.
    fn line_representatives(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let p = self.p;
        let n = self.n;
        (0..n).flat_map(move |lead| {
            let free = n - lead - 1;
            let count = p.pow(free as u32);
            (0..count).map(move |mut idx| {
                let mut v = vec![0; n];
                v[lead] = 1;
                for x in v.iter_mut().skip(lead + 1) {
                    *x = idx % p;
                    idx /= p;
                }
                v
            })
        })
    }

    pub fn cyclic_submodules(&self) -> BTreeSet<Subspace> {
        self.line_representatives().map(|v| self.spin(&[v])).collect()
    }

    /// The complete submodule lattice, sorted.
    pub fn submodules(&self) -> Vec<Subspace> {
        let cyclic: Vec<Subspace> = self.cyclic_submodules().into_iter().collect();
        let mut seen: HashSet<Subspace> = HashSet::new();
        seen.insert(Subspace::zero());
        let mut queue = vec![Subspace::zero()];
        while let Some(x) = queue.pop() {
            for c in &cyclic {
                let s = x.sum(c, self.p);
                if seen.insert(s.clone()) {
                    queue.push(s);
                }
            }
        }
        let mut all: Vec<Subspace> = seen.into_iter().collect();
        all.sort();
        all
    }

    /// Proper submodules not contained in any other proper submodule.
    pub fn maximal_submodules(&self) -> Vec<Subspace> {
        let proper: Vec<Subspace> = self.submodules().into_iter().filter(|s| s.dim() < self.n).collect();
        proper
            .iter()
            .filter(|s| !proper.iter().any(|t| t.dim() > s.dim() && s.is_subspace_of(t, self.p)))
            .cloned()
            .collect()
    }
}
