//! The verification suite: every closed formula checked against generic
//! lattice arithmetic or brute-force enumeration, plus seeded random
//! property checks. Produces a machine-readable report.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Bounds;
use crate::craig::{
    self, classify_sublattice, craig_lattice, enumerate_index_sublattices, enumerate_p_sublattices,
    euler_decomposition_holds, expected_scaled_family, is_g_stable, maximal_sublattices_p, mu_p, phi_p, phi_p_class,
    rad_p, scaled_index, scaled_inclusion, scaled_intersect, ScaledCraigLattice,
};
use crate::error::{Error, Result};
use crate::exactmat::{hnf, Lattice, Matrix};
use crate::scalar::{divisors, is_prime, log_exact, prime_divisors, valuation_u64};
use crate::specht::{
    coxeter_violations, craig_generators, identify_specht_lattice, specht_generators_closed, specht_generators_oracle,
    Generators,
};
use crate::zeta::{
    build_a, build_b, global_zeta, local_factor, short_specht_factor, specht_zeta, closed_local_factor, trivial_local_factor,
    verify_inverse, LocalFactor,
};

type Z = BigInt;

/// A deliberate defect, used to check that the suite notices it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// `s_1` replaced by `-s_1` in Craig's generators.
    CraigSign,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n_max: usize,
    /// Depth of the `p`-power enumerations.
    pub max_exp: u32,
    /// Largest index for the direct enumeration; `None` picks by `n`.
    pub coeff_limit: Option<u64>,
    pub seed: u64,
    pub samples: usize,
    pub bounds: Bounds,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n_max: 5, max_exp: 8, coeff_limit: None, seed: 0, samples: 100, bounds: Bounds::default(), fault: None }
    }
}

impl VerifyOptions {
    fn coeff_limit_for(&self, n: usize) -> u64 {
        let default = match n {
            0..=3 => 200,
            4 | 5 => 64,
            _ => 32,
        };
        self.coeff_limit.unwrap_or(default).min(self.bounds.hnf_index)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// Cases left out because they exceed a configured bound.
    pub skipped: usize,
    pub failures: Vec<String>,
    /// Wall time; left out of JSON so reports are byte-identical across runs.
    #[serde(skip)]
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErratumCase {
    pub n: usize,
    pub p: u64,
    pub counts: Vec<u64>,
    pub full_sum_series: Vec<u64>,
    pub short_sum_series: Vec<u64>,
}

/// Which closed form for the Specht lattice's local factor agrees with the
/// enumeration: `sum_{j=0}^{v} X^j` (the general formula at `d = n+1`) or the
/// shorter `sum_{j=0}^{v-1} X^j`.
#[derive(Debug, Clone, Serialize)]
pub struct ErratumReport {
    pub full_sum_consistent: bool,
    pub short_sum_consistent: bool,
    pub implemented: &'static str,
    pub cases: Vec<ErratumCase>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub n_max: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub erratum: Option<ErratumReport>,
}

impl Report {
    pub fn failed_names(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Accumulates cases and failures for one named check.
#[derive(Default)]
pub struct Tally {
    cases: usize,
    skipped: usize,
    failures: Vec<String>,
}

impl Tally {
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn cases(&self) -> usize {
        self.cases
    }

    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }
}

fn run_check(name: &str, body: impl FnOnce(&mut Tally) -> Result<()>) -> CheckResult {
    let start = Instant::now();
    let mut t = Tally::default();
    if let Err(e) = body(&mut t) {
        t.failures.push(format!("error: {e}"));
    }
    const SHOWN: usize = 20;
    let extra = t.failures.len().saturating_sub(SHOWN);
    t.failures.truncate(SHOWN);
    if extra > 0 {
        t.failures.push(format!("... and {extra} more"));
    }
    CheckResult {
        name: name.to_string(),
        passed: t.failures.is_empty(),
        cases: t.cases,
        skipped: t.skipped,
        failures: t.failures,
        millis: start.elapsed().as_millis(),
    }
}

fn generators(n: usize, fault: Option<Fault>) -> Result<Generators<Z>> {
    let g = craig_generators::<Z>(n)?;
    match fault {
        None => Ok(g),
        Some(Fault::CraigSign) => {
            let mut mats = g.mats().to_vec();
            mats[0] = mats[0].neg();
            Generators::new(mats)
        }
    }
}

fn sc(n: usize, p: u64, (a, b): (u32, u32)) -> Result<Lattice<Z>> {
    ScaledCraigLattice::module(n, p, a, b)?.realize()
}

fn sc_set(n: usize, p: u64, pairs: &[(u32, u32)]) -> Result<Vec<Lattice<Z>>> {
    let mut v = pairs.iter().map(|&ab| sc(n, p, ab)).collect::<Result<Vec<_>>>()?;
    v.sort();
    Ok(v)
}

fn to_u64(v: &[Z]) -> Vec<u64> {
    v.iter().map(|x| u64::try_from(x).unwrap_or(u64::MAX)).collect()
}

fn counts_u64(c: Vec<usize>) -> Vec<u64> {
    c.into_iter().map(|x| x as u64).collect()
}

fn spin_fits(p: u64, n: usize, bounds: &Bounds) -> bool {
    (p as f64).powi(n as i32) <= bounds.spin_size as f64
}

pub mod checks {
    //! The individual checks, each over `2 <= n <= n_max`.

    use super::*;

    pub fn coxeter(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            let bad = coxeter_violations(&generators(n, o.fault)?);
            t.expect(bad.is_empty(), || format!("Craig generators, n={n}: {}", bad.join(", ")));
            let bad = coxeter_violations(&specht_generators_closed::<Z>(n)?);
            t.expect(bad.is_empty(), || format!("Specht generators, n={n}: {}", bad.join(", ")));
        }
        Ok(())
    }

    pub fn stability(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            let g = generators(n, o.fault)?;
            for d in 1..=2 * (n as u64 + 1) {
                let stable = is_g_stable(&craig_lattice::<Z>(n, d)?.lattice, &g);
                t.expect(stable == (n as u64 + 1).is_multiple_of(d), || format!("n={n} d={d}: stable = {stable}"));
            }
        }
        Ok(())
    }

    /// The inclusion, intersection and index formulas for `p^a L(p^b)`
    /// against generic lattice operations, all exponents up to 4.
    pub fn scaled_forms(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        let pairs: Vec<(u32, u32)> = (0..=4).flat_map(|a| (0..=4).map(move |b| (a, b))).collect();
        for n in 2..=o.n_max {
            for p in prime_divisors(n as u64 + 1) {
                let real: Vec<Lattice<Z>> = pairs.iter().map(|&ab| sc(n, p, ab)).collect::<Result<_>>()?;
                let pt = Z::from(p);
                for (x, lx) in pairs.iter().zip(&real) {
                    let sx = ScaledCraigLattice::module(n, p, x.0, x.1)?;
                    for (y, ly) in pairs.iter().zip(&real) {
                        let sy = ScaledCraigLattice::module(n, p, y.0, y.1)?;
                        let inc = scaled_inclusion(&sx, &sy);
                        t.expect(inc == lx.is_sublattice_of(ly)?, || format!("n={n} p={p} {x:?} in {y:?}"));
                        let meet = scaled_intersect(&sx, &sy);
                        let generic = lx.intersect(ly)?;
                        t.expect(sc(n, p, (meet.a, meet.b))? == generic, || format!("n={n} p={p} {x:?} meet {y:?}"));
                        if inc {
                            let e = scaled_index(&sy, &sx)?;
                            let idx = ly.index_of(lx)?;
                            t.expect(log_exact(&idx, &pt) == Some(e), || format!("n={n} p={p} [{y:?}:{x:?}]"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn local_cases(o: &VerifyOptions) -> Vec<(usize, u64, u32)> {
        let mut out = Vec::new();
        for n in 2..=o.n_max {
            for p in prime_divisors(n as u64 + 1) {
                for i in 0..=valuation_u64(n as u64 + 1, p) {
                    out.push((n, p, i));
                }
            }
        }
        out
    }

    fn local_lattice(n: usize, p: u64, i: u32) -> Result<Lattice<Z>> {
        Ok(craig_lattice::<Z>(n, p.pow(i))?.lattice)
    }

    pub fn maximal(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for (n, p, i) in local_cases(o) {
            if !spin_fits(p, n, &o.bounds) {
                t.skip();
                continue;
            }
            let v = valuation_u64(n as u64 + 1, p);
            let got = maximal_sublattices_p(&local_lattice(n, p, i)?, &generators(n, o.fault)?, p, &o.bounds)?;
            let want = sc_set(n, p, &craig::maximal_closed_form(v, i))?;
            t.expect(got == want, || format!("n={n} p={p} i={i}: found {got:?}"));
        }
        Ok(())
    }

    pub fn radical(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for (n, p, i) in local_cases(o) {
            if !spin_fits(p, n, &o.bounds) {
                t.skip();
                continue;
            }
            let v = valuation_u64(n as u64 + 1, p);
            let got = rad_p(&local_lattice(n, p, i)?, &generators(n, o.fault)?, p, &o.bounds)?;
            let want = sc(n, p, craig::radical_closed_form(v, i))?;
            t.expect(got == want, || format!("n={n} p={p} i={i}: found {got:?}"));
        }
        Ok(())
    }

    pub fn phi(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for (n, p, i) in local_cases(o) {
            if !spin_fits(p, n, &o.bounds) {
                t.skip();
                continue;
            }
            let v = valuation_u64(n as u64 + 1, p);
            let got = phi_p(&local_lattice(n, p, i)?, &generators(n, o.fault)?, p, &o.bounds)?;
            let want = sc_set(n, p, &craig::phi_closed_form(v, i))?;
            t.expect(got == want, || format!("n={n} p={p} i={i}: found {got:?}"));
        }
        Ok(())
    }

    pub fn phi_classes(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for (n, p, i) in local_cases(o) {
            if !spin_fits(p, n, &o.bounds) {
                t.skip();
                continue;
            }
            let v = valuation_u64(n as u64 + 1, p);
            let (l, g) = (local_lattice(n, p, i)?, generators(n, o.fault)?);
            for j in 0..=v {
                let got = phi_p_class(&l, &g, p, j, &o.bounds)?;
                let pairs: Vec<(u32, u32)> = craig::phi_closed_form(v, i).into_iter().filter(|ab| ab.1 == j).collect();
                let want = sc_set(n, p, &pairs)?;
                t.expect(got == want, || format!("n={n} p={p} i={i} j={j}: found {got:?}"));
            }
        }
        Ok(())
    }

    pub fn mobius(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for (n, p, i) in local_cases(o) {
            if !spin_fits(p, n, &o.bounds) {
                t.skip();
                continue;
            }
            let v = valuation_u64(n as u64 + 1, p);
            let (l, g) = (local_lattice(n, p, i)?, generators(n, o.fault)?);
            for ab in craig::phi_closed_form(v, i) {
                let mu = mu_p(&l, &g, p, &sc(n, p, ab)?, &o.bounds)?;
                let want = craig::mu_closed_form(v, i, ab);
                t.expect(mu == want, || format!("n={n} p={p} i={i} at {ab:?}: {mu} != {want}"));
            }
            // outside the interval the value is undefined
            let below = sc(n, p, (2, i))?;
            t.expect(mu_p(&l, &g, p, &below, &o.bounds).is_err(), || format!("n={n} p={p} i={i}: p^2 L accepted"));
        }
        Ok(())
    }

    pub fn trivial_primes(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            let g = generators(n, o.fault)?;
            let l = craig_lattice::<Z>(n, 1)?.lattice;
            for p in (2..=n as u64 + 1).filter(|&p| is_prime(p) && !(n as u64 + 1).is_multiple_of(p)) {
                if !spin_fits(p, n, &o.bounds) {
                    t.skip();
                    continue;
                }
                let maxes = maximal_sublattices_p(&l, &g, p, &o.bounds)?;
                t.expect(maxes == vec![l.scale(&Z::from(p))], || format!("n={n} p={p}: {} maximal", maxes.len()));
                let counts = counts_u64(enumerate_p_sublattices(&l, &g, p, o.max_exp, &o.bounds)?.counts());
                let want = to_u64(&trivial_local_factor::<Z>(n).series(o.max_exp as usize));
                t.expect(counts == want, || format!("n={n} p={p}: counts {counts:?}"));
            }
        }
        Ok(())
    }

    pub fn inversion(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max.max(10) {
            for p in prime_divisors(n as u64 + 1) {
                let ok = verify_inverse(&build_a::<Z>(n, p)?, &build_b::<Z>(n, p)?, n);
                t.expect(ok, || format!("n={n} p={p}"));
            }
        }
        Ok(())
    }

    pub fn row_sums(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for (n, p, i) in local_cases(o) {
            let b = build_b::<Z>(n, p)?;
            let f = local_factor::<Z>(n, p, i)?;
            t.expect(f.numerator == b.row_sum(i as usize), || format!("n={n} p={p} i={i}"));
            let nonneg = f.series(4 * n).iter().all(|c| !c.is_negative());
            t.expect(nonneg, || format!("n={n} p={p} i={i}: negative coefficient"));
        }
        Ok(())
    }

    pub fn local_series(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for (n, p, i) in local_cases(o) {
            if !spin_fits(p, n, &o.bounds) {
                t.skip();
                continue;
            }
            let (l, g) = (local_lattice(n, p, i)?, generators(n, o.fault)?);
            let counts = counts_u64(enumerate_p_sublattices(&l, &g, p, o.max_exp, &o.bounds)?.counts());
            let want = to_u64(&local_factor::<Z>(n, p, i)?.series(o.max_exp as usize));
            t.expect(counts == want, || format!("n={n} p={p} i={i}: counts {counts:?}, series {want:?}"));
        }
        Ok(())
    }

    pub fn classification(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            let g = generators(n, o.fault)?;
            let l = craig_lattice::<Z>(n, 1)?.lattice;
            for p in prime_divisors(n as u64 + 1) {
                if !spin_fits(p, n, &o.bounds) {
                    t.skip();
                    continue;
                }
                let levels = enumerate_p_sublattices(&l, &g, p, o.max_exp, &o.bounds)?;
                let mut seen = std::collections::BTreeSet::new();
                for (_, s) in levels.all() {
                    match classify_sublattice(s, n, p) {
                        Ok(ab) => {
                            seen.insert(ab);
                        }
                        Err(e) => t.expect(false, || format!("n={n} p={p}: {e}")),
                    }
                }
                let want = expected_scaled_family(n, p, o.max_exp);
                t.expect(seen == want, || format!("n={n} p={p}: classes {seen:?}, expected {want:?}"));
            }
        }
        Ok(())
    }

    pub fn dirichlet(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            let g = generators(n, o.fault)?;
            for d in divisors(n as u64 + 1) {
                let z = global_zeta::<Z>(n, d)?;
                let l = craig_lattice::<Z>(n, d)?.lattice;
                for m in 1..=o.coeff_limit_for(n) {
                    let count = enumerate_index_sublattices(&l, &g, m, &o.bounds)?.len();
                    let a = z.dirichlet_coeff(m);
                    t.expect(a == Z::from(count), || format!("n={n} d={d} m={m}: a(m) = {a}, enumerated {count}"));
                }
            }
        }
        Ok(())
    }

    pub fn euler_product(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            for d in divisors(n as u64 + 1) {
                t.expect(euler_decomposition_holds::<Z>(n, d)?, || format!("n={n} d={d}"));
                for p in prime_divisors(n as u64 + 1) {
                    let lhs = closed_local_factor::<Z>(n, p, d)?;
                    let rhs = local_factor::<Z>(n, p, valuation_u64(d, p))?.numerator;
                    t.expect(lhs == rhs, || format!("n={n} d={d} p={p}: {lhs} vs {rhs}"));
                }
            }
        }
        Ok(())
    }

    pub fn specht_oracle(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            if n > o.bounds.oracle_n {
                t.skip();
                continue;
            }
            let ok = specht_generators_closed::<Z>(n)? == specht_generators_oracle::<Z>(n, &o.bounds)?;
            t.expect(ok, || format!("n={n}"));
        }
        Ok(())
    }

    pub fn specht_identification(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            let d = identify_specht_lattice::<Z>(n)?;
            t.expect(d == n as u64 + 1, || format!("n={n}: identified L({d})"));
        }
        Ok(())
    }

    pub fn specht_maximal(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        for n in 2..=o.n_max {
            let g = specht_generators_closed::<Z>(n)?;
            let l = Lattice::<Z>::standard(n);
            for p in prime_divisors(n as u64 + 1) {
                if !spin_fits(p, n, &o.bounds) {
                    t.skip();
                    continue;
                }
                let maxes = maximal_sublattices_p(&l, &g, p, &o.bounds)?;
                let ok = maxes.len() == 1 && l.index_of(&maxes[0])? == Z::from(p);
                t.expect(ok, || format!("n={n} p={p}: {maxes:?}"));
            }
        }
        Ok(())
    }

    /// Sublattice counts of the Specht lattice itself, written in its own
    /// basis, against the local factors of the implemented zeta function.
    pub fn specht_zeta_check(o: &VerifyOptions, t: &mut Tally) -> Result<ErratumReport> {
        let mut cases = Vec::new();
        for n in 2..=o.n_max {
            let g = specht_generators_closed::<Z>(n)?;
            let l = Lattice::<Z>::standard(n);
            let z = specht_zeta::<Z>(n)?;
            for (p, f) in &z.local_factors {
                if !spin_fits(*p, n, &o.bounds) {
                    t.skip();
                    continue;
                }
                let e = o.max_exp as usize;
                let counts = counts_u64(enumerate_p_sublattices(&l, &g, *p, o.max_exp, &o.bounds)?.counts());
                let implemented = to_u64(&LocalFactor { n, numerator: f.clone() }.series(e));
                t.expect(counts == implemented, || format!("n={n} p={p}: counts {counts:?}, zeta {implemented:?}"));
                let full = to_u64(&LocalFactor { n, numerator: closed_local_factor::<Z>(n, *p, n as u64 + 1)? }.series(e));
                let short = to_u64(&LocalFactor { n, numerator: short_specht_factor::<Z>(n, *p)? }.series(e));
                cases.push(ErratumCase { n, p: *p, counts, full_sum_series: full, short_sum_series: short });
            }
        }
        Ok(ErratumReport {
            full_sum_consistent: cases.iter().all(|c| c.counts == c.full_sum_series),
            short_sum_consistent: cases.iter().all(|c| c.counts == c.short_sum_series),
            implemented: "full",
            cases,
        })
    }

    fn random_zeta(o: &VerifyOptions, rng: &mut ChaCha8Rng) -> Result<crate::zeta::GlobalZeta<Z>> {
        let n = rng.gen_range(2..=o.n_max.max(2));
        let ds = divisors(n as u64 + 1);
        global_zeta(n, ds[rng.gen_range(0..ds.len())])
    }

    pub fn multiplicativity(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        let mut done = 0;
        while done < o.samples {
            let (a, b) = (rng.gen_range(1..=3000u64), rng.gen_range(1..=3000u64));
            if a.gcd(&b) != 1 {
                continue;
            }
            done += 1;
            let z = random_zeta(o, &mut rng)?;
            let (x, y, xy) = (z.dirichlet_coeff(a), z.dirichlet_coeff(b), z.dirichlet_coeff(a * b));
            t.expect(xy == &x * &y, || format!("n={} d={}: a({a}) a({b}) = {x}*{y} but a({}) = {xy}", z.n, z.d, a * b));
        }
        Ok(())
    }

    fn random_nonsingular(rng: &mut ChaCha8Rng, n: usize, span: i64) -> Result<Matrix<Z>> {
        loop {
            let data = (0..n * n).map(|_| Z::from(rng.gen_range(-span..=span))).collect();
            let m = Matrix::from_vec(n, n, data)?;
            if !m.det()?.is_zero() {
                return Ok(m);
            }
        }
    }

    fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Result<Matrix<Z>> {
        let mut u = Matrix::<Z>::identity(n);
        for _ in 0..steps {
            let mut e = Matrix::<Z>::identity(n);
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            match rng.gen_range(0..3) {
                0 if i != j => e[(i, j)] = Z::from(rng.gen_range(-3i64..=3)),
                1 if i != j => {
                    e[(i, i)] = Z::zero();
                    e[(j, j)] = Z::zero();
                    e[(i, j)] = Z::one();
                    e[(j, i)] = Z::one();
                }
                _ => e[(i, i)] = -Z::one(),
            }
            u = u.matmul(&e)?;
        }
        Ok(u)
    }

    pub fn hnf_invariance(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(1));
        for _ in 0..o.samples {
            let n = rng.gen_range(2..=5);
            let m = random_nonsingular(&mut rng, n, 9)?;
            let u = random_unimodular(&mut rng, n, 12)?;
            let (h1, h2) = (hnf(&m)?, hnf(&m.matmul(&u)?)?);
            t.expect(h1 == h2, || format!("{m:?} times {u:?}"));
        }
        Ok(())
    }

    pub fn index_chains(o: &VerifyOptions, t: &mut Tally) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(2));
        for _ in 0..o.samples {
            let n = rng.gen_range(2..=5);
            let b1 = random_nonsingular(&mut rng, n, 6)?;
            let k2 = random_nonsingular(&mut rng, n, 3)?;
            let k3 = random_nonsingular(&mut rng, n, 3)?;
            let b2 = b1.matmul(&k2)?;
            let l1 = Lattice::new(b1)?;
            let l2 = Lattice::new(b2.clone())?;
            let l3 = Lattice::new(b2.matmul(&k3)?)?;
            let (i12, i23, i13) = (l1.index_of(&l2)?, l2.index_of(&l3)?, l1.index_of(&l3)?);
            t.expect(i13 == &i12 * &i23, || format!("{i13} != {i12} * {i23}"));
            t.expect(i12 == k2.det()?.abs(), || format!("index {i12} != |det| of the transition"));
        }
        Ok(())
    }
}

pub fn run(o: &VerifyOptions) -> Result<Report> {
    if o.n_max < 2 {
        return Err(Error::Invalid(format!("n_max must be at least 2, got {}", o.n_max)));
    }
    type Body<'a> = Box<dyn FnOnce(&mut Tally) -> Result<()> + 'a>;
    let mut erratum = None;
    let results: Vec<CheckResult> = {
        let list: Vec<(&str, Body)> = vec![
            ("Coxeter relations", Box::new(|t| checks::coxeter(o, t))),
            ("Stability classification of L(d)", Box::new(|t| checks::stability(o, t))),
            ("Scaled lattice inclusion, intersection and index", Box::new(|t| checks::scaled_forms(o, t))),
            ("Maximal sublattices of L(p^i)", Box::new(|t| checks::maximal(o, t))),
            ("p-radical of L(p^i)", Box::new(|t| checks::radical(o, t))),
            ("Lattices between the p-radical and L(p^i)", Box::new(|t| checks::phi(o, t))),
            ("Isomorphism classes between the p-radical and L(p^i)", Box::new(|t| checks::phi_classes(o, t))),
            ("Moebius values", Box::new(|t| checks::mobius(o, t))),
            ("Trivial primes", Box::new(|t| checks::trivial_primes(o, t))),
            ("A-matrix inverts B-matrix", Box::new(|t| checks::inversion(o, t))),
            ("Local factors are row sums of B", Box::new(|t| checks::row_sums(o, t))),
            ("Local factor series vs enumeration", Box::new(|t| checks::local_series(o, t))),
            ("Classification of p-power-index sublattices", Box::new(|t| checks::classification(o, t))),
            ("Dirichlet coefficients vs enumeration", Box::new(|t| checks::dirichlet(o, t))),
            ("Euler product decomposition", Box::new(|t| checks::euler_product(o, t))),
            ("Specht closed form vs polytabloid oracle", Box::new(|t| checks::specht_oracle(o, t))),
            ("Specht lattice identification", Box::new(|t| checks::specht_identification(o, t))),
            ("Specht lattice maximal sublattices", Box::new(|t| checks::specht_maximal(o, t))),
            (
                "Specht zeta vs enumeration",
                Box::new(|t| {
                    erratum = Some(checks::specht_zeta_check(o, t)?);
                    Ok(())
                }),
            ),
            ("Multiplicativity of Dirichlet coefficients", Box::new(|t| checks::multiplicativity(o, t))),
            ("HNF unimodular invariance", Box::new(|t| checks::hnf_invariance(o, t))),
            ("Index multiplicativity along chains", Box::new(|t| checks::index_chains(o, t))),
        ];
        list.into_iter().map(|(name, body)| run_check(name, body)).collect()
    };
    Ok(Report { n_max: o.n_max, seed: o.seed, passed: results.iter().all(|c| c.passed), checks: results, erratum })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions { n_max: 3, max_exp: 6, coeff_limit: Some(40), samples: 20, ..Default::default() }
    }

    #[test]
    fn small_run_passes() {
        let r = run(&small()).unwrap();
        assert!(r.passed, "{:?}", r.failed_names());
        assert_eq!(r.checks.len(), 22);
        let e = r.erratum.unwrap();
        assert!(e.full_sum_consistent);
        assert!(!e.short_sum_consistent);
    }

    #[test]
    fn injected_sign_error_is_caught() {
        let r = run(&VerifyOptions { fault: Some(Fault::CraigSign), ..small() }).unwrap();
        assert!(!r.passed);
        assert!(r.failed_names().contains(&"Coxeter relations"));
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let o = VerifyOptions { n_max: 2, max_exp: 3, coeff_limit: Some(10), samples: 10, seed: 7, ..Default::default() };
        assert_eq!(run(&o).unwrap().to_json().to_string(), run(&o).unwrap().to_json().to_string());
    }

    #[test]
    fn rejects_tiny_range() {
        assert!(run(&VerifyOptions { n_max: 1, ..Default::default() }).is_err());
    }
}
