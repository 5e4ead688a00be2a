//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hookzeta::craig::{
    classify_sublattice, craig_lattice, enumerate_index_sublattices, enumerate_p_sublattices, is_g_stable,
};
use hookzeta::scalar::{divisors, is_prime, prime_divisors, valuation_u64};
use hookzeta::specht::{
    craig_generators, identify_specht_lattice, specht_generators_closed, specht_generators_oracle, verify_coxeter,
};
use hookzeta::verify::{checks, run, Tally, VerifyOptions};
use hookzeta::zeta::{build_a, build_b, global_zeta, local_factor, specht_zeta, trivial_local_factor, verify_inverse};
use hookzeta::{BigInt, Bounds, LatticeBasis};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn counts(c: Vec<usize>) -> Vec<BigInt> {
    c.into_iter().map(BigInt::from).collect()
}

fn dirichlet_vs_enumeration() -> Outcome {
    let start = Instant::now();
    let b = Bounds::default();
    let mut cases = 0;
    for (n, limit) in [(2usize, 200u64), (3, 200), (4, 64), (5, 64)] {
        let g = craig_generators::<BigInt>(n).map_err(e)?;
        for d in divisors(n as u64 + 1) {
            let z = global_zeta::<BigInt>(n, d).map_err(e)?;
            let l = craig_lattice::<BigInt>(n, d).map_err(e)?.lattice;
            for m in 1..=limit {
                let found = enumerate_index_sublattices(&l, &g, m, &b).map_err(e)?.len();
                let a = z.dirichlet_coeff(m);
                ensure(a == BigInt::from(found), || format!("n={n} d={d} m={m}: a(m)={a}, enumerated {found}"))?;
                cases += 1;
            }
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{cases} coefficients agree ({:.2?})", start.elapsed()))
}

fn local_series_vs_enumeration() -> Outcome {
    let start = Instant::now();
    let b = Bounds::default();
    let mut cases = 0;
    for n in 2..=6usize {
        let g = craig_generators::<BigInt>(n).map_err(e)?;
        for p in prime_divisors(n as u64 + 1) {
            for i in 0..=valuation_u64(n as u64 + 1, p) {
                let l = craig_lattice::<BigInt>(n, p.pow(i)).map_err(e)?.lattice;
                let found = counts(enumerate_p_sublattices(&l, &g, p, 8, &b).map_err(e)?.counts());
                let series = local_factor::<BigInt>(n, p, i).map_err(e)?.series(8);
                ensure(found == series, || format!("n={n} p={p} i={i}: {found:?} vs {series:?}"))?;
                cases += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{cases} local factors match to X^8 ({:.2?})", start.elapsed()))
}

fn inversion() -> Outcome {
    let mut cases = 0;
    let mut max_v = 0;
    for n in 2..=10usize {
        for p in prime_divisors(n as u64 + 1) {
            let ok = verify_inverse(&build_a::<BigInt>(n, p).map_err(e)?, &build_b(n, p).map_err(e)?, n);
            ensure(ok, || format!("n={n} p={p}"))?;
            max_v = max_v.max(valuation_u64(n as u64 + 1, p));
            cases += 1;
        }
    }
    ensure(max_v == 3, || format!("largest v was {max_v}"))?;
    Ok(format!("{cases} (n, p) pairs, v up to {max_v}"))
}

fn structure_closed_forms() -> Outcome {
    let start = Instant::now();
    let opts = VerifyOptions { n_max: 8, ..Default::default() };
    let mut cases = 0;
    for f in [
        checks::scaled_forms,
        checks::maximal,
        checks::radical,
        checks::phi,
        checks::phi_classes,
        checks::mobius,
    ] {
        let mut t = Tally::default();
        f(&opts, &mut t).map_err(e)?;
        cases += tally_cases(&t)?;
    }
    Ok(format!("{cases} closed-form cases for n <= 8 ({:.2?})", start.elapsed()))
}

/// Cases recorded by a tally, or its first failure.
fn tally_cases(t: &Tally) -> Result<usize, String> {
    ensure(t.failures().is_empty(), || t.failures().join("; "))?;
    ensure(t.skipped() == 0, || format!("{} cases skipped", t.skipped()))?;
    Ok(t.cases())
}

fn classification() -> Outcome {
    let b = Bounds::default();
    let mut cases = 0;
    for n in 2..=8usize {
        let g = craig_generators::<BigInt>(n).map_err(e)?;
        for d in 1..=2 * (n as u64 + 1) {
            let stable = is_g_stable(&craig_lattice::<BigInt>(n, d).map_err(e)?.lattice, &g);
            ensure(stable == (n as u64 + 1).is_multiple_of(d), || format!("n={n} d={d}: stable={stable}"))?;
            cases += 1;
        }
        let l = craig_lattice::<BigInt>(n, 1).map_err(e)?.lattice;
        for p in prime_divisors(n as u64 + 1) {
            let levels = enumerate_p_sublattices(&l, &g, p, 2 * n as u32, &b).map_err(e)?;
            for (_, s) in levels.all() {
                classify_sublattice(s, n, p).map_err(|x| format!("n={n} p={p}: {x}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} stability and classification cases"))
}

fn trivial_primes() -> Outcome {
    let b = Bounds::default();
    let mut cases = 0;
    for n in [2usize, 3, 4, 6] {
        let g = craig_generators::<BigInt>(n).map_err(e)?;
        let l = craig_lattice::<BigInt>(n, 1).map_err(e)?.lattice;
        for p in (2..=n as u64 + 1).filter(|&p| is_prime(p) && !(n as u64 + 1).is_multiple_of(p)) {
            let top = 3 * n as u32;
            let found = counts(enumerate_p_sublattices(&l, &g, p, top, &b).map_err(e)?.counts());
            let want = trivial_local_factor::<BigInt>(n).series(top as usize);
            ensure(found == want, || format!("n={n} p={p}: {found:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, p) pairs follow 1/(1-X^n)"))
}

fn specht() -> Outcome {
    let start = Instant::now();
    let b = Bounds::default();
    for n in 2..=5 {
        let closed = specht_generators_closed::<BigInt>(n).map_err(e)?;
        ensure(closed == specht_generators_oracle(n, &b).map_err(e)?, || format!("closed form differs at n={n}"))?;
    }
    for n in 2..=10 {
        ensure(verify_coxeter(&craig_generators::<BigInt>(n).map_err(e)?), || format!("Craig n={n}"))?;
        ensure(verify_coxeter(&specht_generators_closed::<BigInt>(n).map_err(e)?), || format!("Specht n={n}"))?;
    }
    for n in 2..=8usize {
        let d = identify_specht_lattice::<BigInt>(n).map_err(e)?;
        ensure(d == n as u64 + 1, || format!("n={n}: identified L({d})"))?;
        let g = specht_generators_closed::<BigInt>(n).map_err(e)?;
        let l = LatticeBasis::standard(n);
        for p in prime_divisors(n as u64 + 1) {
            let maxes = hookzeta::craig::maximal_sublattices_p(&l, &g, p, &b).map_err(e)?;
            ensure(maxes.len() == 1, || format!("n={n} p={p}: {} maximal sublattices", maxes.len()))?;
            let idx = l.index_of(&maxes[0]).map_err(e)?;
            ensure(idx == BigInt::from(p), || format!("n={n} p={p}: index {idx}"))?;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("oracle n<=5, Coxeter n<=10, identification and maximal sublattices n<=8 ({:.2?})", start.elapsed()))
}

fn erratum() -> Outcome {
    let b = Bounds::default();
    for n in [2usize, 3, 5] {
        let g = specht_generators_closed::<BigInt>(n).map_err(e)?;
        let l = LatticeBasis::standard(n);
        for (p, f) in specht_zeta::<BigInt>(n).map_err(e)?.local_factors {
            let found = counts(enumerate_p_sublattices(&l, &g, p, 8, &b).map_err(e)?.counts());
            let series = f.series_over_one_minus_x_pow(n, 8);
            ensure(found == series, || format!("n={n} p={p}: enumerated {found:?}, zeta {series:?}"))?;
            let craig = craig_lattice::<BigInt>(n, n as u64 + 1).map_err(e)?.lattice;
            let cg = craig_generators::<BigInt>(n).map_err(e)?;
            let on_craig = counts(enumerate_p_sublattices(&craig, &cg, p, 8, &b).map_err(e)?.counts());
            ensure(on_craig == series, || format!("L({}) at p={p}: enumerated {on_craig:?}", n + 1))?;
        }
    }
    let opts = VerifyOptions { n_max: 5, coeff_limit: Some(8), samples: 5, ..Default::default() };
    let report = run(&opts).map_err(e)?;
    let er = report.erratum.ok_or("verify report has no erratum section")?;
    ensure(er.full_sum_consistent && !er.short_sum_consistent, || format!("{er:?}"))?;
    Ok("enumeration supports sum_{j<=v} X^j; the (X^v-1)/(X-1) form is recorded as inconsistent".into())
}

fn properties() -> Outcome {
    let opts = VerifyOptions { samples: 100, seed: 2024, ..Default::default() };
    let mut cases = 0;
    for f in [checks::multiplicativity, checks::hnf_invariance, checks::index_chains] {
        let mut first = Tally::default();
        f(&opts, &mut first).map_err(e)?;
        let mut again = Tally::default();
        f(&opts, &mut again).map_err(e)?;
        ensure(first.cases() == again.cases(), || "seeded run not reproducible".into())?;
        cases += tally_cases(&first)?;
    }
    Ok(format!("{cases} seeded property cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("zeta coefficients vs direct HNF enumeration", dirichlet_vs_enumeration),
        ("local factors vs p-power enumeration", local_series_vs_enumeration),
        ("A-matrix inverts B-matrix", inversion),
        ("local structure closed forms", structure_closed_forms),
        ("stability and classification", classification),
        ("trivial primes", trivial_primes),
        ("Specht module results", specht),
        ("Specht local factor arbitration", erratum),
        ("seeded property suite", properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
