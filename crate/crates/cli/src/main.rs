//! Command-line front end for the `hookzeta` library.
//!
//! Exit codes: 0 success, 1 a check or identification failed, 2 bad input or
//! a configured bound was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use hookzeta::craig::{craig_lattice, enumerate_index_sublattices, enumerate_p_sublattices, identify_craig_class, is_g_stable};
use hookzeta::exactmat::{Lattice, Matrix};
use hookzeta::specht::{craig_generators, intertwiner, specht_generators_closed, specht_generators_oracle};
use hookzeta::verify::{self, Fault, VerifyOptions};
use hookzeta::zeta::global_zeta;
use hookzeta::{Bounds, Error};

#[derive(Parser)]
#[command(name = "hookzeta", version, about = "Zeta functions of the integral lattices of the hook representation of S_{n+1}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    bounds: BoundArgs,
}

#[derive(Args)]
struct BoundArgs {
    /// Largest n for the polytabloid oracle
    #[arg(long, global = true)]
    oracle_n: Option<usize>,
    /// Largest index for direct HNF enumeration
    #[arg(long, global = true)]
    hnf_index: Option<u64>,
    /// Largest p^n for submodule spinning
    #[arg(long, global = true)]
    spin_size: Option<u64>,
}

impl BoundArgs {
    fn resolve(&self) -> Bounds {
        let d = Bounds::default();
        Bounds {
            oracle_n: self.oracle_n.unwrap_or(d.oracle_n),
            hnf_index: self.hnf_index.unwrap_or(d.hnf_index),
            spin_size: self.spin_size.unwrap_or(d.spin_size),
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Print the zeta function of L(d)
    Zeta {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Compare the Dirichlet coefficients up to --limit with a direct enumeration
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 32)]
        limit: u64,
    },
    /// Dirichlet coefficients a(m), 1 <= m <= limit
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 50)]
        limit: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Recount every coefficient by direct enumeration
        #[arg(long)]
        oracle: bool,
    },
    /// Count stable sublattices of L(d) of index p^j, j <= max-exp
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Recount each level by direct HNF enumeration
        #[arg(long)]
        oracle: bool,
        /// Include the lattices themselves
        #[arg(long)]
        lattices: bool,
    },
    /// Find the d with a stable lattice isomorphic to L(d)
    Identify {
        /// JSON basis matrix, or an object with a "lattice_basis" field
        #[arg(long)]
        file: PathBuf,
        /// Defaults to the size of the matrix
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the verification suite for 2 <= n <= n-max
    Verify {
        #[arg(long = "n", alias = "n-max", default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 8)]
        max_exp: u32,
        /// Largest index for the direct enumeration (default depends on n)
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Specht generator matrices, the intertwiner into Craig's coordinates, and d
    Specht {
        #[arg(long)]
        n: usize,
        /// Check the closed form against the polytabloid expansion even above the default bound
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

/// Why a command did not succeed.
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unclassified(_) | Error::Internal(_) | Error::NotEquivalent(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Input(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

fn zeta(n: usize, d: u64, format: Format, oracle: bool, limit: u64, bounds: &Bounds) -> Outcome {
    check_n(n)?;
    let z = global_zeta::<BigInt>(n, d)?;
    if oracle {
        let l = craig_lattice::<BigInt>(n, d)?.lattice;
        let g = craig_generators::<BigInt>(n)?;
        for m in 1..=limit {
            let count = enumerate_index_sublattices(&l, &g, m, bounds)?.len();
            if z.dirichlet_coeff(m) != BigInt::from(count) {
                return Err(Failure::Check(format!("a({m}) = {} but enumeration finds {count}", z.dirichlet_coeff(m))));
            }
        }
    }
    Ok(match format {
        Format::Text => z.to_text(),
        Format::Latex => z.to_latex(),
        Format::Json => pretty(&z.to_json()),
    })
}

fn coeffs(n: usize, d: u64, limit: u64, format: Format, oracle: bool, bounds: &Bounds) -> Outcome {
    check_n(n)?;
    if limit == 0 {
        return Err(Failure::Input("limit must be at least 1".into()));
    }
    let z = global_zeta::<BigInt>(n, d)?;
    let table: Vec<(u64, BigInt)> = (1..=limit).map(|m| (m, z.dirichlet_coeff(m))).collect();
    if oracle {
        let l = craig_lattice::<BigInt>(n, d)?.lattice;
        let g = craig_generators::<BigInt>(n)?;
        for (m, a) in &table {
            let count = enumerate_index_sublattices(&l, &g, *m, bounds)?.len();
            if *a != BigInt::from(count) {
                return Err(Failure::Check(format!("a({m}) = {a} but enumeration finds {count}")));
            }
        }
    }
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = table.iter().map(|(m, a)| json!([m, json_int(a)])).collect();
            serde_json::to_string(&rows).expect("json")
        }
        _ => table.iter().map(|(m, a)| format!("{m}\t{a}")).collect::<Vec<_>>().join("\n"),
    })
}

fn json_int(a: &BigInt) -> Value {
    i64::try_from(a).map(Value::from).unwrap_or_else(|_| Value::from(a.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn enumerate(n: usize, d: u64, p: u64, max_exp: u32, format: Format, oracle: bool, lattices: bool, bounds: &Bounds) -> Outcome {
    check_n(n)?;
    let l = craig_lattice::<BigInt>(n, d)?.lattice;
    let g = craig_generators::<BigInt>(n)?;
    if !is_g_stable(&l, &g) {
        return Err(Error::NotALattice { d, m: n as u64 + 1 }.into());
    }
    let levels = enumerate_p_sublattices(&l, &g, p, max_exp, bounds)?;
    if oracle {
        for j in 0..=max_exp {
            let m = p.checked_pow(j).ok_or_else(|| Failure::Input("p^max-exp overflows".into()))?;
            let direct = enumerate_index_sublattices(&l, &g, m, bounds)?;
            if direct != levels.at(j) {
                return Err(Failure::Check(format!(
                    "index {p}^{j}: walk finds {}, direct enumeration finds {}",
                    levels.at(j).len(),
                    direct.len()
                )));
            }
        }
    }
    Ok(match format {
        Format::Json => pretty(&levels.to_json(lattices)),
        _ => {
            let counts: Vec<String> = levels.counts().iter().map(ToString::to_string).collect();
            format!("p = {p}, exponents 0..={max_exp}: {}", counts.join(" "))
        }
    })
}

/// Accepts a matrix object, `{"lattice_basis": ...}`, or a bare array of rows;
/// integer entries may be numbers or strings.
fn parse_basis(text: &str) -> Result<Matrix<BigInt>, Failure> {
    let bad = |e: String| Failure::Input(format!("cannot read basis: {e}"));
    let mut v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    if let Some(inner) = v.get("lattice_basis") {
        v = inner.clone();
    }
    let rows = match &v {
        Value::Array(rows) => rows.clone(),
        Value::Object(o) => o.get("entries").and_then(Value::as_array).cloned().ok_or_else(|| bad("no entries".into()))?,
        _ => return Err(bad("expected a matrix".into())),
    };
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("rows must be arrays".into()))?
                .iter()
                .map(|x| {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                        other => return Err(bad(format!("bad entry {other}"))),
                    };
                    s.trim().parse::<BigInt>().map_err(|e| bad(e.to_string()))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let m = Matrix::from_rows(rows)?;
    if let Value::Object(o) = &v {
        let declared = (o.get("rows").and_then(Value::as_u64), o.get("cols").and_then(Value::as_u64));
        if declared != (Some(m.rows() as u64), Some(m.cols() as u64)) && declared != (None, None) {
            return Err(bad("declared shape does not match entries".into()));
        }
    }
    Ok(m)
}

fn identify(file: &PathBuf, n: Option<usize>, format: Format) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let basis = parse_basis(&text)?;
    let n = n.unwrap_or(basis.rows());
    check_n(n)?;
    if basis.rows() != n {
        return Err(Failure::Input(format!("basis is {}x{}, expected {n}x{n}", basis.rows(), basis.cols())));
    }
    let l = Lattice::new(basis)?;
    if !is_g_stable(&l, &craig_generators::<BigInt>(n)?) {
        return Err(Failure::Check("the lattice is not stable under the group".into()));
    }
    let d = identify_craig_class(&l, n)?
        .ok_or_else(|| Failure::Check("stable lattice matches no L(d); the classification is violated".into()))?;
    Ok(match format {
        Format::Json => json!({ "n": n, "d": d }).to_string(),
        _ => d.to_string(),
    })
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    n_max: usize,
    max_exp: u32,
    limit: Option<u64>,
    seed: u64,
    samples: usize,
    format: Format,
    fault: Option<&str>,
    bounds: Bounds,
) -> Outcome {
    let fault = match fault {
        None => None,
        Some("craig-sign") => Some(Fault::CraigSign),
        Some(other) => return Err(Failure::Input(format!("unknown fault {other:?}"))),
    };
    let opts = VerifyOptions { n_max, max_exp, coeff_limit: limit, seed, samples, bounds, fault };
    let report = verify::run(&opts)?;
    let out = match format {
        Format::Json => pretty(&report.to_json()),
        _ => {
            let mut lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    let mut line = format!("{} {} ({} cases, {} ms", if c.passed { "PASS" } else { "FAIL" }, c.name, c.cases, c.millis);
                    if c.skipped > 0 {
                        line.push_str(&format!(", {} skipped", c.skipped));
                    }
                    line.push(')');
                    for f in &c.failures {
                        line.push_str(&format!("\n    {f}"));
                    }
                    line
                })
                .collect();
            if let Some(e) = &report.erratum {
                lines.push(format!(
                    "Specht local factor: sum_(j<=v) X^j consistent = {}, sum_(j<v) X^j consistent = {}",
                    e.full_sum_consistent, e.short_sum_consistent
                ));
            }
            lines.join("\n")
        }
    };
    if report.passed {
        Ok(out)
    } else {
        println!("{out}");
        Err(Failure::Check(format!("failed: {}", report.failed_names().join(", "))))
    }
}

fn specht(n: usize, oracle: bool, format: Format, bounds: &Bounds) -> Outcome {
    check_n(n)?;
    let closed = specht_generators_closed::<BigInt>(n)?;
    let checked = oracle || n <= bounds.oracle_n;
    if checked && closed != specht_generators_oracle::<BigInt>(n, bounds)? {
        return Err(Failure::Check(format!("closed-form Specht matrices disagree with the polytabloid expansion at n = {n}")));
    }
    let p = intertwiner(&closed, &craig_generators::<BigInt>(n)?)?;
    let lattice = Lattice::new(p.clone())?;
    let d = identify_craig_class(&lattice, n)?.ok_or_else(|| Failure::Check("Specht lattice matches no L(d)".into()))?;
    Ok(match format {
        Format::Json => pretty(&json!({
            "n": n,
            "generators": closed.to_json(),
            "oracle_checked": checked,
            "intertwiner": p,
            "lattice_basis": lattice.hnf(),
            "d": d,
        })),
        _ => {
            let mut s = String::new();
            for (k, m) in closed.mats().iter().enumerate() {
                s.push_str(&format!("s_{} =\n{m}\n", k + 1));
            }
            s.push_str(&format!("intertwiner =\n{p}\nd = {d}"));
            s
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bounds = cli.bounds.resolve();
    let result = match cli.command {
        Command::Zeta { n, d, format, oracle, limit } => zeta(n, d, format, oracle, limit, &bounds),
        Command::Coeffs { n, d, limit, format, oracle } => coeffs(n, d, limit, format, oracle, &bounds),
        Command::Enumerate { n, d, prime, max_exp, format, oracle, lattices } => {
            enumerate(n, d, prime, max_exp, format, oracle, lattices, &bounds)
        }
        Command::Identify { file, n, format } => identify(&file, n, format),
        Command::Verify { n_max, max_exp, limit, seed, samples, format, inject_fault } => {
            verify_cmd(n_max, max_exp, limit, seed, samples, format, inject_fault.as_deref(), bounds)
        }
        Command::Specht { n, oracle, format } => specht(n, oracle, format, &bounds),
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
