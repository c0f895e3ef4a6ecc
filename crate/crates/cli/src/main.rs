//! Command-line surface over the walk library: exact character tables,
//! discriminant spectra, overlap reconciliation runs, mixing reports and the
//! invariant suite. All machine output is CSV or JSON; exact rationals are
//! serialized as `p/q` strings.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational, Zero};

use szwalk::characters::character;
use szwalk::partition::{factorial, Partition};
use szwalk::report::OverlapRow;
use szwalk::spectral::{bound_envelope, dense, spectrum_of_d, OverlapModel};
use szwalk::symgroup::Permutation;
use szwalk::verify::{run as run_verify, VerifyProfile};
use szwalk::WalkOperator;

/// Character tables get impractical long before the structural guard bites.
const MAX_TABLE_N: usize = 30;

#[derive(Parser)]
#[command(
    name = "szwalk",
    about = "Szegedy walk on the transposition Cayley graph of S_n",
    version
)]
struct Cli {
    /// Cap the rayon worker pool (no effect in a sequential build).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OverlapMode {
    Analytic,
    Simulated,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact character table of S_n.
    Chars {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Re-verify row orthogonality before emitting.
        #[arg(long)]
        verify: bool,
    },
    /// Spectrum of the discriminant: exact eigenvalues with multiplicities.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Cross-check against a dense numerical eigendecomposition (n ≤ 6).
        #[arg(long)]
        dense_check: bool,
    },
    /// Overlap ⟨φ_[n]|W^t|φ_e⟩: analytic, simulated, or reconciled.
    Overlap {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        t_max: usize,
        #[arg(long, value_enum, default_value_t = OverlapMode::Both)]
        mode: OverlapMode,
        /// Reconciliation tolerance; nonzero exit if exceeded in mode both.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// β for the bound envelope column, as p/q.
        #[arg(long, default_value = "81/16")]
        beta: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Time-averaged distribution (or one average-mixing-matrix row).
    Mixing {
        #[arg(long)]
        n: usize,
        /// Averaging horizon.
        #[arg(long = "T", default_value_t = 200)]
        horizon: usize,
        /// Start from A|y⟩ for this permutation (one-line, e.g. "1 0 2")
        /// instead of the identity's edge superposition.
        #[arg(long)]
        row: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Probability of the basis states ⟨g,gs| along the walk from φ_e.
    BasisProb {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        t_max: usize,
        /// Target permutation g (one-line); defaults to a full cycle.
        #[arg(long)]
        g: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run the invariant suite and report measured errors.
    Verify {
        /// Adds the n = 6 reconciliation and dense spectrum check.
        #[arg(long)]
        extended: bool,
        /// Seed for the randomized unitarity stress.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(File::create(path).context("creating --out file")?),
        None => Box::new(io::stdout().lock()),
    };
    let code = match cli.cmd {
        Cmd::Chars { n, format, verify } => cmd_chars(&mut sink, n, format, verify)?,
        Cmd::Spectrum {
            n,
            format,
            dense_check,
        } => cmd_spectrum(&mut sink, n, format, dense_check)?,
        Cmd::Overlap {
            n,
            t_max,
            mode,
            tol,
            beta,
            format,
        } => cmd_overlap(&mut sink, n, t_max, mode, tol, &beta, format)?,
        Cmd::Mixing {
            n,
            horizon,
            row,
            format,
        } => cmd_mixing(&mut sink, n, horizon, row.as_deref(), format)?,
        Cmd::BasisProb {
            n,
            t_max,
            g,
            format,
        } => cmd_basis_prob(&mut sink, n, t_max, g.as_deref(), format)?,
        Cmd::Verify {
            extended,
            seed,
            format,
        } => cmd_verify(&mut sink, extended, seed, format)?,
    };
    sink.flush()?;
    std::process::exit(code);
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) {
    if let Some(k) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: Option<usize>) {
    if threads.is_some() {
        eprintln!("--threads ignored: built without the parallel feature");
    }
}

fn parse_rational(s: &str) -> anyhow::Result<BigRational> {
    let parts: Vec<&str> = s.split('/').collect();
    let r = match parts.as_slice() {
        [p] => BigRational::from(p.parse::<BigInt>()?),
        [p, q] => BigRational::new(p.parse::<BigInt>()?, q.parse::<BigInt>()?),
        _ => bail!("expected an integer or p/q, got {s}"),
    };
    Ok(r)
}

fn cmd_chars(out: &mut dyn Write, n: usize, format: Format, verify: bool) -> anyhow::Result<i32> {
    if n == 0 || n > MAX_TABLE_N {
        bail!("chars supports 1 <= n <= {MAX_TABLE_N}");
    }
    let partitions = Partition::all(n);
    let table: Vec<Vec<BigInt>> = partitions
        .iter()
        .map(|l| {
            partitions
                .iter()
                .map(|c| character(l, c).expect("same n"))
                .collect()
        })
        .collect();
    if verify {
        let sizes: Vec<BigInt> = partitions.iter().map(|c| c.class_size()).collect();
        let order = factorial(n);
        for a in 0..partitions.len() {
            for b in a..partitions.len() {
                let dot: BigInt = (0..partitions.len())
                    .map(|c| &table[a][c] * &table[b][c] * &sizes[c])
                    .sum();
                let want = if a == b {
                    order.clone()
                } else {
                    BigInt::zero()
                };
                if dot != want {
                    eprintln!("orthogonality violated at rows {a}, {b}");
                    return Ok(1);
                }
            }
        }
        eprintln!("orthogonality verified for n = {n}");
    }
    match format {
        Format::Csv => {
            write!(out, "partition")?;
            for c in &partitions {
                write!(out, ",{c}")?;
            }
            writeln!(out)?;
            for (l, row) in partitions.iter().zip(&table) {
                write!(out, "{l}")?;
                for v in row {
                    write!(out, ",{v}")?;
                }
                writeln!(out)?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "n": n,
                "classes": partitions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "rows": partitions.iter().zip(&table).map(|(l, row)| serde_json::json!({
                    "partition": l.to_string(),
                    "values": row.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(0)
}

fn cmd_spectrum(
    out: &mut dyn Write,
    n: usize,
    format: Format,
    dense_check: bool,
) -> anyhow::Result<i32> {
    if !(2..=MAX_TABLE_N).contains(&n) {
        bail!("spectrum supports 2 <= n <= {MAX_TABLE_N}");
    }
    let components = spectrum_of_d(n);
    let mut code = 0;
    if dense_check {
        match dense::spectrum_check(n) {
            Ok(dev) => {
                eprintln!("dense eigensolver max deviation: {dev:.3e}");
                if dev > 1e-9 {
                    code = 1;
                }
            }
            Err(e) => bail!("--dense-check failed: {e}"),
        }
    }
    match format {
        Format::Csv => {
            writeln!(out, "partition,lambda_tilde,dim,multiplicity")?;
            for c in &components {
                writeln!(
                    out,
                    "{},{},{},{}",
                    c.mu, c.lambda_tilde, c.dim, c.multiplicity
                )?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "n": n,
                "components": components.iter().map(|c| serde_json::json!({
                    "partition": c.mu.to_string(),
                    "lambda_tilde": c.lambda_tilde.to_string(),
                    "dim": c.dim.to_string(),
                    "multiplicity": c.multiplicity.to_string(),
                })).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(code)
}

fn cmd_overlap(
    out: &mut dyn Write,
    n: usize,
    t_max: usize,
    mode: OverlapMode,
    tol: f64,
    beta: &str,
    format: Format,
) -> anyhow::Result<i32> {
    if !(2..=MAX_TABLE_N).contains(&n) {
        bail!("overlap supports 2 <= n <= {MAX_TABLE_N} (simulation is guarded tighter)");
    }
    let beta = parse_rational(beta)?;
    let classical = 1.0 / n as f64;
    let bound_rhs = bound_envelope(n, &beta);
    let analytic: Option<Vec<f64>> = match mode {
        OverlapMode::Simulated => None,
        _ => {
            let model = OverlapModel::new(n)?;
            Some((0..=t_max).map(|t| model.evaluate(t)).collect())
        }
    };
    let simulated: Option<Vec<f64>> = match mode {
        OverlapMode::Analytic => None,
        _ => {
            let op = WalkOperator::new(n)?;
            Some(op.overlap_series(t_max).iter().map(|c| c.re).collect())
        }
    };
    let mut rows = Vec::with_capacity(t_max + 1);
    let mut worst = 0.0f64;
    for t in 0..=t_max {
        let a = analytic.as_ref().map(|v| v[t]);
        let s = simulated.as_ref().map(|v| v[t]);
        let diff = match (a, s) {
            (Some(a), Some(s)) => Some((a - s).abs()),
            _ => None,
        };
        if let Some(d) = diff {
            worst = worst.max(d);
        }
        rows.push(OverlapRow {
            n,
            t,
            analytic: a,
            simulated: s,
            abs_diff: diff,
            bound_rhs,
            classical_uniform: classical,
        });
    }
    match format {
        Format::Csv => {
            writeln!(
                out,
                "n,t,analytic,simulated,abs_diff,bound_rhs,classical_uniform"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.n,
                    r.t,
                    r.analytic.map(|v| v.to_string()).unwrap_or_default(),
                    r.simulated.map(|v| v.to_string()).unwrap_or_default(),
                    r.abs_diff.map(|v| v.to_string()).unwrap_or_default(),
                    r.bound_rhs,
                    r.classical_uniform
                )?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
    }
    if mode == OverlapMode::Both {
        eprintln!("max |analytic - simulated| = {worst:.3e} (tolerance {tol:.3e})");
        if worst > tol {
            return Ok(1);
        }
    }
    Ok(0)
}

fn cmd_mixing(
    out: &mut dyn Write,
    n: usize,
    horizon: usize,
    row: Option<&str>,
    format: Format,
) -> anyhow::Result<i32> {
    if horizon == 0 {
        bail!("--T must be at least 1");
    }
    let op = WalkOperator::new(n)?;
    let dist = match row {
        Some(text) => {
            let y = Permutation::parse_one_line(text)?;
            op.average_mixing_row(&y, horizon)?
        }
        None => op.averaged_distribution(&op.phi_identity(), horizon),
    };
    let ncycle_mass = dist.class_mass(&Partition::new(vec![n]));
    eprintln!(
        "mass on full cycles: {ncycle_mass:.6} (classical uniform 1/n = {:.6})",
        1.0 / n as f64
    );
    match format {
        Format::Csv => dist.write_csv(&mut *out)?,
        Format::Json => {
            let entries: Vec<serde_json::Value> = dist
                .probs()
                .iter()
                .enumerate()
                .map(|(rank, p)| {
                    let perm = Permutation::unrank(n, rank as u64).expect("rank valid");
                    serde_json::json!({
                        "permutation": perm.one_line(),
                        "cycle_type": perm.cycle_type().to_string(),
                        "probability": p,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "n": n,
                "T": horizon,
                "ncycle_mass": ncycle_mass,
                "classical_uniform": 1.0 / n as f64,
                "by_class": dist.by_class().iter().map(|(c, p)| serde_json::json!({
                    "cycle_type": c.to_string(),
                    "probability": p,
                })).collect::<Vec<_>>(),
                "probabilities": entries,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(0)
}

fn cmd_basis_prob(
    out: &mut dyn Write,
    n: usize,
    t_max: usize,
    g: Option<&str>,
    format: Format,
) -> anyhow::Result<i32> {
    let op = WalkOperator::new(n)?;
    let g = match g {
        Some(text) => Permutation::parse_one_line(text)?,
        None => Permutation::full_cycle(n),
    };
    let series = op.basis_state_probability_series(&g, t_max)?;
    match format {
        Format::Csv => {
            writeln!(out, "t,probability")?;
            for (t, p) in series.iter().enumerate() {
                writeln!(out, "{t},{p}")?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({
                "n": n,
                "g": g.one_line(),
                "cycle_type": g.cycle_type().to_string(),
                "probabilities": series,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(0)
}

fn cmd_verify(
    out: &mut dyn Write,
    extended: bool,
    seed: u64,
    format: Format,
) -> anyhow::Result<i32> {
    let mut profile = if extended {
        VerifyProfile::extended()
    } else {
        VerifyProfile::default()
    };
    profile.seed = seed;
    let report = run_verify(&profile);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Csv => {
            writeln!(out, "name,max_error,tolerance,pass,detail")?;
            for c in &report.checks {
                writeln!(
                    out,
                    "{},{},{},{},\"{}\"",
                    c.name, c.max_error, c.tolerance, c.pass, c.detail
                )?;
            }
        }
    }
    for c in &report.checks {
        eprintln!(
            "{:<34} {}  max_error={:.3e}",
            c.name,
            if c.pass { "pass" } else { "FAIL" },
            c.max_error
        );
    }
    Ok(if report.all_pass { 0 } else { 1 })
}
