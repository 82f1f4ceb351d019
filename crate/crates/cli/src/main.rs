//! `precanon`: compute pre-canonical bases and transitions, run verification
//! suites and positivity scans.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use precanonical::rootsys::{dominant_box, Family, RootSystem, Weight};
use precanonical::spherical::{BasisId, SphElement, SphericalHecke};
use precanonical::theorems::{self, VerifyReport};
use precanonical::Error;

#[derive(Parser, Debug)]
#[command(name = "precanon", version, about = "Pre-canonical bases of the spherical Hecke algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct SystemArgs {
    /// Root system family (A or D).
    #[arg(long)]
    family: Option<Family>,
    /// Rank of the root system.
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(clap::Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print `N^i_lambda` in a chosen basis.
    Basis {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated fundamental-weight coordinates.
        #[arg(long)]
        weight: String,
        /// Pre-canonical level `i`.
        #[arg(long, visible_alias = "i")]
        level: usize,
        /// Target basis: std, canonical or precanon:i.
        #[arg(long = "in", default_value = "canonical")]
        target: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the coefficients of `N^{i+1}_lambda` in `N^i` over a box of weights.
    Transition {
        #[command(flatten)]
        system: SystemArgs,
        /// Largest coordinate of the weights in the box.
        #[arg(long = "box")]
        bound: i64,
        #[arg(long, visible_alias = "i")]
        level: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite and print one JSON report per line.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "box")]
        bound: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Report coefficient signs or combination counts over a box of weights.
    Scan {
        #[arg(long, value_enum, default_value_t = ScanKind::Positivity)]
        kind: ScanKind,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long = "box")]
        bound: i64,
        /// Comma-separated levels; defaults to every level.
        #[arg(long)]
        levels: Option<String>,
        /// Scan this many weights drawn from the box instead of the whole box.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    LowLevels,
    Nhalf,
    A3,
    A4,
    Mlemmas,
    Positivity,
    D4witness,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ScanKind {
    Positivity,
    Atomic,
    Explore,
}

/// Errors caused by the invocation rather than by a failed assertion.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn engine(e: Error) -> anyhow::Error {
    usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Basis { system, weight, level, target, output } => {
            let h = hecke(&system, None)?;
            let lam = parse_weight(&weight)?;
            let target = BasisId::parse(&target).map_err(engine)?;
            let n = h.precanonical(&lam, level).map_err(engine)?;
            let e = h.express(&n, target).map_err(engine)?;
            let mut w = writer(&output)?;
            render_basis(&mut w, &h, &lam, level, &e, output.format)?;
            w.flush()?;
            Ok(true)
        }
        Command::Transition { system, bound, level, output } => {
            let h = hecke(&system, None)?;
            let m = h.max_height();
            if level == 0 || level > m {
                return Err(usage(format!("level {level} has no higher basis; choose 1 <= i <= {m}")));
            }
            let weights = box_weights(&h, bound)?;
            let rows = pool(output.workers)?.install(|| {
                weights.par_iter().map(|lam| h.transition(lam, level)).collect::<Result<Vec<_>, _>>()
            });
            let rows = rows.map_err(engine)?;
            let mut w = writer(&output)?;
            render_transitions(&mut w, &h, &weights, level, &rows, output.format)?;
            w.flush()?;
            Ok(true)
        }
        Command::Verify { suite, system, bound, output } => {
            let default = match suite {
                Suite::A4 => (Family::A, 4),
                Suite::D4witness => (Family::D, 4),
                _ => (Family::A, 3),
            };
            let h = hecke(&system, Some(default))?;
            let weights = box_weights(&h, bound)?;
            let (reports, ok) = pool(output.workers)?.install(|| verify(&h, suite, &weights))?;
            let mut w = writer(&output)?;
            for r in &reports {
                writeln!(w, "{}", r.to_json_line())?;
            }
            writeln!(w, "{}", theorems::summarize(&reports))?;
            w.flush()?;
            Ok(ok)
        }
        Command::Scan { kind, system, bound, levels, sample, seed, output } => {
            let h = hecke(&system, None)?;
            let mut weights = box_weights(&h, bound)?;
            if let Some(k) = sample {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                weights.shuffle(&mut rng);
                weights.truncate(k);
                weights.sort();
            }
            let levels = match levels {
                Some(s) => parse_list(&s)?,
                None => (1..=h.max_height()).collect(),
            };
            let lines = pool(output.workers)?.install(|| scan(&h, kind, &weights, &levels))?;
            let mut w = writer(&output)?;
            for line in &lines {
                writeln!(w, "{line}")?;
            }
            w.flush()?;
            Ok(true)
        }
    }
}

fn hecke(system: &SystemArgs, default: Option<(Family, usize)>) -> anyhow::Result<SphericalHecke> {
    let (family, rank) = match (system.family, system.rank, default) {
        (Some(f), Some(r), _) => (f, r),
        (None, None, Some(d)) => d,
        (Some(f), None, Some((df, r))) if f == df => (f, r),
        _ => return Err(usage("--family and --rank are required")),
    };
    let rs = RootSystem::new(family, rank).map_err(engine)?;
    Ok(SphericalHecke::new(rs))
}

fn parse_list(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("bad level list {s:?}"))))
        .collect()
}

fn parse_weight(s: &str) -> anyhow::Result<Weight> {
    let coords: Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
    coords.map(|c| Weight::new(&c)).map_err(|_| usage(format!("bad weight {s:?}")))
}

fn box_weights(h: &SphericalHecke, bound: i64) -> anyhow::Result<Vec<Weight>> {
    if bound < 0 {
        return Err(usage("--box must be nonnegative"));
    }
    let mut weights = dominant_box(h.root_system().rank(), bound);
    weights.sort();
    Ok(weights)
}

fn pool(workers: usize) -> anyhow::Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(usage("--workers must be positive"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().context("starting worker pool")
}

fn writer(output: &OutputArgs) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn render_basis(
    w: &mut dyn Write,
    h: &SphericalHecke,
    lam: &Weight,
    level: usize,
    e: &SphElement,
    format: Format,
) -> anyhow::Result<()> {
    let rs = h.root_system();
    match format {
        Format::Json => {
            let doc = json!({
                "family": rs.family().to_string(),
                "rank": rs.rank(),
                "lambda": lam,
                "level": level,
                "element": e.to_json(rs),
            });
            writeln!(w, "{doc}")?;
        }
        Format::Csv => {
            writeln!(w, "basis,weight,coeff")?;
            for (mu, c) in e.sorted_terms(rs) {
                writeln!(w, "{},\"{mu}\",{c}", e.basis())?;
            }
        }
        Format::Pretty => {
            writeln!(w, "N^{level}_{lam} in basis {}:", e.basis())?;
            for (mu, c) in e.sorted_terms(rs) {
                writeln!(w, "  {mu}  {c}")?;
            }
        }
    }
    Ok(())
}

fn render_transitions(
    w: &mut dyn Write,
    h: &SphericalHecke,
    weights: &[Weight],
    level: usize,
    rows: &[SphElement],
    format: Format,
) -> anyhow::Result<()> {
    let rs = h.root_system();
    if format == Format::Csv {
        writeln!(w, "lambda,mu,coeff")?;
    }
    for (lam, e) in weights.iter().zip(rows) {
        for (mu, c) in e.sorted_terms(rs) {
            match format {
                Format::Json => writeln!(w, "{}", json!({ "lambda": lam, "mu": mu, "i": level, "coeff": c }))?,
                Format::Csv => writeln!(w, "\"{lam}\",\"{mu}\",{c}")?,
                Format::Pretty => writeln!(w, "P_{level}({lam}, {mu}) = {c}")?,
            }
        }
    }
    Ok(())
}

/// Reports of one suite and whether every asserted claim passed.
fn verify(h: &SphericalHecke, suite: Suite, weights: &[Weight]) -> anyhow::Result<(Vec<VerifyReport>, bool)> {
    let rs = h.root_system();
    let type_a = rs.family() == Family::A;
    let n = rs.rank();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let require = |ok: bool, what: &str| if ok || suite == Suite::All { Ok(()) } else { Err(usage(what.to_string())) };
    require(!wants(Suite::Nhalf) || (type_a && n >= 2), "nhalf needs type A_n with n >= 2")?;
    require(!wants(Suite::Mlemmas) || (type_a && n >= 2), "mlemmas needs type A_n with n >= 2")?;
    require(!wants(Suite::A3) || (type_a && n == 3), "a3 needs type A3")?;
    require(!wants(Suite::A4) || (type_a && n == 4), "a4 needs type A4")?;
    require(!wants(Suite::D4witness) || (rs.family() == Family::D && n == 4), "d4witness needs type D4")?;

    let levels = theorems::nhalf_levels(n);
    let per_weight: Vec<Vec<VerifyReport>> = weights
        .par_iter()
        .map(|lam| -> Result<Vec<VerifyReport>, Error> {
            let mut out = Vec::new();
            if wants(Suite::LowLevels) {
                out.extend(theorems::verify_low_levels(h, lam)?);
            }
            if wants(Suite::Nhalf) && type_a && n >= 2 {
                for &i in &levels {
                    out.push(theorems::verify_nhalf(h, lam, i)?);
                }
            }
            if wants(Suite::Mlemmas) && type_a && n >= 2 {
                for &i in &levels {
                    out.extend(theorems::verify_m_lemmas(h, lam, i)?);
                }
            }
            if wants(Suite::A3) && type_a && n == 3 {
                out.extend(theorems::verify_a3(h, lam)?);
            }
            if wants(Suite::A4) && type_a && n == 4 {
                out.extend(theorems::verify_a4(h, lam)?);
            }
            if wants(Suite::Positivity) {
                let all: Vec<usize> = (1..=h.max_height()).collect();
                out.extend(theorems::positivity_scan(h, std::slice::from_ref(lam), &all)?);
            }
            if wants(Suite::D4witness) && rs.family() == Family::D && n == 4 {
                out.extend(theorems::atomic_scan(h, std::slice::from_ref(lam))?);
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()
        .map_err(engine)?;
    let mut reports: Vec<VerifyReport> = per_weight.into_iter().flatten().collect();

    // Positivity is asserted in type A only; atomic negativity is a finding.
    let asserted = |r: &VerifyReport| !(r.claim == "positivity.atomic" || (r.claim.starts_with("positivity") && !type_a));
    let mut ok = reports.iter().filter(|r| asserted(r)).all(VerifyReport::passed);
    if wants(Suite::D4witness) && rs.family() == Family::D && n == 4 {
        let found = reports.iter().any(|r| r.claim == "positivity.atomic" && !r.passed());
        let inst = json!({ "family": "D", "rank": 4, "box": weights.iter().flat_map(|w| w.coords().iter().copied()).max() });
        let witness = if found {
            VerifyReport::pass("d4witness.negative_found", inst)
        } else {
            VerifyReport::fail("d4witness.negative_found", inst, Value::Null, Value::Null)
                .with_note("no negative coefficient in the box")
        };
        ok &= found;
        reports.push(witness);
    }
    Ok((reports, ok))
}

fn scan(h: &SphericalHecke, kind: ScanKind, weights: &[Weight], levels: &[usize]) -> anyhow::Result<Vec<String>> {
    let rs = h.root_system();
    let lines: Vec<Vec<String>> = weights
        .par_iter()
        .map(|lam| -> anyhow::Result<Vec<String>> {
            let one = std::slice::from_ref(lam);
            Ok(match kind {
                ScanKind::Positivity => theorems::positivity_scan(h, one, levels)
                    .map_err(engine)?
                    .iter()
                    .map(VerifyReport::to_json_line)
                    .collect(),
                ScanKind::Atomic => {
                    theorems::atomic_scan(h, one).map_err(engine)?.iter().map(VerifyReport::to_json_line).collect()
                }
                ScanKind::Explore => {
                    let mut out = Vec::new();
                    for mu in rs.dominant_below(lam) {
                        for &i in levels.iter().filter(|&&i| i >= 2) {
                            let e = theorems::explore_deg_i(h, lam, &mu, i).map_err(engine)?;
                            out.push(serde_json::to_string(&e).map_err(|e| anyhow!(e))?);
                        }
                    }
                    out
                }
            })
        })
        .collect::<anyhow::Result<_>>()?;
    Ok(lines.into_iter().flatten().collect())
}
