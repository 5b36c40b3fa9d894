//! `gradedmf`: command-line front end for modular curve invariants, T-form
//! construction, and generator computations for graded rings of modular
//! forms on Gamma_0(N).
//!
//! Exit codes: 0 success/verified, 1 usage error, 2 certification or
//! verification failure, 3 partial result (provider gap).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gradedmf_core::bases::{ingest_qexp_file, print_records, BasisProvider};
use gradedmf_core::etaforms::{prime_optimal_tform, validate_tform};
use gradedmf_core::genring::{
    algorithm1, default_tform, expected_q_table_30, expected_z_table, table_report, Algo1Error,
    HaltReason, RingPolicy, TableRow,
};
use gradedmf_core::modcurve::{
    cusps_gamma0, has_no_elliptic, invariants_gamma0, weight_bound_complex, Group,
};
use gradedmf_core::qseries::CoeffRing;

#[derive(Parser)]
#[command(
    name = "gradedmf",
    about = "graded rings of modular forms on Gamma_0(N): invariants, T-forms, generators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Args)]
struct DataOpts {
    /// Additional q-expansion data files (repeatable); the bundled pack is
    /// always loaded first.  Env: GRADEDMF_DATA (path list, ':'-separated).
    #[arg(long = "data")]
    data: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Modular curve invariants of X_0(N)
    Invariants { level: u64 },
    /// Construct and certify a T-form at level N
    Tform {
        level: u64,
        /// Use the low-weight (eta(pz)^p / eta(z))^2 construction (prime N >= 5)
        #[arg(long)]
        optimal: bool,
        /// Ring for the unit-leading-coefficient check
        #[arg(long, default_value = "Q")]
        ring: String,
    },
    /// Generators of M(Gamma_0(N), ring)
    Generators {
        level: u64,
        /// Coefficient ring: Q, Z, Z/1_M, or Z/1_6N
        #[arg(long, default_value = "Z/1_6N")]
        ring: String,
        /// Even weight cap; without it a T-form bound is required
        #[arg(long)]
        cap: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        data: DataOpts,
    },
    /// Per-level generator table over a levels range, e.g. `table 1..30`
    Table {
        /// Range `a..b` (inclusive) or a single level
        range: String,
        /// Ring policy: Q or Z/1_6N
        #[arg(long, default_value = "Q")]
        ring: String,
        /// Cap for levels without a theorem-backed bound
        #[arg(long, default_value_t = 12)]
        cap: u32,
        /// Compare against the published rows and fail on mismatch
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        data: DataOpts,
    },
    /// Parse, validate and reprint q-expansion data files
    Ingest {
        files: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn parse_ring(s: &str, level: u64) -> Result<CoeffRing, String> {
    if s == "Z/1_6N" {
        return Ok(CoeffRing::ZInv(6 * level));
    }
    CoeffRing::parse(s).ok_or_else(|| format!("bad ring spec `{s}` (expected Q, Z, Z/1_M, Z/1_6N)"))
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.parse().map_err(|_| format!("bad range `{s}`"))?;
        let b: u64 = b.parse().map_err(|_| format!("bad range `{s}`"))?;
        if a == 0 || b < a {
            return Err(format!("bad range `{s}`"));
        }
        Ok((a, b))
    } else {
        let n: u64 = s.parse().map_err(|_| format!("bad range `{s}`"))?;
        if n == 0 {
            return Err(format!("bad range `{s}`"));
        }
        Ok((n, n))
    }
}

fn build_provider(opts: &DataOpts) -> Result<BasisProvider, String> {
    let mut p = BasisProvider::with_bundled_pack();
    let mut paths = opts.data.clone();
    if let Ok(env) = std::env::var("GRADEDMF_DATA") {
        paths.extend(env.split(':').filter(|s| !s.is_empty()).map(PathBuf::from));
    }
    for path in paths {
        let recs = ingest_qexp_file(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        p.add_records(recs);
    }
    Ok(p)
}

fn halt_str(h: HaltReason) -> String {
    match h {
        HaltReason::TformBound => "tform-bound".into(),
        HaltReason::CoverageTrick => "coverage-trick".into(),
        HaltReason::WeightCap(k) => format!("weight-cap({k})"),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Invariants { level } => {
            if level == 0 {
                return Err("level must be >= 1".into());
            }
            let inv = invariants_gamma0(level);
            println!("X_0({level})");
            println!("  index          {}", inv.index);
            println!("  nu2, nu3       {}, {}", inv.nu2, inv.nu3);
            println!("  cusps          {}", inv.num_cusps);
            println!("  genus          {}", inv.genus);
            println!("  elliptic-free  {}", has_no_elliptic(level));
            match weight_bound_complex(Group::Gamma0, level) {
                Some(b) => println!("  weight bound   {b} (over C)"),
                None => println!("  weight bound   none (elliptic points, non-squarefree)"),
            }
            println!("  cusp list (numerator/denominator, width):");
            for c in cusps_gamma0(level) {
                let name = if c.is_infinity {
                    "infinity".to_string()
                } else {
                    format!("{}/{}", c.numer, c.denom)
                };
                println!("    {name:>10}  width {}", c.width);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tform {
            level,
            optimal,
            ring,
        } => {
            if level == 0 {
                return Err("level must be >= 1".into());
            }
            let ring = parse_ring(&ring, level)?;
            let t = if optimal {
                if !gradedmf_core::arith::is_prime(level) || level < 5 {
                    return Err("--optimal requires prime level >= 5".into());
                }
                prime_optimal_tform(level)
            } else {
                default_tform(level)
            };
            println!("T-form at level {level}");
            println!("  weight  {}", t.weight);
            println!("  order   {}", t.order);
            println!("  eta exponents  {:?}", t.eta.exponents);
            match validate_tform(&t, &ring) {
                Ok(()) => println!("  certification  ok over {ring}"),
                Err(errs) => {
                    for e in errs {
                        eprintln!("  certification FAILED: {e}");
                    }
                    return Ok(ExitCode::from(2));
                }
            }
            let q = t.qexp(t.order as usize + 6);
            let lead: Vec<String> = (t.order as usize..q.prec())
                .map(|i| format!("{}*q^{i}", q.coeff(i)))
                .collect();
            println!("  q-expansion    {} + ...", lead.join(" + "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Generators {
            level,
            ring,
            cap,
            format,
            data,
        } => {
            if level == 0 {
                return Err("level must be >= 1".into());
            }
            if let Some(c) = cap {
                if c < 2 || c % 2 != 0 {
                    return Err("cap must be even and >= 2".into());
                }
            }
            let ring = parse_ring(&ring, level)?;
            let provider = build_provider(&data)?;
            let t = default_tform(level);
            match algorithm1(level, &ring, &provider, Some(&t), cap) {
                Ok(gs) => {
                    let counts: Vec<String> = gs
                        .weight_counts()
                        .iter()
                        .map(|(w, c)| format!("{w}:{c}"))
                        .collect();
                    if format == Format::Records {
                        println!(
                            "{level} {ring} {} {} {{{}}}",
                            gs.max_weight(),
                            halt_str(gs.halted_by),
                            counts.join(",")
                        );
                    } else {
                        println!("level {level} over {ring}");
                        println!("  max generator weight  {}", gs.max_weight());
                        println!("  halted by             {}", halt_str(gs.halted_by));
                        println!("  generators per weight {{{}}}", counts.join(", "));
                        let complete = !matches!(gs.halted_by, HaltReason::WeightCap(_));
                        println!(
                            "  coverage              {}",
                            if complete {
                                "complete (full graded ring)".to_string()
                            } else {
                                format!("partial, checked to weight {}", gs.checked_to)
                            }
                        );
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e @ Algo1Error::ProviderGap { .. }) => {
                    eprintln!("partial: {e}");
                    Ok(ExitCode::from(3))
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Table {
            range,
            ring,
            cap,
            verify,
            format,
            data,
        } => {
            let (a, b) = parse_range(&range)?;
            let policy = match ring.as_str() {
                "Q" => RingPolicy::Q,
                "Z/1_6N" => RingPolicy::ZInv6N,
                other => return Err(format!("bad ring policy `{other}` (expected Q or Z/1_6N)")),
            };
            let provider = build_provider(&data)?;
            let levels: Vec<u64> = (a..=b).collect();
            let rows = table_report(&levels, policy, &provider, cap);
            let mut partial = false;
            let mut mismatch = false;
            if format == Format::Text {
                println!("# level  generated-in  up-to  (ring policy {ring})");
            }
            for (n, row) in levels.iter().zip(rows.iter()) {
                match row {
                    Ok(TableRow {
                        level,
                        max_weight,
                        up_to,
                        halted_by,
                    }) => {
                        let upto = up_to.map_or("--".to_string(), |c| c.to_string());
                        if format == Format::Records {
                            println!(
                                "{level} {ring} {max_weight} {} {upto}",
                                halt_str(*halted_by)
                            );
                        } else {
                            println!("{level:>7}  {max_weight:>12}  {upto:>5}");
                        }
                        if verify {
                            if let Some(bad) = verify_row(policy, *level, *max_weight, *up_to) {
                                eprintln!("verify: level {level}: {bad}");
                                mismatch = true;
                            }
                        }
                    }
                    Err(e) => {
                        println!("{n:>7}  (no result: {e})");
                        partial = true;
                    }
                }
            }
            if mismatch {
                Ok(ExitCode::from(2))
            } else if partial {
                Ok(ExitCode::from(3))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Ingest { files } => {
            if files.is_empty() {
                return Err("ingest requires at least one file".into());
            }
            let mut all = Vec::new();
            for path in files {
                let recs =
                    ingest_qexp_file(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                eprintln!("{}: {} records ok", path.display(), recs.len());
                all.extend(recs);
            }
            println!("{}", print_records(&all));
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Compare one computed row against the published tables; None = match.
fn verify_row(
    policy: RingPolicy,
    level: u64,
    max_weight: u32,
    up_to: Option<u32>,
) -> Option<String> {
    match policy {
        RingPolicy::Q => {
            if !(1..=30).contains(&level) {
                return Some("no published row".into());
            }
            let want = expected_q_table_30()[level as usize - 1];
            (max_weight != want).then(|| format!("generated-in {max_weight}, published {want}"))
        }
        RingPolicy::ZInv6N => {
            let Some(&(_, want_w, want_cap)) = expected_z_table()
                .iter()
                .find(|(l, _, _)| *l == level)
            else {
                return Some("no published row".into());
            };
            if max_weight != want_w {
                return Some(format!("generated-in {max_weight}, published {want_w}"));
            }
            if up_to.is_none() != want_cap.is_none() {
                return Some(format!(
                    "completeness mismatch: computed {up_to:?}, published {want_cap:?}"
                ));
            }
            None
        }
    }
}
