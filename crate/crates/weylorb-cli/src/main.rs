//! `weylorb`: Weyl group orbits of the classical Lie algebras and their
//! branching into maximal reductive subalgebra orbits, in exact arithmetic.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use weylorb::{
    branch, catalog, catalog_entries, catalog_subjoined, compose_projection, derive_projection,
    generate_orbit, invert_projection, parse_algebra, parse_weight, validate_projection,
    Error as LibError, MatrixRecord, ProjectionMatrix, Provenance, ReductiveAlgebra, Weight,
};

#[derive(Parser)]
#[command(
    name = "weylorb",
    version,
    about = "Weyl group orbits and orbit branching rules, exactly",
    after_help = "Weights are written per component, e.g. \"(2,0,1)\" or \"(1)(1)(-3)\"; \
                  entries are integers or rationals a/b. Algebra names look like A3, B4 \
                  or A2xA1xU1. MATRIX arguments accept a catalog pair SRC:TGT or a path \
                  to a JSON record produced with --structured/--output."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON records instead of text
    #[arg(long, global = true)]
    structured: bool,

    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the orbit of a dominant weight, one point per line
    Orbit {
        /// Algebra name, e.g. A3 or A1xA1xU1
        algebra: String,
        /// Dominant seed weight, e.g. "(2,0,1)"
        weight: String,
    },
    /// Branch an orbit into subalgebra orbits using the catalog matrix
    Branch {
        /// Source algebra (pure A-type), e.g. A3
        source: String,
        /// Target subalgebra, e.g. C2 or A2xU1
        target: String,
        /// Dominant seed weight in the source algebra
        weight: String,
        /// Use the subjoined matrix for the pair instead of the inclusion
        #[arg(long)]
        subjoined: bool,
    },
    /// Show one catalog matrix, or list every entry with --list
    Catalog {
        source: Option<String>,
        target: Option<String>,
        /// List all catalog entries with their provenance
        #[arg(long)]
        list: bool,
        /// Select the subjoined entry for the pair
        #[arg(long)]
        subjoined: bool,
    },
    /// Solve for the projection matrix sending each PAIR "(v):(w)"
    Derive {
        source: String,
        target: String,
        /// Associated weight pairs, e.g. "(1,0,0):(1,0)"
        #[arg(required = true)]
        pairs: Vec<String>,
    },
    /// Multiply two projections along a chain: OUTER applied after INNER
    Compose {
        /// Outer matrix: catalog pair SRC:TGT or a JSON record file
        outer: String,
        /// Inner matrix: catalog pair SRC:TGT or a JSON record file
        inner: String,
    },
    /// Invert a square projection matrix
    Invert {
        /// Catalog pair SRC:TGT or a JSON record file
        matrix: String,
    },
    /// Check that projections decompose orbits exactly; exit 2 on failure
    Verify {
        /// Validate a single catalog pair
        source: Option<String>,
        target: Option<String>,
        /// Validate every catalog entry
        #[arg(long)]
        all: bool,
        /// Validate a matrix from a JSON record file
        #[arg(long, value_name = "PATH")]
        matrix: Option<PathBuf>,
        /// Seed weights (defaults to the standard four-seed set)
        #[arg(long, value_name = "WEIGHT")]
        seeds: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let mut out = String::new();
    let code = match &cli.command {
        Command::Orbit { algebra, weight } => {
            let algebra = parse_algebra(algebra)?;
            let seed = parse_weight(&algebra, weight)?;
            let orbit = generate_orbit(&seed)?;
            if cli.structured {
                let record = serde_json::json!({
                    "algebra": algebra.to_string(),
                    "seed": seed.to_string(),
                    "points": orbit.iter_weights().map(|p| p.to_string()).collect::<Vec<_>>(),
                });
                writeln!(out, "{record}")?;
            } else {
                for point in orbit.iter_weights() {
                    writeln!(out, "{point}")?;
                }
            }
            ExitCode::SUCCESS
        }
        Command::Branch {
            source,
            target,
            weight,
            subjoined,
        } => {
            let matrix = lookup_pair(source, target, *subjoined)?;
            let seed = parse_weight(matrix.source(), weight)?;
            let rule = branch(&seed, &matrix)?;
            if cli.structured {
                writeln!(out, "{}", serde_json::to_string(&rule.to_record())?)?;
            } else {
                writeln!(out, "{rule}")?;
            }
            ExitCode::SUCCESS
        }
        Command::Catalog {
            source,
            target,
            list,
            subjoined,
        } => {
            if *list {
                for entry in catalog_entries() {
                    if cli.structured {
                        writeln!(out, "{}", serde_json::to_string(&entry.to_record())?)?;
                    } else {
                        let rel = if entry.provenance() == Provenance::Subjoined {
                            "=>"
                        } else {
                            ">"
                        };
                        writeln!(
                            out,
                            "{} {} {}  [{}]",
                            entry.source(),
                            rel,
                            entry.target(),
                            entry.provenance()
                        )?;
                    }
                }
            } else {
                let (Some(source), Some(target)) = (source, target) else {
                    bail!("catalog needs SOURCE and TARGET, or --list");
                };
                let entry = lookup_pair(source, target, *subjoined)?;
                emit_matrix(&mut out, &entry, cli.structured)?;
            }
            ExitCode::SUCCESS
        }
        Command::Derive {
            source,
            target,
            pairs,
        } => {
            let source = parse_algebra(source)?;
            let target = parse_algebra(target)?;
            let pairs = pairs
                .iter()
                .map(|p| parse_pair(&source, &target, p))
                .collect::<Result<Vec<_>>>()?;
            let matrix = derive_projection(&source, &target, &pairs)?;
            emit_matrix(&mut out, &matrix, cli.structured)?;
            ExitCode::SUCCESS
        }
        Command::Compose { outer, inner } => {
            let outer = resolve_matrix(outer)?;
            let inner = resolve_matrix(inner)?;
            let composed = compose_projection(&outer, &inner)?;
            emit_matrix(&mut out, &composed, cli.structured)?;
            ExitCode::SUCCESS
        }
        Command::Invert { matrix } => {
            let matrix = resolve_matrix(matrix)?;
            let inverse = invert_projection(&matrix)?;
            emit_matrix(&mut out, &inverse, cli.structured)?;
            ExitCode::SUCCESS
        }
        Command::Verify {
            source,
            target,
            all,
            matrix,
            seeds,
        } => {
            let targets: Vec<ProjectionMatrix> = if *all {
                catalog_entries().to_vec()
            } else if let Some(path) = matrix {
                vec![read_matrix(path)?]
            } else if let (Some(source), Some(target)) = (source, target) {
                vec![lookup_pair(source, target, false)?]
            } else {
                bail!("verify needs SOURCE TARGET, --matrix FILE, or --all");
            };

            let mut failures = 0usize;
            let mut checks = 0usize;
            for entry in &targets {
                let seed_weights: Vec<Weight> = if seeds.is_empty() {
                    standard_seeds(entry.source())
                } else {
                    seeds
                        .iter()
                        .map(|s| parse_weight(entry.source(), s).map_err(Into::into))
                        .collect::<Result<_>>()?
                };
                let report = validate_projection(entry, &seed_weights);
                for check in &report.checks {
                    checks += 1;
                    let status = if check.pass { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{status} {} > {}  {}  {}",
                        entry.source(),
                        entry.target(),
                        check.seed,
                        check.detail
                    )?;
                    if !check.pass {
                        failures += 1;
                    }
                }
            }
            writeln!(out, "{checks} checks, {failures} failures")?;
            if failures > 0 {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
    };

    match &cli.output {
        Some(path) => std::fs::write(path, out).with_context(|| format!("writing {path:?}"))?,
        None => print!("{out}"),
    }
    Ok(code)
}

/// The four-seed validation set: highest node, lowest node, both ends, and
/// strictly dominant.
fn standard_seeds(source: &ReductiveAlgebra) -> Vec<Weight> {
    let dim = source.total_dim();
    let mut patterns = vec![vec![0i64; dim], vec![0i64; dim], vec![0i64; dim], vec![1i64; dim]];
    patterns[0][0] = 1;
    patterns[1][dim - 1] = 1;
    patterns[2][0] = 1;
    patterns[2][dim - 1] = 1;
    patterns.sort();
    patterns.dedup();
    patterns
        .into_iter()
        .map(|coords| Weight::from_integers(source.clone(), &coords).unwrap())
        .collect()
}

fn lookup_pair(source: &str, target: &str, subjoined: bool) -> Result<ProjectionMatrix> {
    let source = parse_algebra(source)?;
    let target = parse_algebra(target)?;
    let looked = if subjoined {
        catalog_subjoined(&source, &target)
    } else {
        catalog(&source, &target)
    };
    looked.map_err(|e| match e {
        LibError::UnknownPair { .. } => anyhow!("{e}{}", nearest_entries(&source, &target)),
        other => other.into(),
    })
}

/// On an unknown pair, list catalog entries sharing the source or target.
fn nearest_entries(source: &ReductiveAlgebra, target: &ReductiveAlgebra) -> String {
    let mut related: Vec<String> = catalog_entries()
        .iter()
        .filter(|e| e.source() == source || e.target() == target)
        .map(|e| format!("  {} > {}", e.source(), e.target()))
        .collect();
    related.dedup();
    if related.is_empty() {
        String::new()
    } else {
        format!("\nnearest catalog entries:\n{}", related.join("\n"))
    }
}

/// A matrix argument is either a catalog pair `SRC:TGT` or a record file.
fn resolve_matrix(spec: &str) -> Result<ProjectionMatrix> {
    if let Some((source, target)) = spec.split_once(':') {
        return lookup_pair(source, target, false);
    }
    read_matrix(Path::new(spec))
}

fn read_matrix(path: &Path) -> Result<ProjectionMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
    let record: MatrixRecord =
        serde_json::from_str(text.trim()).with_context(|| format!("parsing {path:?}"))?;
    Ok(ProjectionMatrix::from_record(&record)?)
}

fn parse_pair(
    source: &ReductiveAlgebra,
    target: &ReductiveAlgebra,
    text: &str,
) -> Result<(Weight, Weight)> {
    let (v, w) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("pair {text:?} is not of the form \"(v):(w)\""))?;
    Ok((parse_weight(source, v)?, parse_weight(target, w)?))
}

fn emit_matrix(out: &mut String, matrix: &ProjectionMatrix, structured: bool) -> Result<()> {
    if structured {
        writeln!(out, "{}", serde_json::to_string(&matrix.to_record())?)?;
    } else {
        writeln!(out, "{matrix}")?;
    }
    Ok(())
}
