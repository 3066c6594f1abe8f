use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ghost_core::analysis::{
    builtin_weight2, compare_fixture, ghost_slopes, halo_rows, radius_grid, run_suite, SlopeFixture, SlopeOptions,
    Suite,
};
use ghost_core::{
    dim_eta8, level_invariants, parse_rational, Component, DimMode, GhostError, GhostSeries, LevelPair, Prime,
    Rational, Variant, Weight2SlopeData, WeightPoint, ZeroLocation,
};

#[derive(Parser)]
#[command(name = "ghost", version, about = "Slopes of U_p from the ghost series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension data at level N and Np in weight k.
    Dims {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        level: u64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Mode::True)]
        mode: Mode,
    },
    /// Zeros of the ghost coefficients, one JSON line per index.
    Coeffs {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Leading Newton slopes at a weight.
    Slopes {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        weight: WeightPoint,
        #[arg(long)]
        count: usize,
        /// Prove that the slopes are final instead of waiting for them to settle.
        #[arg(long)]
        certify: bool,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Slopes on discs of a range of radii around a center, as CSV.
    Halo {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        level: u64,
        /// `k=<int>` or `eta=<int>`.
        #[arg(long)]
        center: String,
        #[arg(long)]
        vmin: String,
        #[arg(long)]
        vmax: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
        /// Use generic discs, which also allows integral radii.
        #[arg(long)]
        generic: bool,
        #[arg(long, value_enum, default_value_t = VariantName::Std)]
        variant: VariantName,
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Leading slopes of the polygon of λ-invariants.
    Wadic {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        count: usize,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Compare ghost slopes against a slope fixture.
    Compare {
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantName::Std)]
        variant: VariantName,
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    p: u64,
    #[arg(long = "N")]
    level: u64,
    /// Component residue; defaults to the component of the weight, or 0.
    #[arg(long)]
    comp: Option<i64>,
    #[arg(long, value_enum, default_value_t = VariantName::Std)]
    variant: VariantName,
    /// Weight-2 slope data for the modified variants.
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    True,
    Formula,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantName {
    Std,
    Sharp,
    Mod2,
    Mod2alt,
}

/// Failures that are the caller's fault exit with 2; a failed comparison
/// or check exits with 1.
enum Outcome {
    Ok,
    Mismatch,
}

fn variant(name: VariantName, level: u64, data: Option<&PathBuf>) -> anyhow::Result<Variant> {
    let load = || -> anyhow::Result<Weight2SlopeData> {
        match data {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(Weight2SlopeData::from_json(&text)?)
            }
            None => {
                builtin_weight2(level).with_context(|| format!("no bundled weight-2 data for N = {level}; pass --data"))
            }
        }
    };
    Ok(match name {
        VariantName::Std => Variant::Standard,
        VariantName::Sharp => Variant::Sharp,
        VariantName::Mod2 => Variant::Modified2(load()?),
        VariantName::Mod2alt => Variant::ModifiedAlt2(load()?),
    })
}

fn build_series(args: &SeriesArgs, weight: Option<&WeightPoint>) -> anyhow::Result<GhostSeries> {
    let p = Prime::new(args.p)?;
    let comp = match (args.comp, weight) {
        (Some(r), _) => Component::new(p, r)?,
        (None, Some(w)) => Component::of_point(p, w)?,
        (None, None) => Component::new(p, 0)?,
    };
    Ok(GhostSeries::new(
        p,
        args.level,
        comp,
        variant(args.variant, args.level, args.data.as_ref())?,
    )?)
}

fn parse_center(s: &str) -> anyhow::Result<ZeroLocation> {
    match s.parse::<WeightPoint>() {
        Ok(WeightPoint::Integer(k)) => Ok(ZeroLocation::Integer(k)),
        Ok(WeightPoint::Eta(k)) => Ok(ZeroLocation::Eta(k)),
        Ok(_) => bail!("center must be k=<int> or eta=<int>, got {s}"),
        Err(_) => match s.parse::<i64>() {
            Ok(k) => Ok(ZeroLocation::Integer(k)),
            Err(_) => bail!("center must be k=<int> or eta=<int>, got {s}"),
        },
    }
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Dims { p, level, k, mode } => {
            let mode = match mode {
                Mode::True => DimMode::True,
                Mode::Formula => DimMode::FormulaExtended,
            };
            if k % 2 != 0 {
                return Err(GhostError::OddWeight(k).into());
            }
            let inv = level_invariants(level)?;
            let lp = LevelPair::new(Prime::new(p)?, level)?;
            let eta = if level % 2 == 1 && k >= 2 {
                Some(dim_eta8(level, k)?)
            } else {
                None
            };
            let obj = json!({
                "mu0": inv.mu0, "c0": inv.c0, "mu02": inv.mu02, "mu03": inv.mu03, "g0": inv.g0,
                "d_k": lp.d(k, mode), "d_k_new": lp.d_new(k, mode), "d_kp": lp.d_total(k, mode),
                "d_k_eta8": eta,
            });
            writeln!(out, "{obj}")?;
        }
        Command::Coeffs { series, from, to } => {
            if from == 0 || to < from {
                bail!("need 1 ≤ from ≤ to");
            }
            let s = build_series(&series, None)?;
            for i in from..=to {
                let c = s.coefficient(i);
                let zeros: Vec<_> = c
                    .zeros
                    .iter()
                    .map(|(z, m)| json!({"loc": z.to_string(), "mult": m}))
                    .collect();
                writeln!(out, "{}", json!({"i": i, "lambda": c.lambda, "zeros": zeros}))?;
            }
        }
        Command::Slopes {
            series,
            weight,
            count,
            certify,
            json,
            csv,
        } => {
            let s = build_series(&series, Some(&weight))?;
            let opts = if certify {
                SlopeOptions::default()
            } else {
                SlopeOptions::heuristic()
            };
            let rep = ghost_slopes(&s, &weight, count, opts)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&rep)?)?;
            } else if csv {
                let mut w = csv::Writer::from_writer(&mut out);
                w.write_record(["i", "slope", "certified"])?;
                for (i, sl) in rep.slopes.iter().enumerate() {
                    let cert = certify && i < rep.certified_count;
                    w.write_record([(i + 1).to_string(), sl.to_string(), cert.to_string()])?;
                }
                w.flush()?;
            } else {
                writeln!(out, "{}", strs(&rep.slopes).join(" "))?;
            }
            if !rep.complete {
                eprintln!(
                    "only {} of {count} slopes certified with {} coefficients",
                    rep.certified_count, rep.coefficients_used
                );
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Halo {
            p,
            level,
            center,
            vmin,
            vmax,
            steps,
            count,
            out: path,
            generic,
            variant: v,
            data,
        } => {
            let center = parse_center(&center)?;
            let prime = Prime::new(p)?;
            let kappa: WeightPoint = center.into();
            let s = GhostSeries::new(
                prime,
                level,
                Component::of_point(prime, &kappa)?,
                variant(v, level, data.as_ref())?,
            )?;
            let radii = radius_grid(&parse_rational(&vmin)?, &parse_rational(&vmax)?, steps)?;
            let (rows, skipped) = halo_rows(&s, center, &radii, generic, count, SlopeOptions::default())?;
            for r in &skipped {
                eprintln!("skipping integral radius {r}; pass --generic to include it");
            }
            let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
            let mut header = vec!["v".to_string()];
            header.extend((1..=count).map(|i| format!("s_{i}")));
            w.write_record(&header)?;
            let mut partial = false;
            for row in &rows {
                partial |= !row.complete;
                let mut rec = vec![row.radius.to_string()];
                rec.extend(strs(&row.slopes));
                rec.resize(count + 1, String::new());
                w.write_record(&rec)?;
            }
            w.flush()?;
            writeln!(out, "{} rows written to {}", rows.len(), path.display())?;
            if partial {
                eprintln!("some rows are not fully certified");
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Wadic { series, count } => {
            if count == 0 {
                bail!("count must be at least 1");
            }
            let s = build_series(&series, None)?;
            let mut upto = 2 * count + 8;
            let mut prev: Option<Vec<Rational>> = None;
            let slopes = loop {
                let poly = ghost_core::analysis::wadic_polygon(&s, upto)?;
                let cur = (poly.slopes.len() >= count).then(|| poly.slopes[..count].to_vec());
                if let Some(c) = cur.as_ref().filter(|c| prev.as_ref() == Some(*c)) {
                    break c.clone();
                }
                prev = cur;
                upto *= 2;
                if upto > 1 << 20 {
                    bail!("w-adic slopes did not settle");
                }
            };
            writeln!(out, "{}", strs(&slopes).join(" "))?;
        }
        Command::Verify { suite, max, json } => {
            let suite: Suite = suite.parse()?;
            let rep = run_suite(suite, max)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&rep)?)?;
            } else {
                for c in &rep.checks {
                    let tag = if c.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag} {}: {}", c.name, c.detail)?;
                }
                for n in &rep.notes {
                    writeln!(out, "note {n}")?;
                }
            }
            if !rep.passed() {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Compare {
            fixture,
            variant: v,
            data,
        } => {
            let text = fs::read_to_string(&fixture).with_context(|| format!("reading {}", fixture.display()))?;
            let f = SlopeFixture::from_json(&text)?;
            let diff = compare_fixture(&f, variant(v, f.level, data.as_ref())?)?;
            writeln!(out, "{}", serde_json::to_string(&diff)?)?;
            if !diff.matched {
                return Ok(Outcome::Mismatch);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
