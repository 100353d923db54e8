use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use twlab::ensembles::{
    center_scale, estimate_growth_constants, sample_gaussian_ensemble_with, sample_growth_env,
    sample_lis, sample_queue, sample_wigner, EigenMethod, EntryLaw, GrowthConstants, GrowthOptions,
    Model, PLaw, QueueScaling, SampleSet, ScalingSpec, Service, SweepOrder,
};
use twlab::gof::{ks_distance, summary_stats};
use twlab::painleve::{DEFAULT_S_MAX, DEFAULT_S_MIN, DEFAULT_TOL};
use twlab::{Beta, PainleveTable, SummaryStats, TracyWidom};

use crate::args::{
    BetaChoice, CompareArgs, ModelArgs, MomentsArgs, SampleArgs, SampleFormat, SingleBeta, TableArgs,
    TableFormat,
};
use crate::cache::{load_or_build, resolve_path};
use crate::error::{CliError, CliResult};
use crate::format::fmt_sig;

const TABLE_DIGITS: usize = 12;
const MOMENT_DIGITS: usize = 6;
const MAX_TABLE_ROWS: usize = 10_000_000;

/// Shared state: cache location and the lazily loaded distributions.
pub struct Context {
    cache: PathBuf,
    tw: Option<TracyWidom>,
}

impl Context {
    pub fn new(cache_flag: Option<&std::path::Path>) -> Self {
        Self { cache: resolve_path(cache_flag), tw: None }
    }

    pub fn cache_path(&self) -> &std::path::Path {
        &self.cache
    }

    pub fn distributions(&mut self, warn: &mut dyn Write) -> CliResult<&TracyWidom> {
        if self.tw.is_none() {
            let (table, _) = load_or_build(&self.cache, DEFAULT_S_MIN, DEFAULT_S_MAX, DEFAULT_TOL, warn)?;
            self.tw = Some(TracyWidom::new(Arc::new(table))?);
        }
        Ok(self.tw.as_ref().expect("just set"))
    }

    pub fn table(&mut self, warn: &mut dyn Write) -> CliResult<&PainleveTable> {
        Ok(self.distributions(warn)?.table())
    }
}

fn betas(choice: BetaChoice) -> Vec<Beta> {
    match choice {
        BetaChoice::One => vec![Beta::One],
        BetaChoice::Two => vec![Beta::Two],
        BetaChoice::Four => vec![Beta::Four],
        BetaChoice::All => Beta::ALL.to_vec(),
    }
}

fn single(b: SingleBeta) -> Beta {
    match b {
        SingleBeta::One => Beta::One,
        SingleBeta::Two => Beta::Two,
        SingleBeta::Four => Beta::Four,
    }
}

/// Grid points from, from + step, … up to `to` (inclusive within 1e−9 steps).
pub fn table_grid(from: f64, to: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err(CliError::Usage("--from, --to and --step must be finite".into()));
    }
    if !(from < to) {
        return Err(CliError::Usage(format!("--from ({from}) must be less than --to ({to})")));
    }
    if !(step > 0.0) {
        return Err(CliError::Usage(format!("--step must be positive, got {step}")));
    }
    let intervals = ((to - from) / step + 1e-9).floor();
    if intervals >= MAX_TABLE_ROWS as f64 {
        return Err(CliError::Usage("table would exceed 10^7 rows".into()));
    }
    Ok((0..=intervals as usize).map(|i| from + i as f64 * step).collect())
}

pub fn cmd_table(ctx: &mut Context, args: &TableArgs, out: &mut dyn Write, warn: &mut dyn Write) -> CliResult<()> {
    let grid = table_grid(args.from, args.to, args.step)?;
    let betas = betas(args.beta);
    let tw = ctx.distributions(warn)?;
    let mut columns = vec!["s".to_string()];
    for b in &betas {
        columns.push(format!("F{b}"));
        columns.push(format!("f{b}"));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &s in &grid {
        let mut row = vec![s];
        for &b in &betas {
            row.push(tw.tw_cdf(b, s)?);
            row.push(tw.tw_pdf(b, s)?);
        }
        rows.push(row);
    }
    match args.format {
        TableFormat::Csv => {
            writeln!(out, "{}", columns.join(","))?;
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|&v| fmt_sig(v, TABLE_DIGITS)).collect();
                writeln!(out, "{}", cells.join(","))?;
            }
        }
        TableFormat::Json => {
            let doc = json!({ "columns": columns, "rows": rows });
            serde_json::to_writer(&mut *out, &doc).map_err(|e| CliError::Io(e.into()))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentRow {
    pub beta: u32,
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

pub fn moment_rows(tw: &TracyWidom, choice: BetaChoice) -> CliResult<Vec<MomentRow>> {
    betas(choice)
        .into_iter()
        .map(|b| {
            let m = tw.tw_moments(b)?;
            Ok(MomentRow {
                beta: b.value(),
                mean: m.mean,
                sd: m.sd,
                skewness: m.skewness,
                kurtosis: m.excess_kurtosis,
            })
        })
        .collect()
}

pub fn cmd_moments(ctx: &mut Context, args: &MomentsArgs, out: &mut dyn Write, warn: &mut dyn Write) -> CliResult<()> {
    let rows = moment_rows(ctx.distributions(warn)?, args.beta)?;
    if args.json {
        let rounded: Vec<MomentRow> = rows
            .iter()
            .map(|r| MomentRow {
                beta: r.beta,
                mean: round_sig(r.mean),
                sd: round_sig(r.sd),
                skewness: round_sig(r.skewness),
                kurtosis: round_sig(r.kurtosis),
            })
            .collect();
        serde_json::to_writer_pretty(&mut *out, &rounded).map_err(|e| CliError::Io(e.into()))?;
        writeln!(out)?;
    } else {
        writeln!(out, "{:<6}{:>12}{:>12}{:>12}{:>12}", "beta", "mean", "sd", "skewness", "kurtosis")?;
        for r in &rows {
            writeln!(
                out,
                "{:<6}{:>12}{:>12}{:>12}{:>12}",
                r.beta,
                fmt_sig(r.mean, MOMENT_DIGITS),
                fmt_sig(r.sd, MOMENT_DIGITS),
                fmt_sig(r.skewness, MOMENT_DIGITS),
                fmt_sig(r.kurtosis, MOMENT_DIGITS)
            )?;
        }
    }
    Ok(())
}

fn round_sig(x: f64) -> f64 {
    fmt_sig(x, MOMENT_DIGITS).parse().expect("formatted number parses")
}

fn need(v: Option<usize>, flag: &str, model: Model) -> CliResult<usize> {
    match v {
        Some(x) if x >= 1 => Ok(x),
        Some(_) => Err(CliError::Usage(format!("--{flag} must be at least 1"))),
        None => Err(CliError::Usage(format!("model {model} requires --{flag}"))),
    }
}

fn parse_flag<T: std::str::FromStr<Err = twlab::Error>>(s: &str) -> CliResult<T> {
    s.parse().map_err(CliError::from)
}

/// Runs the sampler selected by `args`.
pub fn run_model(ctx: &mut Context, args: &ModelArgs, warn: &mut dyn Write) -> CliResult<SampleSet> {
    let tag = args.model.as_deref().ok_or_else(|| CliError::Usage("--model is required".into()))?;
    let model: Model = parse_flag(tag)?;
    if args.samples < 1 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let (count, seed) = (args.samples, args.seed);
    let set = match model {
        Model::Goe | Model::Gue | Model::Gse => {
            let beta = match model {
                Model::Goe => Beta::One,
                Model::Gue => Beta::Two,
                _ => Beta::Four,
            };
            let n = need(args.n, "n", model)?;
            let method = if args.tridiagonal { EigenMethod::Tridiagonal } else { EigenMethod::Dense };
            let raw = sample_gaussian_ensemble_with(beta, n, count, seed, method)?;
            center_scale(&raw, &ScalingSpec::new(1.0, n, beta)?)?
        }
        Model::Wigner => {
            let law: EntryLaw = parse_flag(&args.entries)?;
            sample_wigner(need(args.n, "n", model)?, law, count, seed)?
        }
        Model::Lis => sample_lis(need(args.n, "n", model)?, count, seed)?,
        Model::Queue => {
            let k = need(args.k, "k", model)?;
            let n = need(args.n, "n", model)?;
            let service: Service = parse_flag(&args.service)?;
            let scaling = match args.scaling.as_str() {
                "brownian" => QueueScaling::Brownian,
                "cube-root" => QueueScaling::CubeRoot(match (args.c1, args.c2) {
                    (Some(c1), Some(c2)) => GrowthConstants { c1, c2, estimated: false },
                    (None, None) => {
                        let reference = ctx.distributions(warn)?.tw_moments(Beta::Two)?;
                        let ns: Vec<usize> = [4, 2, 1].iter().map(|d| (n / d).max(1)).collect();
                        if ns[0] == ns[2] {
                            return Err(CliError::Usage("--n too small to estimate c1, c2".into()));
                        }
                        estimate_growth_constants(
                            k as f64 / n as f64,
                            &ns,
                            service,
                            count.clamp(2, 400),
                            seed ^ 0x5eed,
                            &reference,
                        )?
                    }
                    _ => return Err(CliError::Usage("give both --c1 and --c2, or neither".into())),
                }),
                other => return Err(CliError::Usage(format!("unknown scaling '{other}'"))),
            };
            sample_queue(k, n, service, scaling, count, seed)?
        }
        Model::Growth => {
            let t = need(args.t, "t", model)?;
            let law: PLaw = parse_flag(&args.p_law)?;
            let sweep = match args.sweep.as_str() {
                "synchronous" => SweepOrder::Synchronous,
                "left-to-right" => SweepOrder::LeftToRight,
                other => return Err(CliError::Usage(format!("unknown sweep '{other}'"))),
            };
            let opts = GrowthOptions { sweep, quenched: args.quenched, probe: args.probe };
            sample_growth_env(law, t, count, seed, opts)?
        }
    };
    Ok(set)
}

pub fn write_sample_set(set: &SampleSet, format: SampleFormat, out: &mut dyn Write) -> CliResult<()> {
    match format {
        SampleFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, set).map_err(|e| CliError::Io(e.into()))?;
            writeln!(out)?;
        }
        SampleFormat::Csv => match &set.raw {
            Some(raw) => {
                writeln!(out, "value,raw")?;
                for (v, r) in set.values.iter().zip(raw) {
                    writeln!(out, "{},{}", fmt_sig(*v, 17), fmt_sig(*r, 17))?;
                }
            }
            None => {
                writeln!(out, "value")?;
                for v in &set.values {
                    writeln!(out, "{}", fmt_sig(*v, 17))?;
                }
            }
        },
    }
    Ok(())
}

pub fn cmd_sample(ctx: &mut Context, args: &SampleArgs, out: &mut dyn Write, warn: &mut dyn Write) -> CliResult<()> {
    let set = run_model(ctx, &args.model, warn)?;
    match &args.out {
        Some(path) => {
            let mut buf = Vec::new();
            write_sample_set(&set, args.format, &mut buf)?;
            std::fs::write(path, buf)?;
        }
        None => write_sample_set(&set, args.format, out)?,
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentSummary {
    pub mean: f64,
    pub sd: f64,
    pub skew: f64,
    pub kurt: f64,
}

impl From<&SummaryStats> for MomentSummary {
    fn from(s: &SummaryStats) -> Self {
        Self { mean: s.mean, sd: s.sd, skew: s.skewness, kurt: s.excess_kurtosis }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub model: Model,
    pub beta: u32,
    pub ks: f64,
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
    pub skew: f64,
    pub kurt: f64,
    pub reference: MomentSummary,
}

pub fn compare_sample_set(tw: &TracyWidom, set: &SampleSet, beta: Beta) -> CliResult<CompareReport> {
    if set.values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Data("sample values must be finite".into()));
    }
    let ev = tw.get(beta);
    let ks = ks_distance(&set.values, |s| ev.cdf(s).unwrap_or(f64::NAN))
        .map_err(|e| CliError::Data(e.to_string()))?;
    let stats = summary_stats(&set.values).map_err(|e| CliError::Data(e.to_string()))?;
    let reference = tw.tw_moments(beta)?;
    Ok(CompareReport {
        model: set.model,
        beta: beta.value(),
        ks,
        n: set.values.len(),
        mean: stats.mean,
        sd: stats.sd,
        skew: stats.skewness,
        kurt: stats.excess_kurtosis,
        reference: (&reference).into(),
    })
}

pub fn read_sample_set(path: &std::path::Path) -> CliResult<SampleSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

pub fn cmd_compare(ctx: &mut Context, args: &CompareArgs, out: &mut dyn Write, warn: &mut dyn Write) -> CliResult<()> {
    let set = match &args.input {
        Some(path) => read_sample_set(path)?,
        None => run_model(ctx, &args.model, warn)?,
    };
    let report = compare_sample_set(ctx.distributions(warn)?, &set, single(args.beta))?;
    serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| CliError::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}
