//! Command-line surface: `transform` and `diagnose`.

use std::fs;
use std::path::{Path, PathBuf};

use autonorm_core::diagnostics::{jitter_series, kde_curve, qq_points, scatter_series, PlotSeries};
use autonorm_core::search::default_grid;
use autonorm_core::transform::{pipeline_single_beta, DEFAULT_GUMBEL_PERCENTILE};
use autonorm_core::{FeatureMatrix, FeatureReport, Orientation, TransformConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::parallel::transform_matrix_parallel;
use crate::render::{render_svg, RenderOptions};
use crate::report::{write_report, ConfigEcho};
use crate::table::{default_delimiter, read_matrix, write_matrix, NaPolicy, TableOptions};

/// Points on each density curve.
pub const KDE_POINTS: usize = 512;
/// Largest QQ subsample per feature.
pub const QQ_POINTS: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "autonorm",
    version,
    about = "Per-feature shifted-log transformation toward normality"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform every feature and write the matrix and a JSON report.
    Transform(RunArgs),
    /// Transform, then write before/after KDE and QQ plots per feature.
    Diagnose(RunArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrientArg {
    /// One feature per line.
    Rows,
    /// One feature per column.
    Cols,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NaArg {
    Error,
    Drop,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Input table (CSV, or TSV by extension).
    #[arg(long)]
    pub input: PathBuf,
    /// Transformed table; required for `transform`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON report; defaults to `<output stem>.report.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "cols")]
    pub orient: OrientArg,
    /// Field delimiter: a single character, or `tab`.
    #[arg(long)]
    pub delimiter: Option<String>,
    /// The first line is not a header.
    #[arg(long)]
    pub no_header: bool,
    /// The first field of each line is a label.
    #[arg(long)]
    pub row_labels: bool,
    /// β grid as a comma list (`--grid=-1,0,1`) or `@file`; must contain 0.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long)]
    pub no_winsorise: bool,
    /// Gumbel percentile for the winsorisation threshold.
    #[arg(long, default_value_t = DEFAULT_GUMBEL_PERCENTILE)]
    pub percentile: f64,
    /// Only try β on the side given by each feature's skewness.
    #[arg(long)]
    pub restrict_by_skewness: bool,
    #[arg(long, value_enum, default_value = "error")]
    pub na: NaArg,
    /// Seed for the QQ subsample.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write diagnostic plots here (implied by `diagnose`).
    #[arg(long)]
    pub diagnostics_dir: Option<PathBuf>,
    /// Two feature names, `A,B`, for a before/after scatter plot.
    #[arg(long)]
    pub scatter: Option<String>,
}

/// Fully validated settings of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub input_table: TableOptions,
    pub output_table: TableOptions,
    pub transform: TransformConfig,
    pub seed: u64,
    pub threads: usize,
    pub diagnostics_dir: Option<PathBuf>,
    pub scatter: Option<(String, String)>,
}

impl RunConfig {
    pub fn from_args(args: &RunArgs, diagnose: bool) -> Result<Self> {
        if !(args.percentile > 0.0 && args.percentile < 1.0) {
            return Err(Error::Config(format!(
                "--percentile {} is outside (0, 1)",
                args.percentile
            )));
        }
        let grid = match &args.grid {
            Some(spec) => parse_grid(spec)?,
            None => default_grid(),
        };
        if !grid.contains(&0.0) {
            return Err(Error::Config("--grid must contain 0".into()));
        }
        let transform = TransformConfig::new(grid, !args.no_winsorise, args.percentile)
            .map_err(|e| Error::Config(e.to_string()))?
            .with_restrict_by_skewness(args.restrict_by_skewness);
        let threads = match args.threads {
            Some(0) => return Err(Error::Config("--threads must be at least 1".into())),
            Some(t) => t,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        let delimiter = args.delimiter.as_deref().map(parse_delimiter).transpose()?;
        let orientation = match args.orient {
            OrientArg::Rows => Orientation::FeaturesAsRows,
            OrientArg::Cols => Orientation::FeaturesAsColumns,
        };
        let input_table = TableOptions {
            delimiter: delimiter.unwrap_or_else(|| default_delimiter(&args.input)),
            orientation,
            header: !args.no_header,
            row_labels: args.row_labels,
            na_policy: match args.na {
                NaArg::Error => NaPolicy::Error,
                NaArg::Drop => NaPolicy::Drop,
            },
        };
        let output_table = TableOptions {
            delimiter: delimiter
                .or_else(|| args.output.as_deref().map(default_delimiter))
                .unwrap_or(input_table.delimiter),
            ..input_table.clone()
        };
        if !diagnose && args.output.is_none() {
            return Err(Error::Config("transform needs --output".into()));
        }
        let report = args
            .report
            .clone()
            .or_else(|| args.output.as_deref().map(default_report_path));
        let diagnostics_dir = match (&args.diagnostics_dir, diagnose) {
            (Some(d), _) => Some(d.clone()),
            (None, true) => Some(PathBuf::from("diagnostics")),
            (None, false) => None,
        };
        let scatter = args.scatter.as_deref().map(parse_pair).transpose()?;
        if scatter.is_some() && diagnostics_dir.is_none() {
            return Err(Error::Config("--scatter needs --diagnostics-dir".into()));
        }
        Ok(Self {
            input: args.input.clone(),
            output: args.output.clone(),
            report,
            input_table,
            output_table,
            transform,
            seed: args.seed,
            threads,
            diagnostics_dir,
            scatter,
        })
    }
}

fn default_report_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map_or_else(|| "output".into(), |s| s.to_string_lossy().into_owned());
    output.with_file_name(format!("{stem}.report.json"))
}

pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let text = match spec.strip_prefix('@') {
        Some(file) => fs::read_to_string(file).map_err(|e| Error::io(file, e))?,
        None => spec.to_owned(),
    };
    let grid = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Config(format!("--grid: {t:?} is not a number")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if grid.is_empty() {
        return Err(Error::Config("--grid is empty".into()));
    }
    Ok(grid)
}

fn parse_delimiter(s: &str) -> Result<u8> {
    match s {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        _ if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        _ => Err(Error::Config(format!(
            "--delimiter {s:?} is not a single ASCII character"
        ))),
    }
}

fn parse_pair(s: &str) -> Result<(String, String)> {
    match s.split_once(',') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains(',') => {
            Ok((a.into(), b.into()))
        }
        _ => Err(Error::Config(format!(
            "--scatter expects two names A,B, got {s:?}"
        ))),
    }
}

/// Everything a run produced, for printing and tests.
pub struct RunOutcome {
    pub reports: Vec<FeatureReport>,
    pub transformed: FeatureMatrix,
    pub written: Vec<PathBuf>,
}

pub fn summary_line(r: &FeatureReport) -> String {
    let mut line = format!(
        "{}: beta = {}, AD {:.4} -> {:.4}",
        r.feature_name, r.chosen_beta, r.ad_before, r.ad_after
    );
    if r.degenerate {
        line.push_str(" [degenerate]");
    }
    if r.short_sample {
        line.push_str(" [short sample, standardized only]");
    }
    line
}

/// Reads, transforms and writes; then plots when a diagnostics directory is set.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome> {
    let input = read_matrix(&cfg.input, &cfg.input_table)?;
    if let Some((a, b)) = &cfg.scatter {
        for name in [a, b] {
            if input.feature(name).is_none() {
                return Err(Error::Config(format!(
                    "--scatter: no feature named {name:?}"
                )));
            }
        }
    }
    let (transformed, reports) = transform_matrix_parallel(&input, &cfg.transform, cfg.threads)?;
    let mut written = Vec::new();
    if let Some(out) = &cfg.output {
        write_matrix(&transformed, out, &cfg.output_table)?;
        written.push(out.clone());
    }
    if let Some(path) = &cfg.report {
        let echo = ConfigEcho::new(&cfg.transform, &cfg.input_table, cfg.seed);
        write_report(&reports, &echo, path)?;
        written.push(path.clone());
    }
    if let Some(dir) = &cfg.diagnostics_dir {
        written.extend(write_diagnostics(dir, &input, &transformed, cfg)?);
    }
    Ok(RunOutcome {
        reports,
        transformed,
        written,
    })
}

fn finite(x: &[f64]) -> Vec<f64> {
    x.iter().copied().filter(|v| v.is_finite()).collect()
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn plot(
    dir: &Path,
    file: String,
    title: String,
    series: &[PlotSeries],
    out: &mut Vec<PathBuf>,
) -> Result<()> {
    let path = dir.join(file);
    let opts = RenderOptions {
        title,
        ..Default::default()
    };
    let sidecar = render_svg(series, &path, &opts)?;
    out.push(path);
    out.push(sidecar);
    Ok(())
}

/// Per feature: KDE with jitter strip and normal QQ plot, each before and
/// after. "Before" is the raw feature for the KDE and the β = 0
/// standardization for the QQ plot.
pub fn write_diagnostics(
    dir: &Path,
    input: &FeatureMatrix,
    transformed: &FeatureMatrix,
    cfg: &RunConfig,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut used_stems: Vec<String> = Vec::new();
    for (i, (name, raw)) in input.features().enumerate() {
        let mut stem = file_stem(name);
        if used_stems.contains(&stem) {
            stem = format!("{stem}_{i}");
        }
        used_stems.push(stem.clone());

        let raw = finite(raw);
        let after = finite(transformed.row(i));
        let baseline = pipeline_single_beta(&raw, 0.0, &cfg.transform).transformed;
        let stages = [("before", &raw, &baseline), ("after", &after, &after)];

        for (stage, values, _) in stages {
            match kde_curve(values, KDE_POINTS, &format!("{name} {stage}")) {
                Ok(curve) => {
                    let series = [
                        curve,
                        jitter_series(values, &format!("{name} {stage} data")),
                    ];
                    plot(
                        dir,
                        format!("{stem}_kde_{stage}.svg"),
                        format!("{name}: density {stage}"),
                        &series,
                        &mut written,
                    )?;
                }
                Err(e) => eprintln!("autonorm: skipping {stage} density for {name}: {e}"),
            }
        }
        for (stage, _, values) in stages {
            let m = values.len().min(QQ_POINTS);
            match qq_points(values, m, cfg.seed, &format!("{name} {stage}")) {
                Ok(qq) => plot(
                    dir,
                    format!("{stem}_qq_{stage}.svg"),
                    format!("{name}: normal QQ {stage}"),
                    &[qq],
                    &mut written,
                )?,
                Err(e) => eprintln!("autonorm: skipping {stage} QQ plot for {name}: {e}"),
            }
        }
    }

    if let Some((a, b)) = &cfg.scatter {
        let idx = |n: &str| {
            input
                .names()
                .iter()
                .position(|x| x == n)
                .expect("checked before the run")
        };
        let (ia, ib) = (idx(a), idx(b));
        for (stage, m) in [("before", input), ("after", transformed)] {
            let (xa, xb): (Vec<f64>, Vec<f64>) = m
                .row(ia)
                .iter()
                .zip(m.row(ib))
                .filter(|(u, v)| u.is_finite() && v.is_finite())
                .map(|(&u, &v)| (u, v))
                .unzip();
            let series = scatter_series(&xa, &xb, &format!("{a} vs {b} {stage}"))?;
            let file = format!("scatter_{}_{}_{stage}.svg", file_stem(a), file_stem(b));
            plot(
                dir,
                file,
                format!("{a} vs {b} ({stage})"),
                &[series],
                &mut written,
            )?;
        }
    }
    Ok(written)
}
