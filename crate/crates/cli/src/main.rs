use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use csmoute_cli::commands::{cmd_benchmark, cmd_categorize, cmd_compare, cmd_resample, cmd_sweep, ResampleArgs, SweepArgs};
use csmoute_cli::config::parse_classifier;
use csmoute_cli::data::CsvClass;
use csmoute_cli::sweep::default_ratios;
use csmoute_cli::{CliResult, EXIT_OK};
use csmoute_core::{Metric, Resampler};

#[derive(Parser)]
#[command(name = "csmoute", version, about = "Interpolation-based resampling and benchmarking for imbalanced data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CsvArgs {
    /// Class column of CSV inputs.
    #[arg(long, default_value = "class")]
    class_column: String,
    /// Minority class value of CSV inputs (default: the less frequent one).
    #[arg(long)]
    minority_label: Option<String>,
}

impl CsvArgs {
    fn into_class(self) -> CsvClass {
        CsvClass::new(Some(self.class_column), self.minority_label)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    None,
    Rus,
    Ros,
    Smote,
    Smute,
    Csmoute,
}

#[derive(Subcommand)]
enum Command {
    /// Rebalance one dataset and write it with a lineage JSON.
    Resample {
        /// KEEL `.dat` or `.csv` file.
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Lineage JSON path (default: `<output stem>.lineage.json`).
        #[arg(long)]
        lineage: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        seed: u64,
        /// Neighbors for `smote` or `smute`.
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        k_smote: usize,
        #[arg(long, default_value_t = 5)]
        k_smute: usize,
        /// Share of the gap closed by oversampling (`csmoute` only).
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        /// Draw the second SMUTE parent from original rows only.
        #[arg(long)]
        smute_originals_only: bool,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Dataset summary and minority-type percentages, one CSV row per input.
    Categorize {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Output CSV (default: standard output).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Run the nested cross-validation benchmark described by a TOML config.
    Benchmark {
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(short, long)]
        output_dir: Option<PathBuf>,
        /// Worker threads (`RESAMPLE_BENCH_THREADS` takes precedence).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// CSMOUTE metrics over a ratio grid, averaged across datasets.
    Sweep {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        seed: u64,
        /// Comma-separated ratios (default 0.0, 0.1, ..., 1.0).
        #[arg(long, value_delimiter = ',')]
        ratios: Option<Vec<f64>>,
        #[arg(long, default_value = "lr")]
        classifier: String,
        #[arg(long, default_value_t = 5)]
        knn_k: usize,
        #[arg(long, default_value_t = 5)]
        k_smote: usize,
        #[arg(long, default_value_t = 5)]
        k_smute: usize,
        /// Standardize with training-fold statistics only.
        #[arg(long)]
        fold_safe_scaling: bool,
        #[arg(long)]
        smute_originals_only: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Recompute comparison tables from an existing averages CSV.
    Compare {
        averages: PathBuf,
        /// Dataset summary CSV from `categorize` or a benchmark, for correlations.
        #[arg(long)]
        taxonomy: Option<PathBuf>,
        /// Config whose `[compare]` section to use.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(short, long)]
        output_dir: PathBuf,
    },
}

fn method(m: Method, k: usize, k_smote: usize, k_smute: usize, ratio: f64) -> Resampler {
    match m {
        Method::None => Resampler::None,
        Method::Rus => Resampler::Rus,
        Method::Ros => Resampler::Ros,
        Method::Smote => Resampler::Smote { k },
        Method::Smute => Resampler::Smute { k },
        Method::Csmoute => Resampler::Csmoute { k_smote, k_smute, ratio },
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Resample {
            input,
            output,
            lineage,
            method: m,
            seed,
            k,
            k_smote,
            k_smute,
            ratio,
            smute_originals_only,
            csv,
        } => cmd_resample(&ResampleArgs {
            input,
            output,
            lineage,
            method: method(m, k, k_smote, k_smute, ratio),
            seed,
            smute_originals_only,
            csv: csv.into_class(),
        }),
        Command::Categorize { inputs, output, csv } => cmd_categorize(&inputs, output.as_deref(), &csv.into_class()),
        Command::Benchmark {
            config,
            output_dir,
            threads,
        } => cmd_benchmark(&config, output_dir.as_deref(), threads),
        Command::Sweep {
            inputs,
            output,
            seed,
            ratios,
            classifier,
            knn_k,
            k_smote,
            k_smute,
            fold_safe_scaling,
            smute_originals_only,
            threads,
            csv,
        } => cmd_sweep(&SweepArgs {
            inputs,
            output,
            seed,
            ratios: ratios.unwrap_or_else(default_ratios),
            k_smote,
            k_smute,
            classifier: parse_classifier(&classifier, knn_k)?,
            metrics: Metric::ALL.to_vec(),
            fold_safe_scaling,
            smute_originals_only,
            threads,
            csv: csv.into_class(),
        }),
        Command::Compare {
            averages,
            taxonomy,
            config,
            output_dir,
        } => cmd_compare(&averages, taxonomy.as_deref(), config.as_deref(), &output_dir),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { csmoute_cli::EXIT_INPUT as u8 } else { EXIT_OK as u8 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
