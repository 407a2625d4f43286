use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hazardrate::pipeline::{cmd_compare, cmd_lcoh, cmd_rates, cmd_stats, PipelineError, RateMode, RunConfig, EXIT_OK};

/// Country discount rates that combine sovereign risk with natural-hazard
/// exposure, and their effect on the cost of green hydrogen.
#[derive(Parser, Debug)]
#[command(name = "hazardrate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Run configuration (`key = value` lines).
    #[arg(long, short = 'c')]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Last year of the averaging window.
    #[arg(long)]
    end_year: Option<i32>,
    /// Averaging window length, years.
    #[arg(long)]
    window: Option<u32>,
    /// Weight of the economic rate in the blend.
    #[arg(long)]
    blend_a: Option<f64>,
    /// Hazard score scale: `observed` (largest score in the data) or a number.
    #[arg(long)]
    wri_denominator: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute country discount rates and write discount_rates.csv.
    Rates {
        #[command(flatten)]
        common: Common,
    },
    /// Optimize each country's hydrogen system and write lcoh.csv.
    Lcoh {
        #[command(flatten)]
        common: Common,
        /// Use one discount rate for every country.
        #[arg(long)]
        uniform_rate: Option<f64>,
        /// Read discount rates from this file instead of computing them.
        #[arg(long)]
        rates: Option<PathBuf>,
        /// Comma-separated ISO codes to restrict the run.
        #[arg(long)]
        countries: Option<String>,
        /// Time resolution: native, <N>h or week.
        #[arg(long)]
        resolution: Option<String>,
        /// Worker threads.
        #[arg(long, short = 'j')]
        jobs: Option<usize>,
    },
    /// Compare two lcoh.csv files (baseline first).
    Compare {
        #[command(flatten)]
        common: Common,
        baseline: PathBuf,
        alternative: PathBuf,
        /// Country boundaries to annotate with the results.
        #[arg(long)]
        geojson: Option<PathBuf>,
        /// Number of rows printed.
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Rate statistics, ranges and the economic/hazard correlation.
    Stats {
        #[command(flatten)]
        common: Common,
        /// discount_rates.csv for the correlation.
        #[arg(long)]
        rates: Option<PathBuf>,
    },
}

fn absolute(path: &PathBuf) -> String {
    std::path::absolute(path)
        .unwrap_or_else(|_| path.clone())
        .display()
        .to_string()
}

fn load_config(common: &Common) -> Result<RunConfig, PipelineError> {
    let data_dir = std::env::var_os("HAZARDRATE_DATA_DIR").map(PathBuf::from);
    let mut config = match &common.config {
        Some(path) => RunConfig::load(path, data_dir)?,
        None => {
            let mut c = RunConfig::default();
            if let Some(dir) = data_dir {
                c.data_dir = dir;
            }
            c
        }
    };
    if let Some(out) = &common.out {
        config.set("out", &out.display().to_string())?;
    }
    if let Some(v) = common.end_year {
        config.set("end_year", &v.to_string())?;
    }
    if let Some(v) = common.window {
        config.set("window", &v.to_string())?;
    }
    if let Some(v) = common.blend_a {
        config.set("blend_a", &v.to_string())?;
    }
    if let Some(v) = &common.wri_denominator {
        config.set("wri_denominator", v)?;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Rates { common } => {
            let config = load_config(&common)?;
            let records = cmd_rates(&config)?;
            eprintln!("rates: {} countries", records.len());
        }
        Command::Lcoh {
            common,
            uniform_rate,
            rates,
            countries,
            resolution,
            jobs,
        } => {
            let mut config = load_config(&common)?;
            if let Some(rate) = uniform_rate {
                config.set("uniform_rate", &rate.to_string())?;
                config.rate_mode = RateMode::Uniform;
            }
            if let Some(path) = rates {
                // command-line paths are relative to the working directory
                config.set("rates", &absolute(&path))?;
            }
            if let Some(list) = countries {
                config.set("countries", &list)?;
            }
            if let Some(r) = resolution {
                config.set("resolution", &r)?;
            }
            if let Some(j) = jobs {
                config.set("jobs", &j.to_string())?;
            }
            let outcome = cmd_lcoh(&config)?;
            for row in &outcome.rows {
                if let Some(detail) = &row.detail {
                    eprintln!("  {}: {detail}", row.status);
                }
            }
            eprintln!("lcoh: {} solved, {} failed", outcome.solved(), outcome.failed());
        }
        Command::Compare {
            common,
            baseline,
            alternative,
            geojson,
            top,
        } => {
            let config = load_config(&common)?;
            let outcome = cmd_compare(&config, &baseline, &alternative, geojson.as_deref(), top)?;
            print!("{}", outcome.top_table);
        }
        Command::Stats { common, rates } => {
            let mut config = load_config(&common)?;
            if let Some(path) = rates {
                config.set("rates", &absolute(&path))?;
            }
            let outcome = cmd_stats(&config)?;
            if let Some((r, p)) = outcome.correlation {
                println!("pearson r = {r:.3} (p = {p:.3e})");
            }
            eprintln!("stats: {} rows written", outcome.rows.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
