use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spline_product::{CollocationSolver, NaiveOptions, ProductPlan};
use spline_product_cli::experiment::{run_experiment, write_csv, ExperimentConfig, Family};
use spline_product_cli::format::{read_spline, to_json, ProductFile, ProductStats, SplineFile};
use spline_product_cli::CliError;

#[derive(Parser)]
#[command(name = "spline-product", version, about = "Products of B-spline functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two splines given as JSON files.
    Product {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        /// Run the naive sum even when it exceeds the term limit.
        #[arg(long)]
        force: bool,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an experiment family and write its rows as CSV.
    Experiment {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 201)]
        grid_points: usize,
        /// First parameter (degree or mesh level); defaults to the family's first.
        #[arg(long)]
        from: Option<u32>,
        /// Last parameter; defaults to the family's last.
        #[arg(long)]
        to: Option<u32>,
        /// Fill the timing columns with wall-clock seconds.
        #[arg(long)]
        timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Naive,
    Collocation,
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn product(f: &Path, g: &Path, method: Method, force: bool, output: Option<&Path>) -> Result<(), CliError> {
    let (f, g) = (read_spline(f)?, read_spline(g)?);
    let plan = ProductPlan::new(&f, &g)?;
    let file = match method {
        Method::Direct => ProductFile::from(&plan.improved()?),
        Method::Naive => ProductFile::from(&plan.naive(NaiveOptions { force })?),
        Method::Collocation => {
            let solver = CollocationSolver::for_product(&f, &g)?;
            ProductFile {
                spline: SplineFile::from(&solver.product(&f, &g)?),
                stats: ProductStats {
                    naive_terms: plan.naive_term_count().into(),
                    nu_bar: None,
                    distinct_counts: None,
                    condition_estimate: Some(solver.condition_estimate()?),
                },
            }
        }
    };
    let mut out = open_output(output)?;
    out.write_all(to_json(&file).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Product {
            f,
            g,
            method,
            force,
            output,
        } => product(&f, &g, method, force, output.as_deref()),
        Command::Experiment {
            family,
            seed,
            grid_points,
            from,
            to,
            timing,
            output,
        } => {
            let range = family.param_range();
            let params = from.unwrap_or(*range.start())..=to.unwrap_or(*range.end());
            let cfg = ExperimentConfig::new(family, seed)
                .with_grid_points(grid_points)
                .with_params(params)
                .with_timing(timing);
            let rows = run_experiment(&cfg)?;
            for r in rows.iter().filter(|r| r.absolute_error) {
                eprintln!("warning: {} {}: reference product vanishes, absolute error reported", family.name(), r.param);
            }
            write_csv(&rows, open_output(output.as_deref())?)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
