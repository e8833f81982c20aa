//! `bbg`: connectivity-at-infinity reports, chessboard homology and the
//! verification harness.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bbg_core::confspace::{build_conf_with, BuildOptions, DEFAULT_MAX_ZERO_CELLS};
use bbg_core::homology::{connectivity_of, homological_connectivity, reduced_homology, ChainComplex};
use bbg_core::params::nu;
use bbg_core::report::{report, ReportOptions};
use bbg_core::simplicial::chessboard;
use bbg_core::verify::{corrupted_nu, run, Level, VerifyConfig};
use bbg_core::Error;

#[derive(Parser)]
#[command(name = "bbg", version, about = "Connectivity at infinity of bipartite graph braid groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report on Conf_r(n, N), r robots on the complete bipartite graph K_{n,N}.
    Report {
        robots: u32,
        left: u32,
        right: u32,
        /// Write the report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write the cells of the cube complex, one per line.
        #[arg(long, value_name = "PATH")]
        export_cells: Option<PathBuf>,
        /// Write the facets of one vertex link per solution type.
        #[arg(long, value_name = "PATH")]
        export_facets: Option<PathBuf>,
        /// Compute link homology regardless of size.
        #[arg(long)]
        homology: bool,
        #[arg(long, value_name = "K", default_value_t = DEFAULT_MAX_ZERO_CELLS)]
        max_zero_cells: u64,
        /// Report parameters with a free fundamental group.
        #[arg(long)]
        allow_trivial: bool,
        /// Unused by reports, which are deterministic.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reduced homology of the chessboard complex Δ_{m,n}.
    Chessboard {
        rows: u32,
        cols: u32,
        #[arg(long, value_name = "PATH")]
        export_facets: Option<PathBuf>,
        /// Write each boundary matrix as `d<k>.txt` triplets into this directory.
        #[arg(long, value_name = "DIR")]
        export_boundaries: Option<PathBuf>,
    },
    /// Homological connectivity of every chessboard with m <= n, m + n <= K.
    Table {
        #[arg(long, value_name = "K", default_value_t = 8)]
        max_sum: u32,
    },
    /// Run the acceptance criteria.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        /// Replace a formula by a wrong one to check that the harness notices.
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutation {
    Nu,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Report {
            robots,
            left,
            right,
            json,
            export_cells,
            export_facets,
            homology,
            max_zero_cells,
            allow_trivial,
            seed: _,
        } => {
            let options = ReportOptions {
                build: BuildOptions { max_zero_cells },
                force_homology: homology,
                allow_trivial,
            };
            run_report(robots, left, right, &options, json, export_cells, export_facets)
        }
        Command::Chessboard {
            rows,
            cols,
            export_facets,
            export_boundaries,
        } => run_chessboard(rows, cols, export_facets, export_boundaries),
        Command::Table { max_sum } => run_table(max_sum),
        Command::Verify { level, mutate, seed } => return run_verify(level, mutate, seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bbg: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn run_report(
    robots: u32,
    left: u32,
    right: u32,
    options: &ReportOptions,
    json: Option<PathBuf>,
    export_cells: Option<PathBuf>,
    export_facets: Option<PathBuf>,
) -> Result<(), CliError> {
    let r = report(robots, left, right, options)?;
    print!("{}", r.to_text());
    if let Some(path) = json {
        write(&path, &r.to_json())?;
    }
    if export_cells.is_none() && export_facets.is_none() {
        return Ok(());
    }
    let complex = build_conf_with(robots, left, right, &options.build)?;
    if let Some(path) = export_cells {
        write(&path, &complex.to_cell_text())?;
    }
    if let Some(path) = export_facets {
        let mut out = String::new();
        for (t, v) in complex.type_representatives() {
            let link = complex.vertex_link(&v)?;
            out.push_str(&link.to_facet_text(&format!("Lk({}) type {t}; labels from>to", v.to_line())));
        }
        write(&path, &out)?;
    }
    Ok(())
}

fn run_chessboard(
    rows: u32,
    cols: u32,
    export_facets: Option<PathBuf>,
    export_boundaries: Option<PathBuf>,
) -> Result<(), CliError> {
    let board = chessboard(rows, cols);
    let chains = ChainComplex::from_simplicial(&board)?;
    let h = reduced_homology(&chains)?;
    let f: Vec<String> = board.f_vector().iter().map(ToString::to_string).collect();
    println!("Δ_{{{rows},{cols}}}  f-vector ({})", f.join(","));
    println!("nu = {}", nu(rows, cols));
    println!("homological connectivity: {}", homological_connectivity(&h, board.dimension().unwrap_or(-2)));
    println!("{}", h.summary());
    if let Some(path) = export_facets {
        write(&path, &board.to_facet_text(&format!("Δ_{{{rows},{cols}}} facets; labels r<row>c<col>")))?;
    }
    if let Some(dir) = export_boundaries {
        fs::create_dir_all(&dir).map_err(|e| CliError::Io(dir.clone(), e))?;
        let mut k = 0;
        while let Some(m) = chains.boundary(k) {
            write(&dir.join(format!("d{k}.txt")), &m.to_triplet_text())?;
            k += 1;
        }
    }
    Ok(())
}

fn run_table(max_sum: u32) -> Result<(), CliError> {
    println!("m n nu hconn homology");
    for m in 1..=max_sum / 2 {
        for n in m..=max_sum - m {
            let (h, c) = connectivity_of(&chessboard(m, n))?;
            println!("{m} {n} {} {c} {}", nu(m, n), h.summary());
        }
    }
    Ok(())
}

fn run_verify(level: LevelArg, mutate: Option<Mutation>, seed: Option<u64>) -> ExitCode {
    let mut config = VerifyConfig::new(match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    });
    if let Some(Mutation::Nu) = mutate {
        config.nu = corrupted_nu;
    }
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let summary = run(&config);
    for outcome in &summary.outcomes {
        println!("{outcome}");
        for failure in &outcome.failures {
            println!("    {failure}");
        }
    }
    if summary.all_passed() {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        let failed: Vec<String> = summary.failed().iter().map(ToString::to_string).collect();
        println!("failed criteria: {}", failed.join(", "));
        ExitCode::from(1)
    }
}
