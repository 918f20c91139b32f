use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod table;

#[derive(Parser, Debug)]
#[command(name = "lapgraph", version, about = "Laplacian polynomials, bicycles, medial curves and tree growth of periodic graphs")]
struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Covers,
    Restrictions,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Laplacian matrix and Laplacian polynomials Δ_k.
    Delta {
        file: PathBuf,
        #[arg(long, default_value = "z")]
        field: String,
        /// Only this k; all k by default.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Bicycle space of a finite graph, by both methods.
    Bicycle {
        file: PathBuf,
        #[arg(long, default_value = "gf:2")]
        field: String,
    },
    /// Medial curves, residues and windings of a plane graph.
    Medial {
        file: PathBuf,
        /// Component left out of the residue basis.
        #[arg(long, default_value_t = 0)]
        base_component: usize,
        /// Face colored 0 in the Dehn colorings.
        #[arg(long, default_value_t = 0)]
        base_face: usize,
        #[arg(long, default_value = "gf:2")]
        field: String,
    },
    /// Spanning trees of a graph or of one of its covers.
    Trees {
        file: PathBuf,
        /// `n` or `a,b,c,d` (row-major generator matrix).
        #[arg(long)]
        cover: Option<String>,
    },
    /// Tree growth along covers or restrictions against m(Δ_0).
    Growth {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "covers")]
        mode: Mode,
        #[arg(long, default_value_t = 64)]
        max: u64,
        #[arg(long, default_value_t = 1024)]
        fibers: usize,
    },
    /// Cycle-rooted spanning forests with essential cycles.
    Crsf { file: PathBuf },
    /// Annular connectivity of a rank-1 quotient.
    Kappa { file: PathBuf },
    /// Logarithmic Mahler measure.
    Mahler {
        #[arg(long, conflicts_with = "from_graph", required_unless_present = "from_graph")]
        poly: Option<String>,
        /// Use Δ_0 of this graph.
        #[arg(long)]
        from_graph: Option<PathBuf>,
        #[arg(long, default_value_t = 1024)]
        fibers: usize,
    },
    /// Run every applicable cross-check; exits 1 on any failure.
    Verify {
        file: PathBuf,
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, default_value_t = 1024)]
        fibers: usize,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("LAPGRAPH_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("LAPGRAPH_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("LAPGRAPH_THREADS must be a positive integer, got 0".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(&cli.command, cli.json) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
