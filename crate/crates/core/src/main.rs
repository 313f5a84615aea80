//! Command-line front end. Exit codes: 0 on success, 1 on an invariant
//! violation or mathematical anomaly, 2 on a usage error.

use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use collatz_graph::core_maps::{decompose, trajectory, DEFAULT_STEP_CAP};
use collatz_graph::export::{
    render_forest_b_csv, render_forest_b_dot, render_forest_b_json, render_forest_h_csv,
    render_forest_h_dot, render_forest_h_json, render_trajectory_csv, render_trajectory_json,
    render_trajectory_text, render_tree_csv, render_tree_dot, render_tree_json, render_union_csv,
    render_union_dot, render_union_json, HGrid,
};
use collatz_graph::forests::union_graph;
use collatz_graph::tree_builder::build_levels;
use collatz_graph::verifier::{run_checks, SuiteParams};
use collatz_graph::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "collatz",
    about = "Collatz graph construction, forest decomposition and invariant verification",
    version
)]
struct Cli {
    /// Output format; commands reject formats they cannot render
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,

    /// Worker threads / range shards for verification
    #[arg(long, global = true, default_value_t = 8)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the forward orbit of a value down to 1
    Trajectory {
        n: Value,
        /// Abort if 1 is not reached within this many steps
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        cap: u64,
    },
    /// Run the invariant checks and stream one JSON report per check
    Verify {
        /// Range bound N for the sweeps
        #[arg(long, default_value_t = 1_000_000)]
        max: Value,
        /// Tree height H for the acyclicity check
        #[arg(long, default_value_t = 40)]
        levels: usize,
        /// Step cap for the convergence sweep
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
        /// Comma-separated subset of checks to run
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Export the level tree rooted at 1
    Tree {
        #[arg(long)]
        levels: usize,
    },
    /// Export a forest grid (kind h: doubling chains, kind b: branch edges)
    Forest {
        #[arg(long)]
        kind: char,
        /// Largest odd chain root (kind h)
        #[arg(long)]
        odd_max: Option<Value>,
        /// Chain length in doublings (kind h)
        #[arg(long)]
        depth_max: Option<u32>,
        /// Window bound on branch values (kind b)
        #[arg(long)]
        max: Option<Value>,
    },
    /// Export the union graph window of both forests
    Union {
        #[arg(long)]
        max: Value,
    },
    /// Print the odd-part factorization n = o * 2^d
    Decompose { n: Value },
}

enum CmdError {
    Usage(String),
    Anomaly(String),
}

fn usage(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn run(cli: &Cli) -> Result<String, CmdError> {
    match &cli.command {
        Command::Trajectory { n, cap } => {
            if *n < 1 || *cap < 1 {
                return Err(usage("trajectory requires n >= 1 and cap >= 1"));
            }
            let t = trajectory(*n, *cap).map_err(|e| CmdError::Anomaly(e.to_string()))?;
            Ok(match cli.format {
                None => render_trajectory_text(&t),
                Some(Format::Json) => render_trajectory_json(&t),
                Some(Format::Csv) => render_trajectory_csv(&t),
                Some(Format::Dot) => return Err(usage("trajectory has no dot rendering")),
            })
        }
        Command::Verify {
            max,
            levels,
            cap,
            checks,
        } => {
            if *max < 1 || *cap < 1 {
                return Err(usage("verify requires --max >= 1 and --cap >= 1"));
            }
            if cli.threads < 1 {
                return Err(usage("--threads must be >= 1"));
            }
            if matches!(cli.format, Some(Format::Dot) | Some(Format::Csv)) {
                return Err(usage("verify reports are JSON only"));
            }
            let params = SuiteParams {
                max: *max,
                height: *levels,
                cap: *cap,
                shards: cli.threads,
            };
            let reports = run_checks(params, checks).map_err(|e| usage(e.to_string()))?;
            let mut out = String::new();
            let mut failed = false;
            for r in &reports {
                out.push_str(&r.to_json());
                out.push('\n');
                failed |= !r.passed;
            }
            if failed {
                // still print the stream, then signal via exit code
                print_output(cli, &out).map_err(|e| CmdError::Anomaly(e.to_string()))?;
                return Err(CmdError::Anomaly("one or more checks failed".into()));
            }
            Ok(out)
        }
        Command::Tree { levels } => {
            let slice = build_levels(*levels).map_err(|e| CmdError::Anomaly(e.to_string()))?;
            Ok(match cli.format.unwrap_or(Format::Dot) {
                Format::Dot => render_tree_dot(&slice),
                Format::Csv => render_tree_csv(&slice),
                Format::Json => render_tree_json(&slice),
            })
        }
        Command::Forest {
            kind,
            odd_max,
            depth_max,
            max,
        } => match kind {
            'h' => {
                let odd_max = odd_max.ok_or_else(|| usage("--kind h requires --odd-max"))?;
                let depth_max = depth_max.ok_or_else(|| usage("--kind h requires --depth-max"))?;
                if odd_max < 1 || odd_max % 2 == 0 {
                    return Err(usage("--odd-max must be a positive odd integer"));
                }
                if depth_max > 120 {
                    return Err(usage("--depth-max above 120 overflows 128-bit values"));
                }
                let grid = HGrid { odd_max, depth_max };
                Ok(match cli.format.unwrap_or(Format::Dot) {
                    Format::Dot => render_forest_h_dot(&grid),
                    Format::Csv => render_forest_h_csv(&grid),
                    Format::Json => render_forest_h_json(&grid),
                })
            }
            'b' => {
                let max = max.ok_or_else(|| usage("--kind b requires --max"))?;
                if max < 1 {
                    return Err(usage("--max must be >= 1"));
                }
                Ok(match cli.format.unwrap_or(Format::Dot) {
                    Format::Dot => render_forest_b_dot(max),
                    Format::Csv => render_forest_b_csv(max),
                    Format::Json => render_forest_b_json(max),
                })
            }
            other => Err(usage(format!("unknown forest kind '{other}' (expected h or b)"))),
        },
        Command::Union { max } => {
            if *max < 2 {
                return Err(usage("union requires --max >= 2"));
            }
            let window = union_graph(*max).map_err(|e| CmdError::Anomaly(e.to_string()))?;
            Ok(match cli.format.unwrap_or(Format::Dot) {
                Format::Dot => render_union_dot(&window),
                Format::Csv => render_union_csv(&window),
                Format::Json => render_union_json(&window),
            })
        }
        Command::Decompose { n } => {
            if *n < 1 {
                return Err(usage("decompose requires n >= 1"));
            }
            let d = decompose(*n);
            Ok(match cli.format {
                None => format!("{n} = {} * 2^{}\n", d.odd_part, d.depth),
                Some(Format::Json) => format!(
                    "{}\n",
                    serde_json::json!({
                        "value": n,
                        "odd_part": d.odd_part,
                        "depth": d.depth,
                    })
                ),
                Some(Format::Csv) => {
                    format!("value,odd_part,depth\n{n},{},{}\n", d.odd_part, d.depth)
                }
                Some(Format::Dot) => return Err(usage("decompose has no dot rendering")),
            })
        }
    }
}

fn print_output(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            if print_output(&cli, &text).is_err() {
                eprintln!("error: could not write output");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CmdError::Anomaly(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
