use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pathdp::decomposition::Event;
use pathdp::oracle::oracle_solve;
use pathdp::plugins::{decompose, state_count, PenaltyMode, PLUGIN_NAMES};
use pathdp::{
    Certificate, DecompositionSource, Graph, Instance, PartialGrid, PathDecomposition, ProblemSpec, Score,
    Solution, SolveOptions,
};

const EXIT_INFEASIBLE: u8 = 2;

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

#[derive(Parser)]
#[command(name = "pathdp", version, about = "Exact dynamic programming over path decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem with the decomposition dynamic program.
    Solve(SolveArgs),
    /// Solve a small instance by exhaustive search.
    Oracle(OracleArgs),
    /// Check a decomposition file against a graph.
    ValidateDecomp(DecompArgs),
    /// Print the introduce/forget sequence of a decomposition.
    Nicify(DecompArgs),
    /// Print canonical state counts per bag size.
    States(StatesArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Graph file (`graph n m` format).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Partial grid file (`grid m n` format).
    #[arg(long)]
    grid: Option<PathBuf>,
}

#[derive(Args)]
struct ParamArgs {
    /// Number of colors.
    #[arg(short = 'C', long = "colors")]
    colors: Option<usize>,
    /// Number of replicas.
    #[arg(short = 'k')]
    k: Option<usize>,
    /// Minimum path length in vertices.
    #[arg(short = 'L')]
    lower: Option<usize>,
    /// Maximum path length in vertices.
    #[arg(short = 'U')]
    upper: Option<usize>,
    /// Penalty aggregation: sum or max.
    #[arg(long, default_value = "sum")]
    mode: PenaltyMode,
    /// Piece type as ROWSxCOLS; repeatable.
    #[arg(long = "piece", value_parser = parse_piece)]
    pieces: Vec<(usize, usize)>,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem name.
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(PLUGIN_NAMES))]
    problem: String,
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// auto, grid-sweep, exact, order, or a decomposition file.
    #[arg(long, default_value = "auto")]
    decomp: String,
    /// Print an optimal solution.
    #[arg(long)]
    reconstruct: bool,
    /// Drop crossing path states on grid sweeps (path-cover, cycle-cover).
    #[arg(long)]
    prune_catalan: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Maximum states per bag size.
    #[arg(long, default_value_t = pathdp::engine::DEFAULT_CAPACITY)]
    capacity: usize,
    /// Print every table.
    #[arg(long)]
    dump_tables: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(PLUGIN_NAMES))]
    problem: String,
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Print an optimal solution.
    #[arg(long)]
    reconstruct: bool,
}

#[derive(Args)]
struct DecompArgs {
    #[command(flatten)]
    input: InputArgs,
    /// auto, grid-sweep, exact, order, or a decomposition file.
    #[arg(long)]
    decomp: String,
}

#[derive(Args)]
struct StatesArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(PLUGIN_NAMES))]
    problem: String,
    #[command(flatten)]
    params: ParamArgs,
    /// Largest bag size to report.
    #[arg(long)]
    nv: usize,
    /// Smallest bag size to report.
    #[arg(long, default_value_t = 1)]
    from: usize,
    #[arg(long, default_value_t = pathdp::engine::DEFAULT_CAPACITY)]
    capacity: usize,
}

fn parse_piece(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("piece `{s}` is not ROWSxCOLS"))?;
    let dim = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad piece dimension `{t}`"));
    Ok((dim(r)?, dim(c)?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(input: &InputArgs) -> Result<Instance> {
    match (&input.graph, &input.grid) {
        (Some(path), _) => {
            let g = Graph::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            Ok(Instance::from_graph(g))
        }
        (_, Some(path)) => {
            let grid = PartialGrid::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
            Ok(Instance::from_grid(grid))
        }
        _ => bail!("either --graph or --grid is required"),
    }
}

fn decomposition_source(arg: &str) -> Result<DecompositionSource> {
    Ok(match arg {
        "auto" => DecompositionSource::Auto,
        "grid-sweep" => DecompositionSource::GridSweep,
        "exact" => DecompositionSource::Exact,
        "order" => DecompositionSource::Natural,
        file => {
            let path = Path::new(file);
            let pd = PathDecomposition::parse(&read(path)?).with_context(|| format!("parsing {file}"))?;
            DecompositionSource::Given(pd)
        }
    })
}

fn need<T>(value: Option<T>, flag: &str, problem: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("{problem} requires {flag}"))
}

fn problem_spec(name: &str, p: &ParamArgs) -> Result<ProblemSpec> {
    Ok(match name {
        "coloring" => ProblemSpec::Coloring { colors: need(p.colors, "-C", name)? },
        "coloring-canonical" => ProblemSpec::ColoringCanonical { colors: need(p.colors, "-C", name)? },
        "penalty-coloring" => ProblemSpec::PenaltyColoring {
            colors: need(p.colors, "-C", name)?,
            mode: p.mode,
        },
        "path-cover" => ProblemSpec::PathCover,
        "cycle-cover" => ProblemSpec::CycleCover,
        "k-replica" => ProblemSpec::KReplica { k: need(p.k, "-k", name)? },
        "max-leaf-tree" => ProblemSpec::MaxLeafTree,
        "min-maximal-matching" => ProblemSpec::MinMaximalMatching,
        "avg-path" => ProblemSpec::AvgPath {
            lower: need(p.lower, "-L", name)?,
            upper: need(p.upper, "-U", name)?,
        },
        "rect-cover" => {
            if p.pieces.is_empty() {
                bail!("{name} requires at least one --piece");
            }
            ProblemSpec::RectCover { pieces: p.pieces.clone() }
        }
        "mwis" => ProblemSpec::Mwis,
        other => bail!("unknown problem `{other}`"),
    })
}

fn print_result(out: &mut String, score: Option<Score>, certificate: Option<&Certificate>) {
    match score {
        Some(Score::Feasible) => outln!(out, "feasible"),
        Some(s) => outln!(out, "objective {s}"),
        None => outln!(out, "infeasible"),
    }
    if let Some(cert) = certificate {
        outln!(out, "certificate");
        for line in cert.lines() {
            outln!(out, "{line}");
        }
        outln!(out, "end");
    }
}

fn exit_for(score: Option<Score>) -> ExitCode {
    if score.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INFEASIBLE)
    }
}

fn print_stats(out: &mut String, sol: &Solution) {
    outln!(out, "width {}", sol.width);
    outln!(out, "nodes {}", sol.stats.table_sizes.len());
    outln!(out, "max-table {}", sol.stats.max_table_size());
    outln!(out, "max-live {}", sol.stats.max_live_states());
}

fn run_solve(args: SolveArgs, out: &mut String) -> Result<ExitCode> {
    let instance = load_instance(&args.input)?;
    let spec = problem_spec(&args.problem, &args.params)?;
    let opts = SolveOptions {
        decomposition: decomposition_source(&args.decomp)?,
        threads: args.threads,
        capacity: args.capacity,
        reconstruct: args.reconstruct,
        prune_catalan: args.prune_catalan,
        dump_tables: args.dump_tables,
        ..SolveOptions::default()
    };
    let start = Instant::now();
    let sol = pathdp::solve(&spec, &instance, &opts)?;
    let elapsed = start.elapsed();
    print_result(out, sol.score, sol.certificate.as_ref());
    print_stats(out, &sol);
    if let Some(tables) = &sol.tables {
        outln!(out, "tables");
        out.push_str(tables);
        outln!(out, "end");
    }
    eprintln!("time {:.6}s", elapsed.as_secs_f64());
    Ok(exit_for(sol.score))
}

fn run_oracle(args: OracleArgs, out: &mut String) -> Result<ExitCode> {
    let instance = load_instance(&args.input)?;
    let spec = problem_spec(&args.problem, &args.params)?;
    let start = Instant::now();
    let result = oracle_solve(&spec, &instance)?;
    let cert = if args.reconstruct { result.certificate.as_ref() } else { None };
    print_result(out, result.score, cert);
    eprintln!("time {:.6}s", start.elapsed().as_secs_f64());
    Ok(exit_for(result.score))
}

fn run_validate(args: DecompArgs, out: &mut String) -> Result<ExitCode> {
    let instance = load_instance(&args.input)?;
    let pd = match decomposition_source(&args.decomp)? {
        DecompositionSource::Given(pd) => pd,
        source => decompose(&ProblemSpec::PathCover, &instance, &source)?.to_path_decomposition(),
    };
    match pd.validate(&instance.graph) {
        Ok(width) => {
            outln!(out, "valid width {width}");
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            outln!(out, "invalid {e}");
            Ok(ExitCode::from(EXIT_INFEASIBLE))
        }
    }
}

fn run_nicify(args: DecompArgs, out: &mut String) -> Result<ExitCode> {
    let instance = load_instance(&args.input)?;
    let source = decomposition_source(&args.decomp)?;
    let nice = decompose(&ProblemSpec::PathCover, &instance, &source)?;
    outln!(out, "nice {} width {}", nice.len(), nice.width());
    for ev in nice.events() {
        match ev {
            Event::Introduce(v) => outln!(out, "introduce {v}"),
            Event::Forget(v) => outln!(out, "forget {v}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_states(args: StatesArgs, out: &mut String) -> Result<ExitCode> {
    let spec = problem_spec(&args.problem, &args.params)?;
    for nv in args.from..=args.nv {
        outln!(out, "nv {nv} states {}", state_count(&spec, nv, args.capacity)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match cli.command {
        Command::Solve(a) => run_solve(a, &mut out),
        Command::Oracle(a) => run_oracle(a, &mut out),
        Command::ValidateDecomp(a) => run_validate(a, &mut out),
        Command::Nicify(a) => run_nicify(a, &mut out),
        Command::States(a) => run_states(a, &mut out),
    };
    // a closed pipe is not an error worth reporting
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pieces() {
        assert_eq!(parse_piece("2x3"), Ok((2, 3)));
        assert_eq!(parse_piece("1X4"), Ok((1, 4)));
        assert!(parse_piece("23").is_err());
        assert!(parse_piece("ax3").is_err());
    }

    #[test]
    fn parameters_per_problem() {
        let cli = Cli::try_parse_from(["pathdp", "states", "avg-path", "-L", "2", "-U", "4", "--nv", "3"]).unwrap();
        let Command::States(args) = cli.command else { panic!("expected states") };
        assert_eq!(problem_spec(&args.problem, &args.params).unwrap(), ProblemSpec::AvgPath { lower: 2, upper: 4 });
        assert!(Cli::try_parse_from(["pathdp", "states", "no-such", "--nv", "3"]).is_err());
    }
}
