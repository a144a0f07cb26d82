//! Problem definitions for the engine and a by-name dispatcher.

pub mod avg_path;
pub mod coloring;
pub mod cover;
pub mod matching;
pub mod mwis;
pub mod partition;
pub mod rect;
pub mod replica;
pub mod tree;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::certificate::{Certificate, Score};
use crate::decomposition::{
    exact_pathwidth_decomposition, grid_sweep_decomposition, natural_decomposition,
    DecompositionError, NicePathDecomposition, PathDecomposition,
};
use crate::engine::{
    catalan_admissible, generate_states, reconstruct_solution, run_dp, DpOptions, DpStats, EngineError, Problem,
    State, DEFAULT_CAPACITY,
};
use crate::graph::{Graph, PartialGrid};

pub use avg_path::AvgPath;
pub use coloring::{Coloring, PenaltyMode};
pub use cover::Cover;
pub use matching::MaximalMatching;
pub use mwis::Mwis;
pub use rect::{PieceError, RectCover};
pub use replica::Replica;
pub use tree::MaxLeafTree;

/// Drops the `arity` components at bag position `slot`.
pub(crate) fn remove_slot(state: &State, slot: usize, arity: usize) -> State {
    let mut comps = state.comps.clone();
    comps.drain(slot * arity..(slot + 1) * arity);
    State::new(comps, state.extra)
}

/// Calls `emit` on every tuple in `[lo, hi]^len`, last position fastest.
pub(crate) fn for_each_tuple(len: usize, lo: i8, hi: i8, emit: &mut dyn FnMut(&[i8]) -> bool) -> bool {
    if hi < lo && len > 0 {
        return true;
    }
    let mut t = vec![lo; len];
    loop {
        if !emit(&t) {
            return false;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if t[i] < hi {
                t[i] += 1;
                break;
            }
            t[i] = lo;
        }
    }
}

/// Every plugin name, in a fixed order.
pub const PLUGIN_NAMES: [&str; 11] = [
    "coloring",
    "coloring-canonical",
    "penalty-coloring",
    "path-cover",
    "cycle-cover",
    "k-replica",
    "max-leaf-tree",
    "min-maximal-matching",
    "avg-path",
    "rect-cover",
    "mwis",
];

/// A plugin together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemSpec {
    Coloring { colors: usize },
    ColoringCanonical { colors: usize },
    PenaltyColoring { colors: usize, mode: PenaltyMode },
    PathCover,
    CycleCover,
    KReplica { k: usize },
    MaxLeafTree,
    MinMaximalMatching,
    AvgPath { lower: usize, upper: usize },
    /// Piece sizes as `(rows, cols)`.
    RectCover { pieces: Vec<(usize, usize)> },
    Mwis,
}

impl ProblemSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemSpec::Coloring { .. } => "coloring",
            ProblemSpec::ColoringCanonical { .. } => "coloring-canonical",
            ProblemSpec::PenaltyColoring { .. } => "penalty-coloring",
            ProblemSpec::PathCover => "path-cover",
            ProblemSpec::CycleCover => "cycle-cover",
            ProblemSpec::KReplica { .. } => "k-replica",
            ProblemSpec::MaxLeafTree => "max-leaf-tree",
            ProblemSpec::MinMaximalMatching => "min-maximal-matching",
            ProblemSpec::AvgPath { .. } => "avg-path",
            ProblemSpec::RectCover { .. } => "rect-cover",
            ProblemSpec::Mwis => "mwis",
        }
    }

    fn check(&self, instance: &Instance) -> Result<(), SolveError> {
        let n = instance.graph.n();
        let bad = |msg: String| Err(SolveError::InvalidParameter(msg));
        match *self {
            ProblemSpec::Coloring { colors }
            | ProblemSpec::ColoringCanonical { colors }
            | ProblemSpec::PenaltyColoring { colors, .. } => {
                if colors == 0 {
                    return bad("number of colors must be at least 1".into());
                }
                if colors > i8::MAX as usize {
                    return bad(format!("at most {} colors are supported", i8::MAX));
                }
            }
            ProblemSpec::KReplica { k } if k == 0 || k > n => {
                return bad(format!("k must lie in 1..={n}, got {k}"));
            }
            ProblemSpec::MaxLeafTree if n < 2 => {
                return bad("max-leaf-tree needs at least two vertices".into());
            }
            ProblemSpec::AvgPath { lower, upper } if lower == 0 || lower > upper || upper > n => {
                return bad(format!("need 1 <= L <= U <= {n}, got L={lower} U={upper}"));
            }
            ProblemSpec::RectCover { .. } if instance.grid.is_none() => {
                return Err(SolveError::NeedsGrid("rect-cover"));
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PenaltyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sum" => Ok(PenaltyMode::Sum),
            "max" => Ok(PenaltyMode::Max),
            _ => Err(format!("unknown penalty mode `{s}` (expected sum or max)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Piece(#[from] PieceError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} needs a grid instance")]
    NeedsGrid(&'static str),
}

/// A graph, possibly induced by a partial grid.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub grid: Option<PartialGrid>,
}

impl Instance {
    pub fn from_graph(graph: Graph) -> Self {
        Instance { graph, grid: None }
    }

    pub fn from_grid(grid: PartialGrid) -> Self {
        Instance {
            graph: grid.to_graph(),
            grid: Some(grid),
        }
    }
}

/// Where the decomposition comes from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum DecompositionSource {
    /// Grid sweep for grids, exact search otherwise.
    #[default]
    Auto,
    GridSweep,
    Exact,
    /// The linear layout `1..=n`.
    Natural,
    Given(PathDecomposition),
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub decomposition: DecompositionSource,
    pub threads: usize,
    pub capacity: usize,
    pub chunk: usize,
    /// Rebuild an explicit solution.
    pub reconstruct: bool,
    /// Drop crossing cover states (grid sweeps only).
    pub prune_catalan: bool,
    /// Keep a text dump of every table.
    pub dump_tables: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            decomposition: DecompositionSource::Auto,
            threads: 1,
            capacity: DEFAULT_CAPACITY,
            chunk: DpOptions::default().chunk,
            reconstruct: false,
            prune_catalan: false,
            dump_tables: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// `None` when the instance is infeasible.
    pub score: Option<Score>,
    pub certificate: Option<Certificate>,
    pub stats: DpStats,
    /// Width of the decomposition used.
    pub width: usize,
    pub tables: Option<String>,
}

/// Builds the nice decomposition `spec` runs on.
pub fn decompose(
    spec: &ProblemSpec,
    instance: &Instance,
    source: &DecompositionSource,
) -> Result<NicePathDecomposition, SolveError> {
    let g = &instance.graph;
    if let ProblemSpec::RectCover { .. } = spec {
        let grid = instance.grid.as_ref().ok_or(SolveError::NeedsGrid("rect-cover"))?;
        return match source {
            DecompositionSource::Auto | DecompositionSource::GridSweep => {
                Ok(grid_sweep_decomposition(grid, true))
            }
            _ => Err(SolveError::InvalidParameter(
                "rect-cover runs on the grid sweep decomposition only".into(),
            )),
        };
    }
    match source {
        DecompositionSource::GridSweep => {
            let grid = instance.grid.as_ref().ok_or(SolveError::NeedsGrid("grid-sweep"))?;
            Ok(grid_sweep_decomposition(grid, false))
        }
        DecompositionSource::Exact => Ok(exact_pathwidth_decomposition(g)?.nicify(g)?),
        DecompositionSource::Natural => Ok(natural_decomposition(g).nicify(g)?),
        DecompositionSource::Given(pd) => Ok(pd.nicify(g)?),
        DecompositionSource::Auto => match &instance.grid {
            Some(grid) => Ok(grid_sweep_decomposition(grid, false)),
            None => Ok(exact_pathwidth_decomposition(g)?.nicify(g)?),
        },
    }
}

fn run<P: Problem>(
    problem: &P,
    g: &Graph,
    npd: &NicePathDecomposition,
    opts: &SolveOptions,
    prune: bool,
) -> Result<Solution, SolveError> {
    if prune && npd.sweep().is_none() {
        return Err(EngineError::NotApplicable("decomposition is not a grid sweep".into()).into());
    }
    let dp = DpOptions {
        threads: opts.threads.max(1),
        capacity: opts.capacity,
        retain: opts.reconstruct || opts.dump_tables,
        chunk: opts.chunk.max(1),
        filter: if prune { Some(catalan_admissible) } else { None },
    };
    let outcome = run_dp(problem, g, npd, &dp)?;
    let certificate = if opts.reconstruct && outcome.is_feasible() {
        Some(reconstruct_solution(problem, g, npd, &outcome)?)
    } else {
        None
    };
    let tables = if opts.dump_tables {
        let mut buf = Vec::new();
        outcome.dump_tables(npd, &mut buf).expect("writing to memory");
        Some(String::from_utf8(buf).expect("ascii output"))
    } else {
        None
    };
    Ok(Solution {
        score: outcome.score,
        certificate,
        stats: outcome.stats,
        width: npd.width(),
        tables,
    })
}

/// Solves `spec` on `instance` with a decomposition chosen by `opts`.
pub fn solve(spec: &ProblemSpec, instance: &Instance, opts: &SolveOptions) -> Result<Solution, SolveError> {
    spec.check(instance)?;
    let npd = decompose(spec, instance, &opts.decomposition)?;
    solve_on(spec, instance, &npd, opts)
}

/// Solves `spec` on a prepared nice decomposition.
pub fn solve_on(
    spec: &ProblemSpec,
    instance: &Instance,
    npd: &NicePathDecomposition,
    opts: &SolveOptions,
) -> Result<Solution, SolveError> {
    spec.check(instance)?;
    let g = &instance.graph;
    let is_cover = matches!(spec, ProblemSpec::PathCover | ProblemSpec::CycleCover);
    if opts.prune_catalan && !is_cover {
        return Err(EngineError::NotApplicable(format!("{spec} has no path-id states")).into());
    }
    let prune = opts.prune_catalan;
    match spec {
        &ProblemSpec::Coloring { colors } => run(&Coloring::naive(colors), g, npd, opts, false),
        &ProblemSpec::ColoringCanonical { colors } => run(&Coloring::canonical(colors), g, npd, opts, false),
        &ProblemSpec::PenaltyColoring { colors, mode } => {
            run(&Coloring::penalty(colors, mode), g, npd, opts, false)
        }
        ProblemSpec::PathCover => run(&Cover::paths(), g, npd, opts, prune),
        ProblemSpec::CycleCover => run(&Cover::cycles(), g, npd, opts, prune),
        &ProblemSpec::KReplica { k } => run(&Replica::new(k), g, npd, opts, false),
        ProblemSpec::MaxLeafTree => run(&MaxLeafTree, g, npd, opts, false),
        ProblemSpec::MinMaximalMatching => run(&MaximalMatching, g, npd, opts, false),
        &ProblemSpec::AvgPath { lower, upper } => run(&AvgPath::new(lower, upper), g, npd, opts, false),
        ProblemSpec::RectCover { pieces } => {
            let grid = instance.grid.as_ref().ok_or(SolveError::NeedsGrid("rect-cover"))?;
            let info = npd.sweep().filter(|s| s.widened).ok_or_else(|| {
                SolveError::InvalidParameter("rect-cover needs the widened grid sweep".into())
            })?;
            let problem = RectCover::new(grid, pieces, info)?;
            run(&problem, g, npd, opts, false)
        }
        ProblemSpec::Mwis => run(&Mwis, g, npd, opts, false),
    }
}

/// Smallest `C` admitting a proper coloring, by ascending search.
pub fn chromatic_number(g: &Graph, npd: &NicePathDecomposition) -> Result<usize, SolveError> {
    let instance = Instance::from_graph(g.clone());
    for colors in 1..=g.n().max(1) {
        let spec = ProblemSpec::ColoringCanonical { colors };
        if solve_on(&spec, &instance, npd, &SolveOptions::default())?.score.is_some() {
            return Ok(colors);
        }
    }
    unreachable!("n colors always suffice")
}

fn states_of<P: Problem>(problem: &P, nv: usize, capacity: usize) -> Result<usize, SolveError> {
    Ok(generate_states(problem, nv, capacity)?.len())
}

/// Number of canonical states of `spec` for a bag of `nv` vertices.
pub fn state_count(spec: &ProblemSpec, nv: usize, capacity: usize) -> Result<usize, SolveError> {
    match spec {
        &ProblemSpec::Coloring { colors } => states_of(&Coloring::naive(colors), nv, capacity),
        &ProblemSpec::ColoringCanonical { colors } => states_of(&Coloring::canonical(colors), nv, capacity),
        &ProblemSpec::PenaltyColoring { colors, mode } => {
            states_of(&Coloring::penalty(colors, mode), nv, capacity)
        }
        ProblemSpec::PathCover => states_of(&Cover::paths(), nv, capacity),
        ProblemSpec::CycleCover => states_of(&Cover::cycles(), nv, capacity),
        &ProblemSpec::KReplica { k } => states_of(&Replica::new(k), nv, capacity),
        ProblemSpec::MaxLeafTree => states_of(&MaxLeafTree, nv, capacity),
        ProblemSpec::MinMaximalMatching => states_of(&MaximalMatching, nv, capacity),
        &ProblemSpec::AvgPath { lower, upper } => states_of(&AvgPath::new(lower, upper), nv, capacity),
        ProblemSpec::RectCover { pieces } => {
            let tallest = pieces.iter().map(|p| p.0).max().unwrap_or(1);
            (tallest + 1)
                .checked_pow(nv as u32)
                .filter(|&c| c <= capacity)
                .ok_or(SolveError::Engine(EngineError::Capacity { nv, limit: capacity }))
        }
        ProblemSpec::Mwis => states_of(&Mwis, nv, capacity),
    }
}

#[cfg(test)]
mod tests;
