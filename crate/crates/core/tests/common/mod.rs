#![allow(dead_code)]

use pathdp::gen::{random_connected_graph, random_grid, randomize_weights};
use pathdp::plugins::{PenaltyMode, PLUGIN_NAMES};
use pathdp::{Instance, ProblemSpec};
use rand::Rng;

pub fn names() -> &'static [&'static str] {
    &PLUGIN_NAMES
}

/// A random instance for `name` with in-range parameters. Graphs are
/// connected with at most `max_n` vertices; grids have at most 12 cells.
pub fn random_case(rng: &mut impl Rng, name: &str, max_n: usize) -> (ProblemSpec, Instance) {
    if name == "rect-cover" {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=(12 / rows).min(4));
        let grid = random_grid(rng, rows, cols, 0.2);
        let kinds = rng.gen_range(1..=2);
        let pieces = (0..kinds)
            .map(|_| (rng.gen_range(1..=rows.min(3)), rng.gen_range(1..=cols.min(3))))
            .collect();
        return (ProblemSpec::RectCover { pieces }, Instance::from_grid(grid));
    }
    let lo = if name == "max-leaf-tree" { 2 } else { 1 };
    let n = rng.gen_range(lo..=max_n);
    let p = rng.gen_range(0.25..0.75);
    let mut g = random_connected_graph(rng, n, p);
    randomize_weights(rng, &mut g, 9);
    let spec = match name {
        "coloring" => ProblemSpec::Coloring { colors: rng.gen_range(1..=4) },
        "coloring-canonical" => ProblemSpec::ColoringCanonical { colors: rng.gen_range(1..=4) },
        "penalty-coloring" => ProblemSpec::PenaltyColoring {
            colors: rng.gen_range(1..=3),
            mode: if rng.gen_bool(0.5) { PenaltyMode::Sum } else { PenaltyMode::Max },
        },
        "path-cover" => ProblemSpec::PathCover,
        "cycle-cover" => ProblemSpec::CycleCover,
        "k-replica" => ProblemSpec::KReplica { k: rng.gen_range(1..=n) },
        "max-leaf-tree" => ProblemSpec::MaxLeafTree,
        "min-maximal-matching" => ProblemSpec::MinMaximalMatching,
        "avg-path" => {
            let lower = rng.gen_range(1..=n);
            ProblemSpec::AvgPath { lower, upper: rng.gen_range(lower..=n) }
        }
        "mwis" => ProblemSpec::Mwis,
        other => panic!("unknown plugin {other}"),
    };
    (spec, Instance::from_graph(g))
}
