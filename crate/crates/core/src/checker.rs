//! Independent verification of certificates.
//!
//! Each check validates a certificate against the instance and recomputes
//! its objective from scratch.

use std::collections::HashSet;

use thiserror::Error;

use crate::certificate::{Certificate, Placement, Score};
use crate::graph::{Graph, PartialGrid};
use crate::plugins::{Instance, PenaltyMode, ProblemSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("certificate kind does not match {0}")]
    WrongKind(&'static str),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("edge {0}-{1} is not in the graph")]
    NotAnEdge(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, CheckError> {
    Err(CheckError::Invalid(msg.into()))
}

fn check_edges(g: &Graph, edges: &[(usize, usize)]) -> Result<Vec<usize>, CheckError> {
    let mut seen = HashSet::new();
    let mut degree = vec![0usize; g.n() + 1];
    for &(u, v) in edges {
        if !g.adjacent(u, v) {
            return Err(CheckError::NotAnEdge(u, v));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return invalid(format!("edge {u}-{v} listed twice"));
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    Ok(degree)
}

fn check_vertex_set(g: &Graph, vs: &[usize]) -> Result<Vec<bool>, CheckError> {
    let mut chosen = vec![false; g.n() + 1];
    for &v in vs {
        if v == 0 || v > g.n() {
            return Err(CheckError::BadVertex(v));
        }
        if chosen[v] {
            return invalid(format!("vertex {v} listed twice"));
        }
        chosen[v] = true;
    }
    Ok(chosen)
}

/// Union-find root with path halving.
fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Number of connected components of `(V, edges)`, or an error on a cycle
/// when `forest` is set.
fn components(n: usize, edges: &[(usize, usize)], forest: bool) -> Result<usize, CheckError> {
    let mut parent: Vec<usize> = (0..=n).collect();
    let mut count = n;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            if forest {
                return invalid("edge set contains a cycle");
            }
            continue;
        }
        parent[a] = b;
        count -= 1;
    }
    Ok(count)
}

fn check_coloring(g: &Graph, colors: &[u32], palette: usize) -> Result<(), CheckError> {
    if colors.len() != g.n() {
        return invalid(format!("{} colors for {} vertices", colors.len(), g.n()));
    }
    if let Some(i) = colors.iter().position(|&c| c == 0 || c as usize > palette) {
        return invalid(format!("vertex {} has color {} outside 1..={palette}", i + 1, colors[i]));
    }
    Ok(())
}

fn check_placements(grid: &PartialGrid, pieces: &[(usize, usize)], ps: &[Placement]) -> Result<i64, CheckError> {
    let mut covered = HashSet::new();
    for p in ps {
        let &(h, w) = pieces
            .get(p.piece)
            .ok_or_else(|| CheckError::Invalid(format!("unknown piece {}", p.piece + 1)))?;
        if p.row < h || p.col < w {
            return invalid(format!("piece {} at ({}, {}) leaves the grid", p.piece + 1, p.row, p.col));
        }
        for r in p.row + 1 - h..=p.row {
            for c in p.col + 1 - w..=p.col {
                if !grid.is_present((r, c)) {
                    return invalid(format!("cell ({r}, {c}) is missing or outside the grid"));
                }
                if !covered.insert((r, c)) {
                    return invalid(format!("cell ({r}, {c}) covered twice"));
                }
            }
        }
    }
    Ok(ps.len() as i64)
}

/// Verifies `cert` as a solution of `spec` on `instance` and returns its objective.
pub fn check(spec: &ProblemSpec, instance: &Instance, cert: &Certificate) -> Result<Score, CheckError> {
    let g = &instance.graph;
    let kind = || CheckError::WrongKind(spec.name());
    match (spec, cert) {
        (
            ProblemSpec::Coloring { colors: palette } | ProblemSpec::ColoringCanonical { colors: palette },
            Certificate::Coloring(colors),
        ) => {
            check_coloring(g, colors, *palette)?;
            if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| colors[u - 1] == colors[v - 1]) {
                return invalid(format!("edge {u}-{v} is monochromatic"));
            }
            Ok(Score::Feasible)
        }
        (ProblemSpec::PenaltyColoring { colors: palette, mode }, Certificate::Coloring(colors)) => {
            check_coloring(g, colors, *palette)?;
            let paid = g
                .edges()
                .iter()
                .filter(|&&(u, v)| colors[u - 1] == colors[v - 1])
                .map(|&(u, v)| g.edge_penalty(u, v));
            Ok(Score::Value(match mode {
                PenaltyMode::Sum => paid.sum(),
                PenaltyMode::Max => paid.max().unwrap_or(0).max(0),
            }))
        }
        (ProblemSpec::PathCover, Certificate::Edges(edges)) => {
            let degree = check_edges(g, edges)?;
            if let Some(v) = g.vertices().find(|&v| degree[v] > 2) {
                return invalid(format!("vertex {v} has {} cover edges", degree[v]));
            }
            Ok(Score::Value(components(g.n(), edges, true)? as i64))
        }
        (ProblemSpec::CycleCover, Certificate::Edges(edges)) => {
            let degree = check_edges(g, edges)?;
            if let Some(v) = g.vertices().find(|&v| degree[v] != 2) {
                return invalid(format!("vertex {v} has {} cover edges", degree[v]));
            }
            Ok(Score::Value(components(g.n(), edges, false)? as i64))
        }
        (&ProblemSpec::KReplica { k }, Certificate::Vertices(vs)) => {
            let chosen = check_vertex_set(g, vs)?;
            if vs.len() != k {
                return invalid(format!("{} vertices selected, expected {k}", vs.len()));
            }
            let cost: i64 = vs.iter().map(|&v| g.selection_cost(v)).sum::<i64>()
                + g.edges()
                    .iter()
                    .filter(|&&(u, v)| chosen[u] && chosen[v])
                    .map(|&(u, v)| g.edge_penalty(u, v))
                    .sum::<i64>();
            Ok(Score::Value(cost))
        }
        (ProblemSpec::MaxLeafTree, Certificate::Edges(edges)) => {
            let degree = check_edges(g, edges)?;
            if edges.len() + 1 != g.n() || components(g.n(), edges, true)? != 1 {
                return invalid("edge set is not a spanning tree");
            }
            Ok(Score::Value(
                g.vertices().filter(|&v| degree[v] == 1).map(|v| g.vertex_weight(v)).sum(),
            ))
        }
        (ProblemSpec::MinMaximalMatching, Certificate::Edges(edges)) => {
            let degree = check_edges(g, edges)?;
            if let Some(v) = g.vertices().find(|&v| degree[v] > 1) {
                return invalid(format!("vertex {v} is matched twice"));
            }
            if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| degree[u] == 0 && degree[v] == 0) {
                return invalid(format!("edge {u}-{v} could be added"));
            }
            Ok(Score::Value(edges.iter().map(|&(u, v)| g.edge_weight(u, v)).sum()))
        }
        (&ProblemSpec::AvgPath { lower, upper }, Certificate::Path(path)) => {
            check_vertex_set(g, path)?;
            if let Some(w) = path.windows(2).find(|w| !g.adjacent(w[0], w[1])) {
                return Err(CheckError::NotAnEdge(w[0], w[1]));
            }
            if path.len() < lower || path.len() > upper {
                return invalid(format!("path has {} vertices, outside {lower}..={upper}", path.len()));
            }
            Ok(Score::Average {
                sum: path.iter().map(|&v| g.vertex_weight(v)).sum(),
                count: path.len() as i64,
            })
        }
        (ProblemSpec::RectCover { pieces }, Certificate::Placements(ps)) => {
            let grid = instance
                .grid
                .as_ref()
                .ok_or_else(|| CheckError::Invalid("rect-cover needs a grid".into()))?;
            Ok(Score::Value(check_placements(grid, pieces, ps)?))
        }
        (ProblemSpec::Mwis, Certificate::Vertices(vs)) => {
            let chosen = check_vertex_set(g, vs)?;
            if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| chosen[u] && chosen[v]) {
                return invalid(format!("edge {u}-{v} has both ends selected"));
            }
            Ok(Score::Value(vs.iter().map(|&v| g.vertex_weight(v)).sum()))
        }
        _ => Err(kind()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p4() -> Instance {
        Instance::from_graph(Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap())
    }

    #[test]
    fn path_cover_scores_components() {
        let cert = Certificate::edges(vec![(1, 2), (3, 4)]);
        assert_eq!(check(&ProblemSpec::PathCover, &p4(), &cert), Ok(Score::Value(2)));
        let bad = Certificate::edges(vec![(1, 3)]);
        assert_eq!(check(&ProblemSpec::PathCover, &p4(), &bad), Err(CheckError::NotAnEdge(1, 3)));
    }

    #[test]
    fn matching_must_be_maximal() {
        let spec = ProblemSpec::MinMaximalMatching;
        assert!(check(&spec, &p4(), &Certificate::edges(vec![(1, 2)])).is_err());
        assert_eq!(check(&spec, &p4(), &Certificate::edges(vec![(2, 3)])), Ok(Score::Value(1)));
    }

    #[test]
    fn coloring_must_be_proper() {
        let spec = ProblemSpec::Coloring { colors: 2 };
        assert_eq!(check(&spec, &p4(), &Certificate::Coloring(vec![1, 2, 1, 2])), Ok(Score::Feasible));
        assert!(check(&spec, &p4(), &Certificate::Coloring(vec![1, 1, 2, 1])).is_err());
        assert!(check(&spec, &p4(), &Certificate::Coloring(vec![1, 2, 3, 1])).is_err());
    }

    #[test]
    fn wrong_kind() {
        let err = check(&ProblemSpec::Mwis, &p4(), &Certificate::edges(vec![]));
        assert_eq!(err, Err(CheckError::WrongKind("mwis")));
    }

    #[test]
    fn placements_cannot_overlap() {
        let grid = PartialGrid::full(2, 3).unwrap();
        let inst = Instance::from_grid(grid);
        let spec = ProblemSpec::RectCover { pieces: vec![(2, 2)] };
        let one = Certificate::Placements(vec![Placement { piece: 0, row: 2, col: 2 }]);
        assert_eq!(check(&spec, &inst, &one), Ok(Score::Value(1)));
        let two = Certificate::Placements(vec![
            Placement { piece: 0, row: 2, col: 2 },
            Placement { piece: 0, row: 2, col: 3 },
        ]);
        assert!(check(&spec, &inst, &two).is_err());
    }
}
