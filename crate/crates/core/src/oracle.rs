//! Brute-force reference solvers for small instances.
//!
//! Nothing here touches decompositions or the engine: every problem is
//! solved by plain enumeration over colorings, subsets, paths or placements.

use std::collections::HashMap;

use thiserror::Error;

use crate::certificate::{Certificate, Placement, Score, Sense};
use crate::graph::{Graph, PartialGrid};
use crate::plugins::{Instance, PenaltyMode, ProblemSpec};

/// Largest graph the oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 12;
/// Largest grid (rows times columns) the oracle accepts.
pub const ORACLE_MAX_CELLS: usize = 36;
const MAX_COLORINGS: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance of size {size} exceeds the oracle limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} needs a grid instance")]
    NeedsGrid(&'static str),
}

/// Optimum and one optimal solution; both `None` when infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub score: Option<Score>,
    pub certificate: Option<Certificate>,
}

impl OracleResult {
    fn infeasible() -> Self {
        OracleResult { score: None, certificate: None }
    }

    fn found(score: Score, certificate: Certificate) -> Self {
        OracleResult {
            score: Some(score),
            certificate: Some(certificate),
        }
    }
}

pub fn oracle_solve(spec: &ProblemSpec, instance: &Instance) -> Result<OracleResult, OracleError> {
    let g = &instance.graph;
    let n = g.n();
    if let ProblemSpec::RectCover { pieces } = spec {
        let grid = instance.grid.as_ref().ok_or(OracleError::NeedsGrid("rect-cover"))?;
        let cells = grid.rows() * grid.cols();
        if cells > ORACLE_MAX_CELLS {
            return Err(OracleError::SizeLimitExceeded { size: cells, limit: ORACLE_MAX_CELLS });
        }
        if pieces.iter().any(|&(r, c)| r == 0 || c == 0) {
            return Err(OracleError::InvalidParameter("piece with a zero dimension".into()));
        }
        return Ok(rect_cover(grid, pieces));
    }
    if n > ORACLE_MAX_VERTICES {
        return Err(OracleError::SizeLimitExceeded { size: n, limit: ORACLE_MAX_VERTICES });
    }
    let bad = |msg: String| Err(OracleError::InvalidParameter(msg));
    Ok(match *spec {
        ProblemSpec::Coloring { colors } | ProblemSpec::ColoringCanonical { colors } => {
            if colors == 0 {
                return bad("need at least one color".into());
            }
            proper_coloring(g, colors)
        }
        ProblemSpec::PenaltyColoring { colors, mode } => {
            if colors == 0 {
                return bad("need at least one color".into());
            }
            penalty_coloring(g, colors, mode)?
        }
        ProblemSpec::PathCover => path_cover(g),
        ProblemSpec::CycleCover => cycle_cover(g),
        ProblemSpec::KReplica { k } => {
            if k == 0 || k > n {
                return bad(format!("k must lie in 1..={n}"));
            }
            replica(g, k)
        }
        ProblemSpec::MaxLeafTree => {
            if n < 2 {
                return bad("need at least two vertices".into());
            }
            max_leaf_tree(g)
        }
        ProblemSpec::MinMaximalMatching => maximal_matching(g),
        ProblemSpec::AvgPath { lower, upper } => {
            if lower == 0 || lower > upper || upper > n {
                return bad(format!("need 1 <= L <= U <= {n}"));
            }
            avg_path(g, lower, upper)
        }
        ProblemSpec::Mwis => mwis(g),
        ProblemSpec::RectCover { .. } => unreachable!("handled above"),
    })
}

/// Adjacency as bitmasks over 0-based vertex indices.
fn masks(g: &Graph) -> Vec<u32> {
    (1..=g.n())
        .map(|v| g.neighbors(v).fold(0u32, |m, u| m | 1 << (u - 1)))
        .collect()
}

fn proper_coloring(g: &Graph, colors: usize) -> OracleResult {
    fn extend(g: &Graph, colors: usize, assigned: &mut Vec<u32>) -> bool {
        let v = assigned.len() + 1;
        if v > g.n() {
            return true;
        }
        for c in 1..=colors as u32 {
            if g.neighbors(v).any(|u| u < v && assigned[u - 1] == c) {
                continue;
            }
            assigned.push(c);
            if extend(g, colors, assigned) {
                return true;
            }
            assigned.pop();
        }
        false
    }
    let mut assigned = Vec::new();
    if extend(g, colors, &mut assigned) {
        OracleResult::found(Score::Feasible, Certificate::Coloring(assigned))
    } else {
        OracleResult::infeasible()
    }
}

fn penalty_coloring(g: &Graph, colors: usize, mode: PenaltyMode) -> Result<OracleResult, OracleError> {
    let n = g.n();
    let palette = colors.min(n.max(1)) as u64;
    let total = palette.checked_pow(n as u32).filter(|&t| t <= MAX_COLORINGS).ok_or(
        OracleError::SizeLimitExceeded {
            size: n,
            limit: ORACLE_MAX_VERTICES,
        },
    )?;
    let mut best: Option<(i64, Vec<u32>)> = None;
    let mut assign = vec![1u32; n];
    for code in 0..total {
        let mut rest = code;
        for a in assign.iter_mut().rev() {
            *a = (rest % palette) as u32 + 1;
            rest /= palette;
        }
        let paid = g
            .edges()
            .iter()
            .filter(|&&(u, v)| assign[u - 1] == assign[v - 1])
            .map(|&(u, v)| g.edge_penalty(u, v));
        let cost = match mode {
            PenaltyMode::Sum => paid.sum(),
            PenaltyMode::Max => paid.fold(0, i64::max),
        };
        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, assign.clone()));
        }
    }
    let (cost, assign) = best.expect("at least one coloring");
    Ok(OracleResult::found(Score::Value(cost), Certificate::Coloring(assign)))
}

/// `reach[mask]` holds, per end vertex, the predecessor on some simple path
/// visiting exactly `mask` (`NONE` when no such path ends there). With
/// `anchored`, paths start at the lowest vertex of their mask.
fn simple_paths(adj: &[u32], anchored: bool) -> Vec<Vec<u8>> {
    const NONE: u8 = u8::MAX;
    const START: u8 = u8::MAX - 1;
    let n = adj.len();
    let mut reach = vec![vec![NONE; n]; 1 << n];
    for v in 0..n {
        reach[1 << v][v] = START;
    }
    for mask in 1usize..1 << n {
        for v in 0..n {
            if reach[mask][v] == NONE {
                continue;
            }
            let low = mask.trailing_zeros() as usize;
            for u in 0..n {
                if mask >> u & 1 == 1 || adj[v] >> u & 1 == 0 || (anchored && u < low) {
                    continue;
                }
                let next = mask | 1 << u;
                if reach[next][u] == NONE {
                    reach[next][u] = v as u8;
                }
            }
        }
    }
    reach
}

fn trace_path(reach: &[Vec<u8>], mut mask: usize, mut end: usize) -> Vec<usize> {
    let mut path = vec![end + 1];
    loop {
        let prev = reach[mask][end];
        if prev >= u8::MAX - 1 {
            break;
        }
        mask &= !(1 << end);
        end = prev as usize;
        path.push(end + 1);
    }
    path
}

/// Minimum number of parts in a partition of all vertices into sets
/// accepted by `part`; returns the parts.
fn min_partition(n: usize, part: &[bool]) -> Option<Vec<usize>> {
    let full = (1usize << n) - 1;
    let mut best = vec![u32::MAX; full + 1];
    let mut choice = vec![0usize; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut sub = rest;
        loop {
            let s = sub | low;
            if part[s] && best[mask & !s] != u32::MAX && best[mask & !s] + 1 < best[mask] {
                best[mask] = best[mask & !s] + 1;
                choice[mask] = s;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    if best[full] == u32::MAX {
        return None;
    }
    let mut parts = Vec::new();
    let mut mask = full;
    while mask != 0 {
        parts.push(choice[mask]);
        mask &= !choice[mask];
    }
    Some(parts)
}

fn path_cover(g: &Graph) -> OracleResult {
    let n = g.n();
    let reach = simple_paths(&masks(g), false);
    let ok: Vec<bool> = reach.iter().map(|ends| ends.iter().any(|&p| p != u8::MAX)).collect();
    let parts = min_partition(n, &ok).expect("singletons always work");
    let mut edges = Vec::new();
    for &s in &parts {
        let end = (0..n).find(|&v| reach[s][v] != u8::MAX).unwrap();
        let path = trace_path(&reach, s, end);
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
    }
    OracleResult::found(Score::Value(parts.len() as i64), Certificate::edges(edges))
}

fn cycle_cover(g: &Graph) -> OracleResult {
    let n = g.n();
    let adj = masks(g);
    let reach = simple_paths(&adj, true);
    let closing = |mask: usize| -> Option<usize> {
        if mask.count_ones() < 3 {
            return None;
        }
        let low = mask.trailing_zeros() as usize;
        (0..n).find(|&v| v != low && reach[mask][v] != u8::MAX && adj[v] >> low & 1 == 1)
    };
    let ok: Vec<bool> = (0..reach.len()).map(|m| closing(m).is_some()).collect();
    let Some(parts) = min_partition(n, &ok) else {
        return OracleResult::infeasible();
    };
    let mut edges = Vec::new();
    for &s in &parts {
        let end = closing(s).unwrap();
        let path = trace_path(&reach, s, end);
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        edges.push((path[0], path[path.len() - 1]));
    }
    OracleResult::found(Score::Value(parts.len() as i64), Certificate::edges(edges))
}

fn vertices_of(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|&v| mask >> v & 1 == 1).map(|v| v + 1).collect()
}

fn replica(g: &Graph, k: usize) -> OracleResult {
    let n = g.n();
    let mut best: Option<(i64, usize)> = None;
    for mask in 0usize..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let on = |v: usize| mask >> (v - 1) & 1 == 1;
        let cost: i64 = g.vertices().filter(|&v| on(v)).map(|v| g.selection_cost(v)).sum::<i64>()
            + g.edges()
                .iter()
                .filter(|&&(u, v)| on(u) && on(v))
                .map(|&(u, v)| g.edge_penalty(u, v))
                .sum::<i64>();
        if best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, mask));
        }
    }
    let (cost, mask) = best.expect("k <= n");
    OracleResult::found(Score::Value(cost), Certificate::vertices(vertices_of(mask)))
}

fn mwis(g: &Graph) -> OracleResult {
    let adj = masks(g);
    let mut best: Option<(i64, usize)> = None;
    for mask in 0usize..1 << g.n() {
        if (0..g.n()).any(|v| mask >> v & 1 == 1 && adj[v] as usize & mask != 0) {
            continue;
        }
        let w: i64 = vertices_of(mask).iter().map(|&v| g.vertex_weight(v)).sum();
        if best.is_none_or(|(b, _)| w > b) {
            best = Some((w, mask));
        }
    }
    let (w, mask) = best.expect("the empty set is independent");
    OracleResult::found(Score::Value(w), Certificate::vertices(vertices_of(mask)))
}

fn max_leaf_tree(g: &Graph) -> OracleResult {
    struct Search<'a> {
        g: &'a Graph,
        chosen: Vec<(usize, usize)>,
        best: Option<(i64, Vec<(usize, usize)>)>,
    }
    fn root(parent: &[usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    fn go(s: &mut Search<'_>, from: usize, parent: &mut Vec<usize>) {
        let n = s.g.n();
        if s.chosen.len() + 1 == n {
            let mut degree = vec![0usize; n + 1];
            for &(u, v) in &s.chosen {
                degree[u] += 1;
                degree[v] += 1;
            }
            let leaves: i64 = s.g.vertices().filter(|&v| degree[v] == 1).map(|v| s.g.vertex_weight(v)).sum();
            if s.best.as_ref().is_none_or(|(b, _)| leaves > *b) {
                s.best = Some((leaves, s.chosen.clone()));
            }
            return;
        }
        let edges = s.g.edges();
        if edges.len() - from < n - 1 - s.chosen.len() {
            return;
        }
        for i in from..edges.len() {
            let (u, v) = edges[i];
            let (a, b) = (root(parent, u), root(parent, v));
            if a == b {
                continue;
            }
            parent[a] = b;
            s.chosen.push((u, v));
            go(s, i + 1, parent);
            s.chosen.pop();
            parent[a] = a;
        }
    }
    let mut search = Search { g, chosen: Vec::new(), best: None };
    let mut parent: Vec<usize> = (0..=g.n()).collect();
    go(&mut search, 0, &mut parent);
    match search.best {
        Some((w, edges)) => OracleResult::found(Score::Value(w), Certificate::edges(edges)),
        None => OracleResult::infeasible(),
    }
}

fn maximal_matching(g: &Graph) -> OracleResult {
    fn go(g: &Graph, i: usize, used: u32, chosen: &mut Vec<usize>, best: &mut Option<(i64, Vec<usize>)>) {
        let edges = g.edges();
        if i == edges.len() {
            let free = |v: usize| used >> (v - 1) & 1 == 0;
            if edges.iter().any(|&(u, v)| free(u) && free(v)) {
                return;
            }
            let w: i64 = chosen.iter().map(|&e| g.edge_weight(edges[e].0, edges[e].1)).sum();
            if best.as_ref().is_none_or(|(b, _)| w < *b) {
                *best = Some((w, chosen.clone()));
            }
            return;
        }
        let (u, v) = edges[i];
        let bits = 1 << (u - 1) | 1 << (v - 1);
        if used & bits == 0 {
            chosen.push(i);
            go(g, i + 1, used | bits, chosen, best);
            chosen.pop();
        }
        go(g, i + 1, used, chosen, best);
    }
    let mut best = None;
    go(g, 0, 0, &mut Vec::new(), &mut best);
    let (w, chosen) = best.expect("a maximal matching always exists");
    let edges = chosen.iter().map(|&e| g.edges()[e]).collect();
    OracleResult::found(Score::Value(w), Certificate::edges(edges))
}

fn avg_path(g: &Graph, lower: usize, upper: usize) -> OracleResult {
    fn dfs(
        g: &Graph,
        path: &mut Vec<usize>,
        sum: i64,
        (lower, upper): (usize, usize),
        best: &mut Option<(Score, Vec<usize>)>,
    ) {
        if path.len() >= lower {
            let score = Score::Average { sum, count: path.len() as i64 };
            if best.as_ref().is_none_or(|(b, _)| score.better_than(b, Sense::Maximize)) {
                *best = Some((score, path.clone()));
            }
        }
        if path.len() == upper {
            return;
        }
        let last = *path.last().expect("nonempty path");
        let next: Vec<usize> = g.neighbors(last).filter(|u| !path.contains(u)).collect();
        for u in next {
            path.push(u);
            dfs(g, path, sum + g.vertex_weight(u), (lower, upper), best);
            path.pop();
        }
    }
    let mut best = None;
    for v in g.vertices() {
        dfs(g, &mut vec![v], g.vertex_weight(v), (lower, upper), &mut best);
    }
    match best {
        Some((score, path)) => OracleResult::found(score, Certificate::Path(path)),
        None => OracleResult::infeasible(),
    }
}

fn rect_cover(grid: &PartialGrid, pieces: &[(usize, usize)]) -> OracleResult {
    let (rows, cols) = (grid.rows(), grid.cols());
    let cells = rows * cols;
    // footprint of piece p with its top-left corner at cell i, if it fits
    let footprint = |i: usize, p: usize| -> Option<u64> {
        let (r, c) = (i / cols, i % cols);
        let (h, w) = pieces[p];
        if r + h > rows || c + w > cols {
            return None;
        }
        let mut mask = 0u64;
        for dr in 0..h {
            for dc in 0..w {
                if !grid.is_present((r + dr + 1, c + dc + 1)) {
                    return None;
                }
                mask |= 1 << ((r + dr) * cols + c + dc);
            }
        }
        Some(mask)
    };
    fn best(
        i: usize,
        covered: u64,
        cells: usize,
        pieces: usize,
        footprint: &dyn Fn(usize, usize) -> Option<u64>,
        memo: &mut HashMap<(usize, u64), i64>,
    ) -> i64 {
        if i == cells {
            return 0;
        }
        let covered = covered & !((1u64 << i) - 1);
        if let Some(&v) = memo.get(&(i, covered)) {
            return v;
        }
        let mut v = best(i + 1, covered, cells, pieces, footprint, memo);
        if covered >> i & 1 == 0 {
            for p in 0..pieces {
                if let Some(f) = footprint(i, p).filter(|f| f & covered == 0) {
                    v = v.max(1 + best(i + 1, covered | f, cells, pieces, footprint, memo));
                }
            }
        }
        memo.insert((i, covered), v);
        v
    }
    let mut memo = HashMap::new();
    let opt = best(0, 0, cells, pieces.len(), &footprint, &mut memo);

    let mut placements = Vec::new();
    let mut covered = 0u64;
    let mut remaining = opt;
    for i in 0..cells {
        if remaining == 0 {
            break;
        }
        if covered >> i & 1 == 1 {
            continue;
        }
        let skip = best(i + 1, covered, cells, pieces.len(), &footprint, &mut memo);
        if skip == remaining {
            continue;
        }
        for p in 0..pieces.len() {
            let Some(f) = footprint(i, p).filter(|f| f & covered == 0) else {
                continue;
            };
            if 1 + best(i + 1, covered | f, cells, pieces.len(), &footprint, &mut memo) == remaining {
                let (h, w) = pieces[p];
                placements.push(Placement {
                    piece: p,
                    row: i / cols + h,
                    col: i % cols + w,
                });
                covered |= f;
                remaining -= 1;
                break;
            }
        }
    }
    OracleResult::found(Score::Value(opt), Certificate::Placements(placements))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Instance {
        Instance::from_graph(Graph::from_edges(n, edges).unwrap())
    }

    fn value(spec: ProblemSpec, inst: &Instance) -> Option<Score> {
        oracle_solve(&spec, inst).unwrap().score
    }

    #[test]
    fn examples() {
        let star = graph(4, &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(value(ProblemSpec::PathCover, &star), Some(Score::Value(2)));
        let k3 = graph(3, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(value(ProblemSpec::Coloring { colors: 2 }, &k3), None);
        assert_eq!(value(ProblemSpec::Coloring { colors: 3 }, &k3), Some(Score::Feasible));
        assert_eq!(value(ProblemSpec::CycleCover, &k3), Some(Score::Value(1)));
        let grid = Instance::from_grid(PartialGrid::full(2, 3).unwrap());
        let rect = ProblemSpec::RectCover { pieces: vec![(2, 2)] };
        assert_eq!(value(rect, &grid), Some(Score::Value(1)));
    }

    #[test]
    fn edgeless_graphs() {
        let g = Instance::from_graph(Graph::new(5).unwrap());
        assert_eq!(value(ProblemSpec::PathCover, &g), Some(Score::Value(5)));
        assert_eq!(value(ProblemSpec::Mwis, &g), Some(Score::Value(5)));
        assert_eq!(value(ProblemSpec::MinMaximalMatching, &g), Some(Score::Value(0)));
        assert_eq!(value(ProblemSpec::CycleCover, &g), None);
    }

    #[test]
    fn size_limit() {
        let g = Instance::from_graph(Graph::new(13).unwrap());
        assert_eq!(
            oracle_solve(&ProblemSpec::Mwis, &g),
            Err(OracleError::SizeLimitExceeded { size: 13, limit: 12 })
        );
    }

    #[test]
    fn certificates() {
        let p4 = graph(4, &[(1, 2), (2, 3), (3, 4)]);
        let r = oracle_solve(&ProblemSpec::PathCover, &p4).unwrap();
        assert_eq!(r.certificate, Some(Certificate::Edges(vec![(1, 2), (2, 3), (3, 4)])));
        let c4 = graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let r = oracle_solve(&ProblemSpec::CycleCover, &c4).unwrap();
        assert_eq!(r.certificate, Some(Certificate::Edges(vec![(1, 2), (1, 4), (2, 3), (3, 4)])));
    }
}
