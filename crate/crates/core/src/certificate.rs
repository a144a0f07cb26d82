//! Explicit solutions and their objective values.

use std::cmp::Ordering;
use std::fmt;

/// One rectangular piece placed on a grid. `row`/`col` name the piece's
/// lower-right cell in original grid coordinates; `piece` indexes the piece list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub piece: usize,
    pub row: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `colors[v - 1]` is the color of vertex `v`, in `1..=C`.
    Coloring(Vec<u32>),
    /// Edge set as `(min, max)` pairs, sorted.
    Edges(Vec<(usize, usize)>),
    /// Selected vertices, sorted.
    Vertices(Vec<usize>),
    /// A simple path in traversal order.
    Path(Vec<usize>),
    Placements(Vec<Placement>),
}

impl Certificate {
    /// Edge set with each pair ordered and the list sorted.
    pub fn edges(mut edges: Vec<(usize, usize)>) -> Self {
        for e in &mut edges {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        Certificate::Edges(edges)
    }

    pub fn vertices(mut vs: Vec<usize>) -> Self {
        vs.sort_unstable();
        Certificate::Vertices(vs)
    }

    /// Stable line format: `color <v> <c>`, `edge <u> <v>`, `select <v>`,
    /// `place <piece> <row> <col>`. Paths print as `select` lines in
    /// traversal order followed by their `edge` lines.
    pub fn lines(&self) -> Vec<String> {
        match self {
            Certificate::Coloring(colors) => colors
                .iter()
                .enumerate()
                .map(|(i, c)| format!("color {} {c}", i + 1))
                .collect(),
            Certificate::Edges(edges) => edges.iter().map(|(u, v)| format!("edge {u} {v}")).collect(),
            Certificate::Vertices(vs) => vs.iter().map(|v| format!("select {v}")).collect(),
            Certificate::Path(path) => path
                .iter()
                .map(|v| format!("select {v}"))
                .chain(path.windows(2).map(|w| format!("edge {} {}", w[0], w[1])))
                .collect(),
            Certificate::Placements(ps) => ps
                .iter()
                .map(|p| format!("place {} {} {}", p.piece + 1, p.row, p.col))
                .collect(),
        }
    }
}

/// Whether a problem decides feasibility, minimizes, or maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Feasibility,
    Minimize,
    Maximize,
}

/// Final objective of a solved instance.
#[derive(Debug, Clone, Copy)]
pub enum Score {
    Feasible,
    Value(i64),
    /// Average of `sum` over `count` items, kept exact.
    Average { sum: i64, count: i64 },
}

impl Score {
    fn cmp_same_kind(&self, other: &Score) -> Option<Ordering> {
        match (*self, *other) {
            (Score::Feasible, Score::Feasible) => Some(Ordering::Equal),
            (Score::Value(a), Score::Value(b)) => Some(a.cmp(&b)),
            (Score::Average { sum: s1, count: c1 }, Score::Average { sum: s2, count: c2 }) => {
                Some((s1 as i128 * c2 as i128).cmp(&(s2 as i128 * c1 as i128)))
            }
            _ => None,
        }
    }

    /// Strict improvement under `sense`.
    pub fn better_than(&self, other: &Score, sense: Sense) -> bool {
        matches!(
            (sense, self.cmp_same_kind(other)),
            (Sense::Minimize, Some(Ordering::Less)) | (Sense::Maximize, Some(Ordering::Greater))
        )
    }
}

impl PartialEq for Score {
    fn eq(&self, other: &Score) -> bool {
        self.cmp_same_kind(other) == Some(Ordering::Equal)
    }
}

impl Eq for Score {}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Score::Feasible => f.write_str("feasible"),
            Score::Value(v) => write!(f, "{v}"),
            Score::Average { sum, count } => {
                write!(f, "{sum}/{count} ({:.6})", sum as f64 / count as f64)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn averages_compare_exactly() {
        let a = Score::Average { sum: 11, count: 2 };
        let b = Score::Average { sum: 22, count: 4 };
        let c = Score::Average { sum: 10, count: 1 };
        assert_eq!(a, b);
        assert!(c.better_than(&a, Sense::Maximize));
        assert!(!a.better_than(&b, Sense::Maximize));
        assert_eq!(a.to_string(), "11/2 (5.500000)");
    }

    #[test]
    fn feasibility_never_improves() {
        assert!(!Score::Feasible.better_than(&Score::Feasible, Sense::Feasibility));
        assert!(Score::Value(1).better_than(&Score::Value(2), Sense::Minimize));
        assert!(!Score::Value(2).better_than(&Score::Value(2), Sense::Minimize));
    }

    #[test]
    fn line_format() {
        let cert = Certificate::Path(vec![3, 1, 2]);
        assert_eq!(cert.lines(), ["select 3", "select 1", "select 2", "edge 3 1", "edge 1 2"]);
        let cert = Certificate::Placements(vec![Placement { piece: 0, row: 2, col: 3 }]);
        assert_eq!(cert.lines(), ["place 1 2 3"]);
    }
}
