//! Path decompositions: validation, the `pd` file format, conversion into
//! nice (introduce/forget) form, and builders.

mod exact;
mod grid;
mod layout;

pub use exact::{exact_pathwidth_decomposition, EXACT_MAX_VERTICES};
pub use grid::{grid_sweep_decomposition, SweepInfo};
pub use layout::{layout_decomposition, natural_decomposition};

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{Graph, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("edge {0}-{1} is not contained in any bag")]
    UncoveredEdge(usize, usize),
    #[error("bags containing vertex {0} are not contiguous")]
    NonContiguousVertex(usize),
    #[error("vertex {0} appears in no bag")]
    MissingVertex(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} listed twice in one bag")]
    DuplicateInBag(usize),
    #[error("graph has {n} vertices; exact search is limited to {limit}")]
    SizeLimitExceeded { n: usize, limit: usize },
    #[error("invalid nice decomposition: {0}")]
    InvalidNice(String),
}

/// A sequence of bags `D_1..D_p`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        PathDecomposition { bags }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks the three decomposition properties against `g` and returns the width.
    pub fn validate(&self, g: &Graph) -> Result<usize, DecompositionError> {
        let n = g.n();
        let mut first = vec![usize::MAX; n + 1];
        let mut last = vec![0usize; n + 1];
        let mut count = vec![0usize; n + 1];
        for (i, bag) in self.bags.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in bag {
                if v == 0 || v > n {
                    return Err(DecompositionError::VertexOutOfRange { vertex: v, n });
                }
                if !seen.insert(v) {
                    return Err(DecompositionError::DuplicateInBag(v));
                }
                first[v] = first[v].min(i);
                last[v] = i;
                count[v] += 1;
            }
        }
        for v in g.vertices() {
            if count[v] == 0 {
                return Err(DecompositionError::MissingVertex(v));
            }
        }
        for v in g.vertices() {
            if last[v] - first[v] + 1 != count[v] {
                return Err(DecompositionError::NonContiguousVertex(v));
            }
        }
        for &(u, v) in g.edges() {
            // intervals overlap iff some bag holds both
            if first[u].max(first[v]) > last[u].min(last[v]) {
                return Err(DecompositionError::UncoveredEdge(u, v));
            }
        }
        Ok(self.max_bag_size() - 1)
    }

    /// Refines a valid decomposition into introduce/forget form: between
    /// consecutive bags the departing vertices are forgotten before the
    /// arriving ones are introduced, so no intermediate bag outgrows the input.
    pub fn nicify(&self, g: &Graph) -> Result<NicePathDecomposition, DecompositionError> {
        self.validate(g)?;
        let mut events = Vec::with_capacity(2 * g.n());
        let mut current: BTreeSet<usize> = BTreeSet::new();
        for bag in &self.bags {
            let next: BTreeSet<usize> = bag.iter().copied().collect();
            events.extend(current.difference(&next).map(|&v| Event::Forget(v)));
            events.extend(next.difference(&current).map(|&v| Event::Introduce(v)));
            current = next;
        }
        events.extend(current.iter().map(|&v| Event::Forget(v)));
        NicePathDecomposition::from_events(events, g.n())
    }

    /// Parses the `pd <p>` / `bag ...` format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let malformed = |line: usize, msg: String| ParseError {
            line,
            kind: ParseErrorKind::Malformed(msg),
        };
        let mut declared: Option<usize> = None;
        let mut bags = Vec::new();
        let mut last_line = 1;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let key = tokens.next().unwrap_or_default();
            match (key, declared) {
                ("pd", None) => {
                    let p: Vec<&str> = tokens.collect();
                    if p.len() != 1 {
                        return Err(malformed(line, "expected `pd <p>`".into()));
                    }
                    declared = Some(
                        p[0].parse()
                            .map_err(|_| malformed(line, format!("invalid count `{}`", p[0])))?,
                    );
                }
                (_, None) => return Err(malformed(line, "expected header `pd <p>`".into())),
                ("bag", Some(_)) => {
                    let bag = tokens
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|_| malformed(line, format!("invalid vertex `{t}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    bags.push(bag);
                }
                (other, Some(_)) => {
                    return Err(malformed(line, format!("unknown record `{other}`")))
                }
            }
        }
        let p = declared.ok_or_else(|| malformed(last_line, "missing header".into()))?;
        if p != bags.len() {
            return Err(malformed(
                last_line,
                format!("header declares {p} bags, found {}", bags.len()),
            ));
        }
        Ok(PathDecomposition { bags })
    }
}

impl fmt::Display for PathDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pd {}", self.bags.len())?;
        for bag in &self.bags {
            let mut line = String::from("bag");
            for v in bag {
                write!(line, " {v}").unwrap();
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Introduce(usize),
    Forget(usize),
}

impl Event {
    pub fn vertex(self) -> usize {
        match self {
            Event::Introduce(v) | Event::Forget(v) => v,
        }
    }

    pub fn is_introduce(self) -> bool {
        matches!(self, Event::Introduce(_))
    }
}

/// A nice path decomposition with its bag vertex order materialized.
///
/// Bags are ordered by introduction time: an introduced vertex is appended
/// at the end, a forgotten vertex is removed and the rest keep their order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicePathDecomposition {
    events: Vec<Event>,
    bags: Vec<Vec<usize>>,
    slots: Vec<usize>,
    sweep: Option<SweepInfo>,
}

impl NicePathDecomposition {
    /// Builds and checks a nice decomposition of a graph on `n` vertices.
    pub fn from_events(events: Vec<Event>, n: usize) -> Result<Self, DecompositionError> {
        let invalid = |msg: String| Err(DecompositionError::InvalidNice(msg));
        if events.len() != 2 * n {
            return invalid(format!("expected {} events, found {}", 2 * n, events.len()));
        }
        if !matches!(events.first(), Some(Event::Introduce(_))) {
            return invalid("first event must introduce a vertex".into());
        }
        let mut state = vec![0u8; n + 1];
        let mut bag: Vec<usize> = Vec::new();
        let mut bags = Vec::with_capacity(events.len());
        let mut slots = Vec::with_capacity(events.len());
        for &ev in &events {
            let v = ev.vertex();
            if v == 0 || v > n {
                return Err(DecompositionError::VertexOutOfRange { vertex: v, n });
            }
            match ev {
                Event::Introduce(_) => {
                    if state[v] != 0 {
                        return invalid(format!("vertex {v} introduced twice"));
                    }
                    state[v] = 1;
                    bag.push(v);
                    slots.push(bag.len() - 1);
                }
                Event::Forget(_) => {
                    if state[v] != 1 {
                        return invalid(format!("vertex {v} forgotten while not in the bag"));
                    }
                    state[v] = 2;
                    let at = bag.iter().position(|&u| u == v).expect("vertex in bag");
                    bag.remove(at);
                    slots.push(at);
                }
            }
            bags.push(bag.clone());
        }
        if !bag.is_empty() {
            return invalid("final bag must be empty".into());
        }
        Ok(NicePathDecomposition {
            events,
            bags,
            slots,
            sweep: None,
        })
    }

    pub(crate) fn with_sweep(mut self, sweep: SweepInfo) -> Self {
        self.sweep = Some(sweep);
        self
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Ordered bag after event `i` (0-based).
    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    /// Ordered bag before event `i`; empty for the first event.
    pub fn prev_bag(&self, i: usize) -> &[usize] {
        if i == 0 {
            &[]
        } else {
            &self.bags[i - 1]
        }
    }

    /// Position of event `i`'s vertex: in the new bag for an introduce,
    /// in the previous bag for a forget.
    pub fn slot(&self, i: usize) -> usize {
        self.slots[i]
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Grid sweep provenance, when built by [`grid_sweep_decomposition`].
    pub fn sweep(&self) -> Option<&SweepInfo> {
        self.sweep.as_ref()
    }

    /// The bag sequence as a plain decomposition.
    pub fn to_path_decomposition(&self) -> PathDecomposition {
        PathDecomposition::new(self.bags.clone())
    }

    /// Checks that the bags cover every edge of `g`.
    pub fn validate(&self, g: &Graph) -> Result<usize, DecompositionError> {
        self.to_path_decomposition().validate(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let g = p3();
        assert_eq!(PathDecomposition::new(vec![vec![1, 2], vec![2, 3]]).validate(&g), Ok(1));
        assert_eq!(
            PathDecomposition::new(vec![vec![1, 2], vec![3]]).validate(&g),
            Err(DecompositionError::UncoveredEdge(2, 3))
        );
        assert_eq!(
            PathDecomposition::new(vec![vec![1], vec![2], vec![1, 3]]).validate(&g),
            Err(DecompositionError::NonContiguousVertex(1))
        );
        assert_eq!(
            PathDecomposition::new(vec![vec![1, 2]]).validate(&g),
            Err(DecompositionError::MissingVertex(3))
        );
        assert_eq!(
            PathDecomposition::new(vec![vec![1, 2, 2], vec![2, 3]]).validate(&g),
            Err(DecompositionError::DuplicateInBag(2))
        );
        assert_eq!(
            PathDecomposition::new(vec![vec![1, 2, 4], vec![2, 3]]).validate(&g),
            Err(DecompositionError::VertexOutOfRange { vertex: 4, n: 3 })
        );
    }

    #[test]
    fn nicify_single_vertex() {
        let g = Graph::new(1).unwrap();
        let nice = PathDecomposition::new(vec![vec![1]]).nicify(&g).unwrap();
        assert_eq!(nice.events(), &[Event::Introduce(1), Event::Forget(1)]);
    }

    #[test]
    fn nicify_p3() {
        let nice = PathDecomposition::new(vec![vec![1, 2], vec![2, 3]])
            .nicify(&p3())
            .unwrap();
        use Event::*;
        assert_eq!(
            nice.events(),
            &[Introduce(1), Introduce(2), Forget(1), Introduce(3), Forget(2), Forget(3)]
        );
        assert_eq!(nice.bag(3), &[2, 3]);
        assert_eq!(nice.slot(2), 0);
        assert_eq!(nice.max_bag_size(), 2);
        assert_eq!(nice.validate(&p3()), Ok(1));
    }

    #[test]
    fn nicify_keeps_empty_intermediate_bags() {
        let g = Graph::from_edges(2, &[]).unwrap();
        let nice = PathDecomposition::new(vec![vec![1], vec![], vec![2]])
            .nicify(&g)
            .unwrap();
        assert_eq!(nice.len(), 4);
        assert!(nice.bag(1).is_empty());
    }

    #[test]
    fn nicify_propagates_validation() {
        let err = PathDecomposition::new(vec![vec![1, 2], vec![3]]).nicify(&p3());
        assert_eq!(err, Err(DecompositionError::UncoveredEdge(2, 3)));
    }

    #[test]
    fn from_events_rejects_bad_sequences() {
        use Event::*;
        assert!(NicePathDecomposition::from_events(vec![Forget(1), Introduce(1)], 1).is_err());
        assert!(NicePathDecomposition::from_events(vec![Introduce(1), Introduce(1)], 1).is_err());
        assert!(NicePathDecomposition::from_events(
            vec![Introduce(1), Introduce(2), Forget(1), Introduce(1)],
            2
        )
        .is_err());
        assert!(NicePathDecomposition::from_events(vec![Introduce(1)], 1).is_err());
    }

    #[test]
    fn pd_format_round_trip() {
        let pd = PathDecomposition::new(vec![vec![1, 2], vec![], vec![2, 3]]);
        let text = pd.to_string();
        assert_eq!(text, "pd 3\nbag 1 2\nbag\nbag 2 3\n");
        assert_eq!(PathDecomposition::parse(&text).unwrap(), pd);
        assert!(PathDecomposition::parse("pd 2\nbag 1\n").is_err());
        assert!(PathDecomposition::parse("bag 1\n").is_err());
        assert!(PathDecomposition::parse("pd 1\nbag x\n").is_err());
    }
}
