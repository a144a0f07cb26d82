//! Undirected graphs with integer vertex and edge attributes, partial grid
//! graphs, and the line-oriented instance formats for both.
//!
//! Vertices are numbered `1..=n`. Every attribute defaults to `1` when an
//! instance does not set it.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

/// Structural violations raised while building a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("attribute on missing edge {0}-{1}")]
    MissingEdge(usize, usize),
}

/// A [`GraphError`] or format error tied to a line of an instance file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        kind: ParseErrorKind::Malformed(msg.into()),
    }
}

fn graph_err(line: usize, err: GraphError) -> ParseError {
    ParseError {
        line,
        kind: ParseErrorKind::Graph(err),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `adj[v]` holds `(neighbor, edge id)` sorted by neighbor; index 0 unused.
    adj: Vec<Vec<(usize, usize)>>,
    vertex_weight: Vec<i64>,
    selection_cost: Vec<i64>,
    edge_weight: Vec<i64>,
    edge_penalty: Vec<i64>,
    coords: Option<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n + 1],
            vertex_weight: vec![1; n + 1],
            selection_cost: vec![1; n + 1],
            edge_weight: Vec::new(),
            edge_penalty: Vec::new(),
            coords: None,
        })
    }

    /// Builds a graph from an edge list, all attributes at their defaults.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds the edge `u-v` and returns its id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.edge_id(u, v).is_some() {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        let id = self.edges.len();
        self.edges.push((u.min(v), u.max(v)));
        self.edge_weight.push(1);
        self.edge_penalty.push(1);
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let at = list.partition_point(|&(w, _)| w < b);
            list.insert(at, (b, id));
        }
        Ok(id)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u == 0 || u > self.n {
            return None;
        }
        let list = &self.adj[u];
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertex_weight(&self, v: usize) -> i64 {
        self.vertex_weight[v]
    }

    pub fn selection_cost(&self, v: usize) -> i64 {
        self.selection_cost[v]
    }

    /// Weight of edge `u-v`. Panics if the edge does not exist.
    pub fn edge_weight(&self, u: usize, v: usize) -> i64 {
        self.edge_weight[self.edge_id(u, v).expect("edge exists")]
    }

    /// Penalty of edge `u-v`. Panics if the edge does not exist.
    pub fn edge_penalty(&self, u: usize, v: usize) -> i64 {
        self.edge_penalty[self.edge_id(u, v).expect("edge exists")]
    }

    pub fn set_vertex_weight(&mut self, v: usize, w: i64) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.vertex_weight[v] = w;
        Ok(())
    }

    pub fn set_selection_cost(&mut self, v: usize, c: i64) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        self.selection_cost[v] = c;
        Ok(())
    }

    fn existing_edge(&self, u: usize, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.edge_id(u, v)
            .ok_or(GraphError::MissingEdge(u.min(v), u.max(v)))
    }

    pub fn set_edge_weight(&mut self, u: usize, v: usize, w: i64) -> Result<(), GraphError> {
        let id = self.existing_edge(u, v)?;
        self.edge_weight[id] = w;
        Ok(())
    }

    pub fn set_edge_penalty(&mut self, u: usize, v: usize, p: i64) -> Result<(), GraphError> {
        let id = self.existing_edge(u, v)?;
        self.edge_penalty[id] = p;
        Ok(())
    }

    /// Grid coordinates `(row, col)` of vertex `v`, for graphs built from a grid.
    pub fn coords(&self, v: usize) -> Option<(usize, usize)> {
        self.coords.as_ref().map(|c| c[v])
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n + 1];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Parses the `graph <n> <m>` instance format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut graph: Option<Graph> = None;
        let mut declared_m = 0;
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            let key = tokens.next().unwrap_or_default();
            let nums: Vec<&str> = tokens.collect();
            let Some(g) = graph.as_mut() else {
                if key != "graph" {
                    return Err(malformed(line, "expected header `graph <n> <m>`"));
                }
                let [n, m] = parse_numbers::<usize, 2>(&nums, line)?;
                graph = Some(Graph::new(n).map_err(|e| graph_err(line, e))?);
                declared_m = m;
                continue;
            };
            match key {
                "e" => {
                    let [u, v] = parse_numbers::<usize, 2>(&nums, line)?;
                    g.add_edge(u, v).map_err(|e| graph_err(line, e))?;
                }
                "vw" => {
                    let [v, w] = parse_numbers::<i64, 2>(&nums, line)?;
                    g.set_vertex_weight(to_vertex(v, line)?, w)
                        .map_err(|e| graph_err(line, e))?;
                }
                "sc" => {
                    let [v, c] = parse_numbers::<i64, 2>(&nums, line)?;
                    g.set_selection_cost(to_vertex(v, line)?, c)
                        .map_err(|e| graph_err(line, e))?;
                }
                "ew" | "pen" => {
                    let [u, v, x] = parse_numbers::<i64, 3>(&nums, line)?;
                    let (u, v) = (to_vertex(u, line)?, to_vertex(v, line)?);
                    let res = if key == "ew" {
                        g.set_edge_weight(u, v, x)
                    } else {
                        g.set_edge_penalty(u, v, x)
                    };
                    res.map_err(|e| graph_err(line, e))?;
                }
                "graph" => return Err(malformed(line, "duplicate header")),
                other => return Err(malformed(line, format!("unknown record `{other}`"))),
            }
        }
        let g = graph.ok_or_else(|| malformed(last_line.max(1), "missing header"))?;
        if g.m() != declared_m {
            return Err(malformed(
                last_line.max(1),
                format!("header declares {declared_m} edges, found {}", g.m()),
            ));
        }
        Ok(g)
    }

    /// Renders the instance format; `parse(serialize(g)) == g`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {}", self.n, self.m()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "e {u} {v}").unwrap();
        }
        for v in self.vertices() {
            if self.vertex_weight[v] != 1 {
                writeln!(out, "vw {v} {}", self.vertex_weight[v]).unwrap();
            }
        }
        for v in self.vertices() {
            if self.selection_cost[v] != 1 {
                writeln!(out, "sc {v} {}", self.selection_cost[v]).unwrap();
            }
        }
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if self.edge_weight[id] != 1 {
                writeln!(out, "ew {u} {v} {}", self.edge_weight[id]).unwrap();
            }
        }
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if self.edge_penalty[id] != 1 {
                writeln!(out, "pen {u} {v} {}", self.edge_penalty[id]).unwrap();
            }
        }
        out
    }
}

fn to_vertex(v: i64, line: usize) -> Result<usize, ParseError> {
    usize::try_from(v).map_err(|_| malformed(line, format!("invalid vertex id {v}")))
}

fn parse_numbers<T: std::str::FromStr, const N: usize>(
    tokens: &[&str],
    line: usize,
) -> Result<[T; N], ParseError> {
    if tokens.len() != N {
        return Err(malformed(
            line,
            format!("expected {N} numbers, found {}", tokens.len()),
        ));
    }
    let mut out = Vec::with_capacity(N);
    for t in tokens {
        out.push(
            t.parse::<T>()
                .map_err(|_| malformed(line, format!("invalid number `{t}`")))?,
        );
    }
    Ok(out.try_into().ok().expect("length checked"))
}

/// A grid cell as `(row, col)`, both 1-based.
pub type Cell = (usize, usize);

/// An `rows × cols` grid with missing cells and removed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialGrid {
    rows: usize,
    cols: usize,
    present: Vec<bool>,
    removed: HashSet<(Cell, Cell)>,
}

fn edge_key(a: Cell, b: Cell) -> (Cell, Cell) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid has no present cell")]
    NoCells,
    #[error("grid dimensions must be positive")]
    EmptyDimensions,
    #[error("cell ({0}, {1}) outside the grid")]
    OutOfRange(usize, usize),
    #[error("cells ({0}, {1}) and ({2}, {3}) are not orthogonal neighbors")]
    NotAdjacent(usize, usize, usize, usize),
}

impl PartialGrid {
    /// Builds a grid from a presence mask in row-major order.
    pub fn new(rows: usize, cols: usize, present: Vec<bool>) -> Result<Self, GridError> {
        if rows == 0 || cols == 0 {
            return Err(GridError::EmptyDimensions);
        }
        assert_eq!(present.len(), rows * cols, "presence mask size");
        if !present.iter().any(|&p| p) {
            return Err(GridError::NoCells);
        }
        Ok(PartialGrid {
            rows,
            cols,
            present,
            removed: HashSet::new(),
        })
    }

    pub fn full(rows: usize, cols: usize) -> Result<Self, GridError> {
        PartialGrid::new(rows, cols, vec![true; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_present(&self, (r, c): Cell) -> bool {
        r >= 1 && c >= 1 && r <= self.rows && c <= self.cols && self.present[(r - 1) * self.cols + c - 1]
    }

    pub fn set_present(&mut self, (r, c): Cell, present: bool) -> Result<(), GridError> {
        if r == 0 || c == 0 || r > self.rows || c > self.cols {
            return Err(GridError::OutOfRange(r, c));
        }
        self.present[(r - 1) * self.cols + c - 1] = present;
        Ok(())
    }

    pub fn remove_edge(&mut self, a: Cell, b: Cell) -> Result<(), GridError> {
        for (r, c) in [a, b] {
            if r == 0 || c == 0 || r > self.rows || c > self.cols {
                return Err(GridError::OutOfRange(r, c));
            }
        }
        if a.0.abs_diff(b.0) + a.1.abs_diff(b.1) != 1 {
            return Err(GridError::NotAdjacent(a.0, a.1, b.0, b.1));
        }
        self.removed.insert(edge_key(a, b));
        Ok(())
    }

    /// Whether the induced graph has an edge between orthogonal neighbors `a` and `b`.
    pub fn has_edge(&self, a: Cell, b: Cell) -> bool {
        self.is_present(a) && self.is_present(b) && !self.removed.contains(&edge_key(a, b))
    }

    /// Present cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (1..=self.rows)
            .flat_map(move |r| (1..=self.cols).map(move |c| (r, c)))
            .filter(|&cell| self.is_present(cell))
    }

    /// Row-major vertex id of every present cell (`None` for missing cells).
    pub fn vertex_ids(&self) -> Vec<Option<usize>> {
        let mut ids = vec![None; self.rows * self.cols];
        for (id, (r, c)) in self.cells().enumerate() {
            ids[(r - 1) * self.cols + c - 1] = Some(id + 1);
        }
        ids
    }

    /// Vertex id of a present cell.
    pub fn vertex_of(&self, (r, c): Cell) -> Option<usize> {
        if !self.is_present((r, c)) {
            return None;
        }
        let before = self.present[..(r - 1) * self.cols + c - 1]
            .iter()
            .filter(|&&p| p)
            .count();
        Some(before + 1)
    }

    /// Swaps rows and columns.
    pub fn transposed(&self) -> PartialGrid {
        let mut present = vec![false; self.rows * self.cols];
        for r in 1..=self.rows {
            for c in 1..=self.cols {
                present[(c - 1) * self.rows + r - 1] = self.is_present((r, c));
            }
        }
        PartialGrid {
            rows: self.cols,
            cols: self.rows,
            present,
            removed: self
                .removed
                .iter()
                .map(|&((r1, c1), (r2, c2))| edge_key((c1, r1), (c2, r2)))
                .collect(),
        }
    }

    /// Induced graph over present cells, numbered row-major.
    pub fn to_graph(&self) -> Graph {
        let ids = self.vertex_ids();
        let cells: Vec<Cell> = self.cells().collect();
        let mut g = Graph::new(cells.len()).expect("at least one cell");
        for &(r, c) in &cells {
            let u = ids[(r - 1) * self.cols + c - 1].unwrap();
            for next in [(r, c + 1), (r + 1, c)] {
                if self.has_edge((r, c), next) {
                    let v = ids[(next.0 - 1) * self.cols + next.1 - 1].unwrap();
                    g.add_edge(u, v).expect("grid edges are simple");
                }
            }
        }
        let mut coords = vec![(0, 0)];
        coords.extend(cells);
        g.coords = Some(coords);
        g
    }

    /// Parses the `grid <rows> <cols>` format.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("grid") {
            return Err(malformed(hl, "expected header `grid <m> <n>`"));
        }
        let nums: Vec<&str> = tokens.collect();
        let [rows, cols] = parse_numbers::<usize, 2>(&nums, hl)?;
        if rows == 0 || cols == 0 {
            return Err(malformed(hl, GridError::EmptyDimensions.to_string()));
        }
        let mut present = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (line, row) = lines
                .next()
                .ok_or_else(|| malformed(hl, format!("expected {rows} grid rows")))?;
            if row.chars().count() != cols {
                return Err(malformed(line, format!("expected {cols} cells")));
            }
            for ch in row.chars() {
                match ch {
                    '.' => present.push(true),
                    'X' => present.push(false),
                    other => return Err(malformed(line, format!("invalid cell `{other}`"))),
                }
            }
        }
        let mut grid = PartialGrid::new(rows, cols, present)
            .map_err(|e| malformed(hl, e.to_string()))?;
        for (line, rest) in lines {
            let mut tokens = rest.split_whitespace();
            if tokens.next() != Some("removeedge") {
                return Err(malformed(line, "expected `removeedge r1 c1 r2 c2`"));
            }
            let nums: Vec<&str> = tokens.collect();
            let [r1, c1, r2, c2] = parse_numbers::<usize, 4>(&nums, line)?;
            grid.remove_edge((r1, c1), (r2, c2))
                .map_err(|e| malformed(line, e.to_string()))?;
        }
        Ok(grid)
    }
}

impl fmt::Display for PartialGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grid {} {}", self.rows, self.cols)?;
        for r in 1..=self.rows {
            for c in 1..=self.cols {
                f.write_str(if self.is_present((r, c)) { "." } else { "X" })?;
            }
            writeln!(f)?;
        }
        let mut removed: Vec<_> = self.removed.iter().collect();
        removed.sort();
        for ((r1, c1), (r2, c2)) in removed {
            writeln!(f, "removeedge {r1} {c1} {r2} {c2}")?;
        }
        Ok(())
    }
}
