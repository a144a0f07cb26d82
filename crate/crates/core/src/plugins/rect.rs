//! Packing rectangular pieces onto a partial grid.
//!
//! Runs on the widened grid sweep. The component `h_j` of a bag cell is the
//! number of consecutive present, uncovered cells ending at it from above
//! (itself included), capped at the tallest piece. A piece is placed with its
//! lower-right corner on the introduced cell.

use std::collections::HashMap;

use thiserror::Error;

use crate::certificate::{Certificate, Placement, Score, Sense};
use crate::decomposition::SweepInfo;
use crate::engine::{NodeView, Problem, State, Trace};
use crate::graph::{Cell, Graph, PartialGrid};

use super::{for_each_tuple, remove_slot};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PieceError {
    #[error("no piece types given")]
    Empty,
    #[error("piece {0}x{1} has a zero dimension")]
    ZeroSize(usize, usize),
    #[error("piece {rows}x{cols} is wider than the grid ({width} columns)")]
    TooWide { rows: usize, cols: usize, width: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RectAction {
    Keep,
    /// Piece index and the previous-bag positions of the other covered
    /// cells in the introduced cell's row.
    Place { piece: usize, row: u64 },
    Forget,
}

#[derive(Debug, Clone)]
pub struct RectCover {
    /// Piece sizes `(rows, cols)` in the swept orientation.
    pieces: Vec<(usize, usize)>,
    tallest: i8,
    /// Swept cell of every vertex (index 0 unused).
    cells: Vec<Cell>,
    by_cell: HashMap<Cell, usize>,
}

impl RectCover {
    /// `pieces` are `(rows, cols)` in the grid's own orientation.
    pub fn new(grid: &PartialGrid, pieces: &[(usize, usize)], info: &SweepInfo) -> Result<Self, PieceError> {
        if pieces.is_empty() {
            return Err(PieceError::Empty);
        }
        for &(rows, cols) in pieces {
            if rows == 0 || cols == 0 {
                return Err(PieceError::ZeroSize(rows, cols));
            }
            if cols > grid.cols() {
                return Err(PieceError::TooWide { rows, cols, width: grid.cols() });
            }
        }
        let swept: Vec<(usize, usize)> = pieces
            .iter()
            .map(|&(r, c)| if info.transposed { (c, r) } else { (r, c) })
            .collect();
        let tallest = swept.iter().map(|p| p.0).max().unwrap_or(1).min(i8::MAX as usize) as i8;
        let mut cells = vec![(0, 0)];
        cells.extend(grid.cells().map(|c| info.to_swept(c)));
        let by_cell = cells.iter().enumerate().skip(1).map(|(v, &c)| (c, v)).collect();
        Ok(RectCover {
            pieces: swept,
            tallest,
            cells,
            by_cell,
        })
    }

    fn position(&self, bag: &[usize], cell: Cell) -> Option<usize> {
        let v = *self.by_cell.get(&cell)?;
        bag.iter().position(|&u| u == v)
    }

    fn new_height(&self, state: &State, node: &NodeView<'_>) -> i8 {
        let (r, c) = self.cells[node.vertex()];
        match self.position(node.prev_bag, (r.wrapping_sub(1), c)) {
            Some(j) => (state.comps[j] + 1).min(self.tallest),
            None => 1,
        }
    }
}

impl Problem for RectCover {
    type Action = RectAction;

    fn name(&self) -> &'static str {
        "rect-cover"
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn domain(&self, _nv: usize) -> (i8, i8) {
        (0, self.tallest)
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        for_each_tuple(nv, 0, self.tallest, &mut |s| emit(&State::new(s.to_vec(), 0)));
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<RectAction> {
        if !node.is_introduce() {
            return vec![RectAction::Forget];
        }
        let (r, c) = self.cells[node.vertex()];
        let mut actions = vec![RectAction::Keep];
        'pieces: for (piece, &(_, width)) in self.pieces.iter().enumerate() {
            if width > c {
                continue;
            }
            let mut row = 0u64;
            for col in c + 1 - width..c {
                match self.position(node.prev_bag, (r, col)) {
                    Some(j) => row |= 1 << j,
                    None => continue 'pieces,
                }
            }
            actions.push(RectAction::Place { piece, row });
        }
        actions
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &RectAction,
        value: i64,
    ) -> Option<(State, i64)> {
        let mut s = state.comps.clone();
        match *action {
            RectAction::Forget => Some((remove_slot(state, node.slot, 1), value)),
            RectAction::Keep => {
                s.push(self.new_height(state, node));
                Some((State::new(s, 0), value))
            }
            RectAction::Place { piece, row } => {
                let need = self.pieces[piece].0 as i8;
                if need > self.tallest || self.new_height(state, node) < need {
                    return None;
                }
                for j in (0..node.prev_bag.len()).filter(|j| row >> j & 1 == 1) {
                    if s[j] < need {
                        return None;
                    }
                    s[j] = 0;
                }
                s.push(0);
                Some((State::new(s, 0), value + 1))
            }
        }
    }

    fn final_score(&self, _state: &State, value: i64) -> Option<Score> {
        Some(Score::Value(value))
    }

    fn certificate(&self, trace: &Trace<'_, RectAction>) -> Certificate {
        let placements = trace
            .steps
            .iter()
            .filter_map(|step| match *step.action {
                RectAction::Place { piece, .. } => {
                    let (row, col) = original_cell(trace.graph, trace.view(step).vertex());
                    Some(Placement { piece, row, col })
                }
                _ => None,
            })
            .collect();
        Certificate::Placements(placements)
    }
}

fn original_cell(g: &Graph, v: usize) -> Cell {
    g.coords(v).expect("grid graph has coordinates")
}
