use std::collections::HashSet;

use crate::graph::{Cell, PartialGrid};

use super::{Event, NicePathDecomposition};

/// How a grid sweep decomposition was laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepInfo {
    /// The sweep runs over the transposed grid, so its rows are original columns.
    pub transposed: bool,
    /// The cell above an introduced cell stays one step longer.
    pub widened: bool,
    /// Dimensions of the swept (possibly transposed) grid.
    pub rows: usize,
    pub cols: usize,
}

impl SweepInfo {
    /// Maps a swept-grid cell back to the original grid.
    pub fn to_original(&self, (r, c): Cell) -> Cell {
        if self.transposed {
            (c, r)
        } else {
            (r, c)
        }
    }

    /// Maps an original cell into the swept grid.
    pub fn to_swept(&self, cell: Cell) -> Cell {
        self.to_original(cell)
    }
}

/// Row-major sliding-window decomposition of a partial grid.
///
/// The narrower dimension becomes the sweep width (the grid is transposed
/// when it has fewer rows than columns). Each cell is forgotten right after
/// the position of the cell below it has been processed, which bounds the bag
/// at `width + 1`. With `widen`, that forget is delayed by one more position,
/// bounding the bag at `width + 2`.
pub fn grid_sweep_decomposition(grid: &PartialGrid, widen: bool) -> NicePathDecomposition {
    let transposed = grid.rows() < grid.cols();
    let swept = if transposed { grid.transposed() } else { grid.clone() };
    let info = SweepInfo {
        transposed,
        widened: widen,
        rows: swept.rows(),
        cols: swept.cols(),
    };
    let ids = grid.vertex_ids();
    let vertex = |cell: Cell| -> Option<usize> {
        if !swept.is_present(cell) {
            return None;
        }
        let (r, c) = info.to_original(cell);
        ids[(r - 1) * grid.cols() + c - 1]
    };

    let mut events = Vec::new();
    let mut live: HashSet<usize> = HashSet::new();
    let forget = |cell: Cell, events: &mut Vec<Event>, live: &mut HashSet<usize>| {
        if cell.0 == 0 || cell.1 == 0 {
            return;
        }
        if let Some(v) = vertex(cell) {
            if live.remove(&v) {
                events.push(Event::Forget(v));
            }
        }
    };
    for r in 1..=info.rows {
        for c in 1..=info.cols {
            if let Some(v) = vertex((r, c)) {
                events.push(Event::Introduce(v));
                live.insert(v);
            }
            if widen {
                forget((r - 1, c - 1), &mut events, &mut live);
                if c == info.cols {
                    forget((r - 1, c), &mut events, &mut live);
                }
            } else {
                forget((r - 1, c), &mut events, &mut live);
            }
        }
    }
    for r in 1..=info.rows {
        for c in 1..=info.cols {
            forget((r, c), &mut events, &mut live);
        }
    }
    NicePathDecomposition::from_events(events, grid.cells().count())
        .expect("grid sweep yields a nice decomposition")
        .with_sweep(info)
}
