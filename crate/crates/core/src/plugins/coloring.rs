//! Fixed-palette coloring: proper C-coloring (plain or partition-canonical
//! states) and penalty-minimizing coloring.

use crate::certificate::{Certificate, Score, Sense};
use crate::engine::{NodeView, Problem, State, Trace};

use super::partition::{for_each_rgs, normalize_partition};
use super::remove_slot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyMode {
    Sum,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Objective {
    Proper,
    Penalty(PenaltyMode),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorAction {
    Color(i8),
    Forget,
}

/// State component `c_j` is the color (or, canonically, the block label)
/// of the `j`-th bag vertex.
#[derive(Debug, Clone)]
pub struct Coloring {
    colors: i8,
    canonical: bool,
    objective: Objective,
}

impl Coloring {
    /// Proper coloring with states over all `C^nv` color tuples.
    pub fn naive(colors: usize) -> Self {
        Coloring {
            colors: colors.min(i8::MAX as usize) as i8,
            canonical: false,
            objective: Objective::Proper,
        }
    }

    /// Proper coloring with states restricted to set partitions.
    pub fn canonical(colors: usize) -> Self {
        Coloring {
            canonical: true,
            ..Coloring::naive(colors)
        }
    }

    /// Colorings paying `pen(u, v)` for each monochromatic edge.
    pub fn penalty(colors: usize, mode: PenaltyMode) -> Self {
        Coloring {
            objective: Objective::Penalty(mode),
            ..Coloring::canonical(colors)
        }
    }
}

impl Problem for Coloring {
    type Action = ColorAction;

    fn name(&self) -> &'static str {
        match (self.objective, self.canonical) {
            (Objective::Penalty(_), _) => "penalty-coloring",
            (Objective::Proper, true) => "coloring-canonical",
            (Objective::Proper, false) => "coloring",
        }
    }

    fn sense(&self) -> Sense {
        match self.objective {
            Objective::Proper => Sense::Feasibility,
            Objective::Penalty(_) => Sense::Minimize,
        }
    }

    fn domain(&self, _nv: usize) -> (i8, i8) {
        (1, self.colors.max(1))
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        if self.canonical {
            for_each_rgs(nv, self.colors as usize, &mut |s| emit(&State::new(s.to_vec(), 0)));
            return;
        }
        if self.colors < 1 && nv > 0 {
            return;
        }
        let mut comps = vec![1i8; nv];
        loop {
            if !emit(&State::new(comps.clone(), 0)) {
                return;
            }
            // odometer, last position fastest
            let mut i = nv;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if comps[i] < self.colors {
                    comps[i] += 1;
                    break;
                }
                comps[i] = 1;
            }
        }
    }

    fn base_value(&self) -> i64 {
        match self.objective {
            Objective::Proper => 1,
            Objective::Penalty(_) => 0,
        }
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<ColorAction> {
        if node.is_introduce() {
            (1..=self.colors).map(ColorAction::Color).collect()
        } else {
            vec![ColorAction::Forget]
        }
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &ColorAction,
        value: i64,
    ) -> Option<(State, i64)> {
        match *action {
            ColorAction::Forget => Some((remove_slot(state, node.slot, 1), value)),
            ColorAction::Color(cx) => {
                let mut cost = value;
                for j in node.adjacent_positions() {
                    if state.comps[j] != cx {
                        continue;
                    }
                    match self.objective {
                        Objective::Proper => return None,
                        Objective::Penalty(mode) => {
                            let pen = node.graph.edge_penalty(node.prev_bag[j], node.vertex());
                            cost = match mode {
                                PenaltyMode::Sum => cost + pen,
                                PenaltyMode::Max => cost.max(pen),
                            };
                        }
                    }
                }
                let mut comps = state.comps.clone();
                comps.push(cx);
                Some((State::new(comps, state.extra), cost))
            }
        }
    }

    fn normalize(&self, state: &mut State) {
        if self.canonical {
            normalize_partition(&mut state.comps, |_| false);
        }
    }

    fn final_score(&self, _state: &State, value: i64) -> Option<Score> {
        Some(match self.objective {
            Objective::Proper => Score::Feasible,
            Objective::Penalty(_) => Score::Value(value),
        })
    }

    /// Replays labels forward: a vertex whose label matches a bag vertex
    /// takes that vertex's color, otherwise the smallest color unused in the bag.
    fn certificate(&self, trace: &Trace<'_, ColorAction>) -> Certificate {
        let mut colors = vec![0u32; trace.graph.n()];
        let mut bag_colors: Vec<u32> = Vec::new();
        for step in &trace.steps {
            let view = trace.view(step);
            match *step.action {
                ColorAction::Forget => {
                    bag_colors.remove(view.slot);
                }
                ColorAction::Color(label) => {
                    let color = match step.before.comps.iter().position(|&l| l == label) {
                        Some(j) => bag_colors[j],
                        None => (1..)
                            .find(|c| !bag_colors.contains(c))
                            .expect("free color"),
                    };
                    bag_colors.push(color);
                    colors[view.vertex() - 1] = color;
                }
            }
        }
        Certificate::Coloring(colors)
    }
}
