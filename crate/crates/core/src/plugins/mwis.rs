//! Maximum weight independent set.

use crate::certificate::{Certificate, Score, Sense};
use crate::engine::{NodeView, Problem, State, Trace};

use super::{for_each_tuple, remove_slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwisAction {
    Skip,
    Select,
    Forget,
}

/// `s_j = 1` when the bag vertex is in the set.
#[derive(Debug, Clone, Default)]
pub struct Mwis;

impl Problem for Mwis {
    type Action = MwisAction;

    fn name(&self) -> &'static str {
        "mwis"
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn domain(&self, _nv: usize) -> (i8, i8) {
        (0, 1)
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        for_each_tuple(nv, 0, 1, &mut |s| emit(&State::new(s.to_vec(), 0)));
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<MwisAction> {
        if node.is_introduce() {
            vec![MwisAction::Skip, MwisAction::Select]
        } else {
            vec![MwisAction::Forget]
        }
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &MwisAction,
        value: i64,
    ) -> Option<(State, i64)> {
        let mut comps = state.comps.clone();
        match action {
            MwisAction::Forget => Some((remove_slot(state, node.slot, 1), value)),
            MwisAction::Skip => {
                comps.push(0);
                Some((State::new(comps, 0), value))
            }
            MwisAction::Select => {
                if node.adjacent_positions().any(|j| state.comps[j] == 1) {
                    return None;
                }
                comps.push(1);
                Some((State::new(comps, 0), value + node.graph.vertex_weight(node.vertex())))
            }
        }
    }

    fn final_score(&self, _state: &State, value: i64) -> Option<Score> {
        Some(Score::Value(value))
    }

    fn certificate(&self, trace: &Trace<'_, MwisAction>) -> Certificate {
        let chosen = trace
            .steps
            .iter()
            .filter(|s| matches!(s.action, MwisAction::Select))
            .map(|s| trace.view(s).vertex())
            .collect();
        Certificate::vertices(chosen)
    }
}
