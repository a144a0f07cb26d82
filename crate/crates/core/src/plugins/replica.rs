//! k-replica placement: choose exactly `k` vertices minimizing selection
//! costs plus the penalties of edges with both ends selected.

use crate::certificate::{Certificate, Score, Sense};
use crate::engine::{NodeView, Problem, State, Trace};

use super::{for_each_tuple, remove_slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplicaAction {
    Skip,
    Select,
    Forget,
}

/// `s_j = 1` when the bag vertex is selected; the extra counts selections so far.
#[derive(Debug, Clone)]
pub struct Replica {
    k: u32,
}

impl Replica {
    pub fn new(k: usize) -> Self {
        Replica { k: k as u32 }
    }
}

impl Problem for Replica {
    type Action = ReplicaAction;

    fn name(&self) -> &'static str {
        "k-replica"
    }

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn domain(&self, _nv: usize) -> (i8, i8) {
        (0, 1)
    }

    fn extra_max(&self) -> u32 {
        self.k
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        for_each_tuple(nv, 0, 1, &mut |s| {
            let selected = s.iter().filter(|&&c| c == 1).count() as u32;
            (selected..=self.k).all(|x| emit(&State::new(s.to_vec(), x)))
        });
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<ReplicaAction> {
        if node.is_introduce() {
            vec![ReplicaAction::Skip, ReplicaAction::Select]
        } else {
            vec![ReplicaAction::Forget]
        }
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &ReplicaAction,
        value: i64,
    ) -> Option<(State, i64)> {
        match action {
            ReplicaAction::Forget => Some((remove_slot(state, node.slot, 1), value)),
            ReplicaAction::Skip => {
                let mut comps = state.comps.clone();
                comps.push(0);
                Some((State::new(comps, state.extra), value))
            }
            ReplicaAction::Select => {
                if state.extra >= self.k {
                    return None;
                }
                let v = node.vertex();
                let mut cost = value + node.graph.selection_cost(v);
                for j in node.adjacent_positions() {
                    if state.comps[j] == 1 {
                        cost += node.graph.edge_penalty(node.prev_bag[j], v);
                    }
                }
                let mut comps = state.comps.clone();
                comps.push(1);
                Some((State::new(comps, state.extra + 1), cost))
            }
        }
    }

    fn final_score(&self, state: &State, value: i64) -> Option<Score> {
        (state.extra == self.k).then_some(Score::Value(value))
    }

    fn certificate(&self, trace: &Trace<'_, ReplicaAction>) -> Certificate {
        let chosen = trace
            .steps
            .iter()
            .filter(|s| matches!(s.action, ReplicaAction::Select))
            .map(|s| trace.view(s).vertex())
            .collect();
        Certificate::vertices(chosen)
    }
}
