//! Minimum weight maximal matching.
//!
//! `s_j` of a bag vertex: 0 unmatched, 1 matched, 2 unmatched but owed a
//! partner because an unmatched neighbor has already been forgotten.

use crate::certificate::{Certificate, Score, Sense};
use crate::engine::{NodeView, Problem, State, Trace};

use super::{for_each_tuple, remove_slot};

const FREE: i8 = 0;
const MATCHED: i8 = 1;
const OWED: i8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingAction {
    Skip,
    Add(usize),
    Forget,
}

#[derive(Debug, Clone, Default)]
pub struct MaximalMatching;

impl Problem for MaximalMatching {
    type Action = MatchingAction;

    fn name(&self) -> &'static str {
        "min-maximal-matching"
    }

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn domain(&self, _nv: usize) -> (i8, i8) {
        (FREE, OWED)
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        for_each_tuple(nv, FREE, OWED, &mut |s| emit(&State::new(s.to_vec(), 0)));
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<MatchingAction> {
        if !node.is_introduce() {
            return vec![MatchingAction::Forget];
        }
        let mut actions = vec![MatchingAction::Skip];
        actions.extend(node.adjacent_positions().map(MatchingAction::Add));
        actions
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &MatchingAction,
        value: i64,
    ) -> Option<(State, i64)> {
        match *action {
            MatchingAction::Forget => {
                let s = state.comps[node.slot];
                if s == OWED {
                    return None;
                }
                let mut next = remove_slot(state, node.slot, 1);
                if s == FREE {
                    let v = node.vertex();
                    let others = node.prev_bag.iter().enumerate().filter(|&(j, _)| j != node.slot);
                    for (j, &u) in others {
                        let at = if j > node.slot { j - 1 } else { j };
                        if next.comps[at] == FREE && node.graph.adjacent(u, v) {
                            next.comps[at] = OWED;
                        }
                    }
                }
                Some((next, value))
            }
            MatchingAction::Skip => {
                let mut comps = state.comps.clone();
                comps.push(FREE);
                Some((State::new(comps, 0), value))
            }
            MatchingAction::Add(j) => {
                if state.comps[j] == MATCHED {
                    return None;
                }
                let mut comps = state.comps.clone();
                comps[j] = MATCHED;
                comps.push(MATCHED);
                let w = node.graph.edge_weight(node.prev_bag[j], node.vertex());
                Some((State::new(comps, 0), value + w))
            }
        }
    }

    fn final_score(&self, _state: &State, value: i64) -> Option<Score> {
        Some(Score::Value(value))
    }

    fn certificate(&self, trace: &Trace<'_, MatchingAction>) -> Certificate {
        let mut edges = Vec::new();
        for step in &trace.steps {
            if let MatchingAction::Add(j) = *step.action {
                let view = trace.view(step);
                edges.push((view.prev_bag[j], view.vertex()));
            }
        }
        Certificate::edges(edges)
    }
}
