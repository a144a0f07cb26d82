//! Minimum path cover and minimum cycle cover.
//!
//! Component `s_j` of a bag vertex: `-1` while the vertex has no cover edge
//! yet, `0` once it has two, and a positive path id when it is an endpoint of
//! an open path. For cycle covers every open path keeps both endpoints in the
//! bag, so each id occurs exactly twice.

use crate::certificate::{Certificate, Score, Sense};
use crate::engine::{NodeView, Problem, State, Trace};

use super::partition::{for_each_endpoint_labeling, normalize_partition};
use super::remove_slot;

const ISOLATED: i8 = -1;
const INNER: i8 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverAction {
    NewPath,
    Extend(usize),
    Connect(usize, usize),
    Close(usize, usize),
    Forget,
}

#[derive(Debug, Clone)]
pub struct Cover {
    cycles: bool,
}

impl Cover {
    pub fn paths() -> Self {
        Cover { cycles: false }
    }

    pub fn cycles() -> Self {
        Cover { cycles: true }
    }

    pub fn is_cycle_cover(&self) -> bool {
        self.cycles
    }
}

fn next_id(comps: &[i8]) -> i8 {
    comps.iter().copied().max().unwrap_or(0).max(0) + 1
}

impl Problem for Cover {
    type Action = CoverAction;

    fn name(&self) -> &'static str {
        if self.cycles {
            "cycle-cover"
        } else {
            "path-cover"
        }
    }

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn domain(&self, nv: usize) -> (i8, i8) {
        (ISOLATED, nv.max(1) as i8)
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        for_each_endpoint_labeling(nv, &[ISOLATED, INNER], self.cycles, &mut |s| {
            emit(&State::new(s.to_vec(), 0))
        });
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<CoverAction> {
        if !node.is_introduce() {
            return vec![CoverAction::Forget];
        }
        let adj: Vec<usize> = node.adjacent_positions().collect();
        let mut actions = vec![CoverAction::NewPath];
        actions.extend(adj.iter().map(|&j| CoverAction::Extend(j)));
        for (a, &j) in adj.iter().enumerate() {
            for &k in &adj[a + 1..] {
                actions.push(CoverAction::Connect(j, k));
                if self.cycles {
                    actions.push(CoverAction::Close(j, k));
                }
            }
        }
        actions
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &CoverAction,
        value: i64,
    ) -> Option<(State, i64)> {
        let mut s = state.comps.clone();
        let merged = if self.cycles { 0 } else { 1 };
        let value = match *action {
            CoverAction::Forget => {
                if self.cycles && s[node.slot] != INNER {
                    return None;
                }
                return Some((remove_slot(state, node.slot, 1), value));
            }
            CoverAction::NewPath => {
                s.push(ISOLATED);
                value + merged
            }
            CoverAction::Extend(j) => {
                match s[j] {
                    INNER => return None,
                    ISOLATED => {
                        let pid = next_id(&s);
                        s[j] = pid;
                        s.push(pid);
                    }
                    id => {
                        s[j] = INNER;
                        s.push(id);
                    }
                }
                value
            }
            CoverAction::Connect(j, k) => {
                let (sj, sk) = (s[j], s[k]);
                match (sj, sk) {
                    (INNER, _) | (_, INNER) => return None,
                    (ISOLATED, ISOLATED) => {
                        let pid = next_id(&s);
                        s[j] = pid;
                        s[k] = pid;
                    }
                    (ISOLATED, id) => {
                        s[j] = id;
                        s[k] = INNER;
                    }
                    (id, ISOLATED) => {
                        s[k] = id;
                        s[j] = INNER;
                    }
                    (a, b) if a == b => return None,
                    (a, b) => {
                        // the far endpoint of k's path now ends the merged path
                        if let Some(far) = (0..s.len()).find(|&x| x != k && s[x] == b) {
                            s[far] = a;
                        }
                        s[j] = INNER;
                        s[k] = INNER;
                    }
                }
                s.push(INNER);
                value - merged
            }
            CoverAction::Close(j, k) => {
                if s[j] <= 0 || s[j] != s[k] {
                    return None;
                }
                s[j] = INNER;
                s[k] = INNER;
                s.push(INNER);
                value + 1
            }
        };
        Some((State::new(s, state.extra), value))
    }

    fn normalize(&self, state: &mut State) {
        normalize_partition(&mut state.comps, |l| l == ISOLATED || l == INNER);
    }

    fn final_score(&self, state: &State, value: i64) -> Option<Score> {
        if self.cycles && state.comps.iter().any(|&c| c != INNER) {
            return None;
        }
        Some(Score::Value(value))
    }

    fn certificate(&self, trace: &Trace<'_, CoverAction>) -> Certificate {
        let mut edges = Vec::new();
        for step in &trace.steps {
            let view = trace.view(step);
            let v = view.vertex();
            match *step.action {
                CoverAction::Extend(j) => edges.push((view.prev_bag[j], v)),
                CoverAction::Connect(j, k) | CoverAction::Close(j, k) => {
                    edges.push((view.prev_bag[j], v));
                    edges.push((view.prev_bag[k], v));
                }
                CoverAction::NewPath | CoverAction::Forget => {}
            }
        }
        Certificate::edges(edges)
    }
}
