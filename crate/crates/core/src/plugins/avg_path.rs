//! Simple path of maximum average vertex weight with length in `[L, U]`.
//!
//! The path is grown as a set of disjoint fragments. A bag vertex is `0` when
//! it is off the path or already has both path edges, `-1` when it is a
//! fragment on its own, and a positive id when it ends a longer fragment.
//! The extra packs `x`, the number of path vertices so far, with `e`, the
//! number of fragment ends that were forgotten and can never grow again.
//! A single path has exactly two such ends.

use crate::certificate::{Certificate, Score, Sense};
use crate::engine::{NodeView, Problem, State, Trace};

use super::partition::{for_each_endpoint_labeling, normalize_partition};
use super::remove_slot;

const SOLO: i8 = -1;
const OFF: i8 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AvgPathAction {
    Skip,
    Start,
    Extend(usize),
    Connect(usize, usize),
    Forget,
}

#[derive(Debug, Clone)]
pub struct AvgPath {
    lower: u32,
    upper: u32,
}

impl AvgPath {
    pub fn new(lower: usize, upper: usize) -> Self {
        AvgPath {
            lower: lower as u32,
            upper: upper as u32,
        }
    }

    fn pack(x: u32, e: u32) -> u32 {
        x * 3 + e
    }

    fn unpack(extra: u32) -> (u32, u32) {
        (extra / 3, extra % 3)
    }
}

fn next_id(comps: &[i8]) -> i8 {
    comps.iter().copied().max().unwrap_or(0).max(0) + 1
}

impl Problem for AvgPath {
    type Action = AvgPathAction;

    fn name(&self) -> &'static str {
        "avg-path"
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn domain(&self, nv: usize) -> (i8, i8) {
        (SOLO, nv.max(1) as i8)
    }

    fn extra_max(&self) -> u32 {
        AvgPath::pack(self.upper, 2)
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        for_each_endpoint_labeling(nv, &[SOLO, OFF], false, &mut |s| {
            let on = s.iter().filter(|&&c| c != OFF).count() as u32;
            for x in on..=self.upper {
                for e in 0..=2 {
                    if !emit(&State::new(s.to_vec(), AvgPath::pack(x, e))) {
                        return false;
                    }
                }
            }
            true
        });
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<AvgPathAction> {
        if !node.is_introduce() {
            return vec![AvgPathAction::Forget];
        }
        let adj: Vec<usize> = node.adjacent_positions().collect();
        let mut actions = vec![AvgPathAction::Skip, AvgPathAction::Start];
        actions.extend(adj.iter().map(|&j| AvgPathAction::Extend(j)));
        for (a, &j) in adj.iter().enumerate() {
            for &k in &adj[a + 1..] {
                actions.push(AvgPathAction::Connect(j, k));
            }
        }
        actions
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &AvgPathAction,
        value: i64,
    ) -> Option<(State, i64)> {
        let (x, e) = AvgPath::unpack(state.extra);
        let mut s = state.comps.clone();
        match *action {
            AvgPathAction::Forget => {
                let sealed = match s[node.slot] {
                    OFF => 0,
                    SOLO => 2,
                    _ => 1,
                };
                if e + sealed > 2 {
                    return None;
                }
                let mut next = remove_slot(state, node.slot, 1);
                next.extra = AvgPath::pack(x, e + sealed);
                return Some((next, value));
            }
            AvgPathAction::Skip => {
                s.push(OFF);
                return Some((State::new(s, state.extra), value));
            }
            AvgPathAction::Start => s.push(SOLO),
            AvgPathAction::Extend(j) => match s[j] {
                OFF => return None,
                SOLO => {
                    let id = next_id(&s);
                    s[j] = id;
                    s.push(id);
                }
                id => {
                    s[j] = OFF;
                    s.push(id);
                }
            },
            AvgPathAction::Connect(j, k) => {
                match (s[j], s[k]) {
                    (OFF, _) | (_, OFF) => return None,
                    (SOLO, SOLO) => {
                        let id = next_id(&s);
                        s[j] = id;
                        s[k] = id;
                    }
                    (SOLO, id) => {
                        s[j] = id;
                        s[k] = OFF;
                    }
                    (id, SOLO) => {
                        s[k] = id;
                        s[j] = OFF;
                    }
                    (a, b) if a == b => return None,
                    (a, b) => {
                        if let Some(far) = (0..s.len()).find(|&t| t != k && s[t] == b) {
                            s[far] = a;
                        }
                        s[j] = OFF;
                        s[k] = OFF;
                    }
                }
                s.push(OFF);
            }
        }
        if x + 1 > self.upper {
            return None;
        }
        let w = node.graph.vertex_weight(node.vertex());
        Some((State::new(s, AvgPath::pack(x + 1, e)), value + w))
    }

    fn normalize(&self, state: &mut State) {
        normalize_partition(&mut state.comps, |l| l == SOLO || l == OFF);
    }

    fn final_score(&self, state: &State, value: i64) -> Option<Score> {
        let (x, e) = AvgPath::unpack(state.extra);
        (e == 2 && x >= self.lower && x <= self.upper).then_some(Score::Average {
            sum: value,
            count: x as i64,
        })
    }

    fn certificate(&self, trace: &Trace<'_, AvgPathAction>) -> Certificate {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for step in &trace.steps {
            let view = trace.view(step);
            let v = view.vertex();
            match *step.action {
                AvgPathAction::Skip | AvgPathAction::Forget => continue,
                AvgPathAction::Start => {}
                AvgPathAction::Extend(j) => edges.push((view.prev_bag[j], v)),
                AvgPathAction::Connect(j, k) => {
                    edges.push((view.prev_bag[j], v));
                    edges.push((view.prev_bag[k], v));
                }
            }
            vertices.push(v);
        }
        Certificate::Path(order_path(&vertices, &edges))
    }
}

/// Orders the vertices of a simple path from its smaller end.
fn order_path(vertices: &[usize], edges: &[(usize, usize)]) -> Vec<usize> {
    let nbrs = |v: usize| -> Vec<usize> {
        edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    };
    let Some(&start) = vertices.iter().filter(|&&v| nbrs(v).len() <= 1).min() else {
        return vertices.to_vec();
    };
    let mut path = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(next) = nbrs(cur).into_iter().find(|&u| Some(u) != prev) {
        prev = Some(cur);
        cur = next;
        path.push(cur);
    }
    path
}
