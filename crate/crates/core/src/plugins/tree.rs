//! Spanning tree maximizing the total weight of its leaves.
//!
//! Each bag vertex carries `(cid, deg)`: a canonical component label and its
//! tree degree so far, saturated at 2. The table value is the weight of all
//! vertices whose degree is at most 1.

use crate::certificate::{Certificate, Score, Sense};
use crate::engine::{NodeView, Problem, State, Trace};

use super::partition::{for_each_rgs, normalize_partition};
use super::remove_slot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeAction {
    NewComponent,
    AddAsLeaf(usize),
    /// Joins the components of the previous-bag positions in the mask.
    Connect(u64),
    Forget,
}

#[derive(Debug, Clone, Default)]
pub struct MaxLeafTree;

fn cid(s: &[i8], j: usize) -> i8 {
    s[2 * j]
}

fn deg(s: &[i8], j: usize) -> i8 {
    s[2 * j + 1]
}

fn bump(s: &mut [i8], j: usize) {
    s[2 * j + 1] = (s[2 * j + 1] + 1).min(2);
}

fn positions(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |j| mask >> j & 1 == 1)
}

impl Problem for MaxLeafTree {
    type Action = TreeAction;

    fn name(&self) -> &'static str {
        "max-leaf-tree"
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn arity(&self) -> usize {
        2
    }

    fn domain(&self, nv: usize) -> (i8, i8) {
        (0, nv.max(2) as i8)
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        for_each_rgs(nv, nv, &mut |cids| {
            let single: Vec<bool> = cids
                .iter()
                .map(|c| cids.iter().filter(|&d| d == c).count() == 1)
                .collect();
            let lo: Vec<i8> = single.iter().map(|&s| if s { 0 } else { 1 }).collect();
            let mut degs = lo.clone();
            loop {
                let comps: Vec<i8> = cids.iter().zip(&degs).flat_map(|(&c, &d)| [c, d]).collect();
                if !emit(&State::new(comps, 0)) {
                    return false;
                }
                let mut i = nv;
                loop {
                    if i == 0 {
                        return true;
                    }
                    i -= 1;
                    if degs[i] < 2 {
                        degs[i] += 1;
                        break;
                    }
                    degs[i] = lo[i];
                }
            }
        });
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, node: &NodeView<'_>) -> Vec<TreeAction> {
        if !node.is_introduce() {
            return vec![TreeAction::Forget];
        }
        let mut actions = vec![TreeAction::NewComponent];
        actions.extend(node.adjacent_positions().map(TreeAction::AddAsLeaf));
        let adj = node.adjacency;
        // submasks of the adjacency in increasing order
        let mut sub = 0u64;
        loop {
            sub = sub.wrapping_sub(adj) & adj;
            if sub == 0 {
                break;
            }
            if sub.count_ones() >= 2 {
                actions.push(TreeAction::Connect(sub));
            }
        }
        actions
    }

    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &TreeAction,
        value: i64,
    ) -> Option<(State, i64)> {
        let g = node.graph;
        let mut s = state.comps.clone();
        let weight = |j: usize| g.vertex_weight(node.prev_bag[j]);
        let value = match *action {
            TreeAction::Forget => {
                let c = cid(&s, node.slot);
                let kept = (0..node.prev_bag.len()).any(|k| k != node.slot && cid(&s, k) == c);
                if !kept && !node.is_last {
                    return None;
                }
                return Some((remove_slot(state, node.slot, 2), value));
            }
            TreeAction::NewComponent => {
                let next = (0..node.prev_bag.len()).map(|j| cid(&s, j)).max().unwrap_or(0) + 1;
                s.extend([next, 0]);
                value + g.vertex_weight(node.vertex())
            }
            TreeAction::AddAsLeaf(j) => {
                let lost = if deg(&s, j) == 1 { weight(j) } else { 0 };
                bump(&mut s, j);
                s.extend([cid(&s, j), 1]);
                value + g.vertex_weight(node.vertex()) - lost
            }
            TreeAction::Connect(mask) => {
                let mut merged: Vec<i8> = Vec::new();
                let mut lost = 0;
                for j in positions(mask) {
                    let c = cid(&s, j);
                    if merged.contains(&c) {
                        return None;
                    }
                    merged.push(c);
                    if deg(&s, j) == 1 {
                        lost += weight(j);
                    }
                }
                let new = *merged.iter().max().expect("at least two positions");
                for j in 0..node.prev_bag.len() {
                    if merged.contains(&cid(&s, j)) {
                        s[2 * j] = new;
                    }
                }
                for j in positions(mask) {
                    bump(&mut s, j);
                }
                s.extend([new, 2]);
                value - lost
            }
        };
        Some((State::new(s, 0), value))
    }

    fn normalize(&self, state: &mut State) {
        let mut cids: Vec<i8> = state.comps.iter().step_by(2).copied().collect();
        normalize_partition(&mut cids, |_| false);
        for (j, c) in cids.into_iter().enumerate() {
            state.comps[2 * j] = c;
        }
    }

    fn final_score(&self, _state: &State, value: i64) -> Option<Score> {
        Some(Score::Value(value))
    }

    fn certificate(&self, trace: &Trace<'_, TreeAction>) -> Certificate {
        let mut edges = Vec::new();
        for step in &trace.steps {
            let view = trace.view(step);
            let v = view.vertex();
            match *step.action {
                TreeAction::AddAsLeaf(j) => edges.push((view.prev_bag[j], v)),
                TreeAction::Connect(mask) => {
                    edges.extend(positions(mask).map(|j| (view.prev_bag[j], v)));
                }
                TreeAction::NewComponent | TreeAction::Forget => {}
            }
        }
        Certificate::edges(edges)
    }
}
