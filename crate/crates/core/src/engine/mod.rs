//! The generic dynamic program over a nice path decomposition.
//!
//! For every node the engine holds a dense table over the enumerated valid
//! states of that bag size. Each initialized state of the previous node is
//! expanded under every action of the current node; successful expansions
//! are normalized and written when the slot is empty or the new value is
//! strictly better. Ties keep the earliest (predecessor, action) pair, in
//! sequential and parallel mode alike.

mod catalan;
mod index;

pub use catalan::{catalan_admissible, catalan_prune};
pub use index::{generate_states, StateIndex};

use std::collections::HashMap;
use std::fmt;
use std::io::{self, Write};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::certificate::{Certificate, Score, Sense};
use crate::decomposition::{Event, NicePathDecomposition};
use crate::graph::Graph;

/// Widest bag the engine accepts; adjacency is held in a `u64` mask.
pub const MAX_BAG: usize = 64;

/// Default limit on table slots per node.
pub const DEFAULT_CAPACITY: usize = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("expansion produced out-of-domain state {state} (node {node:?})")]
    PluginInconsistency { node: Option<usize>, state: String },
    #[error("state count for bag size {nv} exceeds capacity {limit}")]
    Capacity { nv: usize, limit: usize },
    #[error("state key for bag size {nv} does not fit in 64 bits")]
    KeyOverflow { nv: usize },
    #[error("bag of {0} vertices exceeds the supported maximum of {MAX_BAG}")]
    BagTooWide(usize),
    #[error("enumeration produced state {0} twice")]
    DuplicateState(String),
    #[error("state {0} is not in the index")]
    UnknownState(String),
    #[error("tables were not retained; rerun with retention enabled")]
    ReconstructionUnavailable,
    #[error("no feasible final state to reconstruct from")]
    Infeasible,
    #[error("pruning not applicable: {0}")]
    NotApplicable(String),
}

/// Per-vertex components of a bag plus one optional scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct State {
    pub comps: Vec<i8>,
    pub extra: u32,
}

impl State {
    pub fn new(comps: Vec<i8>, extra: u32) -> Self {
        State { comps, extra }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; {})", self.extra)
    }
}

/// What a problem sees of one decomposition node.
#[derive(Debug, Clone, Copy)]
pub struct NodeView<'a> {
    pub index: usize,
    pub is_last: bool,
    pub event: Event,
    /// Ordered bag after the event.
    pub bag: &'a [usize],
    /// Ordered bag before the event.
    pub prev_bag: &'a [usize],
    /// Introduce: position of the new vertex in `bag` (always last).
    /// Forget: position of the forgotten vertex in `prev_bag`.
    pub slot: usize,
    /// Introduce: bit `j` set when `prev_bag[j]` is adjacent to the new vertex.
    pub adjacency: u64,
    pub graph: &'a Graph,
}

impl<'a> NodeView<'a> {
    pub fn new(graph: &'a Graph, npd: &'a NicePathDecomposition, index: usize) -> Self {
        let event = npd.events()[index];
        let prev_bag = npd.prev_bag(index);
        let adjacency = match event {
            Event::Introduce(v) => prev_bag
                .iter()
                .enumerate()
                .filter(|&(_, &u)| graph.adjacent(u, v))
                .fold(0u64, |m, (j, _)| m | 1 << j),
            Event::Forget(_) => 0,
        };
        NodeView {
            index,
            is_last: index + 1 == npd.len(),
            event,
            bag: npd.bag(index),
            prev_bag,
            slot: npd.slot(index),
            adjacency,
            graph,
        }
    }

    /// The introduced or forgotten vertex.
    pub fn vertex(&self) -> usize {
        self.event.vertex()
    }

    pub fn nv(&self) -> usize {
        self.bag.len()
    }

    pub fn is_introduce(&self) -> bool {
        self.event.is_introduce()
    }

    /// Whether `prev_bag[j]` is adjacent to the introduced vertex.
    pub fn is_adjacent(&self, j: usize) -> bool {
        self.adjacency >> j & 1 == 1
    }

    /// Positions in `prev_bag` adjacent to the introduced vertex, ascending.
    pub fn adjacent_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.prev_bag.len()).filter(move |&j| self.is_adjacent(j))
    }
}

/// A problem instantiation of the dynamic program.
///
/// `expand` and `normalize` must be pure; the engine may call them from
/// several threads.
pub trait Problem: Sync {
    type Action: Clone + fmt::Debug + Send + Sync;

    fn name(&self) -> &'static str;

    fn sense(&self) -> Sense;

    /// Components per bag vertex.
    fn arity(&self) -> usize {
        1
    }

    /// Inclusive component range for a bag of `nv` vertices.
    fn domain(&self, nv: usize) -> (i8, i8);

    /// Largest value of the scalar extra (0 when unused).
    fn extra_max(&self) -> u32 {
        0
    }

    /// Emits every canonical state of a bag of `nv` vertices; stops early
    /// when `emit` returns false.
    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool);

    /// State of the empty bag before the first node.
    fn initial_state(&self) -> State {
        State::default()
    }

    /// Value attached to [`initial_state`](Self::initial_state).
    fn base_value(&self) -> i64;

    fn actions(&self, node: &NodeView<'_>) -> Vec<Self::Action>;

    /// Applies `action` at `node` to predecessor `state` holding `value`.
    fn expand(
        &self,
        state: &State,
        node: &NodeView<'_>,
        action: &Self::Action,
        value: i64,
    ) -> Option<(State, i64)>;

    fn normalize(&self, _state: &mut State) {}

    /// Strict improvement test for table values.
    fn better(&self, a: i64, b: i64) -> bool {
        match self.sense() {
            Sense::Feasibility => false,
            Sense::Minimize => a < b,
            Sense::Maximize => a > b,
        }
    }

    /// Objective of a final state, or `None` when it is not a valid final state.
    fn final_score(&self, state: &State, value: i64) -> Option<Score>;

    /// Builds the explicit solution from a replayed optimal trace.
    fn certificate(&self, trace: &Trace<'_, Self::Action>) -> Certificate;
}

/// Drops states before they enter an index.
pub type StateFilter = fn(&State) -> bool;

#[derive(Debug, Clone, Copy)]
pub struct DpOptions {
    /// Worker threads for expansion; 1 runs sequentially.
    pub threads: usize,
    /// Maximum enumerated states per bag size.
    pub capacity: usize,
    /// Keep every node's table so a solution can be reconstructed.
    pub retain: bool,
    /// Predecessors per parallel work unit.
    pub chunk: usize,
    pub filter: Option<StateFilter>,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            threads: 1,
            capacity: DEFAULT_CAPACITY,
            retain: false,
            chunk: 2048,
            filter: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    value: i64,
    pred: u32,
    action: u32,
}

#[derive(Debug, Clone)]
struct RetainedNode<A> {
    /// `(position, entry)` for initialized slots, sorted by position.
    entries: Vec<(u32, Entry)>,
    actions: Vec<A>,
}

impl<A> RetainedNode<A> {
    fn get(&self, pos: u32) -> Option<&Entry> {
        self.entries
            .binary_search_by_key(&pos, |&(p, _)| p)
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Enumerated states per node.
    pub table_sizes: Vec<usize>,
    /// Initialized states per node.
    pub live_states: Vec<usize>,
}

impl DpStats {
    pub fn max_table_size(&self) -> usize {
        self.table_sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn max_live_states(&self) -> usize {
        self.live_states.iter().copied().max().unwrap_or(0)
    }
}

/// Result of [`run_dp`].
#[derive(Debug, Clone)]
pub struct DpOutcome<A> {
    /// Best final objective, `None` when infeasible.
    pub score: Option<Score>,
    pub stats: DpStats,
    final_pos: Option<u32>,
    initial: State,
    indexes: HashMap<usize, Arc<StateIndex>>,
    retained: Option<Vec<RetainedNode<A>>>,
}

impl<A> DpOutcome<A> {
    pub fn is_feasible(&self) -> bool {
        self.score.is_some()
    }

    pub fn has_tables(&self) -> bool {
        self.retained.is_some()
    }

    /// Retained tables as `(position, value)` per node.
    pub fn tables(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.retained.as_ref().map(|nodes| {
            nodes
                .iter()
                .map(|n| n.entries.iter().map(|&(p, e)| (p as usize, e.value)).collect())
                .collect()
        })
    }

    /// Writes retained tables as `state <components...> [extra <x>] value <v>` lines.
    pub fn dump_tables(&self, npd: &NicePathDecomposition, out: &mut dyn Write) -> io::Result<()> {
        let Some(nodes) = &self.retained else {
            return Ok(());
        };
        for (i, node) in nodes.iter().enumerate() {
            let nv = npd.bag(i).len();
            let idx = &self.indexes[&nv];
            writeln!(out, "node {} size {} live {}", i + 1, idx.len(), node.entries.len())?;
            for &(pos, e) in &node.entries {
                let s = idx.state(pos as usize);
                let mut line = String::from("state");
                for c in &s.comps {
                    line.push_str(&format!(" {c}"));
                }
                if s.extra != 0 {
                    line.push_str(&format!(" extra {}", s.extra));
                }
                writeln!(out, "{line} value {}", e.value)?;
            }
        }
        Ok(())
    }
}

/// One node of a reconstructed optimal run.
#[derive(Debug, Clone)]
pub struct Step<'a, A> {
    pub node: usize,
    pub action: &'a A,
    pub before: State,
    pub after: State,
}

/// An optimal run replayed from node 1 to node P.
#[derive(Debug)]
pub struct Trace<'a, A> {
    pub graph: &'a Graph,
    pub npd: &'a NicePathDecomposition,
    pub steps: Vec<Step<'a, A>>,
}

impl<'a, A> Trace<'a, A> {
    pub fn view(&self, step: &Step<'_, A>) -> NodeView<'a> {
        NodeView::new(self.graph, self.npd, step.node)
    }
}

type Candidates = Vec<(u32, Entry)>;

fn expand_one<P: Problem>(
    problem: &P,
    view: &NodeView<'_>,
    actions: &[P::Action],
    from: &StateIndex,
    to: &StateIndex,
    filter: Option<StateFilter>,
    pos: u32,
    value: i64,
    emit: &mut impl FnMut(u32, Entry),
) -> Result<(), EngineError> {
    let state = from.state(pos as usize);
    for (ai, action) in actions.iter().enumerate() {
        let Some((mut next, v)) = problem.expand(&state, view, action, value) else {
            continue;
        };
        problem.normalize(&mut next);
        match to.position(&next) {
            Some(t) => emit(
                t as u32,
                Entry {
                    value: v,
                    pred: pos,
                    action: ai as u32,
                },
            ),
            None if filter.is_some_and(|f| !f(&next)) => {}
            None => {
                return Err(EngineError::PluginInconsistency {
                    node: Some(view.index + 1),
                    state: next.to_string(),
                })
            }
        }
    }
    Ok(())
}

/// Runs the dynamic program of `problem` over `npd`.
pub fn run_dp<P: Problem>(
    problem: &P,
    graph: &Graph,
    npd: &NicePathDecomposition,
    opts: &DpOptions,
) -> Result<DpOutcome<P::Action>, EngineError> {
    if npd.max_bag_size() > MAX_BAG {
        return Err(EngineError::BagTooWide(npd.max_bag_size()));
    }
    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .expect("thread pool"),
        )
    } else {
        None
    };

    let initial = problem.initial_state();
    let mut indexes: HashMap<usize, Arc<StateIndex>> = HashMap::new();
    let mut cur_index = Arc::new(StateIndex::singleton(&initial));
    let mut cur: Vec<Option<Entry>> = vec![Some(Entry {
        value: problem.base_value(),
        pred: u32::MAX,
        action: u32::MAX,
    })];
    let mut stats = DpStats::default();
    let mut retained = opts.retain.then(Vec::new);

    for i in 0..npd.len() {
        let view = NodeView::new(graph, npd, i);
        let nv = view.nv();
        let next_index = match indexes.get(&nv) {
            Some(idx) => Arc::clone(idx),
            None => {
                let mut idx = generate_states(problem, nv, opts.capacity)?;
                if let Some(f) = opts.filter {
                    idx = idx.filtered(f);
                }
                let idx = Arc::new(idx);
                indexes.insert(nv, Arc::clone(&idx));
                idx
            }
        };
        let actions = problem.actions(&view);
        let mut next: Vec<Option<Entry>> = vec![None; next_index.len()];
        let live: Vec<u32> = (0..cur.len() as u32)
            .filter(|&p| cur[p as usize].is_some())
            .collect();

        let mut merge = |t: u32, e: Entry| {
            let slot = &mut next[t as usize];
            match slot {
                Some(old) if !problem.better(e.value, old.value) => {}
                _ => *slot = Some(e),
            }
        };

        match &pool {
            Some(pool) if live.len() > opts.chunk => {
                let chunks: Vec<Candidates> = pool.install(|| {
                    live.par_chunks(opts.chunk.max(1))
                        .map(|chunk| {
                            let mut local: HashMap<u32, Entry> = HashMap::new();
                            for &p in chunk {
                                let value = cur[p as usize].unwrap().value;
                                expand_one(
                                    problem, &view, &actions, &cur_index, &next_index,
                                    opts.filter, p, value,
                                    &mut |t, e| {
                                        local
                                            .entry(t)
                                            .and_modify(|old| {
                                                if problem.better(e.value, old.value) {
                                                    *old = e;
                                                }
                                            })
                                            .or_insert(e);
                                    },
                                )?;
                            }
                            Ok(local.into_iter().collect())
                        })
                        .collect::<Result<Vec<_>, EngineError>>()
                })?;
                for chunk in chunks {
                    for (t, e) in chunk {
                        merge(t, e);
                    }
                }
            }
            _ => {
                for &p in &live {
                    let value = cur[p as usize].unwrap().value;
                    expand_one(
                        problem, &view, &actions, &cur_index, &next_index, opts.filter, p,
                        value, &mut merge,
                    )?;
                }
            }
        }

        stats.table_sizes.push(next.len());
        stats.live_states.push(next.iter().filter(|e| e.is_some()).count());
        if let Some(nodes) = retained.as_mut() {
            nodes.push(RetainedNode {
                entries: next
                    .iter()
                    .enumerate()
                    .filter_map(|(p, e)| e.map(|e| (p as u32, e)))
                    .collect(),
                actions,
            });
        }
        cur = next;
        cur_index = next_index;
    }

    let mut best: Option<(Score, u32)> = None;
    for (p, e) in cur.iter().enumerate() {
        let Some(e) = e else { continue };
        let Some(score) = problem.final_score(&cur_index.state(p), e.value) else {
            continue;
        };
        match &best {
            Some((b, _)) if !score.better_than(b, problem.sense()) => {}
            _ => best = Some((score, p as u32)),
        }
    }

    Ok(DpOutcome {
        score: best.map(|(s, _)| s),
        final_pos: best.map(|(_, p)| p),
        stats,
        initial,
        indexes,
        retained,
    })
}

/// Walks the retained tables back from the optimal final state and lets the
/// problem turn the replayed actions into a certificate.
pub fn reconstruct_solution<P: Problem>(
    problem: &P,
    graph: &Graph,
    npd: &NicePathDecomposition,
    outcome: &DpOutcome<P::Action>,
) -> Result<Certificate, EngineError> {
    let nodes = outcome
        .retained
        .as_ref()
        .ok_or(EngineError::ReconstructionUnavailable)?;
    let mut pos = outcome.final_pos.ok_or(EngineError::Infeasible)?;
    let mut steps = Vec::with_capacity(nodes.len());
    for i in (0..nodes.len()).rev() {
        let entry = *nodes[i].get(pos).expect("origin chain is initialized");
        let after = outcome.indexes[&npd.bag(i).len()].state(pos as usize);
        let before = if i == 0 {
            outcome.initial.clone()
        } else {
            outcome.indexes[&npd.bag(i - 1).len()].state(entry.pred as usize)
        };
        steps.push(Step {
            node: i,
            action: &nodes[i].actions[entry.action as usize],
            before,
            after,
        });
        pos = entry.pred;
    }
    steps.reverse();
    Ok(problem.certificate(&Trace { graph, npd, steps }))
}
