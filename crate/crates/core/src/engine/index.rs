use std::collections::HashMap;

use super::{EngineError, Problem, State};

/// The enumerated valid states for one bag size, with a collision-free
/// mixed-radix key for every state and a key → position table.
#[derive(Debug, Clone)]
pub struct StateIndex {
    nv: usize,
    width: usize,
    lo: i8,
    radix: u64,
    extra_radix: u64,
    comps: Vec<i8>,
    extras: Vec<u32>,
    lookup: HashMap<u64, u32>,
}

impl StateIndex {
    fn empty(nv: usize, width: usize, lo: i8, hi: i8, extra_max: u32) -> Result<Self, EngineError> {
        let radix = (hi as i64 - lo as i64 + 1) as u64;
        let extra_radix = extra_max as u64 + 1;
        u32::try_from(width)
            .ok()
            .and_then(|w| radix.checked_pow(w))
            .and_then(|k| k.checked_mul(extra_radix))
            .ok_or(EngineError::KeyOverflow { nv })?;
        Ok(StateIndex {
            nv,
            width,
            lo,
            radix,
            extra_radix,
            comps: Vec::new(),
            extras: Vec::new(),
            lookup: HashMap::new(),
        })
    }

    /// A one-state index, used for the virtual predecessor of the first node.
    pub(crate) fn singleton(state: &State) -> Self {
        let lo = state.comps.iter().copied().min().unwrap_or(0);
        let hi = state.comps.iter().copied().max().unwrap_or(0);
        let mut idx = StateIndex::empty(0, state.comps.len(), lo, hi, state.extra)
            .expect("initial state fits a key");
        idx.push(state).expect("single state");
        idx
    }

    fn push(&mut self, state: &State) -> Result<(), EngineError> {
        let key = self.key(state).ok_or_else(|| EngineError::PluginInconsistency {
            node: None,
            state: state.to_string(),
        })?;
        let pos = self.extras.len() as u32;
        if self.lookup.insert(key, pos).is_some() {
            return Err(EngineError::DuplicateState(state.to_string()));
        }
        self.comps.extend_from_slice(&state.comps);
        self.extras.push(state.extra);
        Ok(())
    }

    /// Mixed-radix key; `None` when a component or the extra is out of domain.
    pub fn key(&self, state: &State) -> Option<u64> {
        if state.comps.len() != self.width || state.extra as u64 >= self.extra_radix {
            return None;
        }
        let mut key = 0u64;
        for &c in &state.comps {
            let digit = (c as i64 - self.lo as i64) as u64;
            if c < self.lo || digit >= self.radix {
                return None;
            }
            key = key * self.radix + digit;
        }
        Some(key * self.extra_radix + state.extra as u64)
    }

    /// Position of `state` in the enumeration.
    pub fn position(&self, state: &State) -> Option<usize> {
        self.key(state)
            .and_then(|k| self.lookup.get(&k))
            .map(|&p| p as usize)
    }

    /// Like [`position`](Self::position), failing with `UnknownState`.
    pub fn get_state_index(&self, state: &State) -> Result<usize, EngineError> {
        self.position(state)
            .ok_or_else(|| EngineError::UnknownState(state.to_string()))
    }

    pub fn nv(&self) -> usize {
        self.nv
    }

    pub fn len(&self) -> usize {
        self.extras.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extras.is_empty()
    }

    pub fn comps(&self, pos: usize) -> &[i8] {
        &self.comps[pos * self.width..(pos + 1) * self.width]
    }

    pub fn extra(&self, pos: usize) -> u32 {
        self.extras[pos]
    }

    pub fn state(&self, pos: usize) -> State {
        State {
            comps: self.comps(pos).to_vec(),
            extra: self.extra(pos),
        }
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.len()).map(|p| self.state(p))
    }

    /// A new index holding the states accepted by `keep`, in the same order.
    pub fn filtered(&self, keep: impl Fn(&State) -> bool) -> StateIndex {
        let mut out = StateIndex {
            comps: Vec::new(),
            extras: Vec::new(),
            lookup: HashMap::new(),
            ..*self
        };
        for s in self.states().filter(|s| keep(s)) {
            out.push(&s).expect("subset of a valid index");
        }
        out
    }
}

/// Enumerates the canonical states of a bag of `nv` vertices.
pub fn generate_states<P: Problem + ?Sized>(
    problem: &P,
    nv: usize,
    capacity: usize,
) -> Result<StateIndex, EngineError> {
    let (lo, hi) = problem.domain(nv);
    let mut idx = StateIndex::empty(nv, nv * problem.arity(), lo, hi, problem.extra_max())?;
    let mut failure = None;
    problem.enumerate_states(nv, &mut |s: &State| {
        if idx.len() >= capacity {
            failure = Some(EngineError::Capacity { nv, limit: capacity });
            return false;
        }
        if let Err(e) = idx.push(s) {
            failure = Some(e);
            return false;
        }
        true
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(idx),
    }
}
