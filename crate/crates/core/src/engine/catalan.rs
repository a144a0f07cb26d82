use crate::decomposition::NicePathDecomposition;

use super::{EngineError, State, StateIndex};

/// Whether the open paths of a cover state are pairwise noncrossing.
///
/// Positive components are path ids; an id present twice gives the bag
/// positions `(a, b)` of both endpoints. Two such pairs `(a, b)` and `(c, d)`
/// are admissible when they are disjoint or nested.
pub fn catalan_admissible(state: &State) -> bool {
    let comps = &state.comps;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (a, &id) in comps.iter().enumerate() {
        if id <= 0 {
            continue;
        }
        if let Some(b) = comps[a + 1..].iter().position(|&x| x == id) {
            pairs.push((a, a + 1 + b));
        }
    }
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[i + 1..] {
            let ok = b < c || d < a || (a < c && d < b) || (c < a && b < d);
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Removes crossing states from a path- or cycle-cover index. Only sound
/// when the bag order is the row-major order of a grid sweep.
pub fn catalan_prune(
    idx: &StateIndex,
    npd: &NicePathDecomposition,
) -> Result<StateIndex, EngineError> {
    if npd.sweep().is_none() {
        return Err(EngineError::NotApplicable(
            "decomposition is not a grid sweep".into(),
        ));
    }
    Ok(idx.filtered(catalan_admissible))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(comps: &[i8]) -> State {
        State::new(comps.to_vec(), 0)
    }

    #[test]
    fn crossing_pairs_rejected() {
        // endpoints (1,3) and (2,4)
        assert!(!catalan_admissible(&s(&[1, 2, 1, 2])));
    }

    #[test]
    fn disjoint_and_nested_pairs_kept() {
        assert!(catalan_admissible(&s(&[1, 1, 2, 2])));
        assert!(catalan_admissible(&s(&[1, 2, 2, 1])));
        assert!(catalan_admissible(&s(&[1, -1, 0, 1])));
    }

    #[test]
    fn single_endpoints_are_ignored() {
        assert!(catalan_admissible(&s(&[1, 2, 3, 2, 1])));
        assert!(catalan_admissible(&s(&[1, 2, 3, 1, 4])));
        assert!(!catalan_admissible(&s(&[1, 2, 3, 1, 2])));
    }
}
