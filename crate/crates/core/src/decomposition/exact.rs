use crate::graph::Graph;

use super::{DecompositionError, PathDecomposition};

/// Largest graph accepted by [`exact_pathwidth_decomposition`].
pub const EXACT_MAX_VERTICES: usize = 12;

/// Minimum-width decomposition by exhaustive search over introduce orders.
///
/// Placing vertex `v` after prefix `S` costs a bag of `v` plus every vertex of
/// `S` that still has a neighbor outside `S`. `best[S]` is the smallest
/// achievable maximum bag over all completions of `S`; the order is then
/// rebuilt greedily, taking the smallest vertex that stays optimal.
pub fn exact_pathwidth_decomposition(g: &Graph) -> Result<PathDecomposition, DecompositionError> {
    let n = g.n();
    if n > EXACT_MAX_VERTICES {
        return Err(DecompositionError::SizeLimitExceeded {
            n,
            limit: EXACT_MAX_VERTICES,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i + 1).fold(0u32, |m, w| m | 1 << (w - 1)))
        .collect();
    let full = (1u32 << n) - 1;
    let boundary = |set: u32| -> Vec<usize> {
        (0..n)
            .filter(|&i| set >> i & 1 == 1 && nbr[i] & !set != 0)
            .collect()
    };
    let boundary_size: Vec<usize> = (0..=full).map(|s| boundary(s).len()).collect();

    let mut best = vec![usize::MAX; (full + 1) as usize];
    best[full as usize] = 0;
    for set in (0..full).rev() {
        let mut b = usize::MAX;
        for v in 0..n {
            if set >> v & 1 == 0 {
                let cost = (boundary_size[set as usize] + 1).max(best[(set | 1 << v) as usize]);
                b = b.min(cost);
            }
        }
        best[set as usize] = b;
    }

    let mut bags = Vec::with_capacity(n);
    let mut set = 0u32;
    while set != full {
        let v = (0..n)
            .find(|&v| {
                set >> v & 1 == 0
                    && (boundary_size[set as usize] + 1).max(best[(set | 1 << v) as usize])
                        == best[set as usize]
            })
            .expect("an optimal extension exists");
        let mut bag: Vec<usize> = boundary(set).into_iter().map(|i| i + 1).collect();
        bag.push(v + 1);
        bag.sort_unstable();
        bags.push(bag);
        set |= 1 << v;
    }
    Ok(PathDecomposition::new(bags))
}
