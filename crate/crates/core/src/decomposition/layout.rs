use crate::graph::Graph;

use super::{DecompositionError, PathDecomposition};

/// Decomposition induced by a linear vertex order: bag `i` holds the `i`-th
/// vertex plus every earlier vertex with a neighbor at position `i` or later.
pub fn layout_decomposition(g: &Graph, order: &[usize]) -> Result<PathDecomposition, DecompositionError> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n + 1];
    for (i, &v) in order.iter().enumerate() {
        if v == 0 || v > n {
            return Err(DecompositionError::VertexOutOfRange { vertex: v, n });
        }
        if pos[v] != usize::MAX {
            return Err(DecompositionError::DuplicateInBag(v));
        }
        pos[v] = i;
    }
    if let Some(v) = g.vertices().find(|&v| pos[v] == usize::MAX) {
        return Err(DecompositionError::MissingVertex(v));
    }
    let reach: Vec<usize> = (0..=n)
        .map(|v| {
            if v == 0 {
                return 0;
            }
            g.neighbors(v).map(|u| pos[u]).fold(pos[v], usize::max)
        })
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut open: Vec<usize> = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        open.retain(|&u| reach[u] >= i);
        let mut bag = open.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        open.push(v);
    }
    Ok(PathDecomposition::new(bags))
}

/// [`layout_decomposition`] over the vertex order `1..=n`.
pub fn natural_decomposition(g: &Graph) -> PathDecomposition {
    let order: Vec<usize> = g.vertices().collect();
    layout_decomposition(g, &order).expect("identity order is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_in_order_has_width_one() {
        let edges: Vec<_> = (1..10).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(10, &edges).unwrap();
        assert_eq!(natural_decomposition(&g).validate(&g), Ok(1));
    }

    #[test]
    fn star_from_center() {
        let g = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let pd = layout_decomposition(&g, &[1, 2, 3, 4]).unwrap();
        assert_eq!(pd.bags(), &[vec![1], vec![1, 2], vec![1, 3], vec![1, 4]]);
    }

    #[test]
    fn bad_orders() {
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(layout_decomposition(&g, &[1, 2]), Err(DecompositionError::MissingVertex(3)));
        assert_eq!(layout_decomposition(&g, &[1, 1, 2]), Err(DecompositionError::DuplicateInBag(1)));
    }
}
