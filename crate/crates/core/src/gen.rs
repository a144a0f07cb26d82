//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{layout_decomposition, PathDecomposition};
use crate::graph::{Graph, PartialGrid};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph: each of the `n(n-1)/2` pairs is an edge with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n).expect("n >= 1");
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("fresh pair");
            }
        }
    }
    g
}

/// Draws [`random_graph`] until the result is connected.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Replaces every vertex weight, selection cost, edge weight and edge
/// penalty by a uniform draw from `1..=max`.
pub fn randomize_weights(rng: &mut impl Rng, g: &mut Graph, max: i64) {
    for v in 1..=g.n() {
        g.set_vertex_weight(v, rng.gen_range(1..=max)).unwrap();
        g.set_selection_cost(v, rng.gen_range(1..=max)).unwrap();
    }
    for (u, v) in g.edges().to_vec() {
        g.set_edge_weight(u, v, rng.gen_range(1..=max)).unwrap();
        g.set_edge_penalty(u, v, rng.gen_range(1..=max)).unwrap();
    }
}

/// A `rows x cols` grid whose cells are missing with probability `missing`;
/// at least one cell stays present.
pub fn random_grid(rng: &mut impl Rng, rows: usize, cols: usize, missing: f64) -> PartialGrid {
    let mut present: Vec<bool> = (0..rows * cols).map(|_| !rng.gen_bool(missing)).collect();
    if !present.iter().any(|&p| p) {
        let i = rng.gen_range(0..present.len());
        present[i] = true;
    }
    PartialGrid::new(rows, cols, present).expect("nonempty grid")
}

/// A valid, usually non-optimal decomposition of `g`: the layout of a random
/// vertex order with every vertex interval stretched at random.
pub fn random_decomposition(rng: &mut impl Rng, g: &Graph) -> PathDecomposition {
    let mut order: Vec<usize> = g.vertices().collect();
    order.shuffle(rng);
    let base = layout_decomposition(g, &order).expect("order is a permutation");
    let len = base.len();
    let mut span = vec![(usize::MAX, 0usize); g.n() + 1];
    for (i, bag) in base.bags().iter().enumerate() {
        for &v in bag {
            span[v].0 = span[v].0.min(i);
            span[v].1 = i;
        }
    }
    for (first, last) in span.iter_mut().skip(1) {
        *first = first.saturating_sub(rng.gen_range(0..=1));
        *last = (*last + rng.gen_range(0..=1)).min(len - 1);
    }
    let mut bags: Vec<Vec<usize>> = (0..len)
        .map(|i| g.vertices().filter(|&v| span[v].0 <= i && i <= span[v].1).collect())
        .collect();
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..len);
        bags.insert(i, bags[i].clone());
    }
    PathDecomposition::new(bags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_reproducible() {
        let a = random_graph(&mut rng(7), 8, 0.4);
        let b = random_graph(&mut rng(7), 8, 0.4);
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn decompositions_are_valid() {
        let mut r = rng(1);
        for _ in 0..50 {
            let n = r.gen_range(1..=9);
            let g = random_graph(&mut r, n, 0.3);
            let pd = random_decomposition(&mut r, &g);
            assert!(pd.validate(&g).is_ok(), "{pd}");
        }
    }

    #[test]
    fn connected_draws() {
        let mut r = rng(3);
        for _ in 0..20 {
            assert!(random_connected_graph(&mut r, 6, 0.3).is_connected());
        }
    }
}
