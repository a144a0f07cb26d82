use super::*;
use crate::certificate::Placement;

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).unwrap()
}

fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    graph(n, &edges)
}

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
    graph(n, &edges)
}

fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            edges.push((u, v));
        }
    }
    graph(n, &edges)
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i + 1, (i + 1) % 5 + 1));
        edges.push((i + 1, i + 6));
        edges.push((i + 6, (i + 2) % 5 + 6));
    }
    graph(10, &edges)
}

fn opts() -> SolveOptions {
    SolveOptions {
        reconstruct: true,
        ..SolveOptions::default()
    }
}

fn score(spec: ProblemSpec, g: &Graph) -> Option<Score> {
    solve(&spec, &Instance::from_graph(g.clone()), &opts()).unwrap().score
}

fn value(spec: ProblemSpec, g: &Graph) -> Option<i64> {
    score(spec, g).map(|s| match s {
        Score::Value(v) => v,
        other => panic!("unexpected score {other}"),
    })
}

fn certificate(spec: ProblemSpec, g: &Graph) -> Certificate {
    solve(&spec, &Instance::from_graph(g.clone()), &opts())
        .unwrap()
        .certificate
        .expect("feasible instance")
}

#[test]
fn coloring_examples() {
    for canonical in [false, true] {
        let spec = |colors| {
            if canonical {
                ProblemSpec::ColoringCanonical { colors }
            } else {
                ProblemSpec::Coloring { colors }
            }
        };
        assert_eq!(score(spec(3), &complete(3)), Some(Score::Feasible));
        assert_eq!(score(spec(2), &complete(3)), None);
        assert_eq!(score(spec(3), &petersen()), Some(Score::Feasible));
        assert_eq!(score(spec(2), &petersen()), None);
    }
}

#[test]
fn coloring_certificate_is_proper() {
    let g = petersen();
    for spec in [ProblemSpec::Coloring { colors: 3 }, ProblemSpec::ColoringCanonical { colors: 3 }] {
        let Certificate::Coloring(colors) = certificate(spec, &g) else {
            panic!("expected a coloring");
        };
        assert!(colors.iter().all(|&c| (1..=3).contains(&c)));
        for &(u, v) in g.edges() {
            assert_ne!(colors[u - 1], colors[v - 1]);
        }
    }
}

#[test]
fn chromatic_numbers() {
    let chi = |g: &Graph| {
        let npd = exact_pathwidth_decomposition(g).unwrap().nicify(g).unwrap();
        chromatic_number(g, &npd).unwrap()
    };
    assert_eq!(chi(&Graph::new(4).unwrap()), 1);
    assert_eq!(chi(&complete(4)), 4);
    assert_eq!(chi(&cycle(5)), 3);
    assert_eq!(chi(&cycle(6)), 2);
}

#[test]
fn penalty_coloring_examples() {
    let mut g = complete(3);
    g.set_edge_penalty(1, 2, 1).unwrap();
    g.set_edge_penalty(2, 3, 2).unwrap();
    g.set_edge_penalty(1, 3, 3).unwrap();
    let spec = |mode| ProblemSpec::PenaltyColoring { colors: 2, mode };
    assert_eq!(value(spec(PenaltyMode::Sum), &g), Some(1));
    assert_eq!(value(spec(PenaltyMode::Max), &g), Some(1));
    let free = ProblemSpec::PenaltyColoring { colors: 3, mode: PenaltyMode::Sum };
    assert_eq!(value(free, &g), Some(0));
}

#[test]
fn path_cover_examples() {
    assert_eq!(value(ProblemSpec::PathCover, &path(4)), Some(1));
    assert_eq!(value(ProblemSpec::PathCover, &graph(4, &[(1, 2), (1, 3), (1, 4)])), Some(2));
    assert_eq!(value(ProblemSpec::PathCover, &Graph::new(3).unwrap()), Some(3));
    assert_eq!(
        certificate(ProblemSpec::PathCover, &path(4)),
        Certificate::Edges(vec![(1, 2), (2, 3), (3, 4)])
    );
}

#[test]
fn cycle_cover_examples() {
    assert_eq!(value(ProblemSpec::CycleCover, &cycle(3)), Some(1));
    assert_eq!(value(ProblemSpec::CycleCover, &path(3)), None);
    let two = graph(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]);
    assert_eq!(value(ProblemSpec::CycleCover, &two), Some(2));
    assert_eq!(value(ProblemSpec::CycleCover, &Graph::new(2).unwrap()), None);
    assert_eq!(value(ProblemSpec::CycleCover, &complete(6)), Some(1));
}

#[test]
fn replica_examples() {
    let mut k2 = complete(2);
    k2.set_edge_penalty(1, 2, 5).unwrap();
    assert_eq!(value(ProblemSpec::KReplica { k: 2 }, &k2), Some(7));
    assert_eq!(certificate(ProblemSpec::KReplica { k: 2 }, &k2), Certificate::Vertices(vec![1, 2]));

    let mut p3 = path(3);
    p3.set_edge_penalty(1, 2, 10).unwrap();
    p3.set_edge_penalty(2, 3, 10).unwrap();
    assert_eq!(value(ProblemSpec::KReplica { k: 2 }, &p3), Some(2));
    assert_eq!(certificate(ProblemSpec::KReplica { k: 2 }, &p3), Certificate::Vertices(vec![1, 3]));

    p3.set_selection_cost(1, 4).unwrap();
    p3.set_selection_cost(2, 3).unwrap();
    p3.set_selection_cost(3, 6).unwrap();
    assert_eq!(value(ProblemSpec::KReplica { k: 1 }, &p3), Some(3));
}

#[test]
fn replica_rejects_bad_k() {
    let err = solve(&ProblemSpec::KReplica { k: 4 }, &Instance::from_graph(path(3)), &opts());
    assert!(matches!(err, Err(SolveError::InvalidParameter(_))));
}

#[test]
fn max_leaf_tree_examples() {
    assert_eq!(value(ProblemSpec::MaxLeafTree, &graph(4, &[(1, 2), (1, 3), (1, 4)])), Some(3));
    assert_eq!(value(ProblemSpec::MaxLeafTree, &path(3)), Some(2));
    assert_eq!(value(ProblemSpec::MaxLeafTree, &complete(4)), Some(3));
    assert_eq!(value(ProblemSpec::MaxLeafTree, &path(2)), Some(2));
    assert_eq!(value(ProblemSpec::MaxLeafTree, &graph(4, &[(1, 2), (3, 4)])), None);
    let single = solve(&ProblemSpec::MaxLeafTree, &Instance::from_graph(path(1)), &opts());
    assert!(matches!(single, Err(SolveError::InvalidParameter(_))));
}

#[test]
fn max_leaf_tree_certificate_spans() {
    let Certificate::Edges(edges) = certificate(ProblemSpec::MaxLeafTree, &complete(5)) else {
        panic!("expected edges");
    };
    assert_eq!(edges.len(), 4);
}

#[test]
fn maximal_matching_examples() {
    let mut e = path(2);
    e.set_edge_weight(1, 2, 5).unwrap();
    assert_eq!(value(ProblemSpec::MinMaximalMatching, &e), Some(5));

    let mut p3 = path(3);
    p3.set_edge_weight(1, 2, 1).unwrap();
    p3.set_edge_weight(2, 3, 2).unwrap();
    assert_eq!(value(ProblemSpec::MinMaximalMatching, &p3), Some(1));

    let mut p4 = path(4);
    p4.set_edge_weight(1, 2, 1).unwrap();
    p4.set_edge_weight(2, 3, 5).unwrap();
    p4.set_edge_weight(3, 4, 1).unwrap();
    assert_eq!(value(ProblemSpec::MinMaximalMatching, &p4), Some(2));

    assert_eq!(value(ProblemSpec::MinMaximalMatching, &Graph::new(3).unwrap()), Some(0));
}

#[test]
fn maximal_matching_late_partner() {
    // the cheap edge's endpoint 2 is matched only after vertex 1 leaves the bag
    let mut p3 = path(3);
    p3.set_edge_weight(1, 2, 5).unwrap();
    p3.set_edge_weight(2, 3, 1).unwrap();
    assert_eq!(value(ProblemSpec::MinMaximalMatching, &p3), Some(1));
    assert_eq!(
        certificate(ProblemSpec::MinMaximalMatching, &p3),
        Certificate::Edges(vec![(2, 3)])
    );
}

#[test]
fn avg_path_examples() {
    let mut p3 = path(3);
    p3.set_vertex_weight(1, 1).unwrap();
    p3.set_vertex_weight(2, 10).unwrap();
    p3.set_vertex_weight(3, 1).unwrap();
    let avg = |lower, upper| score(ProblemSpec::AvgPath { lower, upper }, &p3);
    assert_eq!(avg(1, 1), Some(Score::Average { sum: 10, count: 1 }));
    assert_eq!(avg(1, 3), Some(Score::Average { sum: 10, count: 1 }));
    assert_eq!(avg(2, 2), Some(Score::Average { sum: 11, count: 2 }));
    assert_eq!(avg(3, 3), Some(Score::Average { sum: 12, count: 3 }));
    assert_eq!(
        certificate(ProblemSpec::AvgPath { lower: 3, upper: 3 }, &p3),
        Certificate::Path(vec![1, 2, 3])
    );
}

#[test]
fn avg_path_needs_a_long_enough_path() {
    let g = graph(4, &[(1, 2), (3, 4)]);
    assert_eq!(score(ProblemSpec::AvgPath { lower: 3, upper: 4 }, &g), None);
    let star = graph(4, &[(1, 2), (1, 3), (1, 4)]);
    assert_eq!(score(ProblemSpec::AvgPath { lower: 4, upper: 4 }, &star), None);
    assert_eq!(
        score(ProblemSpec::AvgPath { lower: 3, upper: 4 }, &star),
        Some(Score::Average { sum: 3, count: 3 })
    );
}

fn rect(grid: PartialGrid, pieces: &[(usize, usize)]) -> Solution {
    let spec = ProblemSpec::RectCover { pieces: pieces.to_vec() };
    solve(&spec, &Instance::from_grid(grid), &opts()).unwrap()
}

#[test]
fn rect_cover_examples() {
    assert_eq!(rect(PartialGrid::full(2, 2).unwrap(), &[(1, 1)]).score, Some(Score::Value(4)));
    assert_eq!(rect(PartialGrid::full(2, 3).unwrap(), &[(2, 2)]).score, Some(Score::Value(1)));
    let mut holed = PartialGrid::full(2, 2).unwrap();
    holed.set_present((1, 2), false).unwrap();
    assert_eq!(rect(holed, &[(2, 2)]).score, Some(Score::Value(0)));
}

#[test]
fn rect_cover_orientation() {
    // a 1x3 bar fits a 3-wide row but never a column
    let wide = rect(PartialGrid::full(2, 3).unwrap(), &[(1, 3)]);
    assert_eq!(wide.score, Some(Score::Value(2)));
    assert_eq!(
        wide.certificate,
        Some(Certificate::Placements(vec![
            Placement { piece: 0, row: 1, col: 3 },
            Placement { piece: 0, row: 2, col: 3 },
        ]))
    );
    let tall = rect(PartialGrid::full(4, 3).unwrap(), &[(3, 1)]);
    assert_eq!(tall.score, Some(Score::Value(3)));
}

#[test]
fn rect_cover_rejects_wide_piece() {
    let spec = ProblemSpec::RectCover { pieces: vec![(1, 4)] };
    let err = solve(&spec, &Instance::from_grid(PartialGrid::full(3, 3).unwrap()), &opts());
    assert!(matches!(err, Err(SolveError::Piece(PieceError::TooWide { .. }))));
}

#[test]
fn mwis_examples() {
    let mut one = Graph::new(1).unwrap();
    one.set_vertex_weight(1, 7).unwrap();
    assert_eq!(value(ProblemSpec::Mwis, &one), Some(7));
    let mut k2 = complete(2);
    k2.set_vertex_weight(1, 3).unwrap();
    k2.set_vertex_weight(2, 4).unwrap();
    assert_eq!(value(ProblemSpec::Mwis, &k2), Some(4));
    assert_eq!(certificate(ProblemSpec::Mwis, &k2), Certificate::Vertices(vec![2]));
    assert_eq!(value(ProblemSpec::Mwis, &cycle(5)), Some(2));
}

#[test]
fn catalan_pruning_only_on_grid_covers() {
    let instance = Instance::from_graph(path(4));
    let prune = SolveOptions {
        prune_catalan: true,
        ..SolveOptions::default()
    };
    assert!(matches!(
        solve(&ProblemSpec::PathCover, &instance, &prune),
        Err(SolveError::Engine(EngineError::NotApplicable(_)))
    ));
    let grid = Instance::from_grid(PartialGrid::full(3, 3).unwrap());
    assert!(matches!(
        solve(&ProblemSpec::Mwis, &grid, &prune),
        Err(SolveError::Engine(EngineError::NotApplicable(_)))
    ));
    let pruned = solve(&ProblemSpec::PathCover, &grid, &prune).unwrap();
    let plain = solve(&ProblemSpec::PathCover, &grid, &SolveOptions::default()).unwrap();
    assert_eq!(pruned.score, Some(Score::Value(1)));
    assert_eq!(plain.score, pruned.score);
    assert!(pruned.stats.max_table_size() <= plain.stats.max_table_size());
}

#[test]
fn state_counts() {
    assert_eq!(state_count(&ProblemSpec::ColoringCanonical { colors: 7 }, 9, DEFAULT_CAPACITY).unwrap(), 21_110);
    assert_eq!(state_count(&ProblemSpec::Coloring { colors: 3 }, 5, DEFAULT_CAPACITY).unwrap(), 243);
    assert_eq!(state_count(&ProblemSpec::PathCover, 8, DEFAULT_CAPACITY).unwrap(), 47_868);
    assert_eq!(state_count(&ProblemSpec::CycleCover, 8, DEFAULT_CAPACITY).unwrap(), 7_193);
    assert_eq!(state_count(&ProblemSpec::MaxLeafTree, 6, DEFAULT_CAPACITY).unwrap(), 27_509);
    assert!(state_count(&ProblemSpec::Coloring { colors: 7 }, 9, 1000).is_err());
}

#[test]
fn names_match_specs() {
    let specs = [
        ProblemSpec::Coloring { colors: 1 },
        ProblemSpec::ColoringCanonical { colors: 1 },
        ProblemSpec::PenaltyColoring { colors: 1, mode: PenaltyMode::Sum },
        ProblemSpec::PathCover,
        ProblemSpec::CycleCover,
        ProblemSpec::KReplica { k: 1 },
        ProblemSpec::MaxLeafTree,
        ProblemSpec::MinMaximalMatching,
        ProblemSpec::AvgPath { lower: 1, upper: 1 },
        ProblemSpec::RectCover { pieces: vec![(1, 1)] },
        ProblemSpec::Mwis,
    ];
    let names: Vec<_> = specs.iter().map(ProblemSpec::name).collect();
    assert_eq!(names, PLUGIN_NAMES);
}
