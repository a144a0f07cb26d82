use pathdp::certificate::{Certificate, Score, Sense};
use pathdp::decomposition::exact_pathwidth_decomposition;
use pathdp::engine::{
    generate_states, reconstruct_solution, run_dp, DpOptions, EngineError, NodeView, Problem, State,
    Trace,
};
use pathdp::plugins::{Coloring, Cover, Mwis};
use pathdp::{Graph, NicePathDecomposition};

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn nice(g: &Graph) -> NicePathDecomposition {
    exact_pathwidth_decomposition(g).unwrap().nicify(g).unwrap()
}

#[test]
fn reconstruction_needs_retained_tables() {
    let g = cycle(5);
    let npd = nice(&g);
    let out = run_dp(&Mwis, &g, &npd, &DpOptions::default()).unwrap();
    assert!(!out.has_tables());
    assert_eq!(
        reconstruct_solution(&Mwis, &g, &npd, &out),
        Err(EngineError::ReconstructionUnavailable)
    );
}

#[test]
fn reconstruction_of_infeasible_run() {
    let g = cycle(5);
    let npd = nice(&g);
    let opts = DpOptions { retain: true, ..DpOptions::default() };
    let out = run_dp(&Coloring::naive(2), &g, &npd, &opts).unwrap();
    assert_eq!(out.score, None);
    assert_eq!(
        reconstruct_solution(&Coloring::naive(2), &g, &npd, &out),
        Err(EngineError::Infeasible)
    );
}

#[test]
fn capacity_limit() {
    let g = cycle(6);
    let npd = nice(&g);
    let opts = DpOptions { capacity: 4, ..DpOptions::default() };
    assert!(matches!(
        run_dp(&Coloring::naive(3), &g, &npd, &opts),
        Err(EngineError::Capacity { limit: 4, .. })
    ));
}

#[test]
fn stats_track_every_node() {
    let g = cycle(6);
    let npd = nice(&g);
    let out = run_dp(&Coloring::canonical(3), &g, &npd, &DpOptions::default()).unwrap();
    assert_eq!(out.stats.table_sizes.len(), npd.len());
    assert_eq!(out.stats.live_states.len(), npd.len());
    assert!(out.stats.max_live_states() <= out.stats.max_table_size());
    assert_eq!(out.stats.table_sizes[npd.len() - 1], 1);
}

#[test]
fn table_dump_format() {
    let g = Graph::from_edges(2, &[(1, 2)]).unwrap();
    let npd = nice(&g);
    let opts = DpOptions { retain: true, ..DpOptions::default() };
    let out = run_dp(&Coloring::naive(2), &g, &npd, &opts).unwrap();
    let mut buf = Vec::new();
    out.dump_tables(&npd, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "node 1 size 2 live 2");
    assert_eq!(lines[1], "state 1 value 1");
    assert!(lines.contains(&"state 1 2 value 1"));
    assert!(!lines.contains(&"state 1 1 value 1"));
}

#[test]
fn state_index_positions() {
    let idx = generate_states(&Cover::paths(), 3, usize::MAX).unwrap();
    for (pos, s) in idx.states().enumerate() {
        assert_eq!(idx.get_state_index(&s), Ok(pos));
    }
    let stray = State::new(vec![2, 2, 2], 0);
    assert!(matches!(idx.get_state_index(&stray), Err(EngineError::UnknownState(_))));
}

/// Expands into a state outside its own enumeration.
struct Broken;

impl Problem for Broken {
    type Action = ();

    fn name(&self) -> &'static str {
        "broken"
    }

    fn sense(&self) -> Sense {
        Sense::Feasibility
    }

    fn domain(&self, _nv: usize) -> (i8, i8) {
        (0, 1)
    }

    fn enumerate_states(&self, nv: usize, emit: &mut dyn FnMut(&State) -> bool) {
        emit(&State::new(vec![0; nv], 0));
    }

    fn base_value(&self) -> i64 {
        0
    }

    fn actions(&self, _node: &NodeView<'_>) -> Vec<()> {
        vec![()]
    }

    fn expand(&self, _state: &State, node: &NodeView<'_>, _: &(), value: i64) -> Option<(State, i64)> {
        Some((State::new(vec![1; node.nv()], 0), value))
    }

    fn final_score(&self, _state: &State, _value: i64) -> Option<Score> {
        Some(Score::Feasible)
    }

    fn certificate(&self, _trace: &Trace<'_, ()>) -> Certificate {
        Certificate::Vertices(vec![])
    }
}

#[test]
fn out_of_index_expansion_is_reported() {
    let g = cycle(3);
    let npd = nice(&g);
    assert!(matches!(
        run_dp(&Broken, &g, &npd, &DpOptions::default()),
        Err(EngineError::PluginInconsistency { node: Some(1), .. })
    ));
}

#[test]
fn threads_agree_on_wide_tables() {
    let mut edges = Vec::new();
    for u in 1..=9 {
        for v in u + 1..=9 {
            if (u * 7 + v * 3) % 4 != 0 {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(9, &edges).unwrap();
    let npd = nice(&g);
    let run = |threads| {
        let opts = DpOptions { threads, chunk: 3, retain: true, ..DpOptions::default() };
        let out = run_dp(&Cover::paths(), &g, &npd, &opts).unwrap();
        let cert = reconstruct_solution(&Cover::paths(), &g, &npd, &out).unwrap();
        (out.score, out.tables(), cert)
    };
    let one = run(1);
    for threads in [2, 4, 8] {
        assert_eq!(run(threads), one);
    }
}
