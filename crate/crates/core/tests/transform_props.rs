mod common;

use blowup::cli::sample::{random_rewrite, REWRITE_OPS};
use blowup::netcore::{resistance, WeightedNetwork};
use blowup::rational::{int, ratio, BigRational};
use blowup::transforms::{
    delta_to_y, eliminate_block, kmn_double_star_edge, mesh_to_star, series_reduce, y_to_delta,
    TerminalSet,
};
use blowup::Error;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn edge_resistances(net: &WeightedNetwork) -> Vec<(usize, usize, BigRational)> {
    let mut v: Vec<_> = net
        .edges()
        .iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v), e.resistance()))
        .collect();
    v.sort();
    v
}

fn assert_s_equivalent(op: usize, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let case = random_rewrite(&mut rng, op).expect("generator finds a valid input");
    prop_assert!(case.network.vertex_count() <= 10);
    let t = TerminalSet::new(&case.network, case.terminals.iter().copied()).unwrap();
    let out = case.step.apply(&case.network, &t).unwrap();
    let ts: Vec<usize> = t.iter().collect();
    for (x, &a) in ts.iter().enumerate() {
        for &b in &ts[x + 1..] {
            prop_assert_eq!(
                resistance(&case.network, a, b).unwrap(),
                resistance(&out.network, out.terminal_map[&a], out.terminal_map[&b]).unwrap(),
                "{} seed {} pair ({}, {})",
                REWRITE_OPS[op],
                seed,
                a,
                b
            );
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn series_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(0, seed)?; }
    #[test]
    fn parallel_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(1, seed)?; }
    #[test]
    fn delta_to_y_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(2, seed)?; }
    #[test]
    fn y_to_delta_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(3, seed)?; }
    #[test]
    fn mesh_to_star_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(4, seed)?; }
    #[test]
    fn double_star_edge_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(5, seed)?; }
    #[test]
    fn double_star_vertex_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(6, seed)?; }
    #[test]
    fn eliminate_block_preserves_terminal_resistance(seed in any::<u64>()) { assert_s_equivalent(7, seed)?; }

    #[test]
    fn delta_y_round_trip(
        a in arb_conductance(true),
        b in arb_conductance(true),
        c in arb_conductance(true),
    ) {
        let mut net = WeightedNetwork::new(3);
        net.add_edge(0, 1, a).unwrap();
        net.add_edge(1, 2, b).unwrap();
        net.add_edge(0, 2, c).unwrap();
        let all = TerminalSet::all(&net);
        let Ok(y) = delta_to_y(&net, [0, 1, 2], &all) else { return Ok(()); };
        let hub = y.hubs[0];
        let ts = TerminalSet::new(&y.network, [0, 1, 2].map(|v| y.terminal_map[&v])).unwrap();
        let back = y_to_delta(&y.network, hub, &ts).unwrap();
        let relabel: Vec<usize> = (0..3).map(|v| back.terminal_map[&y.terminal_map[&v]]).collect();
        let mut restored: Vec<_> = edge_resistances(&back.network)
            .into_iter()
            .map(|(u, v, r)| {
                let (u, v) = (relabel.iter().position(|&x| x == u).unwrap(), relabel.iter().position(|&x| x == v).unwrap());
                (u.min(v), u.max(v), r)
            })
            .collect();
        restored.sort();
        prop_assert_eq!(restored, edge_resistances(&net));
    }
}

#[test]
fn mesh_of_three_is_delta_to_y() {
    let tri = unit_graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let all = TerminalSet::all(&tri);
    let a = mesh_to_star(&tri, &[0, 1, 2], &all).unwrap();
    let b = delta_to_y(&tri, [0, 1, 2], &all).unwrap();
    assert_eq!(a.network.vertex_count(), b.network.vertex_count());
    assert_eq!(edge_resistances(&a.network), edge_resistances(&b.network));
    assert!(edge_resistances(&a.network)
        .iter()
        .all(|(_, _, r)| *r == ratio(1, 3)));
}

#[test]
fn double_star_on_unit_k22() {
    let net = unit_graph(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
    let all = TerminalSet::all(&net);
    let out = kmn_double_star_edge(&net, &[0, 1], &[2, 3], &[int(1), int(1)], &all).unwrap();
    assert!(out.network.edges().iter().any(|e| e.conductance < int(0)));
    assert_eq!(resistance(&net, 0, 2).unwrap(), ratio(3, 4));
    assert_eq!(
        resistance(&out.network, out.terminal_map[&0], out.terminal_map[&2]).unwrap(),
        ratio(3, 4)
    );
}

#[test]
fn preconditions_are_reported() {
    let path = unit_graph(3, &[(0, 1), (1, 2)]);
    let all = TerminalSet::all(&path);
    assert!(matches!(
        series_reduce(&path, 1, &all),
        Err(Error::VertexIsTerminal(1))
    ));
    let ends = TerminalSet::new(&path, [0, 2]).unwrap();
    assert!(matches!(
        series_reduce(&path, 0, &ends),
        Err(Error::VertexIsTerminal(0))
    ));
    let star = unit_graph(4, &[(0, 1), (0, 2), (0, 3)]);
    let leaves = TerminalSet::new(&star, [1, 2, 3]).unwrap();
    assert!(matches!(
        series_reduce(&star, 0, &leaves),
        Err(Error::DegreeNotTwo {
            vertex: 0,
            degree: 3
        })
    ));
    assert!(matches!(
        delta_to_y(&path, [0, 1, 2], &all),
        Err(Error::NotATriangle(_))
    ));
    assert!(TerminalSet::new(&path, [7]).is_err());
    // pendant block {1, 2} hanging off cut vertex 0, but 2 is a terminal
    assert!(eliminate_block(&path, &[0, 1, 2], 0, &all).is_err());
    let only_root = TerminalSet::new(&path, [0]).unwrap();
    let out = eliminate_block(&path, &[0, 1, 2], 0, &only_root).unwrap();
    assert_eq!(out.network.vertex_count(), 1);
}
