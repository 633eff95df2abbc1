//! Oracles that share no code with the library's linear algebra: edge-subset
//! enumeration for spanning trees and two-component forests, and a
//! Floyd-Warshall shortest path. Only usable on tiny networks.

#![allow(dead_code)]

use blowup::blowup::{BlowupSpec, HostGraph};
use blowup::netcore::WeightedNetwork;
use blowup::rational::{int, ratio, BigRational};
use num_traits::Zero;
use proptest::prelude::*;

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Sum over acyclic edge subsets with `n - components` edges of the product
/// of conductances. `accept` sees the union-find parent array and decides
/// whether the forest counts.
fn forest_sum(
    net: &WeightedNetwork,
    components: usize,
    accept: impl Fn(&mut [usize]) -> bool,
) -> BigRational {
    let n = net.vertex_count();
    let edges: Vec<(usize, usize, BigRational)> = net
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.conductance.clone()))
        .collect();
    assert!(edges.len() <= 24, "brute force is exponential in edges");
    let mut total = BigRational::zero();
    let parent: Vec<usize> = (0..n).collect();
    walk(
        &edges,
        0,
        n - components,
        parent,
        int(1),
        &accept,
        &mut total,
    );
    total
}

fn walk(
    edges: &[(usize, usize, BigRational)],
    from: usize,
    left: usize,
    parent: Vec<usize>,
    weight: BigRational,
    accept: &impl Fn(&mut [usize]) -> bool,
    total: &mut BigRational,
) {
    if left == 0 {
        let mut p = parent;
        if accept(&mut p) {
            *total += weight;
        }
        return;
    }
    if edges.len() - from < left {
        return;
    }
    let (u, v, c) = &edges[from];
    let mut taken = parent.clone();
    let (a, b) = (find(&mut taken, *u), find(&mut taken, *v));
    if a != b {
        taken[a] = b;
        walk(edges, from + 1, left - 1, taken, &weight * c, accept, total);
    }
    walk(edges, from + 1, left, parent, weight, accept, total);
}

/// Weighted spanning-tree count by enumeration.
pub fn brute_tau(net: &WeightedNetwork) -> BigRational {
    if net.vertex_count() == 1 {
        return int(1);
    }
    forest_sum(net, 1, |_| true)
}

/// Resistance from the two-forest ratio: forests with `u` and `v` in
/// different trees over spanning trees. `None` when the tree sum vanishes.
pub fn brute_resistance(net: &WeightedNetwork, u: usize, v: usize) -> Option<BigRational> {
    let trees = brute_tau(net);
    if trees.is_zero() {
        return None;
    }
    let forests = forest_sum(net, 2, |p| find(p, u) != find(p, v));
    Some(forests / trees)
}

/// Shortest path length with edge lengths 1/conductance (positive only).
pub fn shortest_resistance_path(net: &WeightedNetwork) -> Vec<Vec<Option<BigRational>>> {
    let n = net.vertex_count();
    let mut d: Vec<Vec<Option<BigRational>>> = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(BigRational::zero());
    }
    for e in net.edges() {
        let r = e.resistance();
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            if d[a][b].as_ref().is_none_or(|x| &r < x) {
                d[a][b] = Some(r.clone());
            }
        }
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if let (Some(x), Some(y)) = (d[a][m].clone(), d[m][b].clone()) {
                    let via = x + y;
                    if d[a][b].as_ref().is_none_or(|cur| &via < cur) {
                        d[a][b] = Some(via);
                    }
                }
            }
        }
    }
    d
}

pub fn unit_graph(n: usize, edges: &[(usize, usize)]) -> WeightedNetwork {
    let mut net = WeightedNetwork::new(n);
    for &(a, b) in edges {
        net.add_unit_edge(a, b).unwrap();
    }
    net
}

/// A small nonzero rational, optionally allowed to be negative.
pub fn arb_conductance(negative: bool) -> impl Strategy<Value = BigRational> {
    (1i64..=5, 1i64..=4, any::<bool>()).prop_map(move |(a, b, neg)| {
        let v = ratio(a, b);
        if negative && neg {
            -v
        } else {
            v
        }
    })
}

/// Connected network: a random spanning tree plus extra edges (parallel
/// edges allowed). Conductances positive unless `negative`.
pub fn arb_network(
    min_n: usize,
    max_n: usize,
    max_extra: usize,
    negative: bool,
) -> impl Strategy<Value = WeightedNetwork> {
    (min_n..=max_n).prop_flat_map(move |n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        let extras = prop::collection::vec((0..n, 0..n, arb_conductance(negative)), 0..=max_extra);
        let tree_w = prop::collection::vec(arb_conductance(negative), n - 1);
        (Just(n), parents, tree_w, extras).prop_map(|(n, parents, tree_w, extras)| {
            let mut net = WeightedNetwork::new(n);
            for (v, (p, w)) in parents.into_iter().zip(tree_w).enumerate() {
                net.add_edge(p, v + 1, w).unwrap();
            }
            for (a, b, w) in extras {
                if a != b {
                    net.add_edge(a, b, w).unwrap();
                }
            }
            net
        })
    })
}

/// Random simple unit graph (possibly disconnected).
pub fn arb_unit_graph(max_n: usize) -> impl Strategy<Value = WeightedNetwork> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let chosen: Vec<_> = pairs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(p, _)| *p)
                .collect();
            unit_graph(n, &chosen)
        })
    })
}

pub fn arb_connected_host(max_k: usize) -> impl Strategy<Value = HostGraph> {
    (2..=max_k).prop_flat_map(|k| {
        let parents: Vec<_> = (1..k).map(|v| 0..v).collect();
        let extra = prop::collection::vec(any::<bool>(), k * (k - 1) / 2);
        (Just(k), parents, extra).prop_map(|(k, parents, extra)| {
            let mut edges: Vec<(usize, usize)> = parents
                .into_iter()
                .enumerate()
                .map(|(v, p)| (p, v + 1))
                .collect();
            let pairs = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
            for ((i, j), keep) in pairs.zip(extra) {
                if keep && !edges.contains(&(i, j)) {
                    edges.push((i, j));
                }
            }
            HostGraph::new(k, &edges).unwrap()
        })
    })
}

pub fn arb_spec(k: usize, max_t: u64, max_part: u64) -> impl Strategy<Value = BlowupSpec> {
    let part = (0..=max_part, 0..=max_part).prop_filter("nonempty part", |(p, q)| p + q > 0);
    (1..=max_t, prop::collection::vec(part, k)).prop_map(|(t, parts)| {
        let (p, q) = parts.into_iter().unzip();
        BlowupSpec::new(t, p, q).unwrap()
    })
}

pub fn host_and_spec(
    max_k: usize,
    max_t: u64,
    max_part: u64,
) -> impl Strategy<Value = (HostGraph, BlowupSpec)> {
    arb_connected_host(max_k)
        .prop_flat_map(move |h| (Just(h.clone()), arb_spec(h.k(), max_t, max_part)))
}
