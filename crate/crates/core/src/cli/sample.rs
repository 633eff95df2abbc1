//! Seeded random instances for the verification sweep.

use rand::seq::SliceRandom;
use rand::Rng;

use super::script::Step;
use crate::blowup::{BlowupSpec, HostGraph};
use crate::formulas::HostFamily;
use crate::netcore::{resistance_matrix, WeightedNetwork};
use crate::rational::{format_rational, ratio, BigRational};
use crate::transforms::TerminalSet;

/// Random simple graph on `k` vertices, each edge present with probability 1/2.
pub fn random_host<R: Rng>(rng: &mut R, k: usize) -> HostGraph {
    let edges: Vec<_> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    HostGraph::new(k, &edges).expect("random host is simple")
}

/// Random connected host on `k >= 2` vertices: a random spanning tree plus
/// random extra edges.
pub fn random_connected_host<R: Rng>(rng: &mut R, k: usize) -> HostGraph {
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for x in 1..k {
        let parent = order[rng.gen_range(0..x)];
        edges.push((parent.min(order[x]), parent.max(order[x])));
    }
    for i in 0..k {
        for j in i + 1..k {
            if !edges.contains(&(i, j)) && rng.gen_bool(0.4) {
                edges.push((i, j));
            }
        }
    }
    HostGraph::new(k, &edges).expect("random host is simple")
}

/// Random `(t, p, q)` with `1 <= t <= max_t` and `p_i, q_i <= max_part`,
/// resampling empty parts.
pub fn random_spec<R: Rng>(rng: &mut R, k: usize, max_t: u64, max_part: u64) -> BlowupSpec {
    let t = rng.gen_range(1..=max_t);
    let mut p = Vec::with_capacity(k);
    let mut q = Vec::with_capacity(k);
    for _ in 0..k {
        loop {
            let (a, b) = (rng.gen_range(0..=max_part), rng.gen_range(0..=max_part));
            if a + b > 0 {
                p.push(a);
                q.push(b);
                break;
            }
        }
    }
    BlowupSpec::new(t, p, q).expect("parts are nonempty")
}

/// A random host family on `k` parts together with its host graph.
pub fn random_family<R: Rng>(rng: &mut R, k: usize) -> Option<HostFamily> {
    match rng.gen_range(0..4) {
        0 => Some(HostFamily::Complete),
        1 if k >= 2 => Some(HostFamily::Star),
        2 if k >= 3 => {
            let mut order: Vec<usize> = (0..k).collect();
            order.shuffle(rng);
            let pairs = rng.gen_range(1..=k / 2);
            let matching = (0..pairs)
                .map(|x| (order[2 * x], order[2 * x + 1]))
                .collect();
            Some(HostFamily::CompleteMinusMatching { matching })
        }
        3 if k >= 2 => Some(HostFamily::CompleteMinusStar {
            d: rng.gen_range(1..k),
        }),
        _ => None,
    }
}

/// Nonzero rational with small numerator and denominator; negative with
/// probability `neg`.
pub fn random_conductance<R: Rng>(rng: &mut R, neg: f64) -> BigRational {
    let num = rng.gen_range(1..=4);
    let den = rng.gen_range(1..=3);
    let v = ratio(num, den);
    if rng.gen_bool(neg) {
        -v
    } else {
        v
    }
}

/// Connected random network on `n` vertices.
fn random_base<R: Rng>(rng: &mut R, n: usize, neg: f64) -> WeightedNetwork {
    let mut net = WeightedNetwork::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        net.add_edge(u, v, random_conductance(rng, neg)).unwrap();
    }
    for _ in 0..rng.gen_range(0..n) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            net.add_edge(a, b, random_conductance(rng, neg)).unwrap();
        }
    }
    net
}

/// Adds `extra` vertices, each tied to a random earlier vertex.
fn grow<R: Rng>(rng: &mut R, net: &mut WeightedNetwork, extra: usize, neg: f64) {
    for _ in 0..extra {
        let anchor = rng.gen_range(0..net.vertex_count());
        let v = net.add_vertex(format!("{}", net.vertex_count()));
        net.add_edge(anchor, v, random_conductance(rng, neg))
            .unwrap();
    }
}

/// A rewrite input: the network, the terminal set and the step to apply.
#[derive(Debug, Clone)]
pub struct RewriteCase {
    pub network: WeightedNetwork,
    pub terminals: Vec<usize>,
    pub step: Step,
}

pub const REWRITE_OPS: [&str; 8] = [
    "series",
    "parallel",
    "delta_to_y",
    "y_to_delta",
    "mesh_to_star",
    "kmn_double_star_edge",
    "kmn_double_star_vertex",
    "eliminate_block",
];

const NEG: f64 = 0.2;

fn attempt<R: Rng>(rng: &mut R, op: usize) -> RewriteCase {
    match op {
        0 => {
            let mut net = {
                let size0 = rng.gen_range(2..=7);
                random_base(rng, size0, NEG)
            };
            let n = net.vertex_count();
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            let w = net.add_vertex("w");
            net.add_edge(a, w, random_conductance(rng, NEG)).unwrap();
            net.add_edge(w, b, random_conductance(rng, NEG)).unwrap();
            RewriteCase {
                terminals: (0..n).collect(),
                network: net,
                step: Step::Series { vertex: w },
            }
        }
        1 => {
            let mut net = {
                let size0 = rng.gen_range(2..=8);
                random_base(rng, size0, NEG)
            };
            let n = net.vertex_count();
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            for _ in 0..rng.gen_range(2..=3) {
                net.add_edge(u, v, random_conductance(rng, NEG)).unwrap();
            }
            RewriteCase {
                terminals: (0..n).collect(),
                network: net,
                step: Step::Parallel { u, v },
            }
        }
        2 => {
            let mut net = WeightedNetwork::new(3);
            for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                net.add_edge(a, b, random_conductance(rng, NEG)).unwrap();
            }
            let extra = rng.gen_range(0..=6);
            grow(rng, &mut net, extra, NEG);
            RewriteCase {
                terminals: (0..net.vertex_count()).collect(),
                network: net,
                step: Step::DeltaToY {
                    triangle: [0, 1, 2],
                },
            }
        }
        3 => {
            let mut net = {
                let size0 = rng.gen_range(3..=8);
                random_base(rng, size0, NEG)
            };
            let n = net.vertex_count();
            let mut pick: Vec<usize> = (0..n).collect();
            pick.shuffle(rng);
            let c = net.add_vertex("c");
            for &x in &pick[..3] {
                net.add_edge(x, c, random_conductance(rng, NEG)).unwrap();
            }
            RewriteCase {
                terminals: (0..n).collect(),
                network: net,
                step: Step::YToDelta { center: c },
            }
        }
        4 => {
            let size = rng.gen_range(2..=5);
            let mut net = WeightedNetwork::new(size);
            for a in 0..size {
                for b in a + 1..size {
                    net.add_unit_edge(a, b).unwrap();
                }
            }
            let extra = rng.gen_range(0..=(9 - size));
            grow(rng, &mut net, extra, NEG);
            RewriteCase {
                terminals: (0..net.vertex_count()).collect(),
                network: net,
                step: Step::MeshToStar {
                    clique: (0..size).collect(),
                },
            }
        }
        5 | 6 => {
            let m = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=3);
            let mut net = WeightedNetwork::new(m + k);
            let xs: Vec<usize> = (0..m).collect();
            let ys: Vec<usize> = (m..m + k).collect();
            let wy: Vec<BigRational> = (0..k).map(|_| random_conductance(rng, NEG)).collect();
            let wx: Vec<BigRational> = if op == 5 {
                vec![ratio(1, 1); m]
            } else {
                (0..m).map(|_| random_conductance(rng, NEG)).collect()
            };
            for (i, &x) in xs.iter().enumerate() {
                for (j, &y) in ys.iter().enumerate() {
                    net.add_edge(x, y, &wx[i] * &wy[j]).unwrap();
                }
            }
            let extra = rng.gen_range(0..=(8 - m - k));
            grow(rng, &mut net, extra, NEG);
            let strs = |v: &[BigRational]| v.iter().map(format_rational).collect::<Vec<_>>();
            let step = if op == 5 {
                Step::KmnDoubleStarEdge {
                    xs,
                    ys,
                    a: strs(&wy),
                }
            } else {
                Step::KmnDoubleStarVertex {
                    xs,
                    ys,
                    x_weights: strs(&wx),
                    y_weights: strs(&wy),
                }
            };
            RewriteCase {
                terminals: (0..net.vertex_count()).collect(),
                network: net,
                step,
            }
        }
        _ => {
            let mut net = {
                let size0 = rng.gen_range(1..=6);
                random_base(rng, size0, NEG)
            };
            let n = net.vertex_count();
            let cut = rng.gen_range(0..n);
            let size = rng.gen_range(1..=3);
            let block: Vec<usize> = (0..size).map(|x| net.add_vertex(format!("b{x}"))).collect();
            for (x, &b) in block.iter().enumerate() {
                let anchor = if x == 0 {
                    cut
                } else {
                    block[rng.gen_range(0..x)]
                };
                net.add_edge(anchor, b, random_conductance(rng, NEG))
                    .unwrap();
                if rng.gen_bool(0.5) {
                    net.add_edge(cut, b, random_conductance(rng, NEG)).unwrap();
                }
            }
            let mut listed = block.clone();
            listed.push(cut);
            RewriteCase {
                terminals: (0..n).collect(),
                network: net,
                step: Step::EliminateBlock { block: listed, cut },
            }
        }
    }
}

/// A valid random input for rewrite `op` (index into [`REWRITE_OPS`]):
/// terminal resistances are defined and the rewrite's preconditions hold.
/// Gives up after a bounded number of draws.
pub fn random_rewrite<R: Rng>(rng: &mut R, op: usize) -> Option<RewriteCase> {
    for _ in 0..200 {
        let case = attempt(rng, op);
        if resistance_matrix(&case.network).is_err() {
            continue;
        }
        let Ok(t) = TerminalSet::new(&case.network, case.terminals.iter().copied()) else {
            continue;
        };
        if case.step.apply(&case.network, &t).is_ok() {
            return Some(case);
        }
    }
    None
}
