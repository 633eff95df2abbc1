//! Weighted multigraphs with exact conductances, their Laplacians, and the
//! two ground-truth oracles every closed form is checked against: the
//! matrix-tree determinant and the grounded-Laplacian resistance solve.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, BigRational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub conductance: BigRational,
}

impl Edge {
    pub fn resistance(&self) -> BigRational {
        self.conductance.recip()
    }

    pub fn joins(&self, a: usize, b: usize) -> bool {
        (self.u == a && self.v == b) || (self.u == b && self.v == a)
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Loopless multigraph whose edges carry nonzero (possibly negative)
/// conductances. Parallel edges are kept as separate entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedNetwork {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

impl WeightedNetwork {
    /// `n` vertices labelled `"0"`..`"n-1"`, no edges.
    pub fn new(n: usize) -> Self {
        Self {
            labels: (0..n).map(|i| i.to_string()).collect(),
            edges: Vec::new(),
        }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        Self {
            labels,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count(),
            })
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, conductance: BigRational) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if conductance.is_zero() {
            return Err(Error::ZeroConductance { u, v });
        }
        self.edges.push(Edge { u, v, conductance });
        Ok(())
    }

    /// Adds an edge specified by its resistance.
    pub fn add_resistor(&mut self, u: usize, v: usize, resistance: BigRational) -> Result<()> {
        if resistance.is_zero() {
            return Err(Error::ZeroResistanceEdge(u, v));
        }
        self.add_edge(u, v, resistance.recip())
    }

    pub fn add_unit_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.add_edge(u, v, BigRational::one())
    }

    /// Number of edge ends at `v` (parallel edges counted separately).
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn incident(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.touches(v))
    }

    pub fn edges_between(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.joins(a, b))
    }

    /// Total conductance between `a` and `b` over all parallel edges.
    pub fn conductance_between(&self, a: usize, b: usize) -> BigRational {
        self.edges_between(a, b)
            .fold(BigRational::zero(), |acc, (_, e)| acc + &e.conductance)
    }

    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.incident(v).map(|(_, e)| e.other(v)).collect()
    }

    /// Drops the edges whose indices are in `indices`.
    pub fn remove_edges(&mut self, indices: &BTreeSet<usize>) {
        let mut i = 0;
        self.edges.retain(|_| {
            let keep = !indices.contains(&i);
            i += 1;
            keep
        });
    }

    /// Deletes the given vertices and their incident edges. Returns the new
    /// network and the old-to-new index map (`None` for deleted vertices).
    pub fn remove_vertices(&self, doomed: &BTreeSet<usize>) -> (Self, Vec<Option<usize>>) {
        let mut map = Vec::with_capacity(self.vertex_count());
        let mut labels = Vec::new();
        for (v, label) in self.labels.iter().enumerate() {
            if doomed.contains(&v) {
                map.push(None);
            } else {
                map.push(Some(labels.len()));
                labels.push(label.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    u: map[e.u]?,
                    v: map[e.v]?,
                    conductance: e.conductance.clone(),
                })
            })
            .collect();
        (Self { labels, edges }, map)
    }

    /// The sub-network induced on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut map = vec![None; self.vertex_count()];
        for (new, &old) in vertices.iter().enumerate() {
            map[old] = Some(new);
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    u: map[e.u]?,
                    v: map[e.v]?,
                    conductance: e.conductance.clone(),
                })
            })
            .collect();
        Self { labels, edges }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when every edge has positive conductance.
    pub fn is_positive(&self) -> bool {
        self.edges.iter().all(|e| e.conductance.is_positive())
    }
}

/// Dense weighted Laplacian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl LaplacianMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.entries
    }

    /// The matrix with row and column `drop` removed.
    pub fn reduced(&self, drop: usize) -> Vec<Vec<BigRational>> {
        self.entries
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != drop)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != drop)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect()
    }

    /// Principal cofactor at `i` (equal for every `i` by the matrix-tree theorem).
    pub fn cofactor(&self, i: usize) -> BigRational {
        linalg::determinant(&self.reduced(i))
    }
}

pub fn laplacian(net: &WeightedNetwork) -> LaplacianMatrix {
    let n = net.vertex_count();
    let mut entries = vec![vec![BigRational::zero(); n]; n];
    for e in net.edges() {
        let c = &e.conductance;
        entries[e.u][e.u] += c;
        entries[e.v][e.v] += c;
        entries[e.u][e.v] -= c;
        entries[e.v][e.u] -= c;
    }
    LaplacianMatrix { entries }
}

/// Weighted spanning-tree sum, computed as a principal cofactor of the
/// Laplacian. Zero iff the network is disconnected (for positive weights).
pub fn tau_matrix_tree(net: &WeightedNetwork) -> BigRational {
    match net.vertex_count() {
        0 | 1 => BigRational::one(),
        n => laplacian(net).cofactor(n - 1),
    }
}

fn check_pair(net: &WeightedNetwork, u: usize, v: usize) -> Result<()> {
    let count = net.vertex_count();
    for x in [u, v] {
        if x >= count {
            return Err(Error::VertexOutOfRange { vertex: x, count });
        }
    }
    if u == v {
        return Err(Error::SameVertex(u));
    }
    Ok(())
}

/// Effective resistance between `u` and `v`: ground `v`, inject a unit
/// current at `u`, read off the potential at `u`.
pub fn resistance(net: &WeightedNetwork, u: usize, v: usize) -> Result<BigRational> {
    check_pair(net, u, v)?;
    let comp = net
        .components()
        .into_iter()
        .find(|c| c.binary_search(&u).is_ok())
        .expect("every vertex lies in a component");
    if comp.binary_search(&v).is_err() {
        return Err(Error::DisconnectedPair(u, v));
    }
    let sub = net.induced(&comp);
    let su = comp.binary_search(&u).unwrap();
    let sv = comp.binary_search(&v).unwrap();
    let grounded = laplacian(&sub).reduced(sv);
    let row = if su < sv { su } else { su - 1 };
    let rhs: Vec<Vec<BigRational>> = (0..grounded.len())
        .map(|i| vec![if i == row { int(1) } else { int(0) }])
        .collect();
    let x = linalg::solve(&grounded, &rhs).ok_or(Error::SingularSystem)?;
    Ok(x[row][0].clone())
}

/// All-pairs resistance matrix of a connected network from one inverse of
/// the grounded Laplacian.
pub fn resistance_matrix(net: &WeightedNetwork) -> Result<Vec<Vec<BigRational>>> {
    let n = net.vertex_count();
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    if !net.is_connected() {
        return Err(Error::Disconnected);
    }
    let ground = n - 1;
    let inv = linalg::inverse(&laplacian(net).reduced(ground)).ok_or(Error::SingularSystem)?;
    let gamma = |i: usize, j: usize| -> BigRational {
        if i == ground || j == ground {
            BigRational::zero()
        } else {
            inv[i][j].clone()
        }
    };
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let r = gamma(i, i) + gamma(j, j) - gamma(i, j) - gamma(j, i);
            out[i][j] = r.clone();
            out[j][i] = r;
        }
    }
    Ok(out)
}

/// Kirchhoff index as the sum of resistances over unordered pairs.
pub fn kf_pair_sum(net: &WeightedNetwork) -> Result<BigRational> {
    let r = resistance_matrix(net)?;
    Ok(r.iter()
        .enumerate()
        .flat_map(|(i, row)| row[i + 1..].iter())
        .fold(BigRational::zero(), |acc, x| acc + x))
}

/// `n * sum(1/lambda)` over the nonzero Laplacian spectrum.
pub fn kf_spectral_check(eigen_reciprocal_sum: &BigRational, n: usize) -> BigRational {
    eigen_reciprocal_sum * int(n as i64)
}

/// Wire form of a network: labels plus edges with conductances as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub conductance: String,
}

impl From<&WeightedNetwork> for NetworkFile {
    fn from(net: &WeightedNetwork) -> Self {
        Self {
            vertices: net.labels.clone(),
            edges: net
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    u: e.u,
                    v: e.v,
                    conductance: crate::rational::format_rational(&e.conductance),
                })
                .collect(),
        }
    }
}

impl TryFrom<NetworkFile> for WeightedNetwork {
    type Error = String;

    fn try_from(file: NetworkFile) -> std::result::Result<Self, String> {
        if file.vertices.is_empty() {
            return Err("network has no vertices".into());
        }
        let mut net = WeightedNetwork::with_labels(file.vertices);
        for (i, e) in file.edges.into_iter().enumerate() {
            let c = crate::rational::parse_rational(&e.conductance)
                .ok_or_else(|| format!("edge {i}: bad conductance {:?}", e.conductance))?;
            net.add_edge(e.u, e.v, c)
                .map_err(|err| format!("edge {i}: {err}"))?;
        }
        Ok(net)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn complete(n: usize) -> WeightedNetwork {
        let mut net = WeightedNetwork::new(n);
        for i in 0..n {
            for j in i + 1..n {
                net.add_unit_edge(i, j).unwrap();
            }
        }
        net
    }

    fn cycle(n: usize) -> WeightedNetwork {
        let mut net = WeightedNetwork::new(n);
        for i in 0..n {
            net.add_unit_edge(i, (i + 1) % n).unwrap();
        }
        net
    }

    #[test]
    fn laplacian_fixtures() {
        let mut e = WeightedNetwork::new(2);
        e.add_unit_edge(0, 1).unwrap();
        let l = laplacian(&e);
        assert_eq!(l.rows(), &[vec![int(1), int(-1)], vec![int(-1), int(1)]]);

        let empty = WeightedNetwork::new(2);
        assert!(laplacian(&empty)
            .rows()
            .iter()
            .flatten()
            .all(|x| x.is_zero()));

        let l = laplacian(&complete(3));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.entry(i, j), &if i == j { int(2) } else { int(-1) });
            }
        }
    }

    #[test]
    fn parallel_edges_merge_in_laplacian_only() {
        let mut net = WeightedNetwork::new(2);
        net.add_unit_edge(0, 1).unwrap();
        net.add_edge(0, 1, ratio(1, 2)).unwrap();
        assert_eq!(net.edges().len(), 2);
        assert_eq!(laplacian(&net).entry(0, 1), &ratio(-3, 2));
    }

    #[test]
    fn rejects_invalid_edges() {
        let mut net = WeightedNetwork::new(2);
        assert_eq!(net.add_unit_edge(1, 1), Err(Error::SelfLoop(1)));
        assert_eq!(
            net.add_edge(0, 1, int(0)),
            Err(Error::ZeroConductance { u: 0, v: 1 })
        );
        assert!(matches!(
            net.add_unit_edge(0, 2),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn tau_fixtures() {
        assert_eq!(tau_matrix_tree(&complete(4)), int(16));
        let mut k4e = WeightedNetwork::new(4);
        for (a, b) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)] {
            k4e.add_unit_edge(a, b).unwrap();
        }
        assert_eq!(tau_matrix_tree(&k4e), int(8));
        assert_eq!(tau_matrix_tree(&cycle(4)), int(4));
        assert_eq!(tau_matrix_tree(&WeightedNetwork::new(3)), int(0));
    }

    #[test]
    fn resistance_fixtures() {
        assert_eq!(resistance(&complete(3), 0, 2).unwrap(), ratio(2, 3));
        assert_eq!(resistance(&cycle(4), 0, 2).unwrap(), int(1));

        let mut path = WeightedNetwork::new(4);
        path.add_resistor(0, 1, ratio(1, 2)).unwrap();
        path.add_resistor(1, 2, ratio(-1, 4)).unwrap();
        path.add_resistor(2, 3, ratio(1, 2)).unwrap();
        assert_eq!(resistance(&path, 0, 3).unwrap(), ratio(3, 4));
    }

    #[test]
    fn resistance_errors() {
        let mut net = WeightedNetwork::new(4);
        net.add_unit_edge(0, 1).unwrap();
        net.add_unit_edge(2, 3).unwrap();
        assert_eq!(resistance(&net, 0, 2), Err(Error::DisconnectedPair(0, 2)));
        assert_eq!(resistance(&net, 2, 3).unwrap(), int(1));
        assert_eq!(resistance(&net, 1, 1), Err(Error::SameVertex(1)));
        assert_eq!(kf_pair_sum(&net), Err(Error::Disconnected));

        // conductances 1 and -1 in parallel cancel: grounded system singular
        let mut sing = WeightedNetwork::new(2);
        sing.add_unit_edge(0, 1).unwrap();
        sing.add_edge(0, 1, int(-1)).unwrap();
        assert_eq!(resistance(&sing, 0, 1), Err(Error::SingularSystem));
    }

    #[test]
    fn kirchhoff_fixtures() {
        for n in 2..7 {
            assert_eq!(kf_pair_sum(&complete(n)).unwrap(), int(n as i64 - 1));
        }
        let mut p3 = WeightedNetwork::new(3);
        p3.add_unit_edge(0, 1).unwrap();
        p3.add_unit_edge(1, 2).unwrap();
        assert_eq!(kf_pair_sum(&p3).unwrap(), int(4));
        assert_eq!(kf_pair_sum(&cycle(4)).unwrap(), int(5));
    }

    #[test]
    fn spectral_check_fixtures() {
        assert_eq!(kf_spectral_check(&ratio(3, 4), 4), int(3));
        assert_eq!(kf_spectral_check(&ratio(9, 4), 4), int(9));
        assert_eq!(kf_spectral_check(&ratio(1, 2), 2), int(1));
    }

    #[test]
    fn resistance_matrix_matches_single_solves() {
        let mut net = cycle(5);
        net.add_edge(0, 2, ratio(3, 2)).unwrap();
        net.add_edge(1, 4, ratio(-1, 7)).unwrap();
        let all = resistance_matrix(&net).unwrap();
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    assert_eq!(all[u][v], resistance(&net, u, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn network_file_round_trip() {
        let mut net = cycle(3);
        net.add_edge(0, 1, ratio(-2, 6)).unwrap();
        let file = NetworkFile::from(&net);
        assert_eq!(file.edges[3].conductance, "-1/3");
        let back = WeightedNetwork::try_from(file).unwrap();
        assert_eq!(back, net);
    }
}
