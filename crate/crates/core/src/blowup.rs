//! Host graphs and the graphs built from them: generalized blow-ups,
//! unbalanced blow-ups, core-satellite graphs, and the weighted auxiliary
//! networks whose resistances the closed forms are read from.
//!
//! All indices are 0-based. Blow-up vertices follow one canonical order:
//! parts in index order; inside a part the clique vertices come first
//! (by clique, then slot) followed by the isolated vertices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netcore::WeightedNetwork;
use crate::rational::int;

/// Simple undirected graph on `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostGraph {
    k: usize,
    edges: BTreeSet<(usize, usize)>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl HostGraph {
    /// Validates a simple graph: no loops, no repeated edges, indices in range.
    pub fn new(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidHost("k must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= k || b >= k {
                return Err(Error::InvalidHost(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidHost(format!("loop at {a}")));
            }
            if !set.insert(ordered(a, b)) {
                return Err(Error::InvalidHost(format!("repeated edge ({a},{b})")));
            }
        }
        Ok(Self { k, edges: set })
    }

    pub fn complete(k: usize) -> Self {
        let edges: Vec<_> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        Self::new(k.max(1), &edges).expect("complete graph is simple")
    }

    /// Star with centre 0.
    pub fn star(k: usize) -> Self {
        let edges: Vec<_> = (1..k).map(|i| (0, i)).collect();
        Self::new(k.max(1), &edges).expect("star is simple")
    }

    pub fn path(k: usize) -> Self {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::new(k.max(1), &edges).expect("path is simple")
    }

    /// `K_k` with the edges of a matching removed.
    pub fn complete_minus_matching(k: usize, matching: &[(usize, usize)]) -> Result<Self> {
        let mut used = BTreeSet::new();
        for &(a, b) in matching {
            if a >= k || b >= k || a == b {
                return Err(Error::InvalidFamilyParams(format!(
                    "matching pair ({a},{b}) invalid for k={k}"
                )));
            }
            if !used.insert(a) || !used.insert(b) {
                return Err(Error::InvalidFamilyParams(format!(
                    "matching pairs share a vertex at ({a},{b})"
                )));
            }
        }
        let removed: BTreeSet<_> = matching.iter().map(|&(a, b)| ordered(a, b)).collect();
        let edges: Vec<_> = Self::complete(k)
            .edges
            .into_iter()
            .filter(|e| !removed.contains(e))
            .collect();
        Self::new(k, &edges)
    }

    /// `K_k` minus a star on `d` vertices centred at 0 with leaves `1..d`.
    /// `d = 1` removes nothing.
    pub fn complete_minus_star(k: usize, d: usize) -> Result<Self> {
        if d == 0 || d > k {
            return Err(Error::InvalidFamilyParams(format!(
                "star size d={d} must lie in 1..={k}"
            )));
        }
        let edges: Vec<_> = Self::complete(k)
            .edges
            .into_iter()
            .filter(|&(a, b)| !(a == 0 && b < d))
            .collect();
        Self::new(k, &edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&ordered(a, b))
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.k)
            .filter(|&j| j != i && self.adjacent(i, j))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.k * (self.k - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.k).find(|&i| self.neighbors(i).is_empty())
    }

    /// `sum_{a in N(i)} sizes[a]`.
    pub fn neighbor_weight(&self, i: usize, sizes: &[u64]) -> u64 {
        self.neighbors(i).into_iter().map(|a| sizes[a]).sum()
    }
}

/// Parameters `(t, p, q)` of `H_{p_1..p_k}^{q_1..q_k}`: part `i` is
/// `p_i` disjoint copies of `K_t` plus `q_i` isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupSpec {
    pub t: u64,
    pub p: Vec<u64>,
    pub q: Vec<u64>,
}

impl BlowupSpec {
    pub fn new(t: u64, p: Vec<u64>, q: Vec<u64>) -> Result<Self> {
        let spec = Self { t, p, q };
        spec.validate()?;
        Ok(spec)
    }

    /// Pure `H[n_1..n_k]`: every part is an independent set.
    pub fn independent(sizes: &[u64]) -> Result<Self> {
        Self::new(1, vec![0; sizes.len()], sizes.to_vec())
    }

    pub fn validate(&self) -> Result<()> {
        if self.t == 0 {
            return Err(Error::InvalidSpec("t must be at least 1".into()));
        }
        if self.p.len() != self.q.len() {
            return Err(Error::DimensionMismatch {
                expected: self.p.len(),
                got: self.q.len(),
            });
        }
        if self.p.is_empty() {
            return Err(Error::InvalidSpec("at least one part is required".into()));
        }
        if let Some(i) = (0..self.k()).find(|&i| self.part_size(i) == 0) {
            return Err(Error::InvalidSpec(format!("part {i} is empty")));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.p.len()
    }

    /// `n_i = t p_i + q_i`.
    pub fn part_size(&self, i: usize) -> u64 {
        self.t * self.p[i] + self.q[i]
    }

    pub fn sizes(&self) -> Vec<u64> {
        (0..self.k()).map(|i| self.part_size(i)).collect()
    }

    pub fn total(&self) -> u64 {
        self.sizes().iter().sum()
    }

    fn part_offset(&self, part: usize) -> usize {
        (0..part).map(|i| self.part_size(i) as usize).sum()
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> Vec<BlowupVertex> {
        let mut out = Vec::with_capacity(self.total() as usize);
        for part in 0..self.k() {
            for clique in 0..self.p[part] {
                for slot in 0..self.t {
                    out.push(BlowupVertex {
                        part,
                        role: Role::Clique { clique, slot },
                    });
                }
            }
            for slot in 0..self.q[part] {
                out.push(BlowupVertex {
                    part,
                    role: Role::Isolated { slot },
                });
            }
        }
        out
    }

    pub fn index_of(&self, v: &BlowupVertex) -> Result<usize> {
        if v.part >= self.k() {
            return Err(Error::InvalidVertex(v.to_string()));
        }
        let base = self.part_offset(v.part);
        match v.role {
            Role::Clique { clique, slot } if clique < self.p[v.part] && slot < self.t => {
                Ok(base + (clique * self.t + slot) as usize)
            }
            Role::Isolated { slot } if slot < self.q[v.part] => {
                Ok(base + (self.t * self.p[v.part] + slot) as usize)
            }
            _ => Err(Error::InvalidVertex(v.to_string())),
        }
    }

    pub fn vertex_at(&self, index: usize) -> Result<BlowupVertex> {
        let mut base = 0usize;
        for part in 0..self.k() {
            let size = self.part_size(part) as usize;
            if index < base + size {
                let off = (index - base) as u64;
                let clique_span = self.t * self.p[part];
                let role = if off < clique_span {
                    Role::Clique {
                        clique: off / self.t,
                        slot: off % self.t,
                    }
                } else {
                    Role::Isolated {
                        slot: off - clique_span,
                    }
                };
                return Ok(BlowupVertex { part, role });
            }
            base += size;
        }
        Err(Error::InvalidVertex(format!("index {index}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Clique { clique: u64, slot: u64 },
    Isolated { slot: u64 },
}

/// A vertex of a generalized blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlowupVertex {
    pub part: usize,
    pub role: Role,
}

impl BlowupVertex {
    pub fn is_clique(&self) -> bool {
        matches!(self.role, Role::Clique { .. })
    }
}

impl fmt::Display for BlowupVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Clique { clique, slot } => write!(f, "{}:c{}.{}", self.part, clique, slot),
            Role::Isolated { slot } => write!(f, "{}:i{}", self.part, slot),
        }
    }
}

fn check_dims(host: &HostGraph, k: usize) -> Result<()> {
    if host.k() != k {
        return Err(Error::DimensionMismatch {
            expected: host.k(),
            got: k,
        });
    }
    Ok(())
}

/// Joins part `i` to part `j` completely for every host edge, given the
/// index range of each part.
fn add_cross_edges(net: &mut WeightedNetwork, host: &HostGraph, ranges: &[(usize, usize)]) {
    for (i, j) in host.edges() {
        for a in ranges[i].0..ranges[i].1 {
            for b in ranges[j].0..ranges[j].1 {
                net.add_unit_edge(a, b).expect("parts are disjoint");
            }
        }
    }
}

fn add_clique(net: &mut WeightedNetwork, start: usize, size: usize) {
    for a in start..start + size {
        for b in a + 1..start + size {
            net.add_unit_edge(a, b).expect("clique vertices distinct");
        }
    }
}

fn part_ranges(sizes: &[u64]) -> Vec<(usize, usize)> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let r = (start, start + s as usize);
            start = r.1;
            r
        })
        .collect()
}

/// Unit-conductance `H_{p}^{q}` with canonical vertex order and labels.
pub fn build_blowup(host: &HostGraph, spec: &BlowupSpec) -> Result<WeightedNetwork> {
    spec.validate()?;
    check_dims(host, spec.k())?;
    let vertices = spec.vertices();
    let mut net = WeightedNetwork::with_labels(vertices.iter().map(|v| v.to_string()).collect());
    let ranges = part_ranges(&spec.sizes());
    for (i, &(start, _)) in ranges.iter().enumerate() {
        for c in 0..spec.p[i] as usize {
            add_clique(&mut net, start + c * spec.t as usize, spec.t as usize);
        }
    }
    add_cross_edges(&mut net, host, &ranges);
    Ok(net)
}

fn check_sizes(host: &HostGraph, sizes: &[u64]) -> Result<()> {
    check_dims(host, sizes.len())?;
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidSpec(format!("part {i} is empty")));
    }
    Ok(())
}

/// `H*(n_1..n_k)^w`: host vertices joined with conductance `n_i n_j`, a hub
/// `s_i` per part tied to `v_i` with conductance `-n_i N_i` and to each of
/// the `n_i` leaves with conductance `N_i`, where `N_i` is the total size of
/// the neighbouring parts.
///
/// Layout: leaves `0..n` in blow-up order (so leaf indices coincide with
/// `build_blowup` on the independent spec), then `v_0..v_{k-1}`, then
/// `s_0..s_{k-1}`.
pub fn build_host_star_weighted(host: &HostGraph, sizes: &[u64]) -> Result<WeightedNetwork> {
    check_sizes(host, sizes)?;
    if let Some(i) = host.isolated_vertex() {
        return Err(Error::IsolatedHostVertex(i));
    }
    let spec = BlowupSpec::independent(sizes)?;
    let mut net =
        WeightedNetwork::with_labels(spec.vertices().iter().map(|v| v.to_string()).collect());
    let k = host.k();
    let hosts: Vec<usize> = (0..k).map(|i| net.add_vertex(format!("v{i}"))).collect();
    let hubs: Vec<usize> = (0..k).map(|i| net.add_vertex(format!("s{i}"))).collect();
    for (i, j) in host.edges() {
        net.add_edge(hosts[i], hosts[j], int((sizes[i] * sizes[j]) as i64))?;
    }
    for (i, &(start, end)) in part_ranges(sizes).iter().enumerate() {
        let w = host.neighbor_weight(i, sizes) as i64;
        net.add_edge(hubs[i], hosts[i], int(-(sizes[i] as i64) * w))?;
        for leaf in start..end {
            net.add_edge(hubs[i], leaf, int(w))?;
        }
    }
    Ok(net)
}

/// `build_host_star_weighted` for the independent spec with the clique
/// edges of `spec` laid back over the leaves. Resistance-equivalent to
/// `build_blowup(host, spec)` on the blow-up vertices.
pub fn build_blowup_star_equivalent(
    host: &HostGraph,
    spec: &BlowupSpec,
) -> Result<WeightedNetwork> {
    spec.validate()?;
    let mut net = build_host_star_weighted(host, &spec.sizes())?;
    for (i, &(start, _)) in part_ranges(&spec.sizes()).iter().enumerate() {
        for c in 0..spec.p[i] as usize {
            add_clique(&mut net, start + c * spec.t as usize, spec.t as usize);
        }
    }
    Ok(net)
}

/// `H^▽`: the host with vertex weights `n_i`, i.e. edge conductances `n_i n_j`.
pub fn build_h_nabla(host: &HostGraph, sizes: &[u64]) -> Result<WeightedNetwork> {
    check_sizes(host, sizes)?;
    if !host.is_connected() {
        return Err(Error::DisconnectedHost);
    }
    let mut net = WeightedNetwork::with_labels((0..host.k()).map(|i| format!("v{i}")).collect());
    for (i, j) in host.edges() {
        net.add_edge(i, j, int((sizes[i] * sizes[j]) as i64))?;
    }
    Ok(net)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "size", rename_all = "snake_case")]
pub enum PartKind {
    Empty(u64),
    Clique(u64),
}

impl PartKind {
    pub fn size(&self) -> u64 {
        match *self {
            PartKind::Empty(n) | PartKind::Clique(n) => n,
        }
    }

    pub fn is_clique(&self) -> bool {
        matches!(self, PartKind::Clique(_))
    }
}

/// Unbalanced blow-up: each part is either `K_{n_i}` or its complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnbalancedSpec {
    pub parts: Vec<PartKind>,
}

impl UnbalancedSpec {
    pub fn new(parts: Vec<PartKind>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSpec("at least one part is required".into()));
        }
        if let Some(i) = parts.iter().position(|p| p.size() == 0) {
            return Err(Error::InvalidSpec(format!("part {i} is empty")));
        }
        Ok(Self { parts })
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.parts.iter().map(PartKind::size).collect()
    }

    /// `(part, slot)` of vertex `index`.
    pub fn locate(&self, index: usize) -> Result<(usize, u64)> {
        let mut base = 0usize;
        for (part, kind) in self.parts.iter().enumerate() {
            let size = kind.size() as usize;
            if index < base + size {
                return Ok((part, (index - base) as u64));
            }
            base += size;
        }
        Err(Error::InvalidVertex(format!("index {index}")))
    }
}

pub fn build_unbalanced(host: &HostGraph, spec: &UnbalancedSpec) -> Result<WeightedNetwork> {
    check_dims(host, spec.k())?;
    let sizes = spec.sizes();
    let mut labels = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        labels.extend((0..s).map(|slot| format!("{i}:{slot}")));
    }
    let mut net = WeightedNetwork::with_labels(labels);
    let ranges = part_ranges(&sizes);
    for (kind, &(start, end)) in spec.parts.iter().zip(&ranges) {
        if kind.is_clique() {
            add_clique(&mut net, start, end - start);
        }
    }
    add_cross_edges(&mut net, host, &ranges);
    Ok(net)
}

/// Core clique `K_{n_1}` completely joined to satellite cliques
/// `K_{n_2}..K_{n_k}`, which are not joined to each other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSatelliteSpec {
    pub sizes: Vec<u64>,
}

impl CoreSatelliteSpec {
    pub fn new(sizes: Vec<u64>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidSpec("at least one clique is required".into()));
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidSpec(format!("clique {i} is empty")));
        }
        Ok(Self { sizes })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn as_unbalanced(&self) -> UnbalancedSpec {
        UnbalancedSpec {
            parts: self.sizes.iter().map(|&n| PartKind::Clique(n)).collect(),
        }
    }
}

pub fn build_core_satellite(spec: &CoreSatelliteSpec) -> Result<WeightedNetwork> {
    let spec = CoreSatelliteSpec::new(spec.sizes.clone())?;
    build_unbalanced(&HostGraph::star(spec.k()), &spec.as_unbalanced())
}
