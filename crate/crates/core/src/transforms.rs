//! Single-step electrical rewrites that keep every effective resistance
//! among a terminal set unchanged.
//!
//! Each rewrite returns a fresh network; inputs are never mutated. Any new
//! hub vertex is appended after the surviving vertices and is never a
//! terminal. Degenerate results (zero resistance, zero total conductance)
//! are reported as errors rather than contracted away.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::netcore::WeightedNetwork;
use crate::rational::{int, BigRational};

/// Vertices whose pairwise resistances a rewrite must preserve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalSet(BTreeSet<usize>);

impl TerminalSet {
    pub fn new(net: &WeightedNetwork, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = vertices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidTerminals("terminal set is empty".into()));
        }
        if let Some(&v) = set.iter().find(|&&v| v >= net.vertex_count()) {
            return Err(Error::InvalidTerminals(format!("vertex {v} out of range")));
        }
        Ok(Self(set))
    }

    /// Every vertex of `net`.
    pub fn all(net: &WeightedNetwork) -> Self {
        Self((0..net.vertex_count()).collect())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn without(&self, doomed: &BTreeSet<usize>) -> Self {
        Self(self.0.difference(doomed).copied().collect())
    }

    /// Image of the terminal set under a rewrite.
    pub fn mapped(&self, map: &BTreeMap<usize, usize>) -> Self {
        Self(self.0.iter().filter_map(|v| map.get(v).copied()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteResult {
    pub network: WeightedNetwork,
    /// Old terminal id to its id in `network`.
    pub terminal_map: BTreeMap<usize, usize>,
    /// Fresh non-terminal vertices introduced by the rewrite.
    pub hubs: Vec<usize>,
}

fn check_vertex(net: &WeightedNetwork, v: usize) -> Result<()> {
    if v < net.vertex_count() {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange {
            vertex: v,
            count: net.vertex_count(),
        })
    }
}

fn identity_result(
    net: WeightedNetwork,
    terminals: &TerminalSet,
    hubs: Vec<usize>,
) -> RewriteResult {
    RewriteResult {
        network: net,
        terminal_map: terminals.iter().map(|v| (v, v)).collect(),
        hubs,
    }
}

/// Deletes `doomed` (none of which may be terminals) and packages the map.
fn removal_result(
    net: &WeightedNetwork,
    doomed: &BTreeSet<usize>,
    terminals: &TerminalSet,
) -> RewriteResult {
    let (network, map) = net.remove_vertices(doomed);
    let terminal_map = terminals
        .iter()
        .map(|v| (v, map[v].expect("terminals survive")))
        .collect();
    RewriteResult {
        network,
        terminal_map,
        hubs: Vec::new(),
    }
}

/// Replaces the two edges at a degree-2 non-terminal vertex by one edge
/// carrying the sum of their resistances. If both edges run to the same
/// neighbour the vertex is a dead end and is simply dropped.
pub fn series_reduce(
    net: &WeightedNetwork,
    through: usize,
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    check_vertex(net, through)?;
    if terminals.contains(through) {
        return Err(Error::VertexIsTerminal(through));
    }
    let incident: Vec<_> = net.incident(through).collect();
    if incident.len() != 2 {
        return Err(Error::DegreeNotTwo {
            vertex: through,
            degree: incident.len(),
        });
    }
    let (a, b) = (incident[0].1.other(through), incident[1].1.other(through));
    let mut work = net.clone();
    if a != b {
        let r = incident[0].1.resistance() + incident[1].1.resistance();
        if r.is_zero() {
            return Err(Error::ZeroResistanceEdge(a, b));
        }
        work.add_resistor(a, b, r)?;
    }
    work.remove_edges(&[incident[0].0, incident[1].0].into_iter().collect());
    Ok(removal_result(
        &work,
        &[through].into_iter().collect(),
        terminals,
    ))
}

/// Merges all parallel `u`-`v` edges into one with the summed conductance.
pub fn parallel_reduce(
    net: &WeightedNetwork,
    u: usize,
    v: usize,
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    check_vertex(net, u)?;
    check_vertex(net, v)?;
    let bundle: BTreeSet<usize> = net.edges_between(u, v).map(|(i, _)| i).collect();
    if bundle.len() < 2 {
        return Err(Error::NotParallel(u, v));
    }
    let total = net.conductance_between(u, v);
    if total.is_zero() {
        return Err(Error::TotalConductanceZero(u, v));
    }
    let mut work = net.clone();
    work.remove_edges(&bundle);
    work.add_edge(u, v, total)?;
    Ok(identity_result(work, terminals, Vec::new()))
}

fn single_edge(net: &WeightedNetwork, a: usize, b: usize) -> Option<(usize, BigRational)> {
    let mut it = net.edges_between(a, b);
    let (i, e) = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some((i, e.resistance()))
}

/// Δ-to-Y. With `r1 = r(b,c)`, `r2 = r(a,c)`, `r3 = r(a,b)` the new arms are
/// `R1 = r2 r3 / S`, `R2 = r1 r3 / S`, `R3 = r1 r2 / S` (at `a`, `b`, `c`),
/// `S = r1 + r2 + r3`.
pub fn delta_to_y(
    net: &WeightedNetwork,
    triangle: [usize; 3],
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    let [a, b, c] = triangle;
    for v in triangle {
        check_vertex(net, v)?;
    }
    if a == b || b == c || a == c {
        return Err(Error::NotATriangle(triangle));
    }
    let (ebc, r1) = single_edge(net, b, c).ok_or(Error::NotATriangle(triangle))?;
    let (eac, r2) = single_edge(net, a, c).ok_or(Error::NotATriangle(triangle))?;
    let (eab, r3) = single_edge(net, a, b).ok_or(Error::NotATriangle(triangle))?;
    let sum = &r1 + &r2 + &r3;
    if sum.is_zero() {
        return Err(Error::SumZero);
    }
    let arms = [&r2 * &r3 / &sum, &r1 * &r3 / &sum, &r1 * &r2 / &sum];
    let mut work = net.clone();
    work.remove_edges(&[ebc, eac, eab].into_iter().collect());
    let hub = work.add_vertex(format!("y{}", net.vertex_count()));
    for (v, arm) in triangle.into_iter().zip(arms) {
        work.add_resistor(v, hub, arm)?;
    }
    Ok(identity_result(work, terminals, vec![hub]))
}

/// Y-to-Δ at a degree-3 non-terminal centre with arms `R1, R2, R3` towards
/// its neighbours `a, b, c`: `r1 = R2 + R3 + R2 R3 / R1` joins `b`-`c`, and
/// cyclically.
pub fn y_to_delta(
    net: &WeightedNetwork,
    center: usize,
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    check_vertex(net, center)?;
    if terminals.contains(center) {
        return Err(Error::CenterIsTerminal(center));
    }
    let incident: Vec<_> = net.incident(center).collect();
    let ends: BTreeSet<usize> = incident.iter().map(|(_, e)| e.other(center)).collect();
    if incident.len() != 3 || ends.len() != 3 {
        return Err(Error::DegreeNotThree {
            vertex: center,
            degree: incident.len(),
        });
    }
    let v: Vec<usize> = incident.iter().map(|(_, e)| e.other(center)).collect();
    let arm: Vec<BigRational> = incident.iter().map(|(_, e)| e.resistance()).collect();
    // The three results vanish together exactly when the centre's total
    // conductance does.
    let total_conductance = incident
        .iter()
        .fold(BigRational::zero(), |acc, (_, e)| acc + &e.conductance);
    if total_conductance.is_zero() {
        return Err(Error::SumZero);
    }
    let side = |i: usize, j: usize, opp: usize| &arm[i] + &arm[j] + &arm[i] * &arm[j] / &arm[opp];
    let mut work = net.clone();
    work.remove_edges(&incident.iter().map(|(i, _)| *i).collect());
    work.add_resistor(v[1], v[2], side(1, 2, 0))?;
    work.add_resistor(v[0], v[2], side(0, 2, 1))?;
    work.add_resistor(v[0], v[1], side(0, 1, 2))?;
    Ok(removal_result(
        &work,
        &[center].into_iter().collect(),
        terminals,
    ))
}

fn distinct(vertices: &[usize]) -> bool {
    vertices.iter().collect::<BTreeSet<_>>().len() == vertices.len()
}

/// Replaces a unit-resistance `K_n` (one unit edge per pair is consumed) by
/// a star through a new hub with arm resistance `1/n`.
pub fn mesh_to_star(
    net: &WeightedNetwork,
    clique: &[usize],
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    for &v in clique {
        check_vertex(net, v)?;
    }
    if clique.len() < 2 || !distinct(clique) {
        return Err(Error::NotAUnitClique(
            "need at least two distinct vertices".into(),
        ));
    }
    let mut doomed = BTreeSet::new();
    for (x, &a) in clique.iter().enumerate() {
        for &b in &clique[x + 1..] {
            let (i, _) = net
                .edges_between(a, b)
                .find(|(_, e)| e.conductance.is_one())
                .ok_or_else(|| Error::NotAUnitClique(format!("no unit edge {a}-{b}")))?;
            doomed.insert(i);
        }
    }
    let n = clique.len() as i64;
    let mut work = net.clone();
    work.remove_edges(&doomed);
    let hub = work.add_vertex(format!("h{}", net.vertex_count()));
    for &v in clique {
        work.add_edge(v, hub, int(n))?;
    }
    Ok(identity_result(work, terminals, vec![hub]))
}

fn check_sides(net: &WeightedNetwork, xs: &[usize], ys: &[usize]) -> Result<()> {
    for &v in xs.iter().chain(ys) {
        check_vertex(net, v)?;
    }
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::NonUniformWeights(
            "both sides must be nonempty".into(),
        ));
    }
    let all: Vec<usize> = xs.iter().chain(ys).copied().collect();
    if !distinct(&all) {
        return Err(Error::NonUniformWeights("sides must be disjoint".into()));
    }
    Ok(())
}

/// Finds, for every `(x_i, y_j)`, one edge whose conductance is `want(i, j)`.
fn bipartite_edges(
    net: &WeightedNetwork,
    xs: &[usize],
    ys: &[usize],
    want: impl Fn(usize, usize) -> BigRational,
) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            let target = want(i, j);
            let (e, _) = net
                .edges_between(x, y)
                .find(|(_, e)| e.conductance == target)
                .ok_or_else(|| {
                    Error::NonUniformWeights(format!(
                        "no edge {x}-{y} with conductance {}",
                        crate::rational::format_rational(&target)
                    ))
                })?;
            out.insert(e);
        }
    }
    Ok(out)
}

/// Swaps the complete bipartite block for two hubs `x`, `y`: conductance
/// `gx[i]` on `x_i - x`, `gy[j]` on `y_j - y` and `bridge` on `x - y`.
#[allow(clippy::too_many_arguments)]
fn install_double_star(
    net: &WeightedNetwork,
    xs: &[usize],
    ys: &[usize],
    doomed: &BTreeSet<usize>,
    gx: Vec<BigRational>,
    gy: Vec<BigRational>,
    bridge: BigRational,
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    let mut work = net.clone();
    work.remove_edges(doomed);
    let hx = work.add_vertex(format!("x{}", net.vertex_count()));
    let hy = work.add_vertex(format!("y{}", net.vertex_count() + 1));
    for (&v, g) in xs.iter().zip(gx) {
        work.add_edge(v, hx, g)?;
    }
    for (&v, g) in ys.iter().zip(gy) {
        work.add_edge(v, hy, g)?;
    }
    work.add_edge(hx, hy, bridge)?;
    Ok(identity_result(work, terminals, vec![hx, hy]))
}

/// Edge-weighted `K_{m,n}` double-star rewrite. Every `x_i - y_j` edge has
/// resistance `1/a_j`; with `a = sum a_j` the replacement carries
/// resistances `1/a` on `x_i - x`, `-1/(m a)` on `x - y` and `1/(m a_j)` on
/// `y_j - y`.
pub fn kmn_double_star_edge(
    net: &WeightedNetwork,
    xs: &[usize],
    ys: &[usize],
    a: &[BigRational],
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    check_sides(net, xs, ys)?;
    if a.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: ys.len(),
            got: a.len(),
        });
    }
    if a.iter().any(Zero::is_zero) {
        return Err(Error::NonUniformWeights("a_j must be nonzero".into()));
    }
    let total = a.iter().fold(BigRational::zero(), |acc, x| acc + x);
    if total.is_zero() {
        return Err(Error::ZeroA);
    }
    let doomed = bipartite_edges(net, xs, ys, |_, j| a[j].clone())?;
    let m = int(xs.len() as i64);
    install_double_star(
        net,
        xs,
        ys,
        &doomed,
        vec![total.clone(); xs.len()],
        a.iter().map(|aj| &m * aj).collect(),
        -(&m * &total),
        terminals,
    )
}

/// Vertex-weighted variant: `x_i - y_j` has conductance `w(x_i) w(y_j)`.
/// With side totals `W_X`, `W_Y` the hubs carry conductances
/// `w(x_i) W_Y`, `w(y_j) W_X` and `-W_X W_Y` on the bridge. Unit weights on
/// `X` reduce this to the edge-weighted rewrite with `a_j = w(y_j)`.
pub fn kmn_double_star_vertex(
    net: &WeightedNetwork,
    xs: &[usize],
    ys: &[usize],
    x_weights: &[BigRational],
    y_weights: &[BigRational],
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    check_sides(net, xs, ys)?;
    if x_weights.len() != xs.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            got: x_weights.len(),
        });
    }
    if y_weights.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: ys.len(),
            got: y_weights.len(),
        });
    }
    if x_weights.iter().chain(y_weights).any(Zero::is_zero) {
        return Err(Error::NonUniformWeights(
            "vertex weights must be nonzero".into(),
        ));
    }
    let wx = x_weights.iter().fold(BigRational::zero(), |acc, x| acc + x);
    let wy = y_weights.iter().fold(BigRational::zero(), |acc, x| acc + x);
    if wx.is_zero() || wy.is_zero() {
        return Err(Error::ZeroA);
    }
    let doomed = bipartite_edges(net, xs, ys, |i, j| &x_weights[i] * &y_weights[j])?;
    install_double_star(
        net,
        xs,
        ys,
        &doomed,
        x_weights.iter().map(|w| w * &wy).collect(),
        y_weights.iter().map(|w| w * &wx).collect(),
        -(&wx * &wy),
        terminals,
    )
}

/// Resistances in `J = K_1 ∨ K_{n_i}` with apex edges of resistance `r` and
/// unit clique edges: apex-to-clique `r(r+1)/(n_i r + 1)` and, when
/// `n_i >= 2`, clique-to-clique `2r/(n_i r + 1)`.
pub fn apex_clique_resistances(
    r: &BigRational,
    n_i: u64,
) -> Result<(BigRational, Option<BigRational>)> {
    if n_i == 0 {
        return Err(Error::InvalidSpec("clique size must be at least 1".into()));
    }
    let den = int(n_i as i64) * r + int(1);
    if den.is_zero() {
        return Err(Error::DenominatorZero);
    }
    let apex = r * (r + int(1)) / &den;
    let pair = (n_i >= 2).then(|| int(2) * r / &den);
    Ok((apex, pair))
}

/// Deletes a block hanging off `cut_vertex`. `block` may or may not list
/// the cut vertex itself.
pub fn eliminate_block(
    net: &WeightedNetwork,
    block: &[usize],
    cut_vertex: usize,
    terminals: &TerminalSet,
) -> Result<RewriteResult> {
    check_vertex(net, cut_vertex)?;
    for &v in block {
        check_vertex(net, v)?;
    }
    let inner: BTreeSet<usize> = block.iter().copied().filter(|&v| v != cut_vertex).collect();
    if inner.is_empty() {
        return Err(Error::NotAPendantBlock(
            "block has no vertex besides the cut vertex".into(),
        ));
    }
    if let Some(v) = inner.iter().copied().find(|&v| terminals.contains(v)) {
        return Err(Error::TerminalInsideBlock(v));
    }
    let mut attached = false;
    for e in net.edges() {
        let (iu, iv) = (inner.contains(&e.u), inner.contains(&e.v));
        if iu != iv {
            let outside = if iu { e.v } else { e.u };
            if outside != cut_vertex {
                return Err(Error::NotAPendantBlock(format!(
                    "edge {}-{} leaves the block",
                    e.u, e.v
                )));
            }
            attached = true;
        }
    }
    if !attached {
        return Err(Error::NotAPendantBlock(format!(
            "block does not touch vertex {cut_vertex}"
        )));
    }
    Ok(removal_result(net, &inner, terminals))
}
