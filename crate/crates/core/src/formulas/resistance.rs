use num_traits::Zero;
use serde::Serialize;

use super::{c2, q};
use crate::blowup::{build_h_nabla, BlowupSpec, BlowupVertex, HostGraph, Role};
use crate::error::{Error, Result};
use crate::netcore::resistance_matrix;
use crate::rational::BigRational;
use crate::transforms::apex_clique_resistances;

/// All-pairs resistance of the host with edge conductances `n_i n_j`.
pub fn host_resistance(host: &HostGraph, sizes: &[u64]) -> Result<Vec<Vec<BigRational>>> {
    let net = build_h_nabla(host, sizes)?;
    resistance_matrix(&net).map_err(|e| match e {
        Error::Disconnected | Error::SingularSystem => Error::DisconnectedHost,
        other => other,
    })
}

/// Per-part local rates. For part `i` with neighbour weight
/// `N_i = sum_{a ~ i} n_a`: `r = 1/N_i` is the leaf-to-hub resistance and
/// `r'' = -1/(n_i N_i)` the hub-to-host resistance. `r_prime` and
/// `r_triple_prime` are the same quantities at the second part of a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HostLocalRates {
    pub r: BigRational,
    pub r_prime: BigRational,
    pub r_double_prime: BigRational,
    pub r_triple_prime: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PartRates {
    leaf: BigRational,
    hub: BigRational,
}

impl PartRates {
    fn new(host: &HostGraph, sizes: &[u64], i: usize) -> Result<Self> {
        let w = host.neighbor_weight(i, sizes);
        if w == 0 {
            return Err(Error::IsolatedHostVertex(i));
        }
        Ok(Self {
            leaf: BigRational::new(1.into(), w.into()),
            hub: -BigRational::new(1.into(), (w * sizes[i]).into()),
        })
    }
}

pub(crate) fn all_part_rates(
    host: &HostGraph,
    sizes: &[u64],
) -> Result<Vec<(BigRational, BigRational)>> {
    (0..host.k())
        .map(|i| PartRates::new(host, sizes, i).map(|p| (p.leaf, p.hub)))
        .collect()
}

/// The eight vertex-pair classes. Part indices are 0-based; for cross
/// classes the first index is the part of the first vertex. `Q` marks an
/// isolated vertex and `P` a clique vertex, so `CrossQP(i, j)` pairs an
/// isolated vertex of part `i` with a clique vertex of part `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairClass {
    SameQQ(usize),
    SamePQ(usize),
    SamePPAdj(usize),
    SamePPNonAdj(usize),
    CrossQQ(usize, usize),
    CrossQP(usize, usize),
    CrossPQ(usize, usize),
    CrossPP(usize, usize),
}

impl PairClass {
    pub fn classify(u: &BlowupVertex, v: &BlowupVertex) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidVertex(format!("{u} given twice")));
        }
        let (i, j) = (u.part, v.part);
        Ok(if i == j {
            match (u.role, v.role) {
                (Role::Isolated { .. }, Role::Isolated { .. }) => PairClass::SameQQ(i),
                (Role::Clique { clique: a, .. }, Role::Clique { clique: b, .. }) => {
                    if a == b {
                        PairClass::SamePPAdj(i)
                    } else {
                        PairClass::SamePPNonAdj(i)
                    }
                }
                _ => PairClass::SamePQ(i),
            }
        } else {
            match (u.is_clique(), v.is_clique()) {
                (false, false) => PairClass::CrossQQ(i, j),
                (false, true) => PairClass::CrossQP(i, j),
                (true, false) => PairClass::CrossPQ(i, j),
                (true, true) => PairClass::CrossPP(i, j),
            }
        })
    }

    /// Index `1..=8`, matching the `r1`..`r8` names.
    pub fn index(&self) -> usize {
        match self {
            PairClass::SameQQ(_) => 1,
            PairClass::SamePQ(_) => 2,
            PairClass::SamePPAdj(_) => 3,
            PairClass::SamePPNonAdj(_) => 4,
            PairClass::CrossQQ(..) => 5,
            PairClass::CrossQP(..) => 6,
            PairClass::CrossPQ(..) => 7,
            PairClass::CrossPP(..) => 8,
        }
    }

    pub fn name(&self) -> String {
        match *self {
            PairClass::SameQQ(i) => format!("r1[{i}]"),
            PairClass::SamePQ(i) => format!("r2[{i}]"),
            PairClass::SamePPAdj(i) => format!("r3[{i}]"),
            PairClass::SamePPNonAdj(i) => format!("r4[{i}]"),
            PairClass::CrossQQ(i, j) => format!("r5[{i},{j}]"),
            PairClass::CrossQP(i, j) => format!("r6[{i},{j}]"),
            PairClass::CrossPQ(i, j) => format!("r7[{i},{j}]"),
            PairClass::CrossPP(i, j) => format!("r8[{i},{j}]"),
        }
    }
}

/// Precomputed closed-form evaluator for one `(host, spec)` instance.
#[derive(Debug, Clone)]
pub struct BlowupClosedForm {
    spec: BlowupSpec,
    rates: Vec<(BigRational, BigRational)>,
    nabla: Vec<Vec<BigRational>>,
}

impl BlowupClosedForm {
    pub fn new(host: &HostGraph, spec: &BlowupSpec) -> Result<Self> {
        spec.validate()?;
        if host.k() != spec.k() {
            return Err(Error::DimensionMismatch {
                expected: host.k(),
                got: spec.k(),
            });
        }
        if !host.is_connected() {
            return Err(Error::DisconnectedHost);
        }
        let sizes = spec.sizes();
        let rates = all_part_rates(host, &sizes)?;
        let nabla = host_resistance(host, &sizes)?;
        Ok(Self {
            spec: spec.clone(),
            rates,
            nabla,
        })
    }

    pub fn spec(&self) -> &BlowupSpec {
        &self.spec
    }

    pub fn rates(&self, i: usize, j: usize) -> HostLocalRates {
        HostLocalRates {
            r: self.rates[i].0.clone(),
            r_prime: self.rates[j].0.clone(),
            r_double_prime: self.rates[i].1.clone(),
            r_triple_prime: self.rates[j].1.clone(),
        }
    }

    pub fn host_resistance(&self, i: usize, j: usize) -> &BigRational {
        &self.nabla[i][j]
    }

    /// Leaf-to-host-vertex resistance seen from an isolated or clique
    /// vertex of part `i`, hub term excluded.
    fn side(&self, i: usize, clique: bool) -> Result<BigRational> {
        let r = &self.rates[i].0;
        if clique {
            Ok(apex_clique_resistances(r, self.spec.t)?.0)
        } else {
            Ok(r.clone())
        }
    }

    fn cross(&self, i: usize, j: usize, ci: bool, cj: bool) -> Result<BigRational> {
        Ok(&self.nabla[i][j]
            + self.side(i, ci)?
            + self.side(j, cj)?
            + &self.rates[i].1
            + &self.rates[j].1)
    }

    pub fn class_value(&self, class: PairClass) -> Result<BigRational> {
        let t = self.spec.t;
        match class {
            PairClass::SameQQ(i) => Ok(q(2) * &self.rates[i].0),
            PairClass::SamePQ(i) => Ok(self.side(i, true)? + &self.rates[i].0),
            PairClass::SamePPAdj(i) => apex_clique_resistances(&self.rates[i].0, t)?
                .1
                .ok_or_else(|| Error::InvalidVertex(format!("part {i} cliques have one vertex"))),
            PairClass::SamePPNonAdj(i) => Ok(q(2) * self.side(i, true)?),
            PairClass::CrossQQ(i, j) => self.cross(i, j, false, false),
            PairClass::CrossQP(i, j) => self.cross(i, j, false, true),
            PairClass::CrossPQ(i, j) => self.cross(i, j, true, false),
            PairClass::CrossPP(i, j) => self.cross(i, j, true, true),
        }
    }

    pub fn classify(&self, u: &BlowupVertex, v: &BlowupVertex) -> Result<PairClass> {
        self.spec.index_of(u)?;
        self.spec.index_of(v)?;
        PairClass::classify(u, v)
    }

    pub fn resistance(&self, u: &BlowupVertex, v: &BlowupVertex) -> Result<BigRational> {
        if u == v {
            return Err(Error::SameVertex(self.spec.index_of(u)?));
        }
        self.class_value(self.classify(u, v)?)
    }

    pub fn resistance_by_index(&self, u: usize, v: usize) -> Result<BigRational> {
        if u == v {
            return Err(Error::SameVertex(u));
        }
        self.resistance(&self.spec.vertex_at(u)?, &self.spec.vertex_at(v)?)
    }

    /// Every class with at least one vertex pair, with its pair count.
    pub fn class_multiplicities(&self) -> Vec<(PairClass, u64)> {
        let s = &self.spec;
        let t = s.t;
        let mut out = Vec::new();
        let mut push = |c: PairClass, m: u64| {
            if m > 0 {
                out.push((c, m));
            }
        };
        for i in 0..s.k() {
            push(PairClass::SameQQ(i), c2(s.q[i]));
            push(PairClass::SamePQ(i), s.q[i] * t * s.p[i]);
            push(PairClass::SamePPAdj(i), s.p[i] * c2(t));
            push(PairClass::SamePPNonAdj(i), c2(s.p[i]) * t * t);
        }
        for i in 0..s.k() {
            for j in i + 1..s.k() {
                push(PairClass::CrossQQ(i, j), s.q[i] * s.q[j]);
                push(PairClass::CrossQP(i, j), s.q[i] * t * s.p[j]);
                push(PairClass::CrossPQ(i, j), t * s.p[i] * s.q[j]);
                push(PairClass::CrossPP(i, j), t * t * s.p[i] * s.p[j]);
            }
        }
        out
    }

    pub fn kirchhoff(&self) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (class, m) in self.class_multiplicities() {
            acc += q(m) * self.class_value(class)?;
        }
        Ok(acc)
    }
}

pub fn resistance_closed_form(
    host: &HostGraph,
    spec: &BlowupSpec,
    u: &BlowupVertex,
    v: &BlowupVertex,
) -> Result<BigRational> {
    BlowupClosedForm::new(host, spec)?.resistance(u, v)
}

pub fn kirchhoff_closed_form(host: &HostGraph, spec: &BlowupSpec) -> Result<BigRational> {
    BlowupClosedForm::new(host, spec)?.kirchhoff()
}
