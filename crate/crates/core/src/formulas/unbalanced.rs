use num_traits::Zero;
use serde::Serialize;

use super::resistance::{all_part_rates, host_resistance};
use super::{c2, q};
use crate::blowup::{HostGraph, UnbalancedSpec};
use crate::error::{Error, Result};
use crate::rational::BigRational;
use crate::transforms::apex_clique_resistances;

/// Pair classes of an unbalanced blow-up, numbered `r1'..r5'`. Cross
/// classes keep the order of the queried vertices, so `CrossEmptyClique`
/// may have the clique part first or second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum UnbalancedClass {
    SameEmpty(usize),
    SameClique(usize),
    CrossEmptyEmpty(usize, usize),
    CrossCliqueClique(usize, usize),
    CrossEmptyClique(usize, usize),
}

impl UnbalancedClass {
    pub fn name(&self) -> String {
        match *self {
            UnbalancedClass::SameEmpty(i) => format!("r1'[{i}]"),
            UnbalancedClass::SameClique(i) => format!("r2'[{i}]"),
            UnbalancedClass::CrossEmptyEmpty(i, j) => format!("r3'[{i},{j}]"),
            UnbalancedClass::CrossCliqueClique(i, j) => format!("r4'[{i},{j}]"),
            UnbalancedClass::CrossEmptyClique(i, j) => format!("r5'[{i},{j}]"),
        }
    }
}

pub fn unbalanced_class(spec: &UnbalancedSpec, u: usize, v: usize) -> Result<UnbalancedClass> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    let (i, _) = spec.locate(u)?;
    let (j, _) = spec.locate(v)?;
    let (ci, cj) = (spec.parts[i].is_clique(), spec.parts[j].is_clique());
    Ok(match (i == j, ci, cj) {
        (true, false, _) => UnbalancedClass::SameEmpty(i),
        (true, true, _) => UnbalancedClass::SameClique(i),
        (false, false, false) => UnbalancedClass::CrossEmptyEmpty(i, j),
        (false, true, true) => UnbalancedClass::CrossCliqueClique(i, j),
        (false, _, _) => UnbalancedClass::CrossEmptyClique(i, j),
    })
}

#[derive(Debug, Clone)]
pub struct UnbalancedClosedForm {
    spec: UnbalancedSpec,
    rates: Vec<(BigRational, BigRational)>,
    nabla: Vec<Vec<BigRational>>,
}

impl UnbalancedClosedForm {
    pub fn new(host: &HostGraph, spec: &UnbalancedSpec) -> Result<Self> {
        let spec = UnbalancedSpec::new(spec.parts.clone())?;
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
        Ok(Self { spec, rates, nabla })
    }

    fn side(&self, i: usize) -> Result<BigRational> {
        let r = &self.rates[i].0;
        if self.spec.parts[i].is_clique() {
            Ok(apex_clique_resistances(r, self.spec.parts[i].size())?.0)
        } else {
            Ok(r.clone())
        }
    }

    pub fn class_value(&self, class: UnbalancedClass) -> Result<BigRational> {
        match class {
            UnbalancedClass::SameEmpty(i) => Ok(q(2) * &self.rates[i].0),
            UnbalancedClass::SameClique(i) => {
                let n_i = self.spec.parts[i].size();
                let r = &self.rates[i].0;
                let den = q(n_i) * r + q(1);
                if den.is_zero() {
                    return Err(Error::DenominatorZero);
                }
                Ok(q(2) * r / den)
            }
            UnbalancedClass::CrossEmptyEmpty(i, j)
            | UnbalancedClass::CrossCliqueClique(i, j)
            | UnbalancedClass::CrossEmptyClique(i, j) => Ok(&self.nabla[i][j]
                + self.side(i)?
                + self.side(j)?
                + &self.rates[i].1
                + &self.rates[j].1),
        }
    }

    pub fn resistance(&self, u: usize, v: usize) -> Result<BigRational> {
        self.class_value(unbalanced_class(&self.spec, u, v)?)
    }

    pub fn kirchhoff(&self) -> Result<BigRational> {
        let sizes = self.spec.sizes();
        let mut acc = BigRational::zero();
        for (i, part) in self.spec.parts.iter().enumerate() {
            if sizes[i] >= 2 {
                let class = if part.is_clique() {
                    UnbalancedClass::SameClique(i)
                } else {
                    UnbalancedClass::SameEmpty(i)
                };
                acc += q(c2(sizes[i])) * self.class_value(class)?;
            }
        }
        for i in 0..sizes.len() {
            for j in i + 1..sizes.len() {
                let class = match (
                    self.spec.parts[i].is_clique(),
                    self.spec.parts[j].is_clique(),
                ) {
                    (false, false) => UnbalancedClass::CrossEmptyEmpty(i, j),
                    (true, true) => UnbalancedClass::CrossCliqueClique(i, j),
                    _ => UnbalancedClass::CrossEmptyClique(i, j),
                };
                acc += q(sizes[i] * sizes[j]) * self.class_value(class)?;
            }
        }
        Ok(acc)
    }
}

pub fn unbalanced_resistance(
    host: &HostGraph,
    spec: &UnbalancedSpec,
    u: usize,
    v: usize,
) -> Result<BigRational> {
    UnbalancedClosedForm::new(host, spec)?.resistance(u, v)
}

pub fn unbalanced_kf(host: &HostGraph, spec: &UnbalancedSpec) -> Result<BigRational> {
    UnbalancedClosedForm::new(host, spec)?.kirchhoff()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{build_unbalanced, PartKind};
    use crate::netcore::{kf_pair_sum, resistance};

    fn check(host: &HostGraph, parts: Vec<PartKind>) {
        let spec = UnbalancedSpec::new(parts).unwrap();
        let cf = UnbalancedClosedForm::new(host, &spec).unwrap();
        let net = build_unbalanced(host, &spec).unwrap();
        for u in 0..net.vertex_count() {
            for v in 0..net.vertex_count() {
                if u != v {
                    assert_eq!(
                        cf.resistance(u, v).unwrap(),
                        resistance(&net, u, v).unwrap()
                    );
                }
            }
        }
        assert_eq!(cf.kirchhoff().unwrap(), kf_pair_sum(&net).unwrap());
    }

    #[test]
    fn join_of_two_cliques() {
        check(
            &HostGraph::complete(2),
            vec![PartKind::Clique(2), PartKind::Clique(3)],
        );
    }

    #[test]
    fn k4_minus_edge() {
        check(
            &HostGraph::complete(2),
            vec![PartKind::Clique(2), PartKind::Empty(2)],
        );
    }

    #[test]
    fn path_host_mixed() {
        check(
            &HostGraph::path(4),
            vec![
                PartKind::Empty(2),
                PartKind::Clique(3),
                PartKind::Empty(1),
                PartKind::Clique(2),
            ],
        );
    }

    #[test]
    fn class_dispatch() {
        let spec = UnbalancedSpec::new(vec![PartKind::Clique(2), PartKind::Empty(2)]).unwrap();
        assert_eq!(
            unbalanced_class(&spec, 0, 1).unwrap(),
            UnbalancedClass::SameClique(0)
        );
        assert_eq!(
            unbalanced_class(&spec, 2, 3).unwrap(),
            UnbalancedClass::SameEmpty(1)
        );
        assert_eq!(
            unbalanced_class(&spec, 2, 0).unwrap(),
            UnbalancedClass::CrossEmptyClique(1, 0)
        );
        assert_eq!(unbalanced_class(&spec, 1, 1), Err(Error::SameVertex(1)));
    }
}
