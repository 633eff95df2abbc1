//! Special-host tables, written out case by case rather than routed through
//! the general evaluator, so that they can be checked against it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::q;
use super::resistance::PairClass;
use crate::blowup::{BlowupSpec, BlowupVertex, HostGraph};
use crate::error::{Error, Result};
use crate::rational::BigRational;

/// Host families with their own resistance tables. Part 0 is the centre
/// for the star-shaped families; `CompleteMinusStar(d)` removes the star on
/// parts `0..d` (leaves `1..d`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HostFamily {
    Complete,
    CompleteMinusMatching { matching: Vec<(usize, usize)> },
    CompleteMinusStar { d: usize },
    Star,
}

impl HostFamily {
    pub fn host(&self, k: usize) -> Result<HostGraph> {
        match self {
            HostFamily::Complete => Ok(HostGraph::complete(k)),
            HostFamily::CompleteMinusMatching { matching } => {
                HostGraph::complete_minus_matching(k, matching)
            }
            HostFamily::CompleteMinusStar { d } => HostGraph::complete_minus_star(k, *d),
            HostFamily::Star => Ok(HostGraph::star(k)),
        }
    }
}

type R = BigRational;

/// Within-part table shared by every family; `m` is the neighbour weight.
fn within(class: PairClass, m: &R, t: &R) -> R {
    let one = q(1);
    let two = q(2);
    match class {
        PairClass::SameQQ(_) => &two / m,
        PairClass::SamePQ(_) => (&two * m + t + &one) / (m * (m + t)),
        PairClass::SamePPAdj(_) => &two / (m + t),
        PairClass::SamePPNonAdj(_) => &two * (m + &one) / (m * (m + t)),
        _ => unreachable!("cross class passed to within"),
    }
}

/// Per-endpoint term of the cross-part tables.
fn endpoint(n_i: &R, m: &R, t: &R, clique: bool) -> R {
    let one = q(1);
    if clique {
        ((n_i - &one) * (m + &one) + &one - t) / (n_i * m * (m + t))
    } else {
        (n_i - &one) / (n_i * m)
    }
}

struct Ctx<'a> {
    sizes: Vec<R>,
    n: R,
    t: R,
    family: &'a HostFamily,
}

impl Ctx<'_> {
    fn ni(&self, i: usize) -> &R {
        &self.sizes[i]
    }

    fn complete_cross(&self, i: usize, cu: bool, j: usize, cv: bool) -> R {
        let (n, t) = (&self.n, &self.t);
        let one = q(1);
        let (ni, nj) = (self.ni(i), self.ni(j));
        let p_term =
            |nk: &R| ((n - &one) * (n - nk + &one) + &one - t) / (n * (n - nk) * (n - nk + t));
        let q_term = |nk: &R| (n - &one) / (n * (n - nk));
        match (cu, cv) {
            (false, false) => (n - &one) * (q(2) * n - ni - nj) / (n * (n - ni) * (n - nj)),
            (true, false) => p_term(ni) + q_term(nj),
            (false, true) => p_term(nj) + q_term(ni),
            (true, true) => p_term(ni) + p_term(nj),
        }
    }

    fn matching_cross(
        &self,
        partner: &BTreeMap<usize, usize>,
        i: usize,
        cu: bool,
        j: usize,
        cv: bool,
    ) -> R {
        let (n, t) = (&self.n, &self.t);
        let one = q(1);
        let m_of = |k: usize| match partner.get(&k) {
            Some(&l) => n - self.ni(k) - self.ni(l),
            None => n - self.ni(k),
        };
        match (partner.get(&i), partner.get(&j)) {
            (Some(&l), _) if l == j => {
                let (ni, nj) = (self.ni(i), self.ni(j));
                let m = n - ni - nj;
                let r1 = (ni + nj) / (ni * nj * &m);
                let rest = match (cu, cv) {
                    (false, false) => (ni - &one) / (ni * &m) + (nj - &one) / (nj * &m),
                    (true, true) => {
                        q(2) * (&m + &one) / (&m * (&m + t)) - (ni + nj) / (ni * nj * &m)
                    }
                    _ => (&m + &one) / (&m * (&m + t)) + (ni * nj - ni - nj) / (ni * nj * &m),
                };
                r1 + rest
            }
            (Some(_), Some(_)) => {
                let (mi, mj) = (m_of(i), m_of(j));
                let (ni, nj) = (self.ni(i), self.ni(j));
                let r2 = (n - ni) / (n * ni * &mi) + (n - nj) / (n * nj * &mj);
                r2 + endpoint(ni, &mi, t, cu) + endpoint(nj, &mj, t, cv)
            }
            (Some(_), None) => {
                let (mi, mj) = (m_of(i), m_of(j));
                let (ni, nj) = (self.ni(i), self.ni(j));
                let r3 = (n - ni) / (n * ni * &mi) + &one / (n * nj);
                r3 + endpoint(ni, &mi, t, cu) + endpoint(nj, &mj, t, cv)
            }
            (None, Some(_)) => self.matching_cross(partner, j, cv, i, cu),
            (None, None) => {
                let (mi, mj) = (m_of(i), m_of(j));
                let (ni, nj) = (self.ni(i), self.ni(j));
                let r4 = &one / (n * ni) + &one / (n * nj);
                r4 + endpoint(ni, &mi, t, cu) + endpoint(nj, &mj, t, cv)
            }
        }
    }

    fn minus_star_cross(&self, d: usize, i: usize, cu: bool, j: usize, cv: bool) -> R {
        // 0 = centre, 1 = removed-star leaf, 2 = other
        let rank = |k: usize| match k {
            0 => 0,
            k if k < d => 1,
            _ => 2,
        };
        if rank(i) > rank(j) {
            return self.minus_star_cross(d, j, cv, i, cu);
        }
        let (n, t) = (&self.n, &self.t);
        let one = q(1);
        let n1 = self.ni(0);
        let m1: R = n - self.sizes[..d].iter().sum::<R>();
        let m_of = |k: usize| match rank(k) {
            0 => m1.clone(),
            1 => n - n1 - self.ni(k),
            _ => n - self.ni(k),
        };
        let (ni, nj) = (self.ni(i), self.ni(j));
        let (mi, mj) = (m_of(i), m_of(j));
        let head = match (rank(i), rank(j)) {
            (0, 1) => (n * nj + n1 * &m1) / (n1 * nj * (n - n1) * &m1),
            (0, 2) => (n - n1) / (n * n1 * &m1) + &one / (n * nj),
            (1, 1) => (ni + nj) / ((n - n1) * ni * nj),
            (1, 2) => (n1 * ni + n * &m1) / (n * ni * (n - n1) * &m1) + &one / (n * nj),
            _ => &one / (n * ni) + &one / (n * nj),
        };
        head + endpoint(ni, &mi, t, cu) + endpoint(nj, &mj, t, cv)
    }

    fn star_cross(&self, i: usize, cu: bool, j: usize, cv: bool) -> R {
        if j == 0 {
            return self.star_cross(j, cv, i, cu);
        }
        let (n, t) = (&self.n, &self.t);
        let one = q(1);
        let two = q(2);
        let n1 = self.ni(0);
        if i == 0 {
            let m = n - n1;
            match (cu, cv) {
                (false, false) => (n - &one) / (n1 * &m),
                (false, true) => (n1 - &one) / (n1 * &m) + (n1 + &one) / (n1 * (t + n1)),
                (true, false) => (&m + &one) / (&m * (&m + t)) + (&m - &one) / (n1 * &m),
                (true, true) => {
                    ((n1 - &one) * (&m + &one) + &one - t) / (n1 * &m * (&m + t))
                        + (n1 + &one) / (n1 * (t + n1))
                }
            }
        } else {
            match (cu, cv) {
                (false, false) => &two / n1,
                (true, true) => &two * (n1 + &one) / (n1 * (n1 + t)),
                _ => (&two * n1 + t + &one) / (n1 * (n1 + t)),
            }
        }
    }

    fn within_m(&self, i: usize) -> R {
        let n = &self.n;
        match self.family {
            HostFamily::Complete => n - self.ni(i),
            HostFamily::CompleteMinusMatching { matching } => {
                match matching.iter().find(|&&(a, b)| a == i || b == i) {
                    Some(&(a, b)) => n - self.ni(a) - self.ni(b),
                    None => n - self.ni(i),
                }
            }
            HostFamily::CompleteMinusStar { d } => match i {
                0 => n - self.sizes[..*d].iter().sum::<R>(),
                i if i < *d => n - self.ni(0) - self.ni(i),
                _ => n - self.ni(i),
            },
            HostFamily::Star => {
                if i == 0 {
                    n - self.ni(0)
                } else {
                    self.ni(0).clone()
                }
            }
        }
    }
}

/// Resistance between `u` and `v` from the special-host table of `family`.
pub fn corollary_resistance(
    family: &HostFamily,
    spec: &BlowupSpec,
    u: &BlowupVertex,
    v: &BlowupVertex,
) -> Result<BigRational> {
    spec.validate()?;
    let host = family.host(spec.k())?;
    if !host.is_connected() {
        return Err(Error::DisconnectedHost);
    }
    if let Some(i) = host.isolated_vertex() {
        return Err(Error::IsolatedHostVertex(i));
    }
    let iu = spec.index_of(u)?;
    spec.index_of(v)?;
    if u == v {
        return Err(Error::SameVertex(iu));
    }
    let ctx = Ctx {
        sizes: spec.sizes().into_iter().map(q).collect(),
        n: q(spec.total()),
        t: q(spec.t),
        family,
    };
    let class = PairClass::classify(u, v)?;
    if class.index() <= 4 {
        return Ok(within(class, &ctx.within_m(u.part), &ctx.t));
    }
    let (i, cu, j, cv) = (u.part, u.is_clique(), v.part, v.is_clique());
    Ok(match family {
        HostFamily::Complete => ctx.complete_cross(i, cu, j, cv),
        HostFamily::CompleteMinusMatching { matching } => {
            let partner: BTreeMap<usize, usize> = matching
                .iter()
                .flat_map(|&(a, b)| [(a, b), (b, a)])
                .collect();
            ctx.matching_cross(&partner, i, cu, j, cv)
        }
        HostFamily::CompleteMinusStar { d } => ctx.minus_star_cross(*d, i, cu, j, cv),
        HostFamily::Star => ctx.star_cross(i, cu, j, cv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::BlowupClosedForm;
    use crate::rational::ratio;

    fn agree(family: &HostFamily, spec: &BlowupSpec) {
        let host = family.host(spec.k()).unwrap();
        let general = BlowupClosedForm::new(&host, spec).unwrap();
        let vs = spec.vertices();
        for u in &vs {
            for v in &vs {
                if u != v {
                    assert_eq!(
                        corollary_resistance(family, spec, u, v).unwrap(),
                        general.resistance(u, v).unwrap(),
                        "{family:?} {u} {v}"
                    );
                }
            }
        }
    }

    fn mixed(k: usize) -> BlowupSpec {
        let p = (0..k as u64).map(|i| (i % 3).min(2)).collect();
        let q = (0..k as u64).map(|i| (i + 1) % 3).collect();
        BlowupSpec::new(2, p, q).unwrap()
    }

    #[test]
    fn complete_family() {
        agree(&HostFamily::Complete, &mixed(3));
        agree(
            &HostFamily::Complete,
            &BlowupSpec::independent(&[2, 2]).unwrap(),
        );
    }

    #[test]
    fn matching_family() {
        let family = HostFamily::CompleteMinusMatching {
            matching: vec![(0, 1), (2, 4)],
        };
        agree(&family, &mixed(5));
    }

    #[test]
    fn minus_star_family() {
        for d in 1..4 {
            agree(&HostFamily::CompleteMinusStar { d }, &mixed(5));
        }
    }

    #[test]
    fn star_family() {
        agree(&HostFamily::Star, &mixed(4));
        let spec = BlowupSpec::new(2, vec![0, 1, 0], vec![2, 2, 3]).unwrap();
        let u = spec.vertex_at(4).unwrap();
        let v = spec.vertex_at(5).unwrap();
        assert_eq!(
            corollary_resistance(&HostFamily::Star, &spec, &u, &v).unwrap(),
            ratio(1, 1)
        );
    }
}
