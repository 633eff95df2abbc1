use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::q;
use crate::blowup::{BlowupSpec, HostGraph};
use crate::error::{Error, Result};
use crate::rational::{pow, BigRational};

/// Laplacian spectrum as `(eigenvalue, multiplicity)` pairs in increasing
/// order, zero included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<(BigRational, u64)>,
}

impl SpectrumSummary {
    pub fn order(&self) -> u64 {
        self.eigenvalues.iter().map(|(_, m)| m).sum()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &(BigRational, u64)> {
        self.eigenvalues.iter().filter(|(l, _)| !l.is_zero())
    }

    /// `sum 1/lambda` over the nonzero spectrum, with multiplicity.
    pub fn reciprocal_sum(&self) -> BigRational {
        self.nonzero()
            .fold(BigRational::zero(), |acc, (l, m)| acc + q(*m) / l)
    }
}

fn require_complete(host: &HostGraph, spec: &BlowupSpec) -> Result<()> {
    spec.validate()?;
    if host.k() != spec.k() {
        return Err(Error::DimensionMismatch {
            expected: host.k(),
            got: spec.k(),
        });
    }
    if !host.is_complete() {
        return Err(Error::NonCompleteHost);
    }
    Ok(())
}

/// A complete-host blow-up is disconnected only when it is a single part
/// that is neither one clique nor one vertex.
fn require_connected(spec: &BlowupSpec) -> Result<()> {
    if spec.k() == 1 {
        let single_clique = spec.p[0] == 1 && spec.q[0] == 0;
        if !(single_clique || spec.part_size(0) == 1) {
            return Err(Error::Disconnected);
        }
    }
    Ok(())
}

/// Spectrum of `K_k` blown up by `spec`: `0`, `n` with multiplicity `k-1`,
/// and per part `n - n_i` (multiplicity `p_i + q_i - 1`) and `n - n_i + t`
/// (multiplicity `p_i (t - 1)`).
pub fn blowup_spectrum(host: &HostGraph, spec: &BlowupSpec) -> Result<SpectrumSummary> {
    require_complete(host, spec)?;
    require_connected(spec)?;
    let n = spec.total();
    let mut acc: BTreeMap<BigRational, u64> = BTreeMap::new();
    let mut push = |value: u64, mult: u64| {
        if mult > 0 {
            *acc.entry(q(value)).or_default() += mult;
        }
    };
    push(0, 1);
    push(n, spec.k() as u64 - 1);
    for i in 0..spec.k() {
        let ni = spec.part_size(i);
        push(n - ni, spec.p[i] + spec.q[i] - 1);
        push(n - ni + spec.t, spec.p[i] * (spec.t - 1));
    }
    Ok(SpectrumSummary {
        eigenvalues: acc.into_iter().collect(),
    })
}

/// `n^(k-2) prod (n - n_i)^(p_i + q_i - 1) (n - n_i + t)^(p_i (t - 1))`,
/// evaluated for any host without checking that the identity applies.
/// `0^0 = 1`.
pub fn tau_formula_unchecked(spec: &BlowupSpec) -> Result<BigRational> {
    spec.validate()?;
    let n = spec.total();
    let mut acc = pow(&q(n), spec.k() as i64 - 2);
    for i in 0..spec.k() {
        let ni = spec.part_size(i);
        acc *= pow(&q(n - ni), (spec.p[i] + spec.q[i]) as i64 - 1);
        acc *= pow(&q(n - ni + spec.t), (spec.p[i] * (spec.t - 1)) as i64);
    }
    Ok(acc)
}

/// Spanning-tree count of a complete-host blow-up.
pub fn tau_closed_form(host: &HostGraph, spec: &BlowupSpec) -> Result<BigInt> {
    require_complete(host, spec)?;
    require_connected(spec)?;
    let value = tau_formula_unchecked(spec)?;
    debug_assert!(
        value.denom().is_one(),
        "spanning-tree count must be integral"
    );
    Ok(value.to_integer())
}

/// `n * sum 1/lambda` over the closed-form spectrum (complete hosts only).
pub fn kirchhoff_spectral(host: &HostGraph, spec: &BlowupSpec) -> Result<BigRational> {
    let spectrum = blowup_spectrum(host, spec)?;
    Ok(crate::netcore::kf_spectral_check(
        &spectrum.reciprocal_sum(),
        spec.total() as usize,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn k4_minus_edge() -> (HostGraph, BlowupSpec) {
        (
            HostGraph::complete(2),
            BlowupSpec::new(2, vec![1, 0], vec![0, 2]).unwrap(),
        )
    }

    #[test]
    fn spectrum_of_k4_minus_edge() {
        let (h, s) = k4_minus_edge();
        let spec = blowup_spectrum(&h, &s).unwrap();
        assert_eq!(
            spec.eigenvalues,
            vec![(int(0), 1), (int(2), 1), (int(4), 2)]
        );
        assert_eq!(spec.order(), 4);
    }

    #[test]
    fn spectrum_of_complete_graph() {
        for t in 2..6u64 {
            let s = BlowupSpec::new(t, vec![1], vec![0]).unwrap();
            let spec = blowup_spectrum(&HostGraph::complete(1), &s).unwrap();
            assert_eq!(spec.eigenvalues, vec![(int(0), 1), (q(t), t - 1)]);
        }
    }

    #[test]
    fn spectrum_of_complete_multipartite() {
        let s = BlowupSpec::independent(&[1, 2, 3]).unwrap();
        let spec = blowup_spectrum(&HostGraph::complete(3), &s).unwrap();
        // n = 6: {0, 6^2, 4^1, 3^2}
        assert_eq!(
            spec.eigenvalues,
            vec![(int(0), 1), (int(3), 2), (int(4), 1), (int(6), 2)]
        );
    }

    #[test]
    fn tau_fixtures() {
        let (h, s) = k4_minus_edge();
        assert_eq!(tau_closed_form(&h, &s).unwrap(), BigInt::from(8));
        let k22 = BlowupSpec::independent(&[2, 2]).unwrap();
        assert_eq!(tau_closed_form(&h, &k22).unwrap(), BigInt::from(4));
        for t in 1..8u64 {
            let s = BlowupSpec::new(t, vec![1], vec![0]).unwrap();
            let cayley = if t == 1 { 1 } else { t.pow(t as u32 - 2) };
            assert_eq!(
                tau_closed_form(&HostGraph::complete(1), &s).unwrap(),
                BigInt::from(cayley)
            );
        }
    }

    #[test]
    fn scope_errors() {
        let s = BlowupSpec::independent(&[1, 1, 1]).unwrap();
        assert_eq!(
            tau_closed_form(&HostGraph::path(3), &s),
            Err(Error::NonCompleteHost)
        );
        let split = BlowupSpec::new(2, vec![1], vec![1]).unwrap();
        assert_eq!(
            tau_closed_form(&HostGraph::complete(1), &split),
            Err(Error::Disconnected)
        );
        // the unchecked product still evaluates: 3^1 for P_3[1,1,1]
        assert_eq!(tau_formula_unchecked(&s).unwrap(), int(3));
    }

    #[test]
    fn spectral_kirchhoff_fixtures() {
        let s = BlowupSpec::new(5, vec![1], vec![0]).unwrap();
        assert_eq!(
            kirchhoff_spectral(&HostGraph::complete(1), &s).unwrap(),
            int(4)
        );
        let k22 = BlowupSpec::independent(&[2, 2]).unwrap();
        assert_eq!(
            kirchhoff_spectral(&HostGraph::complete(2), &k22).unwrap(),
            int(5)
        );
    }
}
