use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use super::instance::{Instance, InstanceSpec};
use super::report::{Record, Report};
use super::CliError;
use crate::blowup::BlowupSpec;
use crate::formulas::{
    core_satellite_class, core_satellite_kf, core_satellite_resistance, corollary_resistance,
    kirchhoff_spectral, tau_closed_form, tau_formula_unchecked, unbalanced_class, BlowupClosedForm,
    HostFamily, UnbalancedClosedForm,
};
use crate::netcore::{kf_pair_sum, resistance_matrix, tau_matrix_tree, WeightedNetwork};
use crate::rational::format_rational;
use crate::Error;

/// Which vertex pairs `resist` reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    All,
    Classes,
    Pair(usize, usize),
}

impl std::str::FromStr for PairSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(PairSelection::All),
            "classes" => Ok(PairSelection::Classes),
            other => {
                let (a, b) = other
                    .split_once(',')
                    .ok_or_else(|| format!("expected all, classes or u,v; got {other:?}"))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| format!("bad vertex index {x:?}"))
                };
                Ok(PairSelection::Pair(parse(a)?, parse(b)?))
            }
        }
    }
}

fn base_report(command: &str, spec: &InstanceSpec) -> Report {
    let mut report = Report::new(command);
    report.instance = Some(serde_json::to_value(spec).expect("spec serializes"));
    report
}

fn family_notes(report: &mut Report, family: &Option<HostFamily>) {
    if let Some(HostFamily::CompleteMinusStar { d: 1 }) = family {
        report.notes.push(
            "complete_minus_star with d=1 removes no edge; host equals the complete graph".into(),
        );
    }
}

fn integer_of(v: &crate::rational::BigRational) -> Option<BigInt> {
    v.denom().is_one().then(|| v.numer().clone())
}

pub fn cmd_tau(spec: &InstanceSpec, diagnostic: bool) -> Result<Report, CliError> {
    let instance = spec.resolve()?;
    let Instance::Blowup {
        host, spec: bspec, ..
    } = &instance
    else {
        return Err(CliError::Usage("tau needs a blowup family".into()));
    };
    let mut report = base_report("tau", spec);
    let oracle = tau_matrix_tree(&instance.network()?);
    let oracle_int = integer_of(&oracle).expect("spanning-tree count is an integer");
    if host.is_complete() {
        let closed = tau_closed_form(host, bspec)?;
        report
            .records
            .push(Record::integer("tau", &closed, &oracle_int));
        report
            .notes
            .push("clique eigenvalue taken as n - n_i + t".into());
    } else if diagnostic {
        let formula = tau_formula_unchecked(bspec)?;
        let record = match integer_of(&formula) {
            Some(v) => Record::integer("tau", &v, &oracle_int),
            None => Record::rational("tau", &formula, &oracle),
        };
        report
            .records
            .push(record.with_detail("diagnostic: host is not complete"));
        report.notes.push(
            "diagnostic mode: the product formula is only established for complete hosts".into(),
        );
    } else {
        return Err(Error::NonCompleteHost.into());
    }
    Ok(report)
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<(), CliError> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                count: n,
            }
            .into());
        }
    }
    if u == v {
        return Err(Error::SameVertex(u).into());
    }
    Ok(())
}

/// Pairs to report, given a class function: all unordered pairs, one
/// representative per class, or a single pair.
fn select_pairs<C: Ord>(
    n: usize,
    selection: PairSelection,
    class_of: impl Fn(usize, usize) -> Result<C, CliError>,
) -> Result<Vec<(usize, usize)>, CliError> {
    match selection {
        PairSelection::Pair(u, v) => {
            check_pair(n, u, v)?;
            Ok(vec![(u, v)])
        }
        PairSelection::All => Ok((0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect()),
        PairSelection::Classes => {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && seen.insert(class_of(u, v)?) {
                        out.push((u, v));
                    }
                }
            }
            Ok(out)
        }
    }
}

fn pair_name(net: &WeightedNetwork, u: usize, v: usize) -> String {
    format!("R({},{})", net.label(u), net.label(v))
}

pub fn cmd_resist(spec: &InstanceSpec, selection: PairSelection) -> Result<Report, CliError> {
    let instance = spec.resolve()?;
    let net = instance.network()?;
    let n = net.vertex_count();
    if let PairSelection::Pair(u, v) = selection {
        check_pair(n, u, v)?;
    }
    let oracle = resistance_matrix(&net)?;
    let mut report = base_report("resist", spec);
    match &instance {
        Instance::Blowup {
            host,
            family,
            spec: bspec,
        } => {
            let cf = BlowupClosedForm::new(host, bspec)?;
            let vertex = |x: usize| bspec.vertex_at(x).map_err(CliError::from);
            let pairs = select_pairs(n, selection, |u, v| {
                Ok(cf.classify(&vertex(u)?, &vertex(v)?)?)
            })?;
            family_notes(&mut report, family);
            for (u, v) in pairs {
                let (bu, bv) = (vertex(u)?, vertex(v)?);
                let class = cf.classify(&bu, &bv)?;
                let closed = cf.resistance(&bu, &bv)?;
                report.records.push(
                    Record::rational(pair_name(&net, u, v), &closed, &oracle[u][v])
                        .with_class(class.name()),
                );
                if let Some(f) = family {
                    let table = corollary_resistance(f, bspec, &bu, &bv)?;
                    report.records.push(
                        Record::rational(pair_name(&net, u, v), &table, &oracle[u][v])
                            .with_class(class.name())
                            .with_detail("special-host table"),
                    );
                }
            }
        }
        Instance::Unbalanced { host, spec: uspec } => {
            let cf = UnbalancedClosedForm::new(host, uspec)?;
            let pairs = select_pairs(n, selection, |u, v| Ok(unbalanced_class(uspec, u, v)?))?;
            for (u, v) in pairs {
                let class = unbalanced_class(uspec, u, v)?;
                report.records.push(
                    Record::rational(pair_name(&net, u, v), &cf.resistance(u, v)?, &oracle[u][v])
                        .with_class(class.name()),
                );
            }
        }
        Instance::CoreSatellite { spec: cspec } => {
            let pairs = select_pairs(n, selection, |u, v| Ok(core_satellite_class(cspec, u, v)?))?;
            for (u, v) in pairs {
                let class = core_satellite_class(cspec, u, v)?;
                let closed = core_satellite_resistance(cspec, u, v)?;
                report.records.push(
                    Record::rational(pair_name(&net, u, v), &closed, &oracle[u][v])
                        .with_class(class.name()),
                );
            }
        }
    }
    Ok(report)
}

pub fn cmd_kf(spec: &InstanceSpec) -> Result<Report, CliError> {
    let instance = spec.resolve()?;
    let net = instance.network()?;
    let oracle = kf_pair_sum(&net)?;
    let mut report = base_report("kf", spec);
    match &instance {
        Instance::Blowup {
            host,
            family,
            spec: bspec,
        } => {
            family_notes(&mut report, family);
            let closed = BlowupClosedForm::new(host, bspec)?.kirchhoff()?;
            report
                .records
                .push(Record::rational("Kf", &closed, &oracle));
            if host.is_complete() {
                let spectral = kirchhoff_spectral(host, bspec)?;
                report
                    .records
                    .push(Record::rational("Kf", &spectral, &oracle).with_detail("spectral"));
            }
            let printed = printed_cross_kf(host, bspec)?;
            if printed != closed {
                report.notes.push(format!(
                    "cross-term multiplicity q_i p_j on r5 would give {}",
                    format_rational(&printed)
                ));
            }
        }
        Instance::Unbalanced { host, spec: uspec } => {
            let closed = UnbalancedClosedForm::new(host, uspec)?.kirchhoff()?;
            report
                .records
                .push(Record::rational("Kf", &closed, &oracle));
        }
        Instance::CoreSatellite { spec: cspec } => {
            let closed = core_satellite_kf(cspec)?;
            report
                .records
                .push(Record::rational("Kf", &closed, &oracle));
        }
    }
    Ok(report)
}

/// Kf with `q_i p_j` in place of `q_i q_j` on the r5 class; reported as a
/// note when it differs from the correct sum.
fn printed_cross_kf(
    host: &crate::blowup::HostGraph,
    spec: &BlowupSpec,
) -> Result<crate::rational::BigRational, CliError> {
    use crate::formulas::PairClass;
    let cf = BlowupClosedForm::new(host, spec)?;
    let mut acc = cf.kirchhoff()?;
    for i in 0..spec.k() {
        for j in i + 1..spec.k() {
            let wrong = spec.q[i] * spec.p[j];
            let right = spec.q[i] * spec.q[j];
            if wrong != right {
                let r5 = cf.class_value(PairClass::CrossQQ(i, j))?;
                acc +=
                    (crate::rational::int(wrong as i64) - crate::rational::int(right as i64)) * r5;
            }
        }
    }
    Ok(acc)
}
