use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::instance::max_n;
use super::report::{Record, Report, SuiteCounts};
use super::sample::{random_family, random_host, random_rewrite, random_spec, REWRITE_OPS};
use super::CliError;
use crate::blowup::{build_blowup, HostGraph};
use crate::formulas::{
    corollary_resistance, kirchhoff_spectral, tau_closed_form, BlowupClosedForm,
};
use crate::netcore::{kf_pair_sum, resistance, resistance_matrix, tau_matrix_tree};
use crate::transforms::TerminalSet;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub count: u64,
    pub max_k: usize,
    pub max_t: u64,
    pub max_part: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            count: 100,
            max_k: 4,
            max_t: 3,
            max_part: 2,
        }
    }
}

pub const SUITES: [&str; 5] = ["kf", "resistance", "special_hosts", "tau", "transform"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Pass,
    Skip,
    Fail(Vec<Record>),
}

struct InstanceResult {
    index: u64,
    outcomes: Vec<(&'static str, Outcome)>,
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn tag(records: Vec<Record>, index: u64, suite: &str) -> Vec<Record> {
    records
        .into_iter()
        .map(|mut r| {
            r.name = format!("#{index} {suite} {}", r.name);
            r
        })
        .collect()
}

fn judge(records: Vec<Record>) -> Outcome {
    let bad: Vec<Record> = records.into_iter().filter(|r| !r.equal).collect();
    if bad.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(bad)
    }
}

fn error_outcome(e: Error) -> Outcome {
    Outcome::Fail(vec![Record {
        name: "error".into(),
        class: None,
        closed_form: String::new(),
        oracle: String::new(),
        equal: false,
        detail: Some(e.to_string()),
    }])
}

fn tau_suite(rng: &mut ChaCha8Rng, o: &VerifyOptions, cap: usize) -> Outcome {
    let k = rng.gen_range(1..=o.max_k);
    let spec = random_spec(rng, k, o.max_t, o.max_part);
    let host = HostGraph::complete(k);
    if spec.total() as usize > cap {
        return Outcome::Skip;
    }
    let closed = match tau_closed_form(&host, &spec) {
        Ok(v) => v,
        Err(Error::Disconnected) => return Outcome::Skip,
        Err(e) => return error_outcome(e),
    };
    let oracle = tau_matrix_tree(&build_blowup(&host, &spec).expect("valid spec"));
    judge(vec![Record::integer("tau", &closed, &oracle.to_integer())])
}

/// Resistance and Kf on one random host; the two suites share the instance.
fn resistance_and_kf(rng: &mut ChaCha8Rng, o: &VerifyOptions, cap: usize) -> (Outcome, Outcome) {
    let k = rng.gen_range(2..=o.max_k.max(2));
    let host = random_host(rng, k);
    let spec = random_spec(rng, k, o.max_t, o.max_part);
    if spec.total() as usize > cap {
        return (Outcome::Skip, Outcome::Skip);
    }
    let cf = match BlowupClosedForm::new(&host, &spec) {
        Ok(cf) => cf,
        Err(Error::DisconnectedHost | Error::IsolatedHostVertex(_)) => {
            return (Outcome::Skip, Outcome::Skip)
        }
        Err(e) => return (error_outcome(e.clone()), error_outcome(e)),
    };
    let net = build_blowup(&host, &spec).expect("valid spec");
    let oracle = match resistance_matrix(&net) {
        Ok(m) => m,
        Err(e) => return (error_outcome(e.clone()), error_outcome(e)),
    };
    let mut rs = Vec::new();
    for u in 0..net.vertex_count() {
        for v in u + 1..net.vertex_count() {
            match cf.resistance_by_index(u, v) {
                Ok(c) => rs.push(Record::rational(format!("R({u},{v})"), &c, &oracle[u][v])),
                Err(e) => return (error_outcome(e.clone()), error_outcome(e)),
            }
        }
    }
    let mut kf = Vec::new();
    let pair_sum = kf_pair_sum(&net).expect("connected");
    match cf.kirchhoff() {
        Ok(c) => kf.push(Record::rational("Kf", &c, &pair_sum)),
        Err(e) => return (judge(rs), error_outcome(e)),
    }
    if host.is_complete() {
        if let Ok(s) = kirchhoff_spectral(&host, &spec) {
            kf.push(Record::rational("Kf spectral", &s, &pair_sum));
        }
    }
    (judge(rs), judge(kf))
}

fn transform_suite(rng: &mut ChaCha8Rng, index: u64) -> Outcome {
    let op = (index % REWRITE_OPS.len() as u64) as usize;
    let Some(case) = random_rewrite(rng, op) else {
        return Outcome::Skip;
    };
    let t = TerminalSet::new(&case.network, case.terminals.iter().copied()).expect("valid");
    let out = match case.step.apply(&case.network, &t) {
        Ok(o) => o,
        Err(e) => {
            return Outcome::Fail(vec![Record {
                name: REWRITE_OPS[op].into(),
                class: None,
                closed_form: String::new(),
                oracle: String::new(),
                equal: false,
                detail: Some(e.to_string()),
            }])
        }
    };
    let ts: Vec<usize> = t.iter().collect();
    let mut records = Vec::new();
    for (x, &a) in ts.iter().enumerate() {
        for &b in &ts[x + 1..] {
            let before = resistance(&case.network, a, b);
            let after = resistance(&out.network, out.terminal_map[&a], out.terminal_map[&b]);
            let name = format!("{} R({a},{b})", REWRITE_OPS[op]);
            match (before, after) {
                (Ok(x), Ok(y)) => records.push(Record::rational(name, &y, &x)),
                (Err(e), _) | (_, Err(e)) => {
                    return Outcome::Fail(vec![Record {
                        name,
                        class: None,
                        closed_form: String::new(),
                        oracle: String::new(),
                        equal: false,
                        detail: Some(e.to_string()),
                    }])
                }
            }
        }
    }
    judge(records)
}

fn special_hosts_suite(rng: &mut ChaCha8Rng, o: &VerifyOptions, cap: usize) -> Outcome {
    let k = rng.gen_range(2..=o.max_k.max(2));
    let Some(family) = random_family(rng, k) else {
        return Outcome::Skip;
    };
    let spec = random_spec(rng, k, o.max_t, o.max_part);
    if spec.total() as usize > cap {
        return Outcome::Skip;
    }
    let Ok(host) = family.host(k) else {
        return Outcome::Skip;
    };
    let cf = match BlowupClosedForm::new(&host, &spec) {
        Ok(cf) => cf,
        Err(Error::DisconnectedHost | Error::IsolatedHostVertex(_)) => return Outcome::Skip,
        Err(e) => return error_outcome(e),
    };
    let vs = spec.vertices();
    let mut records = Vec::new();
    for (x, u) in vs.iter().enumerate() {
        for v in &vs[x + 1..] {
            let general = match cf.resistance(u, v) {
                Ok(g) => g,
                Err(e) => return error_outcome(e),
            };
            match corollary_resistance(&family, &spec, u, v) {
                Ok(c) => records.push(
                    Record::rational(format!("R({u},{v})"), &c, &general)
                        .with_detail(format!("{family:?}")),
                ),
                Err(e) => return error_outcome(e),
            }
        }
    }
    judge(records)
}

fn run_instance(o: &VerifyOptions, cap: usize, index: u64) -> InstanceResult {
    let mut rng = instance_rng(o.seed, index);
    let tau = tau_suite(&mut rng, o, cap);
    let (res, kf) = resistance_and_kf(&mut rng, o, cap);
    let transform = transform_suite(&mut rng, index);
    let special_hosts = special_hosts_suite(&mut rng, o, cap);
    InstanceResult {
        index,
        outcomes: vec![
            ("tau", tau),
            ("resistance", res),
            ("kf", kf),
            ("transform", transform),
            ("special_hosts", special_hosts),
        ],
    }
}

pub fn cmd_verify(o: &VerifyOptions) -> Result<Report, CliError> {
    if o.max_k < 1 || o.max_t < 1 || o.max_part < 1 {
        return Err(CliError::Usage("bounds must be at least 1".into()));
    }
    let cap = max_n()?;
    let mut results: Vec<InstanceResult> = (0..o.count)
        .into_par_iter()
        .map(|i| run_instance(o, cap, i))
        .collect();
    results.sort_by_key(|r| r.index);
    let mut summary: BTreeMap<String, SuiteCounts> = SUITES
        .iter()
        .map(|s| (s.to_string(), SuiteCounts::default()))
        .collect();
    let mut report = Report::new("verify");
    report.seed = Some(o.seed);
    for r in results {
        for (suite, outcome) in r.outcomes {
            let c = summary.get_mut(suite).expect("known suite");
            match outcome {
                Outcome::Skip => c.skipped += 1,
                Outcome::Pass => {
                    c.checked += 1;
                    c.passed += 1;
                }
                Outcome::Fail(records) => {
                    c.checked += 1;
                    c.failed += 1;
                    report.records.extend(tag(records, r.index, suite));
                }
            }
        }
    }
    report.notes.push(format!(
        "bounds: max_k={} max_t={} max_part={} max_n={cap}",
        o.max_k, o.max_t, o.max_part
    ));
    report.summary = Some(summary);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep() {
        let r = cmd_verify(&VerifyOptions {
            count: 0,
            ..Default::default()
        })
        .unwrap();
        assert!(r.records.is_empty());
        assert!(r.all_equal());
    }

    #[test]
    fn small_sweep_passes_and_is_deterministic() {
        let o = VerifyOptions {
            seed: 42,
            count: 16,
            ..Default::default()
        };
        let a = cmd_verify(&o).unwrap();
        assert!(a.all_equal(), "{}", a.to_json());
        assert_eq!(a.to_json(), cmd_verify(&o).unwrap().to_json());
    }

    #[test]
    fn rejects_zero_bounds() {
        let o = VerifyOptions {
            max_t: 0,
            ..Default::default()
        };
        assert!(cmd_verify(&o).is_err());
    }
}
