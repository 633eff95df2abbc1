use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::report::{Record, Report};
use super::CliError;
use crate::netcore::{resistance, NetworkFile, WeightedNetwork};
use crate::rational::{parse_rational, BigRational};
use crate::transforms::{
    delta_to_y, eliminate_block, kmn_double_star_edge, kmn_double_star_vertex, mesh_to_star,
    parallel_reduce, series_reduce, y_to_delta, RewriteResult, TerminalSet,
};

/// One rewrite. Vertex ids refer to the network as it stands when the step
/// runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    Series {
        vertex: usize,
    },
    Parallel {
        u: usize,
        v: usize,
    },
    DeltaToY {
        triangle: [usize; 3],
    },
    YToDelta {
        center: usize,
    },
    MeshToStar {
        clique: Vec<usize>,
    },
    KmnDoubleStarEdge {
        xs: Vec<usize>,
        ys: Vec<usize>,
        a: Vec<String>,
    },
    KmnDoubleStarVertex {
        xs: Vec<usize>,
        ys: Vec<usize>,
        x_weights: Vec<String>,
        y_weights: Vec<String>,
    },
    EliminateBlock {
        block: Vec<usize>,
        cut: usize,
    },
}

/// Steps plus an optional terminal set in original vertex ids. Without
/// one, every vertex a step does not eliminate is treated as a terminal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Script {
    #[serde(default)]
    pub terminals: Option<Vec<usize>>,
    pub steps: Vec<Step>,
}

fn rationals(values: &[String]) -> Result<Vec<BigRational>, CliError> {
    values
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| CliError::Usage(format!("bad rational {s:?}"))))
        .collect()
}

impl Step {
    /// Vertices the step removes from the network.
    pub fn eliminated(&self) -> BTreeSet<usize> {
        match self {
            Step::Series { vertex } => [*vertex].into(),
            Step::YToDelta { center } => [*center].into(),
            Step::EliminateBlock { block, cut } => {
                block.iter().copied().filter(|v| v != cut).collect()
            }
            _ => BTreeSet::new(),
        }
    }

    pub fn apply(&self, net: &WeightedNetwork, t: &TerminalSet) -> Result<RewriteResult, CliError> {
        Ok(match self {
            Step::Series { vertex } => series_reduce(net, *vertex, t)?,
            Step::Parallel { u, v } => parallel_reduce(net, *u, *v, t)?,
            Step::DeltaToY { triangle } => delta_to_y(net, *triangle, t)?,
            Step::YToDelta { center } => y_to_delta(net, *center, t)?,
            Step::MeshToStar { clique } => mesh_to_star(net, clique, t)?,
            Step::KmnDoubleStarEdge { xs, ys, a } => {
                kmn_double_star_edge(net, xs, ys, &rationals(a)?, t)?
            }
            Step::KmnDoubleStarVertex {
                xs,
                ys,
                x_weights,
                y_weights,
            } => kmn_double_star_vertex(
                net,
                xs,
                ys,
                &rationals(x_weights)?,
                &rationals(y_weights)?,
                t,
            )?,
            Step::EliminateBlock { block, cut } => eliminate_block(net, block, *cut, t)?,
        })
    }
}

/// Runs the script, then compares every tracked terminal pair before and
/// after. Step failures are reported with their index.
pub fn cmd_transform(net: &WeightedNetwork, script: &Script) -> Result<Report, CliError> {
    let mut report = Report::new("transform");
    let explicit = script.terminals.is_some();
    // original id -> current id, for every tracked vertex
    let mut track: BTreeMap<usize, usize> = match &script.terminals {
        Some(ts) => {
            let set = TerminalSet::new(net, ts.iter().copied())?;
            set.iter().map(|v| (v, v)).collect()
        }
        None => (0..net.vertex_count()).map(|v| (v, v)).collect(),
    };
    let mut current = net.clone();
    for (index, step) in script.steps.iter().enumerate() {
        let at = |e: CliError| CliError::Step {
            index,
            message: e.to_string(),
        };
        let terminals = if explicit {
            TerminalSet::new(&current, track.values().copied()).map_err(|e| at(e.into()))?
        } else {
            let doomed = step.eliminated();
            TerminalSet::all(&current).without(&doomed)
        };
        let out = step.apply(&current, &terminals).map_err(at)?;
        track = track
            .into_iter()
            .filter_map(|(orig, cur)| out.terminal_map.get(&cur).map(|&new| (orig, new)))
            .collect();
        current = out.network;
    }
    if !explicit {
        report.notes.push(format!(
            "implicit terminals: {} original vertices survive",
            track.len()
        ));
    }
    let tracked: Vec<(usize, usize)> = track.into_iter().collect();
    for (x, &(ou, cu)) in tracked.iter().enumerate() {
        for &(ov, cv) in &tracked[x + 1..] {
            let name = format!("R({},{})", net.label(ou), net.label(ov));
            let before = resistance(net, ou, ov);
            let after = resistance(&current, cu, cv);
            let record = match (before, after) {
                (Ok(b), Ok(a)) => Record::rational(name, &a, &b),
                (b, a) => Record {
                    name,
                    class: None,
                    closed_form: a
                        .map_or_else(|e| e.to_string(), |v| crate::rational::format_rational(&v)),
                    oracle: b
                        .map_or_else(|e| e.to_string(), |v| crate::rational::format_rational(&v)),
                    equal: false,
                    detail: Some("resistance undefined on one side".into()),
                },
            };
            report.records.push(record);
        }
    }
    report.network = Some(NetworkFile::from(&current));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn unit(n: usize, edges: &[(usize, usize)]) -> WeightedNetwork {
        let mut net = WeightedNetwork::new(n);
        for &(a, b) in edges {
            net.add_unit_edge(a, b).unwrap();
        }
        net
    }

    #[test]
    fn delta_to_y_on_triangle() {
        let net = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        let script: Script =
            serde_json::from_str(r#"{"steps":[{"op":"delta_to_y","triangle":[0,1,2]}]}"#).unwrap();
        let r = cmd_transform(&net, &script).unwrap();
        assert_eq!(r.records.len(), 3);
        assert!(r.all_equal());
        let out: WeightedNetwork = r.network.unwrap().try_into().unwrap();
        assert_eq!(out.vertex_count(), 4);
        assert!(out.edges().iter().all(|e| e.resistance() == ratio(1, 3)));
    }

    #[test]
    fn double_star_on_k22() {
        let net = unit(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let script: Script = serde_json::from_str(
            r#"{"steps":[{"op":"kmn_double_star_edge","xs":[0,1],"ys":[2,3],"a":["1","1"]}]}"#,
        )
        .unwrap();
        let r = cmd_transform(&net, &script).unwrap();
        assert!(r.all_equal());
        assert!(r.records.iter().any(|x| x.oracle == "3/4"));
    }

    #[test]
    fn step_error_has_index() {
        let net = unit(4, &[(0, 1), (0, 2), (0, 3)]);
        let script: Script =
            serde_json::from_str(r#"{"terminals":[1,2,3],"steps":[{"op":"series","vertex":0}]}"#)
                .unwrap();
        match cmd_transform(&net, &script) {
            Err(CliError::Step { index: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn implicit_terminals_drop_eliminated() {
        let net = unit(3, &[(0, 1), (1, 2)]);
        let script: Script =
            serde_json::from_str(r#"{"steps":[{"op":"series","vertex":1}]}"#).unwrap();
        let r = cmd_transform(&net, &script).unwrap();
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].closed_form, "2/1");
    }
}
