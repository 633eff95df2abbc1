use serde::{Deserialize, Serialize};

use super::CliError;
use crate::blowup::{
    build_blowup, build_core_satellite, build_unbalanced, BlowupSpec, CoreSatelliteSpec, HostGraph,
    PartKind, UnbalancedSpec,
};
use crate::formulas::HostFamily;
use crate::netcore::WeightedNetwork;

pub const MAX_N_ENV: &str = "BLOWUP_MAX_N";
pub const DEFAULT_MAX_N: usize = 64;

/// Vertex cap from `BLOWUP_MAX_N`, falling back to 64.
pub fn max_n() -> Result<usize, CliError> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_N_ENV}={v:?} is not a vertex count"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HostSpec {
    Complete {
        #[serde(default)]
        k: Option<usize>,
    },
    Star {
        #[serde(default)]
        k: Option<usize>,
    },
    CompleteMinusMatching {
        #[serde(default)]
        k: Option<usize>,
        matching: Vec<(usize, usize)>,
    },
    CompleteMinusStar {
        #[serde(default)]
        k: Option<usize>,
        d: usize,
    },
    Edges {
        #[serde(default)]
        k: Option<usize>,
        edges: Vec<(usize, usize)>,
    },
}

impl HostSpec {
    fn declared_k(&self) -> Option<usize> {
        match self {
            HostSpec::Complete { k }
            | HostSpec::Star { k }
            | HostSpec::CompleteMinusMatching { k, .. }
            | HostSpec::CompleteMinusStar { k, .. }
            | HostSpec::Edges { k, .. } => *k,
        }
    }

    /// The special family this host belongs to, if it has its own table.
    pub fn family(&self) -> Option<HostFamily> {
        match self {
            HostSpec::Complete { .. } => Some(HostFamily::Complete),
            HostSpec::Star { .. } => Some(HostFamily::Star),
            HostSpec::CompleteMinusMatching { matching, .. } => {
                Some(HostFamily::CompleteMinusMatching {
                    matching: matching.clone(),
                })
            }
            HostSpec::CompleteMinusStar { d, .. } => Some(HostFamily::CompleteMinusStar { d: *d }),
            HostSpec::Edges { .. } => None,
        }
    }

    pub fn build(&self, parts: usize) -> Result<HostGraph, CliError> {
        let k = match self.declared_k() {
            Some(k) if k != parts => {
                return Err(CliError::Usage(format!(
                    "host has k={k} but the family has {parts} parts"
                )))
            }
            _ => parts,
        };
        Ok(match self {
            HostSpec::Complete { .. } => HostGraph::complete(k),
            HostSpec::Star { .. } => HostGraph::star(k),
            HostSpec::CompleteMinusMatching { matching, .. } => {
                HostGraph::complete_minus_matching(k, matching)?
            }
            HostSpec::CompleteMinusStar { d, .. } => HostGraph::complete_minus_star(k, *d)?,
            HostSpec::Edges { edges, .. } => HostGraph::new(k, edges)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Blowup { t: u64, p: Vec<u64>, q: Vec<u64> },
    Unbalanced { parts: Vec<PartKind> },
    CoreSatellite { sizes: Vec<u64> },
}

/// One JSON instance document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default)]
    pub host: Option<HostSpec>,
    pub family: FamilySpec,
}

/// A validated instance, ready for dispatch.
#[derive(Debug, Clone)]
pub enum Instance {
    Blowup {
        host: HostGraph,
        family: Option<HostFamily>,
        spec: BlowupSpec,
    },
    Unbalanced {
        host: HostGraph,
        spec: UnbalancedSpec,
    },
    CoreSatellite {
        spec: CoreSatelliteSpec,
    },
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("instance spec: {e}")))
    }

    pub fn resolve(&self) -> Result<Instance, CliError> {
        let host = |parts: usize| -> Result<(HostGraph, Option<HostFamily>), CliError> {
            let h = self
                .host
                .as_ref()
                .ok_or_else(|| CliError::Usage("this family needs a host".into()))?;
            Ok((h.build(parts)?, h.family()))
        };
        let instance = match &self.family {
            FamilySpec::Blowup { t, p, q } => {
                let spec = BlowupSpec::new(*t, p.clone(), q.clone())?;
                let (host, family) = host(spec.k())?;
                Instance::Blowup { host, family, spec }
            }
            FamilySpec::Unbalanced { parts } => {
                let spec = UnbalancedSpec::new(parts.clone())?;
                let (host, _) = host(spec.k())?;
                Instance::Unbalanced { host, spec }
            }
            FamilySpec::CoreSatellite { sizes } => {
                let spec = CoreSatelliteSpec::new(sizes.clone())?;
                if let Some(h) = &self.host {
                    if !matches!(h, HostSpec::Star { .. }) {
                        return Err(CliError::Usage(
                            "core_satellite instances live on a star host".into(),
                        ));
                    }
                    h.build(spec.k())?;
                }
                Instance::CoreSatellite { spec }
            }
        };
        let cap = max_n()?;
        let n = instance.vertex_count();
        if n > cap {
            return Err(CliError::Usage(format!(
                "instance has {n} vertices, above the cap of {cap} ({MAX_N_ENV})"
            )));
        }
        Ok(instance)
    }
}

impl Instance {
    pub fn vertex_count(&self) -> usize {
        let total: u64 = match self {
            Instance::Blowup { spec, .. } => spec.total(),
            Instance::Unbalanced { spec, .. } => spec.sizes().iter().sum(),
            Instance::CoreSatellite { spec } => spec.sizes.iter().sum(),
        };
        total as usize
    }

    pub fn network(&self) -> Result<WeightedNetwork, CliError> {
        Ok(match self {
            Instance::Blowup { host, spec, .. } => build_blowup(host, spec)?,
            Instance::Unbalanced { host, spec } => build_unbalanced(host, spec)?,
            Instance::CoreSatellite { spec } => build_core_satellite(spec)?,
        })
    }
}
