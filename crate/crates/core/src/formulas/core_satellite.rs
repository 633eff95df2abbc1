use num_traits::Zero;
use serde::Serialize;

use super::{c2, q};
use crate::blowup::CoreSatelliteSpec;
use crate::error::{Error, Result};
use crate::rational::BigRational;

/// Part 0 is the core clique; parts `1..k` are satellites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CoreSatelliteClass {
    CorePair,
    CoreSatellite(usize),
    SatellitePair(usize),
    CrossSatellite(usize, usize),
}

impl CoreSatelliteClass {
    pub fn name(&self) -> String {
        match *self {
            CoreSatelliteClass::CorePair => "r1''".into(),
            CoreSatelliteClass::CoreSatellite(i) => format!("r2''[{i}]"),
            CoreSatelliteClass::SatellitePair(i) => format!("r3''[{i}]"),
            CoreSatelliteClass::CrossSatellite(i, j) => format!("r4''[{i},{j}]"),
        }
    }
}

pub fn core_satellite_class(
    spec: &CoreSatelliteSpec,
    u: usize,
    v: usize,
) -> Result<CoreSatelliteClass> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    let unbalanced = spec.as_unbalanced();
    let (i, _) = unbalanced.locate(u)?;
    let (j, _) = unbalanced.locate(v)?;
    Ok(match (i, j) {
        (0, 0) => CoreSatelliteClass::CorePair,
        (0, s) | (s, 0) => CoreSatelliteClass::CoreSatellite(s),
        (a, b) if a == b => CoreSatelliteClass::SatellitePair(a),
        (a, b) => CoreSatelliteClass::CrossSatellite(a.min(b), a.max(b)),
    })
}

fn class_value(spec: &CoreSatelliteSpec, class: CoreSatelliteClass) -> BigRational {
    let s = &spec.sizes;
    let n = q(s.iter().sum());
    let n1 = q(s[0]);
    let one = q(1);
    let apex = |i: usize| (&n1 + &one) / (&n1 * (&n1 + q(s[i])));
    match class {
        CoreSatelliteClass::CorePair => q(2) / &n,
        CoreSatelliteClass::CoreSatellite(i) => {
            (&n1 - &one) / (&n * &n1) + (&one + &n1) / (&n1 * (&n1 + q(s[i])))
        }
        CoreSatelliteClass::SatellitePair(i) => q(2) / (&n1 + q(s[i])),
        CoreSatelliteClass::CrossSatellite(i, j) => apex(i) + apex(j),
    }
}

pub fn core_satellite_resistance(
    spec: &CoreSatelliteSpec,
    u: usize,
    v: usize,
) -> Result<BigRational> {
    let spec = CoreSatelliteSpec::new(spec.sizes.clone())?;
    Ok(class_value(&spec, core_satellite_class(&spec, u, v)?))
}

pub fn core_satellite_kf(spec: &CoreSatelliteSpec) -> Result<BigRational> {
    let spec = CoreSatelliteSpec::new(spec.sizes.clone())?;
    let s = &spec.sizes;
    let k = s.len();
    let mut acc = BigRational::zero();
    if s[0] >= 2 {
        acc += q(c2(s[0])) * class_value(&spec, CoreSatelliteClass::CorePair);
    }
    for i in 1..k {
        acc += q(s[0] * s[i]) * class_value(&spec, CoreSatelliteClass::CoreSatellite(i));
        if s[i] >= 2 {
            acc += q(c2(s[i])) * class_value(&spec, CoreSatelliteClass::SatellitePair(i));
        }
        for j in i + 1..k {
            acc += q(s[i] * s[j]) * class_value(&spec, CoreSatelliteClass::CrossSatellite(i, j));
        }
    }
    Ok(acc)
}
