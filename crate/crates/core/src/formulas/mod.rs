//! Closed forms for generalized blow-ups and their relatives.
//!
//! Every function here is pure arithmetic on the instance parameters plus,
//! for cross-part resistances, the all-pairs resistances of the small
//! vertex-weighted host. None of them touches the blown-up graph itself.

mod core_satellite;
mod corollaries;
mod resistance;
mod tau;
mod unbalanced;

pub use core_satellite::{
    core_satellite_class, core_satellite_kf, core_satellite_resistance, CoreSatelliteClass,
};
pub use corollaries::{corollary_resistance, HostFamily};
pub use resistance::{
    host_resistance, kirchhoff_closed_form, resistance_closed_form, BlowupClosedForm,
    HostLocalRates, PairClass,
};
pub use tau::{
    blowup_spectrum, kirchhoff_spectral, tau_closed_form, tau_formula_unchecked, SpectrumSummary,
};
pub use unbalanced::{
    unbalanced_class, unbalanced_kf, unbalanced_resistance, UnbalancedClass, UnbalancedClosedForm,
};

use crate::rational::{int, BigRational};

pub(crate) fn q(v: u64) -> BigRational {
    int(v as i64)
}

pub(crate) fn c2(v: u64) -> u64 {
    v * v.saturating_sub(1) / 2
}
