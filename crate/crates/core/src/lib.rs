//! Isoperimetric problems for the radial density `rho(r) = r^p + a`.
//!
//! * [`interval1d`]: exact minimisers on the line, plus the reduction of
//!   finite unions of intervals to a single interval.
//! * [`radial`]: origin-centred balls for every `p`, and the off-centre
//!   circle and sphere for `p = 2`.
//! * [`evolver`]: constrained gradient flow for curves and axisymmetric
//!   surfaces when no closed form is available.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod error;
pub mod evolver;
pub mod interval1d;
pub mod numerics;
pub mod radial;

pub use density::{critical_offset, Density, Dimension};
pub use error::{Error, Result};
pub use evolver::{evolve_2d, evolve_3d_axisym, EvolveConfig, EvolveReport, PolyCurve, Profile};
pub use interval1d::{Branch1d, Interval, IntervalSolution};
pub use radial::{BallBranch, BallSolution};

/// Formats with 12 significant digits, trimming trailing zeros.
///
/// Plain notation is used for decimal exponents in `-5..12`, scientific
/// otherwise. Negative zero prints as `0`.
pub fn fmt12(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
