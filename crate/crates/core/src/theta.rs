//! Lower bounds for Turaev's function `Theta` from correction terms, and the
//! exact rational genus and fiberedness of simple knots in lens spaces.
//!
//! For a knot `K` with rational Seifert surface `F` the correction terms give
//!
//! ```text
//! 1 + (-chi(F)) / |[dF].[mu]|  >=  max_s { d(s + PD[K]) - d(s) }
//! ```
//!
//! with equality for Floer simple knots in L-spaces, and the equality case is
//! fibered exactly when the maximum is attained once.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lens::{order_of, CorrectionTerms, HomologyClass, LensSpaceId};
use crate::lensd::d_all;
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    /// `max_s { d(s + a) - d(s) } - 1`, unclamped.
    pub raw_bound: ExactRational,
    /// `max(raw_bound, 0)`.
    pub theta_lb: ExactRational,
    /// Set when the report comes from the simple-knot path, where the bound is attained.
    pub exact: bool,
    pub order_m: u64,
    pub chi: Option<i64>,
    pub rational_norm: Option<ExactRational>,
    pub fibered: Option<bool>,
    /// Labels `s` attaining the maximum, ascending.
    pub maximizers: Vec<u64>,
    /// The zero class, where the simple knot bounds a disk in a ball.
    #[serde(default)]
    pub degenerate: bool,
}

impl ThetaReport {
    /// `Theta(a) = 2 ||K||` when the report is exact.
    pub fn theta(&self) -> Option<ExactRational> {
        self.rational_norm
            .as_ref()
            .map(|n| n * &ExactRational::from_integer(2))
    }
}

/// The bound for the class `a` acting on `d` by label translation.
pub fn theta_lower_bound(d: &CorrectionTerms, a: HomologyClass) -> ThetaReport {
    let p = d.p();
    let (raw_bound, maximizers) = d.scaled().max_shift_difference(a.k(), -1);
    let theta_lb = if raw_bound.is_negative() {
        ExactRational::zero()
    } else {
        raw_bound.clone()
    };
    ThetaReport {
        raw_bound,
        theta_lb,
        exact: false,
        order_m: order_of(a, p),
        chi: None,
        rational_norm: None,
        fibered: None,
        maximizers,
        degenerate: false,
    }
}

/// Which homology class the simple knot with parameter `k` represents, in
/// the `recursion` labeling: `k -> multiplier * k (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimpleKnotAssignment {
    pub multiplier: u64,
}

impl Default for SimpleKnotAssignment {
    fn default() -> Self {
        SimpleKnotAssignment { multiplier: 1 }
    }
}

impl SimpleKnotAssignment {
    pub fn class_of(&self, lens: LensSpaceId, k: u64) -> Result<HomologyClass> {
        let p = lens.p();
        if p > 1 && self.multiplier.gcd(&p) != 1 {
            return Err(Error::NonCoprime {
                a: self.multiplier as i64,
                b: p as i64,
            });
        }
        let k = (self.multiplier as u128 * k as u128 % p as u128) as i64;
        Ok(HomologyClass::new(k, p))
    }
}

/// Exact invariants of the simple knot with parameter `k` in `lens`.
pub fn simple_knot_invariants(lens: LensSpaceId, k: u64) -> Result<ThetaReport> {
    simple_knot_invariants_with(lens, k, SimpleKnotAssignment::default())
}

pub fn simple_knot_invariants_with(
    lens: LensSpaceId,
    k: u64,
    assignment: SimpleKnotAssignment,
) -> Result<ThetaReport> {
    let class = assignment.class_of(lens, k)?;
    simple_knot_report(&d_all(lens), lens, class)
}

/// The simple-knot report for `class` given the already computed table of `lens`.
pub fn simple_knot_report(
    table: &CorrectionTerms,
    lens: LensSpaceId,
    class: HomologyClass,
) -> Result<ThetaReport> {
    let mut report = theta_lower_bound(table, class);
    report.exact = true;

    if class.k() == 0 {
        report.chi = Some(1);
        report.rational_norm = Some(ExactRational::zero());
        report.degenerate = true;
        return Ok(report);
    }

    let m = report.order_m;
    // chi = m (1 - rhs) = -m * raw_bound
    let raw = &report.raw_bound;
    let chi = match (raw.numer().to_i64(), raw.denom().to_i64()) {
        (Some(n), Some(d)) => {
            let scaled = -(n as i128) * m as i128;
            (scaled % d as i128 == 0)
                .then(|| i64::try_from(scaled / d as i128).ok())
                .flatten()
        }
        _ => {
            let (quot, rem) = (-(raw.numer() * m)).div_rem(raw.denom());
            rem.is_zero().then(|| quot.to_i64()).flatten()
        }
    }
    .ok_or_else(|| Error::LabelingInconsistency {
            p: lens.p(),
            q: lens.q(),
            k: class.k(),
            order: m,
            rhs: (&report.raw_bound + ExactRational::one()).to_string(),
        })?;
    if chi > 1 {
        return Err(Error::InvariantViolation(format!(
            "{lens} class {}: Euler characteristic {chi} exceeds 1",
            class.k()
        )));
    }
    report.chi = Some(chi);
    report.rational_norm = Some(ExactRational::from_i128((-chi).max(0) as i128, 2 * m as i128));
    report.fibered = Some(report.maximizers.len() == 1);
    Ok(report)
}

/// Whether the simple knot with parameter `k` is rationally fibered: the
/// maximum defining the bound is attained by exactly one label.
pub fn is_fibered_simple(lens: LensSpaceId, k: u64) -> Result<bool> {
    let class = SimpleKnotAssignment::default().class_of(lens, k)?;
    if class.k() == 0 {
        return Err(Error::DegenerateClass);
    }
    let report = theta_lower_bound(&d_all(lens), class);
    Ok(report.maximizers.len() == 1)
}
