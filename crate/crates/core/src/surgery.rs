//! Integer surgery on L-space knots in homology spheres.
//!
//! For an L-space knot the `V_k` sequence equals the torsion coefficients of
//! the Alexander polynomial, `t_k = sum_{j >= 1} j a_{k+j}`. With `H_k = V_{-k}`
//! the correction terms of `Y_p(K)` in the surgery labeling `sigma` are
//!
//! ```text
//! d(Y_p(K), i) = d(Y) + d(L(p,1), i) - 2 max{ V_i, H_{i-p} }
//! ```
//!
//! and consecutive differences give the bound on `Theta` of the dual knot.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lens::{CorrectionTerms, LabelConvention, SpinCLabel};
use crate::lensd::d_closed_form_p1;
use crate::rational::ExactRational;

/// A symmetrized Alexander polynomial `sum_{j=-g}^{g} a_j t^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlexanderPoly {
    /// `coeffs[j + g] = a_j`
    coeffs: Vec<i64>,
    genus: u64,
}

impl AlexanderPoly {
    /// From coefficients in ascending exponent order `a_{-g}, ..., a_g`.
    /// Symmetric zero padding at both ends is stripped.
    pub fn from_symmetric(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(Error::InvalidAlexander(format!(
                "expected an odd number of coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().ne(coeffs.iter().rev()) {
            return Err(Error::InvalidAlexander(format!(
                "coefficients {coeffs:?} are not symmetric"
            )));
        }
        if coeffs.iter().sum::<i64>() != 1 {
            return Err(Error::InvalidAlexander(format!(
                "value at t = 1 is {}, expected 1",
                coeffs.iter().sum::<i64>()
            )));
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        let coeffs = coeffs[lead..coeffs.len() - lead].to_vec();
        let genus = (coeffs.len() / 2) as u64;
        Ok(AlexanderPoly { coeffs, genus })
    }

    pub fn unknot() -> Self {
        AlexanderPoly {
            coeffs: vec![1],
            genus: 0,
        }
    }

    /// Half the degree span; the genus for the knots handled here.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn coeff(&self, j: i64) -> i64 {
        let idx = j + self.genus as i64;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Ascending `a_{-g}, ..., a_g`.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    /// Nonzero coefficients keyed by exponent.
    pub fn to_map(&self) -> BTreeMap<i64, i64> {
        let g = self.genus as i64;
        (-g..=g)
            .filter_map(|j| {
                let c = self.coeff(j);
                (c != 0).then_some((j, c))
            })
            .collect()
    }

    /// Nonzero coefficients alternate in sign from the top, which is `+1`.
    pub fn has_lspace_pattern(&self) -> bool {
        let mut expected = 1i64;
        for &c in self.coeffs.iter().rev().filter(|&&c| c != 0) {
            if c.signum() != expected {
                return false;
            }
            expected = -expected;
        }
        true
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Accepts `T(a,b)` or a comma-separated coefficient list `c_{-g},...,c_g`.
impl FromStr for AlexanderPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s
            .strip_prefix("T(")
            .or_else(|| s.strip_prefix("t("))
            .and_then(|r| r.strip_suffix(')'))
        {
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected T(a,b), got {s:?}")))?;
            let a: i64 = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad torus parameter in {s:?}")))?;
            let b: i64 = b
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad torus parameter in {s:?}")))?;
            return torus_knot_alexander(a, b);
        }
        let coeffs = s
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad coefficient list {s:?}")))?;
        AlexanderPoly::from_symmetric(coeffs)
    }
}

/// Alexander polynomial of the `(a, b)` torus knot,
/// `t^{-g} (t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))`.
pub fn torus_knot_alexander(a: i64, b: i64) -> Result<AlexanderPoly> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidAlexander(format!(
            "torus knot parameters must be at least 2, got ({a},{b})"
        )));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NonCoprime { a, b });
    }
    let (a, b) = (a as usize, b as usize);
    let mut num = vec![0i64; a * b + 2];
    // (t^{ab} - 1)(t - 1) = t^{ab+1} - t^{ab} - t + 1
    num[a * b + 1] += 1;
    num[a * b] -= 1;
    num[1] -= 1;
    num[0] += 1;
    let q = divide_by_binomial(&num, a)?;
    let q = divide_by_binomial(&q, b)?;
    AlexanderPoly::from_symmetric(q)
}

/// Exact quotient of an ascending-coefficient polynomial by `t^n - 1`.
fn divide_by_binomial(num: &[i64], n: usize) -> Result<Vec<i64>> {
    let deg = num.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; deg + 1 - n];
    for d in (n..=deg).rev() {
        let c = rem[d];
        if c != 0 {
            quot[d - n] = c;
            rem[d] = 0;
            rem[d - n] += c;
        }
    }
    if rem.iter().any(|&c| c != 0) {
        return Err(Error::InvariantViolation(format!(
            "t^{n} - 1 does not divide the torus knot numerator"
        )));
    }
    Ok(quot)
}

/// `V_0 >= V_1 >= ... >= V_g = 0`, consecutive drops of at most one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    /// Validates the monotonicity laws; `values` runs up to and including `V_g`.
    pub fn new(values: Vec<u64>) -> Result<Self> {
        let Some(&last) = values.last() else {
            return Err(Error::InvariantViolation("empty V sequence".into()));
        };
        if last != 0 {
            return Err(Error::InvariantViolation(format!(
                "V_g = {last}, expected 0"
            )));
        }
        for (k, w) in values.windows(2).enumerate() {
            if !(w[1] <= w[0] && w[1] + 1 >= w[0]) {
                return Err(Error::InvariantViolation(format!(
                    "V_{k} = {}, V_{} = {} breaks V_k >= V_(k+1) >= V_k - 1",
                    w[0],
                    k + 1,
                    w[1]
                )));
            }
        }
        Ok(VSequence { values })
    }

    pub fn zero() -> Self {
        VSequence { values: vec![0] }
    }

    pub fn genus(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `V_k` for any integer `k`; zero past the genus, and `V_{-s} = V_s + s`.
    pub fn v(&self, k: i64) -> u64 {
        if k >= 0 {
            self.values.get(k as usize).copied().unwrap_or(0)
        } else {
            self.v(-k) + k.unsigned_abs()
        }
    }

    /// `H_k = V_{-k}`.
    pub fn h(&self, k: i64) -> u64 {
        self.v(-k)
    }
}

/// `V_k = t_k = sum_{j >= 1} j a_{k+j}` for `0 <= k <= g`.
pub fn torsion_coefficients(delta: &AlexanderPoly) -> Result<VSequence> {
    if !delta.has_lspace_pattern() {
        return Err(Error::NotLSpacePattern(format!(
            "coefficients {delta} do not alternate in sign from a leading +1"
        )));
    }
    let g = delta.genus() as i64;
    let values = (0..=g)
        .map(|k| {
            let t: i64 = (1..=g - k).map(|j| j * delta.coeff(k + j)).sum();
            u64::try_from(t).map_err(|_| {
                Error::InvariantViolation(format!("torsion coefficient t_{k} = {t} is negative"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    VSequence::new(values)
}

/// Correction terms of `p`-surgery in the `surgery-sigma` labeling, for an
/// ambient homology sphere with correction term `d_ambient`.
pub fn surgery_d(p: u64, v: &VSequence, d_ambient: &ExactRational) -> Result<CorrectionTerms> {
    if p == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let values = (0..p as i64)
        .map(|i| {
            let lens = d_closed_form_p1(
                p as i64,
                SpinCLabel::new(i, p, LabelConvention::SurgerySigma),
            )?;
            let correction = v.v(i).max(v.h(i - p as i64));
            Ok(d_ambient + &lens - ExactRational::from_integer(2 * correction))
        })
        .collect::<Result<Vec<_>>>()?;
    CorrectionTerms::new(values, LabelConvention::SurgerySigma)
}

/// The bound on `Theta([K'])` for the dual knot of `p`-surgery, with the
/// indices `i` attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBound {
    pub value: ExactRational,
    pub maximizers: Vec<u64>,
}

/// `max_{0 <= i < p} (2i + 1 - 2p)/p - 2 max{V_{i+1}, V_{p-1-i}} + 2 max{V_i, V_{p-i}}`,
/// unclamped.
pub fn dual_theta_bound(p: u64, v: &VSequence) -> Result<ExactRational> {
    dual_theta_bound_detailed(p, v).map(|b| b.value)
}

pub fn dual_theta_bound_detailed(p: u64, v: &VSequence) -> Result<DualBound> {
    if p == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let pi = p as i64;
    let mut best: Option<ExactRational> = None;
    let mut maximizers = Vec::new();
    for i in 0..pi {
        let jumps = 2 * v.v(i).max(v.v(pi - i)) as i64 - 2 * v.v(i + 1).max(v.v(pi - 1 - i)) as i64;
        let term = ExactRational::new(2 * i + 1 - 2 * pi, pi) + ExactRational::from_integer(jumps);
        match &best {
            Some(b) if term < *b => {}
            Some(b) if term == *b => maximizers.push(i as u64),
            _ => {
                best = Some(term);
                maximizers = vec![i as u64];
            }
        }
    }
    Ok(DualBound {
        value: best.expect("p >= 1 terms"),
        maximizers,
    })
}

/// Whether the dual bound reaches the upper bound `(2g - 1)/p` coming from a
/// Seifert surface of the knot. Guaranteed when `p >= 2g`.
pub fn is_dual_genus_minimizer(delta: &AlexanderPoly, p: u64) -> Result<bool> {
    let v = torsion_coefficients(delta)?;
    let bound = dual_theta_bound(p, &v)?;
    let g = delta.genus() as i64;
    Ok(bound == ExactRational::new(2 * g - 1, p as i64))
}
