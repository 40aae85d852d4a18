//! Lens-space identifiers, Spin^c labels, homology classes, and tables of
//! correction terms indexed by label.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// The lens space `L(p, q)`, with `0 <= q < p`, `gcd(p, q) = 1`.
/// `L(1, 0)` is the three-sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LensSpaceId {
    p: u64,
    q: u64,
}

impl LensSpaceId {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        normalize_lens(p, q)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_sphere(&self) -> bool {
        self.p == 1
    }

    /// `-L(p, q) = L(p, p - q)`.
    pub fn mirror(&self) -> LensSpaceId {
        if self.p == 1 {
            return *self;
        }
        LensSpaceId {
            p: self.p,
            q: self.p - self.q,
        }
    }

    /// `L(p, q')` with `q q' = 1 (mod p)`, homeomorphic to `L(p, q)`.
    pub fn inverse_twist(&self) -> LensSpaceId {
        if self.p == 1 {
            return *self;
        }
        let inv = mod_inverse(self.q, self.p).expect("q is a unit mod p");
        LensSpaceId { p: self.p, q: inv }
    }
}

impl fmt::Display for LensSpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// Canonicalizes user input for `L(p, q)`: reduces `q` mod `p` and checks
/// coprimality. Any `q` is accepted for `p = 1`.
pub fn normalize_lens(p: i64, q: i64) -> Result<LensSpaceId> {
    if p <= 0 {
        return Err(Error::InvalidOrder(p));
    }
    if p == 1 {
        return Ok(LensSpaceId { p: 1, q: 0 });
    }
    let r = q.rem_euclid(p);
    if r.gcd(&p) != 1 {
        return Err(Error::NonCoprime { a: p, b: r });
    }
    Ok(LensSpaceId {
        p: p as u64,
        q: r as u64,
    })
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Which identification of Spin^c structures with `Z/p` a label refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelConvention {
    /// The index `i` of the lens-space recursion.
    Recursion,
    /// The surgery identification `sigma`, where `c_1` evaluates to `2i + p`
    /// on the capped-off Seifert surface.
    SurgerySigma,
}

impl fmt::Display for LabelConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelConvention::Recursion => "recursion",
            LabelConvention::SurgerySigma => "surgery-sigma",
        })
    }
}

/// A Spin^c structure on a manifold with `H^2 = Z/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinCLabel {
    value: u64,
    convention: LabelConvention,
}

impl SpinCLabel {
    /// Reduces `value` mod `p`; out-of-range representatives are fine.
    pub fn new(value: i64, p: u64, convention: LabelConvention) -> Self {
        assert!(p >= 1, "modulus must be positive");
        SpinCLabel {
            value: value.rem_euclid(p as i64) as u64,
            convention,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn convention(&self) -> LabelConvention {
        self.convention
    }

    /// Action of a homology class: translation by `a.k()`.
    pub fn shift(&self, a: HomologyClass, p: u64) -> SpinCLabel {
        SpinCLabel {
            value: (self.value + a.k % p) % p,
            convention: self.convention,
        }
    }
}

/// An element of `H_1 = Z/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HomologyClass {
    k: u64,
}

impl HomologyClass {
    pub fn new(k: i64, p: u64) -> Self {
        assert!(p >= 1, "modulus must be positive");
        HomologyClass {
            k: k.rem_euclid(p as i64) as u64,
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn negate(&self, p: u64) -> HomologyClass {
        HomologyClass {
            k: (p - self.k % p) % p,
        }
    }
}

/// Order of `k` in `Z/p`: `p / gcd(p, k)`, and 1 for the zero class.
pub fn order_of(a: HomologyClass, p: u64) -> u64 {
    let k = a.k % p;
    if k == 0 {
        return 1;
    }
    p / p.gcd(&k)
}

/// The correction terms of a manifold with `p` Spin^c structures, listed in
/// label order `0..p`.
#[derive(Debug, Clone)]
pub struct CorrectionTerms {
    values: Vec<ExactRational>,
    convention: LabelConvention,
    scaled: OnceLock<ScaledTable>,
}

impl PartialEq for CorrectionTerms {
    fn eq(&self, other: &Self) -> bool {
        self.convention == other.convention && self.values == other.values
    }
}

impl Eq for CorrectionTerms {}

impl CorrectionTerms {
    pub fn new(values: Vec<ExactRational>, convention: LabelConvention) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidOrder(0));
        }
        Ok(CorrectionTerms {
            values,
            convention,
            scaled: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn convention(&self) -> LabelConvention {
        self.convention
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    pub fn get(&self, label: SpinCLabel) -> &ExactRational {
        &self.values[label.value() as usize]
    }

    /// Value at any integer representative of a label.
    pub fn at(&self, i: i64) -> &ExactRational {
        &self.values[i.rem_euclid(self.values.len() as i64) as usize]
    }

    /// The values sorted ascending, forgetting labels.
    pub fn multiset(&self) -> Vec<ExactRational> {
        let mut v = self.values.clone();
        v.sort();
        v
    }

    pub fn negated(&self) -> CorrectionTerms {
        CorrectionTerms {
            values: self.values.iter().map(|x| -x).collect(),
            convention: self.convention,
            scaled: OnceLock::new(),
        }
    }

    /// Smallest `c` such that `d(i) = d(c - i)` for every label, i.e. the
    /// label involution `i -> c - i` preserves the table.
    pub fn conjugation_center(&self) -> Option<u64> {
        let p = self.values.len();
        let table = self.scaled();
        (0..p)
            .find(|&c| (0..p).all(|i| table.eq_at(i, (c + p - i) % p)))
            .map(|c| c as u64)
    }

    /// Integer numerators over a common denominator, for fast exact comparison.
    pub(crate) fn scaled(&self) -> &ScaledTable {
        self.scaled.get_or_init(|| ScaledTable::from_values(&self.values))
    }
}

/// A table `n_i / den` with one shared positive denominator.
#[derive(Debug, Clone)]
pub(crate) enum ScaledTable {
    Small { den: i64, nums: Vec<i64> },
    Big { den: BigInt, nums: Vec<BigInt> },
}

// keeps pairwise differences and small products inside i64/i128
const SMALL_LIMIT: i64 = i64::MAX / 4;

impl ScaledTable {
    fn from_values(values: &[ExactRational]) -> ScaledTable {
        let den = values
            .iter()
            .fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let nums: Vec<BigInt> = values
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        let small = |x: &BigInt| x.to_i64().filter(|x| x.abs() <= SMALL_LIMIT);
        match (small(&den), nums.iter().map(small).collect::<Option<Vec<i64>>>()) {
            (Some(den), Some(nums)) => ScaledTable::Small { den, nums },
            _ => ScaledTable::Big { den, nums },
        }
    }

    pub(crate) fn as_small(&self) -> Option<(i64, &[i64])> {
        match self {
            ScaledTable::Small { den, nums } => Some((*den, nums)),
            ScaledTable::Big { .. } => None,
        }
    }

    pub(crate) fn eq_at(&self, i: usize, j: usize) -> bool {
        match self {
            ScaledTable::Small { nums, .. } => nums[i] == nums[j],
            ScaledTable::Big { nums, .. } => nums[i] == nums[j],
        }
    }

    /// `max_s { d(s + k) - d(s) } + offset`, and every `s` attaining the
    /// maximum, ascending.
    pub(crate) fn max_shift_difference(&self, k: u64, offset: i64) -> (ExactRational, Vec<u64>) {
        match self {
            ScaledTable::Small { den, nums } => {
                let (best, arg) = argmax_shift(nums.len(), k, |s, t| nums[t] - nums[s]);
                let den = *den as i128;
                (ExactRational::from_i128(best as i128 + offset as i128 * den, den), arg)
            }
            ScaledTable::Big { den, nums } => {
                let (best, arg) = argmax_shift(nums.len(), k, |s, t| &nums[t] - &nums[s]);
                (ExactRational::new(best + den * offset, den.clone()), arg)
            }
        }
    }
}

fn argmax_shift<T: Ord>(p: usize, k: u64, diff: impl Fn(usize, usize) -> T) -> (T, Vec<u64>) {
    let k = (k % p as u64) as usize;
    let mut best: Option<T> = None;
    let mut arg = Vec::new();
    // s + k wraps exactly once, at s = p - k
    let targets = (k..p).chain(0..k);
    for (s, t) in targets.enumerate() {
        let d = diff(s, t);
        match best.as_ref().map(|b| d.cmp(b)) {
            None | Some(std::cmp::Ordering::Greater) => {
                best = Some(d);
                arg.clear();
                arg.push(s as u64);
            }
            Some(std::cmp::Ordering::Equal) => arg.push(s as u64),
            Some(std::cmp::Ordering::Less) => {}
        }
    }
    (best.expect("table is nonempty"), arg)
}

impl ScaledTable {
    #[cfg(test)]
    fn is_small(&self) -> bool {
        matches!(self, ScaledTable::Small { .. })
    }
}
