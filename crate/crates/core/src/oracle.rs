//! Independent verification of the correction-term tables and the bounds
//! built on them.
//!
//! Each check returns a report listing every failing witness. Nothing here
//! calls the lens-space recursion except through the public table API, and
//! the closed-form checks evaluate `((2i - p)^2 - p) / 4p` on their own.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::lens::{
    normalize_lens, CorrectionTerms, HomologyClass, LabelConvention, LensSpaceId, SpinCLabel,
};
use crate::lensd::d_all;
use crate::parallel::{lens_pairs, map_items};
use crate::rational::ExactRational;
use crate::theta::{simple_knot_invariants, simple_knot_report, theta_lower_bound};

pub const VERIFY_SCHEMA: &str = "ratgenus-verify-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub p: u64,
    pub q: Option<u64>,
    pub i: Option<u64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub check: String,
    pub p_max: u64,
    pub comparisons: u64,
    pub failures: Vec<Witness>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(check: &str, p_max: u64, parts: Vec<(u64, Vec<Witness>)>) -> Self {
        let mut comparisons = 0;
        let mut failures = Vec::new();
        for (n, w) in parts {
            comparisons += n;
            failures.extend(w);
        }
        failures.sort_by_key(|w| (w.p, w.q, w.i));
        OracleReport {
            check: check.to_string(),
            p_max,
            comparisons,
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub pmax: u64,
    pub passed: bool,
    pub checks: Vec<OracleReport>,
}

fn witness(p: u64, q: Option<u64>, i: Option<u64>, detail: String) -> Witness {
    Witness { p, q, i, detail }
}

fn lens(p: u64, q: u64) -> LensSpaceId {
    normalize_lens(p as i64, q as i64).expect("enumerated pairs are coprime")
}

/// `((2i - p)^2 - p) / 4p`, written out independently of the library.
fn lp1_direct(p: u64, i: u64) -> ExactRational {
    let (p, i) = (p as i128, i as i128);
    ExactRational::new((2 * i - p) * (2 * i - p) - p, 4 * p)
}

/// Recursion values on `L(p,1)` against the closed form, every `p <= p_max`.
pub fn check_closed_form(p_max: u64, jobs: usize) -> OracleReport {
    let ps: Vec<u64> = (1..=p_max).collect();
    let parts = map_items(&ps, jobs, |&p| {
        let table = d_all(lens(p, 1));
        let fails = (0..p)
            .filter_map(|i| {
                let label = SpinCLabel::new(i as i64, p, LabelConvention::Recursion);
                let got = table.get(label);
                let want = lp1_direct(p, i);
                (*got != want).then(|| witness(p, Some(1), Some(i), format!("{got} != {want}")))
            })
            .collect();
        (p, fails)
    });
    OracleReport::merge("closed_form", p_max, parts)
}

/// Multiset of `L(p, p-q)` is the negation of the multiset of `L(p, q)`.
pub fn check_orientation_reversal(p_max: u64, jobs: usize) -> OracleReport {
    let pairs = lens_pairs(2, p_max);
    let parts = map_items(&pairs, jobs, |&(p, q)| {
        let l = lens(p, q);
        let mirror = d_all(l.mirror()).multiset();
        let negated = d_all(l).negated().multiset();
        let fails = if mirror == negated {
            vec![]
        } else {
            vec![witness(p, Some(q), None, format!("multiset of {} is not the negation", l.mirror()))]
        };
        (1, fails)
    });
    OracleReport::merge("orientation_reversal", p_max, parts)
}

/// `L(p, q)` and `L(p, q^-1)` carry the same multiset.
pub fn check_homeo_invariance(p_max: u64, jobs: usize) -> OracleReport {
    let pairs = lens_pairs(2, p_max);
    let parts = map_items(&pairs, jobs, |&(p, q)| {
        let l = lens(p, q);
        let other = l.inverse_twist();
        let fails = if d_all(l).multiset() == d_all(other).multiset() {
            vec![]
        } else {
            vec![witness(p, Some(q), None, format!("multiset differs from {other}"))]
        };
        (1, fails)
    });
    OracleReport::merge("homeo_invariance", p_max, parts)
}

/// Some `i -> c - i` preserves each table, and the raw bound of `k` equals
/// that of `p - k`.
pub fn check_conjugation(p_max: u64, jobs: usize) -> OracleReport {
    let pairs = lens_pairs(2, p_max);
    let parts = map_items(&pairs, jobs, |&(p, q)| {
        let table = d_all(lens(p, q));
        let mut fails = Vec::new();
        if table.conjugation_center().is_none() {
            fails.push(witness(p, Some(q), None, "no label involution preserves the table".into()));
        }
        for k in 1..p {
            let a = theta_lower_bound(&table, HomologyClass::new(k as i64, p)).raw_bound;
            let b = theta_lower_bound(&table, HomologyClass::new((p - k) as i64, p)).raw_bound;
            if a != b {
                fails.push(witness(p, Some(q), Some(k), format!("raw bound {a} vs {b} for p - k")));
            }
        }
        (p, fails)
    });
    OracleReport::merge("conjugation", p_max, parts)
}

/// Hand-evaluated tables, in label order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub p: u64,
    pub q: u64,
    pub d: Vec<ExactRational>,
}

pub fn reference_table() -> Vec<ReferenceRow> {
    let row = |p, q, vals: &[(i64, i64)]| ReferenceRow {
        p,
        q,
        d: vals.iter().map(|&(n, d)| ExactRational::new(n, d)).collect(),
    };
    vec![
        row(2, 1, &[(1, 4), (-1, 4)]),
        row(3, 1, &[(1, 2), (-1, 6), (-1, 6)]),
        row(3, 2, &[(1, 6), (1, 6), (-1, 2)]),
        row(5, 2, &[(2, 5), (2, 5), (-2, 5), (0, 1), (-2, 5)]),
    ]
}

pub fn check_reference_table() -> OracleReport {
    let parts = reference_table()
        .into_iter()
        .map(|row| {
            let got = d_all(lens(row.p, row.q));
            let fails = if got.values() == row.d.as_slice() {
                vec![]
            } else {
                vec![witness(
                    row.p,
                    Some(row.q),
                    None,
                    format!("got {:?}, expected {:?}", got.values(), row.d),
                )]
            };
            (row.d.len() as u64, fails)
        })
        .collect();
    OracleReport::merge("reference_table", 5, parts)
}

/// On `L(p,1)` the bound for class `k` is `k(p - k)/p - 1`. Brute force over
/// labels with the closed form scaled by `4p`, compared to both the formula
/// and the bound engine.
pub fn check_theta_closed_form(p_max: u64, jobs: usize) -> OracleReport {
    let ps: Vec<u64> = (1..=p_max).collect();
    let parts = map_items(&ps, jobs, |&p| {
        let pi = p as i128;
        let scaled: Vec<i128> = (0..pi).map(|i| (2 * i - pi) * (2 * i - pi) - pi).collect();
        let table = d_all(lens(p, 1));
        let mut fails = Vec::new();
        for k in 0..p as usize {
            let brute = (0..p as usize)
                .map(|s| scaled[(s + k) % p as usize] - scaled[s])
                .max()
                .expect("p >= 1");
            let brute = ExactRational::new(brute, 4 * pi);
            let formula = ExactRational::new(k as i128 * (pi - k as i128), pi);
            let engine = theta_lower_bound(&table, HomologyClass::new(k as i64, p)).raw_bound
                + ExactRational::one();
            if brute != formula || engine != formula {
                fails.push(witness(
                    p,
                    Some(1),
                    Some(k as u64),
                    format!("brute {brute}, engine {engine}, formula {formula}"),
                ));
            }
        }
        (p, fails)
    });
    OracleReport::merge("theta_closed_form", p_max, parts)
}

/// `order * (1 - (raw_bound + 1))` is an integer for every class.
pub fn check_integrality(p_max: u64, jobs: usize) -> OracleReport {
    let pairs = lens_pairs(2, p_max);
    let parts = map_items(&pairs, jobs, |&(p, q)| {
        let l = lens(p, q);
        let table = d_all(l);
        let fails = (0..p)
            .filter_map(|k| {
                simple_knot_report(&table, l, HomologyClass::new(k as i64, p))
                    .err()
                    .map(|e| witness(p, Some(q), Some(k), e.to_string()))
            })
            .collect();
        (p, fails)
    });
    OracleReport::merge("integrality", p_max, parts)
}

/// The core of `L(p,1)` (class 1) bounds a disk and is fibered.
pub fn check_generator_disk(p_max: u64, jobs: usize) -> OracleReport {
    let ps: Vec<u64> = (2..=p_max).collect();
    let parts = map_items(&ps, jobs, |&p| {
        let fails = match simple_knot_invariants(lens(p, 1), 1) {
            Ok(rep)
                if rep.chi == Some(1)
                    && rep.theta() == Some(ExactRational::zero())
                    && rep.theta_lb.is_zero()
                    && rep.fibered == Some(true) => vec![],
            Ok(rep) => vec![witness(
                p,
                Some(1),
                Some(1),
                format!("chi {:?}, theta {:?}, fibered {:?}", rep.chi, rep.theta(), rep.fibered),
            )],
            Err(e) => vec![witness(p, Some(1), Some(1), e.to_string())],
        };
        (1, fails)
    });
    OracleReport::merge("generator_disk", p_max, parts)
}

/// Every check above at one size.
pub fn verify_all(p_max: u64, jobs: usize) -> VerifyReport {
    let checks = vec![
        check_closed_form(p_max, jobs),
        check_orientation_reversal(p_max, jobs),
        check_homeo_invariance(p_max, jobs),
        check_conjugation(p_max, jobs),
        check_reference_table(),
        check_theta_closed_form(p_max, jobs),
        check_integrality(p_max, jobs),
        check_generator_disk(p_max, jobs),
    ];
    VerifyReport {
        schema: VERIFY_SCHEMA.to_string(),
        pmax: p_max,
        passed: checks.iter().all(OracleReport::passed),
        checks,
    }
}

/// Multisets of two tables agree after negating the second.
pub fn multisets_negate(a: &CorrectionTerms, b: &CorrectionTerms) -> bool {
    a.multiset() == b.negated().multiset()
}

/// Number of normalized lens spaces `L(p, q)` with `2 <= p <= p_max`.
pub fn count_lens_spaces(p_max: u64) -> u64 {
    (2..=p_max).map(|p| (1..p).filter(|q| q.gcd(&p) == 1).count() as u64).sum()
}
