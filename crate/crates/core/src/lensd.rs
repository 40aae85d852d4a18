//! Correction terms of lens spaces.
//!
//! For `p > q >= 1` coprime and `0 <= i < p` the table is built by the
//! continued-fraction recursion
//!
//! ```text
//! d(L(p,q), i) = ((2i + 1 - p - q)^2 - pq) / 4pq  -  d(L(q, p mod q), i mod q)
//! ```
//!
//! bottoming out at `d(L(1,0), 0) = 0`. At `q = 1` this is exactly
//! `((2i - p)^2 - p) / 4p`, which is the sign convention everything else is
//! pinned to.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lens::{CorrectionTerms, LabelConvention, LensSpaceId, SpinCLabel};
use crate::rational::ExactRational;

/// `d(L(p,1), i) = ((2i - p)^2 - p) / 4p`, for a representative `0 <= i < p`.
pub fn d_closed_form_p1(p: i64, i: SpinCLabel) -> Result<ExactRational> {
    if p <= 0 {
        return Err(Error::InvalidOrder(p));
    }
    let p = BigInt::from(p);
    let i = BigInt::from(i.value());
    let t: BigInt = BigInt::from(2) * i - &p;
    Ok(ExactRational::new(&t * &t - &p, BigInt::from(4) * p))
}

/// `d(L(p,q), i)` for any residue `i`.
pub fn d_lens(lens: LensSpaceId, i: SpinCLabel) -> ExactRational {
    let table = d_all(lens);
    table.values()[(i.value() % lens.p()) as usize].clone()
}

/// Every correction term of `L(p,q)`, in `recursion` label order.
pub fn d_all(lens: LensSpaceId) -> Arc<CorrectionTerms> {
    DCache::global().table(lens.p(), lens.q())
}

/// Label budget of the process-wide cache. Tables that arrive after the
/// budget is spent are computed and returned but not retained.
pub const DEFAULT_CACHE_LABELS: usize = 500_000;

/// Memo of full label tables keyed by `(p, q)`. Readers never block each
/// other; a table is published with a single insert under the write lock, so
/// concurrent callers computing the same key get equal values.
pub struct DCache {
    tables: RwLock<HashMap<(u64, u64), Arc<CorrectionTerms>>>,
    stored_labels: RwLock<usize>,
    budget: usize,
}

impl DCache {
    pub fn with_budget(budget: usize) -> Self {
        DCache {
            tables: RwLock::new(HashMap::new()),
            stored_labels: RwLock::new(0),
            budget,
        }
    }

    pub fn global() -> &'static DCache {
        static CACHE: OnceLock<DCache> = OnceLock::new();
        CACHE.get_or_init(|| DCache::with_budget(DEFAULT_CACHE_LABELS))
    }

    pub fn len(&self) -> usize {
        self.tables.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Table for a normalized pair `(p, q)`.
    pub fn table(&self, p: u64, q: u64) -> Arc<CorrectionTerms> {
        if let Some(t) = self.tables.read().unwrap().get(&(p, q)) {
            return Arc::clone(t);
        }
        let table = Arc::new(self.compute(p, q));
        self.publish(p, q, &table);
        table
    }

    fn publish(&self, p: u64, q: u64, table: &Arc<CorrectionTerms>) {
        let mut stored = self.stored_labels.write().unwrap();
        if *stored + p as usize > self.budget {
            return;
        }
        let mut tables = self.tables.write().unwrap();
        if tables.insert((p, q), Arc::clone(table)).is_none() {
            *stored += p as usize;
        }
    }

    fn compute(&self, p: u64, q: u64) -> CorrectionTerms {
        let values = if p == 1 {
            vec![ExactRational::zero()]
        } else {
            let tail = self.table(q, p % q);
            recursion_step_small(p, q, &tail).unwrap_or_else(|| recursion_step(p, q, tail.values()))
        };
        CorrectionTerms::new(values, LabelConvention::Recursion).expect("p >= 1 entries")
    }
}

/// One step of the recursion: the `L(p,q)` table from the `L(q, p mod q)` table.
fn recursion_step(p: u64, q: u64, tail: &[ExactRational]) -> Vec<ExactRational> {
    debug_assert_eq!(tail.len() as u64, q);
    let (pi, qi) = (p as i128, q as i128);
    let den = BigInt::from(4 * pi * qi);
    (0..p)
        .map(|i| {
            let t = 2 * i as i128 + 1 - pi - qi;
            let head = ExactRational::new(BigInt::from(t * t - pi * qi), den.clone());
            head - &tail[(i % q) as usize]
        })
        .collect()
}

/// The same step over a common denominator in `i128`, when everything fits.
fn recursion_step_small(p: u64, q: u64, tail: &CorrectionTerms) -> Option<Vec<ExactRational>> {
    use num_integer::Integer;
    let (tail_den, tail_nums) = tail.scaled().as_small()?;
    let (pi, qi) = (p as i128, q as i128);
    let head_den = 4 * pi * qi;
    let den = head_den.lcm(&(tail_den as i128));
    let (head_scale, tail_scale) = (den / head_den, den / tail_den as i128);
    (0..p)
        .map(|i| {
            let t = 2 * i as i128 + 1 - pi - qi;
            let head = (t * t - pi * qi).checked_mul(head_scale)?;
            let rest = (tail_nums[(i % q) as usize] as i128).checked_mul(tail_scale)?;
            Some(ExactRational::from_i128(head.checked_sub(rest)?, den))
        })
        .collect()
}
