//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.

use std::collections::hash_map::DefaultHasher;
use std::hash::Hasher;
use std::io::Write;
use std::time::{Duration, Instant};

use num_integer::Integer;
use ratgenus::atlas::{write_atlas, Format};
use ratgenus::lens::{normalize_lens, HomologyClass, LensSpaceId};
use ratgenus::lensd::d_all;
use ratgenus::oracle::{
    check_conjugation, check_homeo_invariance, check_integrality, check_orientation_reversal,
    OracleReport,
};
use ratgenus::surgery::{
    dual_theta_bound, surgery_d, torsion_coefficients, torus_knot_alexander, VSequence,
};
use ratgenus::theta::{simple_knot_invariants, theta_lower_bound};
use ratgenus::ExactRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn lens(p: u64, q: u64) -> LensSpaceId {
    normalize_lens(p as i64, q as i64).unwrap()
}

fn coprime_pairs(p_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=p_max).flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| (p, q)))
}

fn from_report(rep: OracleReport) -> Outcome {
    if rep.passed() {
        Ok(format!("{} comparisons", rep.comparisons))
    } else {
        Err(format!(
            "{} failures, first {:?}",
            rep.failures.len(),
            rep.failures[0]
        ))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c01_closed_form() -> Outcome {
    let start = Instant::now();
    let mut n = 0u64;
    for p in 1..=500u64 {
        let table = d_all(lens(p, if p == 1 { 0 } else { 1 }));
        for i in 0..p {
            let (pi, ii) = (p as i64, i as i64);
            let want = r((2 * ii - pi).pow(2) - pi, 4 * pi);
            ensure(table.values()[i as usize] == want, || {
                format!("L({p},1) label {i}: {:?} != {want:?}", table.values()[i as usize])
            })?;
            n += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("{n} comparisons in {took:.2?}"))
}

fn c05_reference_table() -> Outcome {
    let rows: [(u64, u64, Vec<ExactRational>); 4] = [
        (2, 1, vec![r(1, 4), r(-1, 4)]),
        (3, 1, vec![r(1, 2), r(-1, 6), r(-1, 6)]),
        (3, 2, vec![r(1, 6), r(1, 6), r(-1, 2)]),
        (5, 2, vec![r(2, 5), r(2, 5), r(-2, 5), r(0, 1), r(-2, 5)]),
    ];
    for (p, q, want) in &rows {
        let got = d_all(lens(*p, *q));
        ensure(got.values() == want.as_slice(), || {
            format!("L({p},{q}): {:?} != {want:?}", got.values())
        })?;
    }
    let mut l31: Vec<_> = d_all(lens(3, 1)).values().iter().map(|x| -x).collect();
    let mut l32 = d_all(lens(3, 2)).values().to_vec();
    l31.sort();
    l32.sort();
    ensure(l31 == l32, || "L(3,2) is not the negation of L(3,1)".into())?;
    Ok("4 rows".into())
}

fn c06_lp1_theta() -> Outcome {
    let mut n = 0u64;
    for p in 2..=300i128 {
        let scaled: Vec<i128> = (0..p).map(|i| (2 * i - p).pow(2) - p).collect();
        let table = d_all(lens(p as u64, 1));
        for k in 0..p {
            let brute = (0..p)
                .map(|s| scaled[((s + k) % p) as usize] - scaled[s as usize])
                .max()
                .unwrap();
            ensure(brute == 4 * k * (p - k), || {
                format!("brute force L({p},1) k={k}: {brute}/(4p)")
            })?;
            let rep = theta_lower_bound(&table, HomologyClass::new(k as i64, p as u64));
            let rhs = &rep.raw_bound + ExactRational::one();
            ensure(rhs == ExactRational::new(k * (p - k), p), || {
                format!("engine L({p},1) k={k}: raw bound {:?}", rep.raw_bound)
            })?;
            n += 1;
        }
    }
    let rep = theta_lower_bound(&d_all(lens(100, 1)), HomologyClass::new(50, 100));
    let rhs = &rep.raw_bound + ExactRational::one();
    ensure(rhs == r(25, 1) && rep.theta_lb == r(24, 1), || {
        format!("L(100,1) k=50: raw bound {:?}", rep.raw_bound)
    })?;
    Ok(format!(
        "{n} classes; L(100,1) k=50 max difference {rhs}, theta_lb {}",
        rep.theta_lb
    ))
}

fn c07_generator_disk() -> Outcome {
    for p in 2..=100u64 {
        let rep = simple_knot_invariants(lens(p, 1), 1).map_err(|e| e.to_string())?;
        let theta = rep.theta().unwrap_or_else(|| r(-1, 1));
        ensure(
            rep.chi == Some(1) && theta.is_zero() && rep.fibered == Some(true),
            || format!("L({p},1) k=1: {rep:?}"),
        )?;
    }
    Ok("p = 2..100".into())
}

fn c08_integrality() -> Outcome {
    let mut n = 0u64;
    for (p, q) in coprime_pairs(100) {
        let table = d_all(lens(p, q));
        for k in 0..p {
            let rep = theta_lower_bound(&table, HomologyClass::new(k as i64, p));
            let order = ExactRational::from_integer(p / k.gcd(&p));
            let rhs = &rep.raw_bound + ExactRational::one();
            let chi = order * (ExactRational::one() - rhs);
            ensure(chi.is_integer(), || format!("L({p},{q}) k={k}: chi {chi}"))?;
            n += 1;
        }
    }
    from_report(check_integrality(100, 0)).map(|s| format!("{n} classes; library gate {s}"))
}

/// Gaps of the semigroup generated by `a` and `b`.
fn semigroup_gaps(a: u64, b: u64) -> Vec<u64> {
    let bound = (a - 1) * (b - 1);
    (0..bound)
        .filter(|&n| !(0..=n / a).any(|x| (n - x * a).is_multiple_of(b)))
        .collect()
}

fn torus_knots(max_genus: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 2..=2 * max_genus + 1 {
        for b in a + 1..=2 * max_genus + 1 {
            if a.gcd(&b) == 1 && (a - 1) * (b - 1) / 2 <= max_genus {
                out.push((a, b));
            }
        }
    }
    out
}

fn c09_v_laws() -> Outcome {
    let knots = torus_knots(30);
    for &(a, b) in &knots {
        let delta = torus_knot_alexander(a as i64, b as i64).map_err(|e| e.to_string())?;
        let v = torsion_coefficients(&delta).map_err(|e| e.to_string())?;
        let g = (a - 1) * (b - 1) / 2;
        let gaps = semigroup_gaps(a, b);
        ensure(delta.genus() == g && gaps.len() as u64 == g, || {
            format!("T({a},{b}) genus mismatch")
        })?;
        let want: Vec<u64> = (0..=g)
            .map(|k| gaps.iter().filter(|&&n| n >= g + k).count() as u64)
            .collect();
        ensure(v.values() == want.as_slice(), || {
            format!("T({a},{b}): V {:?} != {want:?}", v.values())
        })?;
        let gi = g as i64;
        for k in 0..gi {
            let step = v.v(k) - v.v(k + 1);
            ensure(step <= 1, || format!("T({a},{b}) step at {k}"))?;
            ensure(v.h(-k) == v.v(k), || format!("T({a},{b}) H_{{-{k}}}"))?;
        }
        ensure(v.v(gi - 1) == 1 && v.v(gi) == 0, || {
            format!("T({a},{b}): V_(g-1) = {}, V_g = {}", v.v(gi - 1), v.v(gi))
        })?;
    }
    Ok(format!("{} torus knots", knots.len()))
}

const PROP_KNOTS: [(i64, i64); 5] = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)];

fn prop_cases() -> Vec<(i64, i64, u64, VSequence)> {
    let mut out = Vec::new();
    for (a, b) in PROP_KNOTS {
        let delta = torus_knot_alexander(a, b).unwrap();
        let v = torsion_coefficients(&delta).unwrap();
        let g = delta.genus();
        for p in 2 * g..=2 * g + 25 {
            out.push((a, b, p, v.clone()));
        }
    }
    out
}

fn c10_dual_bound() -> Outcome {
    let cases = prop_cases();
    for (a, b, p, v) in &cases {
        let got = dual_theta_bound(*p, v).map_err(|e| e.to_string())?;
        let want = r(2 * v.genus() as i64 - 1, *p as i64);
        ensure(got == want, || format!("T({a},{b}) p={p}: {got} != {want}"))?;
    }
    let v23 = torsion_coefficients(&torus_knot_alexander(2, 3).unwrap()).unwrap();
    let v34 = torsion_coefficients(&torus_knot_alexander(3, 4).unwrap()).unwrap();
    let w1 = dual_theta_bound(2, &v23).map_err(|e| e.to_string())?;
    let w2 = dual_theta_bound(6, &v34).map_err(|e| e.to_string())?;
    ensure(w1 == r(1, 2) && w2 == r(5, 6), || format!("worked values {w1}, {w2}"))?;
    Ok(format!("{} (knot, p) cases; T(2,3) p=2 -> {w1}, T(3,4) p=6 -> {w2}", cases.len()))
}

fn c11_engine_consistency() -> Outcome {
    let cases = prop_cases();
    for (a, b, p, v) in &cases {
        let dual = dual_theta_bound(*p, v).map_err(|e| e.to_string())?;
        let table = surgery_d(*p, v, &ExactRational::zero()).map_err(|e| e.to_string())?;
        let rep = theta_lower_bound(&table, HomologyClass::new(1, *p));
        ensure(dual == rep.raw_bound, || {
            format!("T({a},{b}) p={p}: {dual} != {}", rep.raw_bound)
        })?;
    }
    Ok(format!("{} (knot, p) cases", cases.len()))
}

fn c12_unknot_surgery() -> Outcome {
    for p in 1..=100u64 {
        let table = surgery_d(p, &VSequence::zero(), &ExactRational::zero())
            .map_err(|e| e.to_string())?;
        let want = d_all(lens(p, if p == 1 { 0 } else { 1 }));
        ensure(table.values() == want.values(), || format!("p={p}"))?;
    }
    Ok("p = 1..100".into())
}

struct HashSink {
    hasher: DefaultHasher,
    bytes: u64,
}

impl Write for HashSink {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        self.hasher.write(buf);
        self.bytes += buf.len() as u64;
        Ok(buf.len())
    }

    fn flush(&mut self) -> std::io::Result<()> {
        Ok(())
    }
}

fn atlas_digest(p_max: u64, jobs: usize) -> Result<(u64, u64, usize, Duration), String> {
    let start = Instant::now();
    let mut sink = HashSink {
        hasher: DefaultHasher::new(),
        bytes: 0,
    };
    let n = write_atlas(p_max, jobs, Format::Json, &mut sink).map_err(|e| e.to_string())?;
    Ok((sink.hasher.finish(), sink.bytes, n, start.elapsed()))
}

fn c13_atlas() -> Outcome {
    let (h0, bytes, n, took) = atlas_digest(300, 0)?;
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    for jobs in [0, 1, 3] {
        let (h, b, _, _) = atlas_digest(300, jobs)?;
        ensure(h == h0 && b == bytes, || format!("jobs={jobs} output differs"))?;
    }
    Ok(format!(
        "{n} records, {bytes} bytes in {took:.2?}; identical for jobs 0/0/1/3"
    ))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("1 closed form L(p,1), p <= 500", c01_closed_form),
        ("2 orientation reversal, p <= 200", || {
            from_report(check_orientation_reversal(200, 0))
        }),
        ("3 homeomorphism invariance, p <= 200", || {
            from_report(check_homeo_invariance(200, 0))
        }),
        ("4 conjugation symmetry, p <= 200", || {
            from_report(check_conjugation(200, 0))
        }),
        ("5 reference table", c05_reference_table),
        ("6 L(p,1) theta closed form, p <= 300", c06_lp1_theta),
        ("7 generator-class disk, p <= 100", c07_generator_disk),
        ("8 integrality gate, p <= 100", c08_integrality),
        ("9 V-sequence laws, torus knots g <= 30", c09_v_laws),
        ("10 dual bound (2g-1)/p", c10_dual_bound),
        ("11 engine consistency at k = 1", c11_engine_consistency),
        ("12 unknot surgery is L(p,1), p <= 100", c12_unknot_surgery),
        ("13 atlas p <= 300 determinism and time", c13_atlas),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run)
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{took:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
