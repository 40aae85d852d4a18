//! Batch tables of simple-knot invariants over all lens spaces up to a bound,
//! with JSON and CSV encodings.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lens::{normalize_lens, HomologyClass};
use crate::lensd::d_all;
use crate::parallel::{lens_pairs, map_items, map_items_sequential, Workers};
use crate::rational::ExactRational;
use crate::theta::simple_knot_report;

pub const ATLAS_SCHEMA: &str = "ratgenus-atlas-v1";
pub const CSV_HEADER: &str =
    "p,q,k,order,theta_lb,raw_bound,exact,chi,rational_norm,fibered,maximizers";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub p: u64,
    pub q: u64,
    pub k: u64,
    pub order: u64,
    pub theta_lb: ExactRational,
    pub raw_bound: ExactRational,
    pub exact: bool,
    pub chi: Option<i64>,
    pub rational_norm: Option<ExactRational>,
    pub fibered: Option<bool>,
    pub maximizers: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

fn records_for(p: u64, q: u64) -> Result<Vec<AtlasRecord>> {
    let lens = normalize_lens(p as i64, q as i64)?;
    let table = d_all(lens);
    (0..p)
        .map(|k| {
            let rep = simple_knot_report(&table, lens, HomologyClass::new(k as i64, p))?;
            Ok(AtlasRecord {
                p,
                q,
                k,
                order: rep.order_m,
                theta_lb: rep.theta_lb,
                raw_bound: rep.raw_bound,
                exact: rep.exact,
                chi: rep.chi,
                rational_norm: rep.rational_norm,
                fibered: rep.fibered,
                maximizers: rep.maximizers,
            })
        })
        .collect()
}

fn collect_sorted(parts: Vec<Result<Vec<AtlasRecord>>>) -> Result<Vec<AtlasRecord>> {
    let mut records = Vec::new();
    for part in parts {
        records.extend(part?);
    }
    records.sort_by_key(|r| (r.p, r.q, r.k));
    Ok(records)
}

/// One record per `(p, q, k)` with `2 <= p <= p_max`, sorted. `jobs` sets the
/// worker count (0 for all cores); the result does not depend on it.
pub fn generate_atlas(p_max: u64, jobs: usize) -> Result<Vec<AtlasRecord>> {
    if p_max < 2 {
        return Err(Error::InvalidOrder(p_max as i64));
    }
    let pairs = lens_pairs(2, p_max);
    collect_sorted(map_items(&pairs, jobs, |&(p, q)| records_for(p, q)))
}

/// Single-threaded reference path, available with or without `parallel`.
pub fn generate_atlas_sequential(p_max: u64) -> Result<Vec<AtlasRecord>> {
    if p_max < 2 {
        return Err(Error::InvalidOrder(p_max as i64));
    }
    let pairs = lens_pairs(2, p_max);
    collect_sorted(map_items_sequential(&pairs, |&(p, q)| records_for(p, q)))
}

/// Lens spaces handed to the workers at a time when streaming.
const STREAM_BATCH: usize = 512;

/// Streams the atlas to `out` batch by batch. The bytes equal
/// `emit_records(&generate_atlas(p_max, jobs)?, format)` without holding
/// every record in memory. Returns the number of records written.
pub fn write_atlas<W: Write>(p_max: u64, jobs: usize, format: Format, out: W) -> Result<usize> {
    if p_max < 2 {
        return Err(Error::InvalidOrder(p_max as i64));
    }
    let workers = Workers::new(jobs);
    let pairs = lens_pairs(2, p_max);
    let mut sink = Sink::begin(format, out)?;
    let mut count = 0;
    for batch in pairs.chunks(STREAM_BATCH) {
        // pairs are already sorted, and records_for emits k in order
        for part in workers.map(batch, |&(p, q)| records_for(p, q)) {
            for r in part? {
                sink.push(&r)?;
                count += 1;
            }
        }
    }
    sink.finish()?;
    Ok(count)
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

enum Sink<W: Write> {
    Json { out: W, first: bool },
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> Sink<W> {
    fn begin(format: Format, mut out: W) -> Result<Self> {
        match format {
            Format::Json => {
                write!(out, r#"{{"schema":"{ATLAS_SCHEMA}","records":["#).map_err(io_err)?;
                Ok(Sink::Json { out, first: true })
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(CSV_HEADER.split(',')).map_err(io_err)?;
                Ok(Sink::Csv(Box::new(w)))
            }
        }
    }

    fn push(&mut self, r: &AtlasRecord) -> Result<()> {
        match self {
            Sink::Json { out, first } => {
                if !*first {
                    out.write_all(b",").map_err(io_err)?;
                }
                *first = false;
                serde_json::to_writer(&mut *out, r).map_err(io_err)
            }
            Sink::Csv(w) => w.write_record(csv_row(r)).map_err(io_err),
        }
    }

    fn finish(self) -> Result<W> {
        match self {
            Sink::Json { mut out, .. } => {
                out.write_all(b"]}").map_err(io_err)?;
                out.flush().map_err(io_err)?;
                Ok(out)
            }
            Sink::Csv(w) => w.into_inner().map_err(io_err),
        }
    }
}

fn csv_row(r: &AtlasRecord) -> [String; 11] {
    let maximizers: Vec<String> = r.maximizers.iter().map(u64::to_string).collect();
    [
        r.p.to_string(),
        r.q.to_string(),
        r.k.to_string(),
        r.order.to_string(),
        r.theta_lb.to_string(),
        r.raw_bound.to_string(),
        r.exact.to_string(),
        opt(&r.chi),
        opt(&r.rational_norm),
        opt(&r.fibered),
        maximizers.join(";"),
    ]
}

fn emit_with(records: &[AtlasRecord], format: Format) -> Vec<u8> {
    let mut sink = Sink::begin(format, Vec::new()).expect("in-memory write");
    for r in records {
        sink.push(r).expect("in-memory write");
    }
    sink.finish().expect("in-memory write")
}

pub fn emit_records(records: &[AtlasRecord], format: Format) -> Vec<u8> {
    emit_with(records, format)
}

pub fn parse_records(bytes: &[u8], format: Format) -> Result<Vec<AtlasRecord>> {
    match format {
        Format::Json => parse_json(bytes),
        Format::Csv => parse_csv(bytes),
    }
}

pub fn emit_json(records: &[AtlasRecord]) -> Vec<u8> {
    emit_with(records, Format::Json)
}

pub fn emit_csv(records: &[AtlasRecord]) -> Vec<u8> {
    emit_with(records, Format::Csv)
}

#[derive(Deserialize)]
struct Envelope {
    schema: String,
    records: Vec<AtlasRecord>,
}

pub fn parse_json(bytes: &[u8]) -> Result<Vec<AtlasRecord>> {
    let env: Envelope =
        serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("atlas json: {e}")))?;
    if env.schema != ATLAS_SCHEMA {
        return Err(Error::Parse(format!("unknown atlas schema {:?}", env.schema)));
    }
    Ok(env.records)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn parse_csv(bytes: &[u8]) -> Result<Vec<AtlasRecord>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
    let header = rd
        .headers()
        .map_err(|e| Error::Parse(format!("atlas csv: {e}")))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected csv header {header:?}")));
    }
    let bad = |what: &str, v: &str| Error::Parse(format!("bad {what} field {v:?}"));
    fn opt_field<T: std::str::FromStr>(v: &str) -> std::result::Result<Option<T>, ()> {
        if v.is_empty() {
            Ok(None)
        } else {
            v.parse().map(Some).map_err(|_| ())
        }
    }
    rd.records()
        .map(|row| {
            let row = row.map_err(|e| Error::Parse(format!("atlas csv: {e}")))?;
            if row.len() != 11 {
                return Err(Error::Parse(format!("expected 11 fields, got {}", row.len())));
            }
            let int = |i: usize, what: &str| row[i].parse::<u64>().map_err(|_| bad(what, &row[i]));
            let maximizers = if row[10].is_empty() {
                vec![]
            } else {
                row[10]
                    .split(';')
                    .map(|s| s.parse().map_err(|_| bad("maximizers", &row[10])))
                    .collect::<Result<_>>()?
            };
            Ok(AtlasRecord {
                p: int(0, "p")?,
                q: int(1, "q")?,
                k: int(2, "k")?,
                order: int(3, "order")?,
                theta_lb: row[4].parse()?,
                raw_bound: row[5].parse()?,
                exact: row[6].parse().map_err(|_| bad("exact", &row[6]))?,
                chi: opt_field(&row[7]).map_err(|_| bad("chi", &row[7]))?,
                rational_norm: opt_field(&row[8]).map_err(|_| bad("rational_norm", &row[8]))?,
                fibered: opt_field(&row[9]).map_err(|_| bad("fibered", &row[9]))?,
                maximizers,
            })
        })
        .collect()
}

/// Checks the record-level invariants: one exact row per class with an
/// integral Euler characteristic, and `theta_lb = 2 ||K||` whenever `chi <= 0`.
pub fn check_record(r: &AtlasRecord) -> Result<()> {
    let fail = |msg: &str| {
        Err(Error::InvariantViolation(format!(
            "record ({},{},{}): {msg}",
            r.p, r.q, r.k
        )))
    };
    if r.theta_lb.is_negative() {
        return fail("negative theta");
    }
    let (Some(chi), Some(norm)) = (r.chi, r.rational_norm.as_ref()) else {
        return fail("missing chi or rational norm");
    };
    if chi > 1 {
        return fail("chi exceeds 1");
    }
    let twice = norm * &ExactRational::from_integer(2);
    if chi <= 0 && twice != r.theta_lb {
        return fail("theta differs from twice the rational norm");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_atlas_counts() {
        let recs = generate_atlas(3, 1).unwrap();
        assert_eq!(recs.len(), 8);
        let keys: Vec<_> = recs.iter().map(|r| (r.p, r.q, r.k)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);

        let recs = generate_atlas(2, 1).unwrap();
        assert_eq!(recs.len(), 2);
        let zero = &recs[0];
        assert_eq!(zero.k, 0);
        assert_eq!(zero.theta_lb.to_string(), "0/1");
        assert!(zero.exact);
        assert_eq!(zero.chi, Some(1));
        assert!(generate_atlas(1, 1).is_err());
    }

    #[test]
    fn csv_row_for_l21_class_one() {
        let recs = generate_atlas(2, 1).unwrap();
        let text = String::from_utf8(emit_csv(&recs[1..])).unwrap();
        assert_eq!(
            text,
            format!("{CSV_HEADER}\n2,1,1,2,0/1,-1/2,true,1,0/1,true,1\n")
        );
    }

    #[test]
    fn empty_json() {
        assert_eq!(emit_json(&[]), br#"{"schema":"ratgenus-atlas-v1","records":[]}"#.to_vec());
        assert_eq!(parse_json(&emit_json(&[])).unwrap(), vec![]);
    }

    #[test]
    fn degenerate_row_has_empty_fibered_cell() {
        let recs = generate_atlas(2, 1).unwrap();
        let text = String::from_utf8(emit_csv(&recs[..1])).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "2,1,0,1,0/1,-1/1,true,1,0/1,,0;1");
    }

    #[test]
    fn roundtrip_both_formats() {
        let recs = generate_atlas(10, 1).unwrap();
        for f in [Format::Json, Format::Csv] {
            assert_eq!(parse_records(&emit_records(&recs, f), f).unwrap(), recs);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(parse_json(br#"{"schema":"other","records":[]}"#).is_err());
        assert!(parse_csv(b"a,b\n1,2\n").is_err());
        let bad_row = format!("{CSV_HEADER}\n2,1,1,2,x,-1/2,true,1,0/1,true,1\n");
        assert!(parse_csv(bad_row.as_bytes()).is_err());
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn records_pass_invariant_check() {
        for r in generate_atlas(20, 1).unwrap() {
            check_record(&r).unwrap();
        }
    }

    #[test]
    fn streaming_matches_in_memory_emit() {
        let recs = generate_atlas(23, 1).unwrap();
        for f in [Format::Json, Format::Csv] {
            let mut buf = Vec::new();
            let n = write_atlas(23, 2, f, &mut buf).unwrap();
            assert_eq!(n, recs.len());
            assert_eq!(buf, emit_records(&recs, f));
        }
        let mut buf = Vec::new();
        write_atlas(23, 0, Format::Json, &mut buf).unwrap();
        assert_eq!(parse_json(&buf).unwrap(), recs);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        assert_eq!(generate_atlas(12, 3).unwrap(), generate_atlas_sequential(12).unwrap());
    }
}
