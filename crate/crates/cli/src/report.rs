//! Per-pair records and their JSON / CSV encodings.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use twobridge_core::audit::{CheckCount, PairAudit, QMode, RangeAuditReport};
use twobridge_core::{decompose, CheckOutcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub p: u64,
    pub q: u64,
    pub l: usize,
    pub alpha: Vec<u64>,
    pub b: Vec<u64>,
    pub sigma: i64,
    pub delta_coeffs: Vec<i64>,
    pub i0: Option<usize>,
    pub radius_m: Option<usize>,
    pub components: u8,
    pub checks: BTreeMap<String, bool>,
    pub decomposition: String,
}

impl PairReport {
    /// `None` when the pair could not be traced; the audit then holds a
    /// failed `TRACE` outcome.
    pub fn from_audit(audit: &PairAudit) -> Option<Self> {
        let a = audit.analysis.as_ref()?;
        let mut checks = BTreeMap::new();
        for o in &audit.outcomes {
            *checks.entry(o.check.name().to_owned()).or_insert(true) &= o.passed;
        }
        Some(PairReport {
            p: a.pair.p(),
            q: a.pair.q(),
            l: a.length,
            alpha: a.alpha.clone(),
            b: a.bottom.clone(),
            sigma: a.sigma,
            delta_coeffs: a.alexander.signed_coeffs().collect(),
            i0: a.profile.i0,
            radius_m: a.profile.radius_m,
            components: a.pair.components(),
            checks,
            decomposition: decompose(a.pair).to_string(),
        })
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|&v| v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "p",
    "q",
    "l",
    "alpha",
    "b",
    "sigma",
    "delta",
    "i0",
    "radius",
    "components",
    "all_checks_pass",
    "decomposition",
];

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl PairReport {
    pub fn csv_record(&self) -> [String; 12] {
        [
            self.p.to_string(),
            self.q.to_string(),
            self.l.to_string(),
            join(&self.alpha),
            join(&self.b),
            self.sigma.to_string(),
            join(&self.delta_coeffs),
            opt(self.i0),
            opt(self.radius_m),
            self.components.to_string(),
            self.all_checks_pass().to_string(),
            self.decomposition.clone(),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Streams pair rows, then (for JSON) one trailing aggregate object.
pub struct RowWriter<W: Write> {
    format: Format,
    csv: Option<csv::Writer<W>>,
    json: Option<W>,
}

impl<W: Write> RowWriter<W> {
    pub fn new(format: Format, out: W) -> std::io::Result<Self> {
        Ok(match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(CSV_HEADER)?;
                RowWriter { format, csv: Some(w), json: None }
            }
            Format::Json => RowWriter { format, csv: None, json: Some(out) },
        })
    }

    pub fn row(&mut self, r: &PairReport) -> std::io::Result<()> {
        match self.format {
            Format::Csv => self.csv.as_mut().expect("csv writer").write_record(r.csv_record())?,
            Format::Json => writeln!(self.json.as_mut().expect("json writer"), "{}", r.to_json())?,
        }
        Ok(())
    }

    pub fn finish(mut self, aggregate: &Aggregate) -> std::io::Result<()> {
        match self.format {
            Format::Csv => self.csv.take().expect("csv writer").flush(),
            Format::Json => {
                let out = self.json.as_mut().expect("json writer");
                let line = serde_json::json!({ "aggregate": aggregate });
                writeln!(out, "{line}")?;
                out.flush()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub passed: u64,
    pub failed: u64,
}

impl From<CheckCount> for CountRecord {
    fn from(c: CheckCount) -> Self {
        CountRecord { passed: c.passed, failed: c.failed }
    }
}

/// Serialisable view of a [`RangeAuditReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregate {
    pub max_p: u64,
    pub max_q: Option<u64>,
    pub q_mode: String,
    pub move_checks: bool,
    pub pairs: u64,
    pub complete: bool,
    pub failures: u64,
    pub resolved_t2_formula: Option<String>,
    pub checks: BTreeMap<String, CountRecord>,
    pub failure_details: Vec<String>,
}

impl From<&RangeAuditReport> for Aggregate {
    fn from(r: &RangeAuditReport) -> Self {
        let (q_mode, max_q) = match r.bounds.q_mode {
            QMode::Canonical => ("canonical", None),
            QMode::Full { max_q } => ("full", Some(max_q)),
        };
        Aggregate {
            max_p: r.bounds.max_p,
            max_q,
            q_mode: q_mode.to_owned(),
            move_checks: r.bounds.move_checks,
            pairs: r.pairs_audited,
            complete: r.complete,
            failures: r.failure_count(),
            resolved_t2_formula: r.resolved_t2_formula().map(|f| f.name().to_owned()),
            checks: r.counts.iter().map(|(id, c)| (id.name().to_owned(), (*c).into())).collect(),
            failure_details: r.failures.iter().map(CheckOutcome::to_string).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use twobridge_core::{audit_all, AdmissiblePair};

    fn report(p: u64, q: u64) -> PairReport {
        PairReport::from_audit(&audit_all(AdmissiblePair::new(p, q).unwrap())).unwrap()
    }

    #[test]
    fn four_three_fields() {
        let r = report(4, 3);
        assert_eq!((r.l, r.sigma, r.components), (2, 1, 2));
        assert_eq!(r.alpha, [2, 2]);
        assert_eq!(r.b, [2, 1, 0]);
        assert_eq!(r.delta_coeffs, [2, -2]);
        assert_eq!(r.decomposition, "T2 T1");
        assert!(r.all_checks_pass());
        let json = r.to_json();
        assert!(json.contains(r#""alpha":[2,2]"#));
        assert!(json.contains(r#""b":[2,1,0]"#));
        assert!(json.contains(r#""sigma":1"#));
        assert!(json.contains(r#""l":2"#));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for (p, q) in [(1, 1), (4, 3), (5, 3), (3, 5), (12, 7), (9, 31)] {
            let json = report(p, q).to_json();
            let back: PairReport = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_json(), json);
        }
    }

    #[test]
    fn csv_columns() {
        let rec = report(5, 3).csv_record();
        assert_eq!(rec[..7], ["5", "3", "3", "1;3;1", "1;2;0;0", "0", "1;-3;1"]);
        assert_eq!(rec[7..], ["2", "0", "1", "true", "T1 T3 T1"]);
    }

    #[test]
    fn components_follow_length_parity() {
        for x in twobridge_core::pair::canonical_pairs(30) {
            let r = PairReport::from_audit(&audit_all(x)).unwrap();
            assert_eq!(r.components == 1, r.l % 2 == 1, "{x}");
        }
    }
}
