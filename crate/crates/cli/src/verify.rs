//! Range verification spread over a rayon pool.
//!
//! Pairs are enumerated in `(p, q)` order, cut into chunks, audited
//! independently and merged back in chunk order. Report merging is
//! associative, so the result does not depend on how the work was split.

use rayon::prelude::*;
use twobridge_core::audit::{AuditBounds, RangeAuditReport};
use twobridge_core::{AdmissiblePair, Result};

use crate::report::PairReport;

const CHUNK: usize = 64;

pub struct Verification {
    pub rows: Vec<PairReport>,
    pub report: RangeAuditReport,
}

fn audit_chunk(bounds: AuditBounds, chunk: &[AdmissiblePair]) -> Verification {
    let mut report = RangeAuditReport::empty(bounds);
    let mut rows = Vec::with_capacity(chunk.len());
    for &x in chunk {
        let audit = bounds.audit_one(x);
        report.record(&audit);
        rows.extend(PairReport::from_audit(&audit));
    }
    Verification { rows, report }
}

/// Audits `pairs` on `jobs` worker threads (`None`: available parallelism).
pub fn verify_pairs(bounds: AuditBounds, pairs: &[AdmissiblePair], jobs: Option<usize>) -> Verification {
    let run = || {
        pairs
            .par_chunks(CHUNK)
            .map(|chunk| audit_chunk(bounds, chunk))
            .collect::<Vec<_>>()
    };
    let parts = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    };
    parts.into_iter().fold(
        Verification { rows: Vec::with_capacity(pairs.len()), report: RangeAuditReport::empty(bounds) },
        |mut acc, part| {
            acc.rows.extend(part.rows);
            acc.report = acc.report.merge(part.report);
            acc
        },
    )
}

pub fn verify_range(bounds: AuditBounds, jobs: Option<usize>) -> Result<Verification> {
    let (pairs, complete) = bounds.pairs()?;
    let mut v = verify_pairs(bounds, &pairs, jobs);
    v.report.complete = complete;
    Ok(v)
}
