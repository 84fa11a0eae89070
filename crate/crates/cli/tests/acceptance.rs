//! Exit criteria, one line per criterion. Runs as a plain binary so the
//! lines are visible under `cargo test`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use twobridge::verify::verify_pairs;
use twobridge_core::audit::{audit_pairs, AuditBounds, CheckId, RangeAuditReport, T2Formula};
use twobridge_core::pair::{canonical_pairs, pairs_up_to};
use twobridge_core::{
    alexander, alexander_oracle, bottom_sequence, decompose, diagram_signature, signature_closed_form,
    trace_principal_underarc, AdmissiblePair,
};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    note: String,
}

fn verdict(passed: bool, note: impl Into<String>) -> Verdict {
    Verdict { passed, note: note.into() }
}

fn pair(p: u64, q: u64) -> AdmissiblePair {
    AdmissiblePair::new(p, q).unwrap()
}

fn canonical_300() -> Vec<AdmissiblePair> {
    canonical_pairs(300).collect()
}

fn worked_example() -> Verdict {
    let started = Instant::now();
    let t = trace_principal_underarc(pair(4, 3)).unwrap();
    let delta = alexander(&t).unwrap();
    let b = bottom_sequence(&t);
    let sigma = diagram_signature(&t);
    let elapsed = started.elapsed();
    let signed: Vec<i64> = delta.signed_coeffs().collect();
    let ok = signed == [2, -2]
        && delta.coeffs() == [2, 2]
        && b == [2, 1, 0]
        && t.length == 2
        && sigma == 1
        && elapsed < Duration::from_millis(1);
    verdict(ok, format!("Δ={delta}, b={b:?}, l={}, σ={sigma}, {} µs", t.length, elapsed.as_micros()))
}

fn signature_mismatches(pairs: &[AdmissiblePair]) -> usize {
    pairs
        .iter()
        .filter(|&&x| diagram_signature(&trace_principal_underarc(x).unwrap()) != signature_closed_form(x))
        .count()
}

fn dual_signature() -> Verdict {
    let pairs = canonical_300();
    let started = Instant::now();
    let bad_single = signature_mismatches(&pairs);
    let single = started.elapsed();

    let pool = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let started = Instant::now();
    let bad_par: usize = pool.install(|| pairs.par_chunks(256).map(signature_mismatches).sum());
    let parallel = started.elapsed();

    let ok = bad_single == 0 && bad_par == 0 && single <= Duration::from_secs(60) && parallel <= Duration::from_secs(10);
    verdict(
        ok,
        format!(
            "{} pairs, {bad_single} mismatches; {} ms single-threaded, {} ms on 8 workers",
            pairs.len(),
            single.as_millis(),
            parallel.as_millis()
        ),
    )
}

fn dual_alexander() -> Verdict {
    let pairs = canonical_300();
    let mut mismatched = 0;
    let mut bad_det = 0;
    for &x in &pairs {
        let traced = alexander(&trace_principal_underarc(x).unwrap()).unwrap();
        match alexander_oracle(x) {
            Ok(o) if o == traced => {}
            _ => mismatched += 1,
        }
        if traced.determinant() != x.p() {
            bad_det += 1;
        }
    }
    verdict(
        mismatched == 0 && bad_det == 0,
        format!("{} pairs, {mismatched} coefficient mismatches, {bad_det} determinant mismatches", pairs.len()),
    )
}

fn failures_of(report: &RangeAuditReport, ids: &[CheckId]) -> Vec<String> {
    let mut out = Vec::new();
    for &id in ids {
        let c = report.counts.get(&id).copied().unwrap_or_default();
        if c.failed > 0 {
            out.push(format!("{id}: {} failures", c.failed));
        }
        if id.is_unconditional() && c.passed + c.failed != report.pairs_audited {
            out.push(format!("{id}: evaluated {} of {} pairs", c.passed + c.failed, report.pairs_audited));
        }
    }
    out
}

fn main_theorem() -> Verdict {
    let pairs = canonical_300();
    let mut bounds = AuditBounds::canonical(300);
    bounds.move_checks = false;
    let report = verify_pairs(bounds, &pairs, None).report;
    let ids = [
        CheckId::Fox,
        CheckId::Hm,
        CheckId::Ih1,
        CheckId::Ih2,
        CheckId::Ih3,
        CheckId::Rel,
        CheckId::SigBound,
        CheckId::Parity,
    ];
    let problems = failures_of(&report, &ids);
    verdict(
        problems.is_empty() && report.failure_count() == 0,
        if problems.is_empty() {
            format!("{} pairs, zero violations", report.pairs_audited)
        } else {
            problems.join("; ")
        },
    )
}

fn move_audits() -> Verdict {
    let canonical: Vec<_> = canonical_pairs(150).collect();
    let full: Vec<_> = (1..=150u64)
        .flat_map(|p| (1..=4 * p).step_by(2).filter_map(move |q| AdmissiblePair::new(p, q).ok()))
        .collect();
    let report = verify_pairs(AuditBounds::canonical(150), &canonical, None)
        .report
        .merge(audit_pairs(AuditBounds::full(150, 600), full.iter().copied()));
    let ids = [
        CheckId::T1Sig,
        CheckId::T1Bottom,
        CheckId::T1Stable,
        CheckId::T1Index,
        CheckId::T2Sig,
        CheckId::T2Diff,
        CheckId::T2NoZero,
        CheckId::T3Sig,
        CheckId::T3Diff,
        CheckId::T3T1Zero,
        CheckId::StructSig,
        CheckId::StructTail,
    ];
    let mut problems = failures_of(&report, &ids);
    let formula = report.resolved_t2_formula();
    if formula == Some(T2Formula::Neither) || formula.is_none() {
        problems.push("no T2 bottom-sequence transform held throughout".into());
    }
    if report.failure_count() > 0 {
        problems.push(format!("{} failed checks overall", report.failure_count()));
    }
    let formula = formula.map_or("none", T2Formula::name);
    verdict(
        problems.is_empty(),
        if problems.is_empty() {
            format!(
                "{} canonical + {} full-q pairs, zero violations; T2 transform that held: {formula}",
                canonical.len(),
                full.len()
            )
        } else {
            problems.join("; ")
        },
    )
}

fn decomposition_round_trip() -> Verdict {
    let mut count = 0;
    let mut bad = Vec::new();
    for x in pairs_up_to(200, 400) {
        count += 1;
        let seq = decompose(x);
        if seq.replay() != Ok(x) || !seq.is_well_formed() {
            bad.push(x);
        }
    }
    verdict(bad.is_empty(), format!("{count} pairs, {} violations", bad.len()))
}

fn spot_checks() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for (p, q, coeffs, sigma) in [(3, 1, [1, -1, 1], 2), (5, 3, [1, -3, 1], 0), (3, 5, [1, -1, 1], -2)] {
        let x = pair(p, q);
        let t = trace_principal_underarc(x).unwrap();
        let traced: Vec<i64> = alexander(&t).unwrap().signed_coeffs().collect();
        let oracle: Vec<i64> = alexander_oracle(x).unwrap().signed_coeffs().collect();
        let s = diagram_signature(&t);
        ok &= traced == coeffs && oracle == coeffs && s == sigma && signature_closed_form(x) == sigma;
        notes.push(format!("{x}: σ={s}"));
    }
    let a31 = alexander_oracle(pair(3, 1)).unwrap();
    let a35 = alexander_oracle(pair(3, 5)).unwrap();
    ok &= a31 == a35 && signature_closed_form(pair(3, 5)) == -signature_closed_form(pair(3, 1));
    verdict(ok, notes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1 worked example (4,3)", worked_example),
        ("AC2 diagram signature = floor-sum formula, p<=300", dual_signature),
        ("AC3 traced Alexander = closed-form oracle, sum = p, p<=300", dual_alexander),
        ("AC4 trapezoid, signature inequality, IH1-3, relation, bounds, parity, p<=300", main_theorem),
        ("AC5 T-move audits, p<=150 canonical and q<=4p", move_audits),
        ("AC6 decomposition replay, p<=200, q<=400", decomposition_round_trip),
        ("AC7 trefoil, figure-eight and mirror spot checks", spot_checks),
    ];
    let mut all = true;
    for (name, run) in criteria {
        let started = Instant::now();
        let v = run();
        all &= v.passed;
        println!(
            "[{}] {name}: {} ({} ms)",
            if v.passed { "PASS" } else { "FAIL" },
            v.note,
            started.elapsed().as_millis()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
