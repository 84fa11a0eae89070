//! Executable versions of every lemma the inductive proof relies on.
//!
//! Each check yields a [`CheckOutcome`]. A failed outcome is a potential
//! counterexample and carries witness data; nothing here panics or drops a
//! failure. Checks whose hypothesis does not hold for a pair are omitted
//! rather than reported as passes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{bottom_sequence, signed_crossings, trace_principal_underarc};
use crate::error::{Error, Result};
use crate::invariants::{
    alexander, check_alpha_b_relation, check_ih, hm_check, trapezoid_profile, AlexanderPolynomial,
    IhReport, TrapezoidProfile,
};
use crate::oracle::alexander_oracle;
use crate::pair::{
    apply_move, canonical_pairs, decompose, pairs_up_to, signature_closed_form, AdmissiblePair, TMove,
    MAX_COMPONENT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    /// The pair (or a move neighbour) could be traced at all.
    Trace,
    Fox,
    Hm,
    Rel,
    Ih1,
    Ih2,
    Ih3,
    SigEq,
    DeltaEq,
    Det,
    AltSum,
    Parity,
    SigBound,
    Crossings,
    OddBottom,
    T1Sig,
    T1Bottom,
    T1Stable,
    T1Index,
    T2Sig,
    T2Diff,
    T2NoZero,
    T2Formula,
    T3Sig,
    T3Diff,
    T3Formula,
    T3T1Zero,
    StructSig,
    StructTail,
}

impl CheckId {
    pub const ALL: [CheckId; 29] = [
        CheckId::Trace,
        CheckId::Fox,
        CheckId::Hm,
        CheckId::Rel,
        CheckId::Ih1,
        CheckId::Ih2,
        CheckId::Ih3,
        CheckId::SigEq,
        CheckId::DeltaEq,
        CheckId::Det,
        CheckId::AltSum,
        CheckId::Parity,
        CheckId::SigBound,
        CheckId::Crossings,
        CheckId::OddBottom,
        CheckId::T1Sig,
        CheckId::T1Bottom,
        CheckId::T1Stable,
        CheckId::T1Index,
        CheckId::T2Sig,
        CheckId::T2Diff,
        CheckId::T2NoZero,
        CheckId::T2Formula,
        CheckId::T3Sig,
        CheckId::T3Diff,
        CheckId::T3Formula,
        CheckId::T3T1Zero,
        CheckId::StructSig,
        CheckId::StructTail,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Trace => "TRACE",
            CheckId::Fox => "FOX",
            CheckId::Hm => "HM",
            CheckId::Rel => "REL",
            CheckId::Ih1 => "IH1",
            CheckId::Ih2 => "IH2",
            CheckId::Ih3 => "IH3",
            CheckId::SigEq => "SIG-EQ",
            CheckId::DeltaEq => "DELTA-EQ",
            CheckId::Det => "DET",
            CheckId::AltSum => "ALT-SUM",
            CheckId::Parity => "PARITY",
            CheckId::SigBound => "SIGBOUND",
            CheckId::Crossings => "CROSSINGS",
            CheckId::OddBottom => "ODD-B",
            CheckId::T1Sig => "T1-SIG",
            CheckId::T1Bottom => "T1-BOTTOM",
            CheckId::T1Stable => "T1-STABLE",
            CheckId::T1Index => "T1-INDEX",
            CheckId::T2Sig => "T2-SIG",
            CheckId::T2Diff => "T2-DIFF",
            CheckId::T2NoZero => "T2-NOZERO",
            CheckId::T2Formula => "T2-FORMULA",
            CheckId::T3Sig => "T3-SIG",
            CheckId::T3Diff => "T3-DIFF",
            CheckId::T3Formula => "T3-FORMULA",
            CheckId::T3T1Zero => "T3T1-ZERO",
            CheckId::StructSig => "STRUCT-SIG",
            CheckId::StructTail => "STRUCT-TAIL",
        }
    }

    pub fn from_name(name: &str) -> Option<CheckId> {
        CheckId::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Emitted for every audited pair, as opposed to hypothesis-gated checks.
    pub fn is_unconditional(self) -> bool {
        !matches!(
            self,
            CheckId::T1Stable
                | CheckId::T1Index
                | CheckId::T3Sig
                | CheckId::T3Diff
                | CheckId::T3Formula
                | CheckId::StructSig
                | CheckId::StructTail
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Int(i64),
    Seq(Vec<i64>),
    Text(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Int(v) => write!(f, "{v}"),
            Witness::Seq(vs) => {
                f.write_str("[")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            Witness::Text(s) => f.write_str(s),
        }
    }
}

fn int(v: impl TryInto<i64>) -> Witness {
    Witness::Int(v.try_into().unwrap_or(i64::MAX))
}

fn seq(vs: &[u64]) -> Witness {
    Witness::Seq(vs.iter().map(|&v| v as i64).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CheckOutcome {
    pub check: CheckId,
    pub pair: AdmissiblePair,
    pub passed: bool,
    /// Empty exactly when `passed`.
    pub details: Vec<(&'static str, Witness)>,
}

impl CheckOutcome {
    fn new(check: CheckId, pair: AdmissiblePair, passed: bool, details: impl FnOnce() -> Vec<(&'static str, Witness)>) -> Self {
        let details = if passed { Vec::new() } else { details() };
        CheckOutcome { check, pair, passed, details }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.pair, self.check, if self.passed { "pass" } else { "FAIL" })?;
        for (key, value) in &self.details {
            write!(f, " {key}={value}")?;
        }
        Ok(())
    }
}

/// Everything read off the principal underarc of one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAnalysis {
    pub pair: AdmissiblePair,
    pub length: usize,
    pub alpha: Vec<u64>,
    pub bottom: Vec<u64>,
    pub sigma: i64,
    pub crossings: usize,
    pub alexander: AlexanderPolynomial,
    pub profile: TrapezoidProfile,
}

impl PairAnalysis {
    pub fn new(x: AdmissiblePair) -> Result<Self> {
        let t = trace_principal_underarc(x)?;
        let alexander = alexander(&t)?;
        let crossings = signed_crossings(&t);
        Ok(PairAnalysis {
            pair: x,
            length: t.length,
            alpha: alexander.coeffs().to_vec(),
            bottom: bottom_sequence(&t),
            sigma: crossings.iter().map(|c| i64::from(c.sign)).sum(),
            crossings: crossings.len(),
            profile: trapezoid_profile(alexander.coeffs()),
            alexander,
        })
    }

    /// `α_i`, with zero past the end.
    fn alpha_at(&self, i: usize) -> i64 {
        self.alpha.get(i).copied().unwrap_or(0) as i64
    }

    fn b_at(&self, i: usize) -> i64 {
        self.bottom.get(i).copied().unwrap_or(0) as i64
    }

    fn ih(&self) -> IhReport {
        check_ih(&self.bottom, self.length).expect("bottom sequence has length l+1")
    }

    /// Number of leading positive bottom-sequence entries, when every later
    /// entry vanishes.
    pub fn trailing_zero_start(&self) -> Option<usize> {
        let k = self.bottom.iter().take_while(|&&v| v > 0).count();
        self.bottom[k..].iter().all(|&v| v == 0).then_some(k)
    }
}

/// Which of the two candidate T2 bottom-sequence transforms held.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct T2FormulaMatch {
    /// `b'_i = 2α_i + b_i`
    pub direct: bool,
    /// `b'_i = 2α_i + b_{l-i}`
    pub reflected: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum T2Formula {
    Direct,
    Reflected,
    Both,
    Neither,
}

impl T2Formula {
    pub fn from_flags(direct: bool, reflected: bool) -> Self {
        match (direct, reflected) {
            (true, true) => T2Formula::Both,
            (true, false) => T2Formula::Direct,
            (false, true) => T2Formula::Reflected,
            (false, false) => T2Formula::Neither,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            T2Formula::Direct => "b_i-form",
            T2Formula::Reflected => "b_{l-i}-form",
            T2Formula::Both => "both",
            T2Formula::Neither => "neither",
        }
    }
}

impl fmt::Display for T2Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All outcomes for one pair, with the trace data when it could be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAudit {
    pub pair: AdmissiblePair,
    pub analysis: Option<PairAnalysis>,
    pub outcomes: Vec<CheckOutcome>,
    pub t2: T2FormulaMatch,
}

impl PairAudit {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

fn trace_failure(x: AdmissiblePair, subject: AdmissiblePair, err: &Error) -> CheckOutcome {
    CheckOutcome::new(CheckId::Trace, x, false, || {
        vec![("subject", Witness::Text(format!("{subject}"))), ("error", Witness::Text(format!("{err}")))]
    })
}

/// Analyses `T(x)`, turning move or trace errors into a failed outcome.
fn neighbour(x: AdmissiblePair, m: TMove, out: &mut Vec<CheckOutcome>) -> Option<PairAnalysis> {
    let y = match apply_move(m, x) {
        Ok(y) => y,
        Err(e) => {
            out.push(trace_failure(x, x, &e));
            return None;
        }
    };
    match PairAnalysis::new(y) {
        Ok(a) => Some(a),
        Err(e) => {
            out.push(trace_failure(x, y, &e));
            None
        }
    }
}

fn pair_checks(a: &PairAnalysis, out: &mut Vec<CheckOutcome>) {
    let x = a.pair;
    let l = a.length;
    let prof = &a.profile;
    out.push(CheckOutcome::new(CheckId::Fox, x, prof.is_trapezoidal, || vec![("alpha", seq(&a.alpha))]));

    let hm = hm_check(prof, a.sigma);
    out.push(CheckOutcome::new(CheckId::Hm, x, hm.as_ref().is_ok_and(|h| h.holds), || match hm {
        Ok(h) => vec![
            ("sigma", int(a.sigma)),
            ("radius", int(prof.radius_m.unwrap_or(0))),
            ("slack", int(h.slack)),
        ],
        Err(e) => vec![("error", Witness::Text(format!("{e}")))],
    }));

    let rel = check_alpha_b_relation(&a.alpha, &a.bottom).unwrap_or(false);
    out.push(CheckOutcome::new(CheckId::Rel, x, rel, || {
        vec![("alpha", seq(&a.alpha)), ("b", seq(&a.bottom))]
    }));

    let ih = a.ih();
    out.push(CheckOutcome::new(CheckId::Ih1, x, ih.ih1.is_some(), || vec![("b", seq(&a.bottom))]));
    out.push(CheckOutcome::new(CheckId::Ih2, x, ih.ih2, || {
        vec![("b", seq(&a.bottom)), ("h", int(ih.ih1.map_or(-1, |w| w.0 as i64)))]
    }));
    out.push(CheckOutcome::new(CheckId::Ih3, x, ih.ih3, || vec![("b", seq(&a.bottom))]));

    let closed = signature_closed_form(x);
    out.push(CheckOutcome::new(CheckId::SigEq, x, a.sigma == closed, || {
        vec![("diagram", int(a.sigma)), ("closed_form", int(closed))]
    }));

    let oracle = alexander_oracle(x);
    let delta_ok = oracle.as_ref().is_ok_and(|o| *o == a.alexander);
    out.push(CheckOutcome::new(CheckId::DeltaEq, x, delta_ok, || match &oracle {
        Ok(o) => vec![("diagram", seq(&a.alpha)), ("oracle", seq(o.coeffs()))],
        Err(e) => vec![("diagram", seq(&a.alpha)), ("error", Witness::Text(format!("{e}")))],
    }));

    let det = a.alexander.determinant();
    out.push(CheckOutcome::new(CheckId::Det, x, det == x.p(), || vec![("sum", int(det))]));

    let at_one = a.alexander.at_one();
    let expected_at_one = if l % 2 == 1 { 1 } else { 0 };
    out.push(CheckOutcome::new(CheckId::AltSum, x, at_one.abs() == expected_at_one, || {
        vec![("delta_at_one", int(at_one)), ("l", int(l))]
    }));

    let parity = (a.sigma - (l as i64 - 1)).rem_euclid(2) == 0 && (l as u64) % 2 == x.p() % 2;
    out.push(CheckOutcome::new(CheckId::Parity, x, parity, || vec![("sigma", int(a.sigma)), ("l", int(l))]));

    out.push(CheckOutcome::new(CheckId::SigBound, x, a.sigma.abs() < l as i64, || {
        vec![("sigma", int(a.sigma)), ("l", int(l))]
    }));

    out.push(CheckOutcome::new(CheckId::Crossings, x, a.crossings as u64 == x.p() - 1, || {
        vec![("crossings", int(a.crossings))]
    }));

    let odd = a.bottom.iter().filter(|&&v| v % 2 == 1).count();
    out.push(CheckOutcome::new(CheckId::OddBottom, x, odd == 1, || vec![("b", seq(&a.bottom))]));
}

fn t1_checks(a: &PairAnalysis, y: &PairAnalysis, out: &mut Vec<CheckOutcome>) {
    let x = a.pair;
    out.push(CheckOutcome::new(CheckId::T1Sig, x, y.sigma == a.sigma + 1, || {
        vec![("sigma", int(a.sigma)), ("sigma_t1", int(y.sigma))]
    }));

    let extended_ok = y.length == a.length + 1
        && y.bottom.len() == a.bottom.len() + 1
        && y.bottom[..a.bottom.len()] == a.bottom[..]
        && y.bottom.last() == Some(&0);
    out.push(CheckOutcome::new(CheckId::T1Bottom, x, extended_ok, || {
        vec![("b", seq(&a.bottom)), ("b_t1", seq(&y.bottom))]
    }));

    let (Some(i0), Some(plateau)) = (a.profile.i0, a.profile.plateau_len()) else {
        return;
    };
    let l = a.length;
    if plateau == 1 && l % 2 == 1 {
        let ok = y.profile.plateau_len() == Some(2);
        out.push(CheckOutcome::new(CheckId::T1Stable, x, ok, || {
            vec![("alpha", seq(&a.alpha)), ("alpha_t1", seq(&y.alpha))]
        }));
    }
    if i0 - 1 < l - i0 {
        let next = y.profile.i0;
        let ok = next == Some(i0 + 1) || (next == Some(i0) && a.bottom[i0..].iter().all(|&v| v == 0));
        out.push(CheckOutcome::new(CheckId::T1Index, x, ok, || {
            vec![
                ("i0", int(i0)),
                ("i0_t1", int(next.map_or(-1, |v| v as i64))),
                ("b", seq(&a.bottom)),
            ]
        }));
    }
}

/// `α'_i - α'_{i-1} = α_i - α_{i-1}` for `1 <= i < l`, same length and radius.
fn differences_preserved(a: &PairAnalysis, y: &PairAnalysis) -> bool {
    y.length == a.length
        && (1..a.length).all(|i| y.alpha_at(i) - y.alpha_at(i - 1) == a.alpha_at(i) - a.alpha_at(i - 1))
        && y.profile.radius_m == a.profile.radius_m
}

fn t2_checks(a: &PairAnalysis, y: &PairAnalysis, out: &mut Vec<CheckOutcome>) -> T2FormulaMatch {
    let x = a.pair;
    let l = a.length;
    out.push(CheckOutcome::new(CheckId::T2Sig, x, y.sigma == a.sigma, || {
        vec![("sigma", int(a.sigma)), ("sigma_t2", int(y.sigma))]
    }));
    out.push(CheckOutcome::new(CheckId::T2Diff, x, differences_preserved(a, y), || {
        vec![("alpha", seq(&a.alpha)), ("alpha_t2", seq(&y.alpha))]
    }));
    let no_zero = y.length == l && (0..=l).all(|i| y.b_at(i) > 0);
    out.push(CheckOutcome::new(CheckId::T2NoZero, x, no_zero, || vec![("b_t2", seq(&y.bottom))]));

    let same_len = y.length == l;
    let m = T2FormulaMatch {
        direct: same_len && (0..=l).all(|i| y.b_at(i) == 2 * a.alpha_at(i) + a.b_at(i)),
        reflected: same_len && (0..=l).all(|i| y.b_at(i) == 2 * a.alpha_at(i) + a.b_at(l - i)),
    };
    out.push(CheckOutcome::new(CheckId::T2Formula, x, m.direct || m.reflected, || {
        vec![("alpha", seq(&a.alpha)), ("b", seq(&a.bottom)), ("b_t2", seq(&y.bottom))]
    }));
    m
}

fn t3_checks(a: &PairAnalysis, y: &PairAnalysis, out: &mut Vec<CheckOutcome>) {
    let x = a.pair;
    let l = a.length;
    out.push(CheckOutcome::new(CheckId::T3Sig, x, y.sigma == -a.sigma, || {
        vec![("sigma", int(a.sigma)), ("sigma_t3", int(y.sigma))]
    }));
    out.push(CheckOutcome::new(CheckId::T3Diff, x, differences_preserved(a, y), || {
        vec![("alpha", seq(&a.alpha)), ("alpha_t3", seq(&y.alpha))]
    }));
    let ok = y.length == l && (0..=l).all(|i| y.b_at(i) == 2 * a.alpha_at(i) - a.b_at(i));
    out.push(CheckOutcome::new(CheckId::T3Formula, x, ok, || {
        vec![("alpha", seq(&a.alpha)), ("b", seq(&a.bottom)), ("b_t3", seq(&y.bottom))]
    }));
}

fn t3t1_check(a: &PairAnalysis, z: &PairAnalysis, out: &mut Vec<CheckOutcome>) {
    let l = a.length;
    let zeros: Vec<usize> = (0..z.bottom.len()).filter(|&i| z.bottom[i] == 0).collect();
    let ok = z.length == l + 1 && zeros == [l + 1];
    out.push(CheckOutcome::new(CheckId::T3T1Zero, a.pair, ok, || vec![("b_t3t1", seq(&z.bottom))]));
}

fn structural_checks(a: &PairAnalysis, out: &mut Vec<CheckOutcome>) {
    let x = a.pair;
    let l = a.length;
    let Some(k) = a.trailing_zero_start().filter(|&k| k <= l / 2) else {
        return;
    };
    out.push(CheckOutcome::new(CheckId::StructSig, x, a.sigma >= 0, || {
        vec![("sigma", int(a.sigma)), ("b", seq(&a.bottom))]
    }));
    let moves = decompose(x);
    let tail = moves.trailing_t1();
    out.push(CheckOutcome::new(CheckId::StructTail, x, tail >= l - k, || {
        vec![
            ("trailing_t1", int(tail)),
            ("required", int(l - k)),
            ("decomposition", Witness::Text(format!("{moves}"))),
        ]
    }));
}

fn with_analysis(x: AdmissiblePair, body: impl FnOnce(&PairAnalysis, &mut Vec<CheckOutcome>)) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    match PairAnalysis::new(x) {
        Ok(a) => body(&a, &mut out),
        Err(e) => out.push(trace_failure(x, x, &e)),
    }
    out
}

/// Trapezoid shape, the signature inequality, the arc/bottom relation, the
/// three bottom-sequence properties and both oracle agreements.
pub fn audit_pair(x: AdmissiblePair) -> Vec<CheckOutcome> {
    with_analysis(x, pair_checks)
}

/// Signature step, bottom-sequence extension and plateau growth under T1.
pub fn audit_t1(x: AdmissiblePair) -> Vec<CheckOutcome> {
    with_analysis(x, |a, out| {
        if let Some(y) = neighbour(x, TMove::T1, out) {
            t1_checks(a, &y, out);
        }
    })
}

pub fn audit_t2_t3(x: AdmissiblePair) -> Vec<CheckOutcome> {
    with_analysis(x, |a, out| {
        t2_t3_checks(a, None, out);
    })
}

fn t2_t3_checks(a: &PairAnalysis, t1: Option<&PairAnalysis>, out: &mut Vec<CheckOutcome>) -> T2FormulaMatch {
    let x = a.pair;
    let m = neighbour(x, TMove::T2, out).map(|y| t2_checks(a, &y, out)).unwrap_or_default();
    if x.p() > x.q() {
        if let Some(y) = neighbour(x, TMove::T3, out) {
            t3_checks(a, &y, out);
        }
    }
    let t1 = match t1 {
        Some(t1) => Some(t1.clone()),
        None => neighbour(x, TMove::T1, out),
    };
    if let Some(t1) = t1 {
        if let Some(z) = neighbour(t1.pair, TMove::T3, out) {
            t3t1_check(a, &z, out);
        }
    }
    m
}

/// Non-negative signature and a forced run of trailing T1 moves when more
/// than half of the bottom sequence vanishes.
pub fn audit_structural(x: AdmissiblePair) -> Vec<CheckOutcome> {
    with_analysis(x, structural_checks)
}

/// Runs every check family on `x`, tracing each neighbour once.
pub fn audit_all(x: AdmissiblePair) -> PairAudit {
    audit_with(x, true)
}

/// Per-pair and structural checks only, no move neighbours.
pub fn audit_static(x: AdmissiblePair) -> PairAudit {
    audit_with(x, false)
}

fn audit_with(x: AdmissiblePair, moves: bool) -> PairAudit {
    let mut outcomes = Vec::new();
    let mut t2 = T2FormulaMatch::default();
    let analysis = match PairAnalysis::new(x) {
        Ok(a) => Some(a),
        Err(e) => {
            outcomes.push(trace_failure(x, x, &e));
            None
        }
    };
    if let Some(a) = &analysis {
        outcomes.push(CheckOutcome::new(CheckId::Trace, x, true, Vec::new));
        pair_checks(a, &mut outcomes);
        if moves {
            let t1 = neighbour(x, TMove::T1, &mut outcomes);
            if let Some(y) = &t1 {
                t1_checks(a, y, &mut outcomes);
                t2 = t2_t3_checks(a, Some(y), &mut outcomes);
            }
        }
        structural_checks(a, &mut outcomes);
    }
    PairAudit { pair: x, analysis, outcomes, t2 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QMode {
    /// `0 < q < 2p`
    Canonical,
    /// `1 <= q <= max_q`
    Full { max_q: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AuditBounds {
    pub max_p: u64,
    pub q_mode: QMode,
    /// Stop after this many pairs and flag the report incomplete.
    pub pair_budget: Option<u64>,
    /// Run the move-neighbour checks (T1, T2, T3, T3∘T1).
    pub move_checks: bool,
}

impl AuditBounds {
    pub fn canonical(max_p: u64) -> Self {
        AuditBounds { max_p, q_mode: QMode::Canonical, pair_budget: None, move_checks: true }
    }

    pub fn full(max_p: u64, max_q: u64) -> Self {
        AuditBounds { max_p, q_mode: QMode::Full { max_q }, pair_budget: None, move_checks: true }
    }

    pub fn validate(&self) -> Result<()> {
        // Neighbours reach (p+q, 2(p+q)-q); keep them inside the pair range.
        let limit = MAX_COMPONENT / 4;
        if self.max_p == 0 || self.max_p > limit {
            return Err(Error::Domain { what: "max_p", value: self.max_p });
        }
        if let QMode::Full { max_q } = self.q_mode {
            if max_q == 0 || max_q > limit {
                return Err(Error::Domain { what: "max_q", value: max_q });
            }
        }
        Ok(())
    }

    /// Pairs in `(p, q)` order, truncated to the budget. The flag is false
    /// when the budget cut the enumeration short.
    pub fn pairs(&self) -> Result<(Vec<AdmissiblePair>, bool)> {
        self.validate()?;
        let all: alloc::boxed::Box<dyn Iterator<Item = AdmissiblePair>> = match self.q_mode {
            QMode::Canonical => alloc::boxed::Box::new(canonical_pairs(self.max_p)),
            QMode::Full { max_q } => alloc::boxed::Box::new(pairs_up_to(self.max_p, max_q)),
        };
        match self.pair_budget {
            None => Ok((all.collect(), true)),
            Some(budget) => {
                let mut all = all.peekable();
                let taken: Vec<_> = all.by_ref().take(budget as usize).collect();
                let complete = all.peek().is_none();
                Ok((taken, complete))
            }
        }
    }

    pub fn audit_one(&self, x: AdmissiblePair) -> PairAudit {
        if self.move_checks {
            audit_all(x)
        } else {
            audit_static(x)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CheckCount {
    pub passed: u64,
    pub failed: u64,
}

/// Aggregate over a range. [`merge`](Self::merge) is associative and
/// commutative, so partial reports from any partition combine to the same
/// result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeAuditReport {
    pub bounds: AuditBounds,
    pub complete: bool,
    pub pairs_audited: u64,
    pub counts: BTreeMap<CheckId, CheckCount>,
    /// Sorted by pair, then check.
    pub failures: Vec<CheckOutcome>,
    t2_direct_all: bool,
    t2_reflected_all: bool,
}

impl RangeAuditReport {
    pub fn empty(bounds: AuditBounds) -> Self {
        RangeAuditReport {
            bounds,
            complete: true,
            pairs_audited: 0,
            counts: BTreeMap::new(),
            failures: Vec::new(),
            t2_direct_all: true,
            t2_reflected_all: true,
        }
    }

    pub fn record(&mut self, audit: &PairAudit) {
        self.pairs_audited += 1;
        for o in &audit.outcomes {
            let c = self.counts.entry(o.check).or_default();
            if o.passed {
                c.passed += 1;
            } else {
                c.failed += 1;
                self.failures.push(o.clone());
            }
        }
        if self.bounds.move_checks {
            self.t2_direct_all &= audit.t2.direct;
            self.t2_reflected_all &= audit.t2.reflected;
        }
        self.sort_failures();
    }

    pub fn merge(mut self, other: RangeAuditReport) -> RangeAuditReport {
        self.complete &= other.complete;
        self.pairs_audited += other.pairs_audited;
        for (id, c) in other.counts {
            let mine = self.counts.entry(id).or_default();
            mine.passed += c.passed;
            mine.failed += c.failed;
        }
        self.failures.extend(other.failures);
        self.sort_failures();
        self.t2_direct_all &= other.t2_direct_all;
        self.t2_reflected_all &= other.t2_reflected_all;
        self
    }

    fn sort_failures(&mut self) {
        self.failures.sort_by_key(|o| (o.pair, o.check));
    }

    /// Which T2 bottom-sequence transform held on every audited pair.
    /// `None` when move checks were not run.
    pub fn resolved_t2_formula(&self) -> Option<T2Formula> {
        self.bounds
            .move_checks
            .then(|| T2Formula::from_flags(self.t2_direct_all, self.t2_reflected_all))
    }

    pub fn failure_count(&self) -> u64 {
        self.counts.values().map(|c| c.failed).sum()
    }

    /// No failed check, and at least one T2 transform held throughout.
    pub fn all_passed(&self) -> bool {
        self.failure_count() == 0 && self.resolved_t2_formula() != Some(T2Formula::Neither)
    }
}

/// Audits the given pairs sequentially into one report.
pub fn audit_pairs(bounds: AuditBounds, pairs: impl IntoIterator<Item = AdmissiblePair>) -> RangeAuditReport {
    let mut report = RangeAuditReport::empty(bounds);
    for x in pairs {
        report.record(&bounds.audit_one(x));
    }
    report
}

pub fn audit_range(bounds: AuditBounds) -> Result<RangeAuditReport> {
    let (pairs, complete) = bounds.pairs()?;
    let mut report = audit_pairs(bounds, pairs);
    report.complete = complete;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(p: u64, q: u64) -> AdmissiblePair {
        AdmissiblePair::new(p, q).unwrap()
    }

    fn ids(outcomes: &[CheckOutcome]) -> Vec<CheckId> {
        outcomes.iter().map(|o| o.check).collect()
    }

    #[test]
    fn names_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::from_name(id.name()), Some(id));
        }
    }

    #[test]
    fn worked_pairs_pass() {
        for (p, q) in [(4, 3), (1, 1), (3, 1)] {
            let out = audit_pair(pair(p, q));
            assert!(out.iter().all(|o| o.passed && o.details.is_empty()), "{out:?}");
            assert!(ids(&out).contains(&CheckId::SigBound));
        }
        let a = PairAnalysis::new(pair(3, 1)).unwrap();
        assert_eq!(a.sigma.abs(), a.length as i64 - 1);
    }

    #[test]
    fn t1_audits() {
        let out = audit_t1(pair(4, 3));
        assert!(out.iter().all(|o| o.passed));
        assert_eq!(signature_closed_form(pair(7, 3)), 2);

        let out = audit_t1(pair(1, 1));
        assert!(out.iter().all(|o| o.passed));
        assert_eq!(PairAnalysis::new(pair(2, 1)).unwrap().bottom, [1, 0, 0]);

        // (3,1) is one plateau: only the index branch fires.
        let out = audit_t1(pair(3, 1));
        assert!(out.iter().all(|o| o.passed));
        assert!(ids(&out).contains(&CheckId::T1Index));
        assert!(!ids(&out).contains(&CheckId::T1Stable));
        let y = PairAnalysis::new(pair(4, 1)).unwrap();
        assert_eq!(y.alpha, [1, 1, 1, 1]);
        assert_eq!(y.profile.i0, Some(1));

        // (5,3) has a single-term plateau and odd length.
        let out = audit_t1(pair(5, 3));
        assert!(ids(&out).contains(&CheckId::T1Stable));
        assert!(out.iter().all(|o| o.passed));
    }

    #[test]
    fn t2_t3_audits() {
        let out = audit_t2_t3(pair(4, 3));
        assert!(out.iter().all(|o| o.passed), "{out:?}");
        assert_eq!(PairAnalysis::new(pair(4, 11)).unwrap().sigma, 1);

        let out = audit_t2_t3(pair(2, 1));
        assert!(ids(&out).contains(&CheckId::T3Sig));
        assert!(out.iter().all(|o| o.passed));
        assert_eq!(PairAnalysis::new(pair(2, 3)).unwrap().sigma, -1);

        let out = audit_t2_t3(pair(1, 1));
        assert!(out.iter().all(|o| o.passed));
        assert!(!ids(&out).contains(&CheckId::T3Sig));
        let y = PairAnalysis::new(pair(1, 3)).unwrap();
        assert!(y.bottom.iter().all(|&v| v > 0));
    }

    #[test]
    fn structural_audits() {
        let out = audit_structural(pair(3, 1));
        assert_eq!(ids(&out), [CheckId::StructSig, CheckId::StructTail]);
        assert!(out.iter().all(|o| o.passed));
        assert!(audit_structural(pair(4, 3)).is_empty());
        assert!(audit_structural(pair(1, 1)).is_empty());
    }

    #[test]
    fn t2_formula_resolution() {
        let report = audit_range(AuditBounds::canonical(12)).unwrap();
        assert_eq!(report.resolved_t2_formula(), Some(T2Formula::Reflected));
    }

    #[test]
    fn small_ranges() {
        let r = audit_range(AuditBounds::canonical(1)).unwrap();
        assert_eq!(r.pairs_audited, 1);
        assert!(r.all_passed());

        let r = audit_range(AuditBounds::canonical(4)).unwrap();
        assert_eq!(r.pairs_audited, 9);
        assert!(r.all_passed(), "{:?}", r.failures);
        assert!(r.complete);
        for id in CheckId::ALL.into_iter().filter(|c| c.is_unconditional()) {
            let c = r.counts[&id];
            assert_eq!(c.passed + c.failed, r.pairs_audited, "{id}");
        }

        assert!(matches!(audit_range(AuditBounds::canonical(0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn budget_flags_incomplete() {
        let mut b = AuditBounds::canonical(10);
        b.pair_budget = Some(5);
        let r = audit_range(b).unwrap();
        assert_eq!(r.pairs_audited, 5);
        assert!(!r.complete);
        b.pair_budget = Some(9);
        let mut small = b;
        small.max_p = 4;
        assert!(audit_range(small).unwrap().complete);
    }

    #[test]
    fn merge_is_partition_independent() {
        let bounds = AuditBounds::full(10, 30);
        let (pairs, _) = bounds.pairs().unwrap();
        let whole = audit_pairs(bounds, pairs.iter().copied());
        let (left, right) = pairs.split_at(pairs.len() / 3);
        let merged = audit_pairs(bounds, right.iter().copied()).merge(audit_pairs(bounds, left.iter().copied()));
        assert_eq!(whole, merged);
    }

    #[test]
    fn failures_carry_witnesses() {
        let x = pair(4, 3);
        let a = PairAnalysis::new(x).unwrap();
        let mut forged = a.clone();
        forged.sigma = 5;
        let mut out = Vec::new();
        pair_checks(&forged, &mut out);
        let bound = out.iter().find(|o| o.check == CheckId::SigBound).unwrap();
        assert!(!bound.passed);
        assert!(!bound.details.is_empty());
        let eq = out.iter().find(|o| o.check == CheckId::SigEq).unwrap();
        assert_eq!(format!("{eq}"), "(4,3) SIG-EQ FAIL diagram=5 closed_form=1");
    }
}
