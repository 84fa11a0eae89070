//! Invariants of two-bridge knots read off Hartley's extended diagram.
//!
//! For an admissible pair `(p, q)` the principal underarc of the extended
//! diagram yields the Alexander polynomial (its arc counts), the signature
//! (its signed crossings) and the bottom sequence that drives the inductive
//! proof of the trapezoidal and signature inequalities. [`audit`] turns each
//! step of that induction into a named check that can be run over ranges of
//! pairs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod audit;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod pair;

pub use audit::{
    audit_all, audit_pair, audit_range, audit_structural, audit_t1, audit_t2_t3, AuditBounds, CheckId,
    CheckOutcome, PairAnalysis, PairAudit, QMode, RangeAuditReport, T2Formula,
};
pub use diagram::{
    arc_sequence, bottom_sequence, diagram_signature, signed_crossings, trace_principal_underarc, GridPoint,
    SignedCrossing, UnderarcTrace,
};
pub use error::{Error, Result};
pub use invariants::{alexander, check_ih, hm_check, trapezoid_profile, AlexanderPolynomial, TrapezoidProfile};
pub use oracle::{alexander_oracle, epsilon_sequence};
pub use pair::{apply_move, canonical_type, decompose, signature_closed_form, AdmissiblePair, MoveSequence, TMove};
