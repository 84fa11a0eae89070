//! Closed-form cross-checks that never touch the extended diagram.
//!
//! The Alexander polynomial of the two-bridge type `(p, q)` is, up to a unit,
//! `Σ_{k=0}^{p-1} (-1)^k t^{h_k}` where `h_k = ε_1 + ... + ε_k` and
//! `ε_j = (-1)^floor(j q / p)`. The same signs summed give the signature.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::invariants::AlexanderPolynomial;
use crate::pair::AdmissiblePair;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonSequence {
    /// `ε_1..ε_{p-1}`, each `±1`.
    pub eps: Vec<i8>,
}

impl EpsilonSequence {
    pub fn sum(&self) -> i64 {
        self.eps.iter().map(|&e| i64::from(e)).sum()
    }
}

pub fn epsilon_sequence(x: AdmissiblePair) -> EpsilonSequence {
    let (p, q) = (x.p(), x.q());
    // floor(jq/p) tracked incrementally as quotient + remainder
    let (step_quot, step_rem) = (q / p, q % p);
    let (mut quot, mut rem) = (0u64, 0u64);
    let eps = (1..p)
        .map(|_| {
            quot += step_quot;
            rem += step_rem;
            if rem >= p {
                rem -= p;
                quot += 1;
            }
            if quot % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    EpsilonSequence { eps }
}

pub fn alexander_oracle(x: AdmissiblePair) -> Result<AlexanderPolynomial> {
    let eps = epsilon_sequence(x);
    let n = x.p() as usize;
    // Partial sums stay within (-n, n); bucket them around an offset of n.
    let mut buckets = alloc::vec![0i64; 2 * n + 1];
    let mut height = n;
    buckets[height] += 1;
    for (k, &e) in eps.eps.iter().enumerate() {
        height = if e > 0 { height + 1 } else { height - 1 };
        buckets[height] += if (k + 1) % 2 == 0 { 1 } else { -1 };
    }
    let lo = buckets.iter().position(|&c| c != 0).unwrap_or(n);
    let hi = buckets.iter().rposition(|&c| c != 0).unwrap_or(n);
    let collected = &buckets[lo..=hi];
    let unit = if collected[0] < 0 { -1 } else { 1 };
    let coeffs = collected
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let expected_sign = if i % 2 == 0 { 1 } else { -1 };
            let a = c * unit * expected_sign;
            if a > 0 {
                Ok(a as u64)
            } else {
                Err(Error::OracleShape { pair: x, index: i, coefficient: c * unit })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlexanderPolynomial::from_magnitudes(coeffs).expect("coefficients checked positive"))
}
