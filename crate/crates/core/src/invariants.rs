//! Alexander polynomial, trapezoid profile and the bottom-sequence
//! properties read off a traced underarc.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{arc_sequence, UnderarcTrace};
use crate::error::{Error, Result};

/// `Δ(t) = Σ (-1)^i a_i t^i` with every `a_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderPolynomial {
    coeffs: Vec<u64>,
}

impl AlexanderPolynomial {
    /// Wraps magnitudes `a_0..a_{l-1}`; rejects an empty list or a zero entry.
    pub fn from_magnitudes(coeffs: Vec<u64>) -> Option<Self> {
        if coeffs.is_empty() || coeffs.contains(&0) {
            None
        } else {
            Some(AlexanderPolynomial { coeffs })
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `|Δ(-1)|`, i.e. the plain sum of the magnitudes.
    pub fn determinant(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `Δ(1)`.
    pub fn at_one(&self) -> i64 {
        self.signed_coeffs().sum()
    }

    /// Coefficients of `t^0, t^1, ...` with their alternating signs.
    pub fn signed_coeffs(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| if i % 2 == 0 { a as i64 } else { -(a as i64) })
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.signed_coeffs().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag != 1 => write!(f, "{mag}")?,
                _ => {}
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Reads `Δ` off the arc sequence of a trace.
pub fn alexander(t: &UnderarcTrace) -> Result<AlexanderPolynomial> {
    let violation = |reason| Error::ModelViolation { pair: t.pair, reason };
    let poly = AlexanderPolynomial::from_magnitudes(arc_sequence(t))
        .ok_or_else(|| violation("empty or zero arc count"))?;
    if !poly.is_palindromic() {
        return Err(violation("arc sequence is not palindromic"));
    }
    Ok(poly)
}

/// Shape `a_0 < ... < a_{i0-1} = ... = a_{l-i0} > ... > a_{l-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrapezoidProfile {
    pub is_trapezoidal: bool,
    /// One past the first plateau index. `None` when not trapezoidal.
    pub i0: Option<usize>,
    /// `floor((l - 2(i0 - 1)) / 2)`, half-width of the plateau.
    pub radius_m: Option<usize>,
    pub length: usize,
}

impl TrapezoidProfile {
    pub fn plateau(&self) -> Option<core::ops::RangeInclusive<usize>> {
        self.i0.map(|i0| i0 - 1..=self.length - i0)
    }

    pub fn plateau_len(&self) -> Option<usize> {
        self.i0.map(|i0| self.length + 2 - 2 * i0)
    }
}

pub fn trapezoid_profile(coeffs: &[u64]) -> TrapezoidProfile {
    let l = coeffs.len();
    let not_trapezoidal = TrapezoidProfile { is_trapezoidal: false, i0: None, radius_m: None, length: l };
    if l == 0 {
        return not_trapezoidal;
    }
    let mut k = 0;
    while k + 1 < l && coeffs[k] < coeffs[k + 1] {
        k += 1;
    }
    let start = k;
    while k + 1 < l && coeffs[k] == coeffs[k + 1] {
        k += 1;
    }
    let end = k;
    while k + 1 < l && coeffs[k] > coeffs[k + 1] {
        k += 1;
    }
    // The plateau must also sit symmetrically: start = i0 - 1, end = l - i0.
    if k != l - 1 || start + end != l - 1 {
        return not_trapezoidal;
    }
    let i0 = start + 1;
    TrapezoidProfile {
        is_trapezoidal: true,
        i0: Some(i0),
        radius_m: Some((l - 2 * (i0 - 1)) / 2),
        length: l,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HmCheck {
    pub holds: bool,
    /// `floor((|σ|+1)/2) - radius`.
    pub slack: i64,
}

/// `floor((|σ|+1)/2) >= radius` for a trapezoidal profile.
pub fn hm_check(prof: &TrapezoidProfile, sigma: i64) -> Result<HmCheck> {
    let radius = prof.radius_m.filter(|_| prof.is_trapezoidal).ok_or(Error::NotTrapezoidal)?;
    let lhs = (sigma.abs() + 1) / 2;
    let slack = lhs - radius as i64;
    Ok(HmCheck { holds: slack >= 0, slack })
}

/// Outcome of the three bottom-sequence properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IhReport {
    /// Smallest `(h, r)` witnessing the interleaved chain, if any.
    pub ih1: Option<(usize, usize)>,
    /// Dominance `b_j >= b_{h*-j}` for every `h* >= h`, `2j <= h*`.
    /// Reported false when there is no IH1 witness to anchor `h`.
    pub ih2: bool,
    /// Equal values occupy one contiguous block.
    pub ih3: bool,
}

impl IhReport {
    pub fn all_pass(&self) -> bool {
        self.ih1.is_some() && self.ih2 && self.ih3
    }
}

pub fn check_ih(b: &[u64], l: usize) -> Result<IhReport> {
    if b.len() != l + 1 {
        return Err(Error::LengthMismatch { what: "bottom sequence", expected: l + 1, found: b.len() });
    }
    let ih1 = ih1_witness(b, l);
    let ih2 = ih1.is_some_and(|(h, _)| ih2_holds(b, l, h));
    Ok(IhReport { ih1, ih2, ih3: ih3_holds(b) })
}

fn ih1_witness(b: &[u64], l: usize) -> Option<(usize, usize)> {
    // b_i = 0 for i > h: the smallest admissible h is fixed by the last
    // nonzero entry, and every larger h must be tried too.
    let last_nonzero = b.iter().rposition(|&v| v != 0).unwrap_or(0);
    (last_nonzero.max(1)..=l).find_map(|h| {
        let chain = |k: usize| if k.is_multiple_of(2) { b[h - k / 2] } else { b[k / 2] };
        // The strictly increasing prefix forces r; the rest must be flat.
        let mut r = 0;
        while r < h && chain(r) < chain(r + 1) {
            r += 1;
        }
        (r..=h).all(|k| chain(k) == chain(r)).then_some((h, r))
    })
}

fn ih2_holds(b: &[u64], l: usize, h: usize) -> bool {
    let at = |k: usize| b.get(k).copied().unwrap_or(0);
    (h..=2 * l).all(|hs| (0..=hs / 2).all(|j| at(j) >= at(hs - j)))
}

fn ih3_holds(b: &[u64]) -> bool {
    let mut closed = BTreeSet::new();
    let mut i = 0;
    while i < b.len() {
        let v = b[i];
        if !closed.insert(v) {
            return false;
        }
        while i < b.len() && b[i] == v {
            i += 1;
        }
    }
    true
}

/// `α_i - α_{i-1} = b_i - b_{l-i}` for `1 <= i <= l`, with `α_l = 0`.
pub fn check_alpha_b_relation(alpha: &[u64], b: &[u64]) -> Result<bool> {
    let l = alpha.len();
    if b.len() != l + 1 {
        return Err(Error::LengthMismatch { what: "bottom sequence", expected: l + 1, found: b.len() });
    }
    let a = |i: usize| alpha.get(i).copied().unwrap_or(0) as i64;
    Ok((1..=l).all(|i| a(i) - a(i - 1) == b[i] as i64 - b[l - i] as i64))
}
