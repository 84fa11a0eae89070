//! Admissible pairs and the three moves that generate them from `(1,1)`.
//!
//! A pair `(p, q)` is admissible when `gcd(p, q) = 1` and `q` is odd. The
//! classical two-bridge types are the sub-range `0 < q < 2p`; the moves
//! leave that range freely, so everything here works on the full set.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest accepted value for either component. Keeps `p * q` and every
/// move result inside 64-bit arithmetic.
pub const MAX_COMPONENT: u64 = 1 << 31;

pub(crate) const fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns whether `(p, q)` is admissible.
///
/// Zero (or anything above [`MAX_COMPONENT`]) is a domain error rather than
/// `false`.
pub fn is_admissible(p: u64, q: u64) -> Result<bool> {
    check_component("p", p)?;
    check_component("q", q)?;
    Ok(q % 2 == 1 && gcd(p, q) == 1)
}

fn check_component(what: &'static str, value: u64) -> Result<()> {
    if value == 0 || value > MAX_COMPONENT {
        Err(Error::Domain { what, value })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissiblePair {
    p: u64,
    q: u64,
}

impl AdmissiblePair {
    pub const UNKNOT: AdmissiblePair = AdmissiblePair { p: 1, q: 1 };

    pub fn new(p: u64, q: u64) -> Result<Self> {
        if is_admissible(p, q)? {
            Ok(AdmissiblePair { p, q })
        } else {
            Err(Error::NotAdmissible { p, q })
        }
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn q(self) -> u64 {
        self.q
    }

    /// Number of link components: one for odd `p`, two for even `p`.
    pub fn components(self) -> u8 {
        if self.p % 2 == 1 {
            1
        } else {
            2
        }
    }

    /// `0 < q < 2p`.
    pub fn is_canonical(self) -> bool {
        self.q < 2 * self.p
    }

    pub fn apply(self, m: TMove) -> Result<Self> {
        apply_move(m, self)
    }
}

impl fmt::Display for AdmissiblePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TMove {
    /// `(p, q) -> (p + q, q)`
    T1,
    /// `(p, q) -> (p, 2p + q)`
    T2,
    /// `(p, q) -> (p, 2p - q)`, only for `p > q`
    T3,
}

impl TMove {
    pub fn name(self) -> &'static str {
        match self {
            TMove::T1 => "T1",
            TMove::T2 => "T2",
            TMove::T3 => "T3",
        }
    }
}

impl fmt::Display for TMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn apply_move(m: TMove, x: AdmissiblePair) -> Result<AdmissiblePair> {
    let AdmissiblePair { p, q } = x;
    let (np, nq) = match m {
        TMove::T1 => (p + q, q),
        TMove::T2 => (p, 2 * p + q),
        TMove::T3 => {
            if p <= q {
                return Err(Error::MoveNotApplicable { pair: x });
            }
            (p, 2 * p - q)
        }
    };
    if np > MAX_COMPONENT || nq > MAX_COMPONENT {
        return Err(Error::Overflow { pair: x });
    }
    // gcd and parity are preserved by all three moves.
    debug_assert!(is_admissible(np, nq).unwrap_or(false));
    Ok(AdmissiblePair { p: np, q: nq })
}

/// Moves applied left to right starting from `(1,1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence(pub Vec<TMove>);

impl MoveSequence {
    pub fn moves(&self) -> &[TMove] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every T3 is immediately preceded by a T1.
    pub fn is_well_formed(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, m)| *m != TMove::T3 || (i > 0 && self.0[i - 1] == TMove::T1))
    }

    pub fn replay(&self) -> Result<AdmissiblePair> {
        self.0
            .iter()
            .try_fold(AdmissiblePair::UNKNOT, |x, &m| apply_move(m, x))
    }

    /// Length of the run of T1 moves at the end of the sequence.
    pub fn trailing_t1(&self) -> usize {
        self.0.iter().rev().take_while(|m| **m == TMove::T1).count()
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Writes `x` as a word in T1, T2, T3 applied to `(1,1)`.
///
/// Inverts greedily: `p > q` can only come from T1, `q > 2p` only from T2
/// and `p < q < 2p` only from T3, so each step is forced and `p + q`
/// strictly decreases.
pub fn decompose(x: AdmissiblePair) -> MoveSequence {
    let (mut p, mut q) = (x.p, x.q);
    let mut moves = Vec::new();
    while (p, q) != (1, 1) {
        if p > q {
            moves.push(TMove::T1);
            p -= q;
        } else if q > 2 * p {
            moves.push(TMove::T2);
            q -= 2 * p;
        } else {
            moves.push(TMove::T3);
            q = 2 * p - q;
        }
    }
    moves.reverse();
    MoveSequence(moves)
}

/// `sum_{i=1}^{p-1} (-1)^floor(i q / p)`.
pub fn signature_closed_form(x: AdmissiblePair) -> i64 {
    let AdmissiblePair { p, q } = x;
    (1..p)
        .map(|i| if (i * q / p) % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// Reduces `q` modulo `2p`. Mirror pairs `(p, q)` and `(p, 2p - q)` are left
/// distinct, so the flag is always `false`.
pub fn canonical_type(x: AdmissiblePair) -> (AdmissiblePair, bool) {
    let q = x.q % (2 * x.p);
    (AdmissiblePair { p: x.p, q }, false)
}

/// Admissible pairs with `p <= max_p` and `0 < q < 2p`, ordered by `(p, q)`.
pub fn canonical_pairs(max_p: u64) -> impl Iterator<Item = AdmissiblePair> {
    (1..=max_p).flat_map(|p| {
        (1..2 * p)
            .step_by(2)
            .filter(move |&q| gcd(p, q) == 1)
            .map(move |q| AdmissiblePair { p, q })
    })
}

/// Admissible pairs with `p <= max_p` and `q <= max_q`, ordered by `(p, q)`.
pub fn pairs_up_to(max_p: u64, max_q: u64) -> impl Iterator<Item = AdmissiblePair> {
    (1..=max_p).flat_map(move |p| {
        (1..=max_q)
            .step_by(2)
            .filter(move |&q| gcd(p, q) == 1)
            .map(move |q| AdmissiblePair { p, q })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn pair(p: u64, q: u64) -> AdmissiblePair {
        AdmissiblePair::new(p, q).unwrap()
    }

    #[test]
    fn admissibility() {
        assert_eq!(is_admissible(4, 3), Ok(true));
        assert_eq!(is_admissible(4, 2), Ok(false));
        assert_eq!(is_admissible(6, 3), Ok(false));
        assert!(matches!(is_admissible(0, 3), Err(Error::Domain { what: "p", .. })));
        assert!(matches!(is_admissible(3, 0), Err(Error::Domain { what: "q", .. })));
        assert_eq!(AdmissiblePair::new(6, 3), Err(Error::NotAdmissible { p: 6, q: 3 }));
    }

    #[test]
    fn moves() {
        assert_eq!(apply_move(TMove::T2, pair(1, 1)), Ok(pair(1, 3)));
        assert_eq!(apply_move(TMove::T1, pair(1, 3)), Ok(pair(4, 3)));
        assert_eq!(
            apply_move(TMove::T3, pair(1, 3)),
            Err(Error::MoveNotApplicable { pair: pair(1, 3) })
        );
        assert_eq!(apply_move(TMove::T3, pair(2, 1)), Ok(pair(2, 3)));
        let big = pair(MAX_COMPONENT - 1, 1);
        assert!(matches!(apply_move(TMove::T2, big), Err(Error::Overflow { .. })));
    }

    #[test]
    fn decompositions() {
        assert!(decompose(pair(1, 1)).is_empty());
        assert_eq!(decompose(pair(4, 3)).0, vec![TMove::T2, TMove::T1]);
        assert_eq!(decompose(pair(5, 3)).0, vec![TMove::T1, TMove::T3, TMove::T1]);
        assert_eq!(decompose(pair(5, 3)).to_string(), "T1 T3 T1");
        assert_eq!(decompose(pair(3, 1)).trailing_t1(), 2);
    }

    #[test]
    fn closed_form_signature() {
        assert_eq!(signature_closed_form(pair(4, 3)), 1);
        assert_eq!(signature_closed_form(pair(1, 1)), 0);
        assert_eq!(signature_closed_form(pair(5, 3)), 0);
        assert_eq!(signature_closed_form(pair(3, 1)), 2);
        assert_eq!(signature_closed_form(pair(3, 5)), -2);
    }

    #[test]
    fn canonical() {
        assert_eq!(canonical_type(pair(4, 11)), (pair(4, 3), false));
        assert_eq!(canonical_type(pair(4, 3)), (pair(4, 3), false));
        assert_eq!(canonical_type(pair(1, 7)), (pair(1, 1), false));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let listed: Vec<_> = canonical_pairs(4).map(|x| (x.p(), x.q())).collect();
        let mut brute = Vec::new();
        for p in 1..=4u64 {
            for q in 1..2 * p {
                if q % 2 == 1 && (1..=q).filter(|d| p % d == 0 && q % d == 0).count() == 1 {
                    brute.push((p, q));
                }
            }
        }
        assert_eq!(listed, brute);
        assert_eq!(listed.len(), 9);
        assert_eq!(pairs_up_to(3, 9).count(), 5 + 5 + 3);
    }

    #[test]
    fn replay_round_trip_small_range() {
        for x in pairs_up_to(60, 120) {
            let seq = decompose(x);
            assert!(seq.is_well_formed(), "{x}: {seq}");
            assert_eq!(seq.replay(), Ok(x));
        }
    }

    fn admissible() -> impl Strategy<Value = AdmissiblePair> {
        (1u64..2000, 0u64..2000).prop_filter_map("not admissible", |(p, k)| {
            AdmissiblePair::new(p, 2 * k + 1).ok()
        })
    }

    proptest! {
        #[test]
        fn decompose_replays(x in admissible()) {
            let seq = decompose(x);
            prop_assert!(seq.is_well_formed());
            prop_assert_eq!(seq.replay(), Ok(x));
        }

        #[test]
        fn closed_form_under_moves(x in admissible()) {
            let s = signature_closed_form(x);
            prop_assert_eq!(signature_closed_form(x.apply(TMove::T2).unwrap()), s);
            prop_assert_eq!(signature_closed_form(x.apply(TMove::T1).unwrap()), s + 1);
            if x.p() > x.q() {
                prop_assert_eq!(signature_closed_form(x.apply(TMove::T3).unwrap()), -s);
            }
        }

        #[test]
        fn canonical_preserves_signature(x in admissible()) {
            let (c, mirrored) = canonical_type(x);
            prop_assert!(!mirrored);
            prop_assert!(c.is_canonical());
            prop_assert_eq!(c.p(), x.p());
            prop_assert_eq!(signature_closed_form(c), signature_closed_form(x));
        }
    }
}
