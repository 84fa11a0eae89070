//! The extended diagram of an admissible pair and its principal underarc.
//!
//! Grid lines `W_i` carry points labelled `-(q-1)/2 ..= p+(q-1)/2`; the
//! segment `[0, p]` of each line is an overarc. Between `W_i` and `W_{i+1}`
//! three families of arcs are drawn:
//!
//! - connecting arcs `(i, j) -> (i+1, j+q)` for `-(q-1)/2 <= j <= p-(q+1)/2`,
//! - bottom loops `(i+1, j) -- (i+1, -j)` hanging left of `W_{i+1}`,
//! - top loops `(i, p-j) -- (i, p+j)` hanging right of `W_i`,
//!
//! with `1 <= j <= (q-1)/2` for both loop families. Nothing is materialised:
//! the incidence rules below produce the arc leaving a point on either side
//! in constant time, so tracing an underarc is linear in its length.
//!
//! Every label except `0` has exactly one arc on its left and every label
//! except `p` exactly one on its right. The principal underarc is therefore
//! the walk that starts at raw point `(0, 0)`, leaves to the right, passes
//! straight through each interior point and stops on a label-`p` point.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pair::AdmissiblePair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub line: i64,
    pub label: i64,
}

impl GridPoint {
    pub const fn new(line: i64, label: i64) -> Self {
        GridPoint { line, label }
    }

    /// On the overarc segment `[0, p]` of its grid line.
    pub fn on_overarc(self, p: u64) -> bool {
        (0..=p as i64).contains(&self.label)
    }

    fn shifted(self, by: i64) -> Self {
        GridPoint { line: self.line + by, label: self.label }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArcKind {
    Connecting,
    BottomLoop,
    TopLoop,
}

/// One arc of the underarc. `endpoints` are in traversal order; `region`
/// is `r` when the arc lies between `W_r` and `W_{r+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiagramArc {
    pub kind: ArcKind,
    pub endpoints: (GridPoint, GridPoint),
    pub region: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Closed-form incidence rules for the extended diagram of one pair.
#[derive(Clone, Copy, Debug)]
pub struct Incidence {
    p: i64,
    q: i64,
    half: i64,
}

impl Incidence {
    pub fn new(x: AdmissiblePair) -> Self {
        let (p, q) = (x.p() as i64, x.q() as i64);
        Incidence { p, q, half: (q - 1) / 2 }
    }

    /// Lowest and highest label marked on every grid line.
    pub fn label_band(&self) -> (i64, i64) {
        (-self.half, self.p + self.half)
    }

    /// The arc leaving `at` to the right of its grid line, if any.
    pub fn right_arc(&self, at: GridPoint) -> Option<DiagramArc> {
        let (p, q, h) = (self.p, self.q, self.half);
        let j = at.label;
        if (-h..=p - h - 1).contains(&j) {
            Some(DiagramArc {
                kind: ArcKind::Connecting,
                endpoints: (at, GridPoint::new(at.line + 1, j + q)),
                region: at.line,
            })
        } else if (p - h..=p + h).contains(&j) && j != p {
            Some(DiagramArc {
                kind: ArcKind::TopLoop,
                endpoints: (at, GridPoint::new(at.line, 2 * p - j)),
                region: at.line,
            })
        } else {
            None
        }
    }

    /// The arc leaving `at` to the left of its grid line, if any.
    pub fn left_arc(&self, at: GridPoint) -> Option<DiagramArc> {
        let (p, q, h) = (self.p, self.q, self.half);
        let j = at.label;
        if (h + 1..=p + h).contains(&j) {
            Some(DiagramArc {
                kind: ArcKind::Connecting,
                endpoints: (at, GridPoint::new(at.line - 1, j - q)),
                region: at.line - 1,
            })
        } else if (-h..=h).contains(&j) && j != 0 {
            Some(DiagramArc {
                kind: ArcKind::BottomLoop,
                endpoints: (at, GridPoint::new(at.line, -j)),
                region: at.line - 1,
            })
        } else {
            None
        }
    }

    /// Number of arcs incident to `at`.
    pub fn degree(&self, at: GridPoint) -> usize {
        usize::from(self.left_arc(at).is_some()) + usize::from(self.right_arc(at).is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnderarcTrace {
    pub pair: AdmissiblePair,
    /// Visited points, reindexed so the leftmost overarc hit is `W_0`.
    pub points: Vec<GridPoint>,
    pub arcs: Vec<DiagramArc>,
    pub length: usize,
    /// Added to every raw line index during reindexing.
    pub line_offset: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedCrossing {
    pub at: GridPoint,
    pub sign: i8,
}

pub fn trace_principal_underarc(x: AdmissiblePair) -> Result<UnderarcTrace> {
    let inc = Incidence::new(x);
    let p = x.p() as i64;
    let violation = |reason| Error::ModelViolation { pair: x, reason };

    // Each line carries p+q points and the walk never leaves [0, p] lines
    // wide, so this cap is never reached by a healthy walk.
    let cap = (x.p() + x.q() + 1).saturating_mul(x.p() + 2);
    let mut points = Vec::with_capacity(2 * x.p() as usize + 2);
    let mut arcs = Vec::with_capacity(2 * x.p() as usize + 1);
    let mut at = GridPoint::new(0, 0);
    let mut leave = Side::Right;
    points.push(at);
    loop {
        if arcs.len() as u64 >= cap {
            return Err(violation("underarc walk did not terminate"));
        }
        let arc = match leave {
            Side::Right => inc.right_arc(at),
            Side::Left => inc.left_arc(at),
        }
        .ok_or_else(|| violation("walk reached a point with no onward arc"))?;
        at = arc.endpoints.1;
        leave = if arc.region == at.line - 1 { Side::Right } else { Side::Left };
        arcs.push(arc);
        points.push(at);
        if at.label == p {
            if leave != Side::Right {
                return Err(violation("label-p endpoint entered from the right"));
            }
            break;
        }
        if at.label == 0 {
            return Err(violation("underarc ended on a second label-0 point"));
        }
    }

    let (lo, hi) = points
        .iter()
        .filter(|pt| pt.on_overarc(x.p()))
        .fold((i64::MAX, i64::MIN), |(lo, hi), pt| (lo.min(pt.line), hi.max(pt.line)));
    if points.iter().any(|pt| pt.line < lo || pt.line > hi) {
        return Err(violation("underarc strays beyond the overarcs it hits"));
    }
    let offset = -lo;
    let length = (hi - lo) as usize;
    for pt in &mut points {
        *pt = pt.shifted(offset);
    }
    for arc in &mut arcs {
        arc.endpoints = (arc.endpoints.0.shifted(offset), arc.endpoints.1.shifted(offset));
        arc.region += offset;
    }

    let trace = UnderarcTrace { pair: x, points, arcs, length, line_offset: offset };
    trace.validate()?;
    Ok(trace)
}

impl UnderarcTrace {
    /// Checks the structural invariants of a normalised trace.
    pub fn validate(&self) -> Result<()> {
        let x = self.pair;
        let p = x.p() as i64;
        let violation = |reason| Err(Error::ModelViolation { pair: x, reason });
        let n = self.points.len();
        if n != self.arcs.len() + 1 {
            return violation("point and arc counts disagree");
        }
        if self.points[0].label != 0 || self.points[n - 1].label != p {
            return violation("underarc does not run from label 0 to label p");
        }
        if self.points[1..n - 1].iter().any(|pt| pt.label == 0 || pt.label == p) {
            return violation("interior point on an overarc end");
        }
        for (i, arc) in self.arcs.iter().enumerate() {
            if arc.endpoints != (self.points[i], self.points[i + 1]) {
                return violation("arc endpoints do not chain");
            }
        }
        let mut sorted = self.points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return violation("underarc revisits a point");
        }
        let mut covered = alloc::vec![false; self.length];
        for arc in self.arcs.iter().filter(|a| a.kind == ArcKind::Connecting) {
            match usize::try_from(arc.region).ok().and_then(|r| covered.get_mut(r)) {
                Some(slot) => *slot = true,
                None => return violation("connecting arc outside [W_0, W_l]"),
            }
        }
        if covered.iter().any(|c| !c) {
            return violation("region between overarcs has no connecting arc");
        }
        Ok(())
    }

    fn entered_from_left(&self, idx: usize) -> bool {
        self.arcs[idx - 1].region == self.points[idx].line - 1
    }
}

/// `alpha_r`: number of connecting arcs between `W_r` and `W_{r+1}`.
pub fn arc_sequence(t: &UnderarcTrace) -> Vec<u64> {
    let mut alpha = alloc::vec![0u64; t.length];
    for arc in t.arcs.iter().filter(|a| a.kind == ArcKind::Connecting) {
        alpha[arc.region as usize] += 1;
    }
    alpha
}

/// `b_i`: twice the bottom loops at `W_i`, plus one on the starting line.
/// Has `length + 1` entries.
pub fn bottom_sequence(t: &UnderarcTrace) -> Vec<u64> {
    let mut b = alloc::vec![0u64; t.length + 1];
    for arc in t.arcs.iter().filter(|a| a.kind == ArcKind::BottomLoop) {
        b[arc.endpoints.0.line as usize] += 2;
    }
    b[t.points[0].line as usize] += 1;
    b
}

/// Crossings under the overarcs, oriented downwards; passing a line from
/// left to right counts `+1`.
pub fn signed_crossings(t: &UnderarcTrace) -> Vec<SignedCrossing> {
    let p = t.pair.p() as i64;
    (1..t.points.len() - 1)
        .filter(|&i| (1..p).contains(&t.points[i].label))
        .map(|i| SignedCrossing {
            at: t.points[i],
            sign: if t.entered_from_left(i) { 1 } else { -1 },
        })
        .collect()
}

pub fn diagram_signature(t: &UnderarcTrace) -> i64 {
    signed_crossings(t).iter().map(|c| i64::from(c.sign)).sum()
}
