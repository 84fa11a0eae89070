//! IO side of the two-bridge invariant engine: report encodings, parallel
//! range verification and SVG rendering. The arithmetic lives in
//! `twobridge-core`.

pub mod report;
pub mod svg;
pub mod verify;
