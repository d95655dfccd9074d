//! Exact computation with exterior splashes of order-q subplanes in PG(2, q^3).
//!
//! The crate is layered bottom-up:
//!
//! * [`field`]: GF(q) and GF(q^3) arithmetic, norm, trace, Frobenius.
//! * [`plane`]: points, lines, homographies, sublines and subplanes of PG(2, q^3).
//! * [`pg1`]: the projective line PG(1, q^3) and coordinate frames on a line.
//! * [`splash`]: splashes, carriers, the Singer group fixing a subplane and a line.
//! * [`models`]: covers, Sherk surfaces and linear sets on PG(1, q^3).
//! * [`sublines`]: the two subline families inside an exterior splash.
//! * [`projection`]: projecting a subplane from a point onto a line.
//! * [`census`]: counting subplanes per splash and their intersections.
//! * [`verify`]: every check above for one field, as a report.

pub mod census;
pub mod field;
pub mod models;
pub mod pg1;
pub mod plane;
pub mod projection;
pub mod splash;
pub mod sublines;
pub mod verify;

pub use field::{FieldCtx, FieldError, FieldSpec, Fq3Elem, FqElem};
pub use pg1::{LineFrame, Mobius, Param, ParamSet};
pub use plane::{Homography, PlaneError, ProjLine, ProjPoint, Subline, Subplane};
