//! Exact lattice geometry for three-dimensional toric singularities: cones
//! and their terminal/canonical classification, fans and wall relations,
//! and flip/flop surgery.
//!
//! All arithmetic is exact (`i64` coordinates, `i128` intermediates and
//! `Ratio<i128>` rationals). The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod cone;
pub mod fan;
pub mod lattice;
pub mod mmp;
mod polyhedral;

pub use cone::{classify, make_cone, Cone, ConeError, QuotientType, SingularityClass, SingularityKind};
pub use fan::{validate_fan, wall_relation, wall_type, Fan, FanError, Wall, WallRelation, WallType};
pub use lattice::{IntegerMatrix, LatticeVector, Rational};
pub use mmp::{flip, flop_odp, recognize_flip, standard_flip_fan, Family, FlipFamily, MmpError, Theorem4Side};
