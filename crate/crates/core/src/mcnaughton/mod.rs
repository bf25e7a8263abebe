//! McNaughton functions: exact polyhedral compilation of terms, zero-set
//! ideal membership, and the gluing constructions for finitely presented
//! algebras.

mod glue;
mod linear;
mod polyhedron;
mod pwl;

use alloc::string::String;
use core::fmt::Write;

use thiserror::Error;

use crate::rational::Rational;

pub use glue::{
    agree_on_zero_set, glue_cover, glue_fp, ideal_member, is_archimedean_term, polyhedron_to_term,
    truncation_term, ArchimedeanCheck, CoverGlue, FpGlue, Membership,
};
pub use linear::LinearForm;
pub use polyhedron::{
    affine_rank, box_constraints, Constraint, Point, RationalPolyhedron, Relation,
};
pub use pwl::{
    compile, overlay, pwl_equal, refine_compiled, truncate, zero_set, Compiler, PwlComparison,
    PwlFunction, Refiner, DEFAULT_DIMENSION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error("dimension {n} exceeds the cap of {cap}")]
    DimensionTooLarge { n: usize, cap: usize },
    #[error("dimensions disagree")]
    DimensionMismatch,
    #[error("variable x{} does not exist in dimension {n}", .var + 1)]
    VariableOutOfRange { var: usize, n: usize },
    #[error("point lies outside [0,1]^n")]
    OutsideBox,
    #[error("point is not covered by any cell")]
    Uncovered,
    #[error("the pieces disagree on the overlap of the zero sets at {}", point_string(.point))]
    Incompatible { point: Point },
    #[error("pieces {i} and {j} disagree on the overlap of their zero sets at {}", point_string(.point))]
    IncompatiblePair { i: usize, j: usize, point: Point },
    #[error("the zero sets do not cover the box; {} is missed", point_string(.point))]
    NotACover { point: Point },
    #[error("empty family")]
    EmptyFamily,
    #[error("integer {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("glued term fails its contract at {}", point_string(.point))]
    GlueCheckFailed { point: Point },
}

/// `(1/2, 0/1)`.
pub fn point_string(p: &[Rational]) -> String {
    let mut s = String::from("(");
    for (i, x) in p.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{}/{}", x.numer(), x.denom());
    }
    s.push(')');
    s
}
