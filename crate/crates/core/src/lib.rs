//! Voltage cover of the non-incident point-hyperplane graph `H3(F)` over a
//! field of characteristic 2, with computational verification of every step
//! of the construction and of the non-split extension of `SL4(F)` by `F^6`
//! acting on the cover.
//!
//! The layers, bottom up:
//!
//! - [`field`]: GF(2^k) for k = 1..4,
//! - [`linalg`]: vectors, covectors and 4x4 matrices over those fields, plus
//!   F2-linear systems,
//! - [`multilinear`]: `W = Λ²V`, the duality `φ`, the symmetric square
//!   `S₂(W)`, the invariant `U` and the quotient `N = S₂(W)/⟨U⟩`,
//! - [`graphs`]: the affine and projective point-hyperplane graphs,
//! - [`voltage`]: generic voltage-assignment machinery (lifts, cycle spans,
//!   lifted group actions),
//! - [`construction`]: the voltage assignment itself and its verifiers,
//! - [`cli`]: the `verify` and `export` commands behind the `h3cover` binary.

pub mod cli;
pub mod construction;
pub mod field;
pub mod graphs;
pub mod linalg;
pub mod multilinear;
pub mod report;
pub mod voltage;

pub use field::{Field, FieldSpec, Gf, Gf16, Gf2, Gf4, Gf8};
pub use linalg::{Covector, Matrix4, Vector};
pub use multilinear::{Bivector, DualBivector, NElement, SymTensor};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size cap exceeded: {what} needs {needed} vertices, cap is {cap}")]
    CapExceeded { what: String, needed: u64, cap: u64 },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Runs `$body` with `$f` bound to the concrete field type selected by a
/// runtime [`FieldSpec`].
///
/// ```
/// use h3cover::{with_field, Field, FieldSpec};
/// let spec = FieldSpec::GF8;
/// let n = with_field!(spec, F => F::ORDER);
/// assert_eq!(n, 8);
/// ```
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec.k {
            1 => {
                type $f = $crate::field::Gf2;
                $body
            }
            2 => {
                type $f = $crate::field::Gf4;
                $body
            }
            3 => {
                type $f = $crate::field::Gf8;
                $body
            }
            4 => {
                type $f = $crate::field::Gf16;
                $body
            }
            k => unreachable!("FieldSpec with unsupported degree {}", k),
        }
    };
}
