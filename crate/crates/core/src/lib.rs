//! Exact symbolic computation for the odd categorified quantum group of sl2
//! and its decategorifications.
//!
//! The crate is organized around six layers:
//!
//! - [`qpi`]: the ground rings `Z[q,q^-1,pi]/(pi^2-1)`, the quotient
//!   `R = Z[q]/(q^4-1)`, and their Gaussian-integer specializations;
//! - [`covering`]: the idempotented covering quantum group, its canonical
//!   basis, and the `R`-form / small quantum group / sl(1|1) specializations;
//! - [`onh`]: the odd nilHecke algebra as a confluent rewriting system, its
//!   square-zero differential and integral homology;
//! - [`diag`]: the slice-encoded string-diagram calculus for the odd
//!   2-category, with derivation classification, fantastic-filtration
//!   verification and Grothendieck-class extraction;
//! - [`halfgraded`]: half-graded complexes (differential of bidegree (2,1))
//!   and their classes in `R`;
//! - [`suites`]: named verification batteries behind the CLI.

pub mod covering;
pub mod diag;
pub mod error;
pub mod halfgraded;
pub mod mpoly;
pub mod onh;
pub mod qpi;
pub mod ratq;
pub mod suites;

pub use error::ParseError;
