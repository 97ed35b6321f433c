//! Exact-arithmetic homology engine for braid groups and annular braid
//! groups with twisted coefficients.
//!
//! The crate builds the finite free resolution attached to a finite-type
//! Artin group (types A and B), specializes it through integer matrix
//! representations — the symplectic transvection representation, reduced
//! Burau at -1, the sign-cover module of the hyperelliptic double cover —
//! and computes homology exactly via Smith normal form, together with
//! induced maps on homology and verification suites for torsion, splitting
//! and covering-space identities.

pub mod braid;
pub mod coxeter;
pub mod freegroup;
pub mod garside;
pub mod groupring;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod representations;
pub mod suites;
pub mod salvetti;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
