//! Exact central-extension toolkit for nilpotent CD-algebras.
//!
//! A CD-algebra is an algebra in which the commutator of any two
//! multiplication operators acts as a derivation; equivalently, three
//! degree-4 multilinear identities hold.  This crate implements the
//! Skjelbred–Sund central-extension machinery for that variety with
//! exact arithmetic throughout:
//!
//! - [`scalar`] — the base fields ℚ, ℚ(i), ℚ(√d) and GF(p);
//! - [`linalg`] — dense exact linear algebra (RREF, kernels, quotients);
//! - [`algebra`] — structure-constant algebras, annihilators, nilpotency,
//!   derivations, and basis-invariant fingerprints;
//! - [`identity`] — multilinear polynomial-identity templates and
//!   exhaustive checking;
//! - [`cohomology`] — cocycle spaces Z², coboundaries B², H² = Z²/B²,
//!   cocycle annihilators, and the T_s condition;
//! - [`extension`] — building A_θ = A ⊕ V and recovering the parent;
//! - [`orbit`] — the Aut(A) action on cocycles, parameterized
//!   automorphism families, and orbit-formula regression blocks;
//! - [`iso`] — isomorphism verdicts: witness verification, fingerprint
//!   separation, exhaustive GF(p) search;
//! - [`catalog`] — a machine-readable catalog of classified nilpotent
//!   CD-algebra multiplication tables with claims and a file format;
//! - [`cli`] — the command-line front end.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod cohomology;
pub mod extension;
pub mod identity;
pub mod iso;
pub mod linalg;
pub mod orbit;
pub mod scalar;
