//! Exact-arithmetic engine for finite-dimensional nonassociative spectral
//! geometries over semisimple octonion algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`] — dense and sparse linear algebra over arbitrary-precision
//!   rationals (rank, nullspace, span membership),
//! * [`compalg`] — composition algebras (octonions, quaternions) with explicit
//!   structure constants,
//! * [`dsum`] — direct sums `A = ⊕ⁿ 𝕆`, their regular representations and
//!   bimodule-condition checkers,
//! * [`deriv`] — inner derivations, the derivation Lie algebra computed as an
//!   exact nullspace, lifts, and floating-point exponentials,
//! * [`bimod`] — split and reconstituted bimodules on sector-indexed tensor
//!   spaces, homomorphism classification, span closure,
//! * [`spectral`] — Dirac operators, one-form actions, Leibniz verification,
//!   the first-order derivation solver, gauge diagnostics and KO signs.
//!
//! Every identity check is exact: a check passes only when the residual is
//! the rational number zero. Floating point appears solely in automorphism
//! exponentials, which carry their own explicit tolerance.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bimod;
pub mod compalg;
pub mod deriv;
pub mod dsum;
pub mod exactlin;
pub mod rng;
pub mod spectral;

pub use exactlin::ExactScalar;

/// Acting side of an algebra on a module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}
