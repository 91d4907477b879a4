//! Explicit GRH-conditional bounds for the norm of the (k+1)-st prime ideal
//! with prescribed Artin symbol, together with a verification harness that
//! checks the bound and every auxiliary inequality of its proof chain against
//! exact prime-ideal censuses of concrete abelian extensions of ℚ.
//!
//! Module map:
//! - [`field_models`]: concrete field families (ℚ, quadratic, cyclotomic) and
//!   their invariants (degree, signature, discriminant).
//! - [`artin_splitting`]: splitting data, Frobenius classes and the
//!   inertia-averaged weights θ(C;p^m).
//! - [`census`]: exact prime-power event streams and the counting functions
//!   π_C, ψ_C, ϑ_C, ψ(C;·), ϑ(C;·) and their integrals.
//! - [`explicit_bounds`]: closed-form evaluators for the main theorem bound
//!   and every inequality used to derive it.
//! - [`verify`]: the sweep drivers behind the `artin-bound` CLI.

pub mod arith;
pub mod artin_splitting;
pub mod census;
pub mod config;
pub mod explicit_bounds;
pub mod field_models;
pub mod report;
pub mod verify;
