//! Exact symbolic calculus for Bott-Chern characteristic classes under
//! blow-ups of compact complex manifolds.
//!
//! Everything is computed over the rationals with arbitrary-precision
//! arithmetic; there is no floating point anywhere in this crate.
//!
//! The main pieces:
//!
//! - [`gring`]: finitely presented graded-commutative rings with confluent
//!   normal forms, dimension truncation, and linear maps (pullbacks and
//!   pushforwards) between them.
//! - [`symchern`]: symmetric-function calculus over Chern roots: Newton /
//!   elementary conversions, total-class group structure, duals, exterior
//!   powers, tensor products, Chern character and Todd series.
//! - [`rrwd`]: the universal integer power series of Riemann-Roch without
//!   denominators and its specializations.
//! - [`blowup`]: the blow-up cohomology ring with its pushforward /
//!   pullback calculus, the total-Chern-class blow-up formula, and the
//!   identity suites that verify it.
//! - [`nilbc`]: Bott-Chern cohomology of nilmanifolds from invariant forms,
//!   by exact linear algebra over Gaussian rationals.
//! - [`presets`]: ready-made scenarios (surface point, threefold point,
//!   threefold curve, Iwasawa, universal centers) with verification suites.
//!
//! A point blow-up of a surface, end to end:
//!
//! ```
//! use bcblow_core::presets;
//!
//! let br = presets::surface_point().unwrap();
//! let total = br.total_chern().unwrap();
//!
//! // first Chern class drops by the exceptional divisor
//! let e = br.exceptional_class();
//! let c1_y = bcblow_core::gring::GradedClass::generator_named(
//!     br.embedding().ring_y(), "c1").unwrap();
//! assert_eq!(
//!     br.component(&total, 1),
//!     br.sub(&br.pi_star(&c1_y), &e).unwrap(),
//! );
//!
//! // the exceptional curve has self-intersection -1
//! let e2 = br.mul(&e, &e).unwrap();
//! let point = bcblow_core::gring::GradedClass::generator_named(
//!     br.embedding().ring_y(), "p").unwrap();
//! assert_eq!(e2, br.neg(&br.pi_star(&point)));
//!
//! // every structural identity of the scenario holds exactly
//! let reports = presets::verify_preset("surface-point").unwrap();
//! assert!(bcblow_core::report::all_passed(&reports));
//! ```
//!
//! The universal series of Riemann-Roch without denominators:
//!
//! ```
//! use bcblow_core::rat::BigInt;
//! use bcblow_core::rrwd::compute_f;
//!
//! // ranks u = 3, v = 2: the constant term is (-1)^(3-1) 2! 2 = 4
//! let f = compute_f(3, 2, 2).unwrap();
//! assert_eq!(f.constant_term(), BigInt::from(4));
//! ```

pub mod blowup;
pub mod error;
pub mod gring;
pub mod nilbc;
pub mod poly;
pub mod presets;
pub mod rat;
pub mod report;
pub mod rrwd;
pub mod symchern;

pub use error::{Error, Result};
pub use rat::Rational;
