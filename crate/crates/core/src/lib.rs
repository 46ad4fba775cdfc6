//! Coefficient functionals of starlike functions on the unit disk and of
//! starlike mappings `F(z) = z f(z)` on unit balls and bounded starlike
//! circular domains in `C^n`.
//!
//! The crate is `no_std` (with `alloc`) so the numerical kernel can be embedded
//! anywhere; campaigns, reports and the command line live in the `zalcman`
//! crate.
//!
//! Layout:
//!
//! * [`series`]: truncated complex power series (products, quotients, `exp`).
//! * [`herglotz`]: finitely atomic Herglotz measures, i.e. members of the
//!   Carathéodory class.
//! * [`starlike`]: one-variable starlike coefficients and the generalized
//!   Zalcman functional `a_m a_n - a_{m+n-1}`, including an extremal search.
//! * [`geometry`]: norms on `C^n`, support functionals and Wirtinger
//!   gradients of Minkowski functionals.
//! * [`mappings`]: lifted mappings `z f(z)`, their homogeneous expansions,
//!   and the multivariate Zalcman functional.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod herglotz;
pub mod mappings;
pub mod rng;
pub mod series;
pub mod starlike;

pub use error::{Error, Result};
pub use geometry::{Covector, NormKind, SpaceSpec};
pub use herglotz::{HerglotzAtom, HerglotzMeasure};
pub use mappings::{FunctionalValues, LiftedAtom, LiftedMapSpec, Mode};
pub use series::TruncatedSeries;
pub use starlike::{SchlichtCoefficients, ZalcmanOrder};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Default truncation order of every series computation.
pub const DEFAULT_ORDER: usize = 7;

/// Absolute slack used when asserting an inequality bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;
