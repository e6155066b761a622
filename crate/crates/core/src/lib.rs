//! Hyperbolic classification of natural numbers through piecewise-affine
//! codings of the half line, and the essential-point characterization of
//! Goldbach partitions.
//!
//! The crate is organised bottom-up:
//!
//! - [`coding`]: codings `ψ`, transported arithmetic, identification tests.
//! - [`hyperbola`]: deformed curves, one-sided derivatives, classification.
//! - [`regions`]: essential regions of `xy = k` and their types.
//! - [`areas`]: closed-form areas, deformed areas, `(Â_T)″`, bounds.
//! - [`points`]: essential polynomials and points.
//! - [`construction`]: the continuous function `𝔊` and its checks.
//! - [`oracles`]: brute-force validators (sieve, quadrature, differences).
//! - [`sweep`], [`config`]: sweeps and run configuration for the binary.
//!
//! All of it is generic over [`Scalar`]: exact [`BigRational`], `f64`, or
//! [`HpFloat`].
//!
//! ## Examples
//!
//! ```text
//! cargo run --example coding_arithmetic
//! cargo run --example hyperbolic_classification -- 30
//! cargo run --example essential_regions -- 17
//! cargo run --example area_calculus
//! cargo run --example essential_points -- 48
//! cargo run --example goldbach_function -- 18 7
//! cargo run --example scalar_limit -- 18
//! ```
//!
//! ```
//! use hypclass::{classify_number, BigRational, NumberClass, PrimeCoding};
//!
//! let c = PrimeCoding::<BigRational>::default_strict(20);
//! let k = BigRational::from_integer(17.into());
//! assert_eq!(classify_number(&c, &k).unwrap(), NumberClass::Prime);
//! ```

pub mod areas;
pub mod coding;
pub mod config;
pub mod construction;
pub mod error;
pub mod hyperbola;
pub mod oracles;
pub mod points;
pub mod regions;
pub mod scalar;
pub mod sweep;

pub use num_rational::BigRational;

pub use areas::{area_closed, hat_area, hat_at_second_derivative, Side};
pub use coding::{CodingFile, Mode, PrimeCoding};
pub use construction::{build, is_in_n, GoldbachSpec};
pub use error::{Error, Result};
pub use hyperbola::{classify_number, NumberClass, PointKind};
pub use points::{essential_points, goldbach_characterization, EssentialPolynomial};
pub use regions::{enumerate_regions, RegionType};
pub use scalar::{HpFloat, Real, Scalar};
