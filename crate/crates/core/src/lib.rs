//! Arithmetic of real quadratic fields `Q(sqrt M)` aimed at one question:
//! is the fundamental unit of norm `-1`?
//!
//! For a squarefree `M` whose odd primes are all `1 mod 4`, `-1` is a norm
//! from the field, yet the unit may still have norm `+1`. The [`criterion`]
//! module reads a factorization `M = m m'` off the fundamental unit that
//! decides the sign without further class group work, [`ideals`] tests the
//! same relations through reduced ideals, and [`survey`] counts the outcomes
//! over large ranges.
//!
//! ```
//! use quadnorm_core::{classify_norm, Radical};
//!
//! let r = Radical::new(34).unwrap();
//! let res = classify_norm(&r).unwrap();
//! assert_eq!((res.m, res.m_prime), (2, 17));
//! assert_eq!(res.unit.norm_sign, 1);
//! ```

pub mod arith;
mod cf;
pub mod criterion;
mod error;
pub mod ideals;
pub mod oracle;
pub mod quadfield;
pub mod survey;

pub use criterion::{classify_norm, CriterionReport, CriterionResult, HalfInt};
pub use error::{Error, Result};
pub use ideals::{Field, Q2Class, QuadIdeal};
pub use quadfield::{fundamental_unit, FundamentalUnit, QuadInt, Radical};
