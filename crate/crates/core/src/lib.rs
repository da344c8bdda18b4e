//! Exact computation in the monoid of monotone injective partial selfmaps of
//! `N x N` (product order) with cofinite domain and image.
//!
//! Maps act on the right: `x(ab) = (xa)b`, so in every product the left
//! factor is applied first. Coordinates are 1-based.
//!
//! ```
//! use poinf::{Element, Point};
//!
//! let g1 = Element::gamma(1).unwrap();
//! let w = Element::swap();
//! assert_eq!(w.compose(&w), Element::identity());
//! assert_eq!(g1.compose(&g1).apply(Point::new(3, 1)), Some(Point::new(1, 1)));
//! // conjugating by the swap turns row generators into column generators
//! assert_eq!(w.compose(&g1).compose(&w), Element::upsilon(1).unwrap());
//! ```

pub mod congruence;
pub mod dsl;
pub mod element;
pub mod equations;
pub mod error;
pub mod oracle;
pub mod point;
pub mod quotient;
pub mod verify;

pub use congruence::{ShiftProfile, SigmaForms, SigmaWitness, Thresholds};
pub use quotient::{FreeWord, SemidirectElement};

pub use element::{Element, ElementRecord, Idempotent, PlusPart, ValidationReport, Z2};
pub use error::{Axis, Error, Result, Violation};
pub use point::{col_points, leq, row_points, Point, Window};
