//! Exact construction, verification and brute-force cross-checking of two
//! triads of biquadrates with equal sums and equal products.
//!
//! ```
//! use biquad::family::{final_family, ParamPoint};
//!
//! let member = final_family(&ParamPoint::new(1, -1).unwrap()).unwrap();
//! assert_eq!(member.pair.to_string(), "({7, 133, 153}, {17, 49, 171})");
//! ```

mod clock;
pub mod exact;
pub mod family;
pub mod identities;
pub mod multipoly;
pub mod quartic;
pub mod search;

pub use exact::Rational;
pub use family::{FamilyError, FamilyParams, ParamPoint, Triad, TriadPair};
pub use multipoly::{MultiPoly, PolyRing};
pub use quartic::{CurvePoint, MonicQuartic};
