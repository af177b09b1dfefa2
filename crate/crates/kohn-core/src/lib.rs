//! Exact computer algebra for Kohn's multiplier algorithm on polynomial germs.
//!
//! The crate is split the way the algorithm is: `polyring` (exact polynomials),
//! `localalg` (standard bases in the local ring, multiplicities, elimination,
//! bounded radical membership), `kohn` (procedures P1/P2 and derivation
//! traces), `meta` (the three meta-procedures and the driver to the unit
//! multiplier) and `bounds` (the closed-form effectiveness bounds).

pub mod bounds;
pub mod error;
pub mod kohn;
pub mod localalg;
pub mod meta;
pub mod polyring;
pub mod section8;

pub use error::{Error, Result};
pub use kohn::{Multiplier, NodeId, NodeKind, Trace, TraceNode};
pub use localalg::{Caps, MembershipCertificate, MonomialOrder, Multiplicity, StandardBasis};
pub use polyring::{LinearChange, Monomial, Poly, RandomSource, Rational};
