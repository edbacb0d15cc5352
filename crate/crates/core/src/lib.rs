//! Exact heights and a bounded-height point census on the weighted
//! projective stack P(2,3,4) over Q and F_q(t).
//!
//! A point is a nonzero coordinate triple (x0, x1, x2) up to the scaling
//! lambda . (x0, x1, x2) = (lambda^2 x0, lambda^3 x1, lambda^4 x2). The
//! crate computes the exact stacky height of such triples, enumerates every
//! point up to a height bound via canonical integral representatives, maps
//! each point to an elliptic curve with a marked rational point, decides
//! whether the marked point is torsion (and of which order), and aggregates
//! the results into census tables.

pub mod curves;
pub mod enumerate;
pub mod error;
pub mod fields;
pub mod heights;
pub mod stats;

pub use error::{Error, Result};
