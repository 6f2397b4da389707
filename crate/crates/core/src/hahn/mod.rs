//! Hahn series with finite support and exponents in a construction group.

pub mod coeff;
pub mod literal;
pub mod series;

pub use coeff::{CoeffField, Coefficient};
pub use literal::parse_series;
pub use series::{witness_h_a_not_in_a, HahnSeries, Membership, MAX_EXPANSION};
