//! Ordered abelian groups Γ₂⊕Γ₁ and Λ₂⊕Λ₁ with exact arithmetic.

pub mod divisibility;
pub mod element;
pub mod fragment;
pub mod lambda1;
pub mod literal;
pub mod position;
pub mod psi;
pub mod rational;
pub mod tail;
pub mod value;

pub use divisibility::{coefficient_at, is_divisible, lead, lead_mod, LeadDescriptor};
pub use element::{Construction, GroupElement};
pub use fragment::{fragment, probe_pool, FragmentConfig};
pub use lambda1::{is_in_lambda1, lambda1_by_formula};
pub use literal::{format_element, parse_element, parse_element_with};
pub use position::{Position, SlotKind};
pub use psi::{congruent, in_h, psi, psi_witness};
pub use rational::Rational;
pub use tail::{hprime_descriptor, in_hprime, TailSet};
pub use value::{SlotPoly, Value};
