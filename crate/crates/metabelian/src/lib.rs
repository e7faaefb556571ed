//! Word problem and area certificates for finitely presented metabelian groups.
//!
//! A group is given as an extension of a module `A` (generated by the letters
//! of `𝒜`) by an abelian group `T` (the letters of `𝒯`). Words are collected
//! into an ordered form, a vector in the free module `(ℤT)^m`, and membership
//! of that vector in the relator submodule is decided with a strong Gröbner
//! basis over the integers.

pub mod bound;
pub mod collection;
pub mod constants;
pub mod element;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod order;
pub mod presentation;
pub mod presets;
pub mod relative;
pub mod text;
pub mod word_problem;

pub use bound::Magnitude;
pub use collection::{ordered_form, CostLedger, OrderedForm};
pub use element::{ModuleElement, RingElement, Term};
pub use error::{Error, Result};
pub use groebner::{DivisionCertificate, GroebnerBasis};
pub use monomial::Monomial;
pub use presentation::{GroupWord, Presentation};
pub use word_problem::{AreaCertificate, Solver};
