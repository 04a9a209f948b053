//! Exact computation of the 1-dimensional fibers of a rational surface
//! parameterization `P^2 -> P^3` and of the degree bounds they satisfy.

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod experiment;
pub mod fibers;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod hilbert;
pub mod input;
pub mod ideal;
pub mod monomial;
pub mod param;
pub mod point;
pub mod syzygy;
pub mod poly;
pub mod univariate;

pub use error::{Error, Result};
pub use field::{ExtensionField, Field, PrimeField, Rationals};
pub use monomial::{Monomial, MonomialOrder, VariableContext};
pub use poly::{PolyRing, Polynomial, Ring};
pub use ideal::Ideal;
pub use point::ProjectivePoint;
pub use param::{BaseLocusReport, Parameterization};
