//! Gröbner bases, Veronese presentations and syzygy checks over prime fields.

pub mod betti;
pub mod budget;
pub mod error;
pub mod field;
pub mod grading;
pub mod harness;
pub mod groebner;
pub mod ideal;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod veronese;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::{Ring, RingDescriptor};
