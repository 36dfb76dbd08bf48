//! Exact computer algebra for braided Dunkl operators.
//!
//! The crate works over exact scalars only. Every structure is generic over
//! the [`Field`] trait (with [`RootField`] for structures that need roots of
//! unity). Two scalar types are provided: arbitrary-precision rationals and
//! elements of a cyclotomic field `Q(zeta_N)`. The aliases at the crate root
//! fix the scalar to [`CycloElement`], which is what the command line tool
//! and the acceptance suite use.
//!
//! Module map:
//!
//! * [`cyclotomic`]: `Q(zeta_N)` arithmetic and the literal format.
//! * [`linalg`]: dense and sparse row reduction over any [`Field`].
//! * [`qpoly`]: the q-symmetric algebra `S_q(V)` and its division routines.
//! * [`wgroup`]: monomial matrices, finite groups by closure, blocks of `q`.
//! * [`dunkl`]: degree-truncated operators and the Dunkl families.
//! * [`doubles`]: commutator maps, maximal relation spaces, Yetter-Drinfeld
//!   modules and embedding certificates.
//! * [`cherednik`]: presented algebras, normal forms and the Verma action.
//! * [`cli`]: configuration parsing, named checks and JSON reports.

pub mod cherednik;
pub mod cli;
pub mod cyclotomic;
pub mod doubles;
pub mod dunkl;
mod error;
pub mod field;
pub mod linalg;
pub mod qpoly;
pub mod wgroup;

pub use error::{Error, Result};
pub use field::{Field, Rational, RootField};

pub use cyclotomic::{CycloElement, CycloField};

/// Cyclotomic scalar used by the command line tool and the acceptance suite.
pub type Scalar = CycloElement;
/// Deformation matrix over the cyclotomic scalar.
pub type QMatrix = qpoly::QMatrix<CycloElement>;
/// Element of `S_q(V)` over the cyclotomic scalar.
pub type QPolynomial = qpoly::QPolynomial<CycloElement>;
/// Generalized permutation matrix over the cyclotomic scalar.
pub type MonomialMatrix = wgroup::MonomialMatrix<CycloElement>;
/// Finite matrix group over the cyclotomic scalar.
pub type Group = wgroup::Group<CycloElement>;
/// Degree-truncated operator over the cyclotomic scalar.
pub type Operator = dunkl::Operator<CycloElement>;
/// Commutator parameter over the cyclotomic scalar.
pub type CommutatorMap = doubles::CommutatorMap<CycloElement>;
/// Presented algebra over the cyclotomic scalar.
pub type Presentation = cherednik::Presentation<CycloElement>;
/// Normal-form algebra element over the cyclotomic scalar.
pub type AlgebraElement = cherednik::AlgebraElement<CycloElement>;
/// Dense matrix over the cyclotomic scalar.
pub type Matrix = linalg::Matrix<CycloElement>;
