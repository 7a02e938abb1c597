//! Exact mixed graded Chevalley–Eilenberg complexes of dg Lie algebras.
//!
//! The crate models mixed graded chain complexes (weight-graded complexes
//! with a square-zero mixed differential) over the rationals and builds the
//! homological and cohomological Chevalley–Eilenberg objects of finite
//! dimensional dg Lie algebras in that setting, together with the checks that
//! tie them to the classical complexes.

pub mod ce;
pub mod complex;
pub mod enveloping;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod mixed;
pub mod sym;

pub use complex::ChainComplex;
pub use error::{Error, Violation};
pub use linalg::{rat, ratio, Rat, RatMatrix, SparseVec};
pub use mixed::{adjoint_eps, free_eps, triv_eps, Cell, GradedModule, MixedGradedModule, MixedMap, Side};
