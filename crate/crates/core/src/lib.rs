//! Exact computations in quantum generalized Heisenberg algebras
//! H_q(f,g): PBW normal forms, structural invariants (conformality, center,
//! zero divisors) and the finite-dimensional simple modules together with
//! their isomorphism classes.

pub mod error;
pub mod field;
pub mod linalg;
pub mod modules;
pub mod parse;
pub mod pbw;
pub mod poly;
pub mod spectra;
pub mod structure;

pub use error::{Error, Result};
pub use field::{Field, FieldElement, FieldKind, FieldSpec};
pub use linalg::Matrix;
pub use modules::{Family, MatrixRep, ModuleSpec};
pub use pbw::{Algebra, AlgebraSpec, PbwElement};
pub use poly::Poly;
pub use spectra::{LambdaOrbit, MuSeq, NuTable};
