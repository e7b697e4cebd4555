//! Exact computations for the linear and rank-one models of nonabelian Hodge
//! theory.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`], [`upoly`], [`ratfun`], [`laurent`], [`zpoly`], [`matrix`],
//!   [`intmat`]: exact rings (Q(i), Q(ζ_n), rational functions, group algebras
//!   of Z^a, integer lattices).
//! * [`birkhoff`]: splitting types of vector bundles on P¹ from transition
//!   matrices.
//! * [`rees`]: filtrations as G_m-equivariant modules, transversality and
//!   purity of two-filtration gluings.
//! * [`twistor`]: quaternionic linear algebra, the twistor line and its
//!   σ-invariant sections.
//! * [`lambda`]: the rank-one λ-connection family and the involution σ′.
//! * [`jump`]: cohomology jump loci over the rank-one character torus.
//! * [`gm`]: linear G_m actions on projective space and their quotients.
//! * [`langton`]: semistable reduction for bundles on P¹ over a disk.
//!
//! No floating point is used anywhere.

pub mod birkhoff;
pub mod checks;
pub mod error;
pub mod field;
pub mod gm;
pub mod intmat;
pub mod jump;
pub mod json;
pub mod lambda;
pub mod langton;
pub mod laurent;
pub mod matrix;
pub mod par;
pub mod random;
pub mod ratfun;
pub mod rees;
pub mod scalar;
pub mod twistor;
pub mod upoly;
pub mod zpoly;

pub use error::{Error, Result};
pub use field::{Field, Ring};
pub use laurent::{LaurentMatrix, LaurentPoly};
pub use matrix::{Matrix, ScalarMatrix};
pub use ratfun::RatFun;
pub use scalar::Scalar;
pub use zpoly::{ZMatrix, ZPoly};
