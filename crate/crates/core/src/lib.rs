//! Computational machinery for Nichols algebras: exact cyclotomic scalars,
//! braid-group combinatorics, braided vector spaces with their graded
//! components, the Shapovalov morphism of a one-node subalgebra, and the
//! reflection/root calculus of Dynkin diagrams of diagonal type.

pub mod braid;
pub mod braided;
pub mod cyclotomic;
pub mod dynkin;
pub mod groupoid;
pub mod linalg;
pub mod shapovalov;
pub mod verify;

pub use cyclotomic::{CycError, CycNum, QPoly};
