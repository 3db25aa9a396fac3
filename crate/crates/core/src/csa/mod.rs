//! Central simple algebras: structure-constant algebras, involutions of the
//! first kind, reduced and Pfaffian characteristic polynomials.

pub mod algebra;
pub mod index;
pub mod involution;

pub use algebra::{Algebra, Corner, Element, ModulePresentation, Preset};
pub use index::{index_evidence, IndexEvidence};
pub use involution::{
    adjoint_involution, involution_type, pfaffian_char_poly, quaternion_conjugation, quaternion_reversion,
    seed_orthogonal, seed_symplectic, standard_alternating_form, transpose_involution, Involution, InvolutionKind,
};
