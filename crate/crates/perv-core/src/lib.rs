//! The diagram category of perverse sheaves on an `r`-branch curve germ:
//! objects are tuples of modules with `can`/`var` maps satisfying the two
//! monodromy axioms, morphisms are commuting tuples of module maps. The
//! crate provides validated construction, kernels/images/cokernels, direct
//! sums, hom spaces, isomorphism testing, and a JSON wire format.

pub mod error;
pub mod factorization;
pub mod hom;
pub mod iso;
pub mod morphism;
pub mod object;
pub mod sum;
pub mod wire;

pub use error::{Axiom, PervError};
pub use factorization::{perv_factorization, PervFactorization};
pub use hom::{hom_space, HomSpace};
pub use iso::{find_isomorphism, IsoOutcome, DEFAULT_ISO_TRIALS};
pub use morphism::{MorphismClass, PervMorphism};
pub use object::PervObject;
pub use sum::{direct_sum_of_morphisms, perv_direct_sum, PervDirectSum};
pub use wire::{
    matrix_to_data, module_to_record, MatrixData, ModuleRecord, MorphismFile, ObjectFile,
};
