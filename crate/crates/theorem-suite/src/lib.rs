//! Executable checkers for the structure theory of the diagram category:
//! the support theorem and its corollary, the endomorphism theorem with its
//! image-variant counterexample, the eigenvalue remark, and the
//! characteristic-cycle properties — together with the worked-example
//! gallery and seeded fuzz campaigns that replay byte-for-byte.

pub mod checks;
pub mod fuzz;
pub mod gallery;
pub mod random;
pub mod report;

pub use checks::{
    check_cc_factorization, check_cc_object, check_corollary, check_endo_counterexample,
    check_endo_theorem, check_eigenvalue_remark, check_support_theorem,
    default_eigen_candidates, Mode, ALL_MODES,
};
pub use fuzz::{fuzz, fuzz_tagged, Suite, BASE_SUITES};
pub use gallery::{
    gallery, identify_object, GalleryEntry, GalleryValue, GALLERY_NAMES, GALLERY_OBJECT_NAMES,
};
pub use random::{random_endo, random_morphism, random_object};
pub use report::{CheckReport, FailureWitness, Verdict, Violation};
