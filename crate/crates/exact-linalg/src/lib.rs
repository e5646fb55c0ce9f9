//! Exact linear and module algebra over ℚ, ℤ and prime fields.
//!
//! Everything is computed with exact arithmetic — arbitrary-precision
//! rationals and integers, machine-word prime fields — and deterministic
//! algorithms: the same inputs produce bit-identical outputs on every
//! platform. The centerpiece is a Smith-normal-form engine with full
//! transform tracking, on top of which finitely generated modules get
//! canonical forms and maps between them get exact kernels, images and
//! cokernels.

pub mod error;
pub mod hom;
pub mod map;
pub mod mat;
pub mod module;
pub mod ring;
pub mod rng;
pub mod smith;

pub use error::LinalgError;
pub use hom::{solve_hom_constraints, HomEquation, HomSolution, HomTerm, HomUnknown};
pub use map::{
    direct_sum_of_maps, direct_sum_parts, exactness_check, factor_through_injection,
    factor_through_surjection, is_exact_at, map_factorization, section_of_epi, CokernelParts,
    DirectSumParts, ImageParts, KernelParts, MapFactorization, ModuleMap,
};
pub use mat::Mat;
pub use module::{
    canonicalize_presentation, coprime_base, direct_sum, gcd, module_leq, Canonicalized, FGModule,
};
pub use ring::{is_prime_u64, Integers, PrimeField, Rationals, Ring, RingKind};
pub use rng::SplitMix64;
pub use smith::{column_space_basis, det, hermite_reduce_columns, kernel_basis, smith, solve, Smith};
