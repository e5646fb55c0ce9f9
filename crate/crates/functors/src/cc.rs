//! Characteristic cycles: nonnegative multiplicities on the conormals to the
//! branches and to the origin. Defined for field coefficients only, where
//! the multiplicities are plain dimensions.

use std::fmt;

use exact_linalg::Ring;
use perv_core::{PervError, PervObject};

use crate::support::SupportSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicCycle {
    /// Multiplicity of the conormal to each branch closure.
    pub branches: Vec<u64>,
    /// Multiplicity of the conormal to the origin.
    pub origin: u64,
}

impl CharacteristicCycle {
    pub fn zero(branches: usize) -> Self {
        CharacteristicCycle { branches: vec![0; branches], origin: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.origin == 0 && self.branches.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PervError> {
        if self.branches.len() != other.branches.len() {
            return Err(PervError::Input(
                "characteristic cycles over different branch counts".to_string(),
            ));
        }
        Ok(CharacteristicCycle {
            branches: self
                .branches
                .iter()
                .zip(&other.branches)
                .map(|(a, b)| a + b)
                .collect(),
            origin: self.origin + other.origin,
        })
    }

    /// The set underlying the cycle: branch closures with positive
    /// multiplicity, plus the origin (projection of its conormal) when any
    /// multiplicity is positive there or on a branch.
    pub fn underlying_set(&self) -> SupportSet {
        let branches: Vec<bool> = self.branches.iter().map(|&m| m > 0).collect();
        SupportSet { origin: self.origin > 0, branches }.closure()
    }
}

impl fmt::Display for CharacteristicCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .branches
            .iter()
            .map(|m| m.to_string())
            .chain(std::iter::once(format!("origin {}", self.origin)))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn characteristic_cycle<R: Ring>(
    obj: &PervObject<R>,
) -> Result<CharacteristicCycle, PervError> {
    if !obj.ring().is_field() {
        return Err(PervError::Unsupported(format!(
            "characteristic cycles need field coefficients, got {}",
            obj.ring().kind()
        )));
    }
    Ok(CharacteristicCycle {
        branches: (0..obj.branches())
            .map(|i| obj.psi(i).free_rank() as u64)
            .collect(),
        origin: obj.phi().free_rank() as u64,
    })
}
