//! Support: the closure of the set of points with nonzero stalk cohomology.

use std::fmt;

use exact_linalg::Ring;
use perv_core::PervObject;

use crate::location::Location;
use crate::stalk::stalk_cohomology;

/// Which strata carry the object. Closedness is built in: a true branch flag
/// forces the origin flag, because the origin lies in every branch closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub origin: bool,
    pub branches: Vec<bool>,
}

impl SupportSet {
    pub fn empty(branches: usize) -> Self {
        SupportSet { origin: false, branches: vec![false; branches] }
    }

    /// Close the set: any flagged branch drags the origin in.
    pub fn closure(mut self) -> Self {
        if self.branches.iter().any(|&b| b) {
            self.origin = true;
        }
        self
    }

    pub fn is_empty(&self) -> bool {
        !self.origin && self.branches.iter().all(|&b| !b)
    }

    /// The irreducible components: every flagged branch closure is a
    /// 1-dimensional component; the origin is a 0-dimensional component only
    /// when nothing else contains it.
    pub fn branch_components(&self) -> Vec<usize> {
        self.branches
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn origin_is_component(&self) -> bool {
        self.origin && self.branches.iter().all(|&b| !b)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let mut parts = Vec::new();
        for i in self.branch_components() {
            parts.push(format!("closure of branch {}", i + 1));
        }
        if self.origin_is_component() {
            parts.push("origin".to_string());
        }
        write!(f, "{}", parts.join(" ∪ "))
    }
}

pub fn support<R: Ring>(obj: &PervObject<R>) -> SupportSet {
    let branches: Vec<bool> = (0..obj.branches())
        .map(|i| !obj.psi(i).is_zero_module())
        .collect();
    let origin_stalks = stalk_cohomology(obj, Location::Origin)
        .expect("origin is always a valid location");
    let origin = branches.iter().any(|&b| b) || !origin_stalks.is_zero();
    SupportSet { origin, branches }
}
