//! Morphisms of the diagram category: branch maps plus a vanishing map that
//! commute with both structure maps.
//!
//! A morphism `T: P → Q` is a tuple `(a₁, …, aᵣ, b)` with `aᵢ: Ψᵢ(P) → Ψᵢ(Q)`
//! and `b: Φ(P) → Φ(Q)` such that `b∘canᵢ = can'ᵢ∘aᵢ` and `aᵢ∘varᵢ = var'ᵢ∘b`
//! for every branch. Morphisms therefore never mix branches — the block
//! structure is part of the category, and everything downstream (kernels,
//! stalks, supports) exploits it.

use exact_linalg::{ModuleMap, Ring};

use crate::error::PervError;
use crate::object::PervObject;

#[derive(Debug, Clone, PartialEq)]
pub struct PervMorphism<R: Ring> {
    source: PervObject<R>,
    target: PervObject<R>,
    a: Vec<ModuleMap<R>>,
    b: ModuleMap<R>,
}

impl<R: Ring> PervMorphism<R> {
    /// Validating constructor: checks component shapes, then both families
    /// of commutation squares.
    pub fn new(
        source: PervObject<R>,
        target: PervObject<R>,
        a: Vec<ModuleMap<R>>,
        b: ModuleMap<R>,
    ) -> Result<Self, PervError> {
        let r = source.branches();
        if target.branches() != r {
            return Err(PervError::Input(format!(
                "source has {r} branches, target has {}",
                target.branches()
            )));
        }
        if a.len() != r {
            return Err(PervError::Input(format!(
                "expected {r} branch maps, got {}",
                a.len()
            )));
        }
        for i in 0..r {
            if a[i].domain() != source.psi(i) || a[i].codomain() != target.psi(i) {
                return Err(PervError::Input(format!(
                    "branch map {} must go from the source branch module {} to the target branch module {}",
                    i + 1,
                    source.psi(i).describe(),
                    target.psi(i).describe()
                )));
            }
        }
        if b.domain() != source.phi() || b.codomain() != target.phi() {
            return Err(PervError::Input(format!(
                "vanishing map must go {} → {}",
                source.phi().describe(),
                target.phi().describe()
            )));
        }
        for i in 0..r {
            let lhs = b.compose(source.can(i)).map_err(|e| PervError::Input(e.to_string()))?;
            let rhs = target.can(i).compose(&a[i]).map_err(|e| PervError::Input(e.to_string()))?;
            if lhs != rhs {
                return Err(PervError::NotMorphism(format!(
                    "square b∘can = can∘a fails on branch {}",
                    i + 1
                )));
            }
            let lhs = a[i].compose(source.var(i)).map_err(|e| PervError::Input(e.to_string()))?;
            let rhs = target.var(i).compose(&b).map_err(|e| PervError::Input(e.to_string()))?;
            if lhs != rhs {
                return Err(PervError::NotMorphism(format!(
                    "square a∘var = var∘b fails on branch {}",
                    i + 1
                )));
            }
        }
        Ok(PervMorphism { source, target, a, b })
    }

    pub fn identity(obj: &PervObject<R>) -> Self {
        let a = (0..obj.branches())
            .map(|i| ModuleMap::identity(obj.psi(i)))
            .collect();
        let b = ModuleMap::identity(obj.phi());
        PervMorphism::new(obj.clone(), obj.clone(), a, b).expect("identity commutes")
    }

    pub fn zero(source: &PervObject<R>, target: &PervObject<R>) -> Result<Self, PervError> {
        let a = (0..source.branches())
            .map(|i| ModuleMap::zero_map(source.psi(i).clone(), target.psi(i).clone()))
            .collect();
        let b = ModuleMap::zero_map(source.phi().clone(), target.phi().clone());
        PervMorphism::new(source.clone(), target.clone(), a, b)
    }

    pub fn source(&self) -> &PervObject<R> {
        &self.source
    }
    pub fn target(&self) -> &PervObject<R> {
        &self.target
    }
    pub fn branch_map(&self, i: usize) -> &ModuleMap<R> {
        &self.a[i]
    }
    pub fn branch_maps(&self) -> &[ModuleMap<R>] {
        &self.a
    }
    pub fn vanishing_map(&self) -> &ModuleMap<R> {
        &self.b
    }
    pub fn ring(&self) -> &R {
        self.source.ring()
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Self) -> Result<Self, PervError> {
        if inner.target != self.source {
            return Err(PervError::Input(
                "composition mismatch: inner target differs from outer source".to_string(),
            ));
        }
        let a = (0..self.a.len())
            .map(|i| self.a[i].compose(&inner.a[i]).map_err(|e| PervError::Input(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let b = self.b.compose(&inner.b).map_err(|e| PervError::Input(e.to_string()))?;
        PervMorphism::new(inner.source.clone(), self.target.clone(), a, b)
    }

    pub fn add(&self, other: &Self) -> Result<Self, PervError> {
        if self.source != other.source || self.target != other.target {
            return Err(PervError::Input(
                "sum of morphisms with different endpoints".to_string(),
            ));
        }
        let a = (0..self.a.len())
            .map(|i| self.a[i].add(&other.a[i]).map_err(|e| PervError::Input(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let b = self.b.add(&other.b).map_err(|e| PervError::Input(e.to_string()))?;
        PervMorphism::new(self.source.clone(), self.target.clone(), a, b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PervError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let a = self.a.iter().map(|f| f.neg()).collect();
        PervMorphism::new(self.source.clone(), self.target.clone(), a, self.b.neg())
            .expect("negation preserves commutation")
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let a = self.a.iter().map(|f| f.scale(c)).collect();
        PervMorphism::new(self.source.clone(), self.target.clone(), a, self.b.scale(c))
            .expect("scaling preserves commutation")
    }

    /// `λ·id` as an endomorphism of an object.
    pub fn scalar(obj: &PervObject<R>, c: &R::Elem) -> Self {
        PervMorphism::identity(obj).scale(c)
    }

    pub fn is_zero_morphism(&self) -> bool {
        self.a.iter().all(|f| f.is_zero_map()) && self.b.is_zero_map()
    }

    /// Injectivity, surjectivity, zero-ness and invertibility, read off the
    /// component maps (a morphism is monic/epi iff every component is).
    pub fn classify(&self) -> MorphismClass {
        let injective =
            self.a.iter().all(|f| f.is_injective()) && self.b.is_injective();
        let surjective =
            self.a.iter().all(|f| f.is_surjective()) && self.b.is_surjective();
        MorphismClass {
            injective,
            surjective,
            zero: self.is_zero_morphism(),
            isomorphism: injective && surjective,
        }
    }

    /// The glued branch map `⊕aᵢ` through given sum decompositions of the
    /// source and target branch sums.
    pub fn branch_map_total(
        &self,
        source_sum: &exact_linalg::DirectSumParts<R>,
        target_sum: &exact_linalg::DirectSumParts<R>,
    ) -> ModuleMap<R> {
        let refs: Vec<&ModuleMap<R>> = self.a.iter().collect();
        exact_linalg::direct_sum_of_maps(source_sum, target_sum, &refs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismClass {
    pub injective: bool,
    pub surjective: bool,
    pub zero: bool,
    pub isomorphism: bool,
}
