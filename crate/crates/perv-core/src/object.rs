//! Objects of the diagram category: one module per branch, one vanishing
//! module, and the `can`/`var` maps between them.
//!
//! An object on `r` branches is a tuple `(Ψ₁, …, Ψᵣ; Φ)` of finitely
//! generated modules together with maps `canᵢ: Ψᵢ → Φ` and `varᵢ: Φ → Ψᵢ`,
//! subject to two axioms: on every branch `id + varᵢ∘canᵢ` is an
//! automorphism of `Ψᵢ`, and `id + Σᵢ canᵢ∘varᵢ` is an automorphism of `Φ`.
//! Those automorphisms are the local monodromies; the convention `id + …`
//! (rather than any sign variant) is fixed here once and used everywhere.
//!
//! Construction validates everything, so a value of this type is always a
//! lawful object.

use exact_linalg::{direct_sum_parts, DirectSumParts, FGModule, ModuleMap, Ring};

use crate::error::{Axiom, PervError};

#[derive(Debug, Clone, PartialEq)]
pub struct PervObject<R: Ring> {
    psi: Vec<FGModule<R>>,
    phi: FGModule<R>,
    can: Vec<ModuleMap<R>>,
    var: Vec<ModuleMap<R>>,
}

impl<R: Ring> PervObject<R> {
    /// Validating constructor: checks shapes, then both monodromy axioms.
    pub fn new(
        psi: Vec<FGModule<R>>,
        phi: FGModule<R>,
        can: Vec<ModuleMap<R>>,
        var: Vec<ModuleMap<R>>,
    ) -> Result<Self, PervError> {
        let r = psi.len();
        if r == 0 {
            return Err(PervError::Input(
                "an object needs at least one branch".to_string(),
            ));
        }
        if can.len() != r || var.len() != r {
            return Err(PervError::Input(format!(
                "expected {r} can and var maps to match {r} branches, got {} and {}",
                can.len(),
                var.len()
            )));
        }
        for (i, m) in psi.iter().enumerate() {
            if m.ring() != phi.ring() {
                return Err(PervError::Input(format!(
                    "branch {} module uses ring {}, vanishing module uses {}",
                    i + 1,
                    m.ring().kind(),
                    phi.ring().kind()
                )));
            }
        }
        for i in 0..r {
            if can[i].domain() != &psi[i] || can[i].codomain() != &phi {
                return Err(PervError::Input(format!(
                    "can map {} must go from the branch {} module to the vanishing module",
                    i + 1,
                    i + 1
                )));
            }
            if var[i].domain() != &phi || var[i].codomain() != &psi[i] {
                return Err(PervError::Input(format!(
                    "var map {} must go from the vanishing module to the branch {} module",
                    i + 1,
                    i + 1
                )));
            }
        }
        let obj = PervObject { psi, phi, can, var };
        obj.validate()?;
        Ok(obj)
    }

    /// Re-checks both axioms (constructed objects always pass; this exists
    /// for callers that want a named validation step).
    pub fn validate(&self) -> Result<(), PervError> {
        for i in 0..self.branches() {
            let mu = self.branch_monodromy(i);
            if !mu.is_isomorphism() {
                return Err(PervError::Axiom {
                    axiom: Axiom::BranchMonodromy { branch: i + 1 },
                    detail: format!(
                        "id + var∘can on branch {} has kernel {} and cokernel {}",
                        i + 1,
                        mu.kernel().module.describe(),
                        mu.cokernel().module.describe()
                    ),
                });
            }
        }
        let mu = self.vanishing_monodromy();
        if !mu.is_isomorphism() {
            return Err(PervError::Axiom {
                axiom: Axiom::VanishingMonodromy,
                detail: format!(
                    "id + Σ can∘var has kernel {} and cokernel {}",
                    mu.kernel().module.describe(),
                    mu.cokernel().module.describe()
                ),
            });
        }
        Ok(())
    }

    pub fn branches(&self) -> usize {
        self.psi.len()
    }
    pub fn ring(&self) -> &R {
        self.phi.ring()
    }
    pub fn psi(&self, i: usize) -> &FGModule<R> {
        &self.psi[i]
    }
    pub fn psi_all(&self) -> &[FGModule<R>] {
        &self.psi
    }
    pub fn phi(&self) -> &FGModule<R> {
        &self.phi
    }
    pub fn can(&self, i: usize) -> &ModuleMap<R> {
        &self.can[i]
    }
    pub fn var(&self, i: usize) -> &ModuleMap<R> {
        &self.var[i]
    }
    pub fn can_all(&self) -> &[ModuleMap<R>] {
        &self.can
    }
    pub fn var_all(&self) -> &[ModuleMap<R>] {
        &self.var
    }

    pub fn is_zero_object(&self) -> bool {
        self.phi.is_zero_module() && self.psi.iter().all(|m| m.is_zero_module())
    }

    /// The monodromy `id + varᵢ∘canᵢ` on branch `i` (0-based).
    pub fn branch_monodromy(&self, i: usize) -> ModuleMap<R> {
        let vc = self.var[i]
            .compose(&self.can[i])
            .expect("var∘can shapes validated at construction");
        ModuleMap::identity(&self.psi[i])
            .add(&vc)
            .expect("same endomorphism space")
    }

    /// The monodromy `id + Σ canᵢ∘varᵢ` on the vanishing module.
    pub fn vanishing_monodromy(&self) -> ModuleMap<R> {
        let mut acc = ModuleMap::identity(&self.phi);
        for i in 0..self.branches() {
            let cv = self.can[i]
                .compose(&self.var[i])
                .expect("can∘var shapes validated at construction");
            acc = acc.add(&cv).expect("same endomorphism space");
        }
        acc
    }

    /// The direct sum `⊕ᵢ Ψᵢ` with its inclusions and projections. The
    /// decomposition is deterministic, so callers on both sides of an
    /// interface agree on coordinates.
    pub fn psi_sum(&self) -> DirectSumParts<R> {
        let refs: Vec<&FGModule<R>> = self.psi.iter().collect();
        direct_sum_parts(&refs)
    }

    /// The glued map `⊕ᵢ Ψᵢ → Φ` acting as `canᵢ` on each summand.
    pub fn can_total(&self, sum: &DirectSumParts<R>) -> ModuleMap<R> {
        let mut acc = ModuleMap::zero_map(sum.module.clone(), self.phi.clone());
        for i in 0..self.branches() {
            let piece = self.can[i]
                .compose(&sum.projections[i])
                .expect("projections match branch modules");
            acc = acc.add(&piece).expect("shared (co)domain");
        }
        acc
    }

    /// The glued map `Φ → ⊕ᵢ Ψᵢ` collecting all `varᵢ`.
    pub fn var_total(&self, sum: &DirectSumParts<R>) -> ModuleMap<R> {
        let mut acc = ModuleMap::zero_map(self.phi.clone(), sum.module.clone());
        for i in 0..self.branches() {
            let piece = sum.inclusions[i]
                .compose(&self.var[i])
                .expect("inclusions match branch modules");
            acc = acc.add(&piece).expect("shared (co)domain");
        }
        acc
    }

    /// The zero object on `r` branches.
    pub fn zero(ring: &R, branches: usize) -> Self {
        let z = FGModule::zero(ring);
        let psi = vec![z.clone(); branches];
        let can = vec![ModuleMap::zero_map(z.clone(), z.clone()); branches];
        let var = vec![ModuleMap::zero_map(z.clone(), z.clone()); branches];
        PervObject::new(psi, z, can, var).expect("zero object is lawful")
    }

    /// Compact structural description, e.g. `(Z, Z; Z)` with map data elided.
    pub fn describe(&self) -> String {
        let comps: Vec<String> = self.psi.iter().map(|m| m.describe()).collect();
        format!("({}; {})", comps.join(", "), self.phi.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{Integers, Mat, Rationals};

    fn zmap(dom: &FGModule<Integers>, cod: &FGModule<Integers>, rows: &[&[i64]]) -> ModuleMap<Integers> {
        ModuleMap::new(dom.clone(), cod.clone(), Mat::from_i64(&Integers, rows)).unwrap()
    }

    /// The two-branch object (R, R; R) with can = (1, -1), var = 0 is lawful:
    /// every monodromy is the identity.
    #[test]
    fn trivial_monodromy_object_is_lawful() {
        let z = Integers;
        let r1 = FGModule::free(&z, 1);
        let psi = vec![r1.clone(), r1.clone()];
        let phi = r1.clone();
        let can = vec![zmap(&r1, &r1, &[&[1]]), zmap(&r1, &r1, &[&[-1]])];
        let var = vec![
            ModuleMap::zero_map(r1.clone(), r1.clone()),
            ModuleMap::zero_map(r1.clone(), r1.clone()),
        ];
        let obj = PervObject::new(psi, phi, can, var).unwrap();
        assert_eq!(obj.branches(), 2);
        assert_eq!(obj.branch_monodromy(0), ModuleMap::identity(&FGModule::free(&z, 1)));
        assert!(!obj.is_zero_object());
    }

    /// can = id, var = -id makes id + var∘can = 0: the branch axiom fails.
    #[test]
    fn branch_axiom_violation_is_reported_with_its_branch() {
        let z = Integers;
        let r1 = FGModule::free(&z, 1);
        let err = PervObject::new(
            vec![r1.clone()],
            r1.clone(),
            vec![zmap(&r1, &r1, &[&[1]])],
            vec![zmap(&r1, &r1, &[&[-1]])],
        )
        .unwrap_err();
        match err {
            PervError::Axiom { axiom: Axiom::BranchMonodromy { branch }, .. } => {
                assert_eq!(branch, 1)
            }
            other => panic!("expected branch axiom violation, got {other:?}"),
        }
    }

    /// Over Q one can violate the vanishing axiom while every branch axiom
    /// holds: can₁v₁ = 1 and can₂v₂ = -2 give id + Σ = 0 on Φ.
    #[test]
    fn vanishing_axiom_can_fail_alone() {
        let q = Rationals;
        let r1 = FGModule::free(&q, 1);
        let qmap = |n: i64| {
            ModuleMap::new(r1.clone(), r1.clone(), Mat::from_i64(&q, &[&[n]])).unwrap()
        };
        let err = PervObject::new(
            vec![r1.clone(), r1.clone()],
            r1.clone(),
            vec![qmap(1), qmap(1)],
            vec![qmap(1), qmap(-2)],
        )
        .unwrap_err();
        match err {
            PervError::Axiom { axiom: Axiom::VanishingMonodromy, .. } => {}
            other => panic!("expected vanishing axiom violation, got {other:?}"),
        }
        // ...while the same maps with var₂ = -3 satisfy everything:
        // μ₁ = 2, μ₂ = -2, μ_Φ = 1 + 1 - 3 = -1.
        let obj = PervObject::new(
            vec![r1.clone(), r1.clone()],
            r1.clone(),
            vec![qmap(1), qmap(1)],
            vec![qmap(1), qmap(-3)],
        );
        assert!(obj.is_ok());
    }

    /// Monodromy invertibility over ℤ is stricter than over ℚ: var∘can = 1
    /// gives μ = 2, a unit rationally but not integrally.
    #[test]
    fn integrality_matters_for_the_axioms() {
        let z = Integers;
        let r1 = FGModule::free(&z, 1);
        let err = PervObject::new(
            vec![r1.clone()],
            r1.clone(),
            vec![zmap(&r1, &r1, &[&[1]])],
            vec![zmap(&r1, &r1, &[&[1]])],
        );
        assert!(err.is_err());

        let q = Rationals;
        let q1 = FGModule::free(&q, 1);
        let qmap = |n: i64| ModuleMap::new(q1.clone(), q1.clone(), Mat::from_i64(&q, &[&[n]])).unwrap();
        assert!(PervObject::new(vec![q1.clone()], q1.clone(), vec![qmap(1)], vec![qmap(1)]).is_ok());
    }

    #[test]
    fn glued_structure_maps_restrict_to_components() {
        let z = Integers;
        let r1 = FGModule::free(&z, 1);
        let psi = vec![r1.clone(), r1.clone()];
        let can = vec![zmap(&r1, &r1, &[&[1]]), zmap(&r1, &r1, &[&[-1]])];
        let var = vec![
            ModuleMap::zero_map(r1.clone(), r1.clone()),
            ModuleMap::zero_map(r1.clone(), r1.clone()),
        ];
        let obj = PervObject::new(psi, r1.clone(), can, var).unwrap();
        let sum = obj.psi_sum();
        let total = obj.can_total(&sum);
        for i in 0..2 {
            let restricted = total.compose(&sum.inclusions[i]).unwrap();
            assert_eq!(&restricted, obj.can(i));
        }
    }
}
