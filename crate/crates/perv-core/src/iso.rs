//! Isomorphism testing: cheap invariants first, then (over a field) a
//! randomized search through the hom space for an invertible morphism.

use exact_linalg::{Ring, SplitMix64};

use crate::error::PervError;
use crate::hom::hom_space;
use crate::morphism::PervMorphism;
use crate::object::PervObject;

pub const DEFAULT_ISO_TRIALS: usize = 64;

#[derive(Debug, Clone)]
pub enum IsoOutcome<R: Ring> {
    /// An explicit invertible morphism was found.
    Isomorphism(PervMorphism<R>),
    /// An isomorphism cannot exist; `witness` names the invariant that differs.
    DistinguishedByInvariant { witness: String },
    /// Neither an isomorphism nor a distinguishing invariant was found.
    /// Over ℤ this is the strongest negative answer the search gives.
    Unknown { trials: usize, note: String },
}

impl<R: Ring> IsoOutcome<R> {
    pub fn verdict_str(&self) -> &'static str {
        match self {
            IsoOutcome::Isomorphism(_) => "isomorphic",
            IsoOutcome::DistinguishedByInvariant { .. } => "distinguished",
            IsoOutcome::Unknown { .. } => "unknown",
        }
    }
}

/// Compare the module-level invariants of the two objects; on the first
/// mismatch return a human-readable witness.
fn invariant_witness<R: Ring>(p: &PervObject<R>, q: &PervObject<R>) -> Option<String> {
    if p.branches() != q.branches() {
        return Some(format!(
            "branch count: {} vs {}",
            p.branches(),
            q.branches()
        ));
    }
    for i in 0..p.branches() {
        if p.psi(i) != q.psi(i) {
            return Some(format!(
                "nearby-cycles module on branch {}: {} vs {}",
                i + 1,
                p.psi(i).describe(),
                q.psi(i).describe()
            ));
        }
    }
    if p.phi() != q.phi() {
        return Some(format!(
            "vanishing-cycles module: {} vs {}",
            p.phi().describe(),
            q.phi().describe()
        ));
    }
    // Kernel and cokernel of the glued can-map are isomorphism invariants
    // (they are the two stalk cohomology modules at the singular point).
    let sum_p = p.psi_sum();
    let sum_q = q.psi_sum();
    let can_p = p.can_total(&sum_p);
    let can_q = q.can_total(&sum_q);
    let ker_p = can_p.kernel().module;
    let ker_q = can_q.kernel().module;
    if ker_p != ker_q {
        return Some(format!(
            "kernel of the glued can-map: {} vs {}",
            ker_p.describe(),
            ker_q.describe()
        ));
    }
    let cok_p = can_p.cokernel().module;
    let cok_q = can_q.cokernel().module;
    if cok_p != cok_q {
        return Some(format!(
            "cokernel of the glued can-map: {} vs {}",
            cok_p.describe(),
            cok_q.describe()
        ));
    }
    None
}

pub fn find_isomorphism<R: Ring>(
    p: &PervObject<R>,
    q: &PervObject<R>,
    trials: usize,
    seed: u64,
) -> Result<IsoOutcome<R>, PervError> {
    if p.ring() != q.ring() {
        return Err(PervError::Input("isomorphism test across different rings".to_string()));
    }
    if p == q {
        return Ok(IsoOutcome::Isomorphism(PervMorphism::identity(p)));
    }
    if let Some(witness) = invariant_witness(p, q) {
        return Ok(IsoOutcome::DistinguishedByInvariant { witness });
    }

    let hs = hom_space(p, q)?;
    if hs.generators.is_empty() && !p.is_zero_object() {
        // No nonzero maps at all, but the objects are nonzero.
        return Ok(IsoOutcome::DistinguishedByInvariant {
            witness: "no nonzero morphisms exist between the objects".to_string(),
        });
    }

    let ring = p.ring().clone();
    if !ring.is_field() {
        return Ok(IsoOutcome::Unknown {
            trials: 0,
            note: "module invariants agree; randomized search runs over fields only".to_string(),
        });
    }

    // Las Vegas: random coefficient vectors against the hom basis. Each hit
    // is a certificate; misses prove nothing, so the outcome stays `Unknown`.
    for t in 0..trials {
        let mut rng = SplitMix64::new(SplitMix64::derive(seed, t as u64));
        let mut candidate = PervMorphism::zero(p, q)?;
        for g in &hs.generators {
            let c = ring.sample(&mut rng);
            candidate = candidate.add(&g.scale(&c))?;
        }
        if candidate.classify().isomorphism {
            return Ok(IsoOutcome::Isomorphism(candidate));
        }
    }
    Ok(IsoOutcome::Unknown {
        trials,
        note: "invariants agree but no invertible combination was sampled".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{FGModule, Mat, ModuleMap, Rationals};

    fn object_q(can: &[&[i64]], var: &[&[i64]], n_psi: usize, n_phi: usize) -> PervObject<Rationals> {
        let psi = FGModule::free(&Rationals, n_psi);
        let phi = FGModule::free(&Rationals, n_phi);
        PervObject::new(
            vec![psi.clone()],
            phi.clone(),
            vec![ModuleMap::new(psi.clone(), phi.clone(), Mat::from_i64(&Rationals, can)).unwrap()],
            vec![ModuleMap::new(phi, psi, Mat::from_i64(&Rationals, var)).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn basis_change_twin_is_recognized() {
        // P: can = id on Q², var = 0. Q: same object conjugated by
        // g = [[1,1],[0,1]] — can' = g∘can∘g⁻¹ = id again, so instead make
        // the twin differ in the matrices: can' = [[1,1],[0,1]], var' = 0.
        // Both are isomorphic via a = id, b = [[1,1],[0,1]]⁻¹-side tweak.
        let p = object_q(&[&[1, 0], &[0, 1]], &[&[0, 0], &[0, 0]], 2, 2);
        let q = object_q(&[&[1, 1], &[0, 1]], &[&[0, 0], &[0, 0]], 2, 2);
        match find_isomorphism(&p, &q, DEFAULT_ISO_TRIALS, 7).unwrap() {
            IsoOutcome::Isomorphism(t) => {
                assert!(t.classify().isomorphism);
                assert_eq!(t.source(), &p);
                assert_eq!(t.target(), &q);
            }
            other => panic!("expected isomorphism, got {:?}", other.verdict_str()),
        }
    }

    #[test]
    fn stalk_invariants_distinguish() {
        // can = id (invertible) vs can = 0: the glued-can kernels differ.
        let p = object_q(&[&[1]], &[&[0]], 1, 1);
        let q = object_q(&[&[0]], &[&[0]], 1, 1);
        match find_isomorphism(&p, &q, DEFAULT_ISO_TRIALS, 7).unwrap() {
            IsoOutcome::DistinguishedByInvariant { witness } => {
                assert!(witness.contains("kernel"), "unexpected witness: {witness}");
            }
            other => panic!("expected invariant witness, got {:?}", other.verdict_str()),
        }
    }

    #[test]
    fn identity_fast_path() {
        let p = object_q(&[&[1]], &[&[0]], 1, 1);
        assert!(matches!(
            find_isomorphism(&p, &p.clone(), 1, 0).unwrap(),
            IsoOutcome::Isomorphism(_)
        ));
    }
}
