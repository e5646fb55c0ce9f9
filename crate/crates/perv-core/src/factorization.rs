//! Kernel, image and cokernel of a morphism, computed branch by branch.
//!
//! The category is abelian with componentwise (co)kernels: the structure maps
//! of the kernel object are restrictions (`can∘incl` lands in `ker b` because
//! the commutation squares hold), those of the image are corestrictions, and
//! those of the cokernel descend along the projections. The monodromy axioms
//! are inherited: `id + var∘can` on the kernel is the restriction of the
//! (invertible) branch monodromy of the ambient object, which preserves the
//! kernel on both sides; likewise for images and cokernels.

use exact_linalg::{
    factor_through_injection, factor_through_surjection, map_factorization, MapFactorization, Ring,
};

use crate::error::PervError;
use crate::morphism::PervMorphism;
use crate::object::PervObject;

/// The full kernel → image → cokernel picture of a morphism `T: P → Q`:
/// three objects plus the four canonical morphisms connecting them to `P`
/// and `Q`. `from_image ∘ to_image == T` always holds.
#[derive(Debug, Clone)]
pub struct PervFactorization<R: Ring> {
    pub kernel: PervObject<R>,
    pub image: PervObject<R>,
    pub cokernel: PervObject<R>,
    pub kernel_inclusion: PervMorphism<R>,
    pub to_image: PervMorphism<R>,
    pub from_image: PervMorphism<R>,
    pub cokernel_projection: PervMorphism<R>,
}

pub fn perv_factorization<R: Ring>(t: &PervMorphism<R>) -> Result<PervFactorization<R>, PervError> {
    let p = t.source();
    let q = t.target();
    let r = p.branches();

    let branch_facts: Vec<MapFactorization<R>> =
        (0..r).map(|i| map_factorization(t.branch_map(i))).collect();
    let phi_fact = map_factorization(t.vanishing_map());

    let alg = |e: exact_linalg::LinalgError| PervError::Algebra(e.to_string());

    // Kernel object: restrict can and var to the componentwise kernels.
    let mut can_k = Vec::with_capacity(r);
    let mut var_k = Vec::with_capacity(r);
    for (i, bf) in branch_facts.iter().enumerate() {
        let into_phi = p.can(i).compose(&bf.kernel.inclusion).map_err(alg)?;
        can_k.push(factor_through_injection(&into_phi, &phi_fact.kernel.inclusion).map_err(alg)?);
        let into_psi = p.var(i).compose(&phi_fact.kernel.inclusion).map_err(alg)?;
        var_k.push(factor_through_injection(&into_psi, &bf.kernel.inclusion).map_err(alg)?);
    }
    let kernel = PervObject::new(
        branch_facts.iter().map(|bf| bf.kernel.module.clone()).collect(),
        phi_fact.kernel.module.clone(),
        can_k,
        var_k,
    )?;
    let kernel_inclusion = PervMorphism::new(
        kernel.clone(),
        p.clone(),
        branch_facts.iter().map(|bf| bf.kernel.inclusion.clone()).collect(),
        phi_fact.kernel.inclusion.clone(),
    )?;

    // Image object: corestrict the target's structure maps to the images.
    let mut can_i = Vec::with_capacity(r);
    let mut var_i = Vec::with_capacity(r);
    for (i, bf) in branch_facts.iter().enumerate() {
        let into_phi = q.can(i).compose(&bf.image.mono).map_err(alg)?;
        can_i.push(factor_through_injection(&into_phi, &phi_fact.image.mono).map_err(alg)?);
        let into_psi = q.var(i).compose(&phi_fact.image.mono).map_err(alg)?;
        var_i.push(factor_through_injection(&into_psi, &bf.image.mono).map_err(alg)?);
    }
    let image = PervObject::new(
        branch_facts.iter().map(|bf| bf.image.module.clone()).collect(),
        phi_fact.image.module.clone(),
        can_i,
        var_i,
    )?;
    let to_image = PervMorphism::new(
        p.clone(),
        image.clone(),
        branch_facts.iter().map(|bf| bf.image.epi.clone()).collect(),
        phi_fact.image.epi.clone(),
    )?;
    let from_image = PervMorphism::new(
        image.clone(),
        q.clone(),
        branch_facts.iter().map(|bf| bf.image.mono.clone()).collect(),
        phi_fact.image.mono.clone(),
    )?;
    debug_assert_eq!(&from_image.compose(&to_image)?, t);

    // Cokernel object: descend the target's structure maps.
    let mut can_c = Vec::with_capacity(r);
    let mut var_c = Vec::with_capacity(r);
    for (i, bf) in branch_facts.iter().enumerate() {
        let down = phi_fact.cokernel.projection.compose(q.can(i)).map_err(alg)?;
        can_c.push(factor_through_surjection(&down, &bf.cokernel.projection).map_err(alg)?);
        let down = bf.cokernel.projection.compose(q.var(i)).map_err(alg)?;
        var_c.push(factor_through_surjection(&down, &phi_fact.cokernel.projection).map_err(alg)?);
    }
    let cokernel = PervObject::new(
        branch_facts.iter().map(|bf| bf.cokernel.module.clone()).collect(),
        phi_fact.cokernel.module.clone(),
        can_c,
        var_c,
    )?;
    let cokernel_projection = PervMorphism::new(
        q.clone(),
        cokernel.clone(),
        branch_facts.iter().map(|bf| bf.cokernel.projection.clone()).collect(),
        phi_fact.cokernel.projection.clone(),
    )?;

    debug_assert!(t.compose(&kernel_inclusion)?.is_zero_morphism());
    debug_assert!(cokernel_projection.compose(t)?.is_zero_morphism());

    Ok(PervFactorization {
        kernel,
        image,
        cokernel,
        kernel_inclusion,
        to_image,
        from_image,
        cokernel_projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{FGModule, Integers, Mat, ModuleMap, Rationals};

    fn free_object_q() -> PervObject<Rationals> {
        // One branch, Ψ = Φ = Q², can = id, var = 0.
        let m = FGModule::free(&Rationals, 2);
        PervObject::new(
            vec![m.clone()],
            m.clone(),
            vec![ModuleMap::identity(&m)],
            vec![ModuleMap::zero_map(m.clone(), m.clone())],
        )
        .unwrap()
    }

    #[test]
    fn rank_one_endomorphism_splits_into_lines() {
        let p = free_object_q();
        let m = FGModule::free(&Rationals, 2);
        // a = b = [[1,1],[1,1]] commutes with can = id, var = 0.
        let mat = Mat::from_i64(&Rationals, &[&[1, 1], &[1, 1]]);
        let f = ModuleMap::new(m.clone(), m.clone(), mat).unwrap();
        let t = PervMorphism::new(p.clone(), p.clone(), vec![f.clone()], f).unwrap();
        let fac = perv_factorization(&t).unwrap();
        assert_eq!(fac.kernel.psi(0).free_rank(), 1);
        assert_eq!(fac.image.phi().free_rank(), 1);
        assert_eq!(fac.cokernel.psi(0).free_rank(), 1);
        assert_eq!(
            fac.from_image.compose(&fac.to_image).unwrap(),
            t
        );
        // Exactness at the target: image of T equals kernel of the projection.
        assert!(fac.cokernel_projection.compose(&t).unwrap().is_zero_morphism());
    }

    #[test]
    fn integral_multiplication_has_torsion_cokernel() {
        // One branch over Z with trivial monodromy; T = 2·id.
        let m = FGModule::free(&Integers, 1);
        let p = PervObject::new(
            vec![m.clone()],
            m.clone(),
            vec![ModuleMap::identity(&m)],
            vec![ModuleMap::zero_map(m.clone(), m.clone())],
        )
        .unwrap();
        let t = PervMorphism::scalar(&p, &num::BigInt::from(2));
        let fac = perv_factorization(&t).unwrap();
        assert!(fac.kernel.is_zero_object());
        assert_eq!(fac.image.psi(0).describe(), "Z");
        assert_eq!(fac.cokernel.psi(0).describe(), "Z/2");
        assert_eq!(fac.cokernel.phi().describe(), "Z/2");
    }
}
