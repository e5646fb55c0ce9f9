//! Direct sums of diagram objects, with the inclusion and projection
//! morphisms that exhibit them as biproducts.

use exact_linalg::{direct_sum_of_maps, direct_sum_parts, DirectSumParts, Ring};

use crate::error::PervError;
use crate::morphism::PervMorphism;
use crate::object::PervObject;

#[derive(Debug, Clone)]
pub struct PervDirectSum<R: Ring> {
    pub object: PervObject<R>,
    pub inclusions: Vec<PervMorphism<R>>,
    pub projections: Vec<PervMorphism<R>>,
}

pub fn perv_direct_sum<R: Ring>(parts: &[&PervObject<R>]) -> Result<PervDirectSum<R>, PervError> {
    if parts.is_empty() {
        return Err(PervError::Input("direct sum needs at least one summand".to_string()));
    }
    let r = parts[0].branches();
    for p in parts {
        if p.branches() != r {
            return Err(PervError::Input(format!(
                "direct sum of objects with {r} and {} branches",
                p.branches()
            )));
        }
        if p.ring() != parts[0].ring() {
            return Err(PervError::Input("direct sum of objects over different rings".to_string()));
        }
    }

    let psi_sums: Vec<DirectSumParts<R>> = (0..r)
        .map(|i| direct_sum_parts(&parts.iter().map(|p| p.psi(i)).collect::<Vec<_>>()))
        .collect();
    let phi_sum = direct_sum_parts(&parts.iter().map(|p| p.phi()).collect::<Vec<_>>());

    let can = (0..r)
        .map(|i| {
            let blocks: Vec<_> = parts.iter().map(|p| p.can(i)).collect();
            direct_sum_of_maps(&psi_sums[i], &phi_sum, &blocks)
        })
        .collect();
    let var = (0..r)
        .map(|i| {
            let blocks: Vec<_> = parts.iter().map(|p| p.var(i)).collect();
            direct_sum_of_maps(&phi_sum, &psi_sums[i], &blocks)
        })
        .collect();
    let object = PervObject::new(
        psi_sums.iter().map(|s| s.module.clone()).collect(),
        phi_sum.module.clone(),
        can,
        var,
    )?;

    let mut inclusions = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for (k, part) in parts.iter().enumerate() {
        inclusions.push(PervMorphism::new(
            (*part).clone(),
            object.clone(),
            (0..r).map(|i| psi_sums[i].inclusions[k].clone()).collect(),
            phi_sum.inclusions[k].clone(),
        )?);
        projections.push(PervMorphism::new(
            object.clone(),
            (*part).clone(),
            (0..r).map(|i| psi_sums[i].projections[k].clone()).collect(),
            phi_sum.projections[k].clone(),
        )?);
    }

    Ok(PervDirectSum { object, inclusions, projections })
}

/// Block-diagonal glue `⊕fₖ` of morphisms along compatible sum decompositions.
pub fn direct_sum_of_morphisms<R: Ring>(
    source_sum: &PervDirectSum<R>,
    target_sum: &PervDirectSum<R>,
    maps: &[&PervMorphism<R>],
) -> Result<PervMorphism<R>, PervError> {
    if maps.len() != source_sum.inclusions.len() || maps.len() != target_sum.inclusions.len() {
        return Err(PervError::Input("block count mismatch in morphism direct sum".to_string()));
    }
    let mut total = PervMorphism::zero(&source_sum.object, &target_sum.object)?;
    for (k, f) in maps.iter().enumerate() {
        let block = target_sum.inclusions[k]
            .compose(f)?
            .compose(&source_sum.projections[k])?;
        total = total.add(&block)?;
    }
    Ok(total)
}
