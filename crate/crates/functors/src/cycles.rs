//! Nearby and vanishing cycles with their monodromy, and the canonical
//! isolating maps of a morphism.

use exact_linalg::{direct_sum_of_maps, FGModule, ModuleMap, Ring};
use perv_core::{PervError, PervMorphism, PervObject};

use crate::location::Location;

/// The nearby-cycles module `⊕Ψᵢ` with its block monodromy, and the
/// vanishing-cycles module `Φ` with its monodromy.
#[derive(Debug, Clone)]
pub struct NearbyVanishing<R: Ring> {
    pub nearby: FGModule<R>,
    pub nearby_monodromy: ModuleMap<R>,
    pub vanishing: FGModule<R>,
    pub vanishing_monodromy: ModuleMap<R>,
}

pub fn nearby_and_vanishing<R: Ring>(obj: &PervObject<R>) -> NearbyVanishing<R> {
    let sum = obj.psi_sum();
    let blocks: Vec<ModuleMap<R>> =
        (0..obj.branches()).map(|i| obj.branch_monodromy(i)).collect();
    let refs: Vec<&ModuleMap<R>> = blocks.iter().collect();
    NearbyVanishing {
        nearby: sum.module.clone(),
        nearby_monodromy: direct_sum_of_maps(&sum, &sum, &refs),
        vanishing: obj.phi().clone(),
        vanishing_monodromy: obj.vanishing_monodromy(),
    }
}

/// A morphism's effect on nearby and vanishing cycles: the glued branch map
/// and the `Φ`-component. Both commute with the monodromies.
#[derive(Debug, Clone)]
pub struct NearbyVanishingMaps<R: Ring> {
    pub nearby: ModuleMap<R>,
    pub vanishing: ModuleMap<R>,
}

pub fn nearby_and_vanishing_maps<R: Ring>(t: &PervMorphism<R>) -> NearbyVanishingMaps<R> {
    let sum_p = t.source().psi_sum();
    let sum_q = t.target().psi_sum();
    NearbyVanishingMaps {
        nearby: t.branch_map_total(&sum_p, &sum_q),
        vanishing: t.vanishing_map().clone(),
    }
}

/// The map a morphism induces on the vanishing cycles of the canonical
/// isolating function at a location: the defining linear form at the origin
/// (giving the `Φ`-component `b`), a Morse function at a branch point
/// (giving `aᵢ`, identified with the generic degree-(−1) stalk map).
pub fn isolating_map<R: Ring>(
    t: &PervMorphism<R>,
    loc: Location,
) -> Result<ModuleMap<R>, PervError> {
    loc.check_bounds(t.source().branches())?;
    match loc {
        Location::Origin => Ok(t.vanishing_map().clone()),
        Location::Branch(i) => Ok(t.branch_map(i).clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{Integers, Mat};

    #[test]
    fn monodromy_glues_blockwise() {
        let r1 = FGModule::free(&Integers, 1);
        let mk = |v: i64| {
            ModuleMap::new(r1.clone(), r1.clone(), Mat::from_i64(&Integers, &[&[v]])).unwrap()
        };
        // can = (1, 1), var = (1, -3): μ₁ = 2 — not invertible over ℤ; use
        // var = (0, -2) instead: μ₁ = 1, μ₂ = -1, μ_Φ = 1 - 2 = -1.
        let obj = PervObject::new(
            vec![r1.clone(), r1.clone()],
            r1.clone(),
            vec![mk(1), mk(1)],
            vec![mk(0), mk(-2)],
        )
        .unwrap();
        let nv = nearby_and_vanishing(&obj);
        assert_eq!(nv.nearby.free_rank(), 2);
        let m = nv.nearby_monodromy.matrix();
        assert_eq!(
            (m.at(0, 0), m.at(1, 1)),
            (&num::BigInt::from(1), &num::BigInt::from(-1))
        );
        assert!(m.at(0, 1) == &num::BigInt::from(0) && m.at(1, 0) == &num::BigInt::from(0));
        assert_eq!(
            nv.vanishing_monodromy.matrix().at(0, 0),
            &num::BigInt::from(-1)
        );
        // Monodromy is always an automorphism.
        assert!(nv.nearby_monodromy.is_isomorphism());
        assert!(nv.vanishing_monodromy.is_isomorphism());
    }

    #[test]
    fn isolating_maps_pick_components() {
        let r1 = FGModule::free(&Integers, 1);
        let mk = |v: i64| {
            ModuleMap::new(r1.clone(), r1.clone(), Mat::from_i64(&Integers, &[&[v]])).unwrap()
        };
        let obj = PervObject::new(
            vec![r1.clone()],
            r1.clone(),
            vec![mk(1)],
            vec![mk(0)],
        )
        .unwrap();
        let t = PervMorphism::scalar(&obj, &num::BigInt::from(3));
        assert_eq!(&isolating_map(&t, Location::Origin).unwrap(), t.vanishing_map());
        assert_eq!(&isolating_map(&t, Location::Branch(0)).unwrap(), t.branch_map(0));
        assert!(isolating_map(&t, Location::Branch(1)).is_err());
    }
}
