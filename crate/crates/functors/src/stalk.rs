//! Stalk cohomology of objects and the maps induced on it by morphisms.
//!
//! On a curve germ the stalk cohomology of a perverse object lives in
//! degrees −1 and 0 only. At a generic point of branch `i` it is `Ψᵢ` in
//! degree −1 and zero in degree 0; at the origin it is the kernel of the
//! glued map `⊕Ψᵢ → Φ` in degree −1 and its cokernel in degree 0.

use exact_linalg::{factor_through_injection, factor_through_surjection, FGModule, ModuleMap, Ring};
use perv_core::{PervError, PervMorphism, PervObject};

use crate::location::Location;

/// The two stalk cohomology modules at one location. Both degrees are
/// always present; at branch locations the degree-0 module is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct StalkReport<R: Ring> {
    pub location: Location,
    pub minus_one: FGModule<R>,
    pub zero: FGModule<R>,
}

impl<R: Ring> StalkReport<R> {
    pub fn group(&self, degree: i64) -> Option<&FGModule<R>> {
        match degree {
            -1 => Some(&self.minus_one),
            0 => Some(&self.zero),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.minus_one.is_zero_module() && self.zero.is_zero_module()
    }
}

/// The maps a morphism induces on stalk cohomology at one location, one per
/// degree.
#[derive(Debug, Clone, PartialEq)]
pub struct StalkMaps<R: Ring> {
    pub location: Location,
    pub minus_one: ModuleMap<R>,
    pub zero: ModuleMap<R>,
}

impl<R: Ring> StalkMaps<R> {
    pub fn map(&self, degree: i64) -> Option<&ModuleMap<R>> {
        match degree {
            -1 => Some(&self.minus_one),
            0 => Some(&self.zero),
            _ => None,
        }
    }

    pub fn all_zero(&self) -> bool {
        self.minus_one.is_zero_map() && self.zero.is_zero_map()
    }
}

pub fn stalk_cohomology<R: Ring>(
    obj: &PervObject<R>,
    loc: Location,
) -> Result<StalkReport<R>, PervError> {
    loc.check_bounds(obj.branches())?;
    match loc {
        Location::Branch(i) => Ok(StalkReport {
            location: loc,
            minus_one: obj.psi(i).clone(),
            zero: FGModule::zero(obj.ring()),
        }),
        Location::Origin => {
            let sum = obj.psi_sum();
            let can = obj.can_total(&sum);
            Ok(StalkReport {
                location: loc,
                minus_one: can.kernel().module,
                zero: can.cokernel().module,
            })
        }
    }
}

pub fn induced_stalk_maps<R: Ring>(
    t: &PervMorphism<R>,
    loc: Location,
) -> Result<StalkMaps<R>, PervError> {
    loc.check_bounds(t.source().branches())?;
    let alg = |e: exact_linalg::LinalgError| PervError::Algebra(e.to_string());
    match loc {
        Location::Branch(i) => Ok(StalkMaps {
            location: loc,
            minus_one: t.branch_map(i).clone(),
            zero: ModuleMap::zero_map(
                FGModule::zero(t.ring()),
                FGModule::zero(t.ring()),
            ),
        }),
        Location::Origin => {
            let p = t.source();
            let q = t.target();
            let sum_p = p.psi_sum();
            let sum_q = q.psi_sum();
            let a_total = t.branch_map_total(&sum_p, &sum_q);
            let can_p = p.can_total(&sum_p);
            let can_q = q.can_total(&sum_q);

            // Degree −1: a_total restricts to the kernels of the glued can
            // maps (can_Q∘a_total = b∘can_P kills ker(can_P)).
            let ker_p = can_p.kernel();
            let ker_q = can_q.kernel();
            let into_sum = a_total.compose(&ker_p.inclusion).map_err(alg)?;
            let minus_one = factor_through_injection(&into_sum, &ker_q.inclusion).map_err(alg)?;

            // Degree 0: b descends to the cokernels.
            let cok_p = can_p.cokernel();
            let cok_q = can_q.cokernel();
            let down = cok_q
                .projection
                .compose(t.vanishing_map())
                .map_err(alg)?;
            let zero = factor_through_surjection(&down, &cok_p.projection).map_err(alg)?;

            Ok(StalkMaps { location: loc, minus_one, zero })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{Integers, Mat};

    /// The two-branch object with can = (1, −1), var = 0 has origin stalks
    /// {−1: R, 0: 0}: the glued can map [1 −1] has kernel the diagonal.
    #[test]
    fn shifted_constant_sheaf_stalks() {
        let r1 = FGModule::free(&Integers, 1);
        let mk = |v: i64| {
            ModuleMap::new(r1.clone(), r1.clone(), Mat::from_i64(&Integers, &[&[v]])).unwrap()
        };
        let obj = PervObject::new(
            vec![r1.clone(), r1.clone()],
            r1.clone(),
            vec![mk(1), mk(-1)],
            vec![
                ModuleMap::zero_map(r1.clone(), r1.clone()),
                ModuleMap::zero_map(r1.clone(), r1.clone()),
            ],
        )
        .unwrap();
        let origin = stalk_cohomology(&obj, Location::Origin).unwrap();
        assert_eq!(origin.minus_one.describe(), "Z");
        assert_eq!(origin.zero.describe(), "0");
        let branch = stalk_cohomology(&obj, Location::Branch(1)).unwrap();
        assert_eq!(branch.minus_one.describe(), "Z");
        assert!(branch.zero.is_zero_module());
        assert!(stalk_cohomology(&obj, Location::Branch(2)).is_err());
    }

    /// Identity morphisms induce identities on every stalk.
    #[test]
    fn identity_induces_identities() {
        let r1 = FGModule::free(&Integers, 1);
        let mk = |v: i64| {
            ModuleMap::new(r1.clone(), r1.clone(), Mat::from_i64(&Integers, &[&[v]])).unwrap()
        };
        let obj = PervObject::new(
            vec![r1.clone(), r1.clone()],
            r1.clone(),
            vec![mk(1), mk(-1)],
            vec![
                ModuleMap::zero_map(r1.clone(), r1.clone()),
                ModuleMap::zero_map(r1.clone(), r1.clone()),
            ],
        )
        .unwrap();
        let id = PervMorphism::identity(&obj);
        for loc in Location::all(2) {
            let maps = induced_stalk_maps(&id, loc).unwrap();
            let stalks = stalk_cohomology(&obj, loc).unwrap();
            assert_eq!(maps.minus_one, ModuleMap::identity(&stalks.minus_one));
            assert_eq!(maps.zero, ModuleMap::identity(&stalks.zero));
        }
    }
}
