//! Seeded generators for objects and morphisms. Everything is a pure
//! function of its seed, so any failing trial can be replayed exactly.

use exact_linalg::{FGModule, Mat, ModuleMap, Ring, SplitMix64};
use perv_core::{hom_space, PervMorphism, PervObject};

fn random_map<R: Ring>(
    ring: &R,
    dom: &FGModule<R>,
    cod: &FGModule<R>,
    rng: &mut SplitMix64,
) -> ModuleMap<R> {
    let m = Mat::from_fn(ring, cod.num_gens(), dom.num_gens(), |_, _| ring.sample(rng));
    ModuleMap::new(dom.clone(), cod.clone(), m).expect("maps between free modules are unconstrained")
}

/// Draw a lawful object: free modules of rank ≤ `max_dim`, a random can
/// family, and a var family resampled until the monodromy axioms hold.
/// After 32 rejections var falls back to zero, which always satisfies them.
pub fn random_object<R: Ring>(
    ring: &R,
    branches: usize,
    max_dim: u64,
    seed: u64,
) -> PervObject<R> {
    let mut rng = SplitMix64::new(seed);
    let psi: Vec<FGModule<R>> = (0..branches)
        .map(|_| FGModule::free(ring, rng.below(max_dim + 1) as usize))
        .collect();
    let phi = FGModule::free(ring, rng.below(max_dim + 1) as usize);
    let can: Vec<ModuleMap<R>> =
        psi.iter().map(|p| random_map(ring, p, &phi, &mut rng)).collect();
    for _ in 0..32 {
        let var: Vec<ModuleMap<R>> =
            psi.iter().map(|p| random_map(ring, &phi, p, &mut rng)).collect();
        if let Ok(obj) = PervObject::new(psi.clone(), phi.clone(), can.clone(), var) {
            return obj;
        }
    }
    let var: Vec<ModuleMap<R>> =
        psi.iter().map(|p| ModuleMap::zero_map(phi.clone(), p.clone())).collect();
    PervObject::new(psi, phi, can, var).expect("vanishing var satisfies both monodromy axioms")
}

/// A random element of Hom(P, Q): sampled coefficients against a basis of
/// the solution space, so commutation holds by construction.
pub fn random_morphism<R: Ring>(
    source: &PervObject<R>,
    target: &PervObject<R>,
    seed: u64,
) -> PervMorphism<R> {
    let ring = source.ring().clone();
    let mut rng = SplitMix64::new(seed);
    let space = hom_space(source, target).expect("hom system is solvable");
    let mut acc = PervMorphism::zero(source, target).expect("endpoints live over one ring");
    for gen in &space.generators {
        acc = acc.add(&gen.scale(&ring.sample(&mut rng))).expect("hom space is closed under sums");
    }
    acc
}

pub fn random_endo<R: Ring>(object: &PervObject<R>, seed: u64) -> PervMorphism<R> {
    random_morphism(object, object, seed)
}
