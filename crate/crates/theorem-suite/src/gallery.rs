//! The worked examples on the node germ (union of two transverse branches),
//! usable over any coefficient ring. Every entry's advertised values are
//! re-derived from scratch each time it is loaded; nothing is trusted from
//! cached constants.

use exact_linalg::{FGModule, Mat, ModuleMap, Ring};
use functors::{induced_stalk_maps, stalk_cohomology, support, Location};
use perv_core::{
    find_isomorphism, perv_direct_sum, perv_factorization, IsoOutcome, PervError, PervMorphism,
    PervObject,
};

pub const GALLERY_NAMES: [&str; 8] = [
    "rx_shift",
    "ic_x",
    "m_shift",
    "t_resolution",
    "s_inclusion",
    "endo_example",
    "jshriek_branch",
    "jstar_branch",
];

/// Names of the entries that are objects (the rest are morphisms).
pub const GALLERY_OBJECT_NAMES: [&str; 5] =
    ["rx_shift", "ic_x", "m_shift", "jshriek_branch", "jstar_branch"];

#[derive(Debug, Clone)]
pub enum GalleryValue<R: Ring> {
    Object(PervObject<R>),
    Morphism(PervMorphism<R>),
}

#[derive(Debug, Clone)]
pub struct GalleryEntry<R: Ring> {
    pub name: String,
    pub value: GalleryValue<R>,
}

impl<R: Ring> GalleryEntry<R> {
    pub fn as_object(&self) -> Option<&PervObject<R>> {
        match &self.value {
            GalleryValue::Object(o) => Some(o),
            GalleryValue::Morphism(_) => None,
        }
    }
    pub fn as_morphism(&self) -> Option<&PervMorphism<R>> {
        match &self.value {
            GalleryValue::Morphism(t) => Some(t),
            GalleryValue::Object(_) => None,
        }
    }
}

fn mk_map<R: Ring>(
    ring: &R,
    dom: &FGModule<R>,
    cod: &FGModule<R>,
    rows: &[&[i64]],
) -> ModuleMap<R> {
    ModuleMap::new(dom.clone(), cod.clone(), Mat::from_i64(ring, rows))
        .expect("gallery matrices are well defined")
}

/// The shifted constant object on the node: (R, R; R), can = (1, −1), var = 0.
pub fn rx_shift<R: Ring>(ring: &R) -> PervObject<R> {
    let r1 = FGModule::free(ring, 1);
    PervObject::new(
        vec![r1.clone(), r1.clone()],
        r1.clone(),
        vec![mk_map(ring, &r1, &r1, &[&[1]]), mk_map(ring, &r1, &r1, &[&[-1]])],
        vec![
            ModuleMap::zero_map(r1.clone(), r1.clone()),
            ModuleMap::zero_map(r1.clone(), r1.clone()),
        ],
    )
    .expect("shifted constant object is lawful")
}

/// The intersection-cohomology object: (R, R; 0), all structure maps zero.
pub fn ic_x<R: Ring>(ring: &R) -> PervObject<R> {
    let r1 = FGModule::free(ring, 1);
    let z = FGModule::zero(ring);
    PervObject::new(
        vec![r1.clone(), r1.clone()],
        z.clone(),
        vec![
            ModuleMap::zero_map(r1.clone(), z.clone()),
            ModuleMap::zero_map(r1.clone(), z.clone()),
        ],
        vec![
            ModuleMap::zero_map(z.clone(), r1.clone()),
            ModuleMap::zero_map(z.clone(), r1.clone()),
        ],
    )
    .expect("intersection-cohomology object is lawful")
}

/// The skyscraper-style object at the origin: (0, 0; R).
pub fn m_shift<R: Ring>(ring: &R) -> PervObject<R> {
    let r1 = FGModule::free(ring, 1);
    let z = FGModule::zero(ring);
    PervObject::new(
        vec![z.clone(), z.clone()],
        r1.clone(),
        vec![
            ModuleMap::zero_map(z.clone(), r1.clone()),
            ModuleMap::zero_map(z.clone(), r1.clone()),
        ],
        vec![
            ModuleMap::zero_map(r1.clone(), z.clone()),
            ModuleMap::zero_map(r1.clone(), z.clone()),
        ],
    )
    .expect("origin skyscraper object is lawful")
}

/// Extension by zero from one branch: (R, 0; R), can an isomorphism, var = 0.
pub fn jshriek_branch<R: Ring>(ring: &R) -> PervObject<R> {
    let r1 = FGModule::free(ring, 1);
    let z = FGModule::zero(ring);
    PervObject::new(
        vec![r1.clone(), z.clone()],
        r1.clone(),
        vec![mk_map(ring, &r1, &r1, &[&[1]]), ModuleMap::zero_map(z.clone(), r1.clone())],
        vec![
            ModuleMap::zero_map(r1.clone(), r1.clone()),
            ModuleMap::zero_map(r1.clone(), z.clone()),
        ],
    )
    .expect("extension by zero is lawful")
}

/// Full direct image from one branch: (R, 0; R), can = 0, var an isomorphism.
pub fn jstar_branch<R: Ring>(ring: &R) -> PervObject<R> {
    let r1 = FGModule::free(ring, 1);
    let z = FGModule::zero(ring);
    PervObject::new(
        vec![r1.clone(), z.clone()],
        r1.clone(),
        vec![
            ModuleMap::zero_map(r1.clone(), r1.clone()),
            ModuleMap::zero_map(z.clone(), r1.clone()),
        ],
        vec![mk_map(ring, &r1, &r1, &[&[1]]), ModuleMap::zero_map(r1.clone(), z.clone())],
    )
    .expect("direct image object is lawful")
}

/// The resolution comparison morphism rx_shift → ic_x: identity on both
/// branches, zero on the vanishing module.
pub fn t_resolution<R: Ring>(ring: &R) -> PervMorphism<R> {
    let r1 = FGModule::free(ring, 1);
    let z = FGModule::zero(ring);
    PervMorphism::new(
        rx_shift(ring),
        ic_x(ring),
        vec![ModuleMap::identity(&r1), ModuleMap::identity(&r1)],
        ModuleMap::zero_map(r1, z),
    )
    .expect("resolution morphism commutes")
}

/// The kernel inclusion m_shift → rx_shift: zero on branches, identity on Φ.
pub fn s_inclusion<R: Ring>(ring: &R) -> PervMorphism<R> {
    let r1 = FGModule::free(ring, 1);
    let z = FGModule::zero(ring);
    PervMorphism::new(
        m_shift(ring),
        rx_shift(ring),
        vec![
            ModuleMap::zero_map(z.clone(), r1.clone()),
            ModuleMap::zero_map(z.clone(), r1.clone()),
        ],
        ModuleMap::identity(&r1),
    )
    .expect("kernel inclusion commutes")
}

/// The square-zero endomorphism (a, b) ↦ (0, S(a)) of m_shift ⊕ rx_shift.
pub fn endo_example<R: Ring>(ring: &R) -> PervMorphism<R> {
    let m = m_shift(ring);
    let rx = rx_shift(ring);
    let sum = perv_direct_sum(&[&m, &rx]).expect("gallery sum");
    let s = s_inclusion(ring);
    sum.inclusions[1]
        .compose(&s)
        .and_then(|t| t.compose(&sum.projections[0]))
        .expect("endomorphism composes")
}

fn internal(msg: String) -> PervError {
    PervError::Algebra(format!("gallery self-check failed: {msg}"))
}

fn expect_ranks<R: Ring>(
    obj: &PervObject<R>,
    loc: Location,
    minus_one: usize,
    zero: usize,
    entry: &str,
) -> Result<(), PervError> {
    let s = stalk_cohomology(obj, loc).map_err(|e| internal(e.to_string()))?;
    if s.minus_one.free_rank() != minus_one || !s.minus_one.torsion().is_empty() {
        return Err(internal(format!(
            "{entry}: degree −1 stalk at {loc} is {}, expected free rank {minus_one}",
            s.minus_one.describe()
        )));
    }
    if s.zero.free_rank() != zero || !s.zero.torsion().is_empty() {
        return Err(internal(format!(
            "{entry}: degree 0 stalk at {loc} is {}, expected free rank {zero}",
            s.zero.describe()
        )));
    }
    Ok(())
}

/// Re-derive every advertised value of the named entry. Called on every
/// `gallery` load, so stale constants cannot survive.
fn verify_entry<R: Ring>(ring: &R, entry: &GalleryEntry<R>) -> Result<(), PervError> {
    match (entry.name.as_str(), &entry.value) {
        ("rx_shift", GalleryValue::Object(o)) => {
            expect_ranks(o, Location::Origin, 1, 0, "rx_shift")?;
            expect_ranks(o, Location::Branch(0), 1, 0, "rx_shift")?;
            expect_ranks(o, Location::Branch(1), 1, 0, "rx_shift")?;
            if o.phi().free_rank() != 1 {
                return Err(internal("rx_shift: Φ must have rank 1".to_string()));
            }
        }
        ("ic_x", GalleryValue::Object(o)) => {
            expect_ranks(o, Location::Origin, 2, 0, "ic_x")?;
            if !o.phi().is_zero_module() {
                return Err(internal("ic_x: Φ must vanish".to_string()));
            }
        }
        ("m_shift", GalleryValue::Object(o)) => {
            expect_ranks(o, Location::Origin, 0, 1, "m_shift")?;
            let s = support(o);
            if !s.origin_is_component() || !s.branch_components().is_empty() {
                return Err(internal("m_shift: support must be the origin alone".to_string()));
            }
        }
        ("jshriek_branch", GalleryValue::Object(o)) => {
            expect_ranks(o, Location::Origin, 0, 0, "jshriek_branch")?;
            let s = support(o);
            if s.branch_components() != vec![0] || s.origin_is_component() {
                return Err(internal(
                    "jshriek_branch: support must be the first branch closure".to_string(),
                ));
            }
        }
        ("jstar_branch", GalleryValue::Object(o)) => {
            expect_ranks(o, Location::Origin, 1, 1, "jstar_branch")?;
        }
        ("t_resolution", GalleryValue::Morphism(t)) => {
            if !t.classify().surjective {
                return Err(internal("t_resolution must be surjective".to_string()));
            }
            let fac = perv_factorization(t)?;
            if fac.kernel != m_shift(ring) {
                return Err(internal(format!(
                    "t_resolution: kernel is {}, expected the origin skyscraper",
                    fac.kernel.describe()
                )));
            }
            for loc in Location::all(2) {
                let maps = induced_stalk_maps(t, loc)?;
                if !maps.minus_one.is_injective() || !maps.zero.is_injective() {
                    return Err(internal(format!(
                        "t_resolution: stalk maps at {loc} must have zero kernels"
                    )));
                }
            }
        }
        ("s_inclusion", GalleryValue::Morphism(t)) => {
            if !t.classify().injective {
                return Err(internal("s_inclusion must be injective".to_string()));
            }
            for loc in Location::all(2) {
                if !induced_stalk_maps(t, loc)?.all_zero() {
                    return Err(internal(format!(
                        "s_inclusion: stalk maps at {loc} must vanish"
                    )));
                }
            }
        }
        ("endo_example", GalleryValue::Morphism(t)) => {
            if !t.compose(t)?.is_zero_morphism() {
                return Err(internal("endo_example must square to zero".to_string()));
            }
            let fac = perv_factorization(t)?;
            if fac.kernel != rx_shift(ring) {
                return Err(internal(format!(
                    "endo_example: kernel is {}, expected the shifted constant object",
                    fac.kernel.describe()
                )));
            }
            if fac.image != m_shift(ring) {
                return Err(internal(format!(
                    "endo_example: image is {}, expected the origin skyscraper",
                    fac.image.describe()
                )));
            }
            let m_plus_ic = perv_direct_sum(&[&m_shift(ring), &ic_x(ring)])?.object;
            if fac.cokernel != m_plus_ic {
                return Err(internal(format!(
                    "endo_example: cokernel is {}, expected skyscraper ⊕ intersection object",
                    fac.cokernel.describe()
                )));
            }
            for loc in Location::all(2) {
                if !induced_stalk_maps(t, loc)?.all_zero() {
                    return Err(internal(format!(
                        "endo_example: stalk maps at {loc} must vanish"
                    )));
                }
            }
        }
        (name, _) => {
            return Err(internal(format!("no self-check clause for entry {name}")));
        }
    }
    Ok(())
}

pub fn gallery<R: Ring>(ring: &R, name: &str) -> Result<GalleryEntry<R>, PervError> {
    let value = match name {
        "rx_shift" => GalleryValue::Object(rx_shift(ring)),
        "ic_x" => GalleryValue::Object(ic_x(ring)),
        "m_shift" => GalleryValue::Object(m_shift(ring)),
        "jshriek_branch" => GalleryValue::Object(jshriek_branch(ring)),
        "jstar_branch" => GalleryValue::Object(jstar_branch(ring)),
        "t_resolution" => GalleryValue::Morphism(t_resolution(ring)),
        "s_inclusion" => GalleryValue::Morphism(s_inclusion(ring)),
        "endo_example" => GalleryValue::Morphism(endo_example(ring)),
        _ => {
            return Err(PervError::Input(format!(
                "unknown gallery name {name:?}; known names: {}",
                GALLERY_NAMES.join(", ")
            )))
        }
    };
    let entry = GalleryEntry { name: name.to_string(), value };
    verify_entry(ring, &entry)?;
    Ok(entry)
}

/// Match an object against the gallery objects and their pairwise direct
/// sums, returning a display name. Structural equality is tried first; over
/// a field a randomized isomorphism search backs it up.
pub fn identify_object<R: Ring>(obj: &PervObject<R>) -> Option<String> {
    if obj.is_zero_object() {
        return Some("0".to_string());
    }
    if obj.branches() != 2 {
        return None;
    }
    let ring = obj.ring();
    let singles: Vec<(String, PervObject<R>)> = GALLERY_OBJECT_NAMES
        .iter()
        .map(|n| (n.to_string(), gallery(ring, n).expect("gallery loads").as_object().unwrap().clone()))
        .collect();
    let mut candidates = singles.clone();
    for (i, (na, a)) in singles.iter().enumerate() {
        for (j, (nb, b)) in singles.iter().enumerate() {
            let sum = perv_direct_sum(&[a, b]).expect("gallery sum").object;
            // ⊕ commutes up to isomorphism, so display the pair in a fixed
            // order even when the match came from the swapped construction.
            let name =
                if i <= j { format!("{na} ⊕ {nb}") } else { format!("{nb} ⊕ {na}") };
            candidates.push((name, sum));
        }
    }
    for (name, cand) in &candidates {
        if obj == cand {
            return Some(name.clone());
        }
    }
    if ring.is_field() {
        for (name, cand) in &candidates {
            if let Ok(IsoOutcome::Isomorphism(_)) =
                find_isomorphism(obj, cand, perv_core::DEFAULT_ISO_TRIALS, 0)
            {
                return Some(name.clone());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::{Integers, PrimeField, Rationals};

    #[test]
    fn all_entries_load_over_all_rings() {
        for name in GALLERY_NAMES {
            assert!(gallery(&Integers, name).is_ok(), "{name} over Z");
            assert!(gallery(&Rationals, name).is_ok(), "{name} over Q");
            assert!(gallery(&PrimeField::new(5).unwrap(), name).is_ok(), "{name} over F5");
        }
        assert!(gallery(&Integers, "nope").is_err());
    }

    #[test]
    fn factors_of_the_endomorphism_are_identified() {
        let t = endo_example(&Rationals);
        let fac = perv_factorization(&t).unwrap();
        assert_eq!(identify_object(&fac.kernel).as_deref(), Some("rx_shift"));
        assert_eq!(identify_object(&fac.image).as_deref(), Some("m_shift"));
        assert_eq!(identify_object(&fac.cokernel).as_deref(), Some("ic_x ⊕ m_shift"));
    }

    #[test]
    fn resolution_kernel_is_named() {
        let t = t_resolution(&Integers);
        let fac = perv_factorization(&t).unwrap();
        assert_eq!(identify_object(&fac.kernel).as_deref(), Some("m_shift"));
        assert_eq!(identify_object(&fac.image).as_deref(), Some("ic_x"));
        assert_eq!(identify_object(&fac.cokernel).as_deref(), Some("0"));
    }
}
