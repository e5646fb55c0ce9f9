//! One function per subcommand. Every command produces both renderings up
//! front; `main` picks one and maps errors to exit codes.

use exact_linalg::{Integers, PrimeField, Rationals, Ring, RingKind};
use functors::{
    characteristic_cycle, induced_stalk_maps, stalk_cohomology, support, Location,
};
use perv_core::{
    find_isomorphism, hom_space, perv_factorization, IsoOutcome, MorphismFile, ObjectFile,
    PervError,
};
use serde::Serialize;
use theorem_suite::{fuzz_tagged, gallery, identify_object, GalleryValue, Suite, Verdict};

use crate::io::{parse_file, parse_object, FileKind};
use crate::outputs::*;

pub struct Rendered {
    pub human: String,
    pub json: String,
    pub exit: i32,
}

fn render<T: Serialize>(out: &T, human: String, exit: i32) -> Rendered {
    let json = serde_json::to_string_pretty(out).expect("reports serialize") + "\n";
    Rendered { human: human + "\n", json, exit }
}

macro_rules! with_ring {
    ($kind:expr, |$ring:ident| $body:expr) => {
        match $kind {
            RingKind::Rationals => {
                let $ring = &Rationals;
                $body
            }
            RingKind::Integers => {
                let $ring = &Integers;
                $body
            }
            RingKind::PrimeField(p) => {
                let field = PrimeField::new(p).map_err(|e| PervError::Input(e.to_string()))?;
                let $ring = &field;
                $body
            }
        }
    };
}

pub fn cmd_validate(text: &str) -> Result<Rendered, PervError> {
    match parse_file(text)? {
        FileKind::Object(f) => {
            let kind = f.ring_kind()?;
            with_ring!(kind, |ring| match f.to_object(ring) {
                Ok(obj) => {
                    let out = ValidateOut {
                        status: "valid".to_string(),
                        kind: "object".to_string(),
                        ring: kind.to_string(),
                        display: obj.describe(),
                        error: None,
                    };
                    let human = out.human();
                    Ok(render(&out, human, 0))
                }
                Err(e) if e.is_input_error() => Err(e),
                Err(e) => {
                    let out = ValidateOut {
                        status: "invalid".to_string(),
                        kind: "object".to_string(),
                        ring: kind.to_string(),
                        display: String::new(),
                        error: Some(e.to_string()),
                    };
                    let human = out.human();
                    Ok(render(&out, human, 1))
                }
            })
        }
        FileKind::Morphism(f) => {
            let kind = f.ring_kind()?;
            with_ring!(kind, |ring| match f.to_morphism(ring) {
                Ok(t) => {
                    let out = ValidateOut {
                        status: "valid".to_string(),
                        kind: "morphism".to_string(),
                        ring: kind.to_string(),
                        display: format!("{} -> {}", t.source().describe(), t.target().describe()),
                        error: None,
                    };
                    let human = out.human();
                    Ok(render(&out, human, 0))
                }
                Err(e) if e.is_input_error() => Err(e),
                Err(e) => {
                    let out = ValidateOut {
                        status: "invalid".to_string(),
                        kind: "morphism".to_string(),
                        ring: kind.to_string(),
                        display: String::new(),
                        error: Some(e.to_string()),
                    };
                    let human = out.human();
                    Ok(render(&out, human, 1))
                }
            })
        }
    }
}

pub fn cmd_factor(text: &str) -> Result<Rendered, PervError> {
    let f = match parse_file(text)? {
        FileKind::Morphism(f) => f,
        FileKind::Object(_) => {
            return Err(PervError::Input(
                "factor expects a morphism file, found an object file".to_string(),
            ))
        }
    };
    let kind = f.ring_kind()?;
    with_ring!(kind, |ring| {
        let t = f.to_morphism(ring)?;
        let fac = perv_factorization(&t)?;
        let locations = Location::all(t.source().branches());
        let mut parts = Vec::new();
        for (role, obj) in
            [("kernel", &fac.kernel), ("image", &fac.image), ("cokernel", &fac.cokernel)]
        {
            let mut stalks = Vec::new();
            for loc in &locations {
                stalks.push(stalk_out(&stalk_cohomology(obj, *loc)?));
            }
            let cc = if ring.is_field() {
                Some(cycle_out(&characteristic_cycle(obj)?))
            } else {
                None
            };
            parts.push(FactorPartOut {
                role: role.to_string(),
                display: obj.describe(),
                name: identify_object(obj),
                support: support_out(&support(obj)),
                stalks,
                cc,
                object: ObjectFile::from_object(obj),
            });
        }
        let out = FactorOut {
            ring: kind.to_string(),
            source: t.source().describe(),
            target: t.target().describe(),
            classification: class_out(&t.classify()),
            parts,
        };
        let human = out.human();
        Ok(render(&out, human, 0))
    })
}

pub fn cmd_stalk(text: &str, at: &str) -> Result<Rendered, PervError> {
    match parse_file(text)? {
        FileKind::Object(f) => {
            let kind = f.ring_kind()?;
            with_ring!(kind, |ring| {
                let obj = f.to_object(ring)?;
                let loc = Location::parse(at, obj.branches())?;
                let out = StalkObjectOut {
                    ring: kind.to_string(),
                    display: obj.describe(),
                    stalk: stalk_out(&stalk_cohomology(&obj, loc)?),
                };
                let human = out.human();
                Ok(render(&out, human, 0))
            })
        }
        FileKind::Morphism(f) => {
            let kind = f.ring_kind()?;
            with_ring!(kind, |ring| {
                let t = f.to_morphism(ring)?;
                let loc = Location::parse(at, t.source().branches())?;
                let maps = induced_stalk_maps(&t, loc)?;
                let out = StalkMorphismOut {
                    ring: kind.to_string(),
                    display: format!("{} -> {}", t.source().describe(), t.target().describe()),
                    location: loc.to_string(),
                    minus_one: map_out(&maps.minus_one),
                    zero: map_out(&maps.zero),
                };
                let human = out.human();
                Ok(render(&out, human, 0))
            })
        }
    }
}

pub fn cmd_support(text: &str) -> Result<Rendered, PervError> {
    let f = parse_object(text)?;
    let kind = f.ring_kind()?;
    with_ring!(kind, |ring| {
        let obj = f.to_object(ring)?;
        let out = SupportCmdOut {
            ring: kind.to_string(),
            display: obj.describe(),
            support: support_out(&support(&obj)),
        };
        let human = out.human();
        Ok(render(&out, human, 0))
    })
}

pub fn cmd_cc(text: &str) -> Result<Rendered, PervError> {
    let f = parse_object(text)?;
    let kind = f.ring_kind()?;
    with_ring!(kind, |ring| {
        let obj = f.to_object(ring)?;
        let cc = characteristic_cycle(&obj)?;
        let out = CcCmdOut {
            ring: kind.to_string(),
            display: obj.describe(),
            underlying_set: cc.underlying_set().to_string(),
            cc: cycle_out(&cc),
        };
        let human = out.human();
        Ok(render(&out, human, 0))
    })
}

pub fn cmd_phi(text: &str) -> Result<Rendered, PervError> {
    match parse_file(text)? {
        FileKind::Object(f) => {
            let kind = f.ring_kind()?;
            with_ring!(kind, |ring| {
                let obj = f.to_object(ring)?;
                let out = PhiObjectOut {
                    ring: kind.to_string(),
                    display: obj.describe(),
                    phi: module_out(obj.phi()),
                    monodromy: perv_core::matrix_to_data(&obj.vanishing_monodromy()),
                };
                let human = out.human();
                Ok(render(&out, human, 0))
            })
        }
        FileKind::Morphism(f) => {
            let kind = f.ring_kind()?;
            with_ring!(kind, |ring| {
                let t = f.to_morphism(ring)?;
                let out = PhiMorphismOut {
                    ring: kind.to_string(),
                    display: format!("{} -> {}", t.source().describe(), t.target().describe()),
                    source_phi: module_out(t.source().phi()),
                    target_phi: module_out(t.target().phi()),
                    matrix: perv_core::matrix_to_data(t.vanishing_map()),
                };
                let human = out.human();
                Ok(render(&out, human, 0))
            })
        }
    }
}

pub fn cmd_hom(source_text: &str, target_text: &str) -> Result<Rendered, PervError> {
    let fs = parse_object(source_text)?;
    let ft = parse_object(target_text)?;
    let kind = fs.ring_kind()?;
    if ft.ring_kind()? != kind {
        return Err(PervError::Input(format!(
            "ring mismatch between source ({}) and target ({})",
            fs.ring, ft.ring
        )));
    }
    with_ring!(kind, |ring| {
        let p = fs.to_object(ring)?;
        let q = ft.to_object(ring)?;
        let space = hom_space(&p, &q)?;
        let out = HomOut {
            ring: kind.to_string(),
            source: p.describe(),
            target: q.describe(),
            generator_count: space.generators.len(),
            dimension: space.dimension,
            generators: space.generators.iter().map(MorphismFile::from_morphism).collect(),
        };
        let human = out.human();
        Ok(render(&out, human, 0))
    })
}

pub fn cmd_iso(
    source_text: &str,
    target_text: &str,
    trials: u64,
    seed: u64,
) -> Result<Rendered, PervError> {
    let fs = parse_object(source_text)?;
    let ft = parse_object(target_text)?;
    let kind = fs.ring_kind()?;
    if ft.ring_kind()? != kind {
        return Err(PervError::Input(format!(
            "ring mismatch between source ({}) and target ({})",
            fs.ring, ft.ring
        )));
    }
    with_ring!(kind, |ring| {
        let p = fs.to_object(ring)?;
        let q = ft.to_object(ring)?;
        let outcome = find_isomorphism(&p, &q, trials as usize, seed)?;
        let mut out = IsoOut {
            ring: kind.to_string(),
            source: p.describe(),
            target: q.describe(),
            verdict: outcome.verdict_str().to_string(),
            trials,
            seed,
            witness: None,
            note: None,
            isomorphism: None,
        };
        let exit = match outcome {
            IsoOutcome::Isomorphism(t) => {
                out.isomorphism = Some(MorphismFile::from_morphism(&t));
                0
            }
            IsoOutcome::DistinguishedByInvariant { witness } => {
                out.witness = Some(witness);
                1
            }
            IsoOutcome::Unknown { note, .. } => {
                out.note = Some(note);
                0
            }
        };
        let human = out.human();
        Ok(render(&out, human, exit))
    })
}

pub fn cmd_check(
    suite: &str,
    ring_tag: &str,
    trials: u64,
    max_dim: u64,
    seed: u64,
) -> Result<Rendered, PervError> {
    let suite = Suite::parse(suite)?;
    RingKind::parse(ring_tag).map_err(|e| PervError::Input(e.to_string()))?;
    let reports = fuzz_tagged(ring_tag, suite, trials, max_dim, seed)?;
    let failed = reports.iter().any(|r| r.verdict == Verdict::Fail);
    let out = CheckOut {
        suite: format!("{suite:?}").to_lowercase(),
        ring: ring_tag.to_string(),
        trials,
        max_dim,
        seed,
        overall: if failed { "fail".to_string() } else { "pass".to_string() },
        reports,
    };
    let human = out.human();
    Ok(render(&out, human, if failed { 1 } else { 0 }))
}

pub fn cmd_gallery(name: &str, ring_tag: &str) -> Result<Rendered, PervError> {
    let kind = RingKind::parse(ring_tag).map_err(|e| PervError::Input(e.to_string()))?;
    with_ring!(kind, |ring| {
        let entry = gallery(ring, name)?;
        let json = match &entry.value {
            GalleryValue::Object(o) => {
                serde_json::to_string_pretty(&ObjectFile::from_object(o))
            }
            GalleryValue::Morphism(t) => {
                serde_json::to_string_pretty(&MorphismFile::from_morphism(t))
            }
        }
        .expect("gallery entries serialize")
            + "\n";
        Ok(Rendered { human: json.clone(), json, exit: 0 })
    })
}
