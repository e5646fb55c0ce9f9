//! Executable statements of the support theorem, its corollary, the
//! endomorphism theorem, the eigenvalue remark, and the characteristic-cycle
//! properties. Each checker either returns a report (pass, fail with
//! witness, or confirmed counterexample) or an error when the input itself
//! is unusable.

use exact_linalg::{module_leq, FGModule, ModuleMap, Ring};
use functors::{
    characteristic_cycle, induced_stalk_maps, isolating_map, stalk_cohomology, support, Location,
    SupportSet,
};
use perv_core::{perv_factorization, PervError, PervMorphism, PervObject};

use crate::gallery::endo_example;
use crate::report::{CheckReport, Verdict, Violation};

/// Which constituent of the factorization a support-style statement is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Kernel,
    Image,
    Cokernel,
}

pub const ALL_MODES: [Mode; 3] = [Mode::Kernel, Mode::Image, Mode::Cokernel];

impl Mode {
    pub fn parse(s: &str) -> Result<Self, PervError> {
        match s {
            "ker" => Ok(Mode::Kernel),
            "im" => Ok(Mode::Image),
            "coker" => Ok(Mode::Cokernel),
            _ => Err(PervError::Input(format!(
                "unknown mode {s:?}; expected ker, im or coker"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::Kernel => "ker",
            Mode::Image => "im",
            Mode::Cokernel => "coker",
        }
    }

    fn of_map<R: Ring>(self, f: &ModuleMap<R>) -> FGModule<R> {
        match self {
            Mode::Kernel => f.kernel().module,
            Mode::Image => f.image().module,
            Mode::Cokernel => f.cokernel().module,
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

fn single_report<R: Ring>(
    suite: String,
    ring: &R,
    t: Option<&PervMorphism<R>>,
    violations: Vec<Violation>,
) -> CheckReport {
    let verdict = if violations.is_empty() { Verdict::Pass } else { Verdict::Fail };
    CheckReport {
        suite,
        ring: ring.kind().to_string(),
        verdict,
        trials: 1,
        seed: 0,
        failures: violations.into_iter().map(|v| v.into_witness(0, 0, t)).collect(),
        notes: vec![],
    }
}

fn require_field<R: Ring>(ring: &R, what: &str) -> Result<(), PervError> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(PervError::Unsupported(format!(
            "{what} needs field coefficients; got ring {}",
            ring.kind()
        )))
    }
}

fn require_endo<R: Ring>(t: &PervMorphism<R>) -> Result<(), PervError> {
    if t.source() == t.target() {
        Ok(())
    } else {
        Err(PervError::Input(format!(
            "endomorphism required; source {} differs from target {}",
            t.source().describe(),
            t.target().describe()
        )))
    }
}

/// Predicted support from the component isolating maps alone: branch i is
/// flagged when mode(aᵢ) ≠ 0, the origin when mode(b) ≠ 0; then close up.
fn isolating_prediction<R: Ring>(
    t: &PervMorphism<R>,
    mode: Mode,
) -> Result<SupportSet, PervError> {
    let r = t.source().branches();
    let mut predicted = SupportSet::empty(r);
    for i in 0..r {
        predicted.branches[i] = !mode.of_map(&isolating_map(t, Location::Branch(i))?).is_zero_module();
    }
    predicted.origin = !mode.of_map(&isolating_map(t, Location::Origin)?).is_zero_module();
    Ok(predicted.closure())
}

pub(crate) fn support_theorem_violations<R: Ring>(
    t: &PervMorphism<R>,
    mode: Mode,
) -> Result<Vec<Violation>, PervError> {
    let mut out = Vec::new();
    let fac = perv_factorization(t)?;
    let obj = match mode {
        Mode::Kernel => &fac.kernel,
        Mode::Image => &fac.image,
        Mode::Cokernel => &fac.cokernel,
    };
    let actual = support(obj);
    let predicted = isolating_prediction(t, mode)?;
    if actual != predicted {
        out.push(Violation::new(
            format!("support of the {mode} object differs from the isolating-map prediction"),
            actual.to_string(),
            predicted.to_string(),
        ));
    }
    for i in actual.branch_components() {
        let generic = stalk_cohomology(obj, Location::Branch(i))?.minus_one;
        let component = mode.of_map(&isolating_map(t, Location::Branch(i))?);
        if generic != component {
            out.push(Violation::new(
                format!("generic degree −1 stalk on branch {} differs from {mode}(a)", i + 1),
                generic.describe(),
                component.describe(),
            ));
        }
    }
    if actual.origin_is_component() {
        let stalk = stalk_cohomology(obj, Location::Origin)?.zero;
        let at_origin = mode.of_map(&isolating_map(t, Location::Origin)?);
        if stalk != at_origin {
            out.push(Violation::new(
                format!("degree 0 origin stalk of the {mode} object differs from {mode}(b)"),
                stalk.describe(),
                at_origin.describe(),
            ));
        }
        if !module_leq(&stalk, &at_origin).map_err(|e| PervError::Algebra(e.to_string()))? {
            out.push(Violation::new(
                format!("degree 0 origin stalk of the {mode} object exceeds {mode}(b)"),
                stalk.describe(),
                at_origin.describe(),
            ));
        }
    }
    Ok(out)
}

/// Item 1 and item 2 of the support theorem for one mode (ker, im, coker).
pub fn check_support_theorem<R: Ring>(
    t: &PervMorphism<R>,
    mode: Mode,
) -> Result<CheckReport, PervError> {
    let violations = support_theorem_violations(t, mode)?;
    Ok(single_report(format!("support ({mode})"), t.ring(), Some(t), violations))
}

pub(crate) fn corollary_violations<R: Ring>(
    t: &PervMorphism<R>,
) -> Result<Vec<Violation>, PervError> {
    let mut out = Vec::new();
    let class = t.classify();
    let maps: Vec<ModuleMap<R>> = Location::all(t.source().branches())
        .into_iter()
        .map(|loc| isolating_map(t, loc))
        .collect::<Result<_, _>>()?;
    let kernels_vanish = maps.iter().all(|m| m.is_injective());
    let cokernels_vanish = maps.iter().all(|m| m.is_surjective());
    let images_vanish = maps.iter().all(|m| m.is_zero_map());
    for (name, classified, component) in [
        ("injection", class.injective, kernels_vanish),
        ("surjection", class.surjective, cokernels_vanish),
        ("zero morphism", class.zero, images_vanish),
    ] {
        if classified != component {
            out.push(Violation::new(
                format!("{name} classification disagrees with the isolating maps"),
                format!("classified: {classified}"),
                format!("component maps: {component}"),
            ));
        }
    }
    Ok(out)
}

/// A morphism is an injection (resp. zero, surjection) exactly when every
/// isolating map has zero kernel (resp. image, cokernel).
pub fn check_corollary<R: Ring>(t: &PervMorphism<R>) -> Result<CheckReport, PervError> {
    let violations = corollary_violations(t)?;
    Ok(single_report("corollary".to_string(), t.ring(), Some(t), violations))
}

fn stalk_map_prediction<R: Ring>(
    t: &PervMorphism<R>,
    mode: Mode,
) -> Result<SupportSet, PervError> {
    let r = t.source().branches();
    let mut predicted = SupportSet::empty(r);
    for i in 0..r {
        predicted.branches[i] = !mode.of_map(t.branch_map(i)).is_zero_module();
    }
    let origin = induced_stalk_maps(t, Location::Origin)?;
    predicted.origin = !mode.of_map(&origin.minus_one).is_zero_module()
        || !mode.of_map(&origin.zero).is_zero_module();
    Ok(predicted.closure())
}

pub(crate) fn endo_theorem_violations<R: Ring>(
    t: &PervMorphism<R>,
) -> Result<Vec<Violation>, PervError> {
    require_field(t.ring(), "the endomorphism theorem")?;
    require_endo(t)?;
    let mut out = Vec::new();
    let fac = perv_factorization(t)?;

    let supp_ker = support(&fac.kernel);
    let predicted_ker = stalk_map_prediction(t, Mode::Kernel)?;
    if supp_ker != predicted_ker {
        out.push(Violation::new(
            "kernel support differs from the stalk-map kernel prediction",
            supp_ker.to_string(),
            predicted_ker.to_string(),
        ));
    }

    let supp_coker = support(&fac.cokernel);
    let predicted_coker = stalk_map_prediction(t, Mode::Cokernel)?;
    if supp_coker != predicted_coker {
        out.push(Violation::new(
            "cokernel support differs from the stalk-map cokernel prediction",
            supp_coker.to_string(),
            predicted_coker.to_string(),
        ));
    }

    let cc_ker = characteristic_cycle(&fac.kernel)?;
    let cc_coker = characteristic_cycle(&fac.cokernel)?;
    if cc_ker != cc_coker {
        out.push(Violation::new(
            "kernel and cokernel characteristic cycles differ",
            cc_ker.to_string(),
            cc_coker.to_string(),
        ));
    }
    if supp_ker != supp_coker {
        out.push(Violation::new(
            "kernel and cokernel supports differ",
            supp_ker.to_string(),
            supp_coker.to_string(),
        ));
    }

    let origin_maps = induced_stalk_maps(t, Location::Origin)?;
    for i in supp_ker.branch_components() {
        let generic = stalk_cohomology(&fac.kernel, Location::Branch(i))?.minus_one;
        let expected = t.branch_map(i).kernel().module;
        if generic != expected {
            out.push(Violation::new(
                format!("degree −1 kernel stalk on branch {} is not ker(a)", i + 1),
                generic.describe(),
                expected.describe(),
            ));
        }
    }
    if supp_ker.origin_is_component() {
        let stalk = stalk_cohomology(&fac.kernel, Location::Origin)?.zero;
        let expected = origin_maps.zero.kernel().module;
        if stalk != expected {
            out.push(Violation::new(
                "degree 0 kernel stalk at the origin is not the kernel of the degree 0 stalk map",
                stalk.describe(),
                expected.describe(),
            ));
        }
    }
    Ok(out)
}

/// The endomorphism theorem: kernel (and cokernel) supports are read off
/// from stalk maps, the two characteristic cycles agree, and kernel stalks
/// on each component are kernels of the corresponding stalk maps.
pub fn check_endo_theorem<R: Ring>(t: &PervMorphism<R>) -> Result<CheckReport, PervError> {
    let violations = endo_theorem_violations(t)?;
    Ok(single_report("endo".to_string(), t.ring(), Some(t), violations))
}

/// The image variant of the endomorphism theorem is false, and the gallery
/// endomorphism witnesses that: its image is supported at the origin while
/// every stalk map has zero image. Confirming the mismatch is the expected
/// outcome; if the variant ever held here, the suite itself would be broken.
pub fn check_endo_counterexample<R: Ring>(ring: &R) -> Result<CheckReport, PervError> {
    require_field(ring, "the image-variant counterexample")?;
    let t = endo_example(ring);
    let fac = perv_factorization(&t)?;
    let actual = support(&fac.image);
    let predicted = stalk_map_prediction(&t, Mode::Image)?;
    let mut expected_origin = SupportSet::empty(t.source().branches());
    expected_origin.origin = true;
    let confirmed = actual == expected_origin && predicted.is_empty();
    let mut report = single_report("endo-image-variant".to_string(), ring, Some(&t), vec![]);
    if confirmed {
        report.verdict = Verdict::ExpectedCounterexampleConfirmed;
        report.notes.push(format!(
            "image support is {actual} but every stalk-map image vanishes (prediction {predicted})"
        ));
    } else {
        report.verdict = Verdict::Fail;
        report.failures.push(
            Violation::new(
                "image-variant counterexample did not behave as documented",
                actual.to_string(),
                predicted.to_string(),
            )
            .into_witness(0, 0, Some(&t)),
        );
    }
    Ok(report)
}

/// Small integer images, deduplicated, used as the default λ candidates.
pub fn default_eigen_candidates<R: Ring>(ring: &R) -> Vec<R::Elem> {
    let mut out: Vec<R::Elem> = Vec::new();
    for n in -3..=3 {
        let x = ring.from_i64(n);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

pub(crate) fn eigenvalue_violations<R: Ring>(
    t: &PervMorphism<R>,
    lambdas: &[R::Elem],
) -> Result<Vec<Violation>, PervError> {
    require_field(t.ring(), "eigenvalue analysis")?;
    require_endo(t)?;
    let ring = t.ring().clone();
    let mut out = Vec::new();
    let locations = Location::all(t.source().branches());
    for lambda in lambdas {
        let shifted = PervMorphism::scalar(t.source(), lambda).sub(t)?;
        let object_side = !shifted.classify().injective;
        let mut stalk_side = false;
        for loc in &locations {
            let maps = induced_stalk_maps(t, *loc)?;
            for m in [&maps.minus_one, &maps.zero] {
                let ker = m
                    .eigen_kernel(lambda)
                    .map_err(|e| PervError::Algebra(e.to_string()))?;
                if !ker.is_zero_module() {
                    stalk_side = true;
                }
            }
        }
        if object_side != stalk_side {
            out.push(Violation::new(
                format!("eigenvalue detection disagrees at λ = {}", ring.format(lambda)),
                format!("kernel object nonzero: {object_side}"),
                format!("some stalk eigen-kernel nonzero: {stalk_side}"),
            ));
        }
    }
    Ok(out)
}

/// λ is an eigenvalue on the object level (λ·id − T has nonzero kernel)
/// exactly when some induced stalk map detects it.
pub fn check_eigenvalue_remark<R: Ring>(
    t: &PervMorphism<R>,
    lambdas: &[R::Elem],
) -> Result<CheckReport, PervError> {
    let violations = eigenvalue_violations(t, lambdas)?;
    Ok(single_report("eigen".to_string(), t.ring(), Some(t), violations))
}

pub(crate) fn cc_object_violations<R: Ring>(
    obj: &PervObject<R>,
) -> Result<Vec<Violation>, PervError> {
    let mut out = Vec::new();
    let cc = characteristic_cycle(obj)?;
    let supp = support(obj);
    if cc.underlying_set() != supp {
        out.push(Violation::new(
            "characteristic cycle set differs from the support",
            cc.underlying_set().to_string(),
            supp.to_string(),
        ));
    }
    if cc.is_zero() != obj.is_zero_object() {
        out.push(Violation::new(
            "characteristic cycle vanishing disagrees with object vanishing",
            format!("CC zero: {}", cc.is_zero()),
            format!("object zero: {}", obj.is_zero_object()),
        ));
    }
    Ok(out)
}

pub(crate) fn cc_factorization_violations<R: Ring>(
    t: &PervMorphism<R>,
) -> Result<Vec<Violation>, PervError> {
    let mut out = Vec::new();
    let fac = perv_factorization(t)?;
    let cc_src = characteristic_cycle(t.source())?;
    let cc_tgt = characteristic_cycle(t.target())?;
    let cc_ker = characteristic_cycle(&fac.kernel)?;
    let cc_im = characteristic_cycle(&fac.image)?;
    let cc_coker = characteristic_cycle(&fac.cokernel)?;
    let left = cc_ker.add(&cc_im).map_err(|e| PervError::Algebra(e.to_string()))?;
    if cc_src != left {
        out.push(Violation::new(
            "characteristic cycle is not additive over 0 → ker → source → im → 0",
            cc_src.to_string(),
            left.to_string(),
        ));
    }
    let right = cc_im.add(&cc_coker).map_err(|e| PervError::Algebra(e.to_string()))?;
    if cc_tgt != right {
        out.push(Violation::new(
            "characteristic cycle is not additive over 0 → im → target → coker → 0",
            cc_tgt.to_string(),
            right.to_string(),
        ));
    }
    Ok(out)
}

/// Characteristic-cycle sanity for a single object: the underlying set is
/// the support, and the cycle vanishes exactly for the zero object.
pub fn check_cc_object<R: Ring>(obj: &PervObject<R>) -> Result<CheckReport, PervError> {
    let violations = cc_object_violations(obj)?;
    Ok(single_report("cc (object)".to_string(), obj.ring(), None, violations))
}

/// Additivity of the characteristic cycle over the two short exact
/// sequences attached to a morphism's factorization.
pub fn check_cc_factorization<R: Ring>(t: &PervMorphism<R>) -> Result<CheckReport, PervError> {
    let violations = cc_factorization_violations(t)?;
    Ok(single_report("cc (factorization)".to_string(), t.ring(), Some(t), violations))
}
