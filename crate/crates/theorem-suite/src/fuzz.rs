//! Randomized campaigns: run a checker over seeded streams of generated
//! inputs, in parallel, and merge the outcomes in trial order so the
//! aggregate report is identical run to run.

use exact_linalg::{Integers, PrimeField, Rationals, Ring, RingKind, SplitMix64};
use perv_core::{MorphismFile, PervError, PervMorphism};
use rayon::prelude::*;

use crate::checks::{
    cc_factorization_violations, cc_object_violations, check_endo_counterexample,
    corollary_violations, default_eigen_candidates, eigenvalue_violations,
    endo_theorem_violations, support_theorem_violations, ALL_MODES,
};
use crate::random::{random_endo, random_morphism, random_object};
use crate::report::{CheckReport, Verdict, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Support,
    Corollary,
    Endo,
    Eigen,
    Cc,
    All,
}

pub const BASE_SUITES: [Suite; 5] =
    [Suite::Support, Suite::Corollary, Suite::Endo, Suite::Eigen, Suite::Cc];

impl Suite {
    pub fn parse(s: &str) -> Result<Self, PervError> {
        match s {
            "support" => Ok(Suite::Support),
            "corollary" => Ok(Suite::Corollary),
            "endo" => Ok(Suite::Endo),
            "eigen" => Ok(Suite::Eigen),
            "cc" => Ok(Suite::Cc),
            "all" => Ok(Suite::All),
            _ => Err(PervError::Input(format!(
                "unknown suite {s:?}; expected support, corollary, endo, eigen, cc or all"
            ))),
        }
    }
}

/// How many failing trials keep their full witnesses in a report.
const WITNESS_CAP: usize = 3;

/// One fuzz trial's outcome: violations per sub-report slot, plus the
/// serialized morphism when anything failed.
struct TrialOutcome {
    trial: u64,
    replay_seed: u64,
    per_slot: Vec<Vec<Violation>>,
    morphism: Option<MorphismFile>,
}

/// Draw a dimension ≤ `max_dim`, biased toward small values so the heavy
/// tail (where exact solves get expensive) stays rare but reachable.
fn skewed_dim(rng: &mut SplitMix64, max_dim: u64) -> u64 {
    let cap = rng.below(max_dim + 1);
    rng.below(cap + 1)
}

struct TrialPlan {
    branches: usize,
    source_dim: u64,
    target_dim: u64,
    source_seed: u64,
    target_seed: u64,
    morphism_seed: u64,
}

fn plan(trial_seed: u64, max_dim: u64) -> TrialPlan {
    let mut rng = SplitMix64::new(trial_seed);
    TrialPlan {
        branches: 1 + rng.below(3) as usize,
        source_dim: skewed_dim(&mut rng, max_dim),
        target_dim: skewed_dim(&mut rng, max_dim),
        source_seed: rng.next_u64(),
        target_seed: rng.next_u64(),
        morphism_seed: rng.next_u64(),
    }
}

fn violations_or_error(result: Result<Vec<Violation>, PervError>) -> Vec<Violation> {
    match result {
        Ok(v) => v,
        Err(e) => vec![Violation::new("checker raised an internal error", e.to_string(), "")],
    }
}

fn run_campaign<R, F>(
    ring: &R,
    slot_names: &[&str],
    trials: u64,
    max_dim: u64,
    seed: u64,
    check_one: F,
) -> Vec<CheckReport>
where
    R: Ring,
    F: Fn(&TrialPlan, &mut SplitMix64) -> (Vec<Vec<Violation>>, Option<PervMorphism<R>>) + Sync,
{
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let replay_seed = SplitMix64::derive(seed, t);
            let p = plan(replay_seed, max_dim);
            let mut aux = SplitMix64::new(SplitMix64::derive(replay_seed, 1));
            let (per_slot, used) = check_one(&p, &mut aux);
            let failed = per_slot.iter().any(|v| !v.is_empty());
            TrialOutcome {
                trial: t,
                replay_seed,
                per_slot,
                morphism: if failed { used.as_ref().map(MorphismFile::from_morphism) } else { None },
            }
        })
        .collect();

    slot_names
        .iter()
        .enumerate()
        .map(|(slot, name)| {
            let mut failures = Vec::new();
            let mut failing_trials = 0u64;
            for outcome in &outcomes {
                let violations = &outcome.per_slot[slot];
                if violations.is_empty() {
                    continue;
                }
                failing_trials += 1;
                if failures.len() < WITNESS_CAP {
                    for v in violations {
                        failures.push(v.clone().into_witness::<R>(
                            outcome.trial,
                            outcome.replay_seed,
                            None,
                        ));
                    }
                    if let (Some(last), Some(m)) = (failures.last_mut(), &outcome.morphism) {
                        if last.morphism.is_none() {
                            last.morphism = Some(m.clone());
                        }
                    }
                }
            }
            let mut notes = Vec::new();
            if failing_trials > 0 {
                notes.push(format!("{failing_trials} of {trials} trials failed"));
            }
            CheckReport {
                suite: (*name).to_string(),
                ring: ring.kind().to_string(),
                verdict: if failing_trials == 0 { Verdict::Pass } else { Verdict::Fail },
                trials,
                seed,
                failures,
                notes,
            }
        })
        .collect()
}

fn unsupported_report<R: Ring>(ring: &R, suite: &str, seed: u64, why: &str) -> CheckReport {
    CheckReport {
        suite: suite.to_string(),
        ring: ring.kind().to_string(),
        verdict: Verdict::UnsupportedRing,
        trials: 0,
        seed,
        failures: vec![],
        notes: vec![format!("skipped: {why}")],
    }
}

fn fuzz_support<R: Ring>(ring: &R, trials: u64, max_dim: u64, seed: u64) -> Vec<CheckReport> {
    run_campaign(
        ring,
        &["support (ker)", "support (im)", "support (coker)"],
        trials,
        max_dim,
        seed,
        |p, _| {
            let src = random_object(ring, p.branches, p.source_dim, p.source_seed);
            let tgt = random_object(ring, p.branches, p.target_dim, p.target_seed);
            let t = random_morphism(&src, &tgt, p.morphism_seed);
            let per_slot = ALL_MODES
                .iter()
                .map(|m| violations_or_error(support_theorem_violations(&t, *m)))
                .collect();
            (per_slot, Some(t))
        },
    )
}

fn fuzz_corollary<R: Ring>(ring: &R, trials: u64, max_dim: u64, seed: u64) -> Vec<CheckReport> {
    run_campaign(ring, &["corollary"], trials, max_dim, seed, |p, aux| {
        let src = random_object(ring, p.branches, p.source_dim, p.source_seed);
        let t = if aux.below(4) == 0 {
            random_endo(&src, p.morphism_seed)
        } else {
            let tgt = random_object(ring, p.branches, p.target_dim, p.target_seed);
            random_morphism(&src, &tgt, p.morphism_seed)
        };
        (vec![violations_or_error(corollary_violations(&t))], Some(t))
    })
}

fn fuzz_endo<R: Ring>(ring: &R, trials: u64, max_dim: u64, seed: u64) -> Vec<CheckReport> {
    if !ring.is_field() {
        return vec![unsupported_report(
            ring,
            "endo",
            seed,
            "the endomorphism theorem needs field coefficients",
        )];
    }
    let mut reports = run_campaign(ring, &["endo"], trials, max_dim, seed, |p, _| {
        let obj = random_object(ring, p.branches, p.source_dim, p.source_seed);
        let t = random_endo(&obj, p.morphism_seed);
        (vec![violations_or_error(endo_theorem_violations(&t))], Some(t))
    });
    reports.push(check_endo_counterexample(ring).unwrap_or_else(|e| CheckReport {
        suite: "endo-image-variant".to_string(),
        ring: ring.kind().to_string(),
        verdict: Verdict::Fail,
        trials: 1,
        seed,
        failures: vec![Violation::new("counterexample evaluation errored", e.to_string(), "")
            .into_witness::<R>(0, 0, None)],
        notes: vec![],
    }));
    reports
}

fn fuzz_eigen<R: Ring>(ring: &R, trials: u64, max_dim: u64, seed: u64) -> Vec<CheckReport> {
    if !ring.is_field() {
        return vec![unsupported_report(
            ring,
            "eigen",
            seed,
            "eigenvalue analysis needs field coefficients",
        )];
    }
    let lambdas = default_eigen_candidates(ring);
    run_campaign(ring, &["eigen"], trials, max_dim, seed, |p, _| {
        let obj = random_object(ring, p.branches, p.source_dim, p.source_seed);
        let t = random_endo(&obj, p.morphism_seed);
        (vec![violations_or_error(eigenvalue_violations(&t, &lambdas))], Some(t))
    })
}

fn fuzz_cc<R: Ring>(ring: &R, trials: u64, max_dim: u64, seed: u64) -> Vec<CheckReport> {
    if !ring.is_field() {
        return vec![unsupported_report(
            ring,
            "cc",
            seed,
            "characteristic cycles need field coefficients",
        )];
    }
    run_campaign(ring, &["cc"], trials, max_dim, seed, |p, _| {
        let src = random_object(ring, p.branches, p.source_dim, p.source_seed);
        let tgt = random_object(ring, p.branches, p.target_dim, p.target_seed);
        let t = random_morphism(&src, &tgt, p.morphism_seed);
        let mut violations = violations_or_error(cc_object_violations(&src));
        violations.extend(violations_or_error(cc_object_violations(&tgt)));
        violations.extend(violations_or_error(cc_factorization_violations(&t)));
        (vec![violations], Some(t))
    })
}

/// Run a suite of randomized checks over one ring. `All` concatenates every
/// suite's reports in a fixed order. Unsupported ring/suite combinations
/// yield a skip report instead of an error.
pub fn fuzz<R: Ring>(
    ring: &R,
    suite: Suite,
    trials: u64,
    max_dim: u64,
    seed: u64,
) -> Vec<CheckReport> {
    match suite {
        Suite::Support => fuzz_support(ring, trials, max_dim, seed),
        Suite::Corollary => fuzz_corollary(ring, trials, max_dim, seed),
        Suite::Endo => fuzz_endo(ring, trials, max_dim, seed),
        Suite::Eigen => fuzz_eigen(ring, trials, max_dim, seed),
        Suite::Cc => fuzz_cc(ring, trials, max_dim, seed),
        Suite::All => BASE_SUITES
            .iter()
            .flat_map(|s| fuzz(ring, *s, trials, max_dim, seed))
            .collect(),
    }
}

/// Ring-tagged entry point used by the command line: dispatches on the ring
/// tag ("q", "z", "fp:P") and runs the suite.
pub fn fuzz_tagged(
    ring_tag: &str,
    suite: Suite,
    trials: u64,
    max_dim: u64,
    seed: u64,
) -> Result<Vec<CheckReport>, PervError> {
    let kind = RingKind::parse(ring_tag).map_err(|e| PervError::Input(e.to_string()))?;
    Ok(match kind {
        RingKind::Rationals => fuzz(&Rationals, suite, trials, max_dim, seed),
        RingKind::Integers => fuzz(&Integers, suite, trials, max_dim, seed),
        RingKind::PrimeField(p) => {
            let f = PrimeField::new(p).map_err(|e| PervError::Input(e.to_string()))?;
            fuzz(&f, suite, trials, max_dim, seed)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_campaigns_pass_over_every_ring() {
        for tag in ["q", "z", "fp:5"] {
            for report in fuzz_tagged(tag, Suite::Support, 25, 4, 42).unwrap() {
                assert_eq!(report.verdict, Verdict::Pass, "{}", report.summary_line());
            }
            for report in fuzz_tagged(tag, Suite::Corollary, 25, 4, 43).unwrap() {
                assert_eq!(report.verdict, Verdict::Pass, "{}", report.summary_line());
            }
        }
    }

    #[test]
    fn field_only_suites_skip_integral_coefficients() {
        let reports = fuzz_tagged("z", Suite::Endo, 10, 4, 1).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].verdict, Verdict::UnsupportedRing);
        assert_eq!(reports[0].trials, 0);
        let eigen = fuzz_tagged("z", Suite::Eigen, 10, 4, 1).unwrap();
        assert_eq!(eigen[0].verdict, Verdict::UnsupportedRing);
    }

    #[test]
    fn endo_campaign_confirms_the_image_counterexample() {
        let reports = fuzz_tagged("fp:5", Suite::Endo, 20, 4, 7).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].suite, "endo");
        assert_eq!(reports[0].verdict, Verdict::Pass);
        assert_eq!(reports[1].suite, "endo-image-variant");
        assert_eq!(reports[1].verdict, Verdict::ExpectedCounterexampleConfirmed);
    }

    #[test]
    fn campaigns_are_byte_deterministic() {
        let a = fuzz_tagged("q", Suite::All, 15, 3, 9).unwrap();
        let b = fuzz_tagged("q", Suite::All, 15, 3, 9).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn unknown_suites_and_rings_are_input_errors() {
        assert!(Suite::parse("everything").is_err());
        let err = fuzz_tagged("fp:6", Suite::Cc, 1, 1, 0).unwrap_err();
        assert!(err.is_input_error());
    }
}
