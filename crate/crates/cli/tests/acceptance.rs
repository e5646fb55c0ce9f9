//! Acceptance gate: one test per criterion, each printing a single
//! pass line (a failure panics, so the line doubles as the verdict).
//!
//! Every criterion exercises the shipped `pervcalc` binary where a
//! command exists for the job, and the library crates where the
//! criterion is about internals (exact sequences, Smith normal form,
//! the module order).  Budgets are asserted with `Instant`, so a
//! regression that blows a runtime bound fails the build, not just a
//! benchmark report.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use exact_linalg::{
    det, direct_sum, exactness_check, module_leq, smith, FGModule, Integers, Mat, ModuleMap,
    Rationals, Ring, SplitMix64,
};
use perv_core::perv_factorization;
use serde_json::Value;
use theorem_suite::{check_endo_counterexample, gallery, Verdict};

const BIN: &str = env!("CARGO_BIN_EXE_pervcalc");

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args)
        .env_remove("PERVCALC_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn pervcalc");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .expect("piped stdin")
            .write_all(text.as_bytes())
            .expect("feed stdin");
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("collect pervcalc output")
}

fn run_ok(args: &[&str], stdin: Option<&str>) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "pervcalc {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn run_json(args: &[&str], stdin: Option<&str>) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&run_ok(&full, stdin)).expect("valid JSON output")
}

fn gallery_text(name: &str, ring: &str) -> String {
    run_ok(&["gallery", "--name", name, "--ring", ring], None)
}

/// The factor part (kernel/image/cokernel) with the given role.
fn part<'a>(factor: &'a Value, role: &str) -> &'a Value {
    factor["parts"]
        .as_array()
        .expect("parts array")
        .iter()
        .find(|p| p["role"] == role)
        .unwrap_or_else(|| panic!("no {role} part"))
}

/// Every entry of both induced stalk matrices at `loc` is literally "0"
/// (an empty matrix counts: there is nothing nonzero in it).
fn stalk_maps_vanish(morphism_json: &str, loc: &str) {
    let v = run_json(&["stalk", "--at", loc], Some(morphism_json));
    for degree in ["minus_one", "zero"] {
        let entries = v[degree]["matrix"].as_array().expect("matrix rows");
        for row in entries {
            for e in row.as_array().expect("matrix row") {
                assert_eq!(e, "0", "nonzero induced stalk map at {loc}, degree {degree}");
            }
        }
    }
}

fn write_temp(label: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!(
        "pervcalc-acceptance-{label}-{}.json",
        std::process::id()
    ));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

fn finish(criterion: u32, label: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its {budget:?} budget: took {elapsed:?}"
    );
    println!("criterion {criterion} ({label}): pass in {} ms", elapsed.as_millis());
}

/// Factoring the resolution morphism over ℤ reproduces every number the
/// construction promises: the kernel is the origin skyscraper with
/// Ψ = 0 and Φ ≅ ℤ, the stalks of the shifted constant sheaf and of the
/// intersection complex come out rank-exact, the resolution morphism is
/// surjective, and the skyscraper inclusion is injective with all of its
/// induced stalk maps zero.
#[test]
fn criterion_1_resolution_factorization_over_the_integers() {
    let started = Instant::now();
    let t_json = gallery_text("t_resolution", "z");
    let fac = run_json(&["factor"], Some(&t_json));

    assert_eq!(fac["ring"], "z");
    assert_eq!(fac["classification"]["surjective"], true);
    assert_eq!(fac["classification"]["injective"], false);

    let kernel = part(&fac, "kernel");
    assert_eq!(kernel["display"], "(0, 0; Z)");
    assert_eq!(kernel["name"], "m_shift");
    // Structural match is how the kernel is named; an explicit
    // isomorphism search must agree.
    let kernel_file = serde_json::to_string(&kernel["object"]).unwrap();
    let kernel_path = write_temp("res-kernel", &kernel_file);
    let m_path = write_temp("res-mshift", &gallery_text("m_shift", "z"));
    let iso = run_json(
        &[
            "iso",
            "--source",
            kernel_path.to_str().unwrap(),
            "--target",
            m_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(iso["verdict"], "isomorphic");

    // Stalks of the source (shifted constant sheaf on the node).
    let rx = gallery_text("rx_shift", "z");
    let at_origin = run_json(&["stalk", "--at", "origin"], Some(&rx));
    assert_eq!(at_origin["stalk"]["minus_one"]["display"], "Z");
    assert_eq!(at_origin["stalk"]["zero"]["display"], "0");
    for loc in ["branch:1", "branch:2"] {
        let on_branch = run_json(&["stalk", "--at", loc], Some(&rx));
        assert_eq!(on_branch["stalk"]["minus_one"]["display"], "Z");
        assert_eq!(on_branch["stalk"]["zero"]["display"], "0");
    }

    // The intersection complex sees rank two at the singular point.
    let ic = gallery_text("ic_x", "z");
    let ic_origin = run_json(&["stalk", "--at", "origin"], Some(&ic));
    assert_eq!(ic_origin["stalk"]["minus_one"]["display"], "Z^2");
    assert_eq!(ic_origin["stalk"]["zero"]["display"], "0");

    // The skyscraper inclusion is injective and invisible on every stalk
    // (the resolution morphism, by contrast, is the identity on branches).
    let s_json = gallery_text("s_inclusion", "z");
    let s_fac = run_json(&["factor"], Some(&s_json));
    assert_eq!(s_fac["classification"]["injective"], true);
    assert_eq!(s_fac["classification"]["surjective"], false);
    for loc in ["origin", "branch:1", "branch:2"] {
        stalk_maps_vanish(&s_json, loc);
    }

    finish(1, "resolution factorization over Z", started, Duration::from_secs(1));
}

/// Vanishing cycles over ℤ: the shifted constant sheaf carries a copy
/// of ℤ, the intersection complex carries nothing, the kernel of the
/// resolution morphism carries the difference, and splicing the
/// factorization through Φ gives an exact four-term sequence.
#[test]
fn criterion_2_vanishing_cycle_values_over_the_integers() {
    let started = Instant::now();
    let ring = Integers;
    let entry = gallery(&ring, "t_resolution").expect("gallery entry");
    let t = entry.as_morphism().expect("a morphism entry");

    let phi_rx = t.source().phi();
    let phi_ic = t.target().phi();
    assert_eq!(phi_rx.describe(), "Z");
    assert!(phi_ic.is_zero_module());

    let fac = perv_factorization(t).expect("resolution morphism factors");
    assert_eq!(fac.kernel.phi().describe(), "Z");

    // 0 → Φ(ker) → Φ(source) → Φ(target) → Φ(coker) → 0, checked for
    // exactness at all four interior modules.
    let z0 = FGModule::free(&ring, 0);
    let seq = vec![
        ModuleMap::zero_map(z0.clone(), fac.kernel.phi().clone()),
        fac.kernel_inclusion.vanishing_map().clone(),
        t.vanishing_map().clone(),
        fac.cokernel_projection.vanishing_map().clone(),
        ModuleMap::zero_map(fac.cokernel.phi().clone(), z0),
    ];
    let verdicts = exactness_check(&seq).expect("composable sequence");
    assert_eq!(verdicts, vec![true; 4], "vanishing-cycle sequence not exact");

    finish(2, "vanishing cycles over Z", started, Duration::from_secs(1));
}

/// The square-zero endomorphism over ℚ: image, kernel and cokernel are
/// identified by name, the kernel and cokernel are non-isomorphic, yet
/// their characteristic cycles agree — and the endomorphism is
/// invisible on every stalk.
#[test]
fn criterion_3_square_zero_endomorphism_over_the_rationals() {
    let started = Instant::now();
    let t_json = gallery_text("endo_example", "q");
    let fac = run_json(&["factor"], Some(&t_json));
    assert_eq!(fac["ring"], "q");

    let image = part(&fac, "image");
    assert_eq!(image["name"], "m_shift");
    assert_eq!(image["display"], "(0, 0; Q)");

    let kernel = part(&fac, "kernel");
    assert_eq!(kernel["name"], "rx_shift");

    let cokernel = part(&fac, "cokernel");
    assert_eq!(cokernel["name"], "ic_x ⊕ m_shift");

    // The endomorphism induces only zero maps on stalks.
    for loc in ["origin", "branch:1", "branch:2"] {
        stalk_maps_vanish(&t_json, loc);
    }

    // Kernel and cokernel are distinguished by an invariant (exit 1)…
    let k_path = write_temp(
        "endo-kernel",
        &serde_json::to_string(&kernel["object"]).unwrap(),
    );
    let c_path = write_temp(
        "endo-cokernel",
        &serde_json::to_string(&cokernel["object"]).unwrap(),
    );
    let iso = run(
        &[
            "--json",
            "iso",
            "--source",
            k_path.to_str().unwrap(),
            "--target",
            c_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(iso.status.code(), Some(1), "kernel ≅ cokernel would be wrong");
    let iso_v: Value = serde_json::from_slice(&iso.stdout).unwrap();
    assert_eq!(iso_v["verdict"], "distinguished");

    // …while their characteristic cycles coincide: (1, 1; 1).
    for p in [kernel, cokernel] {
        assert_eq!(p["cc"]["branches"], serde_json::json!([1, 1]));
        assert_eq!(p["cc"]["origin"], 1);
    }

    finish(3, "square-zero endomorphism over Q", started, Duration::from_secs(1));
}

/// The randomized theorem suites: support in all three modes over ℚ,
/// 𝔽₅ and ℤ, the endomorphism and eigenvalue suites over the two
/// fields, and the characteristic-cycle suite over ℚ — a thousand
/// seeded trials each, all inside one minute.
#[test]
fn criterion_4_randomized_suites_pass_at_scale() {
    let started = Instant::now();
    let configs: &[(&str, &str)] = &[
        ("support", "q"),
        ("support", "fp:5"),
        ("support", "z"),
        ("endo", "q"),
        ("endo", "fp:5"),
        ("eigen", "q"),
        ("eigen", "fp:5"),
        ("cc", "q"),
    ];
    for (suite, ring) in configs {
        let v = run_json(
            &[
                "check", "--suite", suite, "--ring", ring, "--trials", "1000", "--max-dim", "6",
                "--seed", "42",
            ],
            None,
        );
        assert_eq!(v["overall"], "pass", "{suite} over {ring} failed");
        assert_eq!(v["trials"], 1000);
        for report in v["reports"].as_array().expect("reports") {
            let verdict = report["verdict"].as_str().unwrap();
            assert!(
                verdict == "pass" || verdict == "expected-counterexample-confirmed",
                "{suite} over {ring}: unexpected verdict {verdict}"
            );
            assert!(
                report.get("failures").is_none(),
                "{suite} over {ring} carries failure witnesses"
            );
        }
    }
    finish(4, "eight 1000-trial suites", started, Duration::from_secs(60));
}

/// Negative regression: the image-variant of the endomorphism theorem
/// is expected to fail on the square-zero example, and the checker must
/// say so.  A plain pass here means the counterexample was lost, which
/// fails the build.
#[test]
fn criterion_5_image_variant_counterexample_is_confirmed() {
    let started = Instant::now();

    let report = check_endo_counterexample(&Rationals).expect("field coefficients");
    assert_eq!(report.verdict, Verdict::ExpectedCounterexampleConfirmed);
    assert_ne!(
        report.verdict,
        Verdict::Pass,
        "the image-variant must NOT hold on the square-zero example"
    );

    // The CLI surfaces the same verdict inside the endo suite.
    let v = run_json(
        &["check", "--suite", "endo", "--ring", "q", "--trials", "1", "--seed", "42"],
        None,
    );
    let variant = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["suite"] == "endo-image-variant")
        .expect("image-variant report present");
    assert_eq!(variant["verdict"], "expected-counterexample-confirmed");

    finish(5, "image-variant counterexample", started, Duration::from_secs(5));
}

/// The exact-linalg property suite at scale: Smith reconstruction with
/// unimodular transforms on ten thousand random integer matrices, and
/// the direct-summand order axioms plus cancellation on ten thousand
/// random ℤ-modules.
#[test]
fn criterion_6_exact_linalg_property_suite() {
    let started = Instant::now();
    let ring = Integers;

    let mut rng = SplitMix64::new(0x5EED_CAFE);
    for _ in 0..10_000 {
        let rows = rng.below(9) as usize;
        let cols = rng.below(9) as usize;
        let a = Mat::from_fn(&ring, rows, cols, |_, _| ring.sample(&mut rng));
        let s = smith(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d, "U·A·V ≠ D");
        assert_eq!(s.u.mul(&s.u_inv), Mat::identity(&ring, rows), "U not invertible");
        assert_eq!(s.v.mul(&s.v_inv), Mat::identity(&ring, cols), "V not invertible");
        if rows > 0 {
            let du = det(&s.u);
            assert!(du == ring.one() || du == ring.from_i64(-1), "U not unimodular");
        }
        if cols > 0 {
            let dv = det(&s.v);
            assert!(dv == ring.one() || dv == ring.from_i64(-1), "V not unimodular");
        }
        // Diagonal with a divisibility chain.
        for i in 0..rows.min(cols).saturating_sub(1) {
            let (d0, d1) = (s.d.at(i, i), s.d.at(i + 1, i + 1));
            if d0 == &ring.zero() {
                assert_eq!(d1, &ring.zero(), "chain breaks after a zero");
            } else {
                assert_eq!(d1 % d0, ring.zero(), "chain breaks");
            }
        }
    }

    // Random ℤ-modules via random presentations (canonicalized on
    // construction, so structural equality is isomorphism).
    let mut mods = Vec::with_capacity(10_000);
    let mut mrng = SplitMix64::new(0xD1CE_D1CE);
    for _ in 0..10_000 {
        let gens = mrng.below(4) as usize;
        let rels = mrng.below(5) as usize;
        let pres = Mat::from_fn(&ring, gens, rels, |_, _| {
            ring.from_i64(mrng.below(9) as i64 - 4)
        });
        mods.push(exact_linalg::canonicalize_presentation(&ring, gens, &pres).module);
    }
    for w in mods.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        assert!(module_leq(a, a).unwrap(), "order not reflexive");
        let ab = module_leq(a, b).unwrap();
        let ba = module_leq(b, a).unwrap();
        if ab && ba {
            assert_eq!(a, b, "order not antisymmetric");
        }
        if ab && module_leq(b, c).unwrap() {
            assert!(module_leq(a, c).unwrap(), "order not transitive");
        }
        // A summand is below the sum, and cancellation holds: if the
        // sum collapses back onto a then nothing was added.
        let sum = direct_sum(a, b);
        assert!(module_leq(a, &sum).unwrap(), "summand not below its sum");
        assert!(module_leq(b, &sum).unwrap(), "summand not below its sum");
        if sum == *a {
            assert!(b.is_zero_module(), "M ⊕ P ≅ M with P ≠ 0");
        }
        if b.is_zero_module() {
            assert_eq!(sum, *a, "adding 0 changed the module");
        }
    }

    finish(6, "Smith + module-order properties", started, Duration::from_secs(30));
}

/// Determinism: re-running a criterion's command with the same seed
/// yields byte-identical output.  One representative per command
/// family, JSON and human renderings alike.
#[test]
fn criterion_7_reports_are_byte_identical_across_reruns() {
    let started = Instant::now();

    let t_res = gallery_text("t_resolution", "z");
    let endo = gallery_text("endo_example", "q");
    let fac = run_json(&["factor"], Some(&endo));
    let k_path = write_temp(
        "det-kernel",
        &serde_json::to_string(&part(&fac, "kernel")["object"]).unwrap(),
    );
    let c_path = write_temp(
        "det-cokernel",
        &serde_json::to_string(&part(&fac, "cokernel")["object"]).unwrap(),
    );
    let k = k_path.to_str().unwrap();
    let c = c_path.to_str().unwrap();

    let reruns: &[(&[&str], Option<&str>)] = &[
        (&["--json", "factor"], Some(&t_res)),
        (&["factor"], Some(&t_res)),
        (&["--json", "stalk", "--at", "origin"], Some(&endo)),
        (&["--json", "factor"], Some(&endo)),
        (&["--json", "iso", "--source", k, "--target", c, "--seed", "42"], None),
        (
            &["--json", "check", "--suite", "support", "--ring", "q", "--trials", "1000",
              "--max-dim", "6", "--seed", "42"],
            None,
        ),
        (
            &["--json", "check", "--suite", "endo", "--ring", "fp:5", "--trials", "1000",
              "--max-dim", "6", "--seed", "42"],
            None,
        ),
        (
            &["--json", "check", "--suite", "cc", "--ring", "q", "--trials", "1000",
              "--max-dim", "6", "--seed", "42"],
            None,
        ),
    ];
    for (args, stdin) in reruns {
        let first = run(args, *stdin);
        let second = run(args, *stdin);
        assert_eq!(first.status.code(), second.status.code(), "{args:?} exit drifted");
        assert_eq!(first.stdout, second.stdout, "{args:?} output drifted");
    }

    finish(7, "byte-identical reruns", started, Duration::from_secs(30));
}
