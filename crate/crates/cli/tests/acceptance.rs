//! Acceptance gate for the whole pipeline. Each criterion below is one test
//! that ends by printing a single verdict line, so a full run reads as a
//! checklist. Tolerances and budgets are pinned as constants; loosening one
//! is a decision, not a drive-by edit.
//!
//! Criterion 12 exercises the torus fixture and is ignored by default
//! because its level-2 Groebner basis needs a release build to finish in
//! reasonable time. Run it with:
//!
//!     cargo test --release -p polarpoints-cli --test acceptance -- --ignored

use std::time::{Duration, Instant};

use num_traits::Signed;
use polarpoints_cli::parse::parse_system;
use polarpoints_core::driver::{
    default_width, dlsz_ratios, run_level, run_main, sample_sizes, AuditToggles, Drawn,
    LevelInput, LevelReport, LevelStatus, Mode, RunConfig, RunReport, Verdict,
};
use polarpoints_core::polycore::{
    int, jacobian, rat, ratio, MPoly, Rat, RatMatrix, Ring, UPoly,
};
use polarpoints_core::sysbuild::InputSystem;
use polarpoints_core::zdsolve::ZeroDimParam;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Residual tolerance at enclosure midpoints: |f(point)| < 2^-40.
const RESIDUAL_BOUND_LOG2: u32 = 40;
/// Seeds per randomized sweep.
const SWEEP_SEEDS: u64 = 50;
/// Minimum fraction of sweep seeds that must cover every component.
const COVERAGE_MIN: usize = 48; // 48/50 = 96% >= the pinned 95%
// Measured around 8s unoptimized; the pin leaves room for slower machines.
const CIRCLE_SWEEP_BUDGET: Duration = Duration::from_secs(15);
const SPHERE_BUDGET: Duration = Duration::from_secs(60);
const KERNEL_BUDGET: Duration = Duration::from_secs(30);
const KERNEL_CASES: usize = 1000;

fn fixture(name: &str) -> InputSystem {
    let path = format!("{}/tests/fixtures/{}.txt", env!("CARGO_MANIFEST_DIR"), name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path, e));
    parse_system(&text)
        .unwrap_or_else(|e| panic!("{}: {}", path, e))
        .into_input_system()
        .unwrap()
}

fn practical(seed: u64) -> RunConfig {
    RunConfig::new(ratio(1, 2), Mode::Practical, seed)
}

/// Sweep configuration: optional audits off to keep 50-seed loops inside
/// their time budgets. Mandatory certificates (membership, projection
/// inclusion, degree bound, output bounds) always run. The enclosure width
/// is pinned at 2^-100 so that midpoint residuals stay far under the 2^-40
/// tolerance even when coordinates reach the 2^42 range (practical-mode
/// slice values run up to 997 and the frame multiplies the magnitude).
fn sweep(seed: u64) -> RunConfig {
    let mut cfg = practical(seed);
    cfg.audits = AuditToggles { minor_oracle: false, h1: false, regularity: false, noether: false };
    cfg.width = Rat::new(int(1), int(1) << 100);
    cfg
}

fn residual_bound() -> Rat {
    ratio(1, 1i64 << RESIDUAL_BOUND_LOG2)
}

fn assert_points_certified(rep: &RunReport, label: &str) {
    let bound = residual_bound();
    for pt in rep.points() {
        for r in &pt.residuals {
            assert!(
                r.abs() < bound,
                "{}: residual {} at level {} exceeds 2^-{}",
                label,
                r,
                pt.level,
                RESIDUAL_BOUND_LOG2
            );
        }
    }
}

fn audit_verdict(lv: &LevelReport, name: &str) -> Option<Verdict> {
    lv.audits.iter().find(|a| a.name == name).map(|a| a.verdict)
}

/// The four defining identities of a univariate parameterization.
fn assert_param_identities(p: &ZeroDimParam, label: &str) {
    let q = &p.q;
    let d = q.degree().unwrap_or_else(|| panic!("{}: zero q", label));
    assert_eq!(q.leading(), Some(&rat(1)), "{}: q not monic", label);
    assert!(q.is_squarefree(), "{}: q not squarefree", label);
    for (j, vj) in p.v.iter().enumerate() {
        assert!(
            vj.degree().map_or(true, |dv| dv < d),
            "{}: deg v_{} not below deg q",
            label,
            j + 1
        );
    }
    let lhs = p.lambda.eval_upolys(&p.v).rem(q);
    let t = UPoly::from_ints(&[0, 1]);
    let rhs = t.mul_mod(&q.derivative(), q);
    assert_eq!(lhs, rhs, "{}: lambda(v) != T q' mod q", label);
}

#[test]
fn c01_parameterizations_satisfy_their_identities() {
    let mut checked = 0usize;
    for name in ["circle", "hyperbola", "sphere"] {
        let rep = run_main(&fixture(name), &practical(7)).unwrap();
        for lv in &rep.levels {
            if let Some(p) = &lv.raw_param {
                assert_param_identities(p, &format!("{} level {} raw", name, lv.level));
                checked += 1;
            }
            if let Some(p) = &lv.param {
                assert_param_identities(p, &format!("{} level {} mapped", name, lv.level));
            }
        }
    }
    assert!(checked >= 5, "expected parameterizations on most levels, saw {}", checked);
    println!("criterion 01 [pass] q monic+squarefree, deg v < deg q, lambda(v) = T q' mod q on {} parameterizations", checked);
}

#[test]
fn c02_circle_sweep_covers_the_component_with_certified_points() {
    let sys = fixture("circle");
    let start = Instant::now();
    let mut covered = 0usize;
    for seed in 0..SWEEP_SEEDS {
        let rep = run_main(&sys, &sweep(seed)).unwrap();
        assert!(rep.all_ok, "seed {}: mandatory audit failed", seed);
        assert_points_certified(&rep, &format!("seed {}", seed));
        for lv in &rep.levels {
            if let Some(p) = &lv.raw_param {
                let cap = 2usize.pow((3 - lv.level) as u32); // d^(n+p-i) with d=2, n=2, p=1
                assert!(
                    p.q.degree().unwrap_or(0) <= cap,
                    "seed {} level {}: deg q above {}",
                    seed,
                    lv.level,
                    cap
                );
                assert_eq!(audit_verdict(lv, "degree_bound"), Some(Verdict::Pass));
            }
        }
        if rep.total_points >= 1 {
            covered += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(covered >= COVERAGE_MIN, "component covered in only {}/{} seeds", covered, SWEEP_SEEDS);
    assert!(elapsed < CIRCLE_SWEEP_BUDGET, "sweep took {:?}", elapsed);
    println!(
        "criterion 02 [pass] circle covered in {}/{} seeds, residuals < 2^-{}, degrees within d^(n+p-i), {:?} total",
        covered, SWEEP_SEEDS, RESIDUAL_BOUND_LOG2, elapsed
    );
}

#[test]
fn c03_hyperbola_sweep_reaches_both_branches_and_the_fixed_frame_matches() {
    let sys = fixture("hyperbola");
    let mut covered = 0usize;
    for seed in 0..SWEEP_SEEDS {
        let rep = run_main(&sys, &sweep(seed)).unwrap();
        assert_points_certified(&rep, &format!("seed {}", seed));
        let has_pos = rep.points().any(|p| p.coordinates[0] > rat(0));
        let has_neg = rep.points().any(|p| p.coordinates[0] < rat(0));
        if has_pos && has_neg {
            covered += 1;
        } else {
            // A miss is only acceptable as an explicit, reported failure.
            assert!(
                rep.levels.iter().any(|l| l.status == LevelStatus::Failed),
                "seed {}: missed a branch without any level reporting failure",
                seed
            );
        }
    }
    assert!(covered >= COVERAGE_MIN, "both branches in only {}/{} seeds", covered, SWEEP_SEEDS);

    // Fixed-frame control with a hand-picked change of variables. In the
    // y-frame the equation becomes y2^2 - y1^2 - 1, so level 1 (critical
    // points of y1) has only complex solutions and the level-2 slice y1 = 2
    // must parameterize exactly y2^2 = 5.
    let a = RatMatrix::from_rows(&[vec![rat(1), rat(1)], vec![rat(-1), rat(1)]]);
    let drawn = Drawn {
        a_inv: a.inverse().unwrap(),
        a,
        sigma: vec![rat(2)],
        u: vec![rat(1)],
    };
    let mk = |level| LevelInput {
        sys: sys.clone(),
        level,
        drawn: drawn.clone(),
        budget: 8,
        width: default_width(),
        audits: AuditToggles::default(),
        pair_limit: 4000,
        seed: 0,
    };
    let l1 = run_level(&mk(1));
    assert_eq!(l1.status, LevelStatus::Solved, "level 1 should solve (complex pair)");
    assert!(l1.points.is_empty(), "level 1 critical points are complex in this frame");
    let l2 = run_level(&mk(2));
    assert_eq!(l2.status, LevelStatus::Solved);
    let q = &l2.raw_param.as_ref().unwrap().q;
    assert_eq!(q, &UPoly::from_ints(&[-5, 0, 1]), "expected q = T^2 - 5, got {:?}", q);
    assert_eq!(l2.points.len(), 2);
    let signs: Vec<bool> = l2.points.iter().map(|p| p.coordinates[0] > rat(0)).collect();
    assert!(signs.contains(&true) && signs.contains(&false), "slice must hit both branches");
    println!(
        "criterion 03 [pass] both branches in {}/{} seeds, fixed frame gives q = T^2 - 5 with one point per branch",
        covered, SWEEP_SEEDS
    );
}

#[test]
fn c04_sphere_run_is_certified_and_within_degree_budget() {
    let start = Instant::now();
    let rep = run_main(&fixture("sphere"), &practical(3)).unwrap();
    let elapsed = start.elapsed();
    assert!(rep.all_ok);
    assert!(rep.total_points >= 1, "sphere run found no real points");
    assert_points_certified(&rep, "sphere");
    for lv in &rep.levels {
        if let Some(p) = &lv.raw_param {
            let cap = 2usize.pow((4 - lv.level) as u32); // d^(n+p-i) with d=2, n=3, p=1
            assert!(p.q.degree().unwrap_or(0) <= cap);
            assert!(cap <= 16);
        }
    }
    assert!(elapsed < SPHERE_BUDGET, "sphere run took {:?}", elapsed);
    println!(
        "criterion 04 [pass] sphere: {} certified points, deg q within 2^(4-i) <= 16, {:?}",
        rep.total_points, elapsed
    );
}

#[test]
fn c05_minor_oracle_agrees_on_every_solved_level() {
    let mut checked = 0usize;
    for name in ["circle", "hyperbola"] {
        let sys = fixture(name);
        for seed in 1..=5u64 {
            let rep = run_main(&sys, &practical(seed)).unwrap();
            for lv in &rep.levels {
                if lv.raw_param.is_some() {
                    assert_eq!(
                        audit_verdict(lv, "minor_oracle"),
                        Some(Verdict::Pass),
                        "{} seed {} level {}: minor-formulation oracle disagreed",
                        name,
                        seed,
                        lv.level
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 10);
    println!(
        "criterion 05 [pass] Lagrange and minor formulations produced identical q on {} levels",
        checked
    );
}

/// A cubic plane curve y^2 = x^3 + ax + b, smooth iff 4a^3 + 27b^2 != 0.
fn elliptic(a: i64, b: i64) -> InputSystem {
    let ring = Ring::x_only(2);
    let x = MPoly::var(ring, 0);
    let y = MPoly::var(ring, 1);
    let x3 = &(&x * &x) * &x;
    let f = &(&(&y * &y) - &x3) - &(&x.scale(&rat(a)) + &MPoly::constant(ring, rat(b)));
    InputSystem::new(vec![f]).unwrap()
}

/// The same family one dimension up: y^2 + z^2 = x^3 + ax + b.
fn elliptic_surface(a: i64, b: i64) -> InputSystem {
    let ring = Ring::x_only(3);
    let x = MPoly::var(ring, 0);
    let y = MPoly::var(ring, 1);
    let z = MPoly::var(ring, 2);
    let x3 = &(&x * &x) * &x;
    let f = &(&(&(&y * &y) + &(&z * &z)) - &x3)
        - &(&x.scale(&rat(a)) + &MPoly::constant(ring, rat(b)));
    InputSystem::new(vec![f]).unwrap()
}

fn smooth_coeffs(rng: &mut ChaCha12Rng) -> (i64, i64) {
    loop {
        let a = rng.gen_range(-5..=5i64);
        let b = rng.gen_range(-5..=5i64);
        if 4 * a.pow(3) + 27 * b.pow(2) != 0 {
            return (a, b);
        }
    }
}

#[test]
fn c06_projection_inclusion_holds_on_fixtures_and_random_instances() {
    let mut checked = 0usize;
    let mut check_rep = |rep: &RunReport, label: &str| {
        for lv in &rep.levels {
            assert_ne!(lv.status, LevelStatus::Failed, "{} level {}: {:?}", label, lv.level, lv.fail_reason);
            if lv.raw_param.is_some() {
                assert_eq!(
                    audit_verdict(lv, "projection_inclusion"),
                    Some(Verdict::Pass),
                    "{} level {}: inclusion audit did not pass",
                    label,
                    lv.level
                );
                checked += 1;
            }
        }
    };
    for name in ["circle", "hyperbola", "sphere"] {
        let rep = run_main(&fixture(name), &practical(2)).unwrap();
        check_rep(&rep, name);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for i in 0..10u64 {
        let (a, b) = smooth_coeffs(&mut rng);
        let rep = run_main(&elliptic(a, b), &sweep(i)).unwrap();
        check_rep(&rep, &format!("curve a={} b={}", a, b));
    }
    for i in 0..10u64 {
        let (a, b) = smooth_coeffs(&mut rng);
        let rep = run_main(&elliptic_surface(a, b), &sweep(i)).unwrap();
        check_rep(&rep, &format!("surface a={} b={}", a, b));
    }
    assert!(checked >= 20);
    println!(
        "criterion 06 [pass] every emitted parameterization vanished on its defining fiber system ({} levels, 3 fixtures + 20 random smooth instances)",
        checked
    );
}

#[test]
fn c07_regularity_passes_on_smooth_fixtures() {
    // The torus fixture is excluded on purpose: its complex locus has two
    // singular points, so its level-1 fiber honestly fails this audit while
    // the emitted real points remain certified (criterion 12 covers it).
    let mut checked = 0usize;
    for name in ["circle", "hyperbola", "sphere"] {
        for seed in 1..=2u64 {
            let rep = run_main(&fixture(name), &practical(seed)).unwrap();
            for lv in &rep.levels {
                if lv.raw_param.is_some() {
                    assert_eq!(
                        audit_verdict(lv, "regularity"),
                        Some(Verdict::Pass),
                        "{} seed {} level {}",
                        name,
                        seed,
                        lv.level
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 10);
    println!(
        "criterion 07 [pass] fiber Jacobian determinant coprime to q on {} solved levels",
        checked
    );
}

#[test]
fn c08_sample_sizes_match_their_closed_forms() {
    let s22 = sample_sizes(2, 2, &ratio(1, 2)).unwrap();
    assert_eq!(s22.s_size, int(335544320));
    assert_eq!(s22.t_size, int(4096));
    assert_eq!(s22.r_size, int(256));
    assert_eq!(s22.k, 4);
    let s32 = sample_sizes(3, 2, &ratio(1, 2)).unwrap();
    assert_eq!(s32.s_size, int(1159641169920));
    println!("criterion 08 [pass] sample sizes reproduce the frozen closed-form values for (n,d) = (2,2) and (3,2)");
}

#[test]
fn c09_dlsz_ratios_stay_under_a_quarter_epsilon() {
    let mut checked = 0usize;
    for n in 2..=3usize {
        for d in 2..=3u64 {
            for eps in [ratio(1, 2), ratio(1, 4), ratio(1, 10)] {
                let sets = sample_sizes(n, d, &eps).unwrap();
                let quarter = &eps / &rat(4);
                for (i, r) in dlsz_ratios(n, d, &sets).iter().enumerate() {
                    assert!(
                        r <= &quarter,
                        "n={} d={} eps={}: ratio {} is {} > eps/4",
                        n,
                        d,
                        eps,
                        i,
                        r
                    );
                    checked += 1;
                }
            }
        }
    }
    println!(
        "criterion 09 [pass] all {} degree/size ratios at most eps/4 across the (n,d,eps) grid",
        checked
    );
}

fn rand_poly(rng: &mut ChaCha12Rng, ring: Ring) -> MPoly {
    let mut f = MPoly::zero(ring);
    for _ in 0..rng.gen_range(1..=4usize) {
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-9..=9i64);
        }
        let mut term = MPoly::constant(ring, rat(c));
        for j in 0..ring.nvars() {
            for _ in 0..rng.gen_range(0..=2u32) {
                term = &term * &MPoly::var(ring, j);
            }
        }
        f = &f + &term;
    }
    f
}

fn rand_invertible(rng: &mut ChaCha12Rng, n: usize) -> RatMatrix {
    loop {
        let rows: Vec<Vec<Rat>> =
            (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3i64))).collect()).collect();
        let a = RatMatrix::from_rows(&rows);
        if a.is_invertible() {
            return a;
        }
    }
}

#[test]
fn c10_kernel_identities_hold_on_a_thousand_random_cases() {
    let start = Instant::now();
    let mut rng = ChaCha12Rng::seed_from_u64(2026);

    // Product rule.
    for _ in 0..KERNEL_CASES {
        let ring = Ring::x_only(rng.gen_range(1..=3usize));
        let (f, g) = (rand_poly(&mut rng, ring), rand_poly(&mut rng, ring));
        let j = rng.gen_range(0..ring.nvars());
        let lhs = (&f * &g).partial_derivative(j);
        let rhs = &(&f.partial_derivative(j) * &g) + &(&f * &g.partial_derivative(j));
        assert_eq!(lhs, rhs);
    }

    // Change of variables inverts.
    for _ in 0..KERNEL_CASES {
        let ring = Ring::x_only(rng.gen_range(1..=3usize));
        let f = rand_poly(&mut rng, ring);
        let a = rand_invertible(&mut rng, ring.nvars());
        let back = f.change_of_vars(&a).change_of_vars(&a.inverse().unwrap());
        assert_eq!(back, f);
    }

    // Chain rule: jac(F o A) = (jac F o A) * A.
    for _ in 0..KERNEL_CASES {
        let ring = Ring::x_only(rng.gen_range(1..=3usize));
        let n = ring.nvars();
        let polys: Vec<MPoly> =
            (0..rng.gen_range(1..=2usize)).map(|_| rand_poly(&mut rng, ring)).collect();
        let a = rand_invertible(&mut rng, n);
        let composed: Vec<MPoly> = polys.iter().map(|f| f.change_of_vars(&a)).collect();
        let lhs = jacobian(&composed);
        let jf = jacobian(&polys);
        for i in 0..polys.len() {
            for j in 0..n {
                let mut acc = MPoly::zero(ring);
                for k in 0..n {
                    acc = &acc + &jf.get(i, k).change_of_vars(&a).scale(a.get(k, j));
                }
                assert_eq!(lhs.get(i, j), &acc, "entry ({}, {})", i, j);
            }
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed < KERNEL_BUDGET, "kernel suite took {:?}", elapsed);
    println!(
        "criterion 10 [pass] product rule, change-of-vars round trip, chain rule on {} cases each, {:?}",
        KERNEL_CASES, elapsed
    );
}

#[test]
fn c11_results_are_byte_identical_across_runs_and_thread_counts() {
    let bin = env!("CARGO_BIN_EXE_polarpoints");
    let input = format!("{}/tests/fixtures/circle.txt", env!("CARGO_MANIFEST_DIR"));
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let status = std::process::Command::new(bin)
            .args(["--input", &input, "--seed", "7", "--output"])
            .arg(&out)
            .env("THREADS", threads)
            .stdout(std::process::Stdio::null())
            .status()
            .unwrap();
        assert!(status.success(), "exit {:?} with THREADS={}", status.code(), threads);
        std::fs::read(&out).unwrap()
    };
    let first = run("a.json", "1");
    let second = run("b.json", "1");
    let threaded = run("c.json", "3");
    assert_eq!(first, second, "same seed, same thread count, different bytes");
    assert_eq!(first, threaded, "thread count leaked into the result file");
    assert!(!first.is_empty());
    println!(
        "criterion 11 [pass] result files byte-identical across repeat runs and THREADS=1 vs 3 ({} bytes)",
        first.len()
    );
}

#[test]
#[ignore = "needs a release build: each torus seed spends seconds in the level-2 basis"]
fn c12_torus_stretch_emits_certified_points_over_ten_seeds() {
    let sys = fixture("torus");
    for seed in 0..10u64 {
        let mut cfg = practical(seed);
        cfg.width = Rat::new(int(1), int(1) << 100);
        let rep = run_main(&sys, &cfg).unwrap();
        assert!(rep.all_ok, "seed {}: a mandatory audit failed", seed);
        assert!(rep.total_points >= 1, "seed {}: no real points on the torus", seed);
        assert_points_certified(&rep, &format!("torus seed {}", seed));
        for lv in &rep.levels {
            match lv.status {
                LevelStatus::Failed => {
                    assert!(lv.fail_reason.is_some(), "seed {}: silent failure", seed)
                }
                _ => {
                    if let Some(p) = &lv.raw_param {
                        assert!(p.q.degree().unwrap_or(0) <= 256); // d^(n+p) = 4^4
                    }
                }
            }
        }
    }
    println!("criterion 12 [pass] torus: certified nonempty output for 10/10 seeds, deg q within 4^4");
}
