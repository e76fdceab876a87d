//! Orchestration of a full run: sample-size bookkeeping, the random draw,
//! one Lagrange fiber per level 1..δ+1, zero-dimensional solving, runtime
//! audits, real-point extraction, and the map back to the input frame.
//!
//! Levels are independent once the draw is fixed. `prepare` produces one
//! self-contained `LevelInput` per level and `run_level` is a pure function
//! of it, so callers may run levels in any order or in parallel and still
//! get byte-identical reports.

mod audit;
mod sample;

pub use audit::{
    audit_membership, audit_minor_oracle, audit_projection_inclusion, check_h1,
    check_noether_fiber, check_regularity, AuditRecord, Verdict,
};
pub use sample::{
    dlsz_degree_bounds, dlsz_ratios, draw_parameters, drawn_height_log, practical_sizes,
    repetition_count, sample_sizes, Drawn, SampleSets,
};

use alloc::format;
use num_traits::Signed;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::polycore::{rat, Height, Int, Rat};
use crate::realize::{
    extract_points, fill_residuals, map_back_param, map_back_points, RealPoint,
};
use crate::sysbuild::{build_fiber_system, BuildError, InputSystem};
use crate::zdsolve::{
    project_param, solve_zero_dim, LambdaPolicy, SolveDiagnostics, SolveStatus, ZeroDimParam,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DriverError {
    /// ε must satisfy 0 < ε < 1.
    InvalidEpsilon,
    /// The certified sample sizes assume d ≥ 2.
    DegreeTooSmall { d: u64 },
    Build(BuildError),
    /// 32 draws of A in a row were singular. Practically unreachable.
    SingularDraws,
}

impl From<BuildError> for DriverError {
    fn from(e: BuildError) -> Self {
        DriverError::Build(e)
    }
}

impl core::fmt::Display for DriverError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DriverError::InvalidEpsilon => write!(f, "epsilon must lie strictly between 0 and 1"),
            DriverError::DegreeTooSmall { d } => {
                write!(f, "certified sample sizes need total degree at least 2, got {}", d)
            }
            DriverError::Build(e) => write!(f, "{}", e),
            DriverError::SingularDraws => write!(f, "could not draw an invertible matrix"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// Sample sizes straight from the probability analysis. Astronomical,
    /// but every claimed bound holds with probability at least 1 − ε.
    Certified,
    /// Entries drawn from {1..997}. The success probability bound no longer
    /// applies; the runtime audits carry the burden of proof instead.
    Practical,
}

impl core::fmt::Display for Mode {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Mode::Certified => write!(f, "certified"),
            Mode::Practical => write!(f, "practical"),
        }
    }
}

/// Which optional audits to run. The membership check, the projection
/// inclusion check, and the degree bound are not listed: they are mandatory.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AuditToggles {
    pub minor_oracle: bool,
    pub h1: bool,
    pub regularity: bool,
    pub noether: bool,
}

impl Default for AuditToggles {
    fn default() -> Self {
        AuditToggles { minor_oracle: true, h1: true, regularity: true, noether: true }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub epsilon: Rat,
    pub mode: Mode,
    pub seed: u64,
    /// Floor for the separating-form budget; the effective budget is
    /// max(retry_budget, k) with k the repetition count from the analysis.
    pub retry_budget: usize,
    /// Width cap for each coordinate enclosure of every reported point.
    pub width: Rat,
    pub audits: AuditToggles,
    /// S-pair reduction cap for the Groebner-based audits, which face
    /// systems (minors, all-variable slices) outside the solver's contract.
    pub pair_limit_audit: usize,
}

pub fn default_width() -> Rat {
    Rat::new(Int::from(1), Int::from(1u64 << 53))
}

impl RunConfig {
    pub fn new(epsilon: Rat, mode: Mode, seed: u64) -> Self {
        RunConfig {
            epsilon,
            mode,
            seed,
            retry_budget: 8,
            width: default_width(),
            audits: AuditToggles::default(),
            pair_limit_audit: 4000,
        }
    }
}

/// Everything one level needs, with no shared state. Cloneable and Send so
/// a frontend can fan levels out over threads.
#[derive(Clone, Debug)]
pub struct LevelInput {
    pub sys: InputSystem,
    pub level: usize,
    pub drawn: Drawn,
    pub budget: usize,
    pub width: Rat,
    pub audits: AuditToggles,
    pub pair_limit: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LevelStatus {
    /// A verified parameterization was produced (possibly with no real points).
    Solved,
    /// The fiber has no solutions even over ℂ; nothing to report, nothing wrong.
    EmptyFiber,
    /// The draw violated a property the algorithm depends on.
    Failed,
}

impl core::fmt::Display for LevelStatus {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LevelStatus::Solved => write!(f, "solved"),
            LevelStatus::EmptyFiber => write!(f, "empty-fiber"),
            LevelStatus::Failed => write!(f, "failed"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LevelReport {
    pub level: usize,
    pub status: LevelStatus,
    pub fail_reason: Option<String>,
    /// Parameterization of the X-projection, still in the y-frame.
    pub raw_param: Option<ZeroDimParam>,
    /// The same parameterization mapped through x = Ay.
    pub param: Option<ZeroDimParam>,
    /// Real points in the y-frame, residuals against F^A.
    pub raw_points: Vec<RealPoint>,
    /// Real points in the input frame, residuals against F.
    pub points: Vec<RealPoint>,
    pub diagnostics: Option<SolveDiagnostics>,
    pub audits: Vec<AuditRecord>,
}

impl LevelReport {
    fn fresh(level: usize) -> Self {
        LevelReport {
            level,
            status: LevelStatus::Failed,
            fail_reason: None,
            raw_param: None,
            param: None,
            raw_points: Vec::new(),
            points: Vec::new(),
            diagnostics: None,
            audits: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub n: usize,
    pub p: usize,
    pub d: u64,
    /// ln of the largest input coefficient.
    pub b_log: f64,
    pub delta: usize,
    pub epsilon: Rat,
    pub mode: Mode,
    pub seed: u64,
    pub sets: SampleSets,
    /// Degree/sample-size ratios for the three DLSZ applications, recorded
    /// in certified mode where each is guaranteed at most ε/4.
    pub dlsz: Option<[Rat; 3]>,
    pub drawn: Drawn,
    pub warnings: Vec<String>,
    pub levels: Vec<LevelReport>,
    /// Run-wide audits: Noether fiber, output bounds, DLSZ budgets.
    pub run_audits: Vec<AuditRecord>,
    pub total_points: usize,
    pub all_ok: bool,
}

impl RunReport {
    pub fn points(&self) -> impl Iterator<Item = &RealPoint> {
        self.levels.iter().flat_map(|l| l.points.iter())
    }
}

/// Sizes, draw, and one independent work unit per level 1..δ+1.
pub fn prepare(
    sys: &InputSystem,
    cfg: &RunConfig,
) -> Result<(SampleSets, Option<[Rat; 3]>, Drawn, Vec<String>, Vec<LevelInput>), DriverError> {
    let mut warnings = Vec::new();
    let sets = match cfg.mode {
        Mode::Certified => sample_sizes(sys.n, sys.d, &cfg.epsilon)?,
        Mode::Practical => {
            if sys.d < 2 {
                warnings.push(String::from(
                    "total degree below 2: the success-probability analysis does not apply",
                ));
            }
            practical_sizes(sys.n, &cfg.epsilon)?
        }
    };
    let dlsz = match cfg.mode {
        Mode::Certified => {
            let ratios = dlsz_ratios(sys.n, sys.d, &sets);
            let quarter = &cfg.epsilon / &rat(4);
            for r in &ratios {
                debug_assert!(r <= &quarter, "certified sizes violate their own budget");
            }
            Some(ratios)
        }
        Mode::Practical => None,
    };
    let drawn = draw_parameters(sys.n, sys.delta(), sys.p, &sets, cfg.seed)?;
    let budget = cfg.retry_budget.max(sets.k as usize);
    let levels = (1..=sys.delta() + 1)
        .map(|level| LevelInput {
            sys: sys.clone(),
            level,
            drawn: drawn.clone(),
            budget,
            width: cfg.width.clone(),
            audits: cfg.audits,
            pair_limit: cfg.pair_limit_audit,
            seed: cfg.seed,
        })
        .collect();
    Ok((sets, dlsz, drawn, warnings, levels))
}

/// One level, start to finish. Pure in `input`: the λ randomness comes from
/// a generator seeded with the run seed on stream 1 + level, so reports do
/// not depend on scheduling.
pub fn run_level(input: &LevelInput) -> LevelReport {
    let mut rep = LevelReport::fresh(input.level);
    let sys = &input.sys;
    let fib = match build_fiber_system(sys, input.level, &input.drawn.a, &input.drawn.sigma, &input.drawn.u)
    {
        Ok(f) => f,
        Err(e) => {
            rep.fail_reason = Some(format!("{}", e));
            return rep;
        }
    };

    let mut rng = ChaCha12Rng::seed_from_u64(input.seed);
    rng.set_stream(1 + input.level as u64);
    let out = solve_zero_dim(&fib.polys, &LambdaPolicy::fiber_default(input.budget), &mut rng);
    rep.diagnostics = Some(out.diagnostics.clone());

    match out.status {
        SolveStatus::Inconsistent => {
            rep.status = LevelStatus::EmptyFiber;
            if input.audits.h1 {
                rep.audits.push(check_h1(sys, input.level, &input.drawn.a, input.pair_limit));
            }
            return rep;
        }
        SolveStatus::NotZeroDimensional => {
            rep.fail_reason = Some(String::from("the Lagrange fiber is not zero-dimensional"));
            if input.audits.h1 {
                rep.audits.push(check_h1(sys, input.level, &input.drawn.a, input.pair_limit));
            }
            return rep;
        }
        SolveStatus::SeparationFailure => {
            rep.fail_reason = Some(String::from(
                "no candidate linear form certified a radical, separating parameterization",
            ));
            if input.audits.h1 {
                rep.audits.push(check_h1(sys, input.level, &input.drawn.a, input.pair_limit));
            }
            return rep;
        }
        SolveStatus::Parameterization => {}
    }
    let pjoint = out.param.expect("a parameterization outcome carries one");

    // mandatory: re-verify against the solved system, on the record
    let membership = audit_membership(&fib, &pjoint);
    let member_ok = membership.verdict == Verdict::Pass;
    rep.audits.push(membership);
    if !member_ok {
        rep.fail_reason = Some(String::from("parameterization failed verification"));
        return rep;
    }

    // recorded: deg q = quotient dimension certifies the fiber ideal is
    // radical and λ separates. A shortfall means multiplicity is present
    // (e.g. singular complex points of V(F)); the described points are
    // still certified members, so this does not withhold them.
    let qdim = match out.diagnostics.quotient_dim {
        crate::zdsolve::QuotientDim::Finite(m) => m,
        _ => unreachable!("a parameterization implies a finite quotient"),
    };
    let degq_joint = pjoint.q.degree().unwrap_or(0);
    rep.audits.push(AuditRecord {
        name: "radicality",
        verdict: if degq_joint == qdim { Verdict::Pass } else { Verdict::Fail },
        detail: format!("deg q = {} against quotient dimension {}", degq_joint, qdim),
    });

    if input.audits.regularity {
        rep.audits.push(check_regularity(&fib, &pjoint));
    }

    let px = match project_param(&pjoint, sys.n) {
        Ok(p) => p,
        Err(_) => {
            rep.fail_reason =
                Some(String::from("separating form involves a Lagrange coordinate"));
            return rep;
        }
    };

    // mandatory: projected solutions must satisfy the minor formulation
    let inclusion = audit_projection_inclusion(sys, &fib, &px);
    let inclusion_ok = inclusion.verdict == Verdict::Pass;
    rep.audits.push(inclusion);

    if input.audits.minor_oracle {
        rep.audits.push(audit_minor_oracle(sys, &fib, &px, input.pair_limit));
    }

    // mandatory: deg q ≤ d^{n+p-i}
    let cap = audit::int_pow(sys.d, (sys.n + sys.p - input.level) as u32);
    let degq = px.q.degree().unwrap_or(0);
    let deg_ok = Int::from(degq as u64) <= cap;
    rep.audits.push(AuditRecord {
        name: "degree_bound",
        verdict: if deg_ok { Verdict::Pass } else { Verdict::Fail },
        detail: format!("deg q = {} against d^(n+p-i) = {}", degq, cap),
    });

    if input.audits.h1 {
        rep.audits.push(check_h1(sys, input.level, &input.drawn.a, input.pair_limit));
    }

    if !inclusion_ok {
        rep.raw_param = Some(px);
        rep.fail_reason = Some(String::from("projected solutions escape the polar variety"));
        return rep;
    }
    if !deg_ok {
        rep.raw_param = Some(px);
        rep.fail_reason = Some(String::from("parameterization exceeds the degree bound"));
        return rep;
    }

    // The map back to the input frame widens each enclosure by at most the
    // largest absolute row sum of A, so extraction tightens by that factor
    // to keep the requested width true for the points the caller sees.
    let a = &input.drawn.a;
    let mut stretch = rat(1);
    for i in 0..a.rows() {
        let mut s: Rat = (0..a.cols()).map(|j| a.get(i, j).abs()).sum();
        if s < rat(1) {
            s = rat(1);
        }
        if s > stretch {
            stretch = s;
        }
    }
    let mut raw_points = extract_points(&px, &(&input.width / &stretch), input.level);
    fill_residuals(&mut raw_points, &fib.fa);
    let param = match map_back_param(&px, &input.drawn.a) {
        Ok(p) => p,
        Err(_) => {
            rep.raw_param = Some(px);
            rep.fail_reason = Some(String::from("change of variables is singular"));
            return rep;
        }
    };
    let mut points = map_back_points(&raw_points, &input.drawn.a)
        .expect("invertibility was checked a line above");
    fill_residuals(&mut points, &sys.f);

    rep.raw_param = Some(px);
    rep.param = Some(param);
    rep.raw_points = raw_points;
    rep.points = points;
    rep.status = LevelStatus::Solved;
    rep
}

fn bounds_audit(sys: &InputSystem, cfg: &RunConfig, levels: &[LevelReport]) -> AuditRecord {
    let name = "output_bounds";
    let hard = audit::int_pow(sys.d, (sys.n + sys.p) as u32);
    let mut max_deg = 0usize;
    let mut height = Height::zero();
    for lv in levels {
        if let Some(px) = &lv.raw_param {
            max_deg = max_deg.max(px.q.degree().unwrap_or(0));
            height = height.join(&Height::of_coeffs(px.q.coeffs().iter()));
            for v in &px.v {
                height = height.join(&Height::of_coeffs(v.coeffs().iter()));
            }
        }
    }
    let ok = Int::from(max_deg as u64) <= hard;
    let eps = crate::polycore::rat_f64(&cfg.epsilon);
    let shape = libm::pow(sys.d as f64, (sys.n + sys.p + 1) as f64)
        * (sys.b.log() + libm::log(1.0 / eps) + 1.0);
    let detail = format!(
        "max deg q = {} against d^(n+p) = {}; coefficient height {:.1} against shape {:.1}",
        max_deg,
        hard,
        height.log(),
        shape
    );
    AuditRecord {
        name,
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail,
    }
}

fn dlsz_audit(cfg: &RunConfig, ratios: &[Rat; 3]) -> AuditRecord {
    let quarter = &cfg.epsilon / &rat(4);
    let ok = ratios.iter().all(|r| r <= &quarter);
    AuditRecord {
        name: "dlsz_budgets",
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        detail: format!(
            "degree/size ratios {}, {}, {} against epsilon/4 = {}",
            ratios[0], ratios[1], ratios[2], quarter
        ),
    }
}

/// Folds level reports into the run report and performs the run-wide audits.
pub fn assemble(
    sys: &InputSystem,
    cfg: &RunConfig,
    sets: SampleSets,
    dlsz: Option<[Rat; 3]>,
    drawn: Drawn,
    warnings: Vec<String>,
    levels: Vec<LevelReport>,
) -> RunReport {
    let mut run_audits = Vec::new();
    if cfg.audits.noether {
        run_audits.push(check_noether_fiber(sys, &drawn.a, &drawn.sigma, cfg.pair_limit_audit));
    }
    run_audits.push(bounds_audit(sys, cfg, &levels));
    if let Some(r) = &dlsz {
        run_audits.push(dlsz_audit(cfg, r));
    }
    let total_points = levels.iter().map(|l| l.points.len()).sum();
    let any_failed = levels.iter().any(|l| l.status == LevelStatus::Failed)
        || run_audits
            .iter()
            .any(|a| a.name == "output_bounds" && a.verdict == Verdict::Fail);
    RunReport {
        n: sys.n,
        p: sys.p,
        d: sys.d,
        b_log: sys.b.log(),
        delta: sys.delta(),
        epsilon: cfg.epsilon.clone(),
        mode: cfg.mode,
        seed: cfg.seed,
        sets,
        dlsz,
        drawn,
        warnings,
        levels,
        run_audits,
        total_points,
        all_ok: !any_failed,
    }
}

/// The whole algorithm, levels in order. Frontends wanting parallelism can
/// call `prepare`, fan out `run_level`, and `assemble` the results.
pub fn run_main(sys: &InputSystem, cfg: &RunConfig) -> Result<RunReport, DriverError> {
    let (sets, dlsz, drawn, warnings, inputs) = prepare(sys, cfg)?;
    let levels: Vec<LevelReport> = inputs.iter().map(run_level).collect();
    Ok(assemble(sys, cfg, sets, dlsz, drawn, warnings, levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{ratio, MPoly, RatMatrix, Ring};
    use num_traits::Signed;

    fn circle() -> InputSystem {
        let r = Ring::x_only(2);
        let x1 = MPoly::var(r, 0);
        let x2 = MPoly::var(r, 1);
        let f = &(&(&x1 * &x1) + &(&x2 * &x2)) - &MPoly::one(r);
        InputSystem::new(alloc::vec![f]).unwrap()
    }

    fn hyperbola() -> InputSystem {
        let r = Ring::x_only(2);
        let x1 = MPoly::var(r, 0);
        let x2 = MPoly::var(r, 1);
        InputSystem::new(alloc::vec![&(&x1 * &x2) - &MPoly::one(r)]).unwrap()
    }

    fn practical(seed: u64) -> RunConfig {
        RunConfig::new(ratio(1, 2), Mode::Practical, seed)
    }

    #[test]
    fn circle_run_finds_two_points_on_the_component() {
        let sys = circle();
        let report = run_main(&sys, &practical(1)).unwrap();
        assert!(report.all_ok);
        assert_eq!(report.levels.len(), 2);
        assert_eq!(report.levels[0].status, LevelStatus::Solved);
        assert_eq!(report.levels[0].points.len(), 2);
        // the drawn slice value exceeds 1, so the level-2 plane misses the
        // real circle; the two complex intersections still parameterize
        assert_eq!(report.levels[1].status, LevelStatus::Solved);
        assert_eq!(report.levels[1].points.len(), 0);
        assert_eq!(report.total_points, 2);
        let tiny = ratio(1, 1i64 << 40);
        for pt in report.points() {
            assert_eq!(pt.residuals.len(), 1);
            assert!(pt.residuals[0].abs() < tiny, "point must lie near the circle");
        }
        for rec in report.levels[0].audits.iter().chain(report.run_audits.iter()) {
            assert_ne!(rec.verdict, Verdict::Fail, "{}: {}", rec.name, rec.detail);
        }
    }

    #[test]
    fn hyperbola_run_reaches_both_branches() {
        let sys = hyperbola();
        let report = run_main(&sys, &practical(3)).unwrap();
        assert!(report.all_ok);
        let mut positive = 0usize;
        let mut negative = 0usize;
        for pt in report.points() {
            if pt.coordinates[0].is_positive() {
                positive += 1;
            } else {
                negative += 1;
            }
        }
        assert!(positive >= 1, "no point on the positive branch");
        assert!(negative >= 1, "no point on the negative branch");
    }

    #[test]
    fn empty_real_locus_succeeds_with_zero_points() {
        let r = Ring::x_only(2);
        let x1 = MPoly::var(r, 0);
        let x2 = MPoly::var(r, 1);
        let f = &(&(&x1 * &x1) + &(&x2 * &x2)) + &MPoly::one(r);
        let sys = InputSystem::new(alloc::vec![f]).unwrap();
        let report = run_main(&sys, &practical(7)).unwrap();
        assert!(report.all_ok);
        assert_eq!(report.total_points, 0);
        // the complex solutions are still parameterized
        assert!(report
            .levels
            .iter()
            .any(|l| l.status == LevelStatus::Solved && l.raw_param.is_some()));
    }

    #[test]
    fn tangent_slice_keeps_the_point_and_flags_multiplicity() {
        // hand-built draw: identity frame and σ₁ = 1 slice the circle at a
        // tangency. The fiber ideal is fat (y₂² = 0) so radicality cannot
        // be certified, but the kissing point itself is genuine and kept.
        let sys = circle();
        let drawn = Drawn {
            a: RatMatrix::identity(2),
            a_inv: RatMatrix::identity(2),
            sigma: alloc::vec![ratio(1, 1)],
            u: alloc::vec![ratio(1, 1)],
        };
        let input = LevelInput {
            sys: sys.clone(),
            level: 2,
            drawn,
            budget: 8,
            width: default_width(),
            audits: AuditToggles::default(),
            pair_limit: 4000,
            seed: 0,
        };
        let rep = run_level(&input);
        assert_eq!(rep.status, LevelStatus::Solved);
        assert_eq!(rep.points.len(), 1);
        assert_eq!(rep.points[0].coordinates, alloc::vec![ratio(1, 1), ratio(0, 1)]);
        let rad = rep.audits.iter().find(|a| a.name == "radicality").unwrap();
        assert_eq!(rad.verdict, Verdict::Fail);
        // tangency also makes the Jacobian singular at the double point
        let reg = rep.audits.iter().find(|a| a.name == "regularity").unwrap();
        assert_eq!(reg.verdict, Verdict::Fail);
        // the geometry itself is fine; H1 holds, the draw is just unlucky
        assert!(rep
            .audits
            .iter()
            .all(|a| a.name != "h1_dimension" || a.verdict == Verdict::Pass));
    }

    #[test]
    fn inconsistent_fiber_is_empty_not_failed() {
        // the hyperbola's level-1 fiber in the identity frame: L₁x₁ = 0
        // with uL₁ = 1 forces x₁ = 0, contradicting x₁x₂ = 1. No complex
        // solutions at all, which is a report, not a failure.
        let sys = hyperbola();
        let drawn = Drawn {
            a: RatMatrix::identity(2),
            a_inv: RatMatrix::identity(2),
            sigma: alloc::vec![ratio(7, 1)],
            u: alloc::vec![ratio(1, 1)],
        };
        let input = LevelInput {
            sys,
            level: 1,
            drawn,
            budget: 8,
            width: default_width(),
            audits: AuditToggles::default(),
            pair_limit: 4000,
            seed: 0,
        };
        let rep = run_level(&input);
        assert_eq!(rep.status, LevelStatus::EmptyFiber);
        assert_eq!(rep.fail_reason, None);
    }

    #[test]
    fn reports_are_reproducible_and_seed_sensitive() {
        let sys = circle();
        let r1 = run_main(&sys, &practical(11)).unwrap();
        let r2 = run_main(&sys, &practical(11)).unwrap();
        assert_eq!(r1.drawn, r2.drawn);
        assert_eq!(r1.total_points, r2.total_points);
        for (a, b) in r1.points().zip(r2.points()) {
            assert_eq!(a, b);
        }
        for (a, b) in r1.levels.iter().zip(r2.levels.iter()) {
            assert_eq!(a.raw_param.as_ref().map(|p| &p.q), b.raw_param.as_ref().map(|p| &p.q));
        }
        let r3 = run_main(&sys, &practical(12)).unwrap();
        assert_ne!(r1.drawn, r3.drawn);
    }

    #[test]
    fn budget_grows_with_the_repetition_count() {
        let sys = circle();
        let mut cfg = RunConfig::new(ratio(1, 1i64 << 60), Mode::Certified, 5);
        cfg.audits = AuditToggles::default();
        let (sets, dlsz, _, _, inputs) = prepare(&sys, &cfg).unwrap();
        assert!(sets.k > 8);
        assert!(inputs.iter().all(|i| i.budget == sets.k as usize));
        let ratios = dlsz.expect("certified mode records the budgets");
        let quarter = &cfg.epsilon / &rat(4);
        assert!(ratios.iter().all(|r| r <= &quarter));
    }

    #[test]
    fn practical_mode_warns_on_linear_systems() {
        let r = Ring::x_only(2);
        let x1 = MPoly::var(r, 0);
        let x2 = MPoly::var(r, 1);
        let sys = InputSystem::new(alloc::vec![&x1 + &x2]).unwrap();
        let cfg = practical(2);
        let (_, _, _, warnings, _) = prepare(&sys, &cfg).unwrap();
        assert_eq!(warnings.len(), 1);
        let report = run_main(&sys, &cfg).unwrap();
        assert!(report.all_ok);
        assert!(report.total_points >= 1, "a hyperplane has one component");
    }
}
