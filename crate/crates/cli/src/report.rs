//! The machine-readable result file. Every rational is rendered exactly as
//! `num` or `num/den`; decimal fields are advisory conveniences computed
//! from the exact values. The file round-trips: parsing it back yields the
//! same structure byte for byte when re-serialized.
//!
//! Nothing here records wall-clock time; identical (input, seed, config)
//! must produce identical files.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use polarpoints_core::driver::{
    AuditRecord, Drawn, LevelReport, LevelStatus, RunReport, SampleSets,
};
use polarpoints_core::polycore::{rat_f64, Int, Rat, UPoly};
use polarpoints_core::realize::RealPoint;
use polarpoints_core::zdsolve::{QuotientDim, ZeroDimParam};

pub fn rat_to_string(x: &Rat) -> String {
    let mut s = x.numer().to_string();
    if !x.denom().eq(&Int::from(1)) {
        let _ = write!(s, "/{}", x.denom());
    }
    s
}

pub fn rat_from_string(s: &str) -> Result<Rat, String> {
    let bad = |_| format!("'{}' is not an integer or num/den rational", s);
    match s.split_once('/') {
        None => Ok(Rat::from(Int::from_str(s.trim()).map_err(bad)?)),
        Some((n, d)) => {
            let n = Int::from_str(n.trim()).map_err(bad)?;
            let d = Int::from_str(d.trim()).map_err(bad)?;
            if d == Int::from(0) {
                return Err(format!("'{}' has denominator zero", s));
            }
            Ok(Rat::new(n, d))
        }
    }
}

fn upoly_to_strings(q: &UPoly) -> Vec<String> {
    q.coeffs().iter().map(rat_to_string).collect()
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ConfigEcho {
    pub input: String,
    pub epsilon: String,
    pub mode: String,
    pub seed: u64,
    pub width: String,
    pub audits: bool,
    pub raw_frame: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SystemEcho {
    pub variables: Vec<String>,
    pub n: usize,
    pub p: usize,
    pub degree: u64,
    pub height_log: f64,
    pub delta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_components: Option<usize>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SampleSetsJson {
    pub s: String,
    pub t: String,
    pub r: String,
    pub k: u32,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct DrawnJson {
    pub a: Vec<Vec<String>>,
    pub sigma: Vec<String>,
    pub u: Vec<String>,
}

/// Coefficient lists are ascending in the degree of T; `lambda` lists one
/// coefficient per variable of the ambient ring of the parameterization.
#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ParamJson {
    pub lambda: Vec<String>,
    pub q: Vec<String>,
    pub v: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct PointJson {
    pub coordinates: Vec<String>,
    /// Advisory only; the exact values are the coordinates field.
    pub decimal: Vec<f64>,
    pub enclosures: Vec<[String; 2]>,
    pub root_index: usize,
    pub residuals: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct AuditJson {
    pub name: String,
    pub verdict: String,
    pub detail: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct DiagnosticsJson {
    pub lambda_attempts: usize,
    /// −1 encodes an empty variety, −2 a positive-dimensional one.
    pub quotient_dim: i64,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_coeff_bits: u64,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct LevelJson {
    pub level: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fail_reason: Option<String>,
    pub parameterization: Option<ParamJson>,
    pub points: Vec<PointJson>,
    pub audits: Vec<AuditJson>,
    pub diagnostics: Option<DiagnosticsJson>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ResultFile {
    pub config: ConfigEcho,
    pub system: SystemEcho,
    pub sample_sets: SampleSetsJson,
    pub dlsz_ratios: Option<[String; 3]>,
    pub drawn: DrawnJson,
    pub warnings: Vec<String>,
    pub levels: Vec<LevelJson>,
    pub run_audits: Vec<AuditJson>,
    pub total_points: usize,
    pub all_ok: bool,
}

fn param_json(p: &ZeroDimParam) -> ParamJson {
    ParamJson {
        lambda: p.lambda.coeffs().iter().map(rat_to_string).collect(),
        q: upoly_to_strings(&p.q),
        v: p.v.iter().map(upoly_to_strings).collect(),
    }
}

fn point_json(pt: &RealPoint) -> PointJson {
    PointJson {
        coordinates: pt.coordinates.iter().map(rat_to_string).collect(),
        decimal: pt.coordinates.iter().map(rat_f64).collect(),
        enclosures: pt
            .enclosures
            .iter()
            .map(|iv| [rat_to_string(iv.lo()), rat_to_string(iv.hi())])
            .collect(),
        root_index: pt.root_index,
        residuals: pt.residuals.iter().map(rat_to_string).collect(),
    }
}

fn audit_json(a: &AuditRecord) -> AuditJson {
    AuditJson {
        name: a.name.to_string(),
        verdict: a.verdict.to_string(),
        detail: a.detail.clone(),
    }
}

fn level_json(lv: &LevelReport, raw_frame: bool) -> LevelJson {
    let (param, points) = if raw_frame {
        (&lv.raw_param, &lv.raw_points)
    } else {
        (&lv.param, &lv.points)
    };
    LevelJson {
        level: lv.level,
        status: lv.status.to_string(),
        fail_reason: lv.fail_reason.clone(),
        parameterization: param.as_ref().map(param_json),
        points: points.iter().map(point_json).collect(),
        audits: lv.audits.iter().map(audit_json).collect(),
        diagnostics: lv.diagnostics.as_ref().map(|d| DiagnosticsJson {
            lambda_attempts: d.lambda_attempts,
            quotient_dim: match d.quotient_dim {
                QuotientDim::Empty => -1,
                QuotientDim::Finite(m) => m as i64,
                QuotientDim::Infinite => -2,
            },
            pairs_reduced: d.groebner.pairs_reduced,
            zero_reductions: d.groebner.zero_reductions,
            max_coeff_bits: d.groebner.max_coeff_bits,
        }),
    }
}

fn drawn_json(d: &Drawn) -> DrawnJson {
    DrawnJson {
        a: (0..d.a.rows())
            .map(|i| (0..d.a.cols()).map(|j| rat_to_string(d.a.get(i, j))).collect())
            .collect(),
        sigma: d.sigma.iter().map(rat_to_string).collect(),
        u: d.u.iter().map(rat_to_string).collect(),
    }
}

fn sets_json(s: &SampleSets) -> SampleSetsJson {
    SampleSetsJson {
        s: s.s_size.to_string(),
        t: s.t_size.to_string(),
        r: s.r_size.to_string(),
        k: s.k,
    }
}

pub fn result_file(
    report: &RunReport,
    variables: &[String],
    expected_components: Option<usize>,
    config: ConfigEcho,
) -> ResultFile {
    let raw_frame = config.raw_frame;
    ResultFile {
        config,
        system: SystemEcho {
            variables: variables.to_vec(),
            n: report.n,
            p: report.p,
            degree: report.d,
            height_log: report.b_log,
            delta: report.delta,
            expected_components,
        },
        sample_sets: sets_json(&report.sets),
        dlsz_ratios: report
            .dlsz
            .as_ref()
            .map(|r| [rat_to_string(&r[0]), rat_to_string(&r[1]), rat_to_string(&r[2])]),
        drawn: drawn_json(&report.drawn),
        warnings: report.warnings.clone(),
        levels: report.levels.iter().map(|lv| level_json(lv, raw_frame)).collect(),
        run_audits: report.run_audits.iter().map(audit_json).collect(),
        total_points: report.total_points,
        all_ok: report.all_ok,
    }
}

/// One human-readable line per level plus a closing summary.
pub fn summary_text(report: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n={} p={} d={} delta={} mode={} seed={}",
        report.n, report.p, report.d, report.delta, report.mode, report.seed
    );
    for lv in &report.levels {
        let deg = lv
            .raw_param
            .as_ref()
            .and_then(|p| p.q.degree())
            .map(|d| format!(", deg q = {}", d))
            .unwrap_or_default();
        let why = lv.fail_reason.as_ref().map(|r| format!(" ({})", r)).unwrap_or_default();
        let _ = writeln!(
            out,
            "  level {}: {}{}{}, {} real point{}",
            lv.level,
            lv.status,
            why,
            deg,
            lv.points.len(),
            if lv.points.len() == 1 { "" } else { "s" }
        );
    }
    let _ = writeln!(
        out,
        "{}: {} real point{} total",
        if report.all_ok { "ok" } else { "FAIL" },
        report.total_points,
        if report.total_points == 1 { "" } else { "s" }
    );
    out
}

impl LevelJson {
    pub fn status_is(&self, s: LevelStatus) -> bool {
        self.status == s.to_string()
    }
}
