//! Report schema: one self-contained JSON document per run, re-runnable
//! from the echoed config. Only `wall_clock_seconds` and `cache_events`
//! vary between identical runs.

use serde::Serialize;

use growthlab_core::chartab::OrthogonalityReport;
use growthlab_core::growth::{
    BoundAudit, ClassConcentrationAudit, CoveringReport, SkewReport, SupportProfile, Trajectory,
    UmvirateScan,
};
use growthlab_core::prob::{DisjointProb, MomentReport, OrderProbeReport, SmallSupportReport};

use crate::config::ExperimentConfig;

pub const REPORT_SCHEMA: u64 = 1;

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u64,
    pub artifact_version: String,
    pub group: GroupSummary,
    pub config: ExperimentConfig,
    pub results: Vec<ExperimentOutcome>,
    /// "pass" unless a principled falsification or tolerance violation
    /// occurred.
    pub verdict: String,
    /// Diagnostics outside the deterministic contract.
    pub wall_clock_seconds: f64,
    pub cache_events: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub num_classes: usize,
    pub class_sizes: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ExperimentOutcome {
    pub name: String,
    pub pass: bool,
    pub result: ResultBody,
}

#[derive(Debug, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ResultBody {
    /// glps-identity, parseval, adjointness: a batch of exact-identity
    /// checks at a tolerance.
    IdentityBatch {
        cases: usize,
        max_deviation: f64,
        tolerance: f64,
        /// Relative for glps-identity, absolute for the others.
        relative: bool,
    },
    TableAudit {
        degrees: Vec<i64>,
        report: OrthogonalityReport,
    },
    AuditBatch {
        instances: usize,
        falsifications: usize,
        vacuous: usize,
        rows: Vec<AuditRow>,
    },
    CharacterScan {
        /// max |χ(g)|/χ(1) over nontrivial χ and g ≠ 1 for gluck-scan;
        /// the fitted exponent for the other scans.
        max_ratio: Option<f64>,
        fitted_exponent: f64,
        argmin_character: usize,
        argmin_class: usize,
        detail: String,
    },
    Skew(SkewReport),
    Trajectory(Trajectory),
    Covering(CoveringReport),
    SupportProfile(SupportProfile),
    ClassConcentration(ClassConcentrationAudit),
    Umvirate(UmvirateScan),
    DisjointProb {
        exact: DisjointProb,
        mc_estimate: Option<f64>,
        mc_standard_error: Option<f64>,
        within_4_se: Option<bool>,
    },
    Moments(MomentReport),
    OrderProbe(OrderProbeReport),
    SmallSupport(SmallSupportReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub instance: usize,
    pub size_a: usize,
    pub size_b: usize,
    pub k: f64,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub hypotheses_hold: bool,
    pub pass: bool,
    pub max_product: usize,
    pub claimed: f64,
}

impl
    From<(
        &BoundAudit,
        usize,
        usize,
        usize,
        f64,
        Option<f64>,
        Option<f64>,
    )> for AuditRow
{
    fn from(
        (audit, instance, size_a, size_b, k, delta, epsilon): (
            &BoundAudit,
            usize,
            usize,
            usize,
            f64,
            Option<f64>,
            Option<f64>,
        ),
    ) -> Self {
        AuditRow {
            instance,
            size_a,
            size_b,
            k,
            delta,
            epsilon,
            hypotheses_hold: audit.hypotheses_hold,
            pass: audit.pass,
            max_product: audit.skew.max,
            claimed: audit.conclusions.last().map(|c| c.claimed).unwrap_or(0.0),
        }
    }
}
