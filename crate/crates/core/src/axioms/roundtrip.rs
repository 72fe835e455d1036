//! Theorem round-trips: scalar axioms of the varying slot versus lifted
//! axioms of the convolution.
//!
//! The star round-trip fixes a verified continuous t-norm (or t-conorm)
//! combiner and varies `⋆`; the combiner round-trip fixes a verified
//! continuous t-norm star and varies `△`. In both directions:
//!
//! - if every scalar axiom passes, every lifted axiom must pass;
//! - every scalar failure must map, through [`build_witness`], to a
//!   reproducing lifted failure of a basic axiom.
//!
//! A scalar failure with no lifted counterpart is a harness defect and is
//! reported as such, never swallowed.

use super::witness::{build_witness, WitnessSlot};
use super::{
    check_tr_axioms_with, AxiomId, AxiomReport, FunctionFamily, TrCheckConfig, Verdict, Witness,
};
use crate::convolution::{ConvolutionOperator, Engine, OperatorKind};
use crate::error::{Error, Result};
use crate::scalar::{check_scalar_axioms, BinaryOp, ScalarAxiom, ScalarCheckConfig, ScalarReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundtripMode {
    StarSlot,
    CombinerSlot,
}

/// One scalar failure tied to its lifted counterpart.
#[derive(Debug, Clone)]
pub struct Linkage {
    pub scalar_axiom: ScalarAxiom,
    pub lifted_axiom: AxiomId,
    pub witness: Witness,
    pub reproduced: bool,
}

#[derive(Debug)]
pub struct RoundtripVerdict {
    pub mode: RoundtripMode,
    pub operator: ConvolutionOperator,
    pub scalar_report: ScalarReport,
    /// Failures among the axioms relevant to this slot and operator kind:
    /// the neutral axiom counted is T4 for the meet form and T4' for a
    /// combiner in the join form, never both.
    pub relevant_failures: Vec<ScalarAxiom>,
    pub lifted_reports: Vec<AxiomReport>,
    pub links: Vec<Linkage>,
    /// All relevant scalar failures linked and reproduced, and no lifted
    /// failure without a scalar cause.
    pub consistent: bool,
    pub harness_defect: Option<String>,
}

impl RoundtripVerdict {
    pub fn scalar_failures(&self) -> Vec<ScalarAxiom> {
        self.relevant_failures.clone()
    }

    pub fn lifted_failures(&self) -> Vec<AxiomId> {
        self.lifted_reports
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .map(|r| r.axiom)
            .collect()
    }
}

fn scalar_config(cfg: &TrCheckConfig) -> ScalarCheckConfig {
    ScalarCheckConfig {
        grid_n: cfg.grid_n.min(256),
        assoc_grid_n: 64,
        eps: 1e-12,
    }
}

/// Relevant scalar axioms for a slot role: the neutral axiom checked is the
/// one matching the operator kind.
fn relevant_axioms(kind: OperatorKind, slot: WitnessSlot) -> Vec<ScalarAxiom> {
    match (slot, kind) {
        // The star must be a t-norm in both forms of the theorem.
        (WitnessSlot::Star, _) => vec![
            ScalarAxiom::T1,
            ScalarAxiom::T2,
            ScalarAxiom::T3,
            ScalarAxiom::T4,
        ],
        (WitnessSlot::Combiner, OperatorKind::MeetLike) => vec![
            ScalarAxiom::T1,
            ScalarAxiom::T2,
            ScalarAxiom::T3,
            ScalarAxiom::T4,
        ],
        (WitnessSlot::Combiner, OperatorKind::JoinLike) => vec![
            ScalarAxiom::T1,
            ScalarAxiom::T2,
            ScalarAxiom::T3,
            ScalarAxiom::T4Prime,
        ],
    }
}

fn failed_relevant(report: &ScalarReport, axioms: &[ScalarAxiom]) -> Vec<ScalarAxiom> {
    report
        .failed_axioms()
        .into_iter()
        .filter(|a| axioms.contains(a))
        .collect()
}

fn basic_axioms() -> [AxiomId; 5] {
    [
        AxiomId::O1,
        AxiomId::O2,
        AxiomId::O3,
        AxiomId::O3Prime,
        AxiomId::O4,
    ]
}

fn run_roundtrip(
    opr: ConvolutionOperator,
    varying_report: ScalarReport,
    slot: WitnessSlot,
    family: &FunctionFamily,
    cfg: &TrCheckConfig,
) -> RoundtripVerdict {
    let lifted_reports = check_tr_axioms_with(&opr, family, cfg);
    let axioms = relevant_axioms(opr.kind(), slot);
    let failures = failed_relevant(&varying_report, &axioms);

    let mut links = Vec::new();
    let mut defect: Option<String> = None;
    for axiom in &failures {
        match build_witness(&opr, &varying_report, *axiom, slot) {
            Ok((lifted_axiom, witness)) => {
                let reproduced = witness.recheck(&opr, cfg.eps);
                if !reproduced && defect.is_none() {
                    defect = Some(format!(
                        "witness for scalar {axiom} did not reproduce its lifted {lifted_axiom} failure"
                    ));
                }
                links.push(Linkage {
                    scalar_axiom: *axiom,
                    lifted_axiom,
                    witness,
                    reproduced,
                });
            }
            Err(e) => {
                if defect.is_none() {
                    defect = Some(format!(
                        "scalar {axiom} failed but no lifted witness could be built: {e}"
                    ));
                }
            }
        }
    }

    // Forward direction: a clean scalar report must give a clean lifted one.
    let lifted_basic_failures: Vec<AxiomId> = lifted_reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail && basic_axioms().contains(&r.axiom))
        .map(|r| r.axiom)
        .collect();
    if failures.is_empty() && !lifted_basic_failures.is_empty() && defect.is_none() {
        defect = Some(format!(
            "scalar axioms all pass but lifted {lifted_basic_failures:?} failed"
        ));
    }

    let consistent =
        defect.is_none() && links.iter().all(|l| l.reproduced) && links.len() == failures.len();

    RoundtripVerdict {
        mode: match slot {
            WitnessSlot::Star => RoundtripMode::StarSlot,
            WitnessSlot::Combiner => RoundtripMode::CombinerSlot,
        },
        operator: opr,
        scalar_report: varying_report,
        relevant_failures: failures,
        lifted_reports,
        links,
        consistent,
        harness_defect: defect,
    }
}

/// Vary the star against a fixed combiner that must verify as a continuous
/// t-norm (meet form) or continuous t-conorm (join form).
pub fn theorem_roundtrip_star(
    star: BinaryOp,
    combiner: BinaryOp,
    family: &FunctionFamily,
    cfg: &TrCheckConfig,
) -> Result<RoundtripVerdict> {
    let comb_report = check_scalar_axioms(&combiner, &scalar_config(cfg));
    let kind = if comb_report.passes_tnorm_axioms() && combiner.declared_continuous() {
        OperatorKind::MeetLike
    } else if comb_report.passes_tconorm_axioms() && combiner.declared_continuous() {
        OperatorKind::JoinLike
    } else {
        return Err(Error::Precondition(format!(
            "combiner `{}` is not a verified continuous t-norm or t-conorm",
            combiner.name()
        )));
    };
    let star_report = check_scalar_axioms(&star, &scalar_config(cfg));
    let opr = ConvolutionOperator::new(star, combiner, kind, Engine::Auto, cfg.grid_n)?;
    Ok(run_roundtrip(
        opr,
        star_report,
        WitnessSlot::Star,
        family,
        cfg,
    ))
}

/// Vary the combiner against a fixed star that must verify as a continuous
/// t-norm. The combiner only needs to be surjective; its verified class
/// selects the meet or join form of the axioms.
pub fn theorem_roundtrip_combiner(
    star: BinaryOp,
    combiner: BinaryOp,
    family: &FunctionFamily,
    cfg: &TrCheckConfig,
) -> Result<RoundtripVerdict> {
    let star_report = check_scalar_axioms(&star, &scalar_config(cfg));
    if !(star_report.passes_tnorm_axioms() && star.declared_continuous()) {
        return Err(Error::Precondition(format!(
            "star `{}` is not a verified continuous t-norm",
            star.name()
        )));
    }
    let comb_report = check_scalar_axioms(&combiner, &scalar_config(cfg));
    let kind = if comb_report.passes_tconorm_axioms() && combiner.declared_continuous() {
        OperatorKind::JoinLike
    } else {
        OperatorKind::MeetLike
    };
    let opr = ConvolutionOperator::new(star, combiner, kind, Engine::Auto, cfg.grid_n)?;
    Ok(run_roundtrip(
        opr,
        comb_report,
        WitnessSlot::Combiner,
        family,
        cfg,
    ))
}
