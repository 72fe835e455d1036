//! Counterexample transfer: from a scalar axiom failure of the varying
//! operation to a lifted axiom failure of the convolution, with concrete
//! functions and evaluation points.
//!
//! The constructions mirror the proofs the way they run in practice:
//!
//! - broken commutativity or associativity of `⋆` surfaces at `x = 1`
//!   through descending-line witnesses, because `(f ⋏ g)(1) = f(1) ⋆ g(1)`
//!   pins the boundary value;
//! - a broken right neutral (`u ⋆ 1 != u`) breaks `T(f, χ₁) = f` on a
//!   step witness (or on `χ_0` / `χ_1` at the ends);
//! - a broken left neutral with an intact right neutral is a commutativity
//!   failure at `(u, 1)` and routes to the same boundary witness;
//! - broken monotonicity surfaces as an order violation between boundary
//!   values of descending-line pairs;
//! - when the combiner is the varying slot, everything runs through
//!   characteristic functions: `χ_{x} ⋏ χ_{y} = χ_{x △ y}` turns each scalar
//!   statement about `△` into a statement about spike locations.

use super::{AxiomId, Witness, WitnessKind};
use crate::convolution::{ConvolutionOperator, Convolved, OperatorKind};
use crate::error::{Error, Result};
use crate::membership::MembershipFunction;
use crate::rat;
use crate::scalar::{ScalarAxiom, ScalarReport};
use crate::unit::UnitValue;

/// Which scalar slot the failing operation occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSlot {
    Star,
    Combiner,
}

fn v(x: f64) -> MembershipFunction {
    MembershipFunction::v_func(UnitValue::new(x).expect("witness parameter in range"))
}

/// Rising line from `(0, x)` to `(1, 1)`: the reflection of the descending
/// witness, pinning the value `x` at 0 for join-form boundary arguments.
fn rising(x: f64) -> MembershipFunction {
    v(x).negate()
}

fn chi(x: f64) -> MembershipFunction {
    MembershipFunction::chi_point(UnitValue::new(x).expect("witness parameter in range"))
}

/// Witness family pinning a value at the operator's boundary point.
fn pinned(kind: OperatorKind, x: f64) -> (String, MembershipFunction) {
    match kind {
        OperatorKind::MeetLike => (format!("V({x})"), v(x)),
        OperatorKind::JoinLike => (format!("negate(V({x}))"), rising(x)),
    }
}

/// Build the lifted witness for a scalar axiom failure recorded in
/// `scalar_report`. Returns the lifted axiom it violates together with the
/// witness; re-evaluating the witness reproduces the failure.
pub fn build_witness(
    opr: &ConvolutionOperator,
    scalar_report: &ScalarReport,
    axiom: ScalarAxiom,
    slot: WitnessSlot,
) -> Result<(AxiomId, Witness)> {
    match slot {
        WitnessSlot::Star => build_star_witness(opr, scalar_report, axiom),
        WitnessSlot::Combiner => build_combiner_witness(opr, scalar_report, axiom),
    }
}

fn scalar_witness(
    report: &ScalarReport,
    axiom: ScalarAxiom,
) -> Result<crate::scalar::ScalarWitness> {
    let verdict = match axiom {
        ScalarAxiom::T1 => &report.t1,
        ScalarAxiom::T2 => &report.t2,
        ScalarAxiom::T3 => &report.t3,
        ScalarAxiom::T4 => &report.t4,
        ScalarAxiom::T4Prime => &report.t4_prime,
    };
    verdict.witness.clone().ok_or_else(|| {
        Error::Precondition(format!(
            "no scalar failure of {axiom} recorded for `{}`; nothing to witness",
            report.op_name
        ))
    })
}

fn build_star_witness(
    opr: &ConvolutionOperator,
    report: &ScalarReport,
    axiom: ScalarAxiom,
) -> Result<(AxiomId, Witness)> {
    let star = opr.star();
    let boundary_at = match opr.kind() {
        OperatorKind::MeetLike => 1.0,
        OperatorKind::JoinLike => 0.0,
    };
    match axiom {
        ScalarAxiom::T1 => {
            let w = scalar_witness(report, axiom)?;
            Ok((
                AxiomId::O1,
                Witness {
                    kind: WitnessKind::BoundaryCommute,
                    inputs: vec![pinned(opr.kind(), w.x), pinned(opr.kind(), w.y)],
                    point: Some(boundary_at),
                    lhs: star.eval(w.x, w.y),
                    rhs: star.eval(w.y, w.x),
                    description: format!(
                        "commutativity of `{}` fails at ({}, {}), lifted to x = {boundary_at}",
                        star.name(),
                        w.x,
                        w.y
                    ),
                },
            ))
        }
        ScalarAxiom::T2 => {
            let w = scalar_witness(report, axiom)?;
            let z = w.z.ok_or_else(|| {
                Error::Precondition("associativity witness without third value".to_string())
            })?;
            Ok((
                AxiomId::O2,
                Witness {
                    kind: WitnessKind::BoundaryAssoc,
                    inputs: vec![
                        pinned(opr.kind(), w.x),
                        pinned(opr.kind(), w.y),
                        pinned(opr.kind(), z),
                    ],
                    point: Some(boundary_at),
                    lhs: star.eval(star.eval(w.x, w.y), z),
                    rhs: star.eval(w.x, star.eval(w.y, z)),
                    description: format!(
                        "associativity of `{}` fails at ({}, {}, {z}), lifted to x = {boundary_at}",
                        star.name(),
                        w.x,
                        w.y
                    ),
                },
            ))
        }
        ScalarAxiom::T3 => {
            // witness fields: op(x, y) > op(x, z) with y < z
            let w = scalar_witness(report, axiom)?;
            let z = w.z.ok_or_else(|| {
                Error::Precondition("monotonicity witness without the larger value".to_string())
            })?;
            // The middle input must sit below the last in the meet order;
            // descending lines are a rising chain in their parameter, their
            // reflections a falling one.
            let (g, h) = match opr.kind() {
                OperatorKind::MeetLike => (pinned(opr.kind(), w.y), pinned(opr.kind(), z)),
                OperatorKind::JoinLike => (pinned(opr.kind(), z), pinned(opr.kind(), w.y)),
            };
            Ok((
                AxiomId::O4,
                Witness {
                    kind: WitnessKind::BoundaryMonotone,
                    inputs: vec![pinned(opr.kind(), w.x), g, h],
                    point: Some(boundary_at),
                    lhs: star.eval(w.x, w.y),
                    rhs: star.eval(w.x, z),
                    description: format!(
                        "monotonicity of `{}` fails: {} * {} > {} * {z}, lifted through the boundary",
                        star.name(),
                        w.x,
                        w.y,
                        w.x
                    ),
                },
            ))
        }
        ScalarAxiom::T4 | ScalarAxiom::T4Prime => build_star_neutral_witness(opr, report),
    }
}

/// Neutral-element analysis for the star slot. Prefers the right-sided
/// failure (which breaks `T(f, χ₁) = f` directly); a purely left-sided one
/// implies a commutativity failure at `(u, 1)` and routes to the boundary.
fn build_star_neutral_witness(
    opr: &ConvolutionOperator,
    report: &ScalarReport,
) -> Result<(AxiomId, Witness)> {
    let star = opr.star();
    let (neutral_value, neutral_fn, neutral_label) = match opr.kind() {
        OperatorKind::MeetLike => (1.0, chi(1.0), "chi{1}"),
        OperatorKind::JoinLike => (0.0, chi(0.0), "chi{0}"),
    };

    // Candidate arguments with a broken right-neutral, densest first around
    // the recorded scalar witness.
    let mut candidates: Vec<f64> = Vec::new();
    let recorded = match opr.kind() {
        OperatorKind::MeetLike => report.t4.witness.clone(),
        OperatorKind::JoinLike => report.t4_prime.witness.clone(),
    };
    if let Some(w) = &recorded {
        for value in [w.x, w.y] {
            if value != neutral_value {
                candidates.push(value);
            }
        }
    }
    candidates.extend((0..=16).map(|k| k as f64 / 16.0));

    for u in &candidates {
        if (star.eval(*u, neutral_value) - *u).abs() <= report.eps {
            continue;
        }
        // right-neutral broken at u: exhibit T(f, chi_e) != f
        let f = if *u == 0.0 {
            chi(0.0)
        } else if *u == 1.0 {
            chi(1.0)
        } else {
            MembershipFunction::w_func(UnitValue::new(*u).expect("in range"))
        };
        let result = opr.convolve(&f, &neutral_fn)?;
        if let Convolved::Exact(exact) = &result {
            if let Some((point, got, expected)) = exact.first_difference(&f) {
                return Ok((
                    match opr.kind() {
                        OperatorKind::MeetLike => AxiomId::O3,
                        OperatorKind::JoinLike => AxiomId::O3Prime,
                    },
                    Witness {
                        kind: WitnessKind::ValueMismatch,
                        inputs: vec![
                            (format!("W({u})"), f.clone()),
                            (neutral_label.to_string(), neutral_fn.clone()),
                            ("expected".to_string(), f.clone()),
                        ],
                        point: Some(rat::to_f64(&point)),
                        lhs: rat::to_f64(&got),
                        rhs: rat::to_f64(&expected),
                        description: format!(
                            "`{}` has {u} * {neutral_value} != {u}; T(f, {neutral_label}) moves f",
                            star.name()
                        ),
                    },
                ));
            }
        }
    }

    // Right neutral held everywhere we looked: the failure is left-sided,
    // hence a commutativity failure at (u, e).
    for u in &candidates {
        let left = star.eval(neutral_value, *u);
        let right = star.eval(*u, neutral_value);
        if (left - right).abs() > report.eps {
            return Ok((
                AxiomId::O1,
                Witness {
                    kind: WitnessKind::BoundaryCommute,
                    inputs: match opr.kind() {
                        OperatorKind::MeetLike => vec![
                            (format!("V({neutral_value})"), v(neutral_value)),
                            (format!("V({u})"), v(*u)),
                        ],
                        OperatorKind::JoinLike => vec![
                            (
                                "W(1)".to_string(),
                                MembershipFunction::w_func(UnitValue::ONE),
                            ),
                            (format!("chi{{{u}}}"), chi(*u)),
                        ],
                    },
                    point: Some(match opr.kind() {
                        OperatorKind::MeetLike => 1.0,
                        OperatorKind::JoinLike => 0.0,
                    }),
                    lhs: left,
                    rhs: right,
                    description: format!(
                        "`{}` breaks the neutral element only on the left at {u}; \
                         this is a commutativity failure at ({neutral_value}, {u})",
                        star.name()
                    ),
                },
            ));
        }
    }

    Err(Error::Precondition(format!(
        "could not reproduce the neutral-element failure of `{}`",
        star.name()
    )))
}

fn build_combiner_witness(
    opr: &ConvolutionOperator,
    report: &ScalarReport,
    axiom: ScalarAxiom,
) -> Result<(AxiomId, Witness)> {
    let comb = opr.combiner();
    match axiom {
        ScalarAxiom::T1 => {
            let w = scalar_witness(report, axiom)?;
            Ok((
                AxiomId::O1,
                Witness {
                    kind: WitnessKind::ChiCommute,
                    inputs: vec![
                        (format!("chi{{{}}}", w.x), chi(w.x)),
                        (format!("chi{{{}}}", w.y), chi(w.y)),
                    ],
                    point: None,
                    lhs: comb.eval(w.x, w.y),
                    rhs: comb.eval(w.y, w.x),
                    description: format!(
                        "commutativity of `{}` fails at ({}, {}); the characteristic \
                         composition puts the spikes at different points",
                        comb.name(),
                        w.x,
                        w.y
                    ),
                },
            ))
        }
        ScalarAxiom::T2 => {
            let w = scalar_witness(report, axiom)?;
            let z = w.z.ok_or_else(|| {
                Error::Precondition("associativity witness without third value".to_string())
            })?;
            Ok((
                AxiomId::O2,
                Witness {
                    kind: WitnessKind::ChiAssoc,
                    inputs: vec![
                        (format!("chi{{{}}}", w.x), chi(w.x)),
                        (format!("chi{{{}}}", w.y), chi(w.y)),
                        (format!("chi{{{z}}}"), chi(z)),
                    ],
                    point: None,
                    lhs: comb.eval(comb.eval(w.x, w.y), z),
                    rhs: comb.eval(w.x, comb.eval(w.y, z)),
                    description: format!(
                        "associativity of `{}` fails at ({}, {}, {z})",
                        comb.name(),
                        w.x,
                        w.y
                    ),
                },
            ))
        }
        ScalarAxiom::T3 => {
            let w = scalar_witness(report, axiom)?;
            let z = w.z.ok_or_else(|| {
                Error::Precondition("monotonicity witness without the larger value".to_string())
            })?;
            // comb(x, y) > comb(x, z) with y < z: chi_y below chi_z but the
            // composed spikes land out of order.
            Ok((
                AxiomId::O4,
                Witness {
                    kind: WitnessKind::ChiMonotone,
                    inputs: vec![
                        (format!("chi{{{}}}", w.y), chi(w.y)),
                        (format!("chi{{{z}}}"), chi(z)),
                        (format!("chi{{{}}}", w.x), chi(w.x)),
                    ],
                    point: None,
                    lhs: comb.eval(w.y, w.x),
                    rhs: comb.eval(z, w.x),
                    description: format!(
                        "monotonicity of `{}` fails: spikes at {} and {} are out of order",
                        comb.name(),
                        comb.eval(w.y, w.x),
                        comb.eval(z, w.x)
                    ),
                },
            ))
        }
        ScalarAxiom::T4 | ScalarAxiom::T4Prime => {
            let neutral = match opr.kind() {
                OperatorKind::MeetLike => 1.0,
                OperatorKind::JoinLike => 0.0,
            };
            let mut candidates: Vec<f64> = Vec::new();
            let recorded = match opr.kind() {
                OperatorKind::MeetLike => report.t4.witness.clone(),
                OperatorKind::JoinLike => report.t4_prime.witness.clone(),
            };
            if let Some(w) = &recorded {
                for value in [w.x, w.y] {
                    if value != neutral {
                        candidates.push(value);
                    }
                }
            }
            candidates.extend((0..=16).map(|k| k as f64 / 16.0));

            // right-sided: chi_x combined with the neutral characteristic
            for x in &candidates {
                let got = comb.eval(*x, neutral);
                if (got - *x).abs() > report.eps {
                    let expected = chi(*x);
                    return Ok((
                        match opr.kind() {
                            OperatorKind::MeetLike => AxiomId::O3,
                            OperatorKind::JoinLike => AxiomId::O3Prime,
                        },
                        Witness {
                            kind: WitnessKind::ValueMismatch,
                            inputs: vec![
                                (format!("chi{{{x}}}"), chi(*x)),
                                (format!("chi{{{neutral}}}"), chi(neutral)),
                                ("expected".to_string(), expected),
                            ],
                            point: Some(got),
                            lhs: 1.0,
                            rhs: 0.0,
                            description: format!(
                                "`{}` moves the spike: {x} combined with {neutral} lands at {got}",
                                comb.name()
                            ),
                        },
                    ));
                }
            }
            // left-sided only: commutativity of the combiner fails at (e, x)
            for x in &candidates {
                let left = comb.eval(neutral, *x);
                let right = comb.eval(*x, neutral);
                if (left - right).abs() > report.eps {
                    return Ok((
                        AxiomId::O1,
                        Witness {
                            kind: WitnessKind::ChiCommute,
                            inputs: vec![
                                (format!("chi{{{neutral}}}"), chi(neutral)),
                                (format!("chi{{{x}}}"), chi(*x)),
                            ],
                            point: None,
                            lhs: left,
                            rhs: right,
                            description: format!(
                                "`{}` breaks its neutral element only on the left at {x}",
                                comb.name()
                            ),
                        },
                    ));
                }
            }
            Err(Error::Precondition(format!(
                "could not reproduce the neutral-element failure of `{}`",
                comb.name()
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::{ConvolutionOperator, Engine};
    use crate::scalar::{catalog_lookup, check_scalar_axioms, ScalarCheckConfig};

    fn opr(star: &str, comb: &str) -> ConvolutionOperator {
        ConvolutionOperator::new(
            catalog_lookup(star, &[]).unwrap(),
            catalog_lookup(comb, &[]).unwrap(),
            OperatorKind::MeetLike,
            Engine::Auto,
            64,
        )
        .unwrap()
    }

    fn scalar(op_name: &str) -> ScalarReport {
        let cfg = ScalarCheckConfig {
            grid_n: 64,
            assoc_grid_n: 32,
            eps: 1e-12,
        };
        check_scalar_axioms(&catalog_lookup(op_name, &[]).unwrap(), &cfg)
    }

    #[test]
    fn asym_power_t1_lifts_to_o1_at_the_boundary() {
        let opr = opr("asym-power", "product");
        let report = scalar("asym-power");
        let (axiom, witness) =
            build_witness(&opr, &report, ScalarAxiom::T1, WitnessSlot::Star).unwrap();
        assert_eq!(axiom, AxiomId::O1);
        assert!(witness.recheck(&opr, 1e-9));
        // the canonical instance: 0.5*0.8^2 = 0.32 vs 0.8*0.5^2 = 0.2
        let direct = Witness {
            inputs: vec![
                ("V(0.5)".to_string(), v(0.5)),
                ("V(0.8)".to_string(), v(0.8)),
            ],
            ..witness
        };
        let (lhs, rhs) = direct.recompute(&opr).unwrap();
        assert!((lhs - 0.32).abs() < 1e-12);
        assert!((rhs - 0.2).abs() < 1e-12);
    }

    #[test]
    fn mean_t2_lifts_to_o2_with_the_expected_values() {
        let opr = opr("mean", "minimum");
        let report = scalar("mean");
        let (axiom, witness) =
            build_witness(&opr, &report, ScalarAxiom::T2, WitnessSlot::Star).unwrap();
        assert_eq!(axiom, AxiomId::O2);
        assert!(witness.recheck(&opr, 1e-9));
        // canonical instance (1, 1, 0): (1*1)*0 = 0.5 vs 1*(1*0) = 0.75
        let direct = Witness {
            inputs: vec![
                ("V(1)".to_string(), v(1.0)),
                ("V(1)".to_string(), v(1.0)),
                ("V(0)".to_string(), v(0.0)),
            ],
            ..witness
        };
        let (lhs, rhs) = direct.recompute(&opr).unwrap();
        assert_eq!(lhs, 0.5);
        assert_eq!(rhs, 0.75);
    }

    #[test]
    fn mean_t4_lifts_to_o3_with_step_witness() {
        let opr = opr("mean", "minimum");
        let report = scalar("mean");
        let (axiom, witness) =
            build_witness(&opr, &report, ScalarAxiom::T4, WitnessSlot::Star).unwrap();
        assert_eq!(axiom, AxiomId::O3);
        assert!(witness.recheck(&opr, 1e-9));
    }

    #[test]
    fn left_projection_t4_routes_to_commutativity() {
        // x * 1 = x holds for left projection, so the neutral failure is
        // purely left-sided and must surface as O1.
        let opr = opr("left-projection", "minimum");
        let report = scalar("left-projection");
        let (axiom, witness) =
            build_witness(&opr, &report, ScalarAxiom::T4, WitnessSlot::Star).unwrap();
        assert_eq!(axiom, AxiomId::O1);
        assert!(witness.recheck(&opr, 1e-9));
    }

    #[test]
    fn combiner_mean_t4_gives_chi_witness() {
        let opr = opr("minimum", "mean");
        let report = scalar("mean");
        let (axiom, witness) =
            build_witness(&opr, &report, ScalarAxiom::T4, WitnessSlot::Combiner).unwrap();
        assert_eq!(axiom, AxiomId::O3);
        assert!(witness.recheck(&opr, 1e-9));
        // the canonical instance: chi{1} ⋏ chi{0.4} = chi{0.7} != chi{0.4}
        let spike = opr
            .convolve(&chi(1.0), &chi(0.4))
            .unwrap()
            .as_exact()
            .cloned()
            .unwrap();
        assert_eq!(spike, chi(0.7));
    }

    #[test]
    fn combiner_left_projection_t1_gives_chi_commute() {
        let opr = opr("minimum", "left-projection");
        let report = scalar("left-projection");
        let (axiom, witness) =
            build_witness(&opr, &report, ScalarAxiom::T1, WitnessSlot::Combiner).unwrap();
        assert_eq!(axiom, AxiomId::O1);
        assert!(witness.recheck(&opr, 1e-9));
    }

    #[test]
    fn no_failure_means_no_witness() {
        let opr = opr("product", "minimum");
        let report = scalar("product");
        assert!(build_witness(&opr, &report, ScalarAxiom::T1, WitnessSlot::Star).is_err());
    }
}
