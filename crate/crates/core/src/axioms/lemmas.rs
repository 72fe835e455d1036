//! Named lemma checks: one verdict per supporting statement the theorem
//! round-trips lean on, each naming its instances and mode.

use super::{CheckMode, FunctionFamily};
use crate::convolution::{ConvolutionOperator, OperatorKind};
use crate::membership::{LGenerator, MembershipFunction};
use crate::orders;
use crate::rat;
use crate::unit::UnitValue;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct LemmaVerdict {
    pub name: String,
    pub passed: bool,
    pub instances: usize,
    pub mode: CheckMode,
    pub detail: String,
}

fn verdict(
    name: &str,
    passed: bool,
    instances: usize,
    mode: CheckMode,
    detail: String,
) -> LemmaVerdict {
    LemmaVerdict {
        name: name.to_string(),
        passed,
        instances,
        mode,
        detail,
    }
}

/// Run the full lemma suite for an operator over a family.
pub fn lemma_suite(
    opr: &ConvolutionOperator,
    family: &FunctionFamily,
    seed: u64,
) -> Vec<LemmaVerdict> {
    vec![
        boundary_identity(opr, seed),
        chi_composition(opr, seed),
        chi_order(),
        v_order(),
        envelope_lemmas(family),
        v_envelopes(),
        neutral_conclusions(opr),
        monotone_lift(opr),
    ]
}

/// `(f ⋏ g)(1) = f(1) ⋆ g(1)`: the grid's boundary bucket must equal the
/// exact boundary value on random pairs (dually at 0 for the join form).
fn boundary_identity(opr: &ConvolutionOperator, seed: u64) -> LemmaVerdict {
    let gate = match opr.kind() {
        OperatorKind::MeetLike => opr.profile().combiner_one_only_at_one,
        OperatorKind::JoinLike => opr.profile().combiner_zero_only_at_zero,
    };
    if !gate {
        return verdict(
            "boundary-identity",
            true,
            0,
            CheckMode::Exact,
            "skipped: combiner reaches the boundary away from the corner".to_string(),
        );
    }
    let mut gen = LGenerator::new(seed);
    let n = opr.grid_n();
    let mut checked = 0usize;
    let mut failures = 0usize;
    for _ in 0..20 {
        let f = gen.next_member();
        let g = gen.next_member();
        let grid = opr.convolve_grid(&f, &g);
        let (bucket, expected) = match opr.kind() {
            OperatorKind::MeetLike => (n, opr.convolve_boundary_value(&f, &g)),
            OperatorKind::JoinLike => (0, opr.convolve_boundary_value_at_zero(&f, &g)),
        };
        let expected = expected.expect("gated").get();
        checked += 1;
        if grid.values()[bucket] != expected {
            failures += 1;
        }
    }
    verdict(
        "boundary-identity",
        failures == 0,
        checked,
        CheckMode::Exact,
        format!("{checked} random pairs, boundary bucket vs exact value, {failures} failures"),
    )
}

/// `χ_x ⋏ χ_y = χ_{x △ y}` on sampled lattice pairs.
fn chi_composition(opr: &ConvolutionOperator, seed: u64) -> LemmaVerdict {
    if !opr.profile().star_corners_bool {
        return verdict(
            "chi-composition",
            true,
            0,
            CheckMode::Exact,
            "skipped: star does not take the 0/1 corner pattern".to_string(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
    let mut failures = 0usize;
    let instances = 20;
    for _ in 0..instances {
        let x = rng.gen_range(0..=64) as f64 / 64.0;
        let y = rng.gen_range(0..=64) as f64 / 64.0;
        let f = MembershipFunction::chi_point(UnitValue::new(x).unwrap());
        let g = MembershipFunction::chi_point(UnitValue::new(y).unwrap());
        let expected =
            MembershipFunction::chi_point(UnitValue::new(opr.combiner().eval(x, y)).unwrap());
        match opr.convolve(&f, &g) {
            Ok(result) => {
                if result.as_exact() != Some(&expected) {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    verdict(
        "chi-composition",
        failures == 0,
        instances,
        CheckMode::Exact,
        format!("{instances} lattice pairs, {failures} failures"),
    )
}

/// `χ_{x1} ⊑ χ_{x2}` iff `x1 <= x2`.
fn chi_order() -> LemmaVerdict {
    let points = [0.0, 0.2, 0.5, 0.9, 1.0];
    let mut checked = 0usize;
    let mut failures = 0usize;
    for &x1 in &points {
        for &x2 in &points {
            let f = MembershipFunction::chi_point(UnitValue::new(x1).unwrap());
            let g = MembershipFunction::chi_point(UnitValue::new(x2).unwrap());
            checked += 1;
            if orders::leq_meet(&f, &g) != (x1 <= x2) {
                failures += 1;
            }
        }
    }
    verdict(
        "chi-order",
        failures == 0,
        checked,
        CheckMode::Exact,
        format!("{checked} ordered pairs, {failures} failures"),
    )
}

/// The descending-line family is a `⊑`-chain in its parameter.
fn v_order() -> LemmaVerdict {
    let points = [0.0, 0.1, 0.3, 0.55, 0.8, 1.0];
    let mut checked = 0usize;
    let mut failures = 0usize;
    for &x1 in &points {
        for &x2 in &points {
            let f = MembershipFunction::v_func(UnitValue::new(x1).unwrap());
            let g = MembershipFunction::v_func(UnitValue::new(x2).unwrap());
            checked += 1;
            if orders::leq_meet(&f, &g) != (x1 <= x2) {
                failures += 1;
            }
        }
    }
    verdict(
        "v-order",
        failures == 0,
        checked,
        CheckMode::Exact,
        format!("{checked} ordered pairs, {failures} failures"),
    )
}

/// `f^L(0) = f(0)`, `f^R(1) = f(1)`, envelope idempotence, and the mixed
/// envelopes collapsing to the constant supremum, over the family.
fn envelope_lemmas(family: &FunctionFamily) -> LemmaVerdict {
    let mut failures = 0usize;
    for member in &family.members {
        let f = &member.func;
        let l = f.envelope_left();
        let r = f.envelope_right();
        let sup_const = MembershipFunction::constant(f.sup()).expect("sup in range");
        let ok = l.eval(&rat::zero()) == f.eval(&rat::zero())
            && r.eval(&rat::one()) == f.eval(&rat::one())
            && l.envelope_left() == l
            && r.envelope_right() == r
            && l.envelope_right() == sup_const
            && r.envelope_left() == sup_const;
        if !ok {
            failures += 1;
        }
    }
    verdict(
        "envelope-lemmas",
        failures == 0,
        family.len(),
        CheckMode::Exact,
        format!("{} members, {failures} failures", family.len()),
    )
}

/// `V_x^L` is constant 1 and `V_x^R = V_x`.
fn v_envelopes() -> LemmaVerdict {
    let ones = MembershipFunction::constant(rat::one()).unwrap();
    let mut failures = 0usize;
    let points = [0.0, 0.25, 0.5, 0.75, 1.0];
    for &x in &points {
        let v = MembershipFunction::v_func(UnitValue::new(x).unwrap());
        if v.envelope_left() != ones || v.envelope_right() != v {
            failures += 1;
        }
    }
    verdict(
        "v-envelopes",
        failures == 0,
        points.len(),
        CheckMode::Exact,
        format!("{} parameters, {failures} failures", points.len()),
    )
}

/// Detection form of the neutral-element conclusions: a star under a lifted
/// neutral element must satisfy `x ⋆ 1 = 1 ⋆ x = x` and `x ⋆ 0 = 0 ⋆ x = 0`.
/// The verdict records whether the star actually does, which is exactly the
/// detector the round-trip uses on broken operations.
fn neutral_conclusions(opr: &ConvolutionOperator) -> LemmaVerdict {
    let star = opr.star();
    let mut bad = Vec::new();
    for k in 0..=16 {
        let x = k as f64 / 16.0;
        if star.eval(x, 1.0) != x || star.eval(1.0, x) != x {
            bad.push(format!("1-neutral at {x}"));
        }
        if star.eval(x, 0.0) != 0.0 || star.eval(0.0, x) != 0.0 {
            bad.push(format!("0-absorption at {x}"));
        }
        if bad.len() > 3 {
            break;
        }
    }
    let passed = bad.is_empty();
    verdict(
        "neutral-conclusions",
        passed,
        17,
        CheckMode::Exact,
        if passed {
            "star satisfies the neutral and absorption conclusions".to_string()
        } else {
            format!("violations detected: {}", bad.join(", "))
        },
    )
}

/// Monotone lift through the boundary: whenever the star passes T3, the
/// boundary values of `V_{x1} ⋏ V_y` and `V_{x2} ⋏ V_y` must be ordered for
/// `x1 <= x2`.
fn monotone_lift(opr: &ConvolutionOperator) -> LemmaVerdict {
    let star = opr.star();
    let mut t3_holds = true;
    for k in 0..16 {
        for j in 0..=16 {
            let (x1, x2, y) = (k as f64 / 16.0, (k + 1) as f64 / 16.0, j as f64 / 16.0);
            if star.eval(x1, y) > star.eval(x2, y) || star.eval(y, x1) > star.eval(y, x2) {
                t3_holds = false;
            }
        }
    }
    if !t3_holds {
        return verdict(
            "monotone-lift",
            true,
            0,
            CheckMode::Exact,
            "skipped: star fails T3, the lemma's hypothesis".to_string(),
        );
    }
    let gate = match opr.kind() {
        OperatorKind::MeetLike => opr.profile().combiner_one_only_at_one,
        OperatorKind::JoinLike => opr.profile().combiner_zero_only_at_zero,
    };
    if !gate {
        return verdict(
            "monotone-lift",
            true,
            0,
            CheckMode::Exact,
            "skipped: boundary identity unavailable for this combiner".to_string(),
        );
    }
    let mut checked = 0usize;
    let mut failures = 0usize;
    for k in 0..8 {
        for j in 0..=8 {
            let x1 = k as f64 / 8.0;
            let x2 = (k + 1) as f64 / 8.0;
            let y = j as f64 / 8.0;
            let f1 = MembershipFunction::v_func(UnitValue::new(x1).unwrap());
            let f2 = MembershipFunction::v_func(UnitValue::new(x2).unwrap());
            let fy = MembershipFunction::v_func(UnitValue::new(y).unwrap());
            let (b1, b2) = match opr.kind() {
                OperatorKind::MeetLike => (
                    opr.convolve_boundary_value(&f1, &fy),
                    opr.convolve_boundary_value(&f2, &fy),
                ),
                OperatorKind::JoinLike => (
                    opr.convolve_boundary_value_at_zero(&f1, &fy),
                    opr.convolve_boundary_value_at_zero(&f2, &fy),
                ),
            };
            checked += 1;
            match (b1, b2) {
                (Ok(a), Ok(b)) if a.get() <= b.get() => {}
                _ => failures += 1,
            }
        }
    }
    verdict(
        "monotone-lift",
        failures == 0,
        checked,
        CheckMode::Exact,
        format!("{checked} boundary comparisons, {failures} failures"),
    )
}
