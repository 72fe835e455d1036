//! Exact convolution engines.
//!
//! Three closed forms cover the inputs the axiom harness needs exactly:
//!
//! 1. **Point characteristics.** When the star vanishes on the off-diagonal
//!    corners of `{0,1}²`, the only pair contributing a nonzero value to
//!    `χ_{x1} ⋏ χ_{x2}` is `(x1, x2)` itself, so the result is a spike of
//!    height `1 ⋆ 1` at `x1 △ x2`. Valid for any surjective combiner.
//!
//! 2. **Neutral inputs.** For `g = χ_{1}` under a verified continuous
//!    t-norm combiner, splitting the level set by `z = 1` versus `z < 1`
//!    gives `(f ⋏ χ₁)(x) = max( (f(x)) ⋆ 1,  (sup_{y ∈ Yₓ} f(y)) ⋆ 0 )`
//!    where `Yₓ` is `[x, 1]` for min-like combiners and `(x, 1]` for
//!    strictly monotone ones. With the star's boundary sections known as
//!    exact affine maps, every piece is an exact piecewise function.
//!    The join-like dual swaps 0 for 1 and left for right.
//!
//! 3. **Interval closure.** For closed-interval characteristics under a
//!    monotone continuous combiner, the in-in class image is the interval
//!    between the corner images, so the result is `χ_{[a△c, b△d]}`.
//!
//! The neutral form takes the combiner's grid-verified axioms at face
//! value; for the catalog t-norms on dyadic arguments neutrality is exact
//! in floating point as well.

use super::{ConvolutionOperator, OperatorKind};
use crate::error::{Error, Result};
use crate::membership::MembershipFunction;
use crate::rat::{self, Rat};
use crate::scalar::DiagonalSlice;

/// Attempt an exact path. `None` means no engine applies; `Some(Err)` means
/// an applicable engine hit a precondition failure.
pub(crate) fn try_exact(
    opr: &ConvolutionOperator,
    f: &MembershipFunction,
    g: &MembershipFunction,
) -> Option<Result<MembershipFunction>> {
    if let (Some(x1), Some(x2)) = (f.as_chi_point(), g.as_chi_point()) {
        if opr.profile().star_offdiagonal_corners_zero {
            return Some(chi_chi(opr, &x1, &x2));
        }
    }
    match opr.kind() {
        OperatorKind::MeetLike => {
            if g.as_chi_point() == Some(rat::one()) && neutral_gates(opr) {
                return Some(neutral_meet(opr, f));
            }
        }
        OperatorKind::JoinLike => {
            if g.as_chi_point() == Some(rat::zero()) && neutral_gates_dual(opr) {
                return Some(neutral_join(opr, f));
            }
        }
    }
    if let (Some((a, b)), Some((c, d))) = (f.as_chi_interval(), g.as_chi_interval()) {
        if opr.profile().star_corners_bool
            && opr.profile().combiner_monotone
            && opr.combiner().declared_continuous()
        {
            return Some(interval_closure(opr, &a, &b, &c, &d));
        }
    }
    None
}

/// `χ_{x1} ⋏ χ_{x2}`: a spike of height `1 ⋆ 1` at `x1 △ x2`.
fn chi_chi(opr: &ConvolutionOperator, x1: &Rat, x2: &Rat) -> Result<MembershipFunction> {
    let location = opr.combiner().eval(rat::to_f64(x1), rat::to_f64(x2));
    let height = opr.star().eval(1.0, 1.0);
    spike(&rat::from_f64(location), &rat::from_f64(height))
}

fn spike(location: &Rat, height: &Rat) -> Result<MembershipFunction> {
    if !rat::in_unit(location) || !rat::in_unit(height) {
        return Err(Error::Precondition(format!(
            "spike outside the unit square: value {height} at {location}"
        )));
    }
    if *height == rat::zero() {
        return MembershipFunction::constant(rat::zero());
    }
    use crate::membership::Affine;
    let zero_seg = Affine::constant(rat::zero());
    if *location == rat::zero() {
        MembershipFunction::from_parts(
            vec![rat::zero(), rat::one()],
            vec![height.clone(), rat::zero()],
            vec![zero_seg],
        )
    } else if *location == rat::one() {
        MembershipFunction::from_parts(
            vec![rat::zero(), rat::one()],
            vec![rat::zero(), height.clone()],
            vec![zero_seg],
        )
    } else {
        MembershipFunction::from_parts(
            vec![rat::zero(), location.clone(), rat::one()],
            vec![rat::zero(), height.clone(), rat::zero()],
            vec![zero_seg.clone(), zero_seg],
        )
    }
}

fn neutral_gates(opr: &ConvolutionOperator) -> bool {
    opr.profile().combiner_cont_tnorm
        && opr.star().sections().is_some()
        && opr.combiner().diagonal_slice().is_some()
}

fn neutral_gates_dual(opr: &ConvolutionOperator) -> bool {
    opr.profile().combiner_cont_tconorm
        && opr.star().sections().is_some()
        && opr.combiner().diagonal_slice().is_some()
}

/// `(f ⋏ χ₁)` under a continuous t-norm combiner.
fn neutral_meet(opr: &ConvolutionOperator, f: &MembershipFunction) -> Result<MembershipFunction> {
    let sections = opr.star().sections().expect("gated");
    if sections.at_zero.slope < rat::zero() {
        return Err(Error::Precondition(
            "neutral engine needs a nondecreasing section at 0".to_string(),
        ));
    }
    let term1 = f.map_values(&sections.at_one)?;
    let tail_sup = match opr.combiner().diagonal_slice().expect("gated") {
        DiagonalSlice::Included => f.envelope_right(),
        DiagonalSlice::Excluded => f.sup_strictly_right(),
    };
    let term2 = tail_sup.map_values(&sections.at_zero)?;
    let combined = term1.pointwise_max(&term2);

    // Endpoint corrections: at x = 0 every y solves y △ z = 0 with z < 1,
    // so the tail term sees the full supremum; at x = 1 the z < 1 class is
    // empty and only f(1) ⋆ 1 remains.
    let at_zero = rat::max(
        &sections.at_one.apply(&f.eval(&rat::zero())),
        &sections.at_zero.apply(&f.sup()),
    )
    .clone();
    let at_one = sections.at_one.apply(&f.eval(&rat::one()));
    with_endpoint_values(&combined, at_zero, at_one)
}

/// `(f ⋎ χ₀)` under a continuous t-conorm combiner.
fn neutral_join(opr: &ConvolutionOperator, f: &MembershipFunction) -> Result<MembershipFunction> {
    let sections = opr.star().sections().expect("gated");
    if sections.at_zero.slope < rat::zero() {
        return Err(Error::Precondition(
            "neutral engine needs a nondecreasing section at 0".to_string(),
        ));
    }
    let term1 = f.map_values(&sections.at_one)?;
    let head_sup = match opr.combiner().diagonal_slice().expect("gated") {
        DiagonalSlice::Included => f.envelope_left(),
        DiagonalSlice::Excluded => f.sup_strictly_left(),
    };
    let term2 = head_sup.map_values(&sections.at_zero)?;
    let combined = term1.pointwise_max(&term2);

    let at_one = rat::max(
        &sections.at_one.apply(&f.eval(&rat::one())),
        &sections.at_zero.apply(&f.sup()),
    )
    .clone();
    let at_zero = sections.at_one.apply(&f.eval(&rat::zero()));
    with_endpoint_values(&combined, at_zero, at_one)
}

fn with_endpoint_values(
    f: &MembershipFunction,
    at_zero: Rat,
    at_one: Rat,
) -> Result<MembershipFunction> {
    let mut point_values = f.point_values().to_vec();
    let last = point_values.len() - 1;
    point_values[0] = at_zero;
    point_values[last] = at_one;
    MembershipFunction::from_parts(
        f.breakpoints().to_vec(),
        point_values,
        f.segments().to_vec(),
    )
}

/// `χ_[a,b] ⋏ χ_[c,d] = χ_[a△c, b△d]`.
pub(crate) fn interval_closure(
    opr: &ConvolutionOperator,
    a: &Rat,
    b: &Rat,
    c: &Rat,
    d: &Rat,
) -> Result<MembershipFunction> {
    if !opr.profile().star_corners_bool {
        return Err(Error::Precondition(format!(
            "star `{}` does not take the 0/1 corner pattern; interval closure does not apply",
            opr.star().name()
        )));
    }
    if !opr.profile().combiner_monotone || !opr.combiner().declared_continuous() {
        return Err(Error::Precondition(format!(
            "combiner `{}` is not verified monotone and continuous; interval closure does not apply",
            opr.combiner().name()
        )));
    }
    let lo = opr.combiner().eval(rat::to_f64(a), rat::to_f64(c));
    let hi = opr.combiner().eval(rat::to_f64(b), rat::to_f64(d));
    if lo > hi {
        return Err(Error::Precondition(format!(
            "combiner image endpoints out of order: {lo} > {hi}"
        )));
    }
    Ok(MembershipFunction::chi_interval_rat(
        rat::from_f64(lo),
        rat::from_f64(hi),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::{Convolved, Engine};
    use crate::scalar::catalog_lookup;
    use crate::unit::UnitValue;

    fn u(v: f64) -> UnitValue {
        UnitValue::new(v).unwrap()
    }

    fn chi(x: f64) -> MembershipFunction {
        MembershipFunction::chi_point(u(x))
    }

    fn operator(star: &str, comb: &str) -> ConvolutionOperator {
        ConvolutionOperator::new(
            catalog_lookup(star, &[]).unwrap(),
            catalog_lookup(comb, &[]).unwrap(),
            OperatorKind::MeetLike,
            Engine::Auto,
            64,
        )
        .unwrap()
    }

    #[test]
    fn chi_composition_under_product() {
        let opr = operator("product", "product");
        let out = opr.convolve(&chi(0.5), &chi(0.5)).unwrap();
        assert_eq!(out.as_exact().unwrap(), &chi(0.25));
    }

    #[test]
    fn chi_composition_under_arbitrary_surjective_combiner() {
        // Section 4 style: star a t-norm, combiner mean (not a t-norm).
        let opr = operator("minimum", "mean");
        let out = opr.convolve(&chi(1.0), &chi(0.4)).unwrap();
        assert_eq!(out.as_exact().unwrap(), &chi(0.7));
    }

    #[test]
    fn neutral_element_is_exact_identity_for_tnorm_stars() {
        let funcs = [
            MembershipFunction::tent(u(0.4), u(0.25), u(0.125)),
            MembershipFunction::w_func(u(0.5)),
            MembershipFunction::v_func(u(0.3)),
            chi(0.25),
        ];
        for star in ["minimum", "product", "lukasiewicz"] {
            for comb in ["minimum", "product", "lukasiewicz"] {
                let opr = operator(star, comb);
                for f in &funcs {
                    let out = opr.convolve(f, &chi(1.0)).unwrap();
                    assert_eq!(
                        out.as_exact().unwrap(),
                        f,
                        "star {star}, combiner {comb}, f {f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn neutral_failure_of_mean_star_reproduces_known_value() {
        // (W_half ⋏ χ₁)(0.5) under star = mean, combiner = min:
        // the z = 1 slice gives mean(0.5, 1) = 0.75, the z < 1 slice at most
        // mean(1, 0) = 0.5, so the sup is 0.75 while W_half(0.5) = 0.5.
        let opr = operator("mean", "minimum");
        let w = MembershipFunction::w_func(u(0.5));
        let out = opr.convolve(&w, &chi(1.0)).unwrap();
        let exact = out.as_exact().unwrap();
        assert_eq!(exact.eval_f64(0.5), 0.75);
        assert_ne!(exact, &w);
    }

    #[test]
    fn neutral_engine_matches_bruteforce_for_broken_stars() {
        let w = MembershipFunction::w_func(u(0.5));
        let v = MembershipFunction::v_func(u(0.25));
        for star in ["mean", "scaled-product", "left-projection", "asym-power"] {
            for comb in ["minimum", "product"] {
                let opr = operator(star, comb);
                for f in [&w, &v] {
                    let exact = match opr.convolve(f, &chi(1.0)).unwrap() {
                        Convolved::Exact(e) => e,
                        Convolved::Grid(_) => panic!("expected exact path"),
                    };
                    let oracle = opr.convolve_bruteforce(f, &chi(1.0), 512);
                    for k in 0..=64 {
                        let x = k as f64 / 64.0;
                        let got = exact.eval_f64(x);
                        let reference = oracle.values()[k];
                        // The oracle bucket holds a sup over the bucket
                        // interval approximated from below.
                        assert!(
                            reference <= got + 0.05 && got <= reference + 0.05,
                            "{star}/{comb} at {x}: exact {got}, oracle {reference}"
                        );
                    }
                    // boundary bucket agrees exactly
                    assert_eq!(exact.eval_f64(1.0), oracle.values()[64]);
                }
            }
        }
    }

    #[test]
    fn join_dual_neutral_element() {
        let star = catalog_lookup("minimum", &[]).unwrap();
        let comb = catalog_lookup("maximum", &[]).unwrap();
        let opr =
            ConvolutionOperator::new(star, comb, OperatorKind::JoinLike, Engine::Auto, 64).unwrap();
        let funcs = [
            MembershipFunction::tent(u(0.4), u(0.25), u(0.125)),
            MembershipFunction::w_func(u(0.5)),
            chi(0.75),
        ];
        for f in &funcs {
            let out = opr.convolve(f, &chi(0.0)).unwrap();
            assert_eq!(out.as_exact().unwrap(), f, "f {f:?}");
        }
    }

    #[test]
    fn interval_closure_examples() {
        let opr = operator("minimum", "minimum");
        // χ_[0,1] ⋏ χ_[a,b] = χ_[0,b] for a t-norm combiner
        let out = opr
            .closure_on_intervals(u(0.0), u(1.0), u(0.25), u(0.75))
            .unwrap();
        assert_eq!(
            out,
            MembershipFunction::chi_interval(u(0.0), u(0.75)).unwrap()
        );

        let opr_prod = operator("minimum", "product");
        let out = opr_prod
            .closure_on_intervals(u(0.2), u(0.5), u(0.4), u(0.8))
            .unwrap();
        // endpoints are the products of the interval endpoints, computed
        // here independently (0.2 * 0.4 is not the f64 literal 0.08)
        assert_eq!(
            out,
            MembershipFunction::chi_interval(u(0.2 * 0.4), u(0.5 * 0.8)).unwrap()
        );

        // join form: χ_[0,1] ⋎ χ_[a,b] = χ_[a,1] for a t-conorm combiner
        let star = catalog_lookup("minimum", &[]).unwrap();
        let comb = catalog_lookup("maximum", &[]).unwrap();
        let oprj =
            ConvolutionOperator::new(star, comb, OperatorKind::JoinLike, Engine::Auto, 64).unwrap();
        let out = oprj
            .closure_on_intervals(u(0.0), u(1.0), u(0.25), u(0.75))
            .unwrap();
        assert_eq!(
            out,
            MembershipFunction::chi_interval(u(0.25), u(1.0)).unwrap()
        );
    }

    #[test]
    fn interval_closure_rejects_broken_star() {
        let opr = operator("mean", "minimum");
        assert!(opr
            .closure_on_intervals(u(0.0), u(1.0), u(0.25), u(0.75))
            .is_err());
    }

    #[test]
    fn interval_closure_validated_by_oracle() {
        let opr = operator("product", "product");
        let f = MembershipFunction::chi_interval(u(0.25), u(0.5)).unwrap();
        let g = MembershipFunction::chi_interval(u(0.5), u(0.75)).unwrap();
        let exact = match opr.convolve(&f, &g).unwrap() {
            Convolved::Exact(e) => e,
            Convolved::Grid(_) => panic!("expected exact"),
        };
        assert_eq!(
            exact,
            MembershipFunction::chi_interval(u(0.125), u(0.375)).unwrap()
        );
        let oracle = opr.convolve_bruteforce(&f, &g, 512);
        for k in 0..=64 {
            let x = k as f64 / 64.0;
            let expect = if (0.125..=0.375).contains(&x) {
                1.0
            } else {
                0.0
            };
            // interval endpoints on the bucket lattice make this exact except
            // for the bucket straddling the upper endpoint
            let got = oracle.values()[k];
            if (x - 0.375).abs() > 1.0 / 64.0 {
                assert_eq!(got, expect, "bucket {k}");
            }
        }
    }

    #[test]
    fn boundary_value_identities() {
        let opr = operator("mean", "product");
        let f = chi(1.0);
        let g = chi(0.0);
        // (χ₁ ⋏ χ₀)(1) = mean(1, 0) = 0.5, exhibiting the broken neutral
        assert_eq!(opr.convolve_boundary_value(&f, &g).unwrap().get(), 0.5);

        let v_u = MembershipFunction::v_func(u(0.3));
        let v_v = MembershipFunction::v_func(u(0.8));
        let opr2 = operator("lukasiewicz", "minimum");
        assert_eq!(
            opr2.convolve_boundary_value(&v_u, &v_v).unwrap().get(),
            (0.3f64 + 0.8 - 1.0).max(0.0)
        );

        // maximum reaches 1 away from (1,1): the identity does not apply
        let star = catalog_lookup("minimum", &[]).unwrap();
        let comb = catalog_lookup("maximum", &[]).unwrap();
        let oprj =
            ConvolutionOperator::new(star, comb, OperatorKind::JoinLike, Engine::Auto, 64).unwrap();
        assert!(oprj.convolve_boundary_value(&f, &g).is_err());
        // but the dual at 0 does
        assert_eq!(
            oprj.convolve_boundary_value_at_zero(&v_u, &v_v)
                .unwrap()
                .get(),
            1.0f64.min(1.0)
        );
    }

    #[test]
    fn non_surjective_combiner_rejected() {
        let star = catalog_lookup("minimum", &[]).unwrap();
        let comb = catalog_lookup("scaled-product", &[]).unwrap();
        let result = ConvolutionOperator::new(star, comb, OperatorKind::MeetLike, Engine::Auto, 64);
        assert!(matches!(result, Err(Error::NonSurjectiveCombiner(_))));
    }
}
