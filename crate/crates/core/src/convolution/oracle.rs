//! Brute-force oracle: dense pair enumeration bucketed identically to the
//! grid engine. Independent of every closed form it validates.

use super::grid::{bucket_of, GridFunction};
use super::MembershipFunction;
use crate::scalar::BinaryOp;

pub(crate) fn bruteforce(
    star: &BinaryOp,
    combiner: &BinaryOp,
    f: &MembershipFunction,
    g: &MembershipFunction,
    grid_n: usize,
    pairs_n: usize,
) -> GridFunction {
    let f_samples = f.sample_values(pairs_n);
    let g_samples = g.sample_values(pairs_n);
    let mut out = GridFunction::new_unfilled(grid_n);
    let step = 1.0 / pairs_n as f64;
    for (i, fv) in f_samples.iter().enumerate() {
        let y = i as f64 * step;
        for (j, gv) in g_samples.iter().enumerate() {
            let z = j as f64 * step;
            let bucket = bucket_of(combiner.eval(y, z), grid_n);
            out.offer(bucket, star.eval(*fv, *gv));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use crate::convolution::{ConvolutionOperator, Engine, OperatorKind};
    use crate::membership::MembershipFunction;
    use crate::scalar::catalog_lookup;
    use crate::unit::UnitValue;

    fn u(v: f64) -> UnitValue {
        UnitValue::new(v).unwrap()
    }

    fn operator(star: &str, comb: &str, n: usize) -> ConvolutionOperator {
        ConvolutionOperator::new(
            catalog_lookup(star, &[]).unwrap(),
            catalog_lookup(comb, &[]).unwrap(),
            OperatorKind::MeetLike,
            Engine::Grid,
            n,
        )
        .unwrap()
    }

    #[test]
    fn oracle_fills_everything_for_surjective_combiners() {
        let f = MembershipFunction::tent(u(0.5), u(0.25), u(0.25));
        let g = MembershipFunction::v_func(u(0.5));
        for comb in ["minimum", "product", "mean"] {
            let opr = operator("product", comb, 64);
            let oracle = opr.convolve_bruteforce(&f, &g, 256);
            assert_eq!(oracle.unfilled_count(), 0, "{comb}");
        }
    }

    #[test]
    fn oracle_dominates_grid_per_bucket() {
        // The oracle samples a superset of the grid pairs, so its bucket
        // maxima are pointwise at least the grid's.
        let opr = operator("product", "product", 64);
        let f = MembershipFunction::tent(u(0.5), u(0.25), u(0.0));
        let g = MembershipFunction::tent(u(0.25), u(0.5), u(0.25));
        let grid = opr.convolve_grid(&f, &g);
        let oracle = opr.convolve_bruteforce(&f, &g, 256);
        for k in 0..=64 {
            if grid.filled()[k] && oracle.filled()[k] {
                assert!(oracle.values()[k] >= grid.values()[k] - 1e-15, "bucket {k}");
            }
        }
    }

    #[test]
    fn oracle_matches_known_product_convolution_of_descending_lines() {
        // (V_half ⋏ V_half)(x) under star = combiner = product maximizes
        // (1 - y/2)(1 - z/2) over y z = x, optimum at y = z = sqrt(x):
        // value (1 - sqrt(x)/2)^2.
        let opr = operator("product", "product", 64);
        let v = MembershipFunction::v_func(u(0.5));
        let oracle = opr.convolve_bruteforce(&v, &v, 512);
        for k in [0usize, 16, 32, 48, 64] {
            let x = k as f64 / 64.0;
            let expect = (1.0 - x.sqrt() / 2.0).powi(2);
            // the bucket holds the sup over [k/64, (k+1)/64), which exceeds
            // the left-endpoint value for this decreasing result
            let got = oracle.values()[k];
            assert!(
                got >= expect - 5e-3 && got <= expect + 2e-2,
                "bucket {k}: got {got}, expected about {expect}"
            );
        }
        // boundary bucket is exact: star(f(1), g(1)) = 0.25
        assert_eq!(oracle.values()[64], 0.25);
    }
}
