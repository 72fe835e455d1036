//! Grid-exhaustive axiom checks for scalar operations.
//!
//! The t-norm axioms are universally quantified; at desk scale we test them
//! on every grid point `i/n`. Commutativity, monotonicity and the neutral
//! elements sweep the full pair grid; associativity sweeps triples on a
//! coarser grid so runtime stays bounded. Continuity is reported as a
//! sampled estimate, never assumed.

use super::BinaryOp;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarAxiom {
    /// Commutativity.
    T1,
    /// Associativity.
    T2,
    /// Increasing in each argument.
    T3,
    /// Neutral element 1.
    T4,
    /// Neutral element 0 (the t-conorm variant).
    T4Prime,
}

impl fmt::Display for ScalarAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarAxiom::T1 => write!(f, "T1"),
            ScalarAxiom::T2 => write!(f, "T2"),
            ScalarAxiom::T3 => write!(f, "T3"),
            ScalarAxiom::T4 => write!(f, "T4"),
            ScalarAxiom::T4Prime => write!(f, "T4'"),
        }
    }
}

/// A concrete failing instance with both evaluated sides.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarWitness {
    pub x: f64,
    pub y: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: ScalarAxiom,
    pub pass: bool,
    /// Worst witness found (largest |lhs - rhs| violation).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ScalarWitness>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScalarCheckConfig {
    /// Pair-grid resolution for T1/T3/T4/T4'.
    pub grid_n: usize,
    /// Triple-grid resolution for T2.
    pub assoc_grid_n: usize,
    /// Comparison tolerance. 0 means exact equality; catalog entries built
    /// from closed forms pass T1/T4 exactly on dyadic grids, while parametric
    /// families (Hamacher) need a few ulps of slack on T2.
    pub eps: f64,
}

impl Default for ScalarCheckConfig {
    fn default() -> Self {
        ScalarCheckConfig {
            grid_n: 256,
            assoc_grid_n: 64,
            eps: 1e-12,
        }
    }
}

/// Per-axiom verdicts plus the sampled continuity estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarReport {
    pub op_name: String,
    pub grid_n: usize,
    pub assoc_grid_n: usize,
    pub eps: f64,
    pub t1: AxiomVerdict,
    pub t2: AxiomVerdict,
    pub t3: AxiomVerdict,
    pub t4: AxiomVerdict,
    pub t4_prime: AxiomVerdict,
    /// All evaluated values stayed in [0, 1] on the grid.
    pub range_ok: bool,
    /// Max |op(x+h, y) - op(x, y)| over adjacent grid cells in either
    /// coordinate. An estimate: sampling cannot certify continuity.
    pub continuity_estimate: f64,
}

impl ScalarReport {
    pub fn verdicts(&self) -> [&AxiomVerdict; 5] {
        [&self.t1, &self.t2, &self.t3, &self.t4, &self.t4_prime]
    }

    /// T1-T4 all pass: the operation behaved as a t-norm on the grid.
    pub fn passes_tnorm_axioms(&self) -> bool {
        self.t1.pass && self.t2.pass && self.t3.pass && self.t4.pass
    }

    /// T1-T3 and T4' pass: the operation behaved as a t-conorm on the grid.
    pub fn passes_tconorm_axioms(&self) -> bool {
        self.t1.pass && self.t2.pass && self.t3.pass && self.t4_prime.pass
    }

    pub fn failed_axioms(&self) -> Vec<ScalarAxiom> {
        self.verdicts()
            .into_iter()
            .filter(|v| !v.pass)
            .map(|v| v.axiom)
            .collect()
    }
}

struct WorstWitness {
    axiom: ScalarAxiom,
    worst: f64,
    witness: Option<ScalarWitness>,
}

impl WorstWitness {
    fn new(axiom: ScalarAxiom) -> Self {
        WorstWitness {
            axiom,
            worst: 0.0,
            witness: None,
        }
    }

    fn record(&mut self, eps: f64, x: f64, y: f64, z: Option<f64>, lhs: f64, rhs: f64) {
        let gap = (lhs - rhs).abs();
        if gap > eps && gap > self.worst {
            self.worst = gap;
            self.witness = Some(ScalarWitness { x, y, z, lhs, rhs });
        }
    }

    /// For monotonicity: a violation is a signed decrease, not a distance.
    fn record_decrease(&mut self, eps: f64, x: f64, y: f64, z: Option<f64>, lo: f64, hi: f64) {
        let drop = lo - hi;
        if drop > eps && drop > self.worst {
            self.worst = drop;
            self.witness = Some(ScalarWitness {
                x,
                y,
                z,
                lhs: lo,
                rhs: hi,
            });
        }
    }

    fn finish(self) -> AxiomVerdict {
        AxiomVerdict {
            axiom: self.axiom,
            pass: self.witness.is_none(),
            witness: self.witness,
        }
    }
}

/// Check T1-T4 and T4' on the grid and estimate continuity.
pub fn check_scalar_axioms(op: &BinaryOp, config: &ScalarCheckConfig) -> ScalarReport {
    assert!(config.grid_n >= 2, "grid_n must be at least 2");
    assert!(config.assoc_grid_n >= 2, "assoc_grid_n must be at least 2");
    let n = config.grid_n;
    let eps = config.eps;
    let xs: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();

    let mut t1 = WorstWitness::new(ScalarAxiom::T1);
    let mut t3 = WorstWitness::new(ScalarAxiom::T3);
    let mut t4 = WorstWitness::new(ScalarAxiom::T4);
    let mut t4p = WorstWitness::new(ScalarAxiom::T4Prime);
    let mut range_ok = true;
    let mut continuity = 0.0f64;

    // Cache the full value grid once; every check below reads from it.
    let side = n + 1;
    let mut grid = vec![0.0f64; side * side];
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            let v = op.eval(x, y);
            if !(0.0..=1.0).contains(&v) {
                range_ok = false;
            }
            grid[i * side + j] = v;
        }
    }

    for i in 0..=n {
        let x = xs[i];
        // T4 / T4': neutral elements on both sides.
        t4.record(eps, 1.0, x, None, grid[n * side + i], x);
        t4.record(eps, x, 1.0, None, grid[i * side + n], x);
        t4p.record(eps, 0.0, x, None, grid[i], x);
        t4p.record(eps, x, 0.0, None, grid[i * side], x);
        for j in 0..=n {
            let y = xs[j];
            let v = grid[i * side + j];
            // T1 over the upper triangle.
            if j > i {
                t1.record(eps, x, y, None, v, grid[j * side + i]);
            }
            // T3 between adjacent grid values in each coordinate; adjacency
            // suffices since monotonicity is transitive.
            if j < n {
                let next = grid[i * side + j + 1];
                t3.record_decrease(eps, x, y, Some(xs[j + 1]), v, next);
                continuity = continuity.max((next - v).abs());
            }
            if i < n {
                let next = grid[(i + 1) * side + j];
                t3.record_decrease(eps, y, x, Some(xs[i + 1]), v, next);
                continuity = continuity.max((next - v).abs());
            }
        }
    }

    // T2 on the coarser triple grid.
    let an = config.assoc_grid_n;
    let axs: Vec<f64> = (0..=an).map(|i| i as f64 / an as f64).collect();
    let mut t2 = WorstWitness::new(ScalarAxiom::T2);
    for &x in &axs {
        for &y in &axs {
            let xy = op.eval(x, y);
            for &z in &axs {
                let lhs = op.eval(xy, z);
                let rhs = op.eval(x, op.eval(y, z));
                t2.record(eps, x, y, Some(z), lhs, rhs);
            }
        }
    }

    ScalarReport {
        op_name: op.name().to_string(),
        grid_n: n,
        assoc_grid_n: an,
        eps,
        t1: t1.finish(),
        t2: t2.finish(),
        t3: t3.finish(),
        t4: t4.finish(),
        t4_prime: t4p.finish(),
        range_ok,
        continuity_estimate: continuity,
    }
}

/// Outcome of the `op(x, y) = 1 only at (1, 1)` grid scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OneCheck {
    pub holds: bool,
    /// Grid pairs other than the corner where the extreme value is attained.
    pub witnesses: Vec<(f64, f64)>,
}

/// True iff `op(x, y) = 1` occurs only at `(1, 1)` on the grid. Holds for
/// every t-norm; maximal-style conorms fail it. Gates the boundary-value
/// shortcut of the convolution engine.
pub fn is_one_iff_both_one(op: &BinaryOp, grid_n: usize) -> OneCheck {
    scan_extreme(op, grid_n, 1.0)
}

/// Dual scan: `op(x, y) = 0` only at `(0, 0)`. Holds for every t-conorm.
pub fn is_zero_iff_both_zero(op: &BinaryOp, grid_n: usize) -> OneCheck {
    scan_extreme(op, grid_n, 0.0)
}

fn scan_extreme(op: &BinaryOp, grid_n: usize, target: f64) -> OneCheck {
    let mut witnesses = Vec::new();
    for i in 0..=grid_n {
        for j in 0..=grid_n {
            let (x, y) = (i as f64 / grid_n as f64, j as f64 / grid_n as f64);
            if x == target && y == target {
                continue;
            }
            if op.eval(x, y) == target && witnesses.len() < 8 {
                witnesses.push((x, y));
            }
        }
    }
    OneCheck {
        holds: witnesses.is_empty(),
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::catalog_lookup;

    fn cfg(grid_n: usize) -> ScalarCheckConfig {
        ScalarCheckConfig {
            grid_n,
            assoc_grid_n: 32,
            eps: 1e-12,
        }
    }

    #[test]
    fn minimum_passes_all_tnorm_axioms() {
        let op = catalog_lookup("minimum", &[]).unwrap();
        let report = check_scalar_axioms(&op, &cfg(64));
        assert!(report.passes_tnorm_axioms());
        assert!(report.range_ok);
    }

    #[test]
    fn declared_tnorms_pass_at_full_resolution() {
        for (name, params) in [
            ("minimum", vec![]),
            ("product", vec![]),
            ("lukasiewicz", vec![]),
            ("drastic", vec![]),
            ("nilpotent-minimum", vec![]),
            ("hamacher", vec![0.5]),
            ("hamacher", vec![2.0]),
        ] {
            let op = catalog_lookup(name, &params).unwrap();
            let report = check_scalar_axioms(&op, &ScalarCheckConfig::default());
            assert!(
                report.passes_tnorm_axioms(),
                "{name}{params:?} failed {:?}",
                report.failed_axioms()
            );
        }
    }

    #[test]
    fn declared_tconorms_pass_at_full_resolution() {
        for name in [
            "maximum",
            "probabilistic-sum",
            "bounded-sum",
            "drastic-conorm",
        ] {
            let op = catalog_lookup(name, &[]).unwrap();
            let report = check_scalar_axioms(&op, &ScalarCheckConfig::default());
            assert!(
                report.passes_tconorm_axioms(),
                "{name} failed {:?}",
                report.failed_axioms()
            );
        }
    }

    #[test]
    fn mean_fails_t2_and_t4_with_witnesses() {
        let op = catalog_lookup("mean", &[]).unwrap();
        let report = check_scalar_axioms(&op, &cfg(64));
        assert!(!report.t2.pass);
        assert!(!report.t4.pass);
        let w = report.t4.witness.as_ref().unwrap();
        assert!((w.lhs - w.rhs).abs() > 1e-12);
        // The canonical instance: mean(1, 0.5) = 0.75 != 0.5.
        assert_eq!(op.eval(1.0, 0.5), 0.75);
    }

    #[test]
    fn asym_power_fails_t1() {
        let op = catalog_lookup("asym-power", &[]).unwrap();
        let report = check_scalar_axioms(&op, &cfg(64));
        assert!(!report.t1.pass);
        // 0.5 * 0.8^2 = 0.32 vs 0.8 * 0.5^2 = 0.2
        assert!((op.eval(0.5, 0.8) - 0.32).abs() < 1e-15);
        assert!((op.eval(0.8, 0.5) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn every_broken_op_fails_something() {
        for name in ["mean", "scaled-product", "left-projection", "asym-power"] {
            let op = catalog_lookup(name, &[]).unwrap();
            let report = check_scalar_axioms(&op, &cfg(64));
            let failed = report.failed_axioms();
            assert!(
                failed.iter().any(|a| matches!(
                    a,
                    ScalarAxiom::T1 | ScalarAxiom::T2 | ScalarAxiom::T3 | ScalarAxiom::T4
                )),
                "{name} unexpectedly passed T1-T4"
            );
        }
    }

    #[test]
    fn t3_violation_detected_for_decreasing_op() {
        let op = crate::scalar::BinaryOp::from_fn(
            "fading",
            crate::scalar::OpClass::Other,
            true,
            |x, y| x * (1.0 - 0.5 * y),
        );
        let report = check_scalar_axioms(&op, &cfg(32));
        assert!(!report.t3.pass);
        let w = report.t3.witness.unwrap();
        assert!(w.lhs > w.rhs);
    }

    #[test]
    fn continuity_estimate_flags_drastic() {
        let smooth = catalog_lookup("product", &[]).unwrap();
        let rough = catalog_lookup("drastic", &[]).unwrap();
        let smooth_report = check_scalar_axioms(&smooth, &cfg(64));
        let rough_report = check_scalar_axioms(&rough, &cfg(64));
        assert!(smooth_report.continuity_estimate < 0.05);
        assert!(rough_report.continuity_estimate > 0.5);
    }

    #[test]
    fn one_only_at_corner() {
        let min = catalog_lookup("minimum", &[]).unwrap();
        let product = catalog_lookup("product", &[]).unwrap();
        let max = catalog_lookup("maximum", &[]).unwrap();
        assert!(is_one_iff_both_one(&min, 64).holds);
        assert!(is_one_iff_both_one(&product, 64).holds);
        let check = is_one_iff_both_one(&max, 64);
        assert!(!check.holds);
        assert!(!check.witnesses.is_empty());
        for (x, y) in &check.witnesses {
            assert_eq!(max.eval(*x, *y), 1.0);
            assert!(!(*x == 1.0 && *y == 1.0));
        }
        // the canonical instance
        assert_eq!(max.eval(1.0, 0.0), 1.0);
        // Dual: every t-conorm is zero only at the origin.
        assert!(is_zero_iff_both_zero(&max, 64).holds);
    }
}
