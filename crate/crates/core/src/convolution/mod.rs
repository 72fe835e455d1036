//! The lifted operations `⋏` and `⋎`.
//!
//! A convolution operator carries the scalar operation `⋆`, the combiner
//! (`△` for the meet-like form, `▽` for the join-like form), an engine
//! choice and a grid resolution. The formula is the same in both forms:
//!
//! ```text
//! (f ⋏ g)(x) = sup { f(y) ⋆ g(z) : y △ z = x }
//! ```
//!
//! Three engines realize it:
//!
//! - **exact** — closed forms for characteristic inputs, neutral inputs and
//!   interval closure; outputs are exact piecewise functions.
//! - **grid** — sup over sampled pairs, bucketed by `floor(x̂ · n)` with
//!   `x̂ = 1` going to bucket `n`, so the boundary bucket is exactly the
//!   level set of 1 when the combiner reaches 1 only at `(1, 1)`.
//! - **oracle** — the same bucketing over a denser pair enumeration,
//!   validating both other engines.
//!
//! The sup is approximated from below in the sampled engines; runs with a
//! discontinuous `⋆` may under-shoot an unattained supremum, which the axiom
//! harness labels lower-bound mode.

mod exact;
mod grid;
mod oracle;

pub use grid::{BucketTable, GridFunction};

/// Bucket index of a combined value: `floor(x · n)`, with `x = 1` going to
/// bucket `n`.
pub fn bucket_index(x: f64, n: usize) -> usize {
    grid::bucket_of(x, n)
}

use crate::error::{Error, Result};
use crate::membership::MembershipFunction;
use crate::rat;
use crate::scalar::{
    check_scalar_axioms, is_one_iff_both_one, is_zero_iff_both_zero, BinaryOp, OpClass,
    ScalarCheckConfig,
};
use crate::unit::UnitValue;
use serde::{Deserialize, Serialize};

/// Which slot the combiner fills: `△` (meet-like, neutral input `χ_{1}`)
/// or `▽` (join-like, neutral input `χ_{0}`). Metadata describing intent;
/// the sup formula is identical in shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    #[default]
    MeetLike,
    JoinLike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    #[default]
    Auto,
    Exact,
    Grid,
}

/// Result of a convolution: an exact piecewise function when an exact path
/// applied, a sampled grid function otherwise.
#[derive(Debug, Clone)]
pub enum Convolved {
    Exact(MembershipFunction),
    Grid(GridFunction),
}

impl Convolved {
    pub fn as_exact(&self) -> Option<&MembershipFunction> {
        match self {
            Convolved::Exact(f) => Some(f),
            Convolved::Grid(_) => None,
        }
    }

    pub fn as_grid(&self) -> Option<&GridFunction> {
        match self {
            Convolved::Grid(g) => Some(g),
            Convolved::Exact(_) => None,
        }
    }

    /// Sampled view at resolution `n`, whichever engine produced the result.
    pub fn sample_values(&self, n: usize) -> Vec<f64> {
        match self {
            Convolved::Exact(f) => f.sample_values(n),
            Convolved::Grid(g) => g.resampled_values(n),
        }
    }
}

/// Verified facts about the scalar slots, established once per operator on
/// a fixed verification grid. Engines gate on these instead of trusting
/// declared metadata.
#[derive(Debug, Clone)]
pub struct SlotProfile {
    /// Star takes only {0, 1} on {0, 1}^2 in the t-norm pattern.
    pub star_corners_bool: bool,
    /// Star is 0 at every corner except possibly (1, 1).
    pub star_offdiagonal_corners_zero: bool,
    /// Combiner verified commutative/associative/monotone/1-neutral on the
    /// verification grid and declared continuous.
    pub combiner_cont_tnorm: bool,
    /// Dual check with 0 as the neutral element.
    pub combiner_cont_tconorm: bool,
    /// Combiner is monotone in each argument on the verification grid.
    pub combiner_monotone: bool,
    /// Combiner reaches 1 only at (1, 1) on the verification grid.
    pub combiner_one_only_at_one: bool,
    /// Combiner reaches 0 only at (0, 0) on the verification grid.
    pub combiner_zero_only_at_zero: bool,
    /// Either slot is declared discontinuous: sampled sups are lower bounds.
    pub lower_bound_mode: bool,
}

/// A configured convolution operator.
#[derive(Debug, Clone)]
pub struct ConvolutionOperator {
    star: BinaryOp,
    combiner: BinaryOp,
    kind: OperatorKind,
    engine: Engine,
    grid_n: usize,
    profile: SlotProfile,
}

pub const DEFAULT_GRID_N: usize = 256;
const VERIFY_GRID_N: usize = 64;

impl ConvolutionOperator {
    /// Build an operator, rejecting combiners that are not surjective onto
    /// `[0, 1]` on the grid (the sup over an empty level set is undefined).
    /// Surjectivity is certified by the sampled image attaining 0 and 1
    /// exactly, which suffices for the continuous and catalog combiners.
    pub fn new(
        star: BinaryOp,
        combiner: BinaryOp,
        kind: OperatorKind,
        engine: Engine,
        grid_n: usize,
    ) -> Result<Self> {
        if grid_n < 2 {
            return Err(Error::Precondition("grid_n must be at least 2".to_string()));
        }
        if !combiner_surjective_on_grid(&combiner, VERIFY_GRID_N.max(grid_n.min(256))) {
            return Err(Error::NonSurjectiveCombiner(combiner.name().to_string()));
        }
        let profile = build_profile(&star, &combiner);
        Ok(ConvolutionOperator {
            star,
            combiner,
            kind,
            engine,
            grid_n,
            profile,
        })
    }

    pub fn meet_like(star: BinaryOp, combiner: BinaryOp) -> Result<Self> {
        Self::new(
            star,
            combiner,
            OperatorKind::MeetLike,
            Engine::Auto,
            DEFAULT_GRID_N,
        )
    }

    pub fn join_like(star: BinaryOp, combiner: BinaryOp) -> Result<Self> {
        Self::new(
            star,
            combiner,
            OperatorKind::JoinLike,
            Engine::Auto,
            DEFAULT_GRID_N,
        )
    }

    pub fn star(&self) -> &BinaryOp {
        &self.star
    }

    pub fn combiner(&self) -> &BinaryOp {
        &self.combiner
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    pub fn profile(&self) -> &SlotProfile {
        &self.profile
    }

    /// `(f ⋏ g)` under the configured engine policy.
    pub fn convolve(&self, f: &MembershipFunction, g: &MembershipFunction) -> Result<Convolved> {
        match self.engine {
            Engine::Exact => match exact::try_exact(self, f, g) {
                Some(result) => Ok(Convolved::Exact(result?)),
                None => Err(Error::Precondition(
                    "no exact engine applies to these inputs".to_string(),
                )),
            },
            Engine::Grid => Ok(Convolved::Grid(self.convolve_grid(f, g))),
            Engine::Auto => match exact::try_exact(self, f, g) {
                Some(Ok(result)) => Ok(Convolved::Exact(result)),
                _ => Ok(Convolved::Grid(self.convolve_grid(f, g))),
            },
        }
    }

    /// Grid engine at the configured resolution.
    pub fn convolve_grid(&self, f: &MembershipFunction, g: &MembershipFunction) -> GridFunction {
        let table = BucketTable::build(&self.combiner, self.grid_n);
        grid::grid_convolve(&self.star, &self.combiner, f, g, &table, grid::REFINE_DEPTH)
    }

    /// Grid engine with a shared, precomputed bucket table and samples
    /// (the axiom harness sweeps many pairs per combiner).
    pub fn convolve_grid_with(
        &self,
        table: &BucketTable,
        f_samples: &[f64],
        g_samples: &[f64],
    ) -> GridFunction {
        grid::grid_sweep(&self.star, table, f_samples, g_samples)
    }

    /// Dense brute-force oracle: `pairs_n` samples per axis, bucketed into
    /// the operator resolution. Validates the grid engine and every closed
    /// form.
    pub fn convolve_bruteforce(
        &self,
        f: &MembershipFunction,
        g: &MembershipFunction,
        pairs_n: usize,
    ) -> GridFunction {
        assert!(pairs_n >= self.grid_n, "oracle must be at least as dense");
        oracle::bruteforce(&self.star, &self.combiner, f, g, self.grid_n, pairs_n)
    }

    /// `(f ⋏ g)(1) = f(1) ⋆ g(1)`, exact, bypassing any grid. Requires the
    /// combiner to reach 1 only at `(1, 1)` (true for every t-norm).
    pub fn convolve_boundary_value(
        &self,
        f: &MembershipFunction,
        g: &MembershipFunction,
    ) -> Result<UnitValue> {
        if !self.profile.combiner_one_only_at_one {
            return Err(Error::Precondition(format!(
                "combiner `{}` attains 1 away from (1, 1); the boundary identity does not apply",
                self.combiner.name()
            )));
        }
        let value = self.star.eval(f.eval_f64(1.0), g.eval_f64(1.0));
        UnitValue::new(value)
    }

    /// Dual boundary identity for the join-like form:
    /// `(f ⋎ g)(0) = f(0) ⋆ g(0)` when the combiner reaches 0 only at (0, 0).
    pub fn convolve_boundary_value_at_zero(
        &self,
        f: &MembershipFunction,
        g: &MembershipFunction,
    ) -> Result<UnitValue> {
        if !self.profile.combiner_zero_only_at_zero {
            return Err(Error::Precondition(format!(
                "combiner `{}` attains 0 away from (0, 0); the dual boundary identity does not apply",
                self.combiner.name()
            )));
        }
        let value = self.star.eval(f.eval_f64(0.0), g.eval_f64(0.0));
        UnitValue::new(value)
    }

    /// Closed-interval closure: `χ_[a,b] ⋏ χ_[c,d] = χ_[a△c, b△d]`, exact.
    /// Requires the star to take the 0/1 corner pattern and the combiner to
    /// be monotone and continuous (so the image of a rectangle is the
    /// interval between the corner images).
    pub fn closure_on_intervals(
        &self,
        a: UnitValue,
        b: UnitValue,
        c: UnitValue,
        d: UnitValue,
    ) -> Result<MembershipFunction> {
        if a.get() > b.get() {
            return Err(Error::IntervalOrder(a.get(), b.get()));
        }
        if c.get() > d.get() {
            return Err(Error::IntervalOrder(c.get(), d.get()));
        }
        exact::interval_closure(
            self,
            &rat::from_f64(a.get()),
            &rat::from_f64(b.get()),
            &rat::from_f64(c.get()),
            &rat::from_f64(d.get()),
        )
    }
}

fn build_profile(star: &BinaryOp, combiner: &BinaryOp) -> SlotProfile {
    let cfg = ScalarCheckConfig {
        grid_n: VERIFY_GRID_N,
        assoc_grid_n: 32,
        eps: 1e-12,
    };
    let comb_report = check_scalar_axioms(combiner, &cfg);
    let one_check = is_one_iff_both_one(combiner, VERIFY_GRID_N);
    let zero_check = is_zero_iff_both_zero(combiner, VERIFY_GRID_N);
    SlotProfile {
        star_corners_bool: star.corners_are_bool_and(),
        star_offdiagonal_corners_zero: star.eval(0.0, 0.0) == 0.0
            && star.eval(0.0, 1.0) == 0.0
            && star.eval(1.0, 0.0) == 0.0,
        combiner_cont_tnorm: comb_report.passes_tnorm_axioms() && combiner.declared_continuous(),
        combiner_cont_tconorm: comb_report.passes_tconorm_axioms()
            && combiner.declared_continuous(),
        combiner_monotone: comb_report.t3.pass,
        combiner_one_only_at_one: one_check.holds,
        combiner_zero_only_at_zero: zero_check.holds,
        lower_bound_mode: !star.declared_continuous() || !combiner.declared_continuous(),
    }
}

/// Sampled surjectivity proxy: the grid image attains 0 and 1 exactly.
/// Together with continuity this implies surjectivity onto `[0, 1]`.
pub fn combiner_surjective_on_grid(combiner: &BinaryOp, n: usize) -> bool {
    let mut saw_zero = false;
    let mut saw_one = false;
    for i in 0..=n {
        for j in 0..=n {
            let v = combiner.eval(i as f64 / n as f64, j as f64 / n as f64);
            saw_zero |= v == 0.0;
            saw_one |= v == 1.0;
            if saw_zero && saw_one {
                return true;
            }
        }
    }
    false
}

/// Operation slot in the JSON configuration format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpSpec {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

impl OpSpec {
    pub fn build(&self) -> Result<BinaryOp> {
        crate::scalar::catalog_lookup(&self.name, &self.params)
    }
}

fn default_grid_n() -> usize {
    DEFAULT_GRID_N
}

/// JSON configuration mirroring the operator:
/// `{star:{name,params}, combiner:{name,params}, kind, engine, grid_n}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvolutionConfig {
    pub star: OpSpec,
    pub combiner: OpSpec,
    #[serde(default)]
    pub kind: OperatorKind,
    #[serde(default)]
    pub engine: Engine,
    #[serde(default = "default_grid_n")]
    pub grid_n: usize,
}

impl ConvolutionConfig {
    pub fn build(&self) -> Result<ConvolutionOperator> {
        ConvolutionOperator::new(
            self.star.build()?,
            self.combiner.build()?,
            self.kind,
            self.engine,
            self.grid_n,
        )
    }
}

/// Suggested class of an operation for kind selection: join-like when the
/// combiner verifies as a continuous t-conorm.
pub fn kind_for_combiner(combiner: &BinaryOp) -> OperatorKind {
    if combiner.declared_class() == OpClass::TConorm {
        OperatorKind::JoinLike
    } else {
        OperatorKind::MeetLike
    }
}
