//! Binary operations on the unit interval.
//!
//! The catalog holds the t-norms and t-conorms the rest of the crate is
//! exercised against, plus deliberately broken operations whose axiom
//! failures the lifted harness must detect. Nothing downstream ever trusts
//! the declared class of an operation; it is metadata for reports and for
//! routing, and the checker in [`check`] re-verifies it on a grid.

mod check;
mod table;

pub use check::{
    check_scalar_axioms, is_one_iff_both_one, is_zero_iff_both_zero, AxiomVerdict, OneCheck,
    ScalarAxiom, ScalarCheckConfig, ScalarReport, ScalarWitness,
};
pub use table::TableOp;

use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Declared classification of a binary operation. Metadata only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpClass {
    #[serde(rename = "t-norm")]
    TNorm,
    #[serde(rename = "t-conorm")]
    TConorm,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for OpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpClass::TNorm => write!(f, "t-norm"),
            OpClass::TConorm => write!(f, "t-conorm"),
            OpClass::Other => write!(f, "other"),
        }
    }
}

/// Exact affine description of a unary section `u ↦ a·u + b` of an operation,
/// with rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSection {
    pub slope: Rat,
    pub intercept: Rat,
}

impl AffineSection {
    pub fn new(slope: Rat, intercept: Rat) -> Self {
        AffineSection { slope, intercept }
    }

    pub fn apply(&self, u: &Rat) -> Rat {
        &self.slope * u + &self.intercept
    }

    pub fn is_identity(&self) -> bool {
        self.slope == rat::one() && self.intercept == rat::zero()
    }
}

/// Exact sections of an operation at the boundary arguments: `u ↦ u ⋆ 1` and
/// `u ↦ u ⋆ 0`. Present only for catalog entries whose sections are affine;
/// they power the exact neutral-element convolution engine.
#[derive(Debug, Clone, PartialEq)]
pub struct Sections {
    pub at_one: AffineSection,
    pub at_zero: AffineSection,
}

/// Whether the diagonal point `y = x` belongs to the slice
/// `{ y : ∃ z < 1, y △ z = x }` for `0 < x < 1` (respectively, for a
/// t-conorm, to `{ y : ∃ z > 0, y ▽ z = x }`). `Included` holds for
/// idempotent-style operations like min/max; strictly monotone families
/// exclude the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalSlice {
    Included,
    Excluded,
}

#[derive(Clone)]
enum Kernel {
    Minimum,
    Product,
    Lukasiewicz,
    Drastic,
    NilpotentMinimum,
    Hamacher { gamma: f64 },
    Maximum,
    ProbabilisticSum,
    BoundedSum,
    DrasticConorm,
    Mean,
    ScaledProduct,
    LeftProjection,
    AsymPower,
    ConvexMinMean { lambda: f64 },
    Table(Arc<TableOp>),
    Custom(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl Kernel {
    #[inline]
    fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Kernel::Minimum => x.min(y),
            Kernel::Product => x * y,
            Kernel::Lukasiewicz => (x + y - 1.0).max(0.0),
            Kernel::Drastic => {
                if x.max(y) == 1.0 {
                    x.min(y)
                } else {
                    0.0
                }
            }
            Kernel::NilpotentMinimum => {
                if x + y > 1.0 {
                    x.min(y)
                } else {
                    0.0
                }
            }
            Kernel::Hamacher { gamma } => {
                let d = gamma + (1.0 - gamma) * (x + y - x * y);
                if d == 0.0 {
                    0.0
                } else {
                    x * y / d
                }
            }
            Kernel::Maximum => x.max(y),
            Kernel::ProbabilisticSum => x + y - x * y,
            Kernel::BoundedSum => (x + y).min(1.0),
            Kernel::DrasticConorm => {
                if x.min(y) == 0.0 {
                    x.max(y)
                } else {
                    1.0
                }
            }
            Kernel::Mean => 0.5 * (x + y),
            Kernel::ScaledProduct => 0.5 * x * y,
            Kernel::LeftProjection => x,
            Kernel::AsymPower => x * y * y,
            Kernel::ConvexMinMean { lambda } => lambda * x.min(y) + (1.0 - lambda) * 0.5 * (x + y),
            Kernel::Table(t) => t.eval(x, y),
            Kernel::Custom(f) => f(x, y),
        }
    }
}

/// A named binary operation on `[0, 1]`, total on the square.
#[derive(Clone)]
pub struct BinaryOp {
    name: String,
    kernel: Kernel,
    class: OpClass,
    continuous: bool,
    params: Vec<f64>,
    sections: Option<Sections>,
    diagonal: Option<DiagonalSlice>,
}

impl fmt::Debug for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryOp")
            .field("name", &self.name)
            .field("class", &self.class)
            .field("continuous", &self.continuous)
            .field("params", &self.params)
            .finish()
    }
}

impl BinaryOp {
    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.kernel.eval(x, y)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn declared_class(&self) -> OpClass {
        self.class
    }

    pub fn declared_continuous(&self) -> bool {
        self.continuous
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Exact affine sections at the boundary arguments, when known.
    pub fn sections(&self) -> Option<&Sections> {
        self.sections.as_ref()
    }

    pub fn diagonal_slice(&self) -> Option<DiagonalSlice> {
        self.diagonal
    }

    /// True when the values on `{0,1}²` are exactly the characteristic
    /// pattern of a t-norm: `1 ⋆ 1 = 1` and all other corners `0`. This is
    /// the gate for the exact characteristic-function convolution engine.
    pub fn corners_are_bool_and(&self) -> bool {
        self.eval(1.0, 1.0) == 1.0
            && self.eval(0.0, 0.0) == 0.0
            && self.eval(0.0, 1.0) == 0.0
            && self.eval(1.0, 0.0) == 0.0
    }

    /// Wrap an arbitrary closure as an operation. No exact sections are
    /// attached, so such operations only take grid paths in the convolution
    /// engine.
    pub fn from_fn<F>(name: &str, class: OpClass, continuous: bool, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        BinaryOp {
            name: name.to_string(),
            kernel: Kernel::Custom(Arc::new(f)),
            class,
            continuous,
            params: Vec::new(),
            sections: None,
            diagonal: None,
        }
    }

    /// Load a user-supplied operation from a dense CSV grid table
    /// (header `x,y,value`, row-major). Evaluation between nodes is bilinear.
    pub fn from_csv_table(name: &str, csv: &str) -> Result<Self> {
        let table = TableOp::parse_csv(csv)?;
        Ok(BinaryOp {
            name: name.to_string(),
            kernel: Kernel::Table(Arc::new(table)),
            class: OpClass::Other,
            continuous: true,
            params: Vec::new(),
            sections: None,
            diagonal: None,
        })
    }
}

fn id_section() -> AffineSection {
    AffineSection::new(rat::one(), rat::zero())
}

fn zero_section() -> AffineSection {
    AffineSection::new(rat::zero(), rat::zero())
}

fn one_section() -> AffineSection {
    AffineSection::new(rat::zero(), rat::one())
}

fn tnorm_sections() -> Sections {
    Sections {
        at_one: id_section(),
        at_zero: zero_section(),
    }
}

fn tconorm_sections() -> Sections {
    Sections {
        at_one: one_section(),
        at_zero: id_section(),
    }
}

/// Catalog entry names, in manifest order.
pub const CATALOG_NAMES: &[&str] = &[
    "minimum",
    "product",
    "lukasiewicz",
    "drastic",
    "nilpotent-minimum",
    "hamacher",
    "maximum",
    "probabilistic-sum",
    "bounded-sum",
    "drastic-conorm",
    "mean",
    "scaled-product",
    "left-projection",
    "asym-power",
    "convex-min-mean",
];

/// Look up a catalog operation by name, with optional family parameters.
pub fn catalog_lookup(name: &str, params: &[f64]) -> Result<BinaryOp> {
    let no_params = |kernel: Kernel,
                     class: OpClass,
                     continuous: bool,
                     sections: Option<Sections>,
                     diagonal: Option<DiagonalSlice>| {
        if params.is_empty() {
            Ok(BinaryOp {
                name: name.to_string(),
                kernel,
                class,
                continuous,
                params: Vec::new(),
                sections,
                diagonal,
            })
        } else {
            Err(Error::BadOpParams {
                name: name.to_string(),
                reason: "operation takes no parameters".to_string(),
            })
        }
    };

    match name {
        "minimum" => no_params(
            Kernel::Minimum,
            OpClass::TNorm,
            true,
            Some(tnorm_sections()),
            Some(DiagonalSlice::Included),
        ),
        "product" => no_params(
            Kernel::Product,
            OpClass::TNorm,
            true,
            Some(tnorm_sections()),
            Some(DiagonalSlice::Excluded),
        ),
        "lukasiewicz" => no_params(
            Kernel::Lukasiewicz,
            OpClass::TNorm,
            true,
            Some(tnorm_sections()),
            Some(DiagonalSlice::Excluded),
        ),
        "drastic" => no_params(
            Kernel::Drastic,
            OpClass::TNorm,
            false,
            Some(tnorm_sections()),
            None,
        ),
        "nilpotent-minimum" => no_params(
            Kernel::NilpotentMinimum,
            OpClass::TNorm,
            false,
            Some(tnorm_sections()),
            None,
        ),
        "hamacher" => {
            let gamma = match params {
                [] => 2.0,
                [g] if *g >= 0.0 && g.is_finite() => *g,
                _ => {
                    return Err(Error::BadOpParams {
                        name: name.to_string(),
                        reason: "hamacher takes one parameter gamma >= 0".to_string(),
                    })
                }
            };
            Ok(BinaryOp {
                name: name.to_string(),
                kernel: Kernel::Hamacher { gamma },
                class: OpClass::TNorm,
                continuous: true,
                params: vec![gamma],
                sections: Some(tnorm_sections()),
                diagonal: Some(DiagonalSlice::Excluded),
            })
        }
        "maximum" => no_params(
            Kernel::Maximum,
            OpClass::TConorm,
            true,
            Some(tconorm_sections()),
            Some(DiagonalSlice::Included),
        ),
        "probabilistic-sum" => no_params(
            Kernel::ProbabilisticSum,
            OpClass::TConorm,
            true,
            Some(tconorm_sections()),
            Some(DiagonalSlice::Excluded),
        ),
        "bounded-sum" => no_params(
            Kernel::BoundedSum,
            OpClass::TConorm,
            true,
            Some(tconorm_sections()),
            Some(DiagonalSlice::Excluded),
        ),
        "drastic-conorm" => no_params(
            Kernel::DrasticConorm,
            OpClass::TConorm,
            false,
            Some(tconorm_sections()),
            None,
        ),
        "mean" => no_params(
            Kernel::Mean,
            OpClass::Other,
            true,
            Some(Sections {
                at_one: AffineSection::new(rat::from_ratio(1, 2), rat::from_ratio(1, 2)),
                at_zero: AffineSection::new(rat::from_ratio(1, 2), rat::zero()),
            }),
            None,
        ),
        "scaled-product" => no_params(
            Kernel::ScaledProduct,
            OpClass::Other,
            true,
            Some(Sections {
                at_one: AffineSection::new(rat::from_ratio(1, 2), rat::zero()),
                at_zero: zero_section(),
            }),
            None,
        ),
        "left-projection" => no_params(
            Kernel::LeftProjection,
            OpClass::Other,
            true,
            Some(Sections {
                at_one: id_section(),
                at_zero: id_section(),
            }),
            None,
        ),
        "asym-power" => no_params(
            Kernel::AsymPower,
            OpClass::Other,
            true,
            Some(Sections {
                at_one: id_section(),
                at_zero: zero_section(),
            }),
            None,
        ),
        "convex-min-mean" => {
            let lambda = match params {
                [l] if (0.0..=1.0).contains(l) => *l,
                _ => {
                    return Err(Error::BadOpParams {
                        name: name.to_string(),
                        reason: "convex-min-mean takes one parameter lambda in [0, 1]".to_string(),
                    })
                }
            };
            // lambda*min(u,1) + (1-lambda)*(u+1)/2 and the section at zero.
            let l = rat::from_f64(lambda);
            let half = rat::from_ratio(1, 2);
            let one_minus_l = rat::one() - &l;
            Ok(BinaryOp {
                name: name.to_string(),
                kernel: Kernel::ConvexMinMean { lambda },
                class: OpClass::Other,
                continuous: true,
                params: vec![lambda],
                sections: Some(Sections {
                    at_one: AffineSection::new(&l + &one_minus_l * &half, &one_minus_l * &half),
                    at_zero: AffineSection::new(&one_minus_l * &half, rat::zero()),
                }),
                diagonal: None,
            })
        }
        _ => Err(Error::UnknownOp(name.to_string())),
    }
}

/// One entry of the machine-readable catalog manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub class: OpClass,
    pub continuous: bool,
    pub params: Vec<ManifestParam>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestParam {
    pub name: String,
    pub min: f64,
    pub max: Option<f64>,
    pub default: f64,
}

/// The machine-readable manifest of catalog names and parameter schemas.
pub fn catalog_manifest() -> Vec<ManifestEntry> {
    CATALOG_NAMES
        .iter()
        .map(|name| {
            let default = catalog_lookup(name, &default_params(name)).expect("catalog entry");
            let params = match *name {
                "hamacher" => vec![ManifestParam {
                    name: "gamma".to_string(),
                    min: 0.0,
                    max: None,
                    default: 2.0,
                }],
                "convex-min-mean" => vec![ManifestParam {
                    name: "lambda".to_string(),
                    min: 0.0,
                    max: Some(1.0),
                    default: 1.0,
                }],
                _ => Vec::new(),
            };
            ManifestEntry {
                name: name.to_string(),
                class: default.class,
                continuous: default.continuous,
                params,
            }
        })
        .collect()
}

fn default_params(name: &str) -> Vec<f64> {
    match name {
        "hamacher" => vec![2.0],
        "convex-min-mean" => vec![1.0],
        _ => Vec::new(),
    }
}
