//! External interchange formats.
//!
//! JSON carries the full piecewise structure with values rounded to `f64`
//! (every stored rational that originated from user input round-trips
//! exactly; derived rationals like envelope crossings round to nearest).
//! CSV export samples the function at a requested resolution for plotting.

use super::{Affine, MembershipFunction};
use crate::error::Result;
use crate::rat::{self, Rat};
use serde::{Deserialize, Serialize};

/// JSON shape: `{breakpoints:[...], point_values:[...], segments:[{a,b}...]}`
/// where a segment evaluates as `a*t + b` on its open interval.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionJson {
    pub breakpoints: Vec<f64>,
    pub point_values: Vec<f64>,
    pub segments: Vec<SegmentJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentJson {
    pub a: f64,
    pub b: f64,
}

impl MembershipFunction {
    pub fn to_json(&self) -> FunctionJson {
        FunctionJson {
            breakpoints: self.breakpoints().iter().map(rat::to_f64).collect(),
            point_values: self.point_values().iter().map(rat::to_f64).collect(),
            segments: self
                .segments()
                .iter()
                .map(|s| SegmentJson {
                    a: rat::to_f64(&s.slope),
                    b: rat::to_f64(&s.intercept),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &FunctionJson) -> Result<Self> {
        let breakpoints: Vec<_> = json.breakpoints.iter().map(|v| rat::from_f64(*v)).collect();
        let point_values: Vec<_> = json
            .point_values
            .iter()
            .map(|v| rat::from_f64(*v))
            .collect();
        if breakpoints.len() < 2 || breakpoints.len() != json.segments.len() + 1 {
            return Err(crate::error::Error::InvalidFunction(
                "breakpoint / segment count mismatch".to_string(),
            ));
        }
        // Exported coefficients are rounded to f64, which can push a segment
        // limit outside [0, 1] by an ulp. Rebuild each segment through its
        // clamped endpoint limits; exactly representable data passes through
        // unchanged.
        let segments: Vec<Affine> = json
            .segments
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let affine = Affine::new(rat::from_f64(s.a), rat::from_f64(s.b));
                let (t0, t1) = (&breakpoints[i], &breakpoints[i + 1]);
                let clamp = |v: Rat| -> Rat {
                    if v < rat::zero() {
                        rat::zero()
                    } else if v > rat::one() {
                        rat::one()
                    } else {
                        v
                    }
                };
                let lo = clamp(affine.at(t0));
                let hi = clamp(affine.at(t1));
                if lo == affine.at(t0) && hi == affine.at(t1) {
                    affine
                } else {
                    Affine::through(t0, &lo, t1, &hi)
                }
            })
            .collect();
        MembershipFunction::from_parts(breakpoints, point_values, segments)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("function serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: FunctionJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }

    /// Sampled CSV (`t,value`) at `resolution + 1` points.
    pub fn to_csv(&self, resolution: usize) -> String {
        let mut out = String::from("t,value\n");
        for i in 0..=resolution {
            let t = i as f64 / resolution as f64;
            out.push_str(&format!("{t},{}\n", self.eval_f64(t)));
        }
        out
    }
}
