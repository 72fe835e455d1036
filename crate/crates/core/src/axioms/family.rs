//! Finite test families standing in for the universally quantified "for all
//! f in L" of the lifted axioms.

use crate::membership::{LGenerator, MembershipFunction};
use crate::rat::{self, Rat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Sizes of the default family. Everything rides on the 1/64 lattice so
/// that sampling grids with a resolution divisible by 64 hit every
/// breakpoint.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub j_points: usize,
    pub k_intervals: usize,
    pub v_params: usize,
    pub w_params: usize,
    pub random_members: usize,
    pub seed: u64,
}

impl Default for FamilyConfig {
    fn default() -> Self {
        FamilyConfig {
            j_points: 21,
            k_intervals: 15,
            v_params: 11,
            w_params: 11,
            random_members: 50,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub label: String,
    pub func: MembershipFunction,
}

/// A finite family of normal convex membership functions.
#[derive(Debug, Clone)]
pub struct FunctionFamily {
    pub members: Vec<FamilyMember>,
    pub description: String,
}

impl FunctionFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Point characteristics, interval characteristics, the two witness
    /// families, and seeded random members, in that order.
    pub fn default_family(config: &FamilyConfig) -> Self {
        let mut members = Vec::new();
        for x in lattice_params(config.j_points) {
            members.push(FamilyMember {
                label: format!("chi{{{}}}", rat::to_f64(&x)),
                func: MembershipFunction::chi_point_rat(x),
            });
        }
        for (a, b) in lattice_intervals(config.k_intervals, config.seed) {
            members.push(FamilyMember {
                label: format!("chi[{},{}]", rat::to_f64(&a), rat::to_f64(&b)),
                func: MembershipFunction::chi_interval_rat(a, b),
            });
        }
        for x in lattice_params(config.v_params) {
            let xf = rat::to_f64(&x);
            members.push(FamilyMember {
                label: format!("V({xf})"),
                func: MembershipFunction::v_func(
                    crate::unit::UnitValue::new(xf).expect("lattice point"),
                ),
            });
        }
        for x in lattice_params(config.w_params) {
            let xf = rat::to_f64(&x);
            members.push(FamilyMember {
                label: format!("W({xf})"),
                func: MembershipFunction::w_func(
                    crate::unit::UnitValue::new(xf).expect("lattice point"),
                ),
            });
        }
        let mut gen = LGenerator::new(config.seed);
        for (i, func) in gen.take(config.random_members).into_iter().enumerate() {
            members.push(FamilyMember {
                label: format!("L#{i}"),
                func,
            });
        }
        let description = format!(
            "J:{} K:{} V:{} W:{} random-L:{} (seed {})",
            config.j_points,
            config.k_intervals,
            config.v_params,
            config.w_params,
            config.random_members,
            config.seed
        );
        FunctionFamily {
            members,
            description,
        }
    }
}

/// `count` points of the 1/64 lattice spanning [0, 1], endpoints included.
pub fn lattice_params(count: usize) -> Vec<Rat> {
    assert!((2..=65).contains(&count), "lattice supports 2..=65 points");
    let mut out = Vec::with_capacity(count);
    let mut last = -1i64;
    for i in 0..count {
        let idx = ((i * 64) as f64 / (count - 1) as f64).round() as i64;
        let idx = idx.clamp(last + 1, 64);
        out.push(rat::from_ratio(idx, 64));
        last = idx;
    }
    out
}

/// Seeded closed lattice intervals, always starting with the full interval.
pub fn lattice_intervals(count: usize, seed: u64) -> Vec<(Rat, Rat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4b31);
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push((rat::zero(), rat::one()));
    }
    while out.len() < count {
        let a = rng.gen_range(0..=64i64);
        let b = rng.gen_range(0..=64i64);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        out.push((rat::from_ratio(a, 64), rat::from_ratio(b, 64)));
    }
    out
}
