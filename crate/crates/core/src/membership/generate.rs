//! Seeded random members of the truth-value lattice L.
//!
//! Members are unimodal profiles on the 1/64 lattice: flat feet, a rising
//! flank, a peak plateau at height 1, a falling flank, then a flat tail.
//! The general profile may add an upward jump on the rising flank or a
//! downward jump on the falling flank, staying unimodal; the continuous
//! profile omits jumps and keeps slopes bounded, which the grid-versus-oracle
//! Lipschitz tests rely on. Keeping every breakpoint on the 1/64 lattice
//! aligns peaks with every sampling grid whose resolution is a multiple
//! of 64.

use super::{Affine, MembershipFunction};
use crate::rat::{self, Rat};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Reproducible generator over L. The same seed yields the same sequence.
pub struct LGenerator {
    rng: ChaCha8Rng,
    continuous_only: bool,
}

fn lat(k: i64) -> Rat {
    rat::from_ratio(k, 64)
}

impl LGenerator {
    /// General profile: plateaus, bounded slopes, occasional jumps.
    pub fn new(seed: u64) -> Self {
        LGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            continuous_only: false,
        }
    }

    /// Jump-free profile with bounded slopes, for discretization-error tests.
    pub fn continuous(seed: u64) -> Self {
        LGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            continuous_only: true,
        }
    }

    pub fn next_member(&mut self) -> MembershipFunction {
        let rng = &mut self.rng;
        // Lattice positions: 0 < a < p1 <= p2 < b < 64.
        let a = rng.gen_range(1..=4);
        let p1 = rng.gen_range(12..=36);
        let plateau = rng.gen_range(2..=10);
        let p2 = (p1 + plateau).min(52);
        let b = rng.gen_range(56..=63);
        let ls = rng.gen_range(0..=40); // shoulder heights in 64ths
        let rs = rng.gen_range(0..=40);

        let with_jump = !self.continuous_only && rng.gen_bool(0.4);
        let jump_side_left = rng.gen_bool(0.5);

        let mut bps: Vec<Rat> = vec![rat::zero()];
        let mut pvs: Vec<Rat> = vec![lat(ls)];
        let mut segs: Vec<Affine> = Vec::new();

        let push = |bps: &mut Vec<Rat>,
                    pvs: &mut Vec<Rat>,
                    segs: &mut Vec<Affine>,
                    seg: Affine,
                    t: Rat,
                    v: Rat| {
            segs.push(seg);
            bps.push(t);
            pvs.push(v);
        };

        // Foot.
        push(
            &mut bps,
            &mut pvs,
            &mut segs,
            Affine::constant(lat(ls)),
            lat(a),
            lat(ls),
        );

        // Rising flank, optionally with an upward jump.
        if with_jump && jump_side_left && p1 > a + 4 {
            let q = (a + p1) / 2;
            let v_lo = ls + (64 - ls) / 4; // below the jump
            let v_hi = ls + (64 - ls) / 2; // above the jump, still below 1
            push(
                &mut bps,
                &mut pvs,
                &mut segs,
                Affine::through(&lat(a), &lat(ls), &lat(q), &lat(v_lo)),
                lat(q),
                lat(v_hi),
            );
            push(
                &mut bps,
                &mut pvs,
                &mut segs,
                Affine::through(&lat(q), &lat(v_hi), &lat(p1), &rat::one()),
                lat(p1),
                rat::one(),
            );
        } else {
            push(
                &mut bps,
                &mut pvs,
                &mut segs,
                Affine::through(&lat(a), &lat(ls), &lat(p1), &rat::one()),
                lat(p1),
                rat::one(),
            );
        }

        // Peak plateau.
        push(
            &mut bps,
            &mut pvs,
            &mut segs,
            Affine::constant(rat::one()),
            lat(p2),
            rat::one(),
        );

        // Falling flank, optionally with a downward jump.
        if with_jump && !jump_side_left && b > p2 + 4 {
            let q = (p2 + b) / 2;
            let v_hi = rs + (64 - rs) / 2;
            let v_lo = rs + (64 - rs) / 4;
            push(
                &mut bps,
                &mut pvs,
                &mut segs,
                Affine::through(&lat(p2), &rat::one(), &lat(q), &lat(v_hi)),
                lat(q),
                lat(v_lo),
            );
            push(
                &mut bps,
                &mut pvs,
                &mut segs,
                Affine::through(&lat(q), &lat(v_lo), &lat(b), &lat(rs)),
                lat(b),
                lat(rs),
            );
        } else {
            push(
                &mut bps,
                &mut pvs,
                &mut segs,
                Affine::through(&lat(p2), &rat::one(), &lat(b), &lat(rs)),
                lat(b),
                lat(rs),
            );
        }

        // Tail.
        push(
            &mut bps,
            &mut pvs,
            &mut segs,
            Affine::constant(lat(rs)),
            rat::one(),
            lat(rs),
        );

        let f = MembershipFunction::from_parts(bps, pvs, segs).expect("generated member valid");
        debug_assert!(f.is_normal());
        debug_assert!(f.is_convex().convex);
        f
    }

    pub fn take(&mut self, count: usize) -> Vec<MembershipFunction> {
        (0..count).map(|_| self.next_member()).collect()
    }

    /// Largest absolute segment slope, the Lipschitz constant of a
    /// continuous member.
    pub fn lipschitz_bound(f: &MembershipFunction) -> f64 {
        f.segments()
            .iter()
            .map(|s| rat::to_f64(&s.slope).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_are_normal_and_convex() {
        let mut gen = LGenerator::new(42);
        for _ in 0..50 {
            let f = gen.next_member();
            assert!(f.is_normal());
            assert!(f.is_convex().convex);
        }
    }

    #[test]
    fn continuous_members_have_no_jumps_and_bounded_slopes() {
        let mut gen = LGenerator::continuous(7);
        for _ in 0..30 {
            let f = gen.next_member();
            for i in 1..f.breakpoints().len() - 1 {
                let left = f.segments()[i - 1].at(&f.breakpoints()[i]);
                let right = f.segments()[i].at(&f.breakpoints()[i]);
                assert_eq!(left, f.point_values()[i], "jump from the left at {i}");
                assert_eq!(right, f.point_values()[i], "jump to the right at {i}");
            }
            assert!(LGenerator::lipschitz_bound(&f) <= 16.0);
        }
    }

    #[test]
    fn seeded_reproducibility() {
        let a: Vec<_> = LGenerator::new(99).take(5);
        let b: Vec<_> = LGenerator::new(99).take(5);
        assert_eq!(a, b);
        let c: Vec<_> = LGenerator::new(100).take(5);
        assert_ne!(a, c);
    }

    #[test]
    fn breakpoints_stay_on_the_lattice() {
        let mut gen = LGenerator::new(3);
        for _ in 0..20 {
            let f = gen.next_member();
            for t in f.breakpoints() {
                let scaled = t * rat::from_int(64);
                assert!(scaled.is_integer(), "breakpoint {t} off the 1/64 lattice");
            }
        }
    }
}
