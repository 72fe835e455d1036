//! The meet `⊓`, join `⊔` and the partial orders `⊑`, `⪯`.
//!
//! Convolving with min over the level set `{y ∧ z = x}` splits into the two
//! slices `y = x, z >= x` and `z = x, y >= x`, which collapses the supremum
//! into the closed form
//!
//! ```text
//! (f ⊓ g)(x) = max( f(x) ∧ g^R(x), f^R(x) ∧ g(x) )
//! (f ⊔ g)(x) = max( f(x) ∧ g^L(x), f^L(x) ∧ g(x) )
//! ```
//!
//! computed here exactly on the piecewise representation. Order decisions go
//! through the definitions (`f ⊑ g` iff `f ⊓ g = f`, structurally), with the
//! envelope criterion available as an independent decider on normal convex
//! functions. The brute-force convolution oracle re-validates the closed
//! forms in the test suites.

use crate::error::{Error, Result};
use crate::membership::MembershipFunction;

/// Exact meet `(f ⊓ g)(x) = sup { f(y) ∧ g(z) : y ∧ z = x }`.
pub fn meet(f: &MembershipFunction, g: &MembershipFunction) -> MembershipFunction {
    let left = f.pointwise_min(&g.envelope_right());
    let right = f.envelope_right().pointwise_min(g);
    left.pointwise_max(&right)
}

/// Exact join `(f ⊔ g)(x) = sup { f(y) ∧ g(z) : y ∨ z = x }`.
pub fn join(f: &MembershipFunction, g: &MembershipFunction) -> MembershipFunction {
    let left = f.pointwise_min(&g.envelope_left());
    let right = f.envelope_left().pointwise_min(g);
    left.pointwise_max(&right)
}

/// The meet order: `f ⊑ g` iff `f ⊓ g = f`, decided structurally.
pub fn leq_meet(f: &MembershipFunction, g: &MembershipFunction) -> bool {
    meet(f, g) == *f
}

/// The join order: `f ⪯ g` iff `f ⊔ g = g`, decided structurally.
pub fn leq_join(f: &MembershipFunction, g: &MembershipFunction) -> bool {
    join(f, g) == *g
}

/// Envelope criterion for `⊑`, valid on normal convex functions:
/// `f ⊑ g` iff `g^L <= f^L` and `f^R <= g^R`. The precondition is checked,
/// not trusted, because the criterion is only proven on L.
pub fn leq_meet_by_envelopes(f: &MembershipFunction, g: &MembershipFunction) -> Result<bool> {
    for (name, h) in [("left", f), ("right", g)] {
        if !h.is_normal() {
            return Err(Error::Precondition(format!(
                "envelope criterion requires normal functions; {name} argument has sup {}",
                h.sup()
            )));
        }
        if !h.is_convex().convex {
            return Err(Error::Precondition(format!(
                "envelope criterion requires convex functions; {name} argument is not"
            )));
        }
    }
    Ok(g.envelope_left().pointwise_leq(&f.envelope_left())
        && f.envelope_right().pointwise_leq(&g.envelope_right()))
}

/// The algebraic characterization `f ⊑ g` iff `f^R ∧ g <= f <= g^R`,
/// valid on all of M. Used as a cross-check of the definitional decider.
pub fn leq_meet_by_criterion(f: &MembershipFunction, g: &MembershipFunction) -> bool {
    f.envelope_right().pointwise_min(g).pointwise_leq(f) && f.pointwise_leq(&g.envelope_right())
}

/// The dual characterization `f ⪯ g` iff `f ∧ g^L <= g <= f^L`.
pub fn leq_join_by_criterion(f: &MembershipFunction, g: &MembershipFunction) -> bool {
    f.pointwise_min(&g.envelope_left()).pointwise_leq(g) && g.pointwise_leq(&f.envelope_left())
}
