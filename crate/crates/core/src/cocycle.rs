//! Chain rule, parity-twisting operator relations and cocycle relations.
//!
//! Composition order follows [`SATransform::compose`]: in `outer ∘ inner`
//! the inner map `T: U → Ũ` acts first and the outer map `T̃: Ũ → Ũ̃`
//! second. Quantities of the outer map are pulled back through the inner
//! one before they are compared on `U`.

use crate::error::{Error, Result};
use crate::superfield::Superfield;
use crate::supermatrix::TangentMatrix;
use crate::transform::SATransform;

/// `P(inner) · (P(outer) ∘ inner)`, which equals `P(outer ∘ inner)`.
pub fn chained_tangent_matrix(outer: &SATransform, inner: &SATransform) -> Result<TangentMatrix> {
    let pulled = inner.pullback_matrix(&outer.tangent_matrix())?;
    inner.tangent_matrix().checked_mul(&pulled)
}

/// `D(F∘T) = Dθ̃ · (D̃F)∘T`, holding for superconformal `T`.
pub fn superconformal_twist_holds(t: &SATransform, field: &Superfield) -> Result<bool> {
    let lhs = t.pullback(field)?.d();
    let rhs = t.d_theta().checked_mul(&t.pullback(&field.d())?)?;
    Ok(lhs == rhs)
}

/// `∂(F∘T) = ∂θ̃ · (D̃F)∘T`, holding for twist-parity `T`.
pub fn twist_parity_twist_holds(t: &SATransform, field: &Superfield) -> Result<bool> {
    let lhs = t.pullback(field)?.partial();
    let rhs = t.theta_tilde().partial().checked_mul(&t.pullback(&field.d())?)?;
    Ok(lhs == rhs)
}

/// The standard cocycle relation `Dθ̃̃ = Dθ̃ · D̃θ̃̃` for `outer ∘ inner`.
pub fn standard_cocycle(outer: &SATransform, inner: &SATransform) -> Result<bool> {
    standard_cocycle_of(&outer.compose(inner)?, outer, inner)
}

/// [`standard_cocycle`] with the composite `outer ∘ inner` supplied.
pub(crate) fn standard_cocycle_of(composite: &SATransform, outer: &SATransform, inner: &SATransform) -> Result<bool> {
    let rhs = inner.d_theta().checked_mul(&inner.pullback(&outer.d_theta())?)?;
    Ok(composite.d_theta() == rhs)
}

/// The mixed relation `∂θ̃̃ = ∂θ̃ · D̃θ̃̃` for `outer ∘ inner`, without any
/// precondition on the kinds.
pub fn mixed_relation(outer: &SATransform, inner: &SATransform) -> Result<bool> {
    mixed_relation_of(&outer.compose(inner)?, outer, inner)
}

/// [`mixed_relation`] with the composite `outer ∘ inner` supplied.
pub(crate) fn mixed_relation_of(composite: &SATransform, outer: &SATransform, inner: &SATransform) -> Result<bool> {
    let rhs = inner.theta_tilde().partial().checked_mul(&inner.pullback(&outer.d_theta())?)?;
    Ok(composite.theta_tilde().partial() == rhs)
}

/// The mixed cocycle condition for a superconformal map applied after a
/// twist-parity one: true when the mixed relation holds and the composite
/// is again twist-parity.
pub fn mixed_cocycle(scf: &SATransform, tpt: &SATransform) -> Result<bool> {
    let scf_kind = scf.reduction_kind();
    if !scf_kind.is_superconformal() {
        return Err(Error::KindMismatch { expected: "SCF", found: scf_kind.name() });
    }
    let tpt_kind = tpt.reduction_kind();
    if !tpt_kind.is_twist_parity() {
        return Err(Error::KindMismatch { expected: "TPT", found: tpt_kind.name() });
    }
    let composite = scf.compose(tpt)?;
    Ok(composite.is_twist_parity() && mixed_relation_of(&composite, scf, tpt)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{GrassmannNumber, Parity};
    use crate::poly::ComponentFunction;
    use crate::reduction::{ReducedPair, Spin};

    const L: usize = 3;

    fn th(i: usize) -> GrassmannNumber {
        GrassmannNumber::generator(L, i).unwrap()
    }

    fn tpt_example() -> SATransform {
        let psi = ComponentFunction::monomial(th(1), 1).unwrap();
        ReducedPair::new(ComponentFunction::one(L), psi, Spin::Minus).unwrap().build().unwrap()
    }

    fn deg(i: usize) -> SATransform {
        let psi = ComponentFunction::new(Parity::Odd, L, vec![th(i), th(3)]).unwrap();
        ReducedPair::new(ComponentFunction::zero(Parity::Even, L), psi, Spin::Minus).unwrap().build().unwrap()
    }

    #[test]
    fn translations_satisfy_standard_cocycle() {
        let t1 = SATransform::susy_translation(th(1)).unwrap();
        let t2 = SATransform::susy_translation(th(2)).unwrap();
        assert!(standard_cocycle(&t2, &t1).unwrap());
    }

    #[test]
    fn mixed_cocycle_examples() {
        let susy = SATransform::susy_translation(th(2)).unwrap();
        assert!(mixed_cocycle(&susy, &tpt_example()).unwrap());
        assert!(mixed_cocycle(&SATransform::identity(L), &tpt_example()).unwrap());
        assert!(mixed_cocycle(&deg(1), &deg(2)).unwrap());
    }

    #[test]
    fn deg_pairs_satisfy_both() {
        assert!(standard_cocycle(&deg(1), &deg(2)).unwrap());
        assert!(mixed_relation(&deg(1), &deg(2)).unwrap());
    }

    #[test]
    fn mixed_cocycle_checks_kinds() {
        let susy = SATransform::susy_translation(th(2)).unwrap();
        assert!(matches!(mixed_cocycle(&tpt_example(), &tpt_example()), Err(Error::KindMismatch { .. })));
        assert!(matches!(mixed_cocycle(&susy, &susy), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn chain_rule_on_examples() {
        let t1 = tpt_example();
        let t2 = SATransform::susy_translation(th(2)).unwrap();
        let direct = t2.compose(&t1).unwrap().tangent_matrix();
        assert_eq!(chained_tangent_matrix(&t2, &t1).unwrap(), direct);
    }
}
