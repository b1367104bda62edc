//! The unified `(g, ψ)` parametrization of superconformal and twist-parity
//! transformations.
//!
//! Fixing the odd sector `θ̃ = ψ + θg` and a reduction spin `n = ±1`, the
//! even sector is determined up to integration constants by
//!
//! ```text
//! f′ = ψ′ψ + ((1 + n)/2)·g²,     χ′ = g′ψ + n·gψ′.
//! ```
//!
//! For `n = +1` the condition Δ ≡ 0 is stronger than the equation for χ′:
//! it forces `χ = gψ` outright, so no odd constant is free in that case.

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::poly::{ComponentFunction, Substitution};
use crate::transform::SATransform;

/// The reduction spin: `+1` selects superconformal, `−1` twist-parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub fn value(self) -> i64 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }

    pub fn from_value(n: i64) -> Option<Self> {
        match n {
            1 => Some(Spin::Plus),
            -1 => Some(Spin::Minus),
            _ => None,
        }
    }

    /// Spin of a star product, defined only for a `+1` left factor.
    pub fn product(self, right: Spin) -> Option<Spin> {
        match self {
            Spin::Plus => Some(right),
            Spin::Minus => None,
        }
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// Odd-sector data `(g, ψ)` with a spin and the integration constants that
/// pin down the even sector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedPair {
    pub g: ComponentFunction,
    pub psi: ComponentFunction,
    pub spin: Spin,
    /// `f(0)`.
    pub f0: GrassmannNumber,
    /// `χ(0)`; ignored for spin `+1`.
    pub chi0: GrassmannNumber,
}

impl ReducedPair {
    /// Pair with both integration constants zero.
    pub fn new(g: ComponentFunction, psi: ComponentFunction, spin: Spin) -> Result<Self> {
        let n = g.generator_count();
        Self::with_constants(g, psi, spin, GrassmannNumber::zero(n), GrassmannNumber::zero(n))
    }

    pub fn with_constants(
        g: ComponentFunction,
        psi: ComponentFunction,
        spin: Spin,
        f0: GrassmannNumber,
        chi0: GrassmannNumber,
    ) -> Result<Self> {
        let n = g.generator_count();
        for count in [psi.generator_count(), f0.generator_count(), chi0.generator_count()] {
            if count != n {
                return Err(Error::AlgebraMismatch { left: n, right: count });
            }
        }
        let g = g.with_parity_if_zero(Parity::Even);
        let psi = psi.with_parity_if_zero(Parity::Odd);
        if g.parity() != Parity::Even || psi.parity() != Parity::Odd {
            return Err(Error::Parity("a reduced pair needs g even and psi odd".into()));
        }
        if !f0.is_homogeneous(Parity::Even) || !chi0.is_homogeneous(Parity::Odd) {
            return Err(Error::Parity("f0 must be even and chi0 odd".into()));
        }
        Ok(Self { g, psi, spin, f0, chi0 })
    }

    pub fn generator_count(&self) -> usize {
        self.g.generator_count()
    }

    /// Integrates the reduction equations into a full transformation that
    /// satisfies Δ ≡ 0 (spin `+1`) or Q ≡ 0 (spin `−1`).
    pub fn build(&self) -> Result<SATransform> {
        let (g, psi) = (&self.g, &self.psi);
        let psi_psi = &psi.derivative() * psi;
        match self.spin {
            Spin::Plus => {
                let f = (&psi_psi + &(g * g)).antiderivative(&self.f0)?;
                SATransform::new(f, g * psi, psi.clone(), g.clone())
            }
            Spin::Minus => {
                let f = psi_psi.with_parity_if_zero(Parity::Even).antiderivative(&self.f0)?;
                let chi_prime = &(&g.derivative() * psi) - &(g * &psi.derivative());
                let chi = chi_prime.with_parity_if_zero(Parity::Odd).antiderivative(&self.chi0)?;
                SATransform::new(f, chi, psi.clone(), g.clone())
            }
        }
    }

    /// `self * right`: the transformation built from `right` followed by the
    /// one built from `self`, expressed again as a reduced pair.
    ///
    /// With `(h, φ) = self`, `(g, ψ) = right` and `f_m, χ_m` built from
    /// `right`:
    ///
    /// ```text
    /// g̃ = g·(h∘f_m) + χ_m·ψ·(h′∘f_m) + χ_m·(φ′∘f_m)
    /// ψ̃ = φ∘f_m + ψ·(h∘f_m)
    /// ```
    pub fn star(&self, right: &ReducedPair) -> Result<ReducedPair> {
        let spin = self.spin.product(right.spin).ok_or(Error::UndefinedSpinProduct)?;
        if self.generator_count() != right.generator_count() {
            return Err(Error::AlgebraMismatch { left: self.generator_count(), right: right.generator_count() });
        }
        let (h, phi) = (&self.g, &self.psi);
        let inner = right.build()?;
        let (f_m, chi_m) = (inner.f(), inner.chi());
        let (g, psi) = (&right.g, &right.psi);

        let mut sub = Substitution::new(f_m)?;
        let h_f = h.compose_in(&mut sub)?;
        let g_new = &(&(g * &h_f) + &(&(chi_m * psi) * &h.derivative().compose_in(&mut sub)?))
            + &(chi_m * &phi.derivative().compose_in(&mut sub)?);
        let psi_new = &phi.compose_in(&mut sub)? + &(psi * &h_f);

        // integration constants of the composite, read off at z = 0
        let outer = self.build()?;
        let n = self.generator_count();
        let zero = GrassmannNumber::zero(n);
        let fm0 = f_m.eval(&zero)?;
        let (psi0, g0, chim0) = (psi.eval(&zero)?, g.eval(&zero)?, chi_m.eval(&zero)?);
        let f0 = &outer.f().eval(&fm0)? + &(&psi0 * &outer.chi().eval(&fm0)?);
        let chi0 = match spin {
            Spin::Plus => zero,
            Spin::Minus => {
                let a = &chim0 * &outer.f().derivative().eval(&fm0)?;
                let b = &g0 * &outer.chi().eval(&fm0)?;
                let c = &(&psi0 * &chim0) * &outer.chi().derivative().eval(&fm0)?;
                &(&a + &b) - &c
            }
        };
        ReducedPair::with_constants(g_new, psi_new, spin, f0, chi0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::ReductionKind;

    const L: usize = 2;

    fn th(i: usize) -> GrassmannNumber {
        GrassmannNumber::generator(L, i).unwrap()
    }

    fn constant(x: GrassmannNumber) -> ComponentFunction {
        ComponentFunction::constant(x).unwrap()
    }

    fn theta1_z() -> ComponentFunction {
        ComponentFunction::monomial(th(1), 1).unwrap()
    }

    #[test]
    fn spin_plus_builds_susy_translation() {
        let pair = ReducedPair::new(ComponentFunction::one(L), constant(th(1)), Spin::Plus).unwrap();
        assert_eq!(pair.build().unwrap(), SATransform::susy_translation(th(1)).unwrap());
    }

    #[test]
    fn spin_minus_example() {
        let pair = ReducedPair::new(ComponentFunction::one(L), theta1_z(), Spin::Minus).unwrap();
        let t = pair.build().unwrap();
        assert!(t.f().is_zero());
        assert_eq!(t.chi(), &-&theta1_z());
        assert_eq!(t.reduction_kind(), ReductionKind::Tpt);
    }

    #[test]
    fn vanishing_g_gives_degenerate_transform() {
        let pair = ReducedPair::new(ComponentFunction::zero(Parity::Even, L), theta1_z(), Spin::Minus).unwrap();
        let t = pair.build().unwrap();
        assert!(t.f().is_zero() && t.chi().is_zero());
        assert!(t.is_theta_independent());
        assert_eq!(t.reduction_kind(), ReductionKind::Deg);
    }

    #[test]
    fn star_of_translations() {
        let left = ReducedPair::new(ComponentFunction::one(L), constant(th(1)), Spin::Plus).unwrap();
        let right = ReducedPair::new(ComponentFunction::one(L), constant(th(2)), Spin::Plus).unwrap();
        let prod = left.star(&right).unwrap();
        assert!(prod.g.is_one());
        assert_eq!(prod.psi, constant(&th(1) + &th(2)));
        assert_eq!(prod.spin, Spin::Plus);
        let composite = left.build().unwrap().compose(&right.build().unwrap()).unwrap();
        assert_eq!(prod.build().unwrap(), composite);
    }

    #[test]
    fn star_with_twist_parity_right_factor() {
        let left = ReducedPair::new(ComponentFunction::one(L), constant(th(1)), Spin::Plus).unwrap();
        let right = ReducedPair::new(ComponentFunction::one(L), theta1_z(), Spin::Minus).unwrap();
        let prod = left.star(&right).unwrap();
        assert_eq!(prod.spin, Spin::Minus);
        let composite = left.build().unwrap().compose(&right.build().unwrap()).unwrap();
        assert_eq!(&prod.g, composite.g());
        assert_eq!(&prod.psi, composite.psi());
        assert_eq!(prod.build().unwrap(), composite);
    }

    #[test]
    fn minus_left_factor_is_undefined() {
        let left = ReducedPair::new(ComponentFunction::one(L), theta1_z(), Spin::Minus).unwrap();
        let right = ReducedPair::new(ComponentFunction::one(L), constant(th(2)), Spin::Plus).unwrap();
        assert_eq!(left.star(&right), Err(Error::UndefinedSpinProduct));
        assert_eq!(left.star(&left), Err(Error::UndefinedSpinProduct));
    }

    #[test]
    fn constants_are_validated() {
        let r = ReducedPair::with_constants(ComponentFunction::one(L), theta1_z(), Spin::Minus, th(1), th(2));
        assert!(matches!(r, Err(Error::Parity(_))));
    }
}
