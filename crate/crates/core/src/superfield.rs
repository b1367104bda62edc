//! Superfields `a(z) + θ·b(z)` and the operators ∂, ∂_θ and D = ∂_θ + θ∂.
//!
//! Sign conventions: θ is always written leftmost and ∂_θ acts from the
//! left, so `∂_θ(a + θb) = b`. Moving θ to the left across a component `a`
//! replaces `a` by its grade involution `â`, which gives the product
//!
//! ```text
//! (a₁ + θb₁)(a₂ + θb₂) = a₁a₂ + θ(b₁a₂ + â₁b₂),   â₁ = (−1)^{|a₁|} a₁.
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::poly::ComponentFunction;
use crate::rational::RationalComponent;

/// Parity of a superfield; the zero superfield is reported as even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldParity {
    Even,
    Odd,
    Mixed,
}

impl From<Parity> for FieldParity {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Even => FieldParity::Even,
            Parity::Odd => FieldParity::Odd,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Superfield {
    a: RationalComponent,
    b: RationalComponent,
}

impl Superfield {
    /// `a + θ·b`. Zero components adopt the parity that keeps the field
    /// homogeneous when possible.
    pub fn new(a: RationalComponent, b: RationalComponent) -> Result<Self> {
        if a.generator_count() != b.generator_count() {
            return Err(Error::AlgebraMismatch { left: a.generator_count(), right: b.generator_count() });
        }
        let a = a.with_parity_if_zero(b.parity().flip());
        let b = b.with_parity_if_zero(a.parity().flip());
        Ok(Self { a, b })
    }

    pub fn from_polys(a: ComponentFunction, b: ComponentFunction) -> Result<Self> {
        Self::new(a.into(), b.into())
    }

    pub fn zero(generators: usize) -> Self {
        Self {
            a: RationalComponent::zero(Parity::Even, generators),
            b: RationalComponent::zero(Parity::Odd, generators),
        }
    }

    pub fn one(generators: usize) -> Self {
        Self::from_even(RationalComponent::one(generators))
    }

    /// The coordinate `z` as a superfield.
    pub fn z(generators: usize) -> Self {
        Self::from_even(ComponentFunction::z(generators).into())
    }

    /// The coordinate `θ` as a superfield.
    pub fn theta(generators: usize) -> Self {
        Self {
            a: RationalComponent::zero(Parity::Odd, generators),
            b: RationalComponent::one(generators),
        }
    }

    /// A θ-independent superfield.
    pub fn from_even(a: RationalComponent) -> Self {
        let n = a.generator_count();
        let b = RationalComponent::zero(a.parity().flip(), n);
        Self { a, b }
    }

    pub fn constant(c: GrassmannNumber) -> Result<Self> {
        let a = RationalComponent::constant(c)?;
        Ok(Self::from_even(a))
    }

    /// The θ-free component.
    pub fn a(&self) -> &RationalComponent {
        &self.a
    }

    /// The coefficient of θ.
    pub fn b(&self) -> &RationalComponent {
        &self.b
    }

    pub fn generator_count(&self) -> usize {
        self.a.generator_count()
    }

    pub fn parity(&self) -> FieldParity {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => FieldParity::Even,
            (false, true) => self.a.parity().into(),
            (true, false) => self.b.parity().flip().into(),
            (false, false) if self.a.parity() != self.b.parity() => self.a.parity().into(),
            _ => FieldParity::Mixed,
        }
    }

    /// Homogeneous parity, `None` when mixed.
    pub fn homogeneous_parity(&self) -> Option<Parity> {
        match self.parity() {
            FieldParity::Even => Some(Parity::Even),
            FieldParity::Odd => Some(Parity::Odd),
            FieldParity::Mixed => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when ε kills the field, i.e. it is pure soul.
    pub fn has_zero_body(&self) -> bool {
        self.a.has_zero_body()
    }

    pub fn is_polynomial(&self) -> bool {
        self.a.is_polynomial() && self.b.is_polynomial()
    }

    /// `D(a + θb) = b + θ·a′`.
    pub fn d(&self) -> Self {
        Self { a: self.b.clone(), b: self.a.derivative() }
    }

    /// `∂(a + θb) = a′ + θ·b′`.
    pub fn partial(&self) -> Self {
        Self { a: self.a.derivative(), b: self.b.derivative() }
    }

    /// `∂_θ(a + θb) = b`.
    pub fn partial_theta(&self) -> Self {
        Self::from_even(self.b.clone())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Self::new(self.a.checked_add(&other.a)?, self.b.checked_add(&other.b)?)
    }

    /// Graded product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let a = self.a.checked_mul(&other.a)?;
        let moved = if fault::graded_sign_flipped() { self.a.clone() } else { self.a.involution() };
        let b = self.b.checked_mul(&other.a)?.checked_add(&moved.checked_mul(&other.b)?)?;
        Self::new(a, b)
    }

    /// Inverse of an even superfield whose body is not identically zero:
    /// `1/(a + θb) = 1/a − θ·b/a²`.
    pub fn checked_recip(&self) -> Result<Self> {
        if self.homogeneous_parity() != Some(Parity::Even) {
            return Err(Error::NotInvertibleAsFunction("odd divisor"));
        }
        let n = self.generator_count();
        let inv_a = RationalComponent::one(n).checked_div(&self.a)?;
        let b = -&self.b.checked_mul(&inv_a)?.checked_mul(&inv_a)?;
        Self::new(inv_a, b)
    }

    pub fn checked_div(&self, divisor: &Self) -> Result<Self> {
        self.checked_mul(&divisor.checked_recip()?)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = RationalComponent::from_poly(ComponentFunction::from_integers(self.generator_count(), &[k]));
        Self { a: &self.a * &k, b: &self.b * &k }
    }

    /// Value at the point `(z, θ)`.
    pub fn eval(&self, z: &GrassmannNumber, theta: &GrassmannNumber) -> Result<GrassmannNumber> {
        let a = self.a.eval(z)?;
        let b = self.b.eval(z)?;
        a.checked_add(&theta.checked_mul(&b)?)
    }
}

impl Add for &Superfield {
    type Output = Superfield;

    fn add(self, rhs: &Superfield) -> Superfield {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Superfield {
    type Output = Superfield;

    fn sub(self, rhs: &Superfield) -> Superfield {
        self.checked_add(&-rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Superfield {
    type Output = Superfield;

    fn mul(self, rhs: &Superfield) -> Superfield {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Superfield {
    type Output = Superfield;

    fn neg(self) -> Superfield {
        Superfield { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for Superfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + θ·{{{}}}", self.a, self.b)
    }
}

impl fmt::Debug for Superfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Fault injection for mutation testing of the verification suite.
///
/// While a closure runs under [`fault::with_flipped_graded_sign`], the
/// graded product on the current thread drops the involution on its cross
/// term. Correct code never touches this.
#[doc(hidden)]
pub mod fault {
    use std::cell::Cell;

    thread_local! {
        static FLIPPED: Cell<bool> = const { Cell::new(false) };
    }

    pub fn graded_sign_flipped() -> bool {
        FLIPPED.with(Cell::get)
    }

    pub fn with_flipped_graded_sign<T>(f: impl FnOnce() -> T) -> T {
        struct Reset(bool);
        impl Drop for Reset {
            fn drop(&mut self) {
                FLIPPED.with(|c| c.set(self.0));
            }
        }
        let _reset = Reset(FLIPPED.with(|c| c.replace(true)));
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: usize = 2;

    fn th(i: usize) -> GrassmannNumber {
        GrassmannNumber::generator(L, i).unwrap()
    }

    fn poly(c: &[i64]) -> ComponentFunction {
        ComponentFunction::from_integers(L, c)
    }

    fn odd_poly(coeffs: Vec<GrassmannNumber>) -> ComponentFunction {
        ComponentFunction::new(Parity::Odd, L, coeffs).unwrap()
    }

    #[test]
    fn theta_squares_to_zero() {
        let t = Superfield::theta(L);
        assert!((&t * &t).is_zero());
    }

    #[test]
    fn even_component_commutes_past_theta() {
        // z · θθ1 = θ·(zθ1)
        let z = Superfield::z(L);
        let f = Superfield::from_polys(ComponentFunction::zero(Parity::Odd, L), odd_poly(vec![th(1)])).unwrap();
        let expected = Superfield::from_polys(
            ComponentFunction::zero(Parity::Even, L),
            odd_poly(vec![GrassmannNumber::zero(L), th(1)]),
        )
        .unwrap();
        assert_eq!(&z * &f, expected);
    }

    #[test]
    fn odd_component_anticommutes_past_theta() {
        // θ1 · θ = −θ·θ1
        let lhs = Superfield::constant(th(1)).unwrap();
        let got = &lhs * &Superfield::theta(L);
        let expected = Superfield::from_polys(ComponentFunction::zero(Parity::Odd, L), odd_poly(vec![-&th(1)])).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn d_of_coordinates() {
        assert_eq!(Superfield::z(L).d(), Superfield::theta(L));
        assert_eq!(Superfield::theta(L).d(), Superfield::one(L));
    }

    #[test]
    fn d_squared_is_partial_example() {
        // F = z² + θ·(θ1 z)
        let f = Superfield::from_polys(poly(&[0, 0, 1]), odd_poly(vec![GrassmannNumber::zero(L), th(1)])).unwrap();
        let df = f.d();
        let expected = Superfield::from_polys(odd_poly(vec![GrassmannNumber::zero(L), th(1)]), poly(&[0, 2])).unwrap();
        assert_eq!(df, expected);
        assert_eq!(df.d(), f.partial());
        assert_eq!(f.partial(), Superfield::from_polys(poly(&[0, 2]), odd_poly(vec![th(1)])).unwrap());
    }

    #[test]
    fn reciprocal() {
        // 1 + z + θθ1
        let f = Superfield::from_polys(poly(&[1, 1]), odd_poly(vec![th(1)])).unwrap();
        assert_eq!(&f * &f.checked_recip().unwrap(), Superfield::one(L));
        assert!(Superfield::theta(L).checked_recip().is_err());
    }

    #[test]
    fn parity_classification() {
        assert_eq!(Superfield::z(L).parity(), FieldParity::Even);
        assert_eq!(Superfield::theta(L).parity(), FieldParity::Odd);
        let mixed = Superfield::from_polys(poly(&[0, 1]), poly(&[1])).unwrap();
        assert_eq!(mixed.parity(), FieldParity::Mixed);
    }

    #[test]
    fn fault_injection_is_scoped() {
        let lhs = Superfield::constant(th(1)).unwrap();
        let honest = &lhs * &Superfield::theta(L);
        let flipped = fault::with_flipped_graded_sign(|| &lhs * &Superfield::theta(L));
        assert_eq!(flipped, -&honest);
        assert_eq!(&lhs * &Superfield::theta(L), honest);
    }
}
