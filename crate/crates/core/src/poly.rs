//! Component functions: polynomials in the even coordinate `z` with
//! Grassmann-valued coefficients of a declared parity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::intpoly::IntPoly;
use crate::scalar::GaussianRational;

/// `Σ_k c_k z^k` with every `c_k` homogeneous of the declared parity.
///
/// Coefficients are held over one common denominator in lowest terms, so
/// equal functions have equal representations. Zero functions compare
/// equal whatever their declared parity.
#[derive(Clone)]
pub struct ComponentFunction {
    parity: Parity,
    generators: usize,
    poly: IntPoly,
}

/// An even inner function with its powers, shared by several compositions.
pub(crate) struct Substitution<'a> {
    inner: &'a ComponentFunction,
    powers: Vec<IntPoly>,
}

impl<'a> Substitution<'a> {
    pub(crate) fn new(inner: &'a ComponentFunction) -> Result<Self> {
        if inner.parity != Parity::Even && !inner.is_zero() {
            return Err(Error::CompositionRequiresEven);
        }
        Ok(Self { inner, powers: Vec::new() })
    }
}

impl ComponentFunction {
    /// Validating constructor: every coefficient must live in Λ_generators
    /// and be homogeneous of `parity`.
    pub fn new(parity: Parity, generators: usize, coeffs: Vec<GrassmannNumber>) -> Result<Self> {
        for (k, c) in coeffs.iter().enumerate() {
            if c.generator_count() != generators {
                return Err(Error::AlgebraMismatch { left: generators, right: c.generator_count() });
            }
            if !c.is_homogeneous(parity) {
                return Err(Error::Parity(format!("coefficient of z^{k} is not {parity}")));
            }
        }
        Ok(Self::from_raw(parity, generators, coeffs))
    }

    fn from_raw(parity: Parity, generators: usize, coeffs: Vec<GrassmannNumber>) -> Self {
        Self::from_poly(parity, generators, IntPoly::from_numbers(&coeffs))
    }

    fn from_poly(parity: Parity, generators: usize, poly: IntPoly) -> Self {
        Self { parity, generators, poly }
    }

    fn with(&self, poly: IntPoly) -> Self {
        Self::from_poly(self.parity, self.generators, poly)
    }

    pub fn zero(parity: Parity, generators: usize) -> Self {
        Self::from_poly(parity, generators, IntPoly::zero())
    }

    pub fn one(generators: usize) -> Self {
        Self::constant(GrassmannNumber::one(generators)).expect("one is even")
    }

    /// The coordinate function `z`.
    pub fn z(generators: usize) -> Self {
        Self::from_raw(
            Parity::Even,
            generators,
            vec![GrassmannNumber::zero(generators), GrassmannNumber::one(generators)],
        )
    }

    /// A constant function; its parity is read off the value (zero is even).
    pub fn constant(c: GrassmannNumber) -> Result<Self> {
        let parity = c
            .parity()
            .ok_or_else(|| Error::Parity("constant of mixed parity".into()))?;
        Ok(Self::from_raw(parity, c.generator_count(), vec![c]))
    }

    /// `c·z^k`.
    pub fn monomial(c: GrassmannNumber, k: usize) -> Result<Self> {
        let parity = c
            .parity()
            .ok_or_else(|| Error::Parity("coefficient of mixed parity".into()))?;
        let n = c.generator_count();
        let mut coeffs = vec![GrassmannNumber::zero(n); k];
        coeffs.push(c);
        Ok(Self::from_raw(parity, n, coeffs))
    }

    /// Scalar polynomial from integer coefficients, lowest degree first.
    pub fn from_integers(generators: usize, coeffs: &[i64]) -> Self {
        Self::from_raw(
            Parity::Even,
            generators,
            coeffs.iter().map(|c| GrassmannNumber::from_integer(generators, *c)).collect(),
        )
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Coefficients, lowest degree first, without trailing zeros.
    pub fn coeffs(&self) -> Vec<GrassmannNumber> {
        self.poly.numbers(self.generators)
    }

    pub fn coeff(&self, k: usize) -> GrassmannNumber {
        self.poly.number(k, self.generators)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.poly.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_one()
    }

    /// The body polynomial `ε(p)` as scalar coefficients.
    pub fn body_coeffs(&self) -> Vec<GaussianRational> {
        let mut out: Vec<_> = (0..self.poly.len()).map(|k| self.poly.body(k)).collect();
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// True when `ε(p) ≡ 0` as a function of `z`.
    pub fn has_zero_body(&self) -> bool {
        self.poly.has_zero_body()
    }

    /// Reinterprets the zero polynomial with another parity. Nonzero
    /// polynomials keep their parity and are returned unchanged.
    pub fn with_parity_if_zero(mut self, parity: Parity) -> Self {
        if self.is_zero() {
            self.parity = parity;
        }
        self
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        self.with(self.poly.scale(k))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&GaussianRational::from_integer(k))
    }

    /// Multiplies by the Grassmann constant `c` on the left.
    pub fn mul_constant_left(&self, c: &GrassmannNumber) -> Result<Self> {
        let parity = c
            .parity()
            .ok_or_else(|| Error::Parity("constant of mixed parity".into()))?;
        if c.generator_count() != self.generators {
            return Err(Error::AlgebraMismatch { left: c.generator_count(), right: self.generators });
        }
        let c = IntPoly::from_numbers(std::slice::from_ref(c));
        Ok(Self::from_poly(parity.combine(self.parity), self.generators, c.mul(&self.poly)))
    }

    /// Grade involution applied coefficientwise.
    pub fn involution(&self) -> Self {
        if self.parity == Parity::Even {
            return self.clone();
        }
        -self
    }

    /// Formal derivative `d/dz`.
    pub fn derivative(&self) -> Self {
        self.with(self.poly.derivative())
    }

    /// Formal antiderivative with constant term `c0`; differentiating the
    /// result gives back `self` exactly.
    pub fn antiderivative(&self, c0: &GrassmannNumber) -> Result<Self> {
        if c0.generator_count() != self.generators {
            return Err(Error::AlgebraMismatch { left: self.generators, right: c0.generator_count() });
        }
        if !c0.is_homogeneous(self.parity) {
            return Err(Error::Parity(format!(
                "integration constant must be {} like the integrand",
                self.parity
            )));
        }
        let c0 = IntPoly::from_numbers(std::slice::from_ref(c0));
        Ok(self.with(self.poly.antiderivative(&c0)))
    }

    /// Evaluates at an even point by Horner's rule.
    pub fn eval(&self, z: &GrassmannNumber) -> Result<GrassmannNumber> {
        if !z.is_homogeneous(Parity::Even) {
            return Err(Error::CompositionRequiresEven);
        }
        let mut acc = GrassmannNumber::zero(self.generators);
        for c in self.coeffs().iter().rev() {
            acc = acc.checked_mul(z)?.checked_add(c)?;
        }
        Ok(acc)
    }

    /// `self ∘ inner`, i.e. `z ↦ self(inner(z))`.
    pub fn compose(&self, inner: &ComponentFunction) -> Result<Self> {
        if inner.parity != Parity::Even && !inner.is_zero() {
            return Err(Error::CompositionRequiresEven);
        }
        if inner.generators != self.generators {
            return Err(Error::AlgebraMismatch { left: self.generators, right: inner.generators });
        }
        Ok(self.with(self.poly.compose(&inner.poly)))
    }

    /// `self ∘ sub.inner`, reusing the powers cached in `sub`.
    pub(crate) fn compose_in(&self, sub: &mut Substitution<'_>) -> Result<Self> {
        if sub.inner.generators != self.generators {
            return Err(Error::AlgebraMismatch { left: self.generators, right: sub.inner.generators });
        }
        Ok(self.with(self.poly.compose_powers(&sub.inner.poly, &mut sub.powers)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_algebra(other)?;
        let parity = self.sum_parity(other)?;
        Ok(Self::from_poly(parity, self.generators, self.poly.add(&other.poly)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_algebra(other)?;
        let parity = self.parity.combine(other.parity);
        Ok(Self::from_poly(parity, self.generators, self.poly.mul(&other.poly)))
    }

    fn check_algebra(&self, other: &Self) -> Result<()> {
        if self.generators != other.generators {
            return Err(Error::AlgebraMismatch { left: self.generators, right: other.generators });
        }
        Ok(())
    }

    /// Parity of a sum; a zero summand adopts the parity of the other.
    fn sum_parity(&self, other: &Self) -> Result<Parity> {
        if self.parity == other.parity || other.is_zero() {
            Ok(self.parity)
        } else if self.is_zero() {
            Ok(other.parity)
        } else {
            Err(Error::Parity(format!("cannot add {} and {} functions", self.parity, other.parity)))
        }
    }

    /// Random polynomial of degree at most `max_degree`.
    pub fn random<R: Rng + ?Sized>(
        parity: Parity,
        generators: usize,
        max_degree: usize,
        bound: u32,
        rng: &mut R,
    ) -> Self {
        let coeffs = (0..=max_degree)
            .map(|_| GrassmannNumber::random(parity, generators, bound, rng))
            .collect();
        Self::from_raw(parity, generators, coeffs)
    }
}

impl PartialEq for ComponentFunction {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.poly == other.poly
            && (self.parity == other.parity || self.poly.is_zero())
    }
}

impl Eq for ComponentFunction {}

impl std::hash::Hash for ComponentFunction {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
        self.poly.hash(state);
    }
}

impl Add for &ComponentFunction {
    type Output = ComponentFunction;

    fn add(self, rhs: &ComponentFunction) -> ComponentFunction {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &ComponentFunction {
    type Output = ComponentFunction;

    fn sub(self, rhs: &ComponentFunction) -> ComponentFunction {
        self.checked_add(&-rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &ComponentFunction {
    type Output = ComponentFunction;

    fn mul(self, rhs: &ComponentFunction) -> ComponentFunction {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &ComponentFunction {
    type Output = ComponentFunction;

    fn neg(self) -> ComponentFunction {
        self.with(self.poly.neg())
    }
}

impl fmt::Display for ComponentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·z")?,
                _ => write!(f, "({c})·z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ComponentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.parity, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: usize = 2;

    fn th(i: usize) -> GrassmannNumber {
        GrassmannNumber::generator(L, i).unwrap()
    }

    fn ints(c: &[i64]) -> ComponentFunction {
        ComponentFunction::from_integers(L, c)
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(ints(&[0, 0, 1]).derivative(), ints(&[0, 2]));
        let odd = ComponentFunction::monomial(th(1), 1).unwrap();
        assert_eq!(odd.derivative(), ComponentFunction::constant(th(1)).unwrap());
        assert!(ints(&[7]).derivative().is_zero());
    }

    #[test]
    fn antiderivative_examples() {
        let zero = GrassmannNumber::zero(L);
        assert_eq!(ints(&[0, 2]).antiderivative(&zero).unwrap(), ints(&[0, 0, 1]));

        let odd = ComponentFunction::constant(th(1)).unwrap();
        let got = odd.antiderivative(&th(2)).unwrap();
        assert_eq!(got.coeffs(), vec![th(2), th(1)]);

        let five = GrassmannNumber::from_integer(L, 5);
        assert_eq!(ComponentFunction::zero(Parity::Even, L).antiderivative(&five).unwrap(), ints(&[5]));
    }

    #[test]
    fn antiderivative_rejects_parity_mismatch() {
        assert!(matches!(ints(&[1]).antiderivative(&th(1)), Err(Error::Parity(_))));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(ints(&[0, 0, 1]).compose(&ints(&[1, 1])).unwrap(), ints(&[1, 2, 1]));

        let psi = ComponentFunction::new(Parity::Odd, L, vec![th(1), th(2).scale_int(3)]).unwrap();
        assert_eq!(psi.compose(&ComponentFunction::z(L)).unwrap(), psi);

        let t12 = &th(1) * &th(2);
        let inner = &ComponentFunction::constant(t12.clone()).unwrap() + &ComponentFunction::z(L);
        let expected = ComponentFunction::new(
            Parity::Even,
            L,
            vec![GrassmannNumber::zero(L), t12.scale_int(2), GrassmannNumber::one(L)],
        )
        .unwrap();
        assert_eq!(ints(&[0, 0, 1]).compose(&inner).unwrap(), expected);
    }

    #[test]
    fn compose_rejects_odd_inner() {
        let odd = ComponentFunction::constant(th(1)).unwrap();
        assert_eq!(ints(&[0, 1]).compose(&odd), Err(Error::CompositionRequiresEven));
    }

    #[test]
    fn new_validates_parity() {
        assert!(ComponentFunction::new(Parity::Even, L, vec![th(1)]).is_err());
        assert!(ComponentFunction::new(Parity::Odd, L, vec![th(1), GrassmannNumber::zero(L)]).is_ok());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn eval_matches_compose_with_constant() {
        let p = ints(&[3, -1, 2]);
        let x = &GrassmannNumber::from_integer(L, 2) + &(&th(1) * &th(2));
        let via_compose = p.compose(&ComponentFunction::constant(x.clone()).unwrap()).unwrap();
        assert_eq!(via_compose.coeff(0), p.eval(&x).unwrap());
    }
}
