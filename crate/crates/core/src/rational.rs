//! Quotients of component functions.
//!
//! Denominators are even polynomials whose body polynomial is not
//! identically zero. Such elements are never zero divisors in Λ_L[z], so two
//! fractions are equal exactly when their cross products agree, and no
//! normal form is needed to decide equality.
//!
//! A denominator is kept as a product of powers of distinct base
//! polynomials. Sums then use the least common multiple of the factored
//! forms, which keeps repeated quotient-rule steps from squaring the
//! denominator every time.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::poly::{ComponentFunction, Substitution};

/// Nonconstant even bases with positive exponents, no base repeated.
type Factors = Vec<(ComponentFunction, u32)>;

#[derive(Clone)]
pub struct RationalComponent {
    num: ComponentFunction,
    den: Factors,
}

fn power(base: &ComponentFunction, exp: u32) -> ComponentFunction {
    let mut out = base.clone();
    for _ in 1..exp {
        out = &out * base;
    }
    out
}

fn expand(factors: &[(ComponentFunction, u32)], generators: usize) -> ComponentFunction {
    factors
        .iter()
        .fold(ComponentFunction::one(generators), |acc, (b, e)| &acc * &power(b, *e))
}

fn exponent(factors: &[(ComponentFunction, u32)], base: &ComponentFunction) -> u32 {
    factors.iter().find(|(b, _)| b == base).map_or(0, |(_, e)| *e)
}

/// `(a / gcd, b / gcd)` in factored form, where `gcd` takes the smaller
/// exponent of every shared base.
fn cofactors(a: &[(ComponentFunction, u32)], b: &[(ComponentFunction, u32)]) -> (Factors, Factors) {
    let rest = |x: &[(ComponentFunction, u32)], y: &[(ComponentFunction, u32)]| {
        x.iter()
            .filter_map(|(base, e)| {
                let left = e.saturating_sub(exponent(y, base));
                (left > 0).then(|| (base.clone(), left))
            })
            .collect()
    };
    (rest(a, b), rest(b, a))
}

impl RationalComponent {
    pub fn new(num: ComponentFunction, den: ComponentFunction) -> Result<Self> {
        if num.generator_count() != den.generator_count() {
            return Err(Error::AlgebraMismatch { left: num.generator_count(), right: den.generator_count() });
        }
        if den.parity() != Parity::Even && !den.is_zero() {
            return Err(Error::NotInvertibleAsFunction("odd divisor"));
        }
        if den.has_zero_body() {
            return Err(Error::NotInvertibleAsFunction("divisor has identically zero body"));
        }
        Self::from_poly(num).with_factor(den, 1)
    }

    /// Divides by `base^exp`, folding constant bases into the numerator.
    /// `base` must be even with a body that is not identically zero.
    fn with_factor(mut self, base: ComponentFunction, exp: u32) -> Result<Self> {
        if self.num.is_zero() || base.is_one() {
            return Ok(self);
        }
        if base.degree() == Some(0) {
            let inv = base.coeff(0).invert()?;
            for _ in 0..exp {
                self.num = self.num.mul_constant_left(&inv)?;
            }
            return Ok(self);
        }
        match self.den.iter_mut().find(|(b, _)| *b == base) {
            Some((_, e)) => *e += exp,
            None => self.den.push((base, exp)),
        }
        Ok(self)
    }

    fn with_factors(self, factors: Factors) -> Result<Self> {
        factors.into_iter().try_fold(self, |acc, (b, e)| acc.with_factor(b, e))
    }

    pub fn from_poly(p: ComponentFunction) -> Self {
        Self { num: p, den: Vec::new() }
    }

    pub fn zero(parity: Parity, generators: usize) -> Self {
        Self::from_poly(ComponentFunction::zero(parity, generators))
    }

    pub fn one(generators: usize) -> Self {
        Self::from_poly(ComponentFunction::one(generators))
    }

    pub fn constant(c: GrassmannNumber) -> Result<Self> {
        Ok(Self::from_poly(ComponentFunction::constant(c)?))
    }

    pub fn num(&self) -> &ComponentFunction {
        &self.num
    }

    /// The denominator multiplied out.
    pub fn den(&self) -> ComponentFunction {
        expand(&self.den, self.generator_count())
    }

    pub fn parity(&self) -> Parity {
        self.num.parity()
    }

    pub fn generator_count(&self) -> usize {
        self.num.generator_count()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&ComponentFunction> {
        self.is_polynomial().then_some(&self.num)
    }

    /// True when the body of the value vanishes identically.
    pub fn has_zero_body(&self) -> bool {
        self.num.has_zero_body()
    }

    pub fn with_parity_if_zero(self, parity: Parity) -> Self {
        Self { num: self.num.with_parity_if_zero(parity), den: self.den }
    }

    pub fn involution(&self) -> Self {
        Self { num: self.num.involution(), den: self.den.clone() }
    }

    fn zero_like(num: ComponentFunction) -> Self {
        Self::from_poly(num)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            let num = self.num.checked_add(&other.num)?;
            if num.is_zero() {
                return Ok(Self::zero_like(num));
            }
            return Ok(Self { num, den: self.den.clone() });
        }
        if other.is_zero() && other.num.generator_count() == self.generator_count() {
            return Ok(self.with_sum_parity(other));
        }
        if self.is_zero() && self.num.generator_count() == other.generator_count() {
            return Ok(other.with_sum_parity(self));
        }
        let n = self.generator_count();
        let (only_self, only_other) = cofactors(&self.den, &other.den);
        let num = self
            .num
            .checked_mul(&expand(&only_other, n))?
            .checked_add(&other.num.checked_mul(&expand(&only_self, n))?)?;
        if num.is_zero() {
            return Ok(Self::zero_like(num));
        }
        Self { num, den: self.den.clone() }.with_factors(only_other)
    }

    /// `self` unchanged except that a zero `self` adopts the parity of
    /// `other`, matching polynomial addition.
    fn with_sum_parity(&self, other: &Self) -> Self {
        let parity = if self.is_zero() { other.parity() } else { self.parity() };
        self.clone().with_parity_if_zero(parity)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let num = self.num.checked_mul(&other.num)?;
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        Self { num, den: self.den.clone() }.with_factors(other.den.clone())
    }

    /// Exact quotient by an even fraction whose body is not identically zero.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.parity() != Parity::Even && !divisor.is_zero() {
            return Err(Error::NotInvertibleAsFunction("odd divisor"));
        }
        if divisor.has_zero_body() {
            return Err(Error::NotInvertibleAsFunction("divisor has identically zero body"));
        }
        let num = self.num.checked_mul(&divisor.den())?;
        Self { num, den: self.den.clone() }.with_factor(divisor.num.clone(), 1)
    }

    /// Quotient rule applied to the factored form:
    /// `(N / Π bᵢ^eᵢ)′ = (N′·Π bᵢ − N·Σ eᵢ bᵢ′ Π_{j≠i} bⱼ) / Π bᵢ^(eᵢ+1)`.
    pub fn derivative(&self) -> Self {
        if self.den.is_empty() {
            return Self::from_poly(self.num.derivative());
        }
        let n = self.generator_count();
        let bases: Vec<&ComponentFunction> = self.den.iter().map(|(b, _)| b).collect();
        let all = bases.iter().fold(ComponentFunction::one(n), |acc, b| &acc * b);
        let mut num = &self.num.derivative() * &all;
        for (i, (b, e)) in self.den.iter().enumerate() {
            let others = bases
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(ComponentFunction::one(n), |acc, (_, c)| &acc * c);
            let term = &(&self.num * &b.derivative().scale_int(i64::from(*e))) * &others;
            num = &num - &term;
        }
        let num = num.with_parity_if_zero(self.parity());
        if num.is_zero() {
            return Self::zero_like(num);
        }
        let den = self.den.iter().map(|(b, e)| (b.clone(), e + 1)).collect();
        Self { num, den }
    }

    /// `self ∘ inner` for an even polynomial `inner`.
    pub fn compose(&self, inner: &ComponentFunction) -> Result<Self> {
        self.compose_in(&mut Substitution::new(inner)?)
    }

    pub(crate) fn compose_in(&self, sub: &mut Substitution<'_>) -> Result<Self> {
        let mut out = Self::from_poly(self.num.compose_in(sub)?);
        for (b, e) in &self.den {
            let base = b.compose_in(sub)?;
            if base.has_zero_body() {
                return Err(Error::NotInvertibleAsFunction("divisor has identically zero body"));
            }
            out = out.with_factor(base, *e)?;
        }
        Ok(out)
    }

    /// Value at an even point. The denominator must be invertible there.
    pub fn eval(&self, z: &GrassmannNumber) -> Result<GrassmannNumber> {
        let mut value = self.num.eval(z)?;
        for (b, e) in &self.den {
            let inv = b.eval(z)?.invert()?;
            for _ in 0..*e {
                value = value.checked_mul(&inv)?;
            }
        }
        Ok(value)
    }
}

impl PartialEq for RationalComponent {
    fn eq(&self, other: &Self) -> bool {
        if self.generator_count() != other.generator_count() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        let n = self.generator_count();
        let (only_self, only_other) = cofactors(&self.den, &other.den);
        let lhs = &self.num * &expand(&only_other, n);
        let rhs = &other.num * &expand(&only_self, n);
        lhs == rhs || (&lhs - &rhs).is_zero()
    }
}

impl From<ComponentFunction> for RationalComponent {
    fn from(p: ComponentFunction) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalComponent {
    type Output = RationalComponent;

    fn add(self, rhs: &RationalComponent) -> RationalComponent {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &RationalComponent {
    type Output = RationalComponent;

    fn sub(self, rhs: &RationalComponent) -> RationalComponent {
        self.checked_add(&-rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &RationalComponent {
    type Output = RationalComponent;

    fn mul(self, rhs: &RationalComponent) -> RationalComponent {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &RationalComponent {
    type Output = RationalComponent;

    fn neg(self) -> RationalComponent {
        RationalComponent { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den())
        }
    }
}

impl fmt::Debug for RationalComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.parity(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: usize = 2;

    fn th(i: usize) -> GrassmannNumber {
        GrassmannNumber::generator(L, i).unwrap()
    }

    fn poly(c: &[i64]) -> RationalComponent {
        ComponentFunction::from_integers(L, c).into()
    }

    #[test]
    fn divide_by_one() {
        let x = poly(&[1, 2, 3]);
        assert_eq!(x.checked_div(&RationalComponent::one(L)).unwrap(), x);
    }

    #[test]
    fn inverse_of_nilpotent_perturbation() {
        // 1 + θ1θ2·z
        let t12 = &th(1) * &th(2);
        let d: RationalComponent = (&ComponentFunction::one(L)
            + &ComponentFunction::monomial(t12, 1).unwrap())
            .into();
        let inv = RationalComponent::one(L).checked_div(&d).unwrap();
        assert_eq!(&inv * &d, RationalComponent::one(L));
    }

    #[test]
    fn odd_divisor_rejected() {
        let odd = RationalComponent::constant(th(1)).unwrap();
        assert!(matches!(poly(&[1]).checked_div(&odd), Err(Error::NotInvertibleAsFunction(_))));
    }

    #[test]
    fn nilpotent_divisor_rejected() {
        let soul = RationalComponent::constant(&th(1) * &th(2)).unwrap();
        assert!(matches!(poly(&[1]).checked_div(&soul), Err(Error::NotInvertibleAsFunction(_))));
        assert!(RationalComponent::one(L).checked_div(&RationalComponent::zero(Parity::Even, L)).is_err());
    }

    #[test]
    fn cross_multiplication_equality() {
        // (z² − 1)/(z − 1) = z + 1
        let lhs = poly(&[-1, 0, 1]).checked_div(&poly(&[-1, 1])).unwrap();
        assert_eq!(lhs, poly(&[1, 1]));
        assert_ne!(lhs, poly(&[1, 2]));
    }

    #[test]
    fn quotient_rule() {
        // d/dz (1/z) = −1/z²
        let r = poly(&[1]).checked_div(&poly(&[0, 1])).unwrap();
        let expected = poly(&[-1]).checked_div(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(r.derivative(), expected);
    }

    #[test]
    fn constant_denominator_folds() {
        let r = poly(&[2, 4]).checked_div(&poly(&[2])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r, poly(&[1, 2]));
    }
}
