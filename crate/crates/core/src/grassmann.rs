//! The finite Grassmann algebra Λ_L over Gaussian rationals.
//!
//! Basis monomials are indexed by bitmasks: bit `i` stands for the generator
//! θ_{i+1}, and a monomial is always written with its generators in
//! ascending order. The product of two monomials is zero when they share a
//! generator and otherwise picks up the sign of the permutation that sorts
//! the concatenated generator sequence.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Largest supported number of generators.
pub const MAX_GENERATORS: usize = 30;

/// Grading of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_mask(mask: u32) -> Self {
        if mask.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity of a product.
    pub fn combine(self, other: Parity) -> Self {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{|x|}` as a small integer.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Sign picked up when the monomial `left` is multiplied by `right` on the
/// right, assuming the two share no generator.
pub(crate) fn merge_sign(left: u32, right: u32) -> i64 {
    let mut swaps = 0u32;
    let mut rest = right;
    while rest != 0 {
        let t = rest.trailing_zeros();
        swaps += (left >> t >> 1).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of Λ_L: a finite linear combination of generator monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannNumber {
    generators: usize,
    terms: BTreeMap<u32, GaussianRational>,
}

impl GrassmannNumber {
    pub fn zero(generators: usize) -> Self {
        Self { generators, terms: BTreeMap::new() }
    }

    pub fn one(generators: usize) -> Self {
        Self::scalar(generators, GaussianRational::from_integer(1))
    }

    pub fn scalar(generators: usize, value: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(0, value);
        }
        Self { generators, terms }
    }

    pub fn from_integer(generators: usize, n: i64) -> Self {
        Self::scalar(generators, GaussianRational::from_integer(n))
    }

    /// The generator θ_index, counting from 1.
    pub fn generator(generators: usize, index: usize) -> Result<Self> {
        if index == 0 || index > generators {
            return Err(Error::GeneratorOutOfRange { index, count: generators });
        }
        Self::from_terms(generators, [(1u32 << (index - 1), GaussianRational::from_integer(1))])
    }

    /// Builds an element from `(mask, coefficient)` pairs. Repeated masks are
    /// summed and zero coefficients dropped.
    pub fn from_terms<I>(generators: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, GaussianRational)>,
    {
        if generators > MAX_GENERATORS {
            return Err(Error::TooManyGenerators(generators));
        }
        let mut out = Self::zero(generators);
        for (mask, coeff) in terms {
            if generators < 32 && mask >> generators != 0 {
                let index = 32 - mask.leading_zeros() as usize;
                return Err(Error::GeneratorOutOfRange { index, count: generators });
            }
            out.add_term(mask, &coeff);
        }
        Ok(out)
    }

    fn add_term(&mut self, mask: u32, coeff: &GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Nonzero terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &GaussianRational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> GaussianRational {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(GaussianRational::is_one)
    }

    /// The image under the body map ε.
    pub fn body(&self) -> GaussianRational {
        self.coefficient(0)
    }

    pub fn soul(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&0);
        s
    }

    /// Splits `x` into its scalar body and nilpotent soul.
    pub fn body_soul(&self) -> (Self, Self) {
        (Self::scalar(self.generators, self.body()), self.soul())
    }

    pub fn is_pure_soul(&self) -> bool {
        !self.terms.contains_key(&0)
    }

    /// Parity of a homogeneous element; zero counts as even, mixed elements
    /// return `None`.
    pub fn parity(&self) -> Option<Parity> {
        let mut masks = self.terms.keys().map(|m| Parity::of_mask(*m));
        let first = masks.next().unwrap_or(Parity::Even);
        masks.all(|p| p == first).then_some(first)
    }

    /// True when every term has parity `p` (so zero qualifies for both).
    pub fn is_homogeneous(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| Parity::of_mask(*m) == p)
    }

    pub fn even_part(&self) -> Self {
        self.filter(Parity::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(Parity::Odd)
    }

    fn filter(&self, p: Parity) -> Self {
        Self {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| Parity::of_mask(**m) == p)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The grade involution: identity on even terms, negation on odd ones.
    /// Satisfies `x·θ = θ·involution(x)` for any odd `θ` and any `x`.
    pub fn involution(&self) -> Self {
        Self {
            generators: self.generators,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.count_ones() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.generators);
        }
        Self {
            generators: self.generators,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&GaussianRational::from_integer(k))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.generators != other.generators {
            return Err(Error::AlgebraMismatch { left: self.generators, right: other.generators });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    /// The Grassmann product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<u32, GaussianRational> = BTreeMap::new();
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let mut prod = ca * cb;
                if merge_sign(ma, mb) < 0 {
                    prod = -prod;
                }
                *acc.entry(ma | mb).or_default() += &prod;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self { generators: self.generators, terms: acc })
    }

    /// Two-sided inverse of an even element with nonzero body, computed as a
    /// finite Neumann series in the nilpotent soul.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_homogeneous(Parity::Even) {
            return Err(Error::Parity("only even elements can be inverted".into()));
        }
        let body_inv = self.body().inv().ok_or(Error::NotInvertible("zero body"))?;
        let n = self.generators;
        // x = b(1 + s/b), so x⁻¹ = b⁻¹ Σ (-s/b)^k
        let step = self.soul().scale(&-&body_inv);
        let mut term = Self::one(n);
        let mut sum = Self::one(n);
        for _ in 0..n / 2 {
            term = &term * &step;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum.scale(&body_inv))
    }

    /// Pseudo-random homogeneous element drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(parity: Parity, generators: usize, bound: u32, rng: &mut R) -> Self {
        let mut out = Self::zero(generators);
        let masks = 1u32.checked_shl(generators as u32).unwrap_or(0).wrapping_sub(1);
        for mask in 0..=masks {
            if Parity::of_mask(mask) != parity {
                continue;
            }
            let c = GaussianRational::random(rng, bound);
            out.add_term(mask, &c);
        }
        out
    }

    /// Deterministic draw: the same `(parity, generators, seed, bound)`
    /// always yields the same element.
    pub fn random_seeded(parity: Parity, generators: usize, seed: u64, bound: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random(parity, generators, bound, &mut rng)
    }
}

impl Add for &GrassmannNumber {
    type Output = GrassmannNumber;

    fn add(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.checked_add(rhs).expect("algebra mismatch")
    }
}

impl Sub for &GrassmannNumber {
    type Output = GrassmannNumber;

    fn sub(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.checked_sub(rhs).expect("algebra mismatch")
    }
}

impl Mul for &GrassmannNumber {
    type Output = GrassmannNumber;

    fn mul(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.checked_mul(rhs).expect("algebra mismatch")
    }
}

impl Neg for &GrassmannNumber {
    type Output = GrassmannNumber;

    fn neg(self) -> GrassmannNumber {
        GrassmannNumber {
            generators: self.generators,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl fmt::Display for GrassmannNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (mask, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *mask == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{c}·")?;
            }
            for bit in 0..32 {
                if mask & (1 << bit) != 0 {
                    write!(f, "θ{}", bit + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ{}[{}]", self.generators, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(i: usize) -> GrassmannNumber {
        GrassmannNumber::generator(2, i).unwrap()
    }

    fn frac(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_fraction(n, d)
    }

    #[test]
    fn ascending_product_has_positive_sign() {
        let p = &th(1) * &th(2);
        assert_eq!(p.terms().collect::<Vec<_>>(), vec![(0b11, &frac(1, 1))]);
    }

    #[test]
    fn descending_product_is_negated() {
        assert_eq!(&th(2) * &th(1), -&(&th(1) * &th(2)));
    }

    #[test]
    fn product_with_inverse_is_one() {
        let t12 = &th(1) * &th(2);
        let x = &GrassmannNumber::from_integer(2, 2) + &t12;
        let y = &GrassmannNumber::scalar(2, frac(1, 2)) - &t12.scale(&frac(1, 4));
        assert!((&x * &y).is_one());
        assert_eq!(x.invert().unwrap(), y);
    }

    #[test]
    fn invert_one_and_odd() {
        assert!(GrassmannNumber::one(3).invert().unwrap().is_one());
        assert_eq!(th(1).invert(), Err(Error::Parity("only even elements can be inverted".into())));
        let nilpotent = &th(1) * &th(2);
        assert_eq!(nilpotent.invert(), Err(Error::NotInvertible("zero body")));
    }

    #[test]
    fn body_soul_split() {
        let x = &GrassmannNumber::from_integer(2, 3) + &th(1).scale_int(5);
        let (b, s) = x.body_soul();
        assert_eq!(b, GrassmannNumber::from_integer(2, 3));
        assert_eq!(s, th(1).scale_int(5));

        let t12 = &th(1) * &th(2);
        let (b, s) = t12.body_soul();
        assert!(b.is_zero());
        assert_eq!(s, t12);

        let (b, s) = GrassmannNumber::zero(2).body_soul();
        assert!(b.is_zero() && s.is_zero());
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = GrassmannNumber::one(2);
        let b = GrassmannNumber::one(3);
        assert_eq!(a.checked_mul(&b), Err(Error::AlgebraMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn masks_outside_the_algebra_are_rejected() {
        assert!(GrassmannNumber::from_terms(2, [(0b100, frac(1, 1))]).is_err());
        assert!(GrassmannNumber::generator(2, 3).is_err());
    }

    #[test]
    fn random_contracts() {
        assert!(GrassmannNumber::random_seeded(Parity::Odd, 0, 5, 5).is_zero());
        let a = GrassmannNumber::random_seeded(Parity::Even, 2, 7, 5);
        let b = GrassmannNumber::random_seeded(Parity::Even, 2, 7, 5);
        assert_eq!(a, b);
        let odd = GrassmannNumber::random_seeded(Parity::Odd, 2, 3, 5);
        assert!(odd.terms().all(|(m, _)| m.count_ones() % 2 == 1));
    }

    #[test]
    fn merge_sign_examples() {
        assert_eq!(merge_sign(0b001, 0b010), 1);
        assert_eq!(merge_sign(0b010, 0b001), -1);
        // θ2θ3 · θ1 = θ1θ2θ3 after two transpositions
        assert_eq!(merge_sign(0b110, 0b001), 1);
        // θ3 · θ1θ2 needs two transpositions as well
        assert_eq!(merge_sign(0b100, 0b011), 1);
        assert_eq!(merge_sign(0b100, 0b010), -1);
    }

    #[test]
    fn display() {
        let x = &GrassmannNumber::scalar(2, frac(1, 2)) - &(&th(1) * &th(2)).scale(&frac(1, 4));
        assert_eq!(x.to_string(), "1/2 + -1/4·θ1θ2");
    }
}
