//! Exact complex scalars: Gaussian rationals `re + im·i` with `re, im ∈ ℚ`.
//!
//! Each part is a rational held inline as a pair of machine integers while
//! it fits, and as a `BigRational` otherwise. The representation is
//! canonical (lowest terms, positive denominator, inline whenever
//! possible), so structural equality is numerical equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Canonical rational. `Small(n, d)` has `d > 0`, `gcd(n, d) = 1` and
/// `n ≠ i64::MIN`; `Big` is used only for values outside that range.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a <= u128::from(u64::MAX) && b <= u128::from(u64::MAX) {
        return u128::from(gcd_u64(a as u64, b as u64));
    }
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rat {
    const ZERO: Rat = Rat::Small(0, 1);
    const ONE: Rat = Rat::Small(1, 1);

    /// Canonical form of `n / d` for `d > 0`.
    fn from_i128(n: i128, d: i128) -> Rat {
        debug_assert!(d > 0);
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        let (n, d) = (n / g, d / g);
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new_raw(n.into(), d.into()))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rat::Small(n, d),
            _ => Rat::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(b) => b.is_negative(),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) => o.clone(),
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if b == d {
                    Rat::from_i128(i128::from(*a) + i128::from(*c), i128::from(*b))
                } else {
                    let n = i128::from(*a) * i128::from(*d) + i128::from(*c) * i128::from(*b);
                    Rat::from_i128(n, i128::from(*b) * i128::from(*d))
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => Rat::Small(-n, *d),
            Rat::Big(b) => Rat::from_big(-(**b).clone()),
        }
    }

    fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::ZERO,
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let g1 = gcd_u64(a.unsigned_abs(), *d as u64) as i64;
                let g2 = gcd_u64(c.unsigned_abs(), *b as u64) as i64;
                let n = i128::from(a / g1) * i128::from(c / g2);
                let den = i128::from(b / g2) * i128::from(d / g1);
                match (i64::try_from(n), i64::try_from(den)) {
                    (Ok(n), Ok(den)) if n != i64::MIN => Rat::Small(n, den),
                    _ => Rat::Big(Box::new(BigRational::new_raw(n.into(), den.into()))),
                }
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn div(&self, o: &Rat) -> Rat {
        match o {
            Rat::Small(n, d) if *n > 0 => self.mul(&Rat::Small(*d, *n)),
            Rat::Small(n, d) => {
                debug_assert!(*n != 0, "division by zero");
                self.mul(&Rat::Small(-d, -n))
            }
            Rat::Big(b) => Rat::from_big(self.to_big() / (**b).clone()),
        }
    }

    fn abs(&self) -> Rat {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: Rat,
    im: Rat,
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self { re: Rat::ZERO, im: Rat::ZERO }
    }
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re: Rat::from_big(re), im: Rat::from_big(im) }
    }

    pub fn from_ratios(re: (i64, i64), im: (i64, i64)) -> Self {
        let part = |(n, d): (i64, i64)| {
            assert!(d != 0, "zero denominator");
            let s = d.signum() as i128;
            Rat::from_i128(i128::from(n) * s, i128::from(d) * s)
        };
        Self { re: part(re), im: part(im) }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_ratios((n, 1), (0, 1))
    }

    pub fn from_fraction(num: i64, den: i64) -> Self {
        Self::from_ratios((num, den), (0, 1))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: Rat::ZERO, im: Rat::ONE }
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self { re: Rat::ONE.div(&self.re), im: Rat::ZERO });
        }
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Some(Self { re: self.re.div(&norm), im: self.im.neg().div(&norm) })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = Rat::from_i128(i128::from(k), 1);
        Self { re: self.re.mul(&k), im: self.im.mul(&k) }
    }

    /// Uniform draw with numerators in `[-bound, bound]` and denominators in
    /// `[1, bound]` for each part.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: u32) -> Self {
        let bound = i64::from(bound.max(1));
        let mut part = || {
            let num = rng.random_range(-bound..=bound);
            let den = rng.random_range(1..=bound);
            Rat::from_i128(num.into(), den.into())
        };
        let re = part();
        let im = part();
        Self { re, im }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self { re: Rat::ONE, im: Rat::ZERO }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;

    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational { re: self.re.mul(&rhs.re), im: Rat::ZERO };
        }
        GaussianRational {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational { re: self.re.neg(), im: self.im.neg() }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for GaussianRational {
            type Output = GaussianRational;

            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re = self.re.add(&rhs.re);
        self.im = self.im.add(&rhs.im);
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re = self.re.sub(&rhs.re);
        self.im = self.im.sub(&rhs.im);
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_inverse() {
        let x = GaussianRational::from_ratios((3, 4), (-2, 5));
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn i_squared() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_integer(-1));
    }

    #[test]
    fn canonical_form() {
        let a = GaussianRational::from_fraction(2, 4);
        let b = GaussianRational::from_fraction(-1, -2);
        assert_eq!(a, b);
        assert_eq!(a.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = GaussianRational::from_integer(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.re(), BigRational::from_integer(BigInt::from(i64::MAX) * BigInt::from(i64::MAX)));
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        let min = GaussianRational::from_integer(i64::MIN);
        assert_eq!((-&min).re(), -BigRational::from_integer(BigInt::from(i64::MIN)));
        assert_eq!(-(-min.clone()), min);
    }

    #[test]
    fn random_respects_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = GaussianRational::random(&mut rng, 3);
            for part in [x.re(), x.im()] {
                assert!(part.numer().abs() <= BigInt::from(3));
                assert!(part.denom() <= &BigInt::from(3));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::from_fraction(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussianRational::from_ratios((1, 1), (-2, 3)).to_string(), "(1-2/3i)");
        assert_eq!(GaussianRational::i().to_string(), "1i");
    }

    fn big_of(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    proptest! {
        // The inline fast path must agree with BigRational arithmetic,
        // including near the i64 boundary.
        #[test]
        fn matches_bigrational(
            a in any::<i64>(), b in 1i64..=i64::MAX, c in any::<i64>(), d in 1i64..=i64::MAX,
        ) {
            let x = GaussianRational::new(big_of(a, b), BigRational::zero());
            let y = GaussianRational::new(big_of(c, d), BigRational::zero());
            prop_assert_eq!((&x + &y).re(), big_of(a, b) + big_of(c, d));
            prop_assert_eq!((&x - &y).re(), big_of(a, b) - big_of(c, d));
            prop_assert_eq!((&x * &y).re(), big_of(a, b) * big_of(c, d));
            if c != 0 {
                prop_assert_eq!((&x * &y.inv().unwrap()).re(), big_of(a, b) / big_of(c, d));
            }
            let round = GaussianRational::new(x.re(), x.im());
            prop_assert_eq!(round, x);
        }
    }
}
