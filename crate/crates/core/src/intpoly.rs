//! Polynomials over Λ_L stored as Gaussian-integer numerators over a single
//! positive denominator.
//!
//! A polynomial is kept as `Σ_m θ^m · P_m(z) / den`, one scalar polynomial
//! `P_m` per Grassmann monomial `m`. The form is canonical: `den` is
//! positive and coprime to the content of the numerators, every `P_m` is
//! nonzero without trailing zeros, and monomials are sorted. Structural
//! equality is therefore value equality.
//!
//! Products of large polynomials use Kronecker substitution: each `P_m` is
//! packed into one integer with a slot per power of `z`, so a product of
//! scalar polynomials becomes a single big-integer product.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::grassmann::{merge_sign, GrassmannNumber};
use crate::scalar::GaussianRational;

/// A Gaussian integer `re + i·im`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct GInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    /// `acc ± a·b`.
    fn mul_add(acc: &mut GInt, a: &GInt, b: &GInt, negate: bool) {
        let (re, im) = if a.im.is_zero() {
            (&a.re * &b.re, &a.re * &b.im)
        } else if b.im.is_zero() {
            (&a.re * &b.re, &a.im * &b.re)
        } else {
            (&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
        };
        if negate {
            acc.re -= re;
            acc.im -= im;
        } else {
            acc.re += re;
            acc.im += im;
        }
    }

    fn mul(&self, other: &GInt) -> GInt {
        let mut out = GInt::default();
        GInt::mul_add(&mut out, self, other, false);
        out
    }

    fn scale(&self, k: &BigInt) -> GInt {
        GInt { re: &self.re * k, im: &self.im * k }
    }

    fn neg(&self) -> GInt {
        GInt { re: -&self.re, im: -&self.im }
    }

    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

/// Scalar polynomial, lowest degree first.
type Scalar = Vec<GInt>;

fn trim(p: &mut Scalar) {
    while p.last().is_some_and(GInt::is_zero) {
        p.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct IntPoly {
    den: BigInt,
    parts: Vec<(u32, Scalar)>,
}

/// Below this many coefficient products the schoolbook product is used.
const KRONECKER_THRESHOLD: usize = 96;

impl IntPoly {
    pub fn zero() -> Self {
        Self { den: BigInt::one(), parts: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of coefficients up to the highest nonzero one.
    pub fn len(&self) -> usize {
        self.parts.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.parts.len() == 1 && self.parts[0].0 == 0 && self.parts[0].1 == [GInt::one()]
    }

    /// Exact conversion from rational coefficients.
    pub fn from_numbers(coeffs: &[GrassmannNumber]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            for (_, x) in c.terms() {
                den = den.lcm(x.re().denom()).lcm(x.im().denom());
            }
        }
        let lift = |r: BigRational| r.numer() * (&den / r.denom());
        let mut parts: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, x) in c.terms() {
                let p = parts.entry(m).or_default();
                p.resize(k + 1, GInt::default());
                p[k] = GInt { re: lift(x.re()), im: lift(x.im()) };
            }
        }
        Self::normalized(den, parts.into_iter().collect())
    }

    fn ratio(&self, x: &BigInt) -> BigRational {
        BigRational::new(x.clone(), self.den.clone())
    }

    fn value(&self, x: &GInt) -> GaussianRational {
        GaussianRational::new(self.ratio(&x.re), self.ratio(&x.im))
    }

    pub fn number(&self, k: usize, generators: usize) -> GrassmannNumber {
        let terms = self
            .parts
            .iter()
            .filter_map(|(m, p)| p.get(k).filter(|x| !x.is_zero()).map(|x| (*m, self.value(x))));
        GrassmannNumber::from_terms(generators, terms).expect("masks fit the algebra")
    }

    pub fn numbers(&self, generators: usize) -> Vec<GrassmannNumber> {
        (0..self.len()).map(|k| self.number(k, generators)).collect()
    }

    /// Body of the coefficient of `z^k`.
    pub fn body(&self, k: usize) -> GaussianRational {
        match self.parts.first() {
            Some((0, p)) => p.get(k).map(|x| self.value(x)).unwrap_or_default(),
            _ => GaussianRational::default(),
        }
    }

    pub fn has_zero_body(&self) -> bool {
        self.parts.first().map_or(true, |(m, _)| *m != 0)
    }

    fn map_parts(&self, f: impl Fn(&Scalar) -> Scalar) -> Vec<(u32, Scalar)> {
        self.parts.iter().map(|(m, p)| (*m, f(p))).collect()
    }

    pub fn neg(&self) -> Self {
        Self { den: self.den.clone(), parts: self.map_parts(|p| p.iter().map(GInt::neg).collect()) }
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let (re, im) = (k.re(), k.im());
        let kden = re.denom().lcm(im.denom());
        let knum = GInt { re: re.numer() * (&kden / re.denom()), im: im.numer() * (&kden / im.denom()) };
        Self::normalized(&self.den * kden, self.map_parts(|p| p.iter().map(|x| x.mul(&knum)).collect()))
    }

    pub fn derivative(&self) -> Self {
        let parts = self.map_parts(|p| {
            p.iter().enumerate().skip(1).map(|(k, x)| x.scale(&BigInt::from(k))).collect()
        });
        Self::normalized(self.den.clone(), parts)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (den, fa, fb) = if self.den == other.den {
            (self.den.clone(), BigInt::one(), BigInt::one())
        } else {
            let g = self.den.gcd(&other.den);
            let fa = &other.den / &g;
            let fb = &self.den / &g;
            (&self.den * &fa, fa, fb)
        };
        let lift = |p: &Scalar, f: &BigInt| -> Scalar {
            if f.is_one() {
                p.clone()
            } else {
                p.iter().map(|x| x.scale(f)).collect()
            }
        };
        let mut parts = Vec::with_capacity(self.parts.len().max(other.parts.len()));
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ma = a.get(i).map_or(u32::MAX, |t| t.0);
            let mb = b.get(j).map_or(u32::MAX, |t| t.0);
            if i < a.len() && (j == b.len() || ma < mb) {
                parts.push((ma, lift(&a[i].1, &fa)));
                i += 1;
            } else if j < b.len() && (i == a.len() || mb < ma) {
                parts.push((mb, lift(&b[j].1, &fb)));
                j += 1;
            } else {
                let mut sum = lift(&a[i].1, &fa);
                let rhs = &b[j].1;
                if sum.len() < rhs.len() {
                    sum.resize(rhs.len(), GInt::default());
                }
                for (x, y) in sum.iter_mut().zip(rhs) {
                    if fb.is_one() {
                        x.re += &y.re;
                        x.im += &y.im;
                    } else {
                        x.re += &y.re * &fb;
                        x.im += &y.im * &fb;
                    }
                }
                parts.push((ma, sum));
                i += 1;
                j += 1;
            }
        }
        Self::normalized(den, parts)
    }

    /// `self ∘ inner`. `inner` must be even so that it commutes with the
    /// coefficients.
    pub fn compose(&self, inner: &Self) -> Self {
        self.compose_powers(inner, &mut Vec::new())
    }

    /// `Σ_k c_k · inner^k`, where `powers` caches `inner^0, inner^1, …` and is
    /// extended as needed. The cache must only ever hold powers of `inner`.
    pub fn compose_powers(&self, inner: &Self, powers: &mut Vec<Self>) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.len();
        if powers.is_empty() {
            powers.push(Self { den: BigInt::one(), parts: vec![(0, vec![GInt::one()])] });
        }
        while powers.len() < n {
            let next = powers[powers.len() - 1].mul(inner);
            powers.push(next);
        }
        let den = powers[..n].iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.den));
        // c_k over the common denominator, paired with nonzero inner^k
        let terms: Vec<(Vec<(u32, GInt)>, &Self)> = powers[..n]
            .iter()
            .enumerate()
            .filter(|(_, power)| !power.is_zero())
            .map(|(k, power)| {
                let factor = &den / &power.den;
                let coeffs = self
                    .parts
                    .iter()
                    .filter_map(|(m, p)| p.get(k).filter(|c| !c.is_zero()).map(|c| (*m, c.scale(&factor))))
                    .collect();
                (coeffs, power)
            })
            .collect();
        let bits_c = terms.iter().flat_map(|(c, _)| c).map(|(_, c)| c.bits()).max().unwrap_or(0);
        let bits_p = terms.iter().map(|(_, p)| max_bits(&p.parts)).max().unwrap_or(0);
        let len = terms.iter().map(|(_, p)| longest(&p.parts)).max().unwrap_or(0);
        let count: usize = terms.iter().map(|(c, p)| c.len() * p.parts.len()).sum();
        // every slot sums at most `count` products, each below 2^(bits_c + bits_p + 1)
        let needed = bits_c + bits_p + u64::from(usize::BITS - count.leading_zeros()) + 2;
        let slot = needed.div_ceil(32) as usize;

        let mut acc: BTreeMap<u32, [BigInt; 2]> = BTreeMap::new();
        for (coeffs, power) in &terms {
            for (mp, q) in &power.parts {
                let re = pack(q.iter().map(|x| &x.re), len, slot);
                let im = pack(q.iter().map(|x| &x.im), len, slot);
                for (mc, c) in coeffs {
                    if mc & mp != 0 {
                        continue;
                    }
                    let negate = merge_sign(*mc, *mp) < 0;
                    let [sum_re, sum_im] = acc.entry(mc | mp).or_default();
                    let add = |sum: &mut BigInt, x: &BigInt, y: &BigInt| {
                        if x.is_zero() {
                            return;
                        }
                        let t = x * y;
                        if negate {
                            *sum -= t;
                        } else {
                            *sum += t;
                        }
                    };
                    add(sum_re, &c.re, &re);
                    add(sum_re, &-&c.im, &im);
                    add(sum_im, &c.re, &im);
                    add(sum_im, &c.im, &re);
                }
            }
        }
        let out = acc.into_iter().map(|(m, [re, im])| {
            let p = unpack(&re, len, slot).into_iter().zip(unpack(&im, len, slot)).map(|(re, im)| GInt { re, im });
            (m, p.collect())
        });
        Self::normalized(&self.den * den, out.into_iter().collect())
    }

    /// `c0 + Σ_k c_k z^(k+1)/(k+1)`.
    pub fn antiderivative(&self, c0: &Self) -> Self {
        let n = self.len();
        let l = (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
        let parts = self.map_parts(|p| {
            std::iter::once(GInt::default())
                .chain(p.iter().enumerate().map(|(k, x)| x.scale(&(&l / BigInt::from(k + 1)))))
                .collect()
        });
        Self::normalized(&self.den * l, parts).add(c0)
    }

    /// Product with the coefficients of `self` on the left.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let work: usize = self.parts.iter().map(|(_, p)| p.len()).sum::<usize>()
            * other.parts.iter().map(|(_, p)| p.len()).sum::<usize>();
        let parts = if product_bits(&self.parts, &other.parts) < 127 {
            machine(&self.parts, &other.parts)
        } else if work < KRONECKER_THRESHOLD {
            schoolbook(&self.parts, &other.parts)
        } else {
            kronecker(&self.parts, &other.parts)
        };
        Self::normalized(&self.den * &other.den, parts)
    }

    fn normalized(mut den: BigInt, mut parts: Vec<(u32, Scalar)>) -> Self {
        for (_, p) in parts.iter_mut() {
            trim(p);
        }
        parts.retain(|(_, p)| !p.is_empty());
        if parts.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            for (_, p) in parts.iter_mut() {
                for x in p.iter_mut() {
                    *x = x.neg();
                }
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            'scan: for (_, p) in &parts {
                for x in p {
                    g = gcd_into(g, &x.re);
                    g = gcd_into(g, &x.im);
                    if g.is_one() {
                        break 'scan;
                    }
                }
            }
            if !g.is_one() {
                for (_, p) in parts.iter_mut() {
                    for x in p.iter_mut() {
                        x.re /= &g;
                        x.im /= &g;
                    }
                }
                den /= g;
            }
        }
        Self { den, parts }
    }
}

fn schoolbook(a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Vec<(u32, Scalar)> {
    let mut out: BTreeMap<u32, Scalar> = BTreeMap::new();
    for (ma, p) in a {
        for (mb, q) in b {
            if ma & mb != 0 {
                continue;
            }
            let negate = merge_sign(*ma, *mb) < 0;
            let acc = out.entry(ma | mb).or_default();
            if acc.len() < p.len() + q.len() - 1 {
                acc.resize(p.len() + q.len() - 1, GInt::default());
            }
            for (i, x) in p.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in q.iter().enumerate() {
                    if !y.is_zero() {
                        GInt::mul_add(&mut acc[i + j], x, y, negate);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn max_bits(x: &[(u32, Scalar)]) -> u64 {
    x.iter().flat_map(|(_, p)| p).map(GInt::bits).max().unwrap_or(0)
}

fn longest(x: &[(u32, Scalar)]) -> usize {
    x.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
}

/// Bound on the bit length of any real or imaginary part of a coefficient
/// of `a·b`, sign included.
fn product_bits(a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> u64 {
    let terms = (longest(a).min(longest(b)) * a.len() * b.len()) as u64;
    max_bits(a) + max_bits(b) + u64::from(64 - terms.leading_zeros()) + 2
}

/// Schoolbook product in `i128`. Callers check [`product_bits`] first so no
/// partial sum can overflow.
fn machine(a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Vec<(u32, Scalar)> {
    let small = |x: &[(u32, Scalar)]| -> Vec<(u32, Vec<(i128, i128)>)> {
        x.iter()
            .map(|(m, p)| {
                let p = p.iter().map(|c| (c.re.to_i128().expect("bounded"), c.im.to_i128().expect("bounded")));
                (*m, p.collect())
            })
            .collect()
    };
    let (a, b) = (small(a), small(b));
    let mut out: BTreeMap<u32, Vec<(i128, i128)>> = BTreeMap::new();
    for (ma, p) in &a {
        for (mb, q) in &b {
            if ma & mb != 0 {
                continue;
            }
            let negate = merge_sign(*ma, *mb) < 0;
            let acc = out.entry(ma | mb).or_default();
            if acc.len() < p.len() + q.len() - 1 {
                acc.resize(p.len() + q.len() - 1, (0, 0));
            }
            for (i, &(xr, xi)) in p.iter().enumerate() {
                for (j, &(yr, yi)) in q.iter().enumerate() {
                    let (re, im) = (xr * yr - xi * yi, xr * yi + xi * yr);
                    let slot = &mut acc[i + j];
                    if negate {
                        slot.0 -= re;
                        slot.1 -= im;
                    } else {
                        slot.0 += re;
                        slot.1 += im;
                    }
                }
            }
        }
    }
    out.into_iter()
        .map(|(m, p)| (m, p.into_iter().map(|(re, im)| GInt { re: re.into(), im: im.into() }).collect()))
        .collect()
}

/// Packed real part, imaginary part and their sum of one scalar polynomial.
struct Packed {
    re: BigInt,
    im: BigInt,
    sum: BigInt,
}

fn pack_scalar(p: &Scalar, slot: usize) -> Packed {
    let re = pack(p.iter().map(|x| &x.re), p.len(), slot);
    let im = pack(p.iter().map(|x| &x.im), p.len(), slot);
    let sum = &re + &im;
    Packed { re, im, sum }
}

/// Kronecker product. With `slot` 32-bit digits per power of `z`, every
/// coefficient of every accumulated product stays below `2^(32·slot − 1)`
/// in absolute value, so the packed sums decode without overlap. Complex
/// products use three real ones: `re = ac − bd`, `im = (a+b)(c+d) − ac − bd`.
fn kronecker(a: &[(u32, Scalar)], b: &[(u32, Scalar)]) -> Vec<(u32, Scalar)> {
    let (la, lb) = (longest(a), longest(b));
    let terms = (la.min(lb) * a.len() * b.len()) as u64;
    // each of ac, bd, (a+b)(c+d) is below 4·2^(bits_a + bits_b) per term,
    // and a slot holds a signed combination of three such sums
    let needed = max_bits(a) + max_bits(b) + u64::from(64 - terms.leading_zeros()) + 6;
    let slot = needed.div_ceil(32) as usize;

    let pa: Vec<Packed> = a.iter().map(|(_, p)| pack_scalar(p, slot)).collect();
    let pb: Vec<Packed> = b.iter().map(|(_, p)| pack_scalar(p, slot)).collect();
    let mut acc: BTreeMap<u32, [BigInt; 3]> = BTreeMap::new();
    for (i, (ma, _)) in a.iter().enumerate() {
        for (j, (mb, _)) in b.iter().enumerate() {
            if ma & mb != 0 {
                continue;
            }
            let (x, y) = (&pa[i], &pb[j]);
            let products = [&x.re * &y.re, &x.im * &y.im, &x.sum * &y.sum];
            let sums = acc.entry(ma | mb).or_default();
            let negate = merge_sign(*ma, *mb) < 0;
            for (s, p) in sums.iter_mut().zip(products) {
                if negate {
                    *s -= p;
                } else {
                    *s += p;
                }
            }
        }
    }
    let len = la + lb - 1;
    acc.into_iter()
        .map(|(m, [ac, bd, sum])| {
            let re = &ac - &bd;
            let im = sum - ac - bd;
            let p = unpack(&re, len, slot)
                .into_iter()
                .zip(unpack(&im, len, slot))
                .map(|(re, im)| GInt { re, im })
                .collect();
            (m, p)
        })
        .collect()
}

/// `Σ_k c_k · 2^(32·slot·k)`. Each `|c_k|` must fit in `slot` digits.
fn pack<'a>(coeffs: impl Iterator<Item = &'a BigInt>, len: usize, slot: usize) -> BigInt {
    let mut pos = vec![0u32; len * slot];
    let mut neg = vec![0u32; len * slot];
    for (k, c) in coeffs.enumerate() {
        let target = match c.sign() {
            Sign::Plus => &mut pos,
            Sign::Minus => &mut neg,
            Sign::NoSign => continue,
        };
        for (i, d) in c.magnitude().iter_u32_digits().enumerate() {
            target[k * slot + i] = d;
        }
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos)) - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

/// Inverse of [`pack`] for `len` slots whose values lie strictly inside
/// `±2^(32·slot − 1)`.
fn unpack(n: &BigInt, len: usize, slot: usize) -> Vec<BigInt> {
    let total = len * slot;
    let mut digits = n.magnitude().to_u32_digits();
    debug_assert!(digits.len() <= total);
    digits.resize(total, 0);
    if n.is_negative() {
        // two's complement modulo 2^(32·total)
        let mut carry = 1u64;
        for d in digits.iter_mut() {
            let v = u64::from(!*d) + carry;
            *d = v as u32;
            carry = v >> 32;
        }
    }
    let mut out = Vec::with_capacity(len);
    let mut carry = 0u64;
    for chunk in digits.chunks(slot) {
        let mut t = chunk.to_vec();
        for d in t.iter_mut() {
            if carry == 0 {
                break;
            }
            let v = u64::from(*d) + carry;
            *d = v as u32;
            carry = v >> 32;
        }
        if carry == 1 {
            // slot plus borrow wrapped to exactly 2^(32·slot): the value is
            // zero and the borrow moves on
            out.push(BigInt::zero());
            continue;
        }
        if t[slot - 1] >> 31 == 1 {
            let mut c = 1u64;
            for d in t.iter_mut() {
                let v = u64::from(!*d) + c;
                *d = v as u32;
                c = v >> 32;
            }
            out.push(BigInt::from_biguint(Sign::Minus, BigUint::new(t)));
            carry = 1;
        } else {
            out.push(BigInt::from_biguint(Sign::Plus, BigUint::new(t)));
        }
    }
    out
}

/// `gcd(g, x)` for a positive `g` that is usually much shorter than `x`.
/// Reducing `x` first keeps the binary gcd on operands the size of `g`.
fn gcd_into(g: BigInt, x: &BigInt) -> BigInt {
    if g.is_one() || x.is_zero() {
        return g;
    }
    let r = x % &g;
    if r.is_zero() {
        g
    } else {
        g.gcd(&r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pack_round_trip_with_signs() {
        let c: Vec<BigInt> = [3i64, -1, 0, -7, 2, i64::MIN].iter().map(|d| BigInt::from(*d) << 70).collect();
        let slot = 5;
        let packed = pack(c.iter(), c.len(), slot);
        assert_eq!(unpack(&packed, c.len(), slot), c);
        let neg: Vec<BigInt> = c.iter().map(|x| -x).collect();
        assert_eq!(unpack(&-packed, c.len(), slot), neg);
    }

    fn arb_part() -> impl Strategy<Value = (u32, Scalar)> {
        let coeff = (any::<i64>(), any::<i64>(), 0usize..3).prop_map(|(re, im, s)| GInt {
            re: BigInt::from(re) << (40 * s),
            im: BigInt::from(im) << (40 * s),
        });
        (0u32..16, prop::collection::vec(coeff, 1..12))
    }

    fn arb_parts() -> impl Strategy<Value = Vec<(u32, Scalar)>> {
        prop::collection::vec(arb_part(), 0..6).prop_map(|v| {
            let map: BTreeMap<u32, Scalar> = v.into_iter().collect();
            map.into_iter().collect()
        })
    }

    fn canonical(mut parts: Vec<(u32, Scalar)>) -> Vec<(u32, Scalar)> {
        for (_, p) in parts.iter_mut() {
            trim(p);
        }
        parts.retain(|(_, p)| !p.is_empty());
        parts
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(a in arb_parts(), b in arb_parts()) {
            prop_assert_eq!(canonical(kronecker(&a, &b)), canonical(schoolbook(&a, &b)));
        }

        #[test]
        fn machine_matches_schoolbook(a in arb_parts(), b in arb_parts()) {
            let shrink = |x: Vec<(u32, Scalar)>| -> Vec<(u32, Scalar)> {
                x.into_iter()
                    .map(|(m, p)| (m, p.into_iter().map(|c| GInt { re: c.re >> 100u32, im: c.im >> 100u32 }).collect()))
                    .collect()
            };
            let (a, b) = (shrink(a), shrink(b));
            prop_assume!(product_bits(&a, &b) < 127);
            prop_assert_eq!(canonical(machine(&a, &b)), canonical(schoolbook(&a, &b)));
        }
    }
}
