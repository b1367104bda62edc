//! Random instances for the checks.
//!
//! Every draw is a pure function of the configuration and a stream index,
//! so a failing trial can be replayed on its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::poly::ComponentFunction;
use crate::rational::RationalComponent;
use crate::reduction::{ReducedPair, Spin};
use crate::superfield::Superfield;
use crate::supermatrix::MatrixShape;
use crate::transform::{ReductionKind, SATransform};

use super::CheckConfig;

/// Redraws allowed before a constrained draw gives up.
pub const MAX_REDRAWS: u64 = 1000;

/// Constraint on the body of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GBody {
    #[default]
    Any,
    /// `ε(g) ≢ 0`, enforced by rejection.
    Nonzero,
    /// `ε(g) ≡ 0`, enforced by drawing `g` from the soul only.
    Zero,
}

/// Random-number source for one trial, tallying rejected draws.
pub struct Sampler<'a> {
    cfg: &'a CheckConfig,
    rng: ChaCha8Rng,
    redraws: u64,
}

impl<'a> Sampler<'a> {
    pub fn new(cfg: &'a CheckConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        Self { cfg, rng, redraws: 0 }
    }

    pub fn config(&self) -> &CheckConfig {
        self.cfg
    }

    pub fn redraws(&self) -> u64 {
        self.redraws
    }

    pub fn count_redraw(&mut self) {
        self.redraws += 1;
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn bound(&self) -> u32 {
        self.cfg.coefficient_bound
    }

    fn generators(&self) -> usize {
        self.cfg.generators
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random()
    }

    pub fn parity(&mut self) -> Parity {
        if self.coin() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn small_int(&mut self) -> i64 {
        let b = i64::from(self.bound().max(1));
        self.rng.random_range(-b..=b)
    }

    pub fn number(&mut self, parity: Parity) -> GrassmannNumber {
        GrassmannNumber::random(parity, self.generators(), self.bound(), &mut self.rng)
    }

    /// Even element with nonzero body.
    pub fn invertible_number(&mut self) -> Result<GrassmannNumber> {
        self.redraw_until(|s| s.number(Parity::Even), |x| !x.body().is_zero())
    }

    pub fn poly(&mut self, parity: Parity) -> ComponentFunction {
        ComponentFunction::random(parity, self.generators(), self.cfg.max_degree, self.bound(), &mut self.rng)
    }

    /// Even polynomial with `ε ≢ 0`.
    pub fn body_poly(&mut self) -> Result<ComponentFunction> {
        self.redraw_until(|s| s.poly(Parity::Even), |p| !p.has_zero_body())
    }

    /// Even polynomial whose coefficients are all pure soul.
    pub fn soul_poly(&mut self) -> ComponentFunction {
        let p = self.poly(Parity::Even);
        let coeffs = p.coeffs().iter().map(GrassmannNumber::soul).collect();
        ComponentFunction::new(Parity::Even, self.generators(), coeffs).expect("souls of even elements are even")
    }

    pub fn g_poly(&mut self, body: GBody) -> Result<ComponentFunction> {
        match body {
            GBody::Any => Ok(self.poly(Parity::Even)),
            GBody::Nonzero => self.body_poly(),
            GBody::Zero => Ok(self.soul_poly()),
        }
    }

    pub fn rational(&mut self, parity: Parity) -> Result<RationalComponent> {
        let num = self.poly(parity);
        let den = self.body_poly()?;
        RationalComponent::new(num, den)
    }

    /// Homogeneous polynomial superfield `a + θb`.
    pub fn superfield(&mut self, parity: Parity) -> Superfield {
        let a = self.poly(parity);
        let b = self.poly(parity.flip());
        Superfield::from_polys(a, b).expect("parities are complementary")
    }

    /// Homogeneous superfield with rational components.
    pub fn rational_superfield(&mut self, parity: Parity) -> Result<Superfield> {
        let a = self.rational(parity)?;
        let b = self.rational(parity.flip())?;
        Superfield::new(a, b)
    }

    /// Reduced pair of the given spin. `Deg` pairs use `g = 0` and spin `−1`
    /// with `χ(0) = 0`, which makes the built map θ-independent.
    pub fn reduced_pair(&mut self, kind: ReductionKind, body: GBody) -> Result<ReducedPair> {
        let n = self.generators();
        let (spin, g) = match kind {
            ReductionKind::Scf => (Spin::Plus, self.g_poly(body)?),
            ReductionKind::Tpt => (Spin::Minus, self.g_poly(body)?),
            ReductionKind::Deg => (Spin::Minus, ComponentFunction::zero(Parity::Even, n)),
            ReductionKind::General => return Err(Error::Parity("general maps have no reduced pair".into())),
        };
        let psi = self.poly(Parity::Odd);
        let f0 = self.number(Parity::Even);
        let chi0 = match kind {
            ReductionKind::Tpt => self.number(Parity::Odd),
            _ => GrassmannNumber::zero(n),
        };
        ReducedPair::with_constants(g, psi, spin, f0, chi0)
    }

    pub fn transform(&mut self, kind: ReductionKind, body: GBody) -> Result<SATransform> {
        match kind {
            ReductionKind::General => {
                let f = self.poly(Parity::Even);
                let chi = self.poly(Parity::Odd);
                let psi = self.poly(Parity::Odd);
                let g = self.g_poly(body)?;
                SATransform::new(f, chi, psi, g)
            }
            _ => self.reduced_pair(kind, body)?.build(),
        }
    }

    /// A transformation whose tangent matrix lies in the given shape set.
    pub fn shape_transform(&mut self, shape: MatrixShape) -> Result<SATransform> {
        let kind = match shape {
            MatrixShape::Any => ReductionKind::General,
            MatrixShape::Superconformal => ReductionKind::Scf,
            MatrixShape::TwistParity => ReductionKind::Tpt,
            MatrixShape::Degenerate => ReductionKind::Deg,
        };
        self.transform(kind, GBody::Any)
    }

    fn redraw_until<T>(&mut self, mut draw: impl FnMut(&mut Self) -> T, accept: impl Fn(&T) -> bool) -> Result<T> {
        for _ in 0..=MAX_REDRAWS {
            let x = draw(self);
            if accept(&x) {
                return Ok(x);
            }
            self.redraws += 1;
        }
        Err(Error::NotInvertible("no draw with nonzero body within the redraw limit"))
    }
}

/// A random transformation of the requested kind, deterministic in
/// `(cfg.seed, stream)`.
pub fn random_transform(kind: ReductionKind, body: GBody, cfg: &CheckConfig, stream: u64) -> Result<SATransform> {
    Sampler::new(cfg, stream).transform(kind, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CheckConfig {
        CheckConfig { max_degree: 2, ..CheckConfig::default() }
    }

    #[test]
    fn reduced_kinds_are_exact() {
        let cfg = cfg();
        for stream in 0..5 {
            let scf = random_transform(ReductionKind::Scf, GBody::Any, &cfg, stream).unwrap();
            assert!(scf.reduction_kind().is_superconformal());
            let tpt = random_transform(ReductionKind::Tpt, GBody::Any, &cfg, stream).unwrap();
            assert!(tpt.reduction_kind().is_twist_parity());
            let deg = random_transform(ReductionKind::Deg, GBody::Any, &cfg, stream).unwrap();
            assert_eq!(deg.reduction_kind(), ReductionKind::Deg);
            assert!(deg.is_theta_independent());
            assert_eq!(deg.f().derivative(), &deg.psi().derivative() * deg.psi());
        }
    }

    #[test]
    fn deterministic_per_stream() {
        let cfg = cfg();
        let a = random_transform(ReductionKind::General, GBody::Nonzero, &cfg, 9).unwrap();
        let b = random_transform(ReductionKind::General, GBody::Nonzero, &cfg, 9).unwrap();
        let c = random_transform(ReductionKind::General, GBody::Nonzero, &cfg, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn body_constraints() {
        let cfg = cfg();
        for stream in 0..5 {
            let t = random_transform(ReductionKind::General, GBody::Nonzero, &cfg, stream).unwrap();
            assert!(!t.g().has_zero_body());
            let t = random_transform(ReductionKind::Tpt, GBody::Zero, &cfg, stream).unwrap();
            assert!(t.g().has_zero_body());
        }
    }
}
