//! Superanalytic transformations
//!
//! ```text
//! z̃ = f(z) + θ·χ(z),    θ̃ = ψ(z) + θ·g(z)
//! ```
//!
//! with `f, g` even and `ψ, χ` odd. Nothing here assumes invertibility:
//! the transformations form a semigroup under composition and the
//! noninvertible ones are first-class citizens.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::poly::{ComponentFunction, Substitution};
use crate::rational::RationalComponent;
use crate::superfield::Superfield;
use crate::supermatrix::{MatrixShape, TangentMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SATransform {
    f: ComponentFunction,
    chi: ComponentFunction,
    psi: ComponentFunction,
    g: ComponentFunction,
}

/// Which reduction conditions hold identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ReductionKind {
    /// Neither condition.
    General,
    /// Δ ≡ 0: superconformal.
    Scf,
    /// Q ≡ 0: twisting the parity of the tangent space.
    Tpt,
    /// Both Δ ≡ 0 and Q ≡ 0.
    Deg,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::General => "GENERAL",
            ReductionKind::Scf => "SCF",
            ReductionKind::Tpt => "TPT",
            ReductionKind::Deg => "DEG",
        }
    }

    pub fn is_superconformal(self) -> bool {
        matches!(self, ReductionKind::Scf | ReductionKind::Deg)
    }

    pub fn is_twist_parity(self) -> bool {
        matches!(self, ReductionKind::Tpt | ReductionKind::Deg)
    }
}

/// Three-way classification by existence and invertibility of the
/// Berezinian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BerClass {
    Invertible,
    Noninvertible,
    Nonexistent,
}

/// The predicate on `f` used to separate invertible from noninvertible
/// Berezinians once `ε(g) ≢ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassifyMode {
    /// `ε(f) ≢ 0`.
    Value,
    /// `ε(f′) ≢ 0`, i.e. the even sector is invertible as a function.
    Derivative,
}

/// The projections of the tangent matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Projection {
    /// Lower-left entry dropped.
    S,
    /// Upper-left entry dropped.
    T,
    /// Left column dropped.
    D,
    /// `((Dθ̃)², ∂θ̃; 0, Dθ̃)`.
    Scf,
    /// `(0, ∂θ̃; Δ₀, Dθ̃)`.
    Tpt,
}

/// `Q = ∂z̃ − ∂θ̃·θ̃`, `Δ = Dz̃ − Dθ̃·θ̃` and `Δ₀ = ∂_θz̃ − ∂_θθ̃·θ̃`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionConditions {
    pub q: Superfield,
    pub delta: Superfield,
    pub delta0: Superfield,
}

/// The three closed forms of the Berezinian of the reduced twist-parity
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct TptBerezinian {
    /// `Δ₀·∂θ̃ / (Dθ̃)²`.
    pub ratio: Superfield,
    /// `∂Δ₀·Δ₀ / (2(Dθ̃)³)`.
    pub cubic: Superfield,
    /// `D(Dz̃ / Dθ̃)`.
    pub superderivative: Superfield,
}

impl TptBerezinian {
    pub fn all_equal(&self) -> bool {
        self.ratio == self.cubic && self.cubic == self.superderivative
    }
}

fn expect_parity(name: &str, p: ComponentFunction, parity: Parity, n: usize) -> Result<ComponentFunction> {
    if p.generator_count() != n {
        return Err(Error::AlgebraMismatch { left: n, right: p.generator_count() });
    }
    let p = p.with_parity_if_zero(parity);
    if p.parity() != parity {
        return Err(Error::Parity(format!("{name} must be {parity}")));
    }
    Ok(p)
}

impl SATransform {
    pub fn new(
        f: ComponentFunction,
        chi: ComponentFunction,
        psi: ComponentFunction,
        g: ComponentFunction,
    ) -> Result<Self> {
        let n = f.generator_count();
        Ok(Self {
            f: expect_parity("f", f, Parity::Even, n)?,
            chi: expect_parity("chi", chi, Parity::Odd, n)?,
            psi: expect_parity("psi", psi, Parity::Odd, n)?,
            g: expect_parity("g", g, Parity::Even, n)?,
        })
    }

    pub fn identity(generators: usize) -> Self {
        Self {
            f: ComponentFunction::z(generators),
            chi: ComponentFunction::zero(Parity::Odd, generators),
            psi: ComponentFunction::zero(Parity::Odd, generators),
            g: ComponentFunction::one(generators),
        }
    }

    /// `z̃ = z + θ·ε`, `θ̃ = ε + θ` for an odd constant `ε`.
    pub fn susy_translation(epsilon: GrassmannNumber) -> Result<Self> {
        let n = epsilon.generator_count();
        let e = ComponentFunction::constant(epsilon)?.with_parity_if_zero(Parity::Odd);
        Self::new(ComponentFunction::z(n), e.clone(), e, ComponentFunction::one(n))
    }

    pub fn f(&self) -> &ComponentFunction {
        &self.f
    }

    pub fn chi(&self) -> &ComponentFunction {
        &self.chi
    }

    pub fn psi(&self) -> &ComponentFunction {
        &self.psi
    }

    pub fn g(&self) -> &ComponentFunction {
        &self.g
    }

    pub fn generator_count(&self) -> usize {
        self.f.generator_count()
    }

    /// `z̃` as a superfield.
    pub fn z_tilde(&self) -> Superfield {
        Superfield::from_polys(self.f.clone(), self.chi.clone()).expect("parities checked on construction")
    }

    /// `θ̃` as a superfield.
    pub fn theta_tilde(&self) -> Superfield {
        Superfield::from_polys(self.psi.clone(), self.g.clone()).expect("parities checked on construction")
    }

    /// `Dθ̃ = g + θψ′`.
    pub fn d_theta(&self) -> Superfield {
        self.theta_tilde().d()
    }

    /// Image of the point `(z, θ)`.
    pub fn apply(&self, z: &GrassmannNumber, theta: &GrassmannNumber) -> Result<(GrassmannNumber, GrassmannNumber)> {
        if !z.is_homogeneous(Parity::Even) {
            return Err(Error::Parity("z must be even".into()));
        }
        if !theta.is_homogeneous(Parity::Odd) {
            return Err(Error::Parity("theta must be odd".into()));
        }
        let zt = self.f.eval(z)?.checked_add(&theta.checked_mul(&self.chi.eval(z)?)?)?;
        let tt = self.psi.eval(z)?.checked_add(&theta.checked_mul(&self.g.eval(z)?)?)?;
        Ok((zt, tt))
    }

    /// `self ∘ inner`: `inner` acts first.
    pub fn compose(&self, inner: &SATransform) -> Result<SATransform> {
        if self.generator_count() != inner.generator_count() {
            return Err(Error::AlgebraMismatch { left: self.generator_count(), right: inner.generator_count() });
        }
        let (f1, chi1, psi1, g1) = (&inner.f, &inner.chi, &inner.psi, &inner.g);
        let mut sub = Substitution::new(f1)?;
        let mut at = |p: &ComponentFunction| p.compose_in(&mut sub);
        let psi_chi = psi1 * chi1;

        let f = &at(&self.f)? + &(psi1 * &at(&self.chi)?);
        let chi = &(&(chi1 * &at(&self.f.derivative())?) + &(g1 * &at(&self.chi)?))
            - &(&psi_chi * &at(&self.chi.derivative())?);
        let psi = &at(&self.psi)? + &(psi1 * &at(&self.g)?);
        let g = &(&(chi1 * &at(&self.psi.derivative())?) + &(g1 * &at(&self.g)?))
            - &(&psi_chi * &at(&self.g.derivative())?);
        SATransform::new(f, chi, psi, g)
    }

    /// `F ∘ self` for a superfield `F(z̃, θ̃)` on the target.
    ///
    /// With `F = a + θb`: `F∘T = a∘f + ψ·(b∘f) + θ·(χ·(a′∘f) + g·(b∘f) − ψχ·(b′∘f))`.
    pub fn pullback(&self, field: &Superfield) -> Result<Superfield> {
        self.pullback_in(field, &mut Substitution::new(&self.f)?)
    }

    fn pullback_in(&self, field: &Superfield, sub: &mut Substitution<'_>) -> Result<Superfield> {
        let lift = |p: &ComponentFunction| RationalComponent::from_poly(p.clone());
        let (chi, psi, g) = (lift(&self.chi), lift(&self.psi), lift(&self.g));
        let a_f = field.a().compose_in(sub)?;
        let b_f = field.b().compose_in(sub)?;
        let da_f = field.a().derivative().compose_in(sub)?;
        let db_f = field.b().derivative().compose_in(sub)?;

        let theta_free = a_f.checked_add(&psi.checked_mul(&b_f)?)?;
        let theta_coeff = chi
            .checked_mul(&da_f)?
            .checked_add(&g.checked_mul(&b_f)?)?
            .checked_add(&-&psi.checked_mul(&chi)?.checked_mul(&db_f)?)?;
        Superfield::new(theta_free, theta_coeff)
    }

    pub fn pullback_matrix(&self, m: &TangentMatrix) -> Result<TangentMatrix> {
        let mut sub = Substitution::new(&self.f)?;
        m.map_entries(|e| self.pullback_in(e, &mut sub))
    }

    /// `P_A = (∂z̃ − ∂θ̃·θ̃, ∂θ̃; Dz̃ − Dθ̃·θ̃, Dθ̃)`.
    pub fn tangent_matrix(&self) -> TangentMatrix {
        let zt = self.z_tilde();
        let tt = self.theta_tilde();
        let dt = tt.partial();
        let big_dt = tt.d();
        TangentMatrix::new(
            &zt.partial() - &(&dt * &tt),
            dt,
            &zt.d() - &(&big_dt * &tt),
            big_dt,
        )
    }

    pub fn conditions(&self) -> ReductionConditions {
        let zt = self.z_tilde();
        let tt = self.theta_tilde();
        ReductionConditions {
            q: &zt.partial() - &(&tt.partial() * &tt),
            delta: &zt.d() - &(&tt.d() * &tt),
            delta0: &zt.partial_theta() - &(&tt.partial_theta() * &tt),
        }
    }

    /// `Δ ≡ 0`, read off the components `χ − gψ` and `f′ − g² − ψ′ψ`.
    pub fn is_superconformal(&self) -> bool {
        let (g, psi) = (&self.g, &self.psi);
        self.chi == g * psi && self.f.derivative() == &(g * g) + &(&psi.derivative() * psi)
    }

    /// `Q ≡ 0`, read off the components `f′ − ψ′ψ` and `χ′ + ψ′g − g′ψ`.
    pub fn is_twist_parity(&self) -> bool {
        let (g, psi) = (&self.g, &self.psi);
        let psi_d = psi.derivative();
        self.f.derivative() == &psi_d * psi && &self.chi.derivative() + &(&psi_d * g) == &g.derivative() * psi
    }

    pub fn reduction_kind(&self) -> ReductionKind {
        match (self.is_superconformal(), self.is_twist_parity()) {
            (true, true) => ReductionKind::Deg,
            (true, false) => ReductionKind::Scf,
            (false, true) => ReductionKind::Tpt,
            (false, false) => ReductionKind::General,
        }
    }

    /// `f′/g + χψ′/g² + θ(χ/g)′`, defined when `ε(g) ≢ 0`.
    pub fn berezinian(&self) -> Result<Superfield> {
        if self.g.has_zero_body() {
            return Err(Error::BerezinianDoesNotExist);
        }
        let lift = |p: &ComponentFunction| RationalComponent::from_poly(p.clone());
        let g = lift(&self.g);
        let chi = lift(&self.chi);
        let first = lift(&self.f.derivative()).checked_div(&g)?;
        let second = chi.checked_mul(&lift(&self.psi.derivative()))?.checked_div(&g.checked_mul(&g)?)?;
        let theta_coeff = chi.checked_div(&g)?.derivative();
        Superfield::new(first.checked_add(&second)?, theta_coeff)
    }

    pub fn classify(&self, mode: ClassifyMode) -> BerClass {
        if self.g.has_zero_body() {
            return BerClass::Nonexistent;
        }
        let invertible = match mode {
            ClassifyMode::Value => !self.f.has_zero_body(),
            ClassifyMode::Derivative => !self.f.derivative().has_zero_body(),
        };
        if invertible {
            BerClass::Invertible
        } else {
            BerClass::Noninvertible
        }
    }

    pub fn project(&self, which: Projection) -> TangentMatrix {
        let p = self.tangent_matrix();
        let n = self.generator_count();
        match which {
            Projection::S => p.project(MatrixShape::Superconformal),
            Projection::T => p.project(MatrixShape::TwistParity),
            Projection::D => p.project(MatrixShape::Degenerate),
            Projection::Scf => TangentMatrix::new(&p.d * &p.d, p.b, Superfield::zero(n), p.d),
            Projection::Tpt => TangentMatrix::new(Superfield::zero(n), p.b, self.conditions().delta0, p.d),
        }
    }

    /// The Jacobian of a superconformal transformation, `Dθ̃`. Defined even
    /// when `ε(Dθ̃) = 0`, where it serves as the Jacobian of a noninvertible
    /// map.
    pub fn berezinian_scf(&self) -> Result<Superfield> {
        if !self.is_superconformal() {
            return Err(Error::NotSuperconformal);
        }
        Ok(self.d_theta())
    }

    /// The three closed forms of the reduced twist-parity Berezinian.
    pub fn berezinian_tpt(&self) -> Result<TptBerezinian> {
        let c = self.conditions();
        if !c.q.is_zero() {
            return Err(Error::NotTwistParity);
        }
        if self.g.has_zero_body() {
            return Err(Error::BerezinianDoesNotExist);
        }
        let d_theta = self.d_theta();
        let dt = self.theta_tilde().partial();
        let d_theta_sq = d_theta.checked_mul(&d_theta)?;

        let ratio = c.delta0.checked_mul(&dt)?.checked_div(&d_theta_sq)?;
        let cubic = c
            .delta0
            .partial()
            .checked_mul(&c.delta0)?
            .checked_div(&d_theta_sq.checked_mul(&d_theta)?.scale_int(2))?;
        let superderivative = self.z_tilde().d().checked_div(&d_theta)?.d();
        Ok(TptBerezinian { ratio, cubic, superderivative })
    }

    /// True when the image does not depend on θ (χ ≡ 0 and g ≡ 0).
    pub fn is_theta_independent(&self) -> bool {
        self.chi.is_zero() && self.g.is_zero()
    }
}

impl fmt::Display for SATransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "z~ = {} + θ·[{}]", self.f, self.chi)?;
        write!(f, "θ~ = {} + θ·[{}]", self.psi, self.g)
    }
}

impl fmt::Debug for SATransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SATransform")
            .field("f", &self.f)
            .field("chi", &self.chi)
            .field("psi", &self.psi)
            .field("g", &self.g)
            .finish()
    }
}
