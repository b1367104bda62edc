//! The registered identities, one function per check.
//!
//! A check draws its instances from the trial's [`Sampler`] and returns
//! `Ok(Err(witness))` on a violated identity. Errors from the algebra are
//! failures too, reported by the runner.

use serde_json::{json, Value};

use crate::cocycle;
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannNumber, Parity};
use crate::poly::ComponentFunction;
use crate::reduction::{ReducedPair, Spin};
use crate::superfield::Superfield;
use crate::supermatrix::MatrixShape;
use crate::transform::{BerClass, ClassifyMode, Projection, ReductionKind, SATransform};
use crate::wire;

use super::closure::{chain_product, Convention};
use super::random::{GBody, Sampler, MAX_REDRAWS};

/// `Ok(())` when the identity held, `Err(witness)` otherwise.
pub type Verdict = std::result::Result<(), Value>;

pub type CheckFn = fn(&mut Sampler) -> Result<Verdict>;

/// A named identity.
pub struct Check {
    pub name: &'static str,
    /// The statement being verified.
    pub anchor: &'static str,
    /// Checks sharing a family see the same instances trial by trial.
    pub family: &'static str,
    /// Whether instances contain odd functions, which need two generators.
    pub needs_odd: bool,
    pub run: CheckFn,
}

macro_rules! ensure {
    ($cond:expr, $what:expr, $inputs:expr) => {
        if !$cond {
            return Ok(Err(json!({ "violated": $what, "inputs": $inputs })));
        }
    };
}

fn tj(t: &SATransform) -> Value {
    wire::transform_to_json(t)
}

fn pj(p: &ReducedPair) -> Value {
    wire::reduced_pair_to_json(p)
}

fn gj(x: &GrassmannNumber) -> Value {
    wire::grassmann_to_json(x)
}

fn fj(f: &Superfield) -> Value {
    wire::superfield_to_json(f)
}

fn theta_times(n: usize, x: &Superfield) -> Result<Superfield> {
    Superfield::theta(n).checked_mul(x)
}

fn poly_field(a: ComponentFunction, b: ComponentFunction) -> Result<Superfield> {
    Superfield::from_polys(a, b)
}

pub static REGISTRY: &[Check] = &[
    Check {
        name: "algebra-soundness",
        anchor: "Λ_L: associativity, distributivity, graded commutativity, ε(xy) = ε(x)ε(y), x·x⁻¹ = 1",
        family: "algebra",
        needs_odd: false,
        run: algebra_soundness,
    },
    Check {
        name: "calculus-soundness",
        anchor: "D² = ∂; D(FG) = DF·G + (−1)^|F| F·DG; (n/d)′ = (n′d − nd′)/d²",
        family: "calculus",
        needs_odd: true,
        run: calculus_soundness,
    },
    Check {
        name: "ber-addition",
        anchor: "Ber P_A = Ber P_S + Ber P_T",
        family: "general-invertible-g",
        needs_odd: true,
        run: ber_addition,
    },
    Check {
        name: "ber-explicit-vs-matrix",
        anchor: "Ber P_A = f′/g + χψ′/g² + θ(χ/g)′",
        family: "general-invertible-g",
        needs_odd: true,
        run: ber_explicit_vs_matrix,
    },
    Check {
        name: "ber-classification",
        anchor: "Ber exists and invertible / exists and noninvertible / does not exist",
        family: "general",
        needs_odd: true,
        run: ber_classification,
    },
    Check {
        name: "q-minus-ddelta",
        anchor: "Q − DΔ = (Dθ̃)²",
        family: "general",
        needs_odd: true,
        run: q_minus_ddelta,
    },
    Check {
        name: "condition-components",
        anchor: "Δ = Δ₀ + θQ; Q = (f′ − ψ′ψ) + θ(χ′ + ψ′g − g′ψ); Δ = (χ − gψ) + θ(f′ − g² − ψ′ψ); Δ₀ = (χ − gψ) − θg²",
        family: "general",
        needs_odd: true,
        run: condition_components,
    },
    Check {
        name: "eq-q",
        anchor: "Q|_{Δ=0} = (Dθ̃)²",
        family: "scf",
        needs_odd: true,
        run: eq_q,
    },
    Check {
        name: "eq-dl",
        anchor: "Δ|_{Q=0} = Δ₀",
        family: "tpt",
        needs_odd: true,
        run: eq_dl,
    },
    Check {
        name: "d-delta0",
        anchor: "DΔ₀ = −(Dθ̃)² at Q = 0; DΔ₀ = −(Dθ̃)² + θ·∂_θQ in general",
        family: "delta0",
        needs_odd: true,
        run: d_delta0,
    },
    Check {
        name: "partial-delta0",
        anchor: "∂Δ₀ = −2 Dθ̃·∂θ̃ at Q = 0; ∂Δ₀ = −2 Dθ̃·∂θ̃ + ∂_θQ in general",
        family: "delta0",
        needs_odd: true,
        run: partial_delta0,
    },
    Check {
        name: "ber-scf",
        anchor: "Ber P_SCf = Dθ̃",
        family: "scf-invertible-g",
        needs_odd: true,
        run: ber_scf,
    },
    Check {
        name: "ber-tpt-three-forms",
        anchor: "Ber P_TPt = Δ₀·∂θ̃/(Dθ̃)² = ∂Δ₀·Δ₀/(2(Dθ̃)³) = D(Dz̃/Dθ̃)",
        family: "tpt-invertible-g",
        needs_odd: true,
        run: ber_tpt_three_forms,
    },
    Check {
        name: "ber-tpt-nilpotent",
        anchor: "ε(Ber P_TPt) = 0",
        family: "tpt-invertible-g",
        needs_odd: true,
        run: ber_tpt_nilpotent,
    },
    Check {
        name: "eq-bu",
        anchor: "Ber P_A = Ber P_SCf (SCf); Ber P_A = Ber P_TPt (TPt); Ber P_D = 0",
        family: "reduced-invertible-g",
        needs_odd: true,
        run: eq_bu,
    },
    Check {
        name: "chain-rule",
        anchor: "P(T̃∘T) = P(T)·(P(T̃)∘T)",
        family: "general-pair",
        needs_odd: true,
        run: chain_rule,
    },
    Check {
        name: "ber-multiplicative",
        anchor: "Ber P(T̃∘T) = Ber P(T)·Ber(P(T̃)∘T)",
        family: "general-pair-invertible-g",
        needs_odd: true,
        run: ber_multiplicative,
    },
    Check {
        name: "compose-substitution",
        anchor: "(T̃∘T)(z, θ) = T̃(T(z, θ)); (T₃∘T₂)∘T₁ = T₃∘(T₂∘T₁)",
        family: "general-triple",
        needs_odd: true,
        run: compose_substitution,
    },
    Check {
        name: "parity-twist",
        anchor: "D(F∘T) = Dθ̃·(D̃F)∘T (SCf); ∂(F∘T) = ∂θ̃·(D̃F)∘T (TPt)",
        family: "twist",
        needs_odd: true,
        run: parity_twist,
    },
    Check {
        name: "reduced-satisfy-condition",
        anchor: "f′ = ψ′ψ + ((1+n)/2)g², χ′ = g′ψ + n·gψ′ ⇒ Δ ≡ 0 (n = +1), Q ≡ 0 (n = −1)",
        family: "reduced",
        needs_odd: true,
        run: reduced_satisfy_condition,
    },
    Check {
        name: "tpt-noninvertible",
        anchor: "n = −1 ⇒ ε(f′) ≡ 0",
        family: "reduced",
        needs_odd: true,
        run: tpt_noninvertible,
    },
    Check {
        name: "deg-characterization",
        anchor: "Deg: Q ≡ 0 and Δ ≡ 0 ⇔ χ ≡ 0, g ≡ 0, f′ = ψ′ψ",
        family: "deg",
        needs_odd: true,
        run: deg_characterization,
    },
    Check {
        name: "star-vs-compose",
        anchor: "(h, φ)₊₁ * (g, ψ)ₙ: g̃ = g·(h∘f) + χψ·(h′∘f) + χ·(φ′∘f), ψ̃ = φ∘f + ψ·(h∘f)",
        family: "star",
        needs_odd: true,
        run: star_vs_compose,
    },
    Check {
        name: "spin-rule",
        anchor: "(+1)*(+1) = +1; (+1)*(−1) = −1; (−1)*n undefined",
        family: "star",
        needs_odd: true,
        run: spin_rule,
    },
    Check {
        name: "deg-star",
        anchor: "Deg * Deg: g̃ = 0, ψ̃ = φ∘f",
        family: "deg-pair",
        needs_odd: true,
        run: deg_star,
    },
    Check {
        name: "cocycle-standard",
        anchor: "Dθ̃̃ = Dθ̃·D̃θ̃̃ (SCf ∘ SCf)",
        family: "scf-pair",
        needs_odd: true,
        run: cocycle_standard,
    },
    Check {
        name: "cocycle-mixed",
        anchor: "∂θ̃̃ = ∂θ̃·D̃θ̃̃ (SCf ∘ TPt)",
        family: "mixed-pair",
        needs_odd: true,
        run: cocycle_mixed,
    },
    Check {
        name: "deg-both-cocycles",
        anchor: "Dθ̃̃ = Dθ̃·D̃θ̃̃ and ∂θ̃̃ = ∂θ̃·D̃θ̃̃ (Deg ∘ Deg)",
        family: "deg-pair",
        needs_odd: true,
        run: deg_both_cocycles,
    },
    Check {
        name: "shape-closures",
        anchor: "P_S·P_S ⊆ P_S; P_T·P_S ⊆ P_T; P_D·P_D ⊆ P_D",
        family: "shapes",
        needs_odd: true,
        run: shape_closures,
    },
    Check {
        name: "det-addition",
        anchor: "det P = det P_Diag + det P_Antidiag",
        family: "commuting-matrix",
        needs_odd: false,
        run: det_addition,
    },
];

fn algebra_soundness(s: &mut Sampler) -> Result<Verdict> {
    let (px, py, pz) = (s.parity(), s.parity(), s.parity());
    let (x, y, z) = (s.number(px), s.number(py), s.number(pz));
    let inputs = || json!({ "x": gj(&x), "y": gj(&y), "z": gj(&z) });
    ensure!(&(&x * &y) * &z == &x * &(&y * &z), "associativity", inputs());
    ensure!(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "left distributivity", inputs());
    ensure!(&(&x + &y) * &z == &(&x * &z) + &(&y * &z), "right distributivity", inputs());
    let sign = if px.is_odd() && py.is_odd() { -1 } else { 1 };
    ensure!(&x * &y == (&y * &x).scale_int(sign), "graded commutativity", inputs());
    ensure!((&x * &y).body() == &x.body() * &y.body(), "ε is multiplicative", inputs());
    ensure!((&x + &y).body() == &x.body() + &y.body(), "ε is additive", inputs());
    if px.is_odd() {
        ensure!((&x * &x).is_zero(), "odd elements square to zero", inputs());
    }
    let e = s.invertible_number()?;
    let inv = e.invert()?;
    ensure!((&e * &inv).is_one() && (&inv * &e).is_one(), "inversion round trip", json!({ "x": gj(&e) }));
    Ok(Ok(()))
}

fn calculus_soundness(s: &mut Sampler) -> Result<Verdict> {
    let (pf, pg) = (s.parity(), s.parity());
    let f = s.superfield(pf);
    let g = s.superfield(pg);
    let inputs = || json!({ "F": fj(&f), "G": fj(&g) });
    ensure!(f.d().d() == f.partial(), "D² = ∂", inputs());
    let lhs = f.checked_mul(&g)?.d();
    let sign = if pf.is_odd() { -1 } else { 1 };
    let rhs = f.d().checked_mul(&g)?.checked_add(&f.checked_mul(&g.d())?.scale_int(sign))?;
    ensure!(lhs == rhs, "graded Leibniz rule for D", inputs());
    ensure!(f.partial_theta().checked_add(&theta_times(f.generator_count(), &f.partial())?)? == f.d(), "D = ∂_θ + θ∂", inputs());

    let px = s.parity();
    let x = s.rational(px)?;
    let y = s.rational(Parity::Even)?;
    let w = s.rational(Parity::Odd)?;
    let rin = || json!({
        "x": wire::rational_to_json(&x),
        "y": wire::rational_to_json(&y),
        "w": wire::rational_to_json(&w),
    });
    let quotient = x.checked_div(&y)?;
    ensure!(quotient.checked_mul(&y)? == x, "(x/y)·y = x", rin());
    let prime = quotient.derivative();
    let expected = x
        .derivative()
        .checked_mul(&y)?
        .checked_add(&-&x.checked_mul(&y.derivative())?)?
        .checked_div(&y.checked_mul(&y)?)?;
    ensure!(prime == expected, "quotient rule", rin());
    ensure!(
        w.checked_mul(&x)?.derivative() == w.derivative().checked_mul(&x)?.checked_add(&w.checked_mul(&x.derivative())?)?,
        "product rule for rational components",
        rin()
    );
    let x_prime = x.derivative();
    let sum_left = x.checked_add(&x_prime)?.checked_add(&quotient)?;
    let sum_right = x.checked_add(&x_prime.checked_add(&quotient)?)?;
    ensure!(sum_left == sum_right, "associativity of rational addition", rin());

    let r = s.rational_superfield(pf)?;
    ensure!(r.d().d() == r.partial(), "D² = ∂ on rational superfields", json!({ "F": fj(&r) }));
    Ok(Ok(()))
}

fn ber_addition(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::General, GBody::Nonzero)?;
    let pa = t.tangent_matrix().berezinian()?;
    let ps = t.project(Projection::S).berezinian()?;
    let pt = t.project(Projection::T).berezinian()?;
    ensure!(pa == ps.checked_add(&pt)?, "Ber P_A = Ber P_S + Ber P_T", json!({ "transform": tj(&t) }));
    Ok(Ok(()))
}

fn ber_explicit_vs_matrix(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::General, GBody::Nonzero)?;
    let explicit = t.berezinian()?;
    let matrix = t.tangent_matrix().berezinian()?;
    ensure!(explicit == matrix, "explicit Berezinian equals matrix Berezinian", json!({ "transform": tj(&t) }));
    Ok(Ok(()))
}

fn ber_classification(s: &mut Sampler) -> Result<Verdict> {
    let body = if s.coin() { GBody::Any } else { GBody::Zero };
    let t = s.transform(ReductionKind::General, body)?;
    let inputs = || json!({ "transform": tj(&t) });
    let exists = t.berezinian().is_ok();
    for mode in [ClassifyMode::Value, ClassifyMode::Derivative] {
        let class = t.classify(mode);
        ensure!((class == BerClass::Nonexistent) == !exists, "NONEXISTENT exactly when ε(g) ≡ 0", inputs());
        if exists {
            let f = match mode {
                ClassifyMode::Value => t.f().clone(),
                ClassifyMode::Derivative => t.f().derivative(),
            };
            ensure!((class == BerClass::Invertible) == !f.has_zero_body(), "invertibility predicate", inputs());
        }
    }
    Ok(Ok(()))
}

fn q_minus_ddelta(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::General, GBody::Any)?;
    let c = t.conditions();
    let dt = t.d_theta();
    ensure!(&c.q - &c.delta.d() == dt.checked_mul(&dt)?, "Q − DΔ = (Dθ̃)²", json!({ "transform": tj(&t) }));
    Ok(Ok(()))
}

fn condition_components(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::General, GBody::Any)?;
    let n = t.generator_count();
    let c = t.conditions();
    let inputs = || json!({ "transform": tj(&t) });
    ensure!(c.delta == c.delta0.checked_add(&theta_times(n, &c.q)?)?, "Δ = Δ₀ + θQ", inputs());

    let (f, chi, psi, g) = (t.f(), t.chi(), t.psi(), t.g());
    let psi_psi = &psi.derivative() * psi;
    let chi_minus = chi - &(g * psi);
    let q = poly_field(
        &f.derivative() - &psi_psi,
        &(&chi.derivative() + &(&psi.derivative() * g)) - &(&g.derivative() * psi),
    )?;
    let delta = poly_field(chi_minus.clone(), &(&f.derivative() - &(g * g)) - &psi_psi)?;
    let delta0 = poly_field(chi_minus, -&(g * g))?;
    ensure!(c.q == q, "component form of Q", inputs());
    ensure!(c.delta == delta, "component form of Δ", inputs());
    ensure!(c.delta0 == delta0, "component form of Δ₀", inputs());
    Ok(Ok(()))
}

fn eq_q(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::Scf, GBody::Any)?;
    let c = t.conditions();
    let dt = t.d_theta();
    let inputs = || json!({ "transform": tj(&t) });
    ensure!(c.delta.is_zero(), "Δ ≡ 0", inputs());
    ensure!(c.q == dt.checked_mul(&dt)?, "Q|_{Δ=0} = (Dθ̃)²", inputs());
    Ok(Ok(()))
}

fn eq_dl(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::Tpt, GBody::Any)?;
    let c = t.conditions();
    let inputs = || json!({ "transform": tj(&t) });
    ensure!(c.q.is_zero(), "Q ≡ 0", inputs());
    ensure!(c.delta == c.delta0, "Δ|_{Q=0} = Δ₀", inputs());
    Ok(Ok(()))
}

/// The Δ₀ identities are consequences of `Q − DΔ = (Dθ̃)²` restricted to
/// `Q = 0`. Off that locus they pick up the correction `∂_θQ`, which is
/// checked on unreduced maps from the same family.
fn d_delta0(s: &mut Sampler) -> Result<Verdict> {
    let tpt = s.transform(ReductionKind::Tpt, GBody::Any)?;
    let dt = tpt.d_theta();
    ensure!(tpt.conditions().delta0.d() == -&dt.checked_mul(&dt)?, "DΔ₀ = −(Dθ̃)² at Q = 0", json!({ "transform": tj(&tpt) }));

    let t = s.transform(ReductionKind::General, GBody::Any)?;
    let c = t.conditions();
    let dt = t.d_theta();
    let rhs = (-&dt.checked_mul(&dt)?).checked_add(&theta_times(t.generator_count(), &c.q.partial_theta())?)?;
    ensure!(c.delta0.d() == rhs, "DΔ₀ = −(Dθ̃)² + θ·∂_θQ", json!({ "transform": tj(&t) }));
    Ok(Ok(()))
}

fn partial_delta0(s: &mut Sampler) -> Result<Verdict> {
    let tpt = s.transform(ReductionKind::Tpt, GBody::Any)?;
    let rhs = tpt.d_theta().checked_mul(&tpt.theta_tilde().partial())?.scale_int(-2);
    ensure!(tpt.conditions().delta0.partial() == rhs, "∂Δ₀ = −2 Dθ̃·∂θ̃ at Q = 0", json!({ "transform": tj(&tpt) }));

    let t = s.transform(ReductionKind::General, GBody::Any)?;
    let c = t.conditions();
    let rhs = t.d_theta().checked_mul(&t.theta_tilde().partial())?.scale_int(-2).checked_add(&c.q.partial_theta())?;
    ensure!(c.delta0.partial() == rhs, "∂Δ₀ = −2 Dθ̃·∂θ̃ + ∂_θQ", json!({ "transform": tj(&t) }));
    Ok(Ok(()))
}

fn ber_scf(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::Scf, GBody::Nonzero)?;
    let dt = t.d_theta();
    let inputs = || json!({ "transform": tj(&t) });
    ensure!(t.berezinian_scf()? == dt, "Ber P_SCf = Dθ̃", inputs());
    ensure!(t.project(Projection::Scf).berezinian()? == dt, "Ber of ((Dθ̃)², ∂θ̃; 0, Dθ̃) = Dθ̃", inputs());
    ensure!(t.tangent_matrix().berezinian()? == dt, "Ber P_A = Dθ̃", inputs());
    Ok(Ok(()))
}

fn ber_tpt_three_forms(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::Tpt, GBody::Nonzero)?;
    let b = t.berezinian_tpt()?;
    let inputs = || json!({ "transform": tj(&t) });
    ensure!(b.ratio == b.cubic, "Δ₀·∂θ̃/(Dθ̃)² = ∂Δ₀·Δ₀/(2(Dθ̃)³)", inputs());
    ensure!(b.cubic == b.superderivative, "∂Δ₀·Δ₀/(2(Dθ̃)³) = D(Dz̃/Dθ̃)", inputs());
    ensure!(b.ratio == t.project(Projection::Tpt).berezinian()?, "closed form equals Ber P_TPt", inputs());
    Ok(Ok(()))
}

fn ber_tpt_nilpotent(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::Tpt, GBody::Nonzero)?;
    let b = t.berezinian_tpt()?;
    ensure!(b.ratio.has_zero_body(), "Ber P_TPt is pure soul", json!({ "transform": tj(&t), "ber": fj(&b.ratio) }));
    Ok(Ok(()))
}

fn eq_bu(s: &mut Sampler) -> Result<Verdict> {
    let scf = s.transform(ReductionKind::Scf, GBody::Nonzero)?;
    let tpt = s.transform(ReductionKind::Tpt, GBody::Nonzero)?;
    let any = s.transform(ReductionKind::General, GBody::Nonzero)?;
    ensure!(
        scf.tangent_matrix().berezinian()? == scf.project(Projection::Scf).berezinian()?,
        "Ber P_A = Ber P_SCf",
        json!({ "transform": tj(&scf) })
    );
    ensure!(
        tpt.tangent_matrix().berezinian()? == tpt.project(Projection::Tpt).berezinian()?,
        "Ber P_A = Ber P_TPt",
        json!({ "transform": tj(&tpt) })
    );
    for t in [&scf, &tpt, &any] {
        ensure!(t.project(Projection::D).berezinian()?.is_zero(), "Ber P_D = 0", json!({ "transform": tj(t) }));
    }
    Ok(Ok(()))
}

fn chain_rule(s: &mut Sampler) -> Result<Verdict> {
    let inner = s.transform(ReductionKind::General, GBody::Any)?;
    let outer = s.transform(ReductionKind::General, GBody::Any)?;
    let composite = outer.compose(&inner)?;
    ensure!(
        composite.tangent_matrix() == cocycle::chained_tangent_matrix(&outer, &inner)?,
        "P(T̃∘T) = P(T)·(P(T̃)∘T)",
        json!({ "inner": tj(&inner), "outer": tj(&outer) })
    );
    Ok(Ok(()))
}

fn ber_multiplicative(s: &mut Sampler) -> Result<Verdict> {
    let mut attempts = 0;
    let (inner, outer, composite) = loop {
        let inner = s.transform(ReductionKind::General, GBody::Nonzero)?;
        let outer = s.transform(ReductionKind::General, GBody::Nonzero)?;
        let composite = outer.compose(&inner)?;
        if !composite.g().has_zero_body() {
            break (inner, outer, composite);
        }
        attempts += 1;
        if attempts > MAX_REDRAWS {
            return Err(Error::BerezinianDoesNotExist);
        }
        s.count_redraw();
    };
    let inputs = || json!({ "inner": tj(&inner), "outer": tj(&outer) });
    let outer_matrix = outer.tangent_matrix();
    let pulled = inner.pullback_matrix(&outer_matrix)?;
    let pulled_ber = pulled.berezinian()?;
    let lhs = composite.tangent_matrix().berezinian()?;
    let rhs = inner.tangent_matrix().berezinian()?.checked_mul(&pulled_ber)?;
    ensure!(lhs == rhs, "Ber(M·N) = Ber M · Ber N", inputs());
    ensure!(pulled_ber == inner.pullback(&outer_matrix.berezinian()?)?, "Ber commutes with pullback", inputs());
    Ok(Ok(()))
}

fn compose_substitution(s: &mut Sampler) -> Result<Verdict> {
    let t1 = s.transform(ReductionKind::General, GBody::Any)?;
    let t2 = s.transform(ReductionKind::General, GBody::Any)?;
    let t3 = s.transform(ReductionKind::General, GBody::Any)?;
    let z = s.number(Parity::Even);
    let theta = s.number(Parity::Odd);
    let inputs = || json!({ "t1": tj(&t1), "t2": tj(&t2), "t3": tj(&t3), "z": gj(&z), "theta": gj(&theta) });
    let composite = t2.compose(&t1)?;
    let (z1, th1) = t1.apply(&z, &theta)?;
    ensure!(composite.apply(&z, &theta)? == t2.apply(&z1, &th1)?, "composite agrees with substitution", inputs());
    ensure!(t3.compose(&composite)? == t3.compose(&t2)?.compose(&t1)?, "associativity", inputs());
    let id = SATransform::identity(t1.generator_count());
    ensure!(t1.compose(&id)? == t1 && id.compose(&t1)? == t1, "identity is neutral", inputs());
    Ok(Ok(()))
}

fn parity_twist(s: &mut Sampler) -> Result<Verdict> {
    let scf = s.transform(ReductionKind::Scf, GBody::Any)?;
    let tpt = s.transform(ReductionKind::Tpt, GBody::Any)?;
    let p = s.parity();
    let field = s.superfield(p);
    ensure!(
        cocycle::superconformal_twist_holds(&scf, &field)?,
        "D(F∘T) = Dθ̃·(D̃F)∘T",
        json!({ "transform": tj(&scf), "F": fj(&field) })
    );
    ensure!(
        cocycle::twist_parity_twist_holds(&tpt, &field)?,
        "∂(F∘T) = ∂θ̃·(D̃F)∘T",
        json!({ "transform": tj(&tpt), "F": fj(&field) })
    );
    Ok(Ok(()))
}

fn reduced_satisfy_condition(s: &mut Sampler) -> Result<Verdict> {
    for kind in [ReductionKind::Scf, ReductionKind::Tpt] {
        let pair = s.reduced_pair(kind, GBody::Any)?;
        let t = pair.build()?;
        let inputs = || json!({ "pair": pj(&pair) });
        let (g, psi) = (&pair.g, &pair.psi);
        let n = pair.spin.value();
        let psi_psi = &psi.derivative() * psi;
        let f_prime = match pair.spin {
            Spin::Plus => &psi_psi + &(g * g),
            Spin::Minus => psi_psi,
        };
        let chi_prime = &(&g.derivative() * psi) + &(g * &psi.derivative()).scale_int(n);
        ensure!(t.f().derivative() == f_prime, "f′ = ψ′ψ + ((1+n)/2)g²", inputs());
        ensure!(t.chi().derivative() == chi_prime, "χ′ = g′ψ + n·gψ′", inputs());
        let c = t.conditions();
        match pair.spin {
            Spin::Plus => ensure!(c.delta.is_zero(), "Δ ≡ 0 for n = +1", inputs()),
            Spin::Minus => ensure!(c.q.is_zero(), "Q ≡ 0 for n = −1", inputs()),
        }
        ensure!(t.psi() == psi && t.g() == g, "ψ and g are kept", inputs());
    }
    Ok(Ok(()))
}

fn tpt_noninvertible(s: &mut Sampler) -> Result<Verdict> {
    let _ = s.reduced_pair(ReductionKind::Scf, GBody::Any)?;
    let pair = s.reduced_pair(ReductionKind::Tpt, GBody::Any)?;
    let t = pair.build()?;
    let inputs = || json!({ "pair": pj(&pair) });
    ensure!(t.f().derivative().has_zero_body(), "ε(f′) ≡ 0", inputs());
    ensure!(t.classify(ClassifyMode::Derivative) != BerClass::Invertible, "never invertible as a function", inputs());
    Ok(Ok(()))
}

fn deg_characterization(s: &mut Sampler) -> Result<Verdict> {
    let t = s.transform(ReductionKind::Deg, GBody::Any)?;
    let inputs = || json!({ "transform": tj(&t) });
    ensure!(t.reduction_kind() == ReductionKind::Deg, "built Deg map satisfies both conditions", inputs());
    ensure!(t.is_theta_independent(), "image is θ-independent", inputs());
    ensure!(t.f().derivative() == &t.psi().derivative() * t.psi(), "f′ = ψ′ψ", inputs());

    let n = t.generator_count();
    let f = s.poly(Parity::Even);
    let psi = s.poly(Parity::Odd);
    let free = SATransform::new(f, ComponentFunction::zero(Parity::Odd, n), psi, ComponentFunction::zero(Parity::Even, n))?;
    let matches = free.f().derivative() == &free.psi().derivative() * free.psi();
    ensure!(
        (free.reduction_kind() == ReductionKind::Deg) == matches,
        "a θ-independent map is Deg exactly when f′ = ψ′ψ",
        json!({ "transform": tj(&free) })
    );
    Ok(Ok(()))
}

fn star_vs_compose(s: &mut Sampler) -> Result<Verdict> {
    let left = s.reduced_pair(ReductionKind::Scf, GBody::Any)?;
    let outer = left.build()?;
    for kind in [ReductionKind::Scf, ReductionKind::Tpt] {
        let right = s.reduced_pair(kind, GBody::Any)?;
        let inputs = || json!({ "left": pj(&left), "right": pj(&right) });
        let star = left.star(&right)?;
        let composite = outer.compose(&right.build()?)?;
        ensure!(&star.g == composite.g() && &star.psi == composite.psi(), "(g, ψ) of the star product", inputs());
        ensure!(star.build()? == composite, "star product rebuilds the composite", inputs());
        let (holds, claim) = match kind {
            ReductionKind::Scf => (composite.is_superconformal(), "(+1)*(+1) composite is SCf"),
            _ => (composite.is_twist_parity(), "(+1)*(−1) composite is TPt"),
        };
        ensure!(holds, claim, inputs());
    }
    Ok(Ok(()))
}

fn spin_rule(s: &mut Sampler) -> Result<Verdict> {
    let left = s.reduced_pair(ReductionKind::Scf, GBody::Any)?;
    let scf = s.reduced_pair(ReductionKind::Scf, GBody::Any)?;
    let tpt = s.reduced_pair(ReductionKind::Tpt, GBody::Any)?;
    let inputs = || json!({ "left": pj(&left), "scf": pj(&scf), "tpt": pj(&tpt) });
    ensure!(left.star(&scf)?.spin == Spin::Plus, "(+1)*(+1) = +1", inputs());
    ensure!(left.star(&tpt)?.spin == Spin::Minus, "(+1)*(−1) = −1", inputs());
    for right in [&scf, &tpt] {
        ensure!(
            matches!(tpt.star(right), Err(Error::UndefinedSpinProduct)),
            "(−1)*n is undefined",
            inputs()
        );
    }
    Ok(Ok(()))
}

/// A Deg map is superconformal with `g = 0`, so it also has a spin `+1`
/// pair, which is what makes it usable as a left factor.
fn deg_as_left_factor(p: &ReducedPair) -> Result<ReducedPair> {
    ReducedPair::with_constants(p.g.clone(), p.psi.clone(), Spin::Plus, p.f0.clone(), GrassmannNumber::zero(p.generator_count()))
}

fn deg_star(s: &mut Sampler) -> Result<Verdict> {
    let left = s.reduced_pair(ReductionKind::Deg, GBody::Any)?;
    let right = s.reduced_pair(ReductionKind::Deg, GBody::Any)?;
    let inputs = || json!({ "left": pj(&left), "right": pj(&right) });
    let plus = deg_as_left_factor(&left)?;
    ensure!(plus.build()? == left.build()?, "both spins build the same Deg map", inputs());
    let star = plus.star(&right)?;
    let inner = right.build()?;
    let composite = left.build()?.compose(&inner)?;
    ensure!(star.g.is_zero() && composite.g().is_zero(), "g̃ = 0", inputs());
    ensure!(star.psi == left.psi.compose(inner.f())?, "ψ̃ = φ∘f", inputs());
    ensure!(&star.psi == composite.psi(), "star agrees with composition", inputs());
    ensure!(composite.reduction_kind() == ReductionKind::Deg, "Deg * Deg is Deg", inputs());
    Ok(Ok(()))
}

fn cocycle_standard(s: &mut Sampler) -> Result<Verdict> {
    let inner = s.transform(ReductionKind::Scf, GBody::Any)?;
    let outer = s.transform(ReductionKind::Scf, GBody::Any)?;
    let inputs = || json!({ "inner": tj(&inner), "outer": tj(&outer) });
    let composite = outer.compose(&inner)?;
    ensure!(cocycle::standard_cocycle_of(&composite, &outer, &inner)?, "Dθ̃̃ = Dθ̃·D̃θ̃̃", inputs());
    ensure!(composite.is_superconformal(), "SCf ∘ SCf is SCf", inputs());
    Ok(Ok(()))
}

fn cocycle_mixed(s: &mut Sampler) -> Result<Verdict> {
    let tpt = s.transform(ReductionKind::Tpt, GBody::Any)?;
    let scf = s.transform(ReductionKind::Scf, GBody::Any)?;
    let inputs = || json!({ "inner": tj(&tpt), "outer": tj(&scf) });
    let composite = scf.compose(&tpt)?;
    ensure!(cocycle::mixed_relation_of(&composite, &scf, &tpt)?, "∂θ̃̃ = ∂θ̃·D̃θ̃̃", inputs());
    ensure!(composite.is_twist_parity(), "SCf ∘ TPt is TPt", inputs());
    Ok(Ok(()))
}

fn deg_both_cocycles(s: &mut Sampler) -> Result<Verdict> {
    let inner = s.transform(ReductionKind::Deg, GBody::Any)?;
    let outer = s.transform(ReductionKind::Deg, GBody::Any)?;
    let inputs = || json!({ "inner": tj(&inner), "outer": tj(&outer) });
    let composite = outer.compose(&inner)?;
    ensure!(cocycle::standard_cocycle_of(&composite, &outer, &inner)?, "Dθ̃̃ = Dθ̃·D̃θ̃̃", inputs());
    ensure!(cocycle::mixed_relation_of(&composite, &outer, &inner)?, "∂θ̃̃ = ∂θ̃·D̃θ̃̃", inputs());
    ensure!(composite.reduction_kind() == ReductionKind::Deg, "Deg ∘ Deg is Deg", inputs());
    Ok(Ok(()))
}

fn shape_closures(s: &mut Sampler) -> Result<Verdict> {
    let claims = [
        (MatrixShape::Superconformal, MatrixShape::Superconformal),
        (MatrixShape::TwistParity, MatrixShape::Superconformal),
        (MatrixShape::Degenerate, MatrixShape::Degenerate),
    ];
    for (left, right) in claims {
        let (first, second) = (s.shape_transform(left)?, s.shape_transform(right)?);
        let (product, inner, outer) = chain_product(Convention::FirstMapFirst, &first, &second)?;
        ensure!(
            product.has_shape(left),
            format!("P_{}·P_{} ⊆ P_{}", left.symbol(), right.symbol(), left.symbol()),
            json!({ "inner": tj(inner), "outer": tj(outer) })
        );
    }
    Ok(Ok(()))
}

fn det_addition(s: &mut Sampler) -> Result<Verdict> {
    let [a, b, c, d] = [(); 4].map(|_| s.number(Parity::Even));
    let det = &(&a * &d) - &(&b * &c);
    let diag = &a * &d;
    let zero = GrassmannNumber::zero(a.generator_count());
    let antidiag = &(&zero * &zero) - &(&b * &c);
    ensure!(
        det == &diag + &antidiag,
        "det P = det P_Diag + det P_Antidiag",
        json!({ "a": gj(&a), "b": gj(&b), "c": gj(&c), "d": gj(&d) })
    );
    Ok(Ok(()))
}
