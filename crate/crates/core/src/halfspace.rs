//! Single atom in front of a magnetoelectric half space.
//!
//! The electric part is
//!
//! ```text
//! U_e = 1/(2π) ∫du u³ a(u) ∫₁^∞dv e^{-2uvz} [r_s(v) - (2v²-1) r_p(v)]
//! ```
//!
//! with `v = cb/ξ` and Fresnel factors `r_p = (εv - w)/(εv + w)`,
//! `r_s = (μv - w)/(μv + w)`, `w = √(εμ - 1 + v²)`. The magnetic part is the
//! electric part of the dual scene.

use std::f64::consts::PI;

use crate::error::VdwError;
use crate::quadrature::{integrate_interval, integrate_semi_infinite, QuadratureSpec};
use crate::response::{AtomModel, MaterialModel};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfSpaceScene {
    pub wall: MaterialModel,
    pub atom: AtomModel,
    pub z: f64,
}

impl HalfSpaceScene {
    pub fn new(wall: MaterialModel, atom: AtomModel, z: f64) -> Result<Self, VdwError> {
        let scene = Self { wall, atom, z };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<(), VdwError> {
        if !(self.z > 0.0) || !self.z.is_finite() {
            return Err(VdwError::domain(format!(
                "atom-surface distance must be positive, got {}",
                self.z
            )));
        }
        Ok(())
    }

    pub fn dual(&self) -> Self {
        Self {
            wall: self.wall.dual(),
            atom: self.atom.dual(),
            z: self.z,
        }
    }
}

/// `(r_p, r_s)` at normalized transverse wave number `v ≥ 1`.
pub fn reflection_coefficients(eps: f64, mu: f64, v: f64) -> (f64, f64) {
    if eps.is_infinite() {
        return (1.0, -1.0);
    }
    if mu.is_infinite() {
        return (-1.0, 1.0);
    }
    let w = (eps * mu - 1.0 + v * v).sqrt();
    let v2 = v * v;
    // numerators via (εv)² - w² to avoid cancellation for ε, μ close to 1
    let rp = ((eps * eps - 1.0) * v2 - (eps * mu - 1.0)) / ((eps * v + w) * (eps * v + w));
    let rs = ((mu * mu - 1.0) * v2 - (eps * mu - 1.0)) / ((mu * v + w) * (mu * v + w));
    (rp, rs)
}

/// Electric part of the atom–wall potential.
pub fn halfspace_ue(scene: &HalfSpaceScene, spec: &QuadratureSpec) -> Result<f64, VdwError> {
    Ok(halfspace_ue_with_error(scene, spec)?.0)
}

/// As [`halfspace_ue`], also returning the quadrature error estimate.
pub fn halfspace_ue_with_error(scene: &HalfSpaceScene, spec: &QuadratureSpec) -> Result<(f64, f64), VdwError> {
    scene.validate()?;
    spec.validate()?;
    if scene.wall.is_vacuum() || scene.atom.a0 == 0.0 {
        return Ok((0.0, 0.0));
    }
    let z = scene.z;
    let wall = scene.wall;
    let atom = scene.atom;
    // x = uz outside, v = 1 + s/(2x) inside
    let prefactor = 1.0 / (4.0 * PI * z.powi(4));
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: 0.0,
        ..*spec
    };
    let outer_spec = spec.for_prefactor(prefactor);

    let inner = |x: f64| -> Result<f64, VdwError> {
        let u = x / z;
        let eps = wall.eps_iu(u);
        let mu = wall.mu_iu(u);
        let bracket = |s: f64| {
            let v = 1.0 + s / (2.0 * x);
            let (rp, rs) = reflection_coefficients(eps, mu, v);
            (-s).exp() * (rs - (2.0 * v * v - 1.0) * rp)
        };
        let r = integrate_semi_infinite(bracket, &inner_spec)?;
        Ok(r.value)
    };

    let outer = crate::quadrature::try_integrate_semi_infinite(
        |x| {
            let i = inner(x)?;
            Ok([x * x * atom.alpha_iu(x / z) * (-2.0 * x).exp() * i])
        },
        &outer_spec,
    )?;
    let [r] = outer;
    Ok((r.value * prefactor, r.err_estimate * prefactor))
}

/// Magnetic part: the electric part of the dual scene.
pub fn halfspace_um(scene: &HalfSpaceScene, spec: &QuadratureSpec) -> Result<f64, VdwError> {
    halfspace_ue(&scene.dual(), spec)
}

/// Leading short-distance term `-(1/4π z³) ∫du a(u) (ε-1)/(ε+1)`.
///
/// The next correction is of order `z⁻¹` and carries the bracket
/// `(ε-1)/(ε+1) + (μ-1)/(μ+1) + 2ε(n²-1)/(ε+1)²`; it is not included.
pub fn halfspace_ue_nonretarded(scene: &HalfSpaceScene, spec: &QuadratureSpec) -> Result<f64, VdwError> {
    scene.validate()?;
    spec.validate()?;
    if scene.wall.is_vacuum() || scene.atom.a0 == 0.0 {
        return Ok(0.0);
    }
    let prefactor = -1.0 / (4.0 * PI * scene.z.powi(3));
    let r = integrate_semi_infinite(
        |u| {
            let inv = 1.0 / scene.wall.eps_iu(u);
            scene.atom.alpha_iu(u) * (1.0 - inv) / (1.0 + inv)
        },
        &spec.for_prefactor(prefactor),
    )?;
    Ok(prefactor * r.value)
}

/// Long-distance form with static responses:
/// `-(3a₀/16π z⁴) ∫₁^∞dv [(2/v² - 1/v⁴) r_p - r_s/v⁴]`.
pub fn halfspace_ue_retarded(scene: &HalfSpaceScene, spec: &QuadratureSpec) -> Result<f64, VdwError> {
    scene.validate()?;
    spec.validate()?;
    if scene.wall.is_vacuum() || scene.atom.a0 == 0.0 {
        return Ok(0.0);
    }
    let eps = scene.wall.eps_iu(0.0);
    let mu = scene.wall.mu_iu(0.0);
    let prefactor = -3.0 * scene.atom.a0 / (16.0 * PI * scene.z.powi(4));
    let r = integrate_interval(
        |v| {
            let (rp, rs) = reflection_coefficients(eps, mu, v);
            let v2 = v * v;
            let v4 = v2 * v2;
            (2.0 / v2 - 1.0 / v4) * rp - rs / v4
        },
        1.0,
        f64::INFINITY,
        &spec.for_prefactor(prefactor),
    )?;
    Ok(prefactor * r.value)
}
