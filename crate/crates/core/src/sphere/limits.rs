//! Closed forms of the body-induced mixed channel for large and small spheres.

use std::f64::consts::PI;

use crate::error::VdwError;
use crate::quadrature::{try_integrate_semi_infinite, QuadratureSpec};

use super::SphereScene;

/// Largest ratio accepted as "much smaller" by the limit preconditions.
pub const LIMIT_RATIO: f64 = 0.1;

/// Body-induced `U_em` for atoms close to a large sphere.
///
/// Requires `δ_a, δ_b ≤ 0.1 R` (distances to the surface) and `l ≤ 0.1 R`.
pub fn sphere_uem_large(scene: &SphereScene, spec: &QuadratureSpec) -> Result<f64, VdwError> {
    scene.validate()?;
    spec.validate()?;
    scene.sphere.require_finite("the large-sphere limit")?;
    let r = scene.radius;
    let (da, db) = (scene.r_a - r, scene.r_b - r);
    let l = scene.separation();
    if da > LIMIT_RATIO * r || db > LIMIT_RATIO * r {
        return Err(VdwError::domain(format!(
            "large-sphere limit needs both atoms near the surface: δ_a = {da}, δ_b = {db}, R = {r}"
        )));
    }
    if l > LIMIT_RATIO * r {
        return Err(VdwError::domain(format!(
            "large-sphere limit needs l << R: l = {l}, R = {r}"
        )));
    }
    let (a, b) = (&scene.atom_a, &scene.atom_b);
    if scene.sphere.is_vacuum() || a.a0 == 0.0 || b.b0 == 0.0 {
        return Ok(0.0);
    }

    let x = r * scene.theta;
    let x2 = x * x;
    let dp = db + da;
    let dm = db - da;
    let lp = x.hypot(dp);
    let l3 = l.powi(3);
    let prefactor = 1.0 / (2.0 * PI * l3 * lp.powi(4) * (lp + dp).powi(2));
    let c10 = 2.0 * lp * (lp + dp).powi(2) * (x2 - dm * dp);
    let c01 = 2.0 * lp * (lp + dp).powi(2) * (x2 + dm * dp);
    let c2 = l3 * (2.0 * lp * lp + x2);
    let c11 = 4.0 * l3 * (x2 - lp * dp);

    let scale = [c10, c01, c2, c11].iter().fold(0.0f64, |m, c| m.max(c.abs())) * prefactor;
    let sphere = scene.sphere;
    // J_10, J_01, J_20, J_02, J_11
    let j = try_integrate_semi_infinite(
        |u| {
            let e = sphere.eps_iu(u);
            let m = sphere.mu_iu(u);
            let re = (e - 1.0) / (e + 1.0);
            let rm = (m - 1.0) / (m + 1.0);
            let w = u * u * a.alpha_iu(u) * b.beta_iu(u);
            Ok([w * re, w * rm, w * re * re, w * rm * rm, w * re * rm])
        },
        &spec.for_prefactor(scale),
    )?;
    let [j10, j01, j20, j02, j11] = j.map(|r| r.value);
    Ok(prefactor * (c10 * j10 + c01 * j01 + c2 * (j20 + j02) + c11 * j11))
}

/// Body-induced `U_em` for a small sphere, from its Clausius–Mossotti response.
///
/// Requires `R ≤ 0.1 r_a` and `R ≤ 0.1 r_b`.
pub fn sphere_uem_small(scene: &SphereScene, spec: &QuadratureSpec) -> Result<f64, VdwError> {
    scene.validate()?;
    spec.validate()?;
    scene.sphere.require_finite("the small-sphere limit")?;
    let r = scene.radius;
    if r > LIMIT_RATIO * scene.r_a || r > LIMIT_RATIO * scene.r_b {
        return Err(VdwError::domain(format!(
            "small-sphere limit needs R << r_a, r_b: R = {r}, r_a = {}, r_b = {}",
            scene.r_a, scene.r_b
        )));
    }
    let sphere = scene.sphere;
    let r3 = r.powi(3);
    three_body_uem(
        scene,
        |u| {
            let e = sphere.eps_iu(u);
            let m = sphere.mu_iu(u);
            (r3 * (e - 1.0) / (e + 2.0), r3 * (m - 1.0) / (m + 2.0))
        },
        spec,
    )
}

/// Non-additive mixed potential of A, B and a third isotropic particle C at the origin,
/// given C's dimensionless `(a_C(u), b_C(u))`.
pub fn three_body_uem(
    scene: &SphereScene,
    third: impl Fn(f64) -> (f64, f64),
    spec: &QuadratureSpec,
) -> Result<f64, VdwError> {
    let (a, b) = (&scene.atom_a, &scene.atom_b);
    if a.a0 == 0.0 || b.b0 == 0.0 {
        return Ok(0.0);
    }
    let (ra, rb) = (scene.r_a, scene.r_b);
    let l = scene.separation();
    let (la, lb) = (scene.l_a(), scene.l_b());
    let gamma = scene.gamma();
    let sin2 = scene.theta.sin().powi(2);
    let prefactor = 1.0 / (PI * l.powi(3) * ra.powi(3) * rb.powi(3));
    let poly = |x: f64| 1.0 + x + x * x;
    let [r] = try_integrate_semi_infinite(
        |u| {
            let (asp, bsp) = third(u);
            let (xa, xb) = (ra * u, rb * u);
            let e_part = (2.0 * rb * (1.0 + xa) * sin2 + (lb - la * gamma) * poly(xa)) * (1.0 + xb) * rb * asp;
            let m_part = (2.0 * ra * (1.0 + xb) * sin2 + (la - lb * gamma) * poly(xb)) * (1.0 + xa) * ra * bsp;
            let v = u * u
                * a.alpha_iu(u)
                * b.beta_iu(u)
                * (-u * (ra + rb + l)).exp()
                * (1.0 + u * l)
                * (e_part + m_part);
            Ok([v])
        },
        &spec.for_prefactor(prefactor),
    )?;
    Ok(prefactor * r.value)
}
