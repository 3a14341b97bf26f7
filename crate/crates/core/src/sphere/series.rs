//! Mixed electric–magnetic channel near the sphere.
//!
//! The scattering part of the curl Green tensor has four nonzero spherical
//! components,
//!
//! ```text
//! K¹_{r_B φ_A} = c Σ (2n+1) r_a B^M Q P' sin Θ
//! K¹_{θ_B φ_A} = c Σ (2n+1)/(n(n+1)) [r_a B^M Q^B F - r_b B^N Q^A P']
//! K¹_{φ_B r_A} = c Σ (2n+1) r_b B^N Q P' sin Θ
//! K¹_{φ_B θ_A} = c Σ (2n+1)/(n(n+1)) [r_b B^N Q^A F - r_a B^M Q^B P']
//! ```
//!
//! with `c = -u/(4π r_a r_b)`. The body-induced potential splits into a term
//! linear in `K¹` (cross term with the free-space tensor) and a quadratic one.

use std::f64::consts::PI;

use crate::error::VdwError;
use crate::pair::{freespace_pair_potential, PotentialBreakdown};
use crate::quadrature::{try_integrate_semi_infinite, QuadratureSpec};
use crate::specfun::LegendreTable;

use super::mie::MieTermCache;
use super::SphereScene;

/// Hard upper limit on the truncation order of any sphere series.
pub const SERIES_CAP: usize = 1 << 18;

/// Spherical components in the order `(r_B φ_A, θ_B φ_A, φ_B r_A, φ_B θ_A)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KComponents {
    pub k1: [f64; 4],
    pub k0: [f64; 4],
    pub n_used: usize,
    /// Estimated truncation error, relative to the magnitude of the component sums.
    pub tail: f64,
}

/// Mixed channel near the sphere, `total = u0 + u1 + u2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereMixed {
    pub u1: f64,
    pub u2: f64,
    pub u0: f64,
    pub total: f64,
    pub err_estimate: f64,
}

/// Geometric tail bound for a series whose last terms are `m`.
///
/// Uses the largest of the last three term ratios as the decay rate; infinite
/// while the terms are still growing.
pub(crate) fn geometric_tail(m: &[f64]) -> f64 {
    let len = m.len();
    let last = match m.last() {
        Some(&v) => v,
        None => return f64::INFINITY,
    };
    if last == 0.0 {
        return 0.0;
    }
    if len < 4 {
        return f64::INFINITY;
    }
    let mut rho: f64 = 0.0;
    for k in len - 4..len - 1 {
        if m[k] == 0.0 {
            return f64::INFINITY;
        }
        rho = rho.max(m[k + 1] / m[k]);
    }
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    last * rho / (1.0 - rho)
}

/// Runs `eval` at increasing truncation orders until its tail estimate passes.
///
/// `eval(n)` returns `(result, tail, magnitude)`; acceptance requires
/// `tail <= tol · magnitude`.
pub(crate) fn converge<T>(
    n_start: usize,
    tol: f64,
    mut eval: impl FnMut(usize) -> Result<(T, f64, f64), VdwError>,
) -> Result<(T, usize, f64), VdwError> {
    let mut n = n_start.clamp(4, SERIES_CAP);
    loop {
        let (value, tail, magnitude) = eval(n)?;
        if tail <= tol * magnitude {
            let rel = if magnitude > 0.0 { tail / magnitude } else { 0.0 };
            return Ok((value, n, rel));
        }
        if n >= SERIES_CAP {
            return Err(VdwError::SeriesNonConvergence {
                n_reached: n,
                tail: if magnitude > 0.0 { tail / magnitude } else { tail },
            });
        }
        n = (2 * n).min(SERIES_CAP);
    }
}

struct MixedSums {
    /// Component sums `S` with `K¹ = -u/(4π r_a r_b) · S`.
    s: [f64; 4],
    /// Sum of the per-order brackets of the cross term.
    cross: f64,
}

fn mixed_sums(scene: &SphereScene, cache: &MieTermCache, legendre: &LegendreTable) -> (MixedSums, f64, f64) {
    let (ra, rb) = (scene.r_a, scene.r_b);
    let sin = scene.theta.sin();
    let sin2 = sin * sin;
    let (la, lb) = (scene.l_a(), scene.l_b());
    let mut s = [0.0; 4];
    let mut cross = 0.0;
    let mut majorant = Vec::with_capacity(cache.n_max());
    let mut abs_sum = 0.0;
    for t in cache.terms() {
        let n = t.n;
        let nn = (n * (n + 1)) as f64;
        let w = (2 * n + 1) as f64;
        let dp = legendre.dp(n);
        let f = legendre.f(n);
        let a_part = ra * t.bm_qb;
        let b_part = rb * t.bn_qa;
        s[0] += w * ra * t.bm_qn * dp * sin;
        s[1] += w / nn * (a_part * f - rb * t.bn_qa * dp);
        s[2] += w * rb * t.bn_qn * dp * sin;
        s[3] += w / nn * (b_part * f - ra * t.bm_qb * dp);
        cross += w / nn
            * (nn * sin2 * (ra * ra * t.bm_qn + rb * rb * t.bn_qn) * dp
                + a_part * (lb * f - la * dp)
                + b_part * (la * f - lb * dp));
        // |P'| <= n(n+1)/2 and |F| <= 3n(n+1)/2 on [-1, 1]
        let m = w * ((ra * t.bm_qn.abs() + rb * t.bn_qn.abs()) * 0.5 * nn + 2.0 * (a_part.abs() + b_part.abs()));
        abs_sum += m;
        majorant.push(m);
    }
    let norm = s.iter().map(|v| v * v).sum::<f64>().sqrt();
    let magnitude = norm.max(64.0 * f64::EPSILON * abs_sum);
    (MixedSums { s, cross }, geometric_tail(&majorant), magnitude)
}

fn converged_mixed_sums(
    scene: &SphereScene,
    u: f64,
    n_start: Option<usize>,
    tol: f64,
) -> Result<(MixedSums, usize, f64), VdwError> {
    let start = n_start.unwrap_or_else(|| scene.default_n_max(u));
    converge(start, tol, |n| {
        let cache = MieTermCache::compute(scene, u, n)?;
        let legendre = LegendreTable::new(n, scene.gamma())?;
        Ok(mixed_sums(scene, &cache, &legendre))
    })
}

/// Free-space curl tensor in the same spherical components.
fn k0_components(scene: &SphereScene, u: f64) -> [f64; 4] {
    let l = scene.separation();
    let c = (-u * l).exp() * (1.0 + u * l) / (4.0 * PI * l.powi(3));
    let sin = scene.theta.sin();
    [c * scene.r_a * sin, c * scene.l_b(), c * scene.r_b * sin, c * scene.l_a()]
}

/// `K¹(r_B, r_A, iu)` and `K⁰(r_B, r_A, iu)` in spherical components.
///
/// `n_max` is the starting truncation; it is extended until the tail estimate
/// falls below `rel_tol`.
pub fn k1_tensor_components(
    scene: &SphereScene,
    u: f64,
    n_max: Option<usize>,
    rel_tol: f64,
) -> Result<KComponents, VdwError> {
    scene.validate()?;
    let (sums, n_used, tail) = converged_mixed_sums(scene, u, n_max, rel_tol)?;
    let c = -u / (4.0 * PI * scene.r_a * scene.r_b);
    Ok(KComponents {
        k1: sums.s.map(|v| c * v),
        k0: k0_components(scene, u),
        n_used,
        tail,
    })
}

/// Mixed channel `U_em` with atom A polarizable and atom B magnetizable.
pub fn sphere_uem(scene: &SphereScene, spec: &QuadratureSpec, n_max: Option<usize>) -> Result<SphereMixed, VdwError> {
    scene.validate()?;
    spec.validate()?;
    scene.sphere.require_finite("the sphere kernel")?;
    let l = scene.separation();
    let free = freespace_pair_potential(&scene.atom_a, &scene.atom_b, l, spec)?;
    let (u1, u2, err) = body_mixed(scene, spec, n_max)?;
    Ok(assemble(free, u1, u2, err))
}

fn assemble(free: PotentialBreakdown, u1: f64, u2: f64, err: f64) -> SphereMixed {
    SphereMixed {
        u1,
        u2,
        u0: free.u_em,
        total: free.u_em + u1 + u2,
        err_estimate: err + free.errors.em,
    }
}

fn body_mixed(scene: &SphereScene, spec: &QuadratureSpec, n_max: Option<usize>) -> Result<(f64, f64, f64), VdwError> {
    let (a, b) = (&scene.atom_a, &scene.atom_b);
    if scene.sphere.is_vacuum() || a.a0 == 0.0 || b.b0 == 0.0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let (ra, rb) = (scene.r_a, scene.r_b);
    let l = scene.separation();
    let p1 = -1.0 / (PI * l.powi(3) * ra * rb);
    let p2 = 1.0 / (2.0 * PI * ra * ra * rb * rb);
    let tol = spec.rel_tol * 0.1;
    let [i1, i2] = try_integrate_semi_infinite(
        |u| {
            let (sums, _, _) = converged_mixed_sums(scene, u, n_max, tol)?;
            let ab = a.alpha_iu(u) * b.beta_iu(u);
            let u2 = u * u;
            let v1 = p1 * u2 * u * ab * (-u * l).exp() * (1.0 + u * l) * sums.cross;
            let v2 = p2 * u2 * u2 * ab * sums.s.iter().map(|v| v * v).sum::<f64>();
            Ok([v1, v2])
        },
        spec,
    )?;
    Ok((i1.value, i2.value, i1.err_estimate + i2.err_estimate))
}

/// `U_me`: the mixed channel with the roles of A and B exchanged.
pub fn sphere_ume(scene: &SphereScene, spec: &QuadratureSpec, n_max: Option<usize>) -> Result<SphereMixed, VdwError> {
    sphere_uem(&scene.exchange(), spec, n_max)
}
