//! Cartesian Green tensors of the sphere and the body-induced ee/mm potentials.
//!
//! The azimuthal sums over vector spherical wave functions are done in closed
//! form. With `û = r̂_B`, `v̂ = r̂_A`, `γ = û·v̂`, `w = û×v̂`, `x = u r_b`,
//! `x' = u r_a` and `N = n(n+1)`, the order-`n` angular dyads are
//!
//! ```text
//! MM = -P'' w⊗w + P'(γI - v̂⊗û)
//! NN = (N/x)(N/x') P û⊗v̂ + (N/x)(D'/x') P' û⊗(û-γv̂) + (D/x)(N/x') P' (v̂-γû)⊗v̂
//!      + (D/x)(D'/x') [P'' (v̂-γû)⊗(û-γv̂) + P' (I - û⊗û - (v̂-γû)⊗v̂)]
//! NM = (N/x) P' û⊗w + (D/x) [P'' (v̂-γû)⊗w - P' E(v̂) - P' û⊗w]
//! MN = -(N/x') P' w⊗v̂ + (D'/x') [-P'' w⊗(û-γv̂) + P' (E(û) + w⊗v̂)]
//! ```
//!
//! where `D`, `D'` are `[x k_n]'/k_n` at `x`, `x'` and `E(a)_{ij} = ε_{ijk} a_k`.
//! Then `G¹ = -(u/4π) Σ (2n+1)/N [B^M Q MM - B^N Q NN]` and
//! `K¹ = -(u²/4π) Σ (2n+1)/N [B^M Q NM + B^N Q MN]`.

use std::f64::consts::PI;

use crate::error::VdwError;
use crate::quadrature::{try_integrate_semi_infinite, QuadratureSpec};
use crate::specfun::LegendreTable;

use super::mie::MieTermCache;
use super::series::{converge, geometric_tail};
use super::SphereScene;

pub type Mat3 = [[f64; 3]; 3];
type Vec3 = [f64; 3];

const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale_v(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn outer(a: Vec3, b: Vec3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i] * b[j]))
}

fn levi(a: Vec3) -> Mat3 {
    [[0.0, a[2], -a[1]], [-a[2], 0.0, a[0]], [a[1], -a[0], 0.0]]
}

fn axpy(acc: &mut Mat3, s: f64, m: &Mat3) {
    for i in 0..3 {
        for j in 0..3 {
            acc[i][j] += s * m[i][j];
        }
    }
}

fn scaled(m: &Mat3, s: f64) -> Mat3 {
    m.map(|row| row.map(|v| v * s))
}

fn frobenius_dot(a: &Mat3, b: &Mat3) -> f64 {
    (0..3).map(|i| dot(a[i], b[i])).sum()
}

/// Geometry shared by all orders at one scene.
struct Frame {
    u: Vec3,
    v: Vec3,
    gamma: f64,
    ww: Mat3,
    vu: Mat3,
    uv: Mat3,
    u_ugv: Mat3,
    vgu_v: Mat3,
    vgu_ugv: Mat3,
    rest: Mat3,
    uw: Mat3,
    vgu_w: Mat3,
    wv: Mat3,
    w_ugv: Mat3,
}

impl Frame {
    fn new(scene: &SphereScene) -> Self {
        let (ra, rb) = scene.positions();
        let u = scale_v(rb, 1.0 / scene.r_b);
        let v = scale_v(ra, 1.0 / scene.r_a);
        let gamma = scene.gamma();
        let w = cross(u, v);
        let ugv = sub(u, scale_v(v, gamma));
        let vgu = sub(v, scale_v(u, gamma));
        let mut rest = IDENTITY;
        axpy(&mut rest, -1.0, &outer(u, u));
        axpy(&mut rest, -1.0, &outer(vgu, v));
        Self {
            u,
            v,
            gamma,
            ww: outer(w, w),
            vu: outer(v, u),
            uv: outer(u, v),
            u_ugv: outer(u, ugv),
            vgu_v: outer(vgu, v),
            vgu_ugv: outer(vgu, ugv),
            rest,
            uw: outer(u, w),
            vgu_w: outer(vgu, w),
            wv: outer(w, v),
            w_ugv: outer(w, ugv),
        }
    }
}

/// Sum over orders of `(2n+1)/N [B^M Q MM - B^N Q NN]`, with tail estimate and magnitude.
fn g1_sum(scene: &SphereScene, frame: &Frame, cache: &MieTermCache, leg: &LegendreTable) -> (Mat3, f64, f64) {
    let u = cache.u();
    let (x, xp) = (u * scene.r_b, u * scene.r_a);
    let g = frame.gamma;
    let mut acc = [[0.0; 3]; 3];
    let mut majorant = Vec::with_capacity(cache.n_max());
    let mut abs_sum = 0.0;
    for t in cache.terms() {
        let n = t.n;
        let nn = (n * (n + 1)) as f64;
        let wn = (2 * n + 1) as f64 / nn;
        let (p, dp, ddp) = (leg.p(n), leg.dp(n), leg.ddp(n));

        let mut mm = scaled(&frame.ww, -ddp);
        axpy(&mut mm, dp * g, &IDENTITY);
        axpy(&mut mm, -dp, &frame.vu);

        let (a, b) = (nn / x, t.dk_b / x);
        let (ap, bp) = (nn / xp, t.dk_a / xp);
        let mut nmat = scaled(&frame.uv, a * ap * p);
        axpy(&mut nmat, a * bp * dp, &frame.u_ugv);
        axpy(&mut nmat, b * ap * dp, &frame.vgu_v);
        axpy(&mut nmat, b * bp * ddp, &frame.vgu_ugv);
        axpy(&mut nmat, b * bp * dp, &frame.rest);

        axpy(&mut acc, wn * t.bm_qn, &mm);
        axpy(&mut acc, -wn * t.bn_qn, &nmat);

        // |P|, |P'|, |P''| are bounded by 1, N/2, N²/8
        let radial = (a.abs() + b.abs()) * (ap.abs() + bp.abs());
        let m = wn * nn * nn * (t.bm_qn.abs() + t.bn_qn.abs() * radial);
        abs_sum += m;
        majorant.push(m);
    }
    let magnitude = frobenius_dot(&acc, &acc).sqrt().max(64.0 * f64::EPSILON * abs_sum);
    (acc, geometric_tail(&majorant), magnitude)
}

fn k1_sum(scene: &SphereScene, frame: &Frame, cache: &MieTermCache, leg: &LegendreTable) -> (Mat3, f64, f64) {
    let u = cache.u();
    let (x, xp) = (u * scene.r_b, u * scene.r_a);
    let ev = levi(frame.v);
    let eu = levi(frame.u);
    let mut acc = [[0.0; 3]; 3];
    let mut majorant = Vec::with_capacity(cache.n_max());
    let mut abs_sum = 0.0;
    for t in cache.terms() {
        let n = t.n;
        let nn = (n * (n + 1)) as f64;
        let wn = (2 * n + 1) as f64 / nn;
        let (dp, ddp) = (leg.dp(n), leg.ddp(n));

        let (a, b) = (nn / x, t.dk_b / x);
        let mut nm = scaled(&frame.uw, a * dp);
        axpy(&mut nm, b * ddp, &frame.vgu_w);
        axpy(&mut nm, -b * dp, &ev);
        axpy(&mut nm, -b * dp, &frame.uw);

        let (ap, bp) = (nn / xp, t.dk_a / xp);
        let mut mn = scaled(&frame.wv, -ap * dp);
        axpy(&mut mn, -bp * ddp, &frame.w_ugv);
        axpy(&mut mn, bp * dp, &eu);
        axpy(&mut mn, bp * dp, &frame.wv);

        axpy(&mut acc, wn * t.bm_qn, &nm);
        axpy(&mut acc, wn * t.bn_qn, &mn);

        let m = wn * nn * nn * (t.bm_qn.abs() * (a.abs() + b.abs()) + t.bn_qn.abs() * (ap.abs() + bp.abs()));
        abs_sum += m;
        majorant.push(m);
    }
    let magnitude = frobenius_dot(&acc, &acc).sqrt().max(64.0 * f64::EPSILON * abs_sum);
    (acc, geometric_tail(&majorant), magnitude)
}

type SumFn = fn(&SphereScene, &Frame, &MieTermCache, &LegendreTable) -> (Mat3, f64, f64);

fn converged_sum(scene: &SphereScene, u: f64, n_max: Option<usize>, tol: f64, sum: SumFn) -> Result<(Mat3, usize), VdwError> {
    let frame = Frame::new(scene);
    let start = n_max.unwrap_or_else(|| scene.default_n_max(u));
    let (m, n, _) = converge(start, tol, |n| {
        let cache = MieTermCache::compute(scene, u, n)?;
        let leg = LegendreTable::new(n, scene.gamma())?;
        Ok(sum(scene, &frame, &cache, &leg))
    })?;
    Ok((m, n))
}

/// Scattering Green tensor `G¹(r_B, r_A, iu)` in Cartesian components, with the order used.
pub fn g1_cartesian(scene: &SphereScene, u: f64, n_max: Option<usize>, rel_tol: f64) -> Result<(Mat3, usize), VdwError> {
    scene.validate()?;
    let (m, n) = converged_sum(scene, u, n_max, rel_tol, g1_sum)?;
    Ok((scaled(&m, -u / (4.0 * PI)), n))
}

/// Scattering curl tensor `K¹(r_B, r_A, iu)` in Cartesian components, with the order used.
pub fn k1_cartesian(scene: &SphereScene, u: f64, n_max: Option<usize>, rel_tol: f64) -> Result<(Mat3, usize), VdwError> {
    scene.validate()?;
    let (m, n) = converged_sum(scene, u, n_max, rel_tol, k1_sum)?;
    Ok((scaled(&m, -u * u / (4.0 * PI)), n))
}

/// Free-space Green tensor `G⁰(r_B, r_A, iu)`.
pub fn g0_cartesian(scene: &SphereScene, u: f64) -> Mat3 {
    let (ra, rb) = scene.positions();
    g0_between(rb, ra, u)
}

pub(crate) fn g0_between(r: Vec3, rp: Vec3, u: f64) -> Mat3 {
    let d = sub(r, rp);
    let rho = norm(d);
    let e = scale_v(d, 1.0 / rho);
    let x = u * rho;
    let c = (-x).exp() / (4.0 * PI * u * u * rho.powi(3));
    let mut g = scaled(&IDENTITY, c * (1.0 + x + x * x));
    axpy(&mut g, -c * (3.0 + 3.0 * x + x * x), &outer(e, e));
    g
}

/// Free-space curl tensor `K⁰(r_B, r_A, iu) = -(e^{-ul}(1+ul)/4πl²) e_l × I`, `e_l = (r_B - r_A)/l`.
pub fn k0_cartesian(scene: &SphereScene, u: f64) -> Mat3 {
    let (ra, rb) = scene.positions();
    let d = sub(rb, ra);
    let l = norm(d);
    let e = scale_v(d, 1.0 / l);
    let c = (-u * l).exp() * (1.0 + u * l) / (4.0 * PI * l * l);
    // e × I = -E(e)
    scaled(&levi(e), c)
}

/// Body-induced ee and mm channels near the sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereBody {
    pub u_ee_b: f64,
    pub u_mm_b: f64,
    pub err_estimate: f64,
}

fn body_ee(scene: &SphereScene, spec: &QuadratureSpec, n_max: Option<usize>) -> Result<(f64, f64), VdwError> {
    let (a, b) = (&scene.atom_a, &scene.atom_b);
    if scene.sphere.is_vacuum() || a.a0 == 0.0 || b.a0 == 0.0 {
        return Ok((0.0, 0.0));
    }
    let tol = spec.rel_tol * 0.1;
    let frame = Frame::new(scene);
    let (ra, rb) = scene.positions();
    let [r] = try_integrate_semi_infinite(
        |u| {
            let start = n_max.unwrap_or_else(|| scene.default_n_max(u));
            let (m, _, _) = converge(start, tol, |n| {
                let cache = MieTermCache::compute(scene, u, n)?;
                let leg = LegendreTable::new(n, scene.gamma())?;
                Ok(g1_sum(scene, &frame, &cache, &leg))
            })?;
            let g1 = scaled(&m, -u / (4.0 * PI));
            let g0 = g0_between(rb, ra, u);
            let tr = 2.0 * frobenius_dot(&g0, &g1) + frobenius_dot(&g1, &g1);
            let u2 = u * u;
            Ok([-8.0 * PI * u2 * u2 * a.alpha_iu(u) * b.alpha_iu(u) * tr])
        },
        spec,
    )?;
    Ok((r.value, r.err_estimate))
}

/// Body-induced `U_ee` and `U_mm`; the latter is `U_ee` of the dual scene.
pub fn sphere_uee_umm_numeric(
    scene: &SphereScene,
    spec: &QuadratureSpec,
    n_max: Option<usize>,
) -> Result<SphereBody, VdwError> {
    scene.validate()?;
    spec.validate()?;
    scene.sphere.require_finite("the sphere kernel")?;
    let dual = scene.dual();
    let (ee, mm) = rayon::join(|| body_ee(scene, spec, n_max), || body_ee(&dual, spec, n_max));
    let (ee, ee_err) = ee.map_err(|e| e.in_channel("ee"))?;
    let (mm, mm_err) = mm.map_err(|e| e.in_channel("mm"))?;
    Ok(SphereBody {
        u_ee_b: ee,
        u_mm_b: mm,
        err_estimate: ee_err + mm_err,
    })
}

/// Orthonormal `(e_r, e_θ, e_φ)` at atom A and at atom B, in Cartesian components.
pub fn spherical_frames(scene: &SphereScene) -> ([Vec3; 3], [Vec3; 3]) {
    let h = 0.5 * scene.theta;
    let (s, c) = h.sin_cos();
    // A at azimuth 0, B at azimuth π
    let a = [[s, 0.0, c], [c, 0.0, -s], [0.0, 1.0, 0.0]];
    let b = [[-s, 0.0, c], [-c, 0.0, -s], [0.0, -1.0, 0.0]];
    (a, b)
}
