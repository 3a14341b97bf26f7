//! Two-atom potentials in free space and in an unbounded magnetoelectric host.
//!
//! Channels are integrated separately so that each depends only on its own
//! inputs; `u_me` is `u_em` with the atoms exchanged.

use std::f64::consts::PI;

use crate::error::VdwError;
use crate::quadrature::{integrate_semi_infinite, Integral, QuadratureSpec};
use crate::response::{AtomModel, LocalFieldContext, MaterialModel};

/// `e^{-2x}(3 + 6x + 5x² + 2x³ + x⁴)`.
pub fn g_kernel(x: f64) -> f64 {
    (-2.0 * x).exp() * (3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x))))
}

/// `e^{-2x}(1 + x)²`.
pub fn h_kernel(x: f64) -> f64 {
    let s = 1.0 + x;
    (-2.0 * x).exp() * s * s
}

/// `∫₀^∞ g(x) dx`.
pub const G_KERNEL_INTEGRAL: f64 = 23.0 / 4.0;
/// `∫₀^∞ x² h(x) dx`.
pub const H_KERNEL_MOMENT: f64 = 7.0 / 4.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BulkScene {
    pub host: MaterialModel,
    pub atom_a: AtomModel,
    pub atom_b: AtomModel,
    pub separation: f64,
    pub local_field: bool,
}

impl BulkScene {
    pub fn new(
        host: MaterialModel,
        atom_a: AtomModel,
        atom_b: AtomModel,
        separation: f64,
        local_field: bool,
    ) -> Result<Self, VdwError> {
        let scene = Self {
            host,
            atom_a,
            atom_b,
            separation,
            local_field,
        };
        scene.validate()?;
        Ok(scene)
    }

    pub fn free_space(atom_a: AtomModel, atom_b: AtomModel, separation: f64) -> Result<Self, VdwError> {
        Self::new(MaterialModel::vacuum(), atom_a, atom_b, separation, true)
    }

    pub fn validate(&self) -> Result<(), VdwError> {
        if !(self.separation > 0.0) || !self.separation.is_finite() {
            return Err(VdwError::domain(format!(
                "separation must be positive, got {}",
                self.separation
            )));
        }
        Ok(())
    }

    pub fn lf(&self) -> LocalFieldContext {
        LocalFieldContext {
            host: self.host,
            enabled: self.local_field,
        }
    }

    /// ε ↔ μ in the host and a ↔ b for both atoms.
    pub fn dual(&self) -> Self {
        Self {
            host: self.host.dual(),
            atom_a: self.atom_a.dual(),
            atom_b: self.atom_b.dual(),
            ..*self
        }
    }

    /// Atoms A and B exchanged.
    pub fn exchange(&self) -> Self {
        Self {
            atom_a: self.atom_b,
            atom_b: self.atom_a,
            ..*self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ChannelErrors {
    pub ee: f64,
    pub em: f64,
    pub me: f64,
    pub mm: f64,
}

impl ChannelErrors {
    pub fn total(&self) -> f64 {
        self.ee + self.em + self.me + self.mm
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PotentialBreakdown {
    pub u_ee: f64,
    pub u_em: f64,
    pub u_me: f64,
    pub u_mm: f64,
    pub total: f64,
    pub errors: ChannelErrors,
}

impl PotentialBreakdown {
    pub fn from_channels(u_ee: f64, u_em: f64, u_me: f64, u_mm: f64, errors: ChannelErrors) -> Self {
        Self {
            u_ee,
            u_em,
            u_me,
            u_mm,
            total: u_ee + u_em + u_me + u_mm,
            errors,
        }
    }
}

/// Medium factors multiplying each channel integrand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MediumFactors {
    pub ee: f64,
    pub em: f64,
    pub mm: f64,
}

/// `81ε²/(2ε+1)⁴`, `81ε²μ²/((2ε+1)²(2μ+1)²)`, `81μ²/(2μ+1)⁴`, finite for infinite ε or μ.
pub fn corrected_medium_factors(eps: f64, mu: f64) -> MediumFactors {
    // 3ε/(2ε+1) written as 3/(2+1/ε)
    let le = 3.0 / (2.0 + 1.0 / eps);
    let lm = 3.0 / (2.0 + 1.0 / mu);
    let re = le * (3.0 / (2.0 * eps + 1.0));
    let rm = lm * (3.0 / (2.0 * mu + 1.0));
    MediumFactors {
        ee: re * re,
        em: (le * lm) * (le * lm),
        mm: rm * rm,
    }
}

/// `1/ε²`, `μ²`, `μ²`.
pub fn uncorrected_medium_factors(eps: f64, mu: f64) -> MediumFactors {
    MediumFactors {
        ee: 1.0 / (eps * eps),
        em: mu * mu,
        mm: mu * mu,
    }
}

fn medium_factors(scene: &BulkScene, u: f64) -> MediumFactors {
    let eps = scene.host.eps_iu(u);
    let mu = scene.host.mu_iu(u);
    if scene.local_field {
        corrected_medium_factors(eps, mu)
    } else {
        uncorrected_medium_factors(eps, mu)
    }
}

fn run(
    channel: &'static str,
    prefactor: f64,
    spec: &QuadratureSpec,
    f: impl Fn(f64) -> f64,
) -> Result<Integral, VdwError> {
    integrate_semi_infinite(f, &spec.for_prefactor(prefactor))
        .map(|r| r.scaled(prefactor))
        .map_err(|e| e.in_channel(channel))
}

fn em_channel(
    scene: &BulkScene,
    a_atom: &AtomModel,
    b_atom: &AtomModel,
    spec: &QuadratureSpec,
    channel: &'static str,
) -> Result<Integral, VdwError> {
    let l = scene.separation;
    if a_atom.a0 == 0.0 || b_atom.b0 == 0.0 {
        return Ok(Integral::default());
    }
    run(channel, 1.0 / (PI * l.powi(4)), spec, |u| {
        let n = scene.host.refractive_index_iu(u);
        u * u * a_atom.alpha_iu(u) * b_atom.beta_iu(u) * medium_factors(scene, u).em * h_kernel(n * u * l)
    })
}

/// All four channels of the two-atom potential in a bulk host.
pub fn bulk_pair_potential(scene: &BulkScene, spec: &QuadratureSpec) -> Result<PotentialBreakdown, VdwError> {
    scene.validate()?;
    spec.validate()?;
    scene.host.require_finite("the bulk potential")?;
    let l = scene.separation;
    let (a, b) = (&scene.atom_a, &scene.atom_b);
    let pre6 = -1.0 / (PI * l.powi(6));

    let ee = if a.a0 == 0.0 || b.a0 == 0.0 {
        Integral::default()
    } else {
        run("ee", pre6, spec, |u| {
            let n = scene.host.refractive_index_iu(u);
            a.alpha_iu(u) * b.alpha_iu(u) * medium_factors(scene, u).ee * g_kernel(n * u * l)
        })?
    };
    let mm = if a.b0 == 0.0 || b.b0 == 0.0 {
        Integral::default()
    } else {
        run("mm", pre6, spec, |u| {
            let n = scene.host.refractive_index_iu(u);
            a.beta_iu(u) * b.beta_iu(u) * medium_factors(scene, u).mm * g_kernel(n * u * l)
        })?
    };
    let em = em_channel(scene, a, b, spec, "em")?;
    let me = em_channel(scene, b, a, spec, "me")?;
    Ok(PotentialBreakdown::from_channels(
        ee.value,
        em.value,
        me.value,
        mm.value,
        ChannelErrors {
            ee: ee.err_estimate,
            em: em.err_estimate,
            me: me.err_estimate,
            mm: mm.err_estimate,
        },
    ))
}

/// Short-distance form: `g → 3`, `h → 1`, so `u_ee ∝ l⁻⁶` and `u_em ∝ l⁻⁴`.
pub fn bulk_pair_nonretarded(scene: &BulkScene, spec: &QuadratureSpec) -> Result<PotentialBreakdown, VdwError> {
    scene.validate()?;
    spec.validate()?;
    let l = scene.separation;
    let (a, b) = (&scene.atom_a, &scene.atom_b);
    let pre6 = -3.0 / (PI * l.powi(6));
    let pre4 = 1.0 / (PI * l.powi(4));
    let zero = Integral::default();

    let ee = if a.a0 == 0.0 || b.a0 == 0.0 {
        zero
    } else {
        run("ee", pre6, spec, |u| a.alpha_iu(u) * b.alpha_iu(u) * medium_factors(scene, u).ee)?
    };
    let mm = if a.b0 == 0.0 || b.b0 == 0.0 {
        zero
    } else {
        run("mm", pre6, spec, |u| a.beta_iu(u) * b.beta_iu(u) * medium_factors(scene, u).mm)?
    };
    let mixed = |x: &AtomModel, y: &AtomModel, channel| {
        if x.a0 == 0.0 || y.b0 == 0.0 {
            Ok(zero)
        } else {
            run(channel, pre4, spec, |u| {
                u * u * x.alpha_iu(u) * y.beta_iu(u) * medium_factors(scene, u).em
            })
        }
    };
    let em = mixed(a, b, "em")?;
    let me = mixed(b, a, "me")?;
    Ok(PotentialBreakdown::from_channels(
        ee.value,
        em.value,
        me.value,
        mm.value,
        ChannelErrors {
            ee: ee.err_estimate,
            em: em.err_estimate,
            me: me.err_estimate,
            mm: mm.err_estimate,
        },
    ))
}

/// Long-distance form with all responses replaced by their static values.
pub fn bulk_pair_retarded(scene: &BulkScene) -> Result<PotentialBreakdown, VdwError> {
    scene.validate()?;
    scene.host.require_finite("the retarded bulk potential")?;
    let l7 = scene.separation.powi(7);
    let eps = scene.host.eps_iu(0.0);
    let mu = scene.host.mu_iu(0.0);
    let n = (eps * mu).sqrt();
    let m = if scene.local_field {
        corrected_medium_factors(eps, mu)
    } else {
        uncorrected_medium_factors(eps, mu)
    };
    let (a, b) = (&scene.atom_a, &scene.atom_b);
    let ee = -G_KERNEL_INTEGRAL / PI * a.a0 * b.a0 * m.ee / (n * l7);
    let mm = -G_KERNEL_INTEGRAL / PI * a.b0 * b.b0 * m.mm / (n * l7);
    let mixed = H_KERNEL_MOMENT / PI * m.em / (n * n * n * l7);
    Ok(PotentialBreakdown::from_channels(
        ee,
        mixed * a.a0 * b.b0,
        mixed * b.a0 * a.b0,
        mm,
        ChannelErrors::default(),
    ))
}

pub fn freespace_pair_potential(
    atom_a: &AtomModel,
    atom_b: &AtomModel,
    l: f64,
    spec: &QuadratureSpec,
) -> Result<PotentialBreakdown, VdwError> {
    bulk_pair_potential(&BulkScene::free_space(*atom_a, *atom_b, l)?, spec)
}
