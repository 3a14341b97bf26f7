//! Material and atom response on the imaginary frequency axis, in reduced units.
//!
//! Frequencies are `u = ξ/ω_ref`, lengths are in `λ̄ = c/ω_ref` and energies in
//! `ħω_ref`. Atom spectra are the dimensionless `a(u) = α(iξ)/(4πε₀λ̄³)` and
//! `b(u) = μ₀β(iξ)/(4πλ̄³)`, so that duality is a plain `a ↔ b` swap.

use crate::error::VdwError;

const HBAR: f64 = 1.054_571_817e-34;
const C_LIGHT: f64 = 299_792_458.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedUnits {
    omega_ref: f64,
}

impl ReducedUnits {
    pub fn new(omega_ref: f64) -> Result<Self, VdwError> {
        if !(omega_ref > 0.0) || !omega_ref.is_finite() {
            return Err(VdwError::domain("omega_ref must be positive"));
        }
        Ok(Self { omega_ref })
    }

    pub fn omega_ref(&self) -> f64 {
        self.omega_ref
    }

    /// `λ̄ = c/ω_ref` in metres.
    pub fn length_scale(&self) -> f64 {
        C_LIGHT / self.omega_ref
    }

    /// `ħω_ref` in joules.
    pub fn energy_scale(&self) -> f64 {
        HBAR * self.omega_ref
    }

    pub fn length_to_si(&self, reduced: f64) -> f64 {
        reduced * self.length_scale()
    }

    pub fn length_from_si(&self, metres: f64) -> f64 {
        metres / self.length_scale()
    }

    pub fn energy_to_si(&self, reduced: f64) -> f64 {
        reduced * self.energy_scale()
    }

    /// Dimensionless polarizability from a polarizability volume `α/(4πε₀)` in m³.
    pub fn polarizability_from_volume(&self, volume: f64) -> f64 {
        volume / self.length_scale().powi(3)
    }
}

/// Single Drude–Lorentz resonance, all frequencies in units of `ω_ref`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Oscillator {
    pub plasma: f64,
    pub transverse: f64,
    pub damping: f64,
}

impl Oscillator {
    pub fn new(plasma: f64, transverse: f64, damping: f64) -> Result<Self, VdwError> {
        let ok = |v: f64| v.is_finite() && v >= 0.0;
        if !ok(plasma) || !ok(transverse) || !ok(damping) {
            return Err(VdwError::domain(format!(
                "oscillator parameters must be finite and non-negative: \
                 plasma {plasma}, transverse {transverse}, damping {damping}"
            )));
        }
        if transverse == 0.0 && plasma > 0.0 {
            // ε(0) would be infinite; a metal is a perfect mirror, not an oscillator.
            return Err(VdwError::domain("transverse frequency must be positive"));
        }
        Ok(Self {
            plasma,
            transverse,
            damping,
        })
    }

    fn value(&self, u: f64) -> f64 {
        1.0 + self.plasma * self.plasma
            / (self.transverse * self.transverse + u * u + self.damping * u)
    }
}

/// One of the two response functions (ε or μ) of a material.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Response {
    Unity,
    Resonance(Oscillator),
    /// Limit ε → ∞ (or μ → ∞) at every frequency.
    Infinite,
}

impl Response {
    pub fn at(&self, u: f64) -> f64 {
        match self {
            Response::Unity => 1.0,
            Response::Resonance(osc) => osc.value(u),
            Response::Infinite => f64::INFINITY,
        }
    }

    pub fn is_unity(&self) -> bool {
        match self {
            Response::Unity => true,
            Response::Resonance(osc) => osc.plasma == 0.0,
            Response::Infinite => false,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Response::Infinite)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaterialVariant {
    Vacuum,
    DrudeLorentz,
    PerfectMirror,
}

/// Permittivity and permeability of a homogeneous body at `ω = iξ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaterialModel {
    electric: Response,
    magnetic: Response,
}

impl MaterialModel {
    pub fn vacuum() -> Self {
        Self {
            electric: Response::Unity,
            magnetic: Response::Unity,
        }
    }

    /// Either resonance may be absent, in which case that response is 1.
    pub fn drude_lorentz(electric: Option<Oscillator>, magnetic: Option<Oscillator>) -> Self {
        Self {
            electric: electric.map_or(Response::Unity, Response::Resonance),
            magnetic: magnetic.map_or(Response::Unity, Response::Resonance),
        }
    }

    /// Perfectly conducting body: ε → ∞, μ = 1.
    pub fn perfect_mirror() -> Self {
        Self {
            electric: Response::Infinite,
            magnetic: Response::Unity,
        }
    }

    pub fn from_responses(electric: Response, magnetic: Response) -> Result<Self, VdwError> {
        if electric.is_infinite() && magnetic.is_infinite() {
            return Err(VdwError::domain(
                "ε and μ cannot both be infinite",
            ));
        }
        Ok(Self { electric, magnetic })
    }

    pub fn electric(&self) -> Response {
        self.electric
    }

    pub fn magnetic(&self) -> Response {
        self.magnetic
    }

    pub fn variant(&self) -> MaterialVariant {
        if self.electric.is_infinite() || self.magnetic.is_infinite() {
            MaterialVariant::PerfectMirror
        } else if self.is_vacuum() {
            MaterialVariant::Vacuum
        } else {
            MaterialVariant::DrudeLorentz
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.electric.is_unity() && self.magnetic.is_unity()
    }

    pub fn is_mirror(&self) -> bool {
        self.electric.is_infinite() || self.magnetic.is_infinite()
    }

    /// Duality partner: ε and μ exchanged.
    pub fn dual(&self) -> Self {
        Self {
            electric: self.magnetic,
            magnetic: self.electric,
        }
    }

    pub fn eps_iu(&self, u: f64) -> f64 {
        self.electric.at(u)
    }

    pub fn mu_iu(&self, u: f64) -> f64 {
        self.magnetic.at(u)
    }

    pub fn refractive_index_iu(&self, u: f64) -> f64 {
        (self.eps_iu(u) * self.mu_iu(u)).sqrt()
    }

    /// `3ε/(2ε+1)`, written to stay finite as ε → ∞.
    pub fn lf_electric(&self, u: f64) -> f64 {
        3.0 / (2.0 + 1.0 / self.eps_iu(u))
    }

    /// `3/(2μ+1)`.
    pub fn lf_magnetic(&self, u: f64) -> f64 {
        3.0 / (2.0 * self.mu_iu(u) + 1.0)
    }

    pub(crate) fn require_finite(&self, what: &str) -> Result<(), VdwError> {
        if self.is_mirror() {
            return Err(VdwError::domain(format!(
                "{what} needs a finite ε and μ; perfect mirrors are not supported here"
            )));
        }
        Ok(())
    }
}

/// Isotropic two-level atom.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AtomModel {
    pub a0: f64,
    pub b0: f64,
    pub resonance: f64,
}

impl AtomModel {
    pub fn new(a0: f64, b0: f64, resonance: f64) -> Result<Self, VdwError> {
        if !(a0 >= 0.0 && a0.is_finite()) || !(b0 >= 0.0 && b0.is_finite()) {
            return Err(VdwError::domain(format!(
                "static responses must be finite and non-negative: a0 {a0}, b0 {b0}"
            )));
        }
        if !(resonance > 0.0) || !resonance.is_finite() {
            return Err(VdwError::domain(format!(
                "atomic resonance must be positive, got {resonance}"
            )));
        }
        Ok(Self { a0, b0, resonance })
    }

    pub fn polarizable(a0: f64) -> Self {
        Self {
            a0,
            b0: 0.0,
            resonance: 1.0,
        }
    }

    pub fn magnetizable(b0: f64) -> Self {
        Self {
            a0: 0.0,
            b0,
            resonance: 1.0,
        }
    }

    fn lorentzian(&self, u: f64) -> f64 {
        let t = u / self.resonance;
        1.0 / (1.0 + t * t)
    }

    pub fn alpha_iu(&self, u: f64) -> f64 {
        self.a0 * self.lorentzian(u)
    }

    pub fn beta_iu(&self, u: f64) -> f64 {
        self.b0 * self.lorentzian(u)
    }

    pub fn dual(&self) -> Self {
        Self {
            a0: self.b0,
            b0: self.a0,
            resonance: self.resonance,
        }
    }
}

/// Real-cavity local-field correction around an atom embedded in `host`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalFieldContext {
    pub host: MaterialModel,
    pub enabled: bool,
}

impl LocalFieldContext {
    pub fn electric(&self, u: f64) -> f64 {
        if self.enabled {
            self.host.lf_electric(u)
        } else {
            1.0
        }
    }

    pub fn magnetic(&self, u: f64) -> f64 {
        if self.enabled {
            self.host.lf_magnetic(u)
        } else {
            1.0
        }
    }
}
