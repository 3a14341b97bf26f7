//! Two atoms next to a homogeneous magnetoelectric sphere centred at the origin.
//!
//! Atom A sits at `(r_a, Θ/2, 0)` and atom B at `(r_b, Θ/2, π)` in spherical
//! coordinates, so both lie in the xz-plane with angular separation `Θ`.
//! Sphere series are evaluated at imaginary frequency in real arithmetic, with
//! the Mie products `B_n Q_n` assembled in the log domain.

mod dyadic;
mod limits;
mod mie;
mod series;

pub use dyadic::{
    g0_cartesian, g1_cartesian, k0_cartesian, k1_cartesian, spherical_frames, sphere_uee_umm_numeric, Mat3,
    SphereBody,
};
pub use limits::{sphere_uem_large, sphere_uem_small, three_body_uem, LIMIT_RATIO};
pub use mie::{mie_coefficients, MieTerm, MieTermCache};
pub use series::{
    k1_tensor_components, sphere_uem, sphere_ume, KComponents, SphereMixed, SERIES_CAP,
};

use crate::error::VdwError;
use crate::response::{AtomModel, MaterialModel};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereScene {
    pub sphere: MaterialModel,
    pub radius: f64,
    pub atom_a: AtomModel,
    pub atom_b: AtomModel,
    pub r_a: f64,
    pub r_b: f64,
    pub theta: f64,
}

impl SphereScene {
    pub fn new(
        sphere: MaterialModel,
        radius: f64,
        atom_a: AtomModel,
        atom_b: AtomModel,
        r_a: f64,
        r_b: f64,
        theta: f64,
    ) -> Result<Self, VdwError> {
        let scene = Self {
            sphere,
            radius,
            atom_a,
            atom_b,
            r_a,
            r_b,
            theta,
        };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<(), VdwError> {
        let finite_pos = |v: f64| v > 0.0 && v.is_finite();
        if !finite_pos(self.radius) {
            return Err(VdwError::domain(format!("sphere radius must be positive, got {}", self.radius)));
        }
        if !(self.r_a > self.radius) || !self.r_a.is_finite() {
            return Err(VdwError::domain(format!(
                "atom A must lie outside the sphere: r_a = {} <= R = {}",
                self.r_a, self.radius
            )));
        }
        if !(self.r_b > self.radius) || !self.r_b.is_finite() {
            return Err(VdwError::domain(format!(
                "atom B must lie outside the sphere: r_b = {} <= R = {}",
                self.r_b, self.radius
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.theta) {
            return Err(VdwError::domain(format!("theta = {} outside [0, π]", self.theta)));
        }
        if !(self.separation() > 0.0) {
            return Err(VdwError::domain("the two atoms coincide"));
        }
        Ok(())
    }

    pub fn gamma(&self) -> f64 {
        self.theta.cos()
    }

    /// Chord distance `l`, from `l² = (r_a - r_b)² + 4 r_a r_b sin²(Θ/2)`.
    pub fn separation(&self) -> f64 {
        let s = (0.5 * self.theta).sin();
        let d = self.r_a - self.r_b;
        (d * d + 4.0 * self.r_a * self.r_b * s * s).sqrt()
    }

    /// Component of `r_B - r_A` along `r̂_A`: `r_b cos Θ - r_a`.
    pub fn l_a(&self) -> f64 {
        self.r_b * self.gamma() - self.r_a
    }

    /// Component of `r_B - r_A` along `-r̂_B`: `r_a cos Θ - r_b`.
    pub fn l_b(&self) -> f64 {
        self.r_a * self.gamma() - self.r_b
    }

    /// Cartesian positions of A and B.
    pub fn positions(&self) -> ([f64; 3], [f64; 3]) {
        let (s, c) = (0.5 * self.theta).sin_cos();
        (
            [self.r_a * s, 0.0, self.r_a * c],
            [-self.r_b * s, 0.0, self.r_b * c],
        )
    }

    /// Atoms A and B exchanged (positions and responses).
    pub fn exchange(&self) -> Self {
        Self {
            atom_a: self.atom_b,
            atom_b: self.atom_a,
            r_a: self.r_b,
            r_b: self.r_a,
            ..*self
        }
    }

    /// ε ↔ μ in the sphere and a ↔ b for both atoms.
    pub fn dual(&self) -> Self {
        Self {
            sphere: self.sphere.dual(),
            atom_a: self.atom_a.dual(),
            atom_b: self.atom_b.dual(),
            ..*self
        }
    }

    /// Starting truncation order at frequency `u`.
    pub fn default_n_max(&self, u: f64) -> usize {
        let x = (u * self.r_a.max(self.r_b)).ceil();
        let x = if x.is_finite() { x.min(SERIES_CAP as f64) as usize } else { SERIES_CAP };
        (x + 15).max(10)
    }
}
