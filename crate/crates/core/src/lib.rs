//! Van der Waals potentials of polarizable and magnetizable ground-state atoms.
//!
//! Everything is in reduced units: frequencies `u = ξ/ω_ref`, lengths in
//! `λ̄ = c/ω_ref`, energies in `ħω_ref` (see [`response::ReducedUnits`]).
//! Potentials are given as imaginary-frequency integrals evaluated with the
//! adaptive rules in [`quadrature`].
//!
//! Geometries:
//! * [`pair`]: two atoms in free space or in an unbounded host medium,
//! * [`halfspace`]: one atom in front of a planar magnetoelectric wall,
//! * [`sphere`]: two atoms next to a magnetoelectric sphere.

pub mod error;
pub mod halfspace;
pub mod pair;
pub mod quadrature;
pub mod response;
pub mod specfun;
pub mod sphere;

pub use error::VdwError;
pub use halfspace::HalfSpaceScene;
pub use pair::{BulkScene, PotentialBreakdown};
pub use quadrature::{QuadratureSpec, Transform};
pub use response::{AtomModel, MaterialModel, Oscillator};
pub use sphere::SphereScene;
