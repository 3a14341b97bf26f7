//! Python bindings. Everything is in reduced units, as in `vdw-core`.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use vdw_core::halfspace::{halfspace_ue_with_error, HalfSpaceScene};
use vdw_core::pair::{bulk_pair_potential, PotentialBreakdown};
use vdw_core::sphere::{mie_coefficients, sphere_uem, sphere_ume, SphereMixed};
use vdw_core::{AtomModel, BulkScene, MaterialModel, Oscillator, QuadratureSpec, SphereScene, Transform, VdwError};

fn to_py(e: VdwError) -> PyErr {
    if e.is_numerical() {
        PyArithmeticError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn spec(rel_tol: f64, abs_tol: f64, transform: &str) -> PyResult<QuadratureSpec> {
    let transform = match transform {
        "rational" => Transform::Rational,
        "exp" => Transform::Exp,
        other => return Err(PyValueError::new_err(format!("unknown transform {other:?}"))),
    };
    let mut s = QuadratureSpec::new(rel_tol, abs_tol).map_err(to_py)?;
    s.transform = transform;
    Ok(s)
}

/// Two-level atom with static polarizability `a0`, magnetizability `b0`.
#[pyclass(frozen, module = "vdw")]
struct Atom {
    inner: AtomModel,
}

#[pymethods]
impl Atom {
    #[new]
    #[pyo3(signature = (a0=0.0, b0=0.0, resonance=1.0))]
    fn new(a0: f64, b0: f64, resonance: f64) -> PyResult<Self> {
        Ok(Self {
            inner: AtomModel::new(a0, b0, resonance).map_err(to_py)?,
        })
    }

    #[getter]
    fn a0(&self) -> f64 {
        self.inner.a0
    }

    #[getter]
    fn b0(&self) -> f64 {
        self.inner.b0
    }

    #[getter]
    fn resonance(&self) -> f64 {
        self.inner.resonance
    }

    fn alpha(&self, u: f64) -> f64 {
        self.inner.alpha_iu(u)
    }

    fn beta(&self, u: f64) -> f64 {
        self.inner.beta_iu(u)
    }

    fn dual(&self) -> Self {
        Self {
            inner: self.inner.dual(),
        }
    }

    fn __repr__(&self) -> String {
        let a = &self.inner;
        format!("Atom(a0={}, b0={}, resonance={})", a.a0, a.b0, a.resonance)
    }
}

/// Homogeneous medium with optional Drude–Lorentz resonances in ε and μ.
///
/// An oscillator is enabled by giving its plasma and transverse frequencies.
#[pyclass(frozen, module = "vdw")]
struct Material {
    inner: MaterialModel,
}

fn oscillator(plasma: Option<f64>, transverse: Option<f64>, damping: f64, which: &str) -> PyResult<Option<Oscillator>> {
    match (plasma, transverse) {
        (None, None) => Ok(None),
        (Some(p), Some(t)) => Oscillator::new(p, t, damping).map(Some).map_err(to_py),
        _ => Err(PyValueError::new_err(format!(
            "{which} oscillator needs both plasma and transverse frequencies"
        ))),
    }
}

#[pymethods]
impl Material {
    #[new]
    #[pyo3(signature = (*, wpe=None, wte=None, ge=0.0, wpm=None, wtm=None, gm=0.0))]
    fn new(
        wpe: Option<f64>,
        wte: Option<f64>,
        ge: f64,
        wpm: Option<f64>,
        wtm: Option<f64>,
        gm: f64,
    ) -> PyResult<Self> {
        let e = oscillator(wpe, wte, ge, "electric")?;
        let m = oscillator(wpm, wtm, gm, "magnetic")?;
        Ok(Self {
            inner: MaterialModel::drude_lorentz(e, m),
        })
    }

    #[staticmethod]
    fn vacuum() -> Self {
        Self {
            inner: MaterialModel::vacuum(),
        }
    }

    /// ε → ∞. Only the half-space kernels accept it.
    #[staticmethod]
    fn perfect_mirror() -> Self {
        Self {
            inner: MaterialModel::perfect_mirror(),
        }
    }

    /// μ → ∞.
    #[staticmethod]
    fn perfect_magnetic_mirror() -> Self {
        Self {
            inner: MaterialModel::perfect_mirror().dual(),
        }
    }

    fn eps(&self, u: f64) -> f64 {
        self.inner.eps_iu(u)
    }

    fn mu(&self, u: f64) -> f64 {
        self.inner.mu_iu(u)
    }

    fn dual(&self) -> Self {
        Self {
            inner: self.inner.dual(),
        }
    }

    fn is_vacuum(&self) -> bool {
        self.inner.is_vacuum()
    }
}

/// Channel breakdown of a pair potential.
#[pyclass(frozen, get_all, module = "vdw")]
struct Breakdown {
    u_ee: f64,
    u_em: f64,
    u_me: f64,
    u_mm: f64,
    total: f64,
    err_estimate: f64,
}

impl From<PotentialBreakdown> for Breakdown {
    fn from(p: PotentialBreakdown) -> Self {
        Self {
            u_ee: p.u_ee,
            u_em: p.u_em,
            u_me: p.u_me,
            u_mm: p.u_mm,
            total: p.total,
            err_estimate: p.errors.total(),
        }
    }
}

#[pymethods]
impl Breakdown {
    fn __repr__(&self) -> String {
        format!(
            "Breakdown(u_ee={:e}, u_em={:e}, u_me={:e}, u_mm={:e}, total={:e})",
            self.u_ee, self.u_em, self.u_me, self.u_mm, self.total
        )
    }
}

/// Sphere-mediated mixed potential: `u0` free-space part, `u1` and `u2` the
/// single and double scattering parts.
#[pyclass(frozen, get_all, module = "vdw")]
struct Mixed {
    u0: f64,
    u1: f64,
    u2: f64,
    total: f64,
    err_estimate: f64,
}

impl From<SphereMixed> for Mixed {
    fn from(m: SphereMixed) -> Self {
        Self {
            u0: m.u0,
            u1: m.u1,
            u2: m.u2,
            total: m.total,
            err_estimate: m.err_estimate,
        }
    }
}

#[pymethods]
impl Mixed {
    fn __repr__(&self) -> String {
        format!(
            "Mixed(u0={:e}, u1={:e}, u2={:e}, total={:e})",
            self.u0, self.u1, self.u2, self.total
        )
    }
}

#[pyfunction]
#[pyo3(signature = (atom_a, atom_b, l, *, rel_tol=1e-9, abs_tol=1e-14, transform="rational"))]
fn freespace(atom_a: &Atom, atom_b: &Atom, l: f64, rel_tol: f64, abs_tol: f64, transform: &str) -> PyResult<Breakdown> {
    let s = spec(rel_tol, abs_tol, transform)?;
    let scene = BulkScene::free_space(atom_a.inner, atom_b.inner, l).map_err(to_py)?;
    Ok(bulk_pair_potential(&scene, &s).map_err(to_py)?.into())
}

#[pyfunction]
#[pyo3(signature = (host, atom_a, atom_b, l, *, local_field=true, rel_tol=1e-9, abs_tol=1e-14, transform="rational"))]
#[allow(clippy::too_many_arguments)]
fn bulk(
    host: &Material,
    atom_a: &Atom,
    atom_b: &Atom,
    l: f64,
    local_field: bool,
    rel_tol: f64,
    abs_tol: f64,
    transform: &str,
) -> PyResult<Breakdown> {
    let s = spec(rel_tol, abs_tol, transform)?;
    let scene = BulkScene::new(host.inner, atom_a.inner, atom_b.inner, l, local_field).map_err(to_py)?;
    Ok(bulk_pair_potential(&scene, &s).map_err(to_py)?.into())
}

/// `(u_e, u_m, err_estimate)` for an atom at distance `z` from a wall.
#[pyfunction]
#[pyo3(signature = (wall, atom, z, *, rel_tol=1e-9, abs_tol=1e-14, transform="rational"))]
fn halfspace(wall: &Material, atom: &Atom, z: f64, rel_tol: f64, abs_tol: f64, transform: &str) -> PyResult<(f64, f64, f64)> {
    let s = spec(rel_tol, abs_tol, transform)?;
    let scene = HalfSpaceScene::new(wall.inner, atom.inner, z).map_err(to_py)?;
    let (ue, ee) = halfspace_ue_with_error(&scene, &s).map_err(to_py)?;
    let (um, em) = halfspace_ue_with_error(&scene.dual(), &s).map_err(to_py)?;
    Ok((ue, um, ee + em))
}

#[allow(clippy::too_many_arguments)]
fn sphere_scene(
    sphere: &Material,
    radius: f64,
    atom_a: &Atom,
    atom_b: &Atom,
    r_a: f64,
    r_b: f64,
    theta: f64,
) -> PyResult<SphereScene> {
    SphereScene::new(sphere.inner, radius, atom_a.inner, atom_b.inner, r_a, r_b, theta).map_err(to_py)
}

/// Mixed potential U_em (atom A electric, B magnetic) next to a sphere.
#[pyfunction]
#[pyo3(signature = (sphere, radius, atom_a, atom_b, r_a, r_b, theta, *, n_max=None, rel_tol=1e-9, abs_tol=1e-14))]
#[allow(clippy::too_many_arguments)]
fn sphere_em(
    sphere: &Material,
    radius: f64,
    atom_a: &Atom,
    atom_b: &Atom,
    r_a: f64,
    r_b: f64,
    theta: f64,
    n_max: Option<usize>,
    rel_tol: f64,
    abs_tol: f64,
) -> PyResult<Mixed> {
    let scene = sphere_scene(sphere, radius, atom_a, atom_b, r_a, r_b, theta)?;
    let s = spec(rel_tol, abs_tol, "rational")?;
    Ok(sphere_uem(&scene, &s, n_max).map_err(to_py)?.into())
}

/// Mixed potential U_me (atom A magnetic, B electric) next to a sphere.
#[pyfunction]
#[pyo3(signature = (sphere, radius, atom_a, atom_b, r_a, r_b, theta, *, n_max=None, rel_tol=1e-9, abs_tol=1e-14))]
#[allow(clippy::too_many_arguments)]
fn sphere_me(
    sphere: &Material,
    radius: f64,
    atom_a: &Atom,
    atom_b: &Atom,
    r_a: f64,
    r_b: f64,
    theta: f64,
    n_max: Option<usize>,
    rel_tol: f64,
    abs_tol: f64,
) -> PyResult<Mixed> {
    let scene = sphere_scene(sphere, radius, atom_a, atom_b, r_a, r_b, theta)?;
    let s = spec(rel_tol, abs_tol, "rational")?;
    Ok(sphere_ume(&scene, &s, n_max).map_err(to_py)?.into())
}

/// `(B_n^M, B_n^N)` at imaginary frequency `iu`.
#[pyfunction]
fn mie(sphere: &Material, radius: f64, u: f64, n: usize) -> PyResult<(f64, f64)> {
    mie_coefficients(&sphere.inner, radius, u, n).map_err(to_py)
}

#[pymodule]
fn vdw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Atom>()?;
    m.add_class::<Material>()?;
    m.add_class::<Breakdown>()?;
    m.add_class::<Mixed>()?;
    m.add_function(wrap_pyfunction!(freespace, m)?)?;
    m.add_function(wrap_pyfunction!(bulk, m)?)?;
    m.add_function(wrap_pyfunction!(halfspace, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_em, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_me, m)?)?;
    m.add_function(wrap_pyfunction!(mie, m)?)?;
    Ok(())
}
