//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite and semi-infinite intervals.
//!
//! Semi-infinite ranges are mapped onto `[0, 1)` by one of two transforms; the
//! endpoint `t = 1` is never evaluated. Vector-valued integrands share nodes
//! across components, and each component must meet the tolerance separately.

use crate::error::VdwError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Transform {
    /// `u = t/(1-t)`: handles algebraic decay down to `u^{-2}`.
    #[default]
    Rational,
    /// `u = -ln(1-t)`: for exponentially decaying integrands only.
    Exp,
}

impl Transform {
    fn map(self, t: f64) -> (f64, f64) {
        match self {
            Transform::Rational => {
                let s = 1.0 - t;
                (t / s, 1.0 / (s * s))
            }
            Transform::Exp => {
                let s = 1.0 - t;
                (-(-t).ln_1p(), 1.0 / s)
            }
        }
    }
}

/// Accuracy request. `abs_tol` is in the units of the final potential; kernels
/// divide it by their geometric prefactor before integrating.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub transform: Transform,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            transform: Transform::Rational,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Result<Self, VdwError> {
        let spec = Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), VdwError> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(VdwError::domain(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(VdwError::domain(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 10 {
            return Err(VdwError::domain(format!(
                "max_subdivisions must be at least 10, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }

    /// Spec for an integral that will be multiplied by `prefactor`.
    pub fn for_prefactor(&self, prefactor: f64) -> Self {
        let p = prefactor.abs();
        let abs_tol = if p > 0.0 && p.is_finite() {
            self.abs_tol / p
        } else {
            self.abs_tol
        };
        Self { abs_tol, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Integral {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

impl Integral {
    /// Multiply value and error by a constant factor.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            evaluations: self.evaluations,
        }
    }
}

pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<Integral, VdwError>
where
    F: Fn(f64) -> f64,
{
    integrate_interval(f, 0.0, f64::INFINITY, spec)
}

/// `hi` may be `f64::INFINITY`.
pub fn integrate_interval<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Integral, VdwError>
where
    F: Fn(f64) -> f64,
{
    let [r] = try_integrate_interval(|u| Ok([f(u)]), lo, hi, spec)?;
    Ok(r)
}

pub fn try_integrate_semi_infinite<const N: usize, F>(
    f: F,
    spec: &QuadratureSpec,
) -> Result<[Integral; N], VdwError>
where
    F: Fn(f64) -> Result<[f64; N], VdwError>,
{
    try_integrate_interval(f, 0.0, f64::INFINITY, spec)
}

pub fn try_integrate_interval<const N: usize, F>(
    f: F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<[Integral; N], VdwError>
where
    F: Fn(f64) -> Result<[f64; N], VdwError>,
{
    spec.validate()?;
    if !lo.is_finite() || hi.is_nan() || !(lo < hi) {
        return Err(VdwError::domain(format!(
            "integration interval [{lo}, {hi}] is empty or not bounded below"
        )));
    }
    if hi.is_infinite() {
        let transform = spec.transform;
        let to_u = move |t: f64| lo + transform.map(t).0;
        let g = |t: f64| {
            let (x, jac) = transform.map(t);
            let u = lo + x;
            let mut v = f(u)?;
            check_finite(&v, u)?;
            for c in v.iter_mut() {
                *c *= jac;
            }
            Ok(v)
        };
        adaptive(g, 0.0, 1.0, spec, to_u)
    } else {
        let g = |u: f64| {
            let v = f(u)?;
            check_finite(&v, u)?;
            Ok(v)
        };
        adaptive(g, lo, hi, spec, |u| u)
    }
}

fn check_finite<const N: usize>(v: &[f64; N], u: f64) -> Result<(), VdwError> {
    match v.iter().find(|c| !c.is_finite()) {
        Some(&bad) => Err(VdwError::NonFinite { at: u, value: bad }),
        None => Ok(()),
    }
}

// Kronrod abscissae (descending, centre last) and weights; Gauss weights pair with
// the odd-indexed abscissae and the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    err: [f64; N],
    splittable: bool,
}

fn gk15<const N: usize, G>(g: &G, a: f64, b: f64) -> Result<([f64; N], [f64; N]), VdwError>
where
    G: Fn(f64) -> Result<[f64; N], VdwError>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv1 = [[0.0; N]; 7];
    let mut fv2 = [[0.0; N]; 7];
    for j in 0..7 {
        let dx = h * XGK[j];
        fv1[j] = g(c - dx)?;
        fv2[j] = g(c + dx)?;
    }
    let fc = g(c)?;

    let mut value = [0.0; N];
    let mut err = [0.0; N];
    for k in 0..N {
        let mut resk = WGK[7] * fc[k];
        let mut resg = WG[3] * fc[k];
        let mut resabs = resk.abs();
        for j in 0..7 {
            let s = fv1[j][k] + fv2[j][k];
            resk += WGK[j] * s;
            resabs += WGK[j] * (fv1[j][k].abs() + fv2[j][k].abs());
            if j % 2 == 1 {
                resg += WG[j / 2] * s;
            }
        }
        let mean = 0.5 * resk;
        let mut resasc = WGK[7] * (fc[k] - mean).abs();
        for j in 0..7 {
            resasc += WGK[j] * ((fv1[j][k] - mean).abs() + (fv2[j][k] - mean).abs());
        }
        let ah = h.abs();
        let resabs = resabs * ah;
        let resasc = resasc * ah;
        let mut e = ((resk - resg) * h).abs();
        if resasc != 0.0 && e != 0.0 {
            e = resasc * (200.0 * e / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            e = e.max(50.0 * f64::EPSILON * resabs);
        }
        value[k] = resk * h;
        err[k] = e;
    }
    Ok((value, err))
}

fn adaptive<const N: usize, G, M>(
    g: G,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    to_u: M,
) -> Result<[Integral; N], VdwError>
where
    G: Fn(f64) -> Result<[f64; N], VdwError>,
    M: Fn(f64) -> f64,
{
    const INITIAL: usize = 4;
    let mut panels: Vec<Panel<N>> = Vec::with_capacity(spec.max_subdivisions + INITIAL);
    let width = (b - a) / INITIAL as f64;
    for i in 0..INITIAL {
        let pa = a + width * i as f64;
        let pb = if i + 1 == INITIAL { b } else { pa + width };
        let (value, err) = gk15(&g, pa, pb)?;
        panels.push(Panel {
            a: pa,
            b: pb,
            value,
            err,
            splittable: true,
        });
    }

    loop {
        let mut total = [0.0; N];
        let mut total_err = [0.0; N];
        for p in &panels {
            for k in 0..N {
                total[k] += p.value[k];
                total_err[k] += p.err[k];
            }
        }
        let tol: [f64; N] = std::array::from_fn(|k| (spec.rel_tol * total[k].abs()).max(spec.abs_tol));
        let done = (0..N).all(|k| total_err[k] <= tol[k]);
        let evaluations = 15 * panels.len();
        if done {
            return Ok(std::array::from_fn(|k| Integral {
                value: total[k],
                err_estimate: total_err[k],
                evaluations,
            }));
        }

        // Split the panel that contributes most to the worst-off component.
        let weight = |p: &Panel<N>| {
            (0..N)
                .map(|k| p.err[k] / tol[k].max(f64::MIN_POSITIVE))
                .fold(0.0, f64::max)
        };
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .max_by(|(_, x), (_, y)| weight(x).total_cmp(&weight(y)))
            .map(|(i, _)| i);

        let stop = match worst {
            None => true,
            Some(_) => panels.len() >= spec.max_subdivisions,
        };
        if stop {
            let k = (0..N)
                .max_by(|&i, &j| {
                    (total_err[i] / tol[i].max(f64::MIN_POSITIVE))
                        .total_cmp(&(total_err[j] / tol[j].max(f64::MIN_POSITIVE)))
                })
                .unwrap_or(0);
            let wp = panels
                .iter()
                .max_by(|x, y| x.err[k].total_cmp(&y.err[k]))
                .expect("at least one panel");
            return Err(VdwError::NonConvergence {
                value: total[k],
                err_estimate: total_err[k],
                panels: panels.len(),
                worst_lo: to_u(wp.a),
                worst_hi: to_u(wp.b),
            });
        }

        let i = worst.expect("checked above");
        let (pa, pb) = (panels[i].a, panels[i].b);
        let mid = 0.5 * (pa + pb);
        if !(mid > pa && mid < pb) || (pb - pa) <= 4.0 * f64::EPSILON * pa.abs().max(pb.abs()) {
            panels[i].splittable = false;
            continue;
        }
        let (v1, e1) = gk15(&g, pa, mid)?;
        let (v2, e2) = gk15(&g, mid, pb)?;
        panels[i] = Panel {
            a: pa,
            b: mid,
            value: v1,
            err: e1,
            splittable: true,
        };
        panels.push(Panel {
            a: mid,
            b: pb,
            value: v2,
            err: e2,
            splittable: true,
        });
    }
}
