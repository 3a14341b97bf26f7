//! Mie coefficients at imaginary frequency and the products that enter the sphere series.
//!
//! With `x₀ = uR`, `x₁ = n(iu) x₀` and the Riccati log-derivatives
//! `Dᵢ = [x i_n]'/i_n`, `Dₖ = [x k_n]'/k_n`,
//!
//! ```text
//! B_n^M(iu) = (-1)^n [i_n(x₀)/k_n(x₀)] (μ Dᵢ(x₀) - Dᵢ(x₁)) / (μ Dₖ(x₀) - Dᵢ(x₁))
//! ```
//!
//! and `B_n^N` is the same with `ε` in place of `μ`. The sphere series only ever
//! need `B_n Q_n`-type products, in which the phases of the spherical Hankel
//! functions cancel against `(-1)^n`.

use crate::error::VdwError;
use crate::response::MaterialModel;
use crate::specfun::BesselSeq;

use super::SphereScene;

/// Signed log-magnitude pair, `value = sign · e^{ln}`.
#[derive(Clone, Copy, Debug)]
struct LogValue {
    sign: f64,
    ln: f64,
}

impl LogValue {
    const ZERO: LogValue = LogValue {
        sign: 0.0,
        ln: f64::NEG_INFINITY,
    };

    fn value(self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.ln.exp()
        }
    }

    fn times_ln(self, ln: f64) -> LogValue {
        LogValue {
            sign: self.sign,
            ln: self.ln + ln,
        }
    }
}

/// Reduced Mie coefficients `(-1)^n B_n^M e^{-2uR}`, `(-1)^n B_n^N e^{-2uR}` for
/// `n = 1..=n_max`, index 0 unused.
struct ReducedMie {
    magnetic: Vec<LogValue>,
    electric: Vec<LogValue>,
}

fn reduced_mie(sphere: &MaterialModel, radius: f64, u: f64, n_max: usize) -> Result<ReducedMie, VdwError> {
    sphere.require_finite("the sphere kernel")?;
    if sphere.is_vacuum() {
        return Ok(ReducedMie {
            magnetic: vec![LogValue::ZERO; n_max + 1],
            electric: vec![LogValue::ZERO; n_max + 1],
        });
    }
    let eps = sphere.eps_iu(u);
    let mu = sphere.mu_iu(u);
    let x0 = u * radius;
    let x1 = (eps * mu).sqrt() * x0;
    let b0 = BesselSeq::new(n_max, x0)?;
    let b1 = BesselSeq::new(n_max, x1)?;

    let mut magnetic = Vec::with_capacity(n_max + 1);
    let mut electric = Vec::with_capacity(n_max + 1);
    magnetic.push(LogValue::ZERO);
    electric.push(LogValue::ZERO);
    for n in 1..=n_max {
        let ratio = b0.ln_i_scaled(n) - b0.ln_k_scaled(n);
        let q0 = b0.x_ratio_first(n);
        let q1 = b1.x_ratio_first(n);
        let di1 = b1.d_first(n);
        let dk0 = b0.d_third(n);
        let m1 = (n + 1) as f64;
        let coefficient = |resp: f64| {
            // numerator μDᵢ(x₀) - Dᵢ(x₁) rewritten so that it vanishes exactly for μ = 1, x₁ = x₀
            let num = (resp - 1.0) * m1 + resp * q0 - q1;
            let den = resp * dk0 - di1;
            let r = num / den;
            if r == 0.0 {
                LogValue::ZERO
            } else {
                LogValue {
                    sign: r.signum(),
                    ln: r.abs().ln() + ratio,
                }
            }
        };
        magnetic.push(coefficient(mu));
        electric.push(coefficient(eps));
    }
    Ok(ReducedMie { magnetic, electric })
}

/// `(B_n^M(iu), B_n^N(iu))`; both are real on the imaginary axis.
pub fn mie_coefficients(sphere: &MaterialModel, radius: f64, u: f64, n: usize) -> Result<(f64, f64), VdwError> {
    if n < 1 {
        return Err(VdwError::domain("Mie order must be at least 1"));
    }
    if !(u > 0.0) || !(radius > 0.0) {
        return Err(VdwError::domain(format!(
            "Mie coefficients need u > 0 and R > 0, got u = {u}, R = {radius}"
        )));
    }
    let mie = reduced_mie(sphere, radius, u, n)?;
    let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
    let growth = 2.0 * u * radius;
    let bm = parity * mie.magnetic[n].times_ln(growth).value();
    let bn = parity * mie.electric[n].times_ln(growth).value();
    if !bm.is_finite() || !bn.is_finite() {
        return Err(VdwError::Overflow { n, x: u * radius });
    }
    Ok((bm, bn))
}

/// Products at one order, in the notation `Q_n = h_n(k₀r_A)h_n(k₀r_B)`,
/// `Q_n^A = h_n(k₀r_B)[z h_n(z)]'_{k₀r_A}`, `Q_n^B = h_n(k₀r_A)[z h_n(z)]'_{k₀r_B}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MieTerm {
    pub n: usize,
    pub bm_qn: f64,
    pub bn_qn: f64,
    pub bm_qb: f64,
    pub bn_qa: f64,
    /// `[x k_n(x)]'/k_n(x)` at `x = u r_a`.
    pub dk_a: f64,
    /// Same at `x = u r_b`.
    pub dk_b: f64,
}

/// All products needed by the sphere series at one frequency node.
#[derive(Clone, Debug)]
pub struct MieTermCache {
    u: f64,
    terms: Vec<MieTerm>,
}

impl MieTermCache {
    pub fn compute(scene: &SphereScene, u: f64, n_max: usize) -> Result<Self, VdwError> {
        if !(u > 0.0) || !u.is_finite() {
            return Err(VdwError::domain(format!("frequency must be positive, got {u}")));
        }
        if n_max < 1 {
            return Err(VdwError::domain("truncation order must be at least 1"));
        }
        let mie = reduced_mie(&scene.sphere, scene.radius, u, n_max)?;
        let ka = BesselSeq::new(n_max, u * scene.r_a)?;
        let kb = BesselSeq::new(n_max, u * scene.r_b)?;
        // e^{2uR} from the Mie ratio against e^{-u r_a - u r_b} from the two k_n
        let decay = -u * ((scene.r_a - scene.radius) + (scene.r_b - scene.radius));
        let mut terms = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let kk = ka.ln_k_scaled(n) + kb.ln_k_scaled(n) + decay;
            let bm_qn = mie.magnetic[n].times_ln(kk).value();
            let bn_qn = mie.electric[n].times_ln(kk).value();
            let dk_a = ka.d_third(n);
            let dk_b = kb.d_third(n);
            terms.push(MieTerm {
                n,
                bm_qn,
                bn_qn,
                bm_qb: bm_qn * dk_b,
                bn_qa: bn_qn * dk_a,
                dk_a,
                dk_b,
            });
        }
        Ok(Self { u, terms })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn n_max(&self) -> usize {
        self.terms.len()
    }

    /// Term of order `n >= 1`.
    pub fn term(&self, n: usize) -> &MieTerm {
        &self.terms[n - 1]
    }

    pub fn terms(&self) -> &[MieTerm] {
        &self.terms
    }
}
