//! Legendre polynomials and modified spherical Bessel functions of real argument.
//!
//! The Bessel pair used throughout the crate is
//!
//! * `i_n(x)`: first kind, `i_0(x) = sinh(x)/x`, regular at the origin;
//! * `k_n(x)`: third kind, `k_0(x) = e^{-x}/x`, decaying at infinity.
//!
//! With this normalization `j_n(ix) = i^n i_n(x)` and `h_n^{(1)}(ix) = -i^{-n} k_n(x)`,
//! and the Wronskian is `i_n k_n' - i_n' k_n = -1/x^2` for every `n`.
//! Values are carried in the log domain so that products of a growing and a
//! decaying function never overflow in intermediate steps.

use crate::error::VdwError;

/// `P_n(γ)`, `P_n'(γ)` and `F_n(γ) = n(n+1)P_n(γ) - γP_n'(γ)` at one order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LegendreEval {
    pub order: usize,
    pub gamma: f64,
    pub p: f64,
    pub dp: f64,
    pub f: f64,
}

/// Legendre values for all orders `0..=n_max` at one argument.
///
/// Second derivatives are included because the Cartesian sphere dyadics
/// need them; they come from the exact recurrence
/// `P''_{n+1} = P''_{n-1} + (2n+1)P'_n` rather than the Legendre ODE, which is
/// singular at `γ = ±1`.
#[derive(Clone, Debug)]
pub struct LegendreTable {
    gamma: f64,
    p: Vec<f64>,
    dp: Vec<f64>,
    ddp: Vec<f64>,
}

impl LegendreTable {
    pub fn new(n_max: usize, gamma: f64) -> Result<Self, VdwError> {
        check_gamma(gamma)?;
        let len = n_max + 1;
        let mut p = vec![0.0; len.max(2)];
        let mut dp = vec![0.0; len.max(2)];
        let mut ddp = vec![0.0; len.max(2)];
        p[0] = 1.0;
        p[1] = gamma;
        dp[1] = 1.0;
        for n in 1..len.saturating_sub(1) {
            let nf = n as f64;
            p[n + 1] = ((2.0 * nf + 1.0) * gamma * p[n] - nf * p[n - 1]) / (nf + 1.0);
            dp[n + 1] = dp[n - 1] + (2.0 * nf + 1.0) * p[n];
            ddp[n + 1] = ddp[n - 1] + (2.0 * nf + 1.0) * dp[n];
        }
        p.truncate(len);
        dp.truncate(len);
        ddp.truncate(len);
        Ok(Self { gamma, p, dp, ddp })
    }

    pub fn n_max(&self) -> usize {
        self.p.len() - 1
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn p(&self, n: usize) -> f64 {
        self.p[n]
    }

    pub fn dp(&self, n: usize) -> f64 {
        self.dp[n]
    }

    pub fn ddp(&self, n: usize) -> f64 {
        self.ddp[n]
    }

    pub fn f(&self, n: usize) -> f64 {
        let nf = n as f64;
        nf * (nf + 1.0) * self.p[n] - self.gamma * self.dp[n]
    }

    pub fn eval(&self, n: usize) -> LegendreEval {
        LegendreEval {
            order: n,
            gamma: self.gamma,
            p: self.p[n],
            dp: self.dp[n],
            f: self.f(n),
        }
    }
}

fn check_gamma(gamma: f64) -> Result<(), VdwError> {
    if !(-1.0..=1.0).contains(&gamma) {
        return Err(VdwError::domain(format!(
            "Legendre argument {gamma} outside [-1, 1]"
        )));
    }
    Ok(())
}

pub fn legendre_pn_dpn(n: usize, gamma: f64) -> Result<LegendreEval, VdwError> {
    if n < 1 {
        return Err(VdwError::domain("Legendre order must be at least 1"));
    }
    Ok(LegendreTable::new(n, gamma)?.eval(n))
}

/// `n!!` for `n >= -1`, with `(-1)!! = 0!! = 1`. Overflows to infinity past `n = 300`.
pub fn double_factorial(n: i64) -> Result<f64, VdwError> {
    if n < -1 {
        return Err(VdwError::domain(format!("double factorial of {n}")));
    }
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    Ok(acc)
}

/// `ln(n!!)` for `n >= -1`.
pub fn ln_double_factorial(n: i64) -> Result<f64, VdwError> {
    if n < -1 {
        return Err(VdwError::domain(format!("double factorial of {n}")));
    }
    let mut acc = 0.0;
    let mut k = n;
    while k > 1 {
        acc += (k as f64).ln();
        k -= 2;
    }
    Ok(acc)
}

/// Exponentially scaled Bessel pair at one order.
///
/// `mantissa_first_kind = i_n(x) e^{-x}`, `mantissa_third_kind = k_n(x) e^{x}`;
/// the derivative mantissas are `[x i_n(x)]' e^{-x}` and `[x k_n(x)]' e^{x}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledBessel {
    pub order: usize,
    pub argument: f64,
    pub mantissa_first_kind: f64,
    pub mantissa_third_kind: f64,
    pub mantissa_first_deriv: f64,
    pub mantissa_third_deriv: f64,
}

/// Log-domain modified spherical Bessel values for orders `0..=n_max`.
#[derive(Clone, Debug)]
pub struct BesselSeq {
    x: f64,
    /// `ln(i_n(x) e^{-x})`
    ln_i_scaled: Vec<f64>,
    /// `ln(k_n(x) e^{x})`
    ln_k_scaled: Vec<f64>,
    /// `x i_{n+1}(x)/i_n(x)`
    xq: Vec<f64>,
    di: Vec<f64>,
    dk: Vec<f64>,
}

impl BesselSeq {
    /// First kind by downward continued fraction for `i_{n+1}/i_n`, third kind by
    /// upward recurrence of `k_{n+1}/k_n`; both directions are the stable ones.
    pub fn new(n_max: usize, x: f64) -> Result<Self, VdwError> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(VdwError::domain(format!(
                "Bessel argument must be positive and finite, got {x}"
            )));
        }
        let q = first_kind_ratios(n_max, x);
        let len = n_max + 1;

        let mut ln_i_scaled = Vec::with_capacity(len);
        let mut di = Vec::with_capacity(len);
        let mut xq = Vec::with_capacity(len);
        let mut acc = ln_i0_scaled(x);
        for (n, &qn) in q.iter().enumerate().take(len) {
            ln_i_scaled.push(acc);
            xq.push(x * qn);
            di.push(x * qn + n as f64 + 1.0);
            acc += qn.ln();
        }

        let mut ln_k_scaled = Vec::with_capacity(len);
        let mut dk = Vec::with_capacity(len);
        let mut acc = -x.ln();
        let mut p_prev = f64::NAN;
        for n in 0..len {
            ln_k_scaled.push(acc);
            dk.push(if n == 0 { -x } else { -x / p_prev - n as f64 });
            let p = if n == 0 {
                1.0 + 1.0 / x
            } else {
                1.0 / p_prev + (2 * n + 1) as f64 / x
            };
            acc += p.ln();
            p_prev = p;
        }
        Ok(Self {
            x,
            ln_i_scaled,
            ln_k_scaled,
            xq,
            di,
            dk,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn n_max(&self) -> usize {
        self.ln_i_scaled.len() - 1
    }

    /// `ln i_n(x)`.
    pub fn ln_i(&self, n: usize) -> f64 {
        self.ln_i_scaled[n] + self.x
    }

    /// `ln k_n(x)`.
    pub fn ln_k(&self, n: usize) -> f64 {
        self.ln_k_scaled[n] - self.x
    }

    /// `ln(i_n(x) e^{-x})`.
    pub fn ln_i_scaled(&self, n: usize) -> f64 {
        self.ln_i_scaled[n]
    }

    /// `ln(k_n(x) e^{x})`.
    pub fn ln_k_scaled(&self, n: usize) -> f64 {
        self.ln_k_scaled[n]
    }

    /// `[x i_n(x)]' / i_n(x)`.
    pub fn d_first(&self, n: usize) -> f64 {
        self.di[n]
    }

    /// `[x k_n(x)]' / k_n(x)`; always negative.
    pub fn d_third(&self, n: usize) -> f64 {
        self.dk[n]
    }

    /// `x i_{n+1}(x) / i_n(x)`.
    pub fn x_ratio_first(&self, n: usize) -> f64 {
        self.xq[n]
    }

    pub fn scaled(&self, n: usize) -> Result<ScaledBessel, VdwError> {
        let x = self.x;
        let mi = self.ln_i_scaled[n].exp();
        let mk = self.ln_k_scaled[n].exp();
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(mi) || !ok(mk) {
            return Err(VdwError::Overflow { n, x });
        }
        Ok(ScaledBessel {
            order: n,
            argument: x,
            mantissa_first_kind: mi,
            mantissa_third_kind: mk,
            mantissa_first_deriv: mi * self.di[n],
            mantissa_third_deriv: mk * self.dk[n],
        })
    }
}

pub fn modified_spherical_bessel(n: usize, x: f64) -> Result<ScaledBessel, VdwError> {
    BesselSeq::new(n, x)?.scaled(n)
}

/// `ln(i_0(x) e^{-x}) = ln((1 - e^{-2x})/(2x))`.
fn ln_i0_scaled(x: f64) -> f64 {
    (-(-2.0 * x).exp_m1() / (2.0 * x)).ln()
}

/// Ratios `q_n = i_{n+1}(x)/i_n(x)` for `n = 0..=n_max`.
///
/// Backward recurrence `q_{n-1} = x / (2n+1 + x q_n)` started far enough above
/// `n_max` that the error in the starting guess has decayed below rounding.
fn first_kind_ratios(n_max: usize, x: f64) -> Vec<f64> {
    let mut top = n_max + 8;
    let mut damping = 0.0;
    loop {
        let m = top as f64 + 1.5;
        damping += 2.0 * (m / x).asinh();
        if damping > 40.0 {
            break;
        }
        top += 1;
    }
    let guess = |n: usize| {
        let m = n as f64 + 1.5;
        x / (m + m.hypot(x))
    };
    let mut q = vec![0.0; n_max + 1];
    let mut cur = guess(top);
    for n in (1..=top).rev() {
        cur = x / ((2 * n + 1) as f64 + x * cur);
        if n - 1 <= n_max {
            q[n - 1] = cur;
        }
    }
    q
}
