//! Complex-arithmetic Mie theory, written directly in the textbook conventions:
//! spherical Bessel `j_n`, Hankel `h_n^{(1)}` and the vector wave functions `M`, `N`.

use num_complex::Complex64 as C;
use std::f64::consts::PI;

const I: C = C { re: 0.0, im: 1.0 };

/// `j_n(z) = z^n Σ_k (-z²/2)^k / (k! (2n+2k+1)!!)`.
pub fn sph_j(n: u32, z: C) -> C {
    let mut df = 1.0;
    for j in (1..=2 * n + 1).step_by(2) {
        df *= j as f64;
    }
    let q = -z * z / 2.0;
    let mut term = C::new(1.0 / df, 0.0);
    let mut sum = term;
    for k in 1..200u32 {
        term = term * q / (k as f64 * (2 * n + 2 * k + 1) as f64);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum * z.powu(n)
}

/// `h_n^{(1)}(z) = (-i)^{n+1} e^{iz}/z Σ_{k=0}^n i^k (n+k)! / (k! (n-k)! (2z)^k)`.
pub fn sph_h(n: u32, z: C) -> C {
    let mut sum = C::new(0.0, 0.0);
    let mut coeff = 1.0;
    for k in 0..=n {
        if k > 0 {
            coeff *= ((n + k) * (n - k + 1)) as f64 / k as f64;
        }
        sum += I.powu(k) * coeff / (2.0 * z).powu(k);
    }
    (-I).powu(n + 1) * (I * z).exp() / z * sum
}

/// `[z f_n(z)]' = z f_{n-1}(z) - n f_n(z)`, `n >= 1`.
pub fn riccati_d(f: fn(u32, C) -> C, n: u32, z: C) -> C {
    z * f(n - 1, z) - n as f64 * f(n, z)
}

/// `(B_n^M, B_n^N)` at `ω = iu`, sphere radius `radius`, from the defining ratios of
/// Bessel and Hankel functions at `y₀ = k₀R` and `y = n y₀`.
pub fn mie(eps: f64, mu: f64, u: f64, radius: f64, n: u32) -> (C, C) {
    let y0 = I * u * radius;
    let y = y0 * (eps * mu).sqrt();
    let jy0 = sph_j(n, y0);
    let jy = sph_j(n, y);
    let hy0 = sph_h(n, y0);
    let djy0 = riccati_d(sph_j, n, y0);
    let djy = riccati_d(sph_j, n, y);
    let dhy0 = riccati_d(sph_h, n, y0);
    let b = |resp: f64| -(resp * djy0 * jy - djy * jy0) / (resp * dhy0 * jy - djy * hy0);
    (b(mu), b(eps))
}

/// Cancellation factors `(|t₁|+|t₂|)/|t₁-t₂|` of the two numerators in [`mie`];
/// the oracle's relative accuracy is roughly `1e-16` times these.
pub fn mie_condition(eps: f64, mu: f64, u: f64, radius: f64, n: u32) -> (f64, f64) {
    let y0 = I * u * radius;
    let y = y0 * (eps * mu).sqrt();
    let (jy0, jy) = (sph_j(n, y0), sph_j(n, y));
    let (djy0, djy) = (riccati_d(sph_j, n, y0), riccati_d(sph_j, n, y));
    let c = |resp: f64| {
        let (t1, t2) = (resp * djy0 * jy, djy * jy0);
        (t1.norm() + t2.norm()) / (t1 - t2).norm()
    };
    (c(mu), c(eps))
}

/// `P_n^m(x)` for `0 <= m <= n` (no Condon–Shortley phase).
pub fn assoc_legendre(n: u32, m: u32, x: f64) -> f64 {
    let s = (1.0 - x * x).sqrt();
    let mut pmm = 1.0;
    for j in 1..=m {
        pmm *= (2 * j - 1) as f64 * s;
    }
    if n == m {
        return pmm;
    }
    let mut p0 = pmm;
    let mut p1 = x * (2 * m + 1) as f64 * pmm;
    for l in m + 2..=n {
        let p2 = ((2 * l - 1) as f64 * x * p1 - (l + m - 1) as f64 * p0) / (l - m) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

pub type CVec = [C; 3];

/// Cartesian `(M, N)` for one `(n, m, p)` at spherical point `(r, θ, φ)`, wave number `k`.
pub fn wave_functions(n: u32, m: u32, even: bool, r: f64, theta: f64, phi: f64, k: C) -> (CVec, CVec) {
    let x = theta.cos();
    let s = theta.sin();
    let p = assoc_legendre(n, m, x);
    let p_prev = if n > m { assoc_legendre(n - 1, m, x) } else { 0.0 };
    // dP/dθ = (n x P_n^m - (n+m) P_{n-1}^m) / sin θ
    let dp = (n as f64 * x * p - (n + m) as f64 * p_prev) / s;
    let mp = m as f64 * p / s;
    let kr = k * r;
    let h = sph_h(n, kr);
    let dh = riccati_d(sph_h, n, kr) / kr;
    let (cm, sm) = ((m as f64 * phi).cos(), (m as f64 * phi).sin());
    let (first, second, sign) = if even { (cm, sm, -1.0) } else { (sm, cm, 1.0) };
    let nn = (n * (n + 1)) as f64;
    let m_sph = [C::new(0.0, 0.0), h * (sign * mp * second), -h * dp * first];
    let n_sph = [h * (nn * p * first) / kr, dh * dp * first, dh * (sign * mp * second)];
    let e_r = [s * phi.cos(), s * phi.sin(), x];
    let e_t = [x * phi.cos(), x * phi.sin(), -s];
    let e_p = [-phi.sin(), phi.cos(), 0.0];
    let cart = |v: [C; 3]| -> CVec { std::array::from_fn(|i| v[0] * e_r[i] + v[1] * e_t[i] + v[2] * e_p[i]) };
    (cart(m_sph), cart(n_sph))
}

/// `(G¹, K¹)(r, r', iu)` from the double sum over `n <= n_max`, `m`, and parity.
pub fn scattering_tensors(
    eps: f64,
    mu: f64,
    radius: f64,
    u: f64,
    r: (f64, f64, f64),
    rp: (f64, f64, f64),
    n_max: u32,
) -> ([[C; 3]; 3], [[C; 3]; 3]) {
    let k0 = I * u;
    let zero = C::new(0.0, 0.0);
    let mut g = [[zero; 3]; 3];
    let mut kt = [[zero; 3]; 3];
    for n in 1..=n_max {
        let (bm, bn) = mie(eps, mu, u, radius, n);
        let wn = (2 * n + 1) as f64 / (n * (n + 1)) as f64;
        for m in 0..=n {
            let mut norm = if m == 0 { 1.0 } else { 2.0 };
            for j in n - m + 1..=n + m {
                norm /= j as f64;
            }
            for even in [true, false] {
                let (m1, n1) = wave_functions(n, m, even, r.0, r.1, r.2, k0);
                let (m2, n2) = wave_functions(n, m, even, rp.0, rp.1, rp.2, k0);
                for i in 0..3 {
                    for j in 0..3 {
                        g[i][j] += wn * norm * (bm * m1[i] * m2[j] + bn * n1[i] * n2[j]);
                        kt[i][j] += wn * norm * (bm * n1[i] * m2[j] + bn * m1[i] * n2[j]);
                    }
                }
            }
        }
    }
    let gpre = I * k0 / (4.0 * PI);
    let kpre = I * k0 * k0 / (4.0 * PI);
    (g.map(|row| row.map(|v| v * gpre)), kt.map(|row| row.map(|v| v * kpre)))
}
