//! Exact-arithmetic reference values shared by the integration tests.
#![allow(dead_code)]

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Correctly rounded-ish conversion of an arbitrary rational to f64 (relative error ~1e-16).
pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let num = r.numer().abs();
    let den = r.denom().abs();
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q: BigInt = if shift >= 0 {
        &num / (&den << shift as usize)
    } else {
        (&num << (-shift) as usize) / &den
    };
    let mant = q.to_f64().expect("64-bit quotient");
    sign * mant * 2f64.powi(shift as i32)
}

/// Natural log of a positive rational, to ~1e-16 relative, valid far outside the f64 range.
pub fn ln(r: &BigRational) -> f64 {
    assert!(r.numer().sign() == Sign::Plus);
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    let scaled = if shift >= 0 {
        r / BigRational::from_integer(BigInt::one() << shift as usize)
    } else {
        r * BigRational::from_integer(BigInt::one() << (-shift) as usize)
    };
    to_f64(&scaled).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `e^{x}` for rational `x >= 0`, by Taylor series to relative accuracy `2^-200`.
pub fn exp(x: &BigRational) -> BigRational {
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 200usize);
    let mut k = 1i64;
    loop {
        term = term * x / int(k);
        sum += &term;
        if &term < &(&sum * &eps) {
            return sum;
        }
        k += 1;
    }
}

/// `i_n(x) = x^n/(2n+1)!! Σ_k (x²/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))`, relative accuracy 2^-200.
pub fn bessel_i(n: u32, x: &BigRational) -> BigRational {
    let half_x2 = x * x / int(2);
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    let eps = BigRational::new(BigInt::one(), BigInt::one() << 200usize);
    let mut k = 1i64;
    loop {
        term = term * &half_x2 / int(k * (2 * n as i64 + 2 * k + 1));
        sum += &term;
        if k > 4 && &term < &(&sum * &eps) {
            break;
        }
        k += 1;
    }
    let mut pre = BigRational::one();
    for _ in 0..n {
        pre *= x;
    }
    let mut df = BigRational::one();
    let mut j = 2 * n as i64 + 1;
    while j > 1 {
        df *= int(j);
        j -= 2;
    }
    pre * sum / df
}

/// `k_n(x) e^{x} = (1/x) Σ_{k=0}^n (n+k)!/(k!(n-k)!) (2x)^{-k}`, exact.
pub fn bessel_k_scaled(n: u32, x: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    let mut coeff = BigRational::one(); // (n+k)!/(k!(n-k)!) at k = 0
    let two_x = x * int(2);
    let mut pow = BigRational::one();
    for k in 0..=n as i64 {
        if k > 0 {
            coeff = coeff * int((n as i64 + k) * (n as i64 - k + 1)) / int(k);
            pow = pow / &two_x;
        }
        sum += &coeff * &pow;
    }
    sum / x
}

/// `P_n(γ)` in exact arithmetic.
pub fn legendre(n: u32, gamma: &BigRational) -> BigRational {
    let mut p0 = BigRational::one();
    if n == 0 {
        return p0;
    }
    let mut p1 = gamma.clone();
    for k in 1..n as i64 {
        let p2 = (int(2 * k + 1) * gamma * &p1 - int(k) * &p0) / int(k + 1);
        p0 = p1;
        p1 = p2;
    }
    p1
}
pub mod wave;
