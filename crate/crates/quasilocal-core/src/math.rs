//! Scalar helpers over `libm` so the rest of the crate reads like std code.

pub use core::f64::consts::PI;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline]
pub fn acos(x: f64) -> f64 {
    libm::acos(x)
}
#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline]
pub fn powi(x: f64, n: i32) -> f64 {
    let mut acc = 1.0;
    let mut base = if n < 0 { 1.0 / x } else { x };
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= base;
        }
        base *= base;
        k >>= 1;
    }
    acc
}

/// `asinh` with a series branch for tiny arguments, where the log form cancels.
pub fn asinh(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-4 {
        let x2 = x * x;
        x * (1.0 - x2 / 6.0 + 3.0 * x2 * x2 / 40.0)
    } else {
        libm::asinh(x)
    }
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| if x.abs() > m { x.abs() } else { m })
}

pub fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Log- or linearly spaced samples on `[lo, hi]`, both ends included.
pub fn spaced(lo: f64, hi: f64, n: usize, log: bool) -> alloc::vec::Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if i == n - 1 {
                hi
            } else if log {
                exp(ln(lo) + t * (ln(hi) - ln(lo)))
            } else {
                lo + t * (hi - lo)
            }
        })
        .collect()
}

/// Derivative of a scalar callable by a 6th-order central difference.
pub fn deriv<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let c = [1.0 / 60.0, -3.0 / 20.0, 3.0 / 4.0];
    let mut acc = 0.0;
    for (k, ck) in c.iter().enumerate() {
        let d = (3 - k) as f64 * h;
        acc += ck * (f(x + d) - f(x - d));
    }
    acc / h
}


/// `log₂|a/b|`, the observed order of two successive dyadic differences.
pub fn log2_ratio(a: f64, b: f64) -> f64 {
    libm::log2((a / b).abs())
}
