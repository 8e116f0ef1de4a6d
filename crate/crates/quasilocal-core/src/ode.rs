//! Adaptive Dormand-Prince 5(4) integration for small ODE systems.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::powf;

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h0: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions { rtol: 1e-12, atol: 1e-14, h0: 1e-4, max_steps: 2_000_000 }
    }
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate `y' = f(t, y)` from `t0` and return the state at each entry of
/// `outputs` (monotone in the direction of integration, first entry may equal `t0`).
pub fn integrate<F>(f: F, t0: f64, y0: &[f64], outputs: &[f64], opt: OdeOptions) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; n]; 7];
    let mut ytmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];
    let mut out = Vec::with_capacity(outputs.len());
    let dir = match outputs.last() {
        Some(&tl) if tl < t0 => -1.0,
        _ => 1.0,
    };
    let mut h = opt.h0.abs() * dir;
    let mut steps = 0usize;
    f(t, &y, &mut k[0]);
    for &target in outputs {
        while (target - t) * dir > 2.0 * f64::EPSILON * t.abs().max(target.abs()) {
            steps += 1;
            if steps > opt.max_steps {
                return Err(Error::NonConvergence("ode step limit".into()));
            }
            let last = (t + h - target) * dir >= 0.0;
            let hs = if last { target - t } else { h };
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for j in 0..s {
                        acc += hs * A[s][j] * k[j][i];
                    }
                    ytmp[i] = acc;
                }
                f(t + C[s] * hs, &ytmp, &mut k[s]);
                if s == 6 {
                    ynew.copy_from_slice(&ytmp);
                }
            }
            let mut err = 0.0f64;
            for i in 0..n {
                let mut e = 0.0;
                for j in 0..7 {
                    e += E[j] * k[j][i];
                }
                let sc = opt.atol + opt.rtol * y[i].abs().max(ynew[i].abs());
                let r = hs * e / sc;
                err += r * r;
            }
            err = crate::math::sqrt(err / n as f64);
            if !err.is_finite() {
                h = hs * 0.2;
                if h.abs() < 1e-300 {
                    return Err(Error::NonConvergence("ode produced non-finite values".into()));
                }
                continue;
            }
            if err <= 1.0 {
                t += hs;
                if last {
                    t = target;
                }
                y.copy_from_slice(&ynew);
                let k6 = k[6].clone();
                k[0].copy_from_slice(&k6);
                let fac = if err == 0.0 { 5.0 } else { (0.9 * powf(err, -0.2)).clamp(0.2, 5.0) };
                if !last {
                    h = hs * fac;
                } else {
                    h = h.abs().max((hs * fac).abs()) * dir;
                }
            } else {
                h = hs * (0.9 * powf(err, -0.2)).max(0.1);
            }
            if h.abs() <= 4.0 * f64::EPSILON * t.abs() || h == 0.0 {
                return Err(Error::NonConvergence("ode step size underflow".into()));
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{cos, exp, sin};

    #[test]
    fn exponential_decay() {
        let out = integrate(|_, y, d| d[0] = -y[0], 0.0, &[1.0], &[0.5, 1.0, 3.0], OdeOptions::default()).unwrap();
        assert!((out[2][0] - exp(-3.0)).abs() < 1e-12);
        assert!((out[0][0] - exp(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn oscillator_backwards() {
        let out = integrate(
            |_, y, d| {
                d[0] = y[1];
                d[1] = -y[0];
            },
            2.0,
            &[sin(2.0), cos(2.0)],
            &[1.0, -1.0],
            OdeOptions::default(),
        )
        .unwrap();
        assert!((out[1][0] - sin(-1.0)).abs() < 1e-11);
    }
}
