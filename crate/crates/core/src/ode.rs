//! Adaptive Dormand-Prince 5(4) integrator for non-stiff systems `y' = f(t, y)`.

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    /// First trial step; estimated from the span when `None`.
    pub h_init: Option<f64>,
    /// Steps below this size abort the integration.
    pub h_min: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-10,
            h_init: None,
            h_min: 1e-14,
            max_steps: 2_000_000,
        }
    }
}

impl OdeOptions {
    pub fn with_tol(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }
}

/// Samples at the requested output times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

/// Failure carrying everything computed before it.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationFailure {
    pub t: f64,
    pub reason: String,
    pub partial: Solution,
}

impl From<IntegrationFailure> for Error {
    fn from(f: IntegrationFailure) -> Self {
        Error::Integration {
            t: f.t,
            reason: f.reason,
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate from `t_out[0]` through every later entry of `t_out` (strictly increasing),
/// landing exactly on each output time.
pub fn integrate<F>(f: F, y0: &[f64], t_out: &[f64], opts: OdeOptions) -> Result<Solution, IntegrationFailure>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let mut sol = Solution {
        t: vec![],
        y: vec![],
        accepted_steps: 0,
        rejected_steps: 0,
    };
    let fail = |t: f64, reason: String, sol: Solution| IntegrationFailure {
        t,
        reason,
        partial: sol,
    };
    if t_out.is_empty() {
        return Ok(sol);
    }
    if t_out.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(fail(t_out[0], "output times must increase strictly".into(), sol));
    }
    let mut t = t_out[0];
    let mut y = y0.to_vec();
    sol.t.push(t);
    sol.y.push(y.clone());
    let span = t_out[t_out.len() - 1] - t;
    let mut h = opts.h_init.unwrap_or((span * 1e-3).max(1e-6).min(span.max(1e-12)));
    let mut k = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut y5 = vec![0.0; n];
    f(t, &y, &mut k[0]);
    let mut steps = 0usize;
    for &target in &t_out[1..] {
        while t < target {
            if steps >= opts.max_steps {
                return Err(fail(t, format!("step budget {} exhausted", opts.max_steps), sol));
            }
            steps += 1;
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += step * A[s][j] * kj[i];
                    }
                    tmp[i] = acc;
                }
                let (_, tail) = k.split_at_mut(s);
                f(t + C[s] * step, &tmp, &mut tail[0]);
            }
            let mut err = 0.0;
            for i in 0..n {
                let mut hi = y[i];
                let mut lo = y[i];
                for s in 0..7 {
                    hi += step * B5[s] * k[s][i];
                    lo += step * B4[s] * k[s][i];
                }
                y5[i] = hi;
                let sc = opts.atol + opts.rtol * y[i].abs().max(hi.abs());
                err += ((hi - lo) / sc).powi(2);
            }
            let err = (err / n.max(1) as f64).sqrt();
            if !err.is_finite() {
                return Err(fail(t, "non-finite state".into(), sol));
            }
            if err <= 1.0 {
                t = if last { target } else { t + step };
                std::mem::swap(&mut y, &mut y5);
                // first-same-as-last: stage 7 was evaluated at the accepted point
                let (head, tail) = k.split_at_mut(6);
                head[0].copy_from_slice(&tail[0]);
                sol.accepted_steps += 1;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                if !last {
                    h = step * grow;
                } else {
                    h = h.max(step * grow);
                }
            } else {
                sol.rejected_steps += 1;
                h = step * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                if h < opts.h_min {
                    return Err(fail(t, format!("step size {h:e} below minimum {:e}", opts.h_min), sol));
                }
            }
        }
        sol.t.push(t);
        sol.y.push(y.clone());
    }
    Ok(sol)
}

/// `n + 1` equally spaced times from `t0` to `t1`.
pub fn linspace(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| t0 + (t1 - t0) * i as f64 / n as f64).collect()
}
