#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..=hi)
}

/// Adaptive Dormand–Prince 5(4) for `u'' = -λ m u` on `[0, s]`, returning
/// `(u, u')` at `s`.
pub fn rk45(m: f64, lambda: f64, s: f64, y0: [f64; 2], rtol: f64, atol: f64) -> [f64; 2] {
    let f = |y: [f64; 2]| [y[1], -lambda * m * y[0]];
    const C: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
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
    let mut y = y0;
    let mut t = 0.0;
    let mut h = (s / 100.0).max(1e-6);
    while t < s {
        if t + h > s {
            h = s - t;
        }
        let mut k = [[0.0; 2]; 7];
        k[0] = f(y);
        for i in 0..6 {
            let mut yi = y;
            for j in 0..=i {
                for d in 0..2 {
                    yi[d] += h * C[i][j] * k[j][d];
                }
            }
            k[i + 1] = f(yi);
        }
        // k[6] was evaluated at the 5th-order solution (FSAL).
        let mut y5 = y;
        for j in 0..6 {
            for d in 0..2 {
                y5[d] += h * C[5][j] * k[j][d];
            }
        }
        let mut err: f64 = 0.0;
        for d in 0..2 {
            let e: f64 = (0..7).map(|j| E[j] * k[j][d]).sum::<f64>() * h;
            let sc = atol + rtol * y[d].abs().max(y5[d].abs());
            err = err.max((e / sc).abs());
        }
        if err <= 1.0 {
            t += h;
            y = y5;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    y
}

/// Propagator of one constant piece by numerical integration of both columns.
pub fn rk45_propagator(m: f64, lambda: f64, s: f64) -> [[f64; 2]; 2] {
    let c1 = rk45(m, lambda, s, [1.0, 0.0], 1e-13, 1e-15);
    let c2 = rk45(m, lambda, s, [0.0, 1.0], 1e-13, 1e-15);
    [[c1[0], c2[0]], [c1[1], c2[1]]]
}

/// Right-boundary residual `u'(1) + β₁ u(1)` by integrating piece by piece.
pub fn rk45_residual(a: f64, c: f64, kappa: f64, beta0: f64, beta1: f64, lambda: f64) -> f64 {
    let mut y = [1.0, beta0];
    for (m, s) in [(-1.0, a), (kappa, c), (-1.0, 1.0 - a - c)] {
        if s > 0.0 {
            y = rk45(m, lambda, s, y, 1e-13, 1e-15);
        }
    }
    y[1] + beta1 * y[0]
}
