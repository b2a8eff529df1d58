//! Quasi-derivative propagation: the first-order system
//!   y' = V·y + y¹,   (y¹)' = (-E - V²)·y - V·y¹,   y¹ := y' - V·y,
//! integrated with an adaptive Dormand–Prince 5(4) stepper restarted at
//! every breakpoint of the piecewise-affine primitive V.

use super::ShootState;
use crate::model::{HamiltonianConfig, InteractionKind, ModelError, PrimitiveV};

const RTOL: f64 = 1e-10;
const ATOL: f64 = 1e-13;

/// Propagate (f, f') to `to`+ through the quasi-derivative system; V absorbs
/// both the potential and the δ strengths, so the state is continuous.
/// Restricted to δ configurations (the regularization needs V ∈ L²_loc).
pub fn quasi_derivative_propagate(
    config: &HamiltonianConfig,
    energy: f64,
    to: f64,
) -> Result<ShootState, ModelError> {
    if config.kind != InteractionKind::Delta {
        return Err(ModelError::KindMismatch {
            expected: InteractionKind::Delta,
            actual: config.kind,
        });
    }
    let v = config.primitive_v()?;
    let mut y = 0.0;
    let mut z = 1.0;
    let mut x = 0.0;

    let mut cuts: Vec<f64> = v.cuts().into_iter().filter(|&c| c < to).collect();
    cuts.push(to);
    for &stop in &cuts {
        if stop > x {
            let (ny, nz) = integrate_segment(&v, energy, x, stop, y, z);
            y = ny;
            z = nz;
            x = stop;
        }
    }
    let vr = v.eval_right(to);
    Ok(ShootState { position: to, f: y, fprime: z + vr * y, crossed_wall: false })
}

fn integrate_segment(v: &PrimitiveV, energy: f64, x0: f64, x1: f64, y0: f64, z0: f64) -> (f64, f64) {
    // within a segment V is affine and smooth
    let rhs = |x: f64, y: f64, z: f64| -> (f64, f64) {
        let vx = v.eval_right(x0) + (x - x0) * segment_slope(v, x0);
        (vx * y + z, (-energy - vx * vx) * y - vx * z)
    };

    let span = x1 - x0;
    let mut h = span.min(0.1).max(1e-12);
    let mut x = x0;
    let mut y = y0;
    let mut z = z0;
    let mut steps = 0usize;
    while x < x1 {
        if x + h > x1 {
            h = x1 - x;
        }
        let (y5, z5, err) = dp_step(&rhs, x, y, z, h);
        let scale = ATOL + RTOL * (y.abs().max(y5.abs()) + z.abs().max(z5.abs()));
        if err <= scale || h <= 1e-13 * span.max(1.0) {
            x += h;
            y = y5;
            z = z5;
        }
        let factor = if err > 0.0 { 0.9 * (scale / err).powf(0.2) } else { 5.0 };
        h *= factor.clamp(0.2, 5.0);
        steps += 1;
        if steps > 2_000_000 {
            break;
        }
    }
    (y, z)
}

fn segment_slope(v: &PrimitiveV, x0: f64) -> f64 {
    for seg in v.segments.iter().rev() {
        if x0 >= seg.start {
            return seg.slope;
        }
    }
    0.0
}

#[allow(clippy::too_many_arguments)]
fn dp_step(
    rhs: &impl Fn(f64, f64, f64) -> (f64, f64),
    x: f64,
    y: f64,
    z: f64,
    h: f64,
) -> (f64, f64, f64) {
    const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
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
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut ky = [0.0f64; 7];
    let mut kz = [0.0f64; 7];
    for i in 0..7 {
        let mut yy = y;
        let mut zz = z;
        for j in 0..i.min(6) {
            yy += h * A[i][j] * ky[j];
            zz += h * A[i][j] * kz[j];
        }
        let (dy, dz) = rhs(x + C[i] * h, yy, zz);
        ky[i] = dy;
        kz[i] = dz;
    }
    // row 7 of A is the 5th order solution weight vector
    let y5 = y + h * (0..6).map(|j| A[6][j] * ky[j]).sum::<f64>();
    let z5 = z + h * (0..6).map(|j| A[6][j] * kz[j]).sum::<f64>();
    let y4 = y + h * (0..7).map(|j| B4[j] * ky[j]).sum::<f64>();
    let z4 = z + h * (0..7).map(|j| B4[j] * kz[j]).sum::<f64>();
    let err = (y5 - y4).abs() + (z5 - z4).abs();
    (y5, z5, err)
}
