//! Dormand–Prince 5(4) stepper with fourth-order dense output.
//!
//! One accepted step at a time; the caller owns event handling, which is
//! why the dense interpolant of every step is returned. First-same-as-last
//! is exploited across accepted steps.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
// Error estimate weights (5th minus embedded 4th order).
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output weights for the fifth interpolation polynomial.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Quartic interpolant over one accepted step.
#[derive(Debug, Clone)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    cont: [[f64; N]; 5],
}

impl<const N: usize> DenseStep<N> {
    /// End of the step.
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Evaluate the interpolant at `t ∈ [t0, t1]`.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let mut y = [0.0; N];
        for (i, out) in y.iter_mut().enumerate() {
            *out = self.cont[0][i]
                + s * (self.cont[1][i]
                    + s1 * (self.cont[2][i] + s * (self.cont[3][i] + s1 * self.cont[4][i])));
        }
        y
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepError {
    /// The controller drove the step below the representable spacing.
    StepSizeUnderflow { t: f64 },
    /// The right-hand side produced a non-finite value.
    NonFinite { t: f64 },
}

impl fmt::Display for StepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepError::StepSizeUnderflow { t } => write!(f, "step size underflow at t = {t}"),
            StepError::NonFinite { t } => write!(f, "non-finite right-hand side at t = {t}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for StepError {}

/// Adaptive stepper state.
pub struct Dopri5<const N: usize> {
    t: f64,
    y: [f64; N],
    /// Derivative at `(t, y)`, reused as the first stage.
    k1: [f64; N],
    h: f64,
    abs_tol: f64,
    rel_tol: f64,
    h_max: f64,
}

impl<const N: usize> Dopri5<N> {
    pub fn new<F>(
        t0: f64,
        y0: [f64; N],
        h_init: f64,
        abs_tol: f64,
        rel_tol: f64,
        h_max: f64,
        f: &mut F,
    ) -> Self
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        Dopri5 {
            t: t0,
            y: y0,
            k1: f(t0, &y0),
            h: h_init.abs().max(1e-300),
            abs_tol,
            rel_tol,
            h_max,
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn y(&self) -> &[f64; N] {
        &self.y
    }

    /// Advance by one accepted step, retrying internally on rejection.
    pub fn step<F>(&mut self, f: &mut F) -> Result<DenseStep<N>, StepError>
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        for _ in 0..1000 {
            let h = self.h.min(self.h_max);
            if self.t + h == self.t {
                return Err(StepError::StepSizeUnderflow { t: self.t });
            }
            let (y_new, k7, err, stages) = self.try_step(h, f);
            if !err.is_finite() {
                return Err(StepError::NonFinite { t: self.t });
            }
            if err <= 1.0 {
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                let dense = self.dense(h, &y_new, &k7, &stages);
                self.t += h;
                self.y = y_new;
                self.k1 = k7;
                self.h = (h * factor).min(self.h_max);
                return Ok(dense);
            }
            self.h = h * (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
        }
        Err(StepError::StepSizeUnderflow { t: self.t })
    }

    #[allow(clippy::type_complexity)]
    fn try_step<F>(&self, h: f64, f: &mut F) -> ([f64; N], [f64; N], f64, [[f64; N]; 6])
    where
        F: FnMut(f64, &[f64; N]) -> [f64; N],
    {
        let t = self.t;
        let y = &self.y;
        let k1 = &self.k1;
        let mut scratch = [0.0; N];

        for i in 0..N {
            scratch[i] = y[i] + h * A21 * k1[i];
        }
        let k2 = f(t + C2 * h, &scratch);
        for i in 0..N {
            scratch[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
        }
        let k3 = f(t + C3 * h, &scratch);
        for i in 0..N {
            scratch[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        let k4 = f(t + C4 * h, &scratch);
        for i in 0..N {
            scratch[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        let k5 = f(t + C5 * h, &scratch);
        for i in 0..N {
            scratch[i] =
                y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        let k6 = f(t + h, &scratch);
        let mut y_new = [0.0; N];
        for i in 0..N {
            y_new[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        let k7 = f(t + h, &y_new);

        let mut err_sq = 0.0;
        for i in 0..N {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = self.abs_tol + self.rel_tol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (err_sq / N as f64).sqrt();
        (y_new, k7, err, [k2, k3, k4, k5, k6, [0.0; N]])
    }

    fn dense(
        &self,
        h: f64,
        y_new: &[f64; N],
        k7: &[f64; N],
        stages: &[[f64; N]; 6],
    ) -> DenseStep<N> {
        let y = &self.y;
        let k1 = &self.k1;
        let [_, k3, k4, k5, k6, _] = stages;
        let mut cont = [[0.0; N]; 5];
        for i in 0..N {
            let ydiff = y_new[i] - y[i];
            let bspl = h * k1[i] - ydiff;
            cont[0][i] = y[i];
            cont[1][i] = ydiff;
            cont[2][i] = bspl;
            cont[3][i] = ydiff - h * k7[i] - bspl;
            cont[4][i] =
                h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
        }
        DenseStep {
            t0: self.t,
            h,
            cont,
        }
    }
}
