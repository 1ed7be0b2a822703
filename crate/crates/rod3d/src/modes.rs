//! Sign classification of the contact problem and grid sampling of the
//! `b = 0` / `p = 0` surfaces.
//!
//! The linear complementarity condition `0 ≤ F_z ⊥ z ≥ 0` with
//! `F_z = -b/p` has four modes set by the signs of `b` and `p`; this
//! module labels states and samples the two fields over `(θ, φ, Θ)` boxes
//! at fixed `Ψ`.

use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::critical::PSI_L;
use crate::model::{contact_coeff_p, free_accel_b, RodParams, ScaledState};

/// Sign band for boundary labelling in grid cells and state
/// classification.
pub const TOL_SIGN: f64 = 1e-9;

/// The four contact modes, plus a tag for cells on a zero set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Mode {
    /// `b < 0, p > 0`: positive normal force keeps the tip on the surface.
    Slipping,
    /// `b > 0, p > 0`: the tip accelerates away from the surface.
    LiftOff,
    /// `b < 0, p < 0`: no rigid-body solution exists.
    Inconsistent,
    /// `b > 0, p < 0`: contact and lift-off are both consistent.
    Indeterminate,
    /// `b` or `p` within [`TOL_SIGN`] of zero.
    Boundary,
}

impl Mode {
    /// Fixed label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            Mode::Slipping => "SLIP",
            Mode::LiftOff => "LIFT",
            Mode::Inconsistent => "INCON",
            Mode::Indeterminate => "INDET",
            Mode::Boundary => "BND",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Mode of a state together with the sign witnesses that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContactMode {
    pub mode: Mode,
    /// `-1`, `0`, `+1`; zero within [`TOL_SIGN`].
    pub sign_b: i8,
    pub sign_p: i8,
}

fn sign_of(v: f64, tol: f64) -> i8 {
    if v.abs() <= tol {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Classify raw `(b, p)` values.
pub fn classify_bp(b: f64, p: f64, tol: f64) -> ContactMode {
    let sign_b = sign_of(b, tol);
    let sign_p = sign_of(p, tol);
    let mode = match (sign_b, sign_p) {
        (-1, 1) => Mode::Slipping,
        (1, 1) => Mode::LiftOff,
        (-1, -1) => Mode::Inconsistent,
        (1, -1) => Mode::Indeterminate,
        _ => Mode::Boundary,
    };
    ContactMode {
        mode,
        sign_b,
        sign_p,
    }
}

/// Classify a slipping-constraint state (`z = w = 0`).
pub fn classify_mode(state: &ScaledState, params: &RodParams) -> ContactMode {
    classify_bp(state.b(), state.p(params), TOL_SIGN)
}

/// One grid axis: `n` samples spanning `[min, max]` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, n: usize) -> Self {
        AxisSpec { min, max, n }
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.n <= 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.n - 1) as f64
        }
    }
}

/// Sampling box over `(θ, φ, Θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub theta: AxisSpec,
    pub phi: AxisSpec,
    pub theta_rate: AxisSpec,
    /// Refuse grids larger than this many cells.
    pub cell_cap: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            theta: AxisSpec::new(1e-3, core::f64::consts::FRAC_PI_2 - 1e-3, 201),
            phi: AxisSpec::new(-core::f64::consts::PI, 0.0, 201),
            theta_rate: AxisSpec::new(0.0, 2.0, 201),
            cell_cap: 10_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridError {
    TooLarge {
        cells: usize,
        cap: usize,
    },
    /// Axis bounds outside `θ ∈ (0, π/2)`, `φ ∈ [-π, 0]`, `Θ ≥ 0`, or
    /// inverted.
    InvalidAxis,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::TooLarge { cells, cap } => {
                write!(f, "grid has {cells} cells, more than the cap of {cap}")
            }
            GridError::InvalidAxis => write!(f, "grid axis out of domain"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GridError {}

/// `b`, `p` and per-cell modes sampled over a [`GridSpec`] at fixed `Ψ`.
///
/// `b` depends only on `(θ, Θ)` and `p` only on `(θ, φ)`, so the two
/// fields are stored as planes and looked up per cell; the mode labels are
/// stored per cell. Cell index order is `θ` outermost, then `φ`, then `Θ`.
#[derive(Debug, Clone)]
pub struct SurfaceGrid {
    pub spec: GridSpec,
    pub psi_rate: f64,
    /// `b[i_theta * n_theta_rate + k]`.
    pub values_b: Vec<f64>,
    /// `p[i_theta * n_phi + j]`.
    pub values_p: Vec<f64>,
    /// One label per cell, same index order as [`SurfaceGrid::cell_index`].
    pub mode_labels: Vec<Mode>,
}

impl SurfaceGrid {
    pub fn n_cells(&self) -> usize {
        self.spec.theta.n * self.spec.phi.n * self.spec.theta_rate.n
    }

    pub fn cell_index(&self, i_theta: usize, j_phi: usize, k_rate: usize) -> usize {
        (i_theta * self.spec.phi.n + j_phi) * self.spec.theta_rate.n + k_rate
    }

    pub fn b_at(&self, i_theta: usize, k_rate: usize) -> f64 {
        self.values_b[i_theta * self.spec.theta_rate.n + k_rate]
    }

    pub fn p_at(&self, i_theta: usize, j_phi: usize) -> f64 {
        self.values_p[i_theta * self.spec.phi.n + j_phi]
    }

    pub fn mode_at(&self, i_theta: usize, j_phi: usize, k_rate: usize) -> ContactMode {
        classify_bp(
            self.b_at(i_theta, k_rate),
            self.p_at(i_theta, j_phi),
            TOL_SIGN,
        )
    }

    /// Tally of cells per mode.
    pub fn counts(&self) -> ModeCounts {
        let mut c = ModeCounts::default();
        for m in &self.mode_labels {
            match m {
                Mode::Slipping => c.slipping += 1,
                Mode::LiftOff => c.lift_off += 1,
                Mode::Inconsistent => c.inconsistent += 1,
                Mode::Indeterminate => c.indeterminate += 1,
                Mode::Boundary => c.boundary += 1,
            }
        }
        c
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ModeCounts {
    pub slipping: usize,
    pub lift_off: usize,
    pub inconsistent: usize,
    pub indeterminate: usize,
    pub boundary: usize,
}

/// Sample `b`, `p` and the mode labels over a grid at fixed `Ψ`.
///
/// Cells are independent; output ordering is fixed by the index layout
/// regardless of evaluation order.
pub fn sample_surfaces(
    params: &RodParams,
    psi_rate: f64,
    spec: &GridSpec,
) -> Result<SurfaceGrid, GridError> {
    let half_pi = core::f64::consts::FRAC_PI_2;
    let ok_axis = |a: &AxisSpec| a.n >= 1 && a.min <= a.max;
    if !(ok_axis(&spec.theta) && ok_axis(&spec.phi) && ok_axis(&spec.theta_rate)) {
        return Err(GridError::InvalidAxis);
    }
    if spec.theta.min <= 0.0
        || spec.theta.max >= half_pi
        || spec.phi.min < -core::f64::consts::PI - 1e-12
        || spec.phi.max > 1e-12
        || spec.theta_rate.min < 0.0
    {
        return Err(GridError::InvalidAxis);
    }
    let cells = spec.theta.n * spec.phi.n * spec.theta_rate.n;
    if cells > spec.cell_cap {
        return Err(GridError::TooLarge {
            cells,
            cap: spec.cell_cap,
        });
    }

    let (nt, np, nr) = (spec.theta.n, spec.phi.n, spec.theta_rate.n);
    let mut values_b = Vec::with_capacity(nt * nr);
    let mut values_p = Vec::with_capacity(nt * np);
    for i in 0..nt {
        let theta = spec.theta.value(i);
        for k in 0..nr {
            values_b.push(free_accel_b(psi_rate, spec.theta_rate.value(k), theta));
        }
        for j in 0..np {
            values_p.push(contact_coeff_p(theta, spec.phi.value(j), params));
        }
    }
    let mut mode_labels = Vec::with_capacity(cells);
    for i in 0..nt {
        for j in 0..np {
            let p = values_p[i * np + j];
            let sp = sign_of(p, TOL_SIGN);
            for k in 0..nr {
                let b = values_b[i * nr + k];
                mode_labels.push(classify_bp_signs(sign_of(b, TOL_SIGN), sp));
            }
        }
    }
    Ok(SurfaceGrid {
        spec: *spec,
        psi_rate,
        values_b,
        values_p,
        mode_labels,
    })
}

fn classify_bp_signs(sign_b: i8, sign_p: i8) -> Mode {
    match (sign_b, sign_p) {
        (-1, 1) => Mode::Slipping,
        (1, 1) => Mode::LiftOff,
        (-1, -1) => Mode::Inconsistent,
        (1, -1) => Mode::Indeterminate,
        _ => Mode::Boundary,
    }
}

/// The open `θ`-interval with `b(Ψ, 0, θ) > 0`, i.e. where the azimuthal
/// spin alone lifts the tip; `None` for `|Ψ| < Ψ_L`.
///
/// With `s = sinθ` the boundary is the cubic `s³ - s + 1/Ψ² = 0`, solved
/// in closed trigonometric form.
pub fn liftoff_at_zero_theta_rate(params: &RodParams, psi_rate: f64) -> Option<(f64, f64)> {
    let _ = params; // the interval is parameter-free
    let a = psi_rate.abs();
    if a < PSI_L {
        return None;
    }
    // cos(3w) argument: -Ψ_L²/Ψ², in [-1, 0) here.
    let arg = (-(PSI_L * PSI_L) / (a * a)).clamp(-1.0, 1.0);
    let w = arg.acos() / 3.0;
    let scale = 2.0 / 3.0_f64.sqrt();
    let mut roots = [0.0f64; 3];
    for (k, r) in roots.iter_mut().enumerate() {
        *r = scale * (w - 2.0 * core::f64::consts::PI * k as f64 / 3.0).cos();
    }
    let mut inside: Vec<f64> = roots
        .iter()
        .copied()
        .filter(|s| *s > 0.0 && *s < 1.0)
        .collect();
    inside.sort_by(|x, y| x.partial_cmp(y).unwrap());
    match inside.len() {
        2 => Some((inside[0].asin(), inside[1].asin())),
        // Tangent case |Ψ| = Ψ_L: double root at sinθ = 1/√3.
        1 => Some((inside[0].asin(), inside[0].asin())),
        _ => None,
    }
}
