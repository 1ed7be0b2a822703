//! Dimensional equations of motion of the slipping rod, derived from force
//! and torque balances in Cartesian coordinates.
//!
//! This module exists to cross-validate the scaled first-order system in
//! [`crate::model`]: it transcribes the unscaled rotational and tip
//! acceleration equations independently, so the two paths share no code.
//! Nothing in the library proper depends on it.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

/// Physical rod constants. `inertia` is the moment of inertia `I₀` about
/// the transverse principal axes; the axial moment vanishes for a slender
/// rod.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionalRod {
    /// Mass `m`.
    pub mass: f64,
    /// Distance `l` from the contact tip to the centre of mass.
    pub length: f64,
    /// Gravitational acceleration `g`.
    pub gravity: f64,
    /// Transverse moment of inertia `I₀`.
    pub inertia: f64,
    /// Time scale `ω = √(g/l)`.
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonPositiveRodConstant;

impl fmt::Display for NonPositiveRodConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rod constants must be positive and finite")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NonPositiveRodConstant {}

impl DimensionalRod {
    pub fn new(
        mass: f64,
        length: f64,
        gravity: f64,
        inertia: f64,
    ) -> Result<Self, NonPositiveRodConstant> {
        for v in [mass, length, gravity, inertia] {
            if !(v.is_finite() && v > 0.0) {
                return Err(NonPositiveRodConstant);
            }
        }
        Ok(DimensionalRod {
            mass,
            length,
            gravity,
            inertia,
            omega: (gravity / length).sqrt(),
        })
    }

    /// Uniform slender rod: `I₀ = m l²/3`.
    pub fn uniform(mass: f64, length: f64, gravity: f64) -> Result<Self, NonPositiveRodConstant> {
        DimensionalRod::new(mass, length, gravity, mass * length * length / 3.0)
    }

    /// Inertia ratio `α = m l²/I₀` of the paired scaled problem.
    pub fn alpha(&self) -> f64 {
        self.mass * self.length * self.length / self.inertia
    }
}

/// Dimensional slipping state: tip on the surface, slip heading `β`
/// measured in the inertial frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionalState {
    /// Tip position in the inertial frame.
    pub x: f64,
    pub y: f64,
    /// Azimuthal and polar angles.
    pub psi: f64,
    pub theta: f64,
    /// Angular rates `ψ̇`, `θ̇`.
    pub psi_dot: f64,
    pub theta_dot: f64,
    /// Slip speed of the tip.
    pub eta: f64,
    /// Slip heading `β`; the relative slip angle is `φ = β - ψ`.
    pub beta: f64,
}

/// Accelerations of the rod tip and angles, with the contact force that
/// produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TipAccel {
    pub x_ddot: f64,
    pub y_ddot: f64,
    /// Residual vertical tip acceleration; zero by construction of `f_z`.
    pub z_ddot: f64,
    pub theta_ddot: f64,
    pub psi_ddot: f64,
    /// Normal contact force (N) solved from vertical tip equilibrium.
    pub f_z: f64,
}

/// Evaluate the dimensional equations of motion at a slipping state.
///
/// The normal force follows from `z̈ = 0` with Coulomb friction
/// `F_x = -μ cosβ F_z`, `F_y = -μ sinβ F_z`; the returned accelerations are
/// the raw Cartesian/rotational balances.
pub fn cartesian_oracle_rhs(state: &DimensionalState, rod: &DimensionalRod, mu: f64) -> TipAccel {
    let m = rod.mass;
    let l = rod.length;
    let g = rod.gravity;
    let i0 = rod.inertia;
    let ml2_i0 = m * l * l / i0;

    let (s_th, c_th) = (state.theta.sin(), state.theta.cos());
    let (s_ps, c_ps) = (state.psi.sin(), state.psi.cos());
    let (s_b, c_b) = (state.beta.sin(), state.beta.cos());
    let psi_dot2 = state.psi_dot * state.psi_dot;
    let theta_dot2 = state.theta_dot * state.theta_dot;

    // Vertical tip acceleration is linear in the force components; solve
    // z̈ = 0 for F_z after substituting the friction law.
    let coeff_fx = ml2_i0 * (s_ps * s_th * c_th) / m;
    let coeff_fy = ml2_i0 * (-c_ps * s_th * c_th) / m;
    let coeff_fz = ml2_i0 * (c_th * c_th + i0 / (m * l * l)) / m;
    let free_z =
        ml2_i0 * (i0 / (m * l)) * (psi_dot2 * c_th * c_th * s_th + theta_dot2 * s_th - g / l);
    let force_coeff = coeff_fx * (-mu * c_b) + coeff_fy * (-mu * s_b) + coeff_fz;
    let f_z = -free_z / force_coeff;
    let f_x = -mu * c_b * f_z;
    let f_y = -mu * s_b * f_z;

    // Rotational balances.
    let theta_ddot =
        -(l / i0) * (s_ps * s_th * f_x - c_ps * s_th * f_y + c_th * f_z) - psi_dot2 * s_th * c_th;
    let psi_ddot = (l / (i0 * c_th)) * (c_ps * f_x + s_ps * f_y)
        + 2.0 * state.psi_dot * state.theta_dot * s_th / c_th;

    // Tip accelerations.
    let x_ddot = ml2_i0
        * ((-s_ps * s_ps * c_th * c_th + i0 / (m * l * l) + 1.0) * f_x / m
            + (c_th * c_th * s_ps * c_ps) * f_y / m
            + (s_th * c_th * s_ps) * f_z / m
            + (i0 / (m * l)) * (-psi_dot2 * c_th * c_th * c_th * s_ps - theta_dot2 * c_th * s_ps));
    let y_ddot = ml2_i0
        * ((s_ps * c_ps * c_th * c_th) * f_x / m
            + (-c_ps * c_ps * c_th * c_th + i0 / (m * l * l) + 1.0) * f_y / m
            - (s_th * c_th * c_ps) * f_z / m
            + (i0 / (m * l)) * (psi_dot2 * c_th * c_th * c_th * c_ps + theta_dot2 * c_th * c_ps));
    let z_ddot = coeff_fx * f_x + coeff_fy * f_y + coeff_fz * f_z + free_z;

    TipAccel {
        x_ddot,
        y_ddot,
        z_ddot,
        theta_ddot,
        psi_ddot,
        f_z,
    }
}
