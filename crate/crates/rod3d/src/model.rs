//! Scaled slipping state, the scalar fields `b` and `p`, the coefficient
//! functions of the first-order system, the contact force, and the slipping
//! and desingularized right-hand sides.
//!
//! Lengths are scaled by the tip-to-centre distance `l`, forces by `mg`,
//! and time by `1/ω` with `ω² = g/l`. The inertia ratio `α = m l²/I₀`
//! (`α = 3` for a uniform rod) and the friction coefficient `μ` are the
//! only parameters.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

/// `F_z` is treated as unbounded below this: callers must branch before
/// dividing by `p`.
pub const TOL_P: f64 = 1e-9;

/// Slip speeds below this terminate a trajectory; sticking is not modelled.
pub const TOL_ETA: f64 = 1e-9;

/// Inertia ratio and friction coefficient of the scaled problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RodParams {
    /// Inertia ratio `α = m l² / I₀`; `3` for a uniform slender rod.
    pub alpha: f64,
    /// Coulomb friction coefficient `μ ≥ 0`.
    pub mu: f64,
}

impl RodParams {
    pub fn new(alpha: f64, mu: f64) -> Result<Self, ParamError> {
        if !alpha.is_finite() || !mu.is_finite() {
            return Err(ParamError::NonFinite);
        }
        if alpha <= 0.0 {
            return Err(ParamError::NonPositiveAlpha(alpha));
        }
        if mu < 0.0 {
            return Err(ParamError::NegativeMu(mu));
        }
        Ok(RodParams { alpha, mu })
    }

    /// Uniform slender rod (`α = 3`) with friction coefficient `mu`.
    pub fn uniform_rod(mu: f64) -> Result<Self, ParamError> {
        RodParams::new(3.0, mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamError {
    NonPositiveAlpha(f64),
    NegativeMu(f64),
    NonFinite,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::NonPositiveAlpha(a) => write!(f, "inertia ratio must be positive, got {a}"),
            ParamError::NegativeMu(m) => {
                write!(f, "friction coefficient must be nonnegative, got {m}")
            }
            ParamError::NonFinite => write!(f, "parameters must be finite"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParamError {}

/// Full scaled state of the rod.
///
/// During slipping the tip stays on the surface, so `z = w = 0`; the two
/// fields are carried anyway so that a lift-off continuation can reuse the
/// same type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledState {
    /// Contact-point position (scaled by `l`).
    pub x: f64,
    pub y: f64,
    /// Tip height above the surface; `0` while slipping.
    pub z: f64,
    /// Tip vertical velocity; `0` while slipping.
    pub w: f64,
    /// Azimuthal angle `ψ ∈ [-π, π)`.
    pub psi: f64,
    /// Azimuthal angular velocity `Ψ`.
    pub psi_rate: f64,
    /// Polar angle `θ ∈ (0, π/2)`; vertical and horizontal rod excluded.
    pub theta: f64,
    /// Polar angular velocity `Θ`.
    pub theta_rate: f64,
    /// Relative slip angle `φ = β - ψ`, nominally in `(-π, 0]`.
    pub phi: f64,
    /// Slip speed `η ≥ 0`.
    pub eta: f64,
}

impl ScaledState {
    /// A slipping state (`z = w = 0`) at the contact-point origin.
    pub fn slipping(
        psi: f64,
        psi_rate: f64,
        theta: f64,
        theta_rate: f64,
        phi: f64,
        eta: f64,
    ) -> Self {
        ScaledState {
            x: 0.0,
            y: 0.0,
            z: 0.0,
            w: 0.0,
            psi,
            psi_rate,
            theta,
            theta_rate,
            phi,
            eta,
        }
    }

    /// Free vertical tip acceleration at this state.
    pub fn b(&self) -> f64 {
        free_accel_b(self.psi_rate, self.theta_rate, self.theta)
    }

    /// Normal-force coefficient at this state.
    pub fn p(&self, params: &RodParams) -> f64 {
        contact_coeff_p(self.theta, self.phi, params)
    }
}

/// Time derivative of [`ScaledState`], field for field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledRates {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub w: f64,
    pub psi: f64,
    pub psi_rate: f64,
    pub theta: f64,
    pub theta_rate: f64,
    pub phi: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelError {
    /// `|p|` below [`TOL_P`]: the contact force is unbounded, the state is
    /// at the paradox boundary.
    DegenerateContact { p: f64 },
    /// `η` below [`TOL_ETA`]: the slip direction is undefined and the rod
    /// is treated as stuck.
    SlipSpeedZero { eta: f64 },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::DegenerateContact { p } => {
                write!(f, "normal-force coefficient p = {p} is degenerate")
            }
            ModelError::SlipSpeedZero { eta } => write!(f, "slip speed eta = {eta} is zero"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModelError {}

/// Scaled free vertical acceleration of the rod tip,
/// `b = (Ψ² cos²θ + Θ²) sinθ - 1`.
///
/// The first term is centripetal lift from azimuthal motion, the second
/// from polar motion, and the `-1` is gravity.
pub fn free_accel_b(psi_rate: f64, theta_rate: f64, theta: f64) -> f64 {
    let c = theta.cos();
    (psi_rate * psi_rate * c * c + theta_rate * theta_rate) * theta.sin() - 1.0
}

/// Normal-force coefficient `p = 1 + α + α sinθ (μ cosθ sinφ - sinθ)`.
///
/// `p < 0` signals a Painlevé paradox; it requires `sinφ < 0` and
/// sufficiently large `μ`.
pub fn contact_coeff_p(theta: f64, phi: f64, params: &RodParams) -> f64 {
    let (alpha, mu) = (params.alpha, params.mu);
    1.0 + alpha + alpha * theta.sin() * (mu * theta.cos() * phi.sin() - theta.sin())
}

/// Gradient of `p` with respect to `(θ, φ)`.
pub fn p_gradient(theta: f64, phi: f64, params: &RodParams) -> (f64, f64) {
    let (alpha, mu) = (params.alpha, params.mu);
    let (st, ct) = (theta.sin(), theta.cos());
    let (sp, cp) = (phi.sin(), phi.cos());
    let p_theta = alpha * mu * sp * (ct * ct - st * st) - 2.0 * alpha * st * ct;
    let p_phi = alpha * mu * st * ct * cp;
    (p_theta, p_phi)
}

/// Gradient of `b` with respect to `(Ψ, θ, Θ)`.
pub fn b_gradient(psi_rate: f64, theta_rate: f64, theta: f64) -> (f64, f64, f64) {
    let (st, ct) = (theta.sin(), theta.cos());
    let b_psi_rate = 2.0 * psi_rate * ct * ct * st;
    let b_theta = (psi_rate * psi_rate * ct * ct + theta_rate * theta_rate) * ct
        - 2.0 * psi_rate * psi_rate * st * st * ct;
    let b_theta_rate = 2.0 * theta_rate * st;
    (b_psi_rate, b_theta, b_theta_rate)
}

/// The eight coefficient functions of the scaled first-order system.
///
/// `η̇ = Q₁ F_z + A₁`, `η φ̇ = Q₂ F_z + A₂ - ηΨ`, `Ψ̇ = d₁ F_z + c₁`,
/// `Θ̇ = d₂ F_z + c₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemCoeffs {
    pub q1: f64,
    pub q2: f64,
    pub a1: f64,
    pub a2: f64,
    pub d1: f64,
    pub d2: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Evaluate the coefficient functions at a state.
pub fn system_coeffs(state: &ScaledState, params: &RodParams) -> SystemCoeffs {
    let (alpha, mu) = (params.alpha, params.mu);
    let (st, ct) = (state.theta.sin(), state.theta.cos());
    let (sp, cp) = (state.phi.sin(), state.phi.cos());
    let (psi_rate, theta_rate) = (state.psi_rate, state.theta_rate);
    let rate2 = psi_rate * psi_rate * ct * ct + theta_rate * theta_rate;
    SystemCoeffs {
        q1: alpha * ct * sp * (mu * ct * sp - st) - (1.0 + alpha) * mu,
        q2: alpha * ct * cp * (mu * ct * sp - st),
        a1: rate2 * ct * sp,
        a2: rate2 * ct * cp,
        d1: -alpha * mu * cp / ct,
        d2: -alpha * mu * st * sp - alpha * ct,
        c1: 2.0 * psi_rate * theta_rate * st / ct,
        c2: -psi_rate * psi_rate * st * ct,
    }
}

/// Normal contact force `F_z = -b/p` under the slipping constraint
/// `z = w = 0`.
pub fn normal_force(state: &ScaledState, params: &RodParams) -> Result<f64, ModelError> {
    let p = state.p(params);
    if p.abs() < TOL_P {
        return Err(ModelError::DegenerateContact { p });
    }
    Ok(-state.b() / p)
}

/// Physical-time right-hand side of the slipping dynamics.
///
/// `ż = ẇ = 0` are enforced through the contact force; fails where the
/// force or the slip direction degenerates.
pub fn slipping_rhs(state: &ScaledState, params: &RodParams) -> Result<ScaledRates, ModelError> {
    if state.eta < TOL_ETA {
        return Err(ModelError::SlipSpeedZero { eta: state.eta });
    }
    let f_z = normal_force(state, params)?;
    let k = system_coeffs(state, params);
    let heading = state.psi + state.phi;
    Ok(ScaledRates {
        x: state.eta * heading.cos(),
        y: state.eta * heading.sin(),
        z: 0.0,
        w: 0.0,
        psi: state.psi_rate,
        psi_rate: k.d1 * f_z + k.c1,
        theta: state.theta_rate,
        theta_rate: k.d2 * f_z + k.c2,
        phi: (k.q2 * f_z + k.a2 - state.eta * state.psi_rate) / state.eta,
        eta: k.q1 * f_z + k.a1,
    })
}

/// Ordering of the desingularized state vector `(η, φ, ψ, Ψ, θ, Θ)`.
pub const DESING_DIM: usize = 6;
pub const IDX_ETA: usize = 0;
pub const IDX_PHI: usize = 1;
pub const IDX_PSI: usize = 2;
pub const IDX_PSI_RATE: usize = 3;
pub const IDX_THETA: usize = 4;
pub const IDX_THETA_RATE: usize = 5;

impl ScaledState {
    /// The `(η, φ, ψ, Ψ, θ, Θ)` vector driven by [`desingularized_rhs`].
    pub fn desing_vector(&self) -> [f64; DESING_DIM] {
        [
            self.eta,
            self.phi,
            self.psi,
            self.psi_rate,
            self.theta,
            self.theta_rate,
        ]
    }

    /// Rebuild a slipping state from a desingularized vector, keeping the
    /// contact-point position of `self`.
    pub fn with_desing_vector(&self, y: &[f64; DESING_DIM]) -> ScaledState {
        ScaledState {
            x: self.x,
            y: self.y,
            z: 0.0,
            w: 0.0,
            psi: y[IDX_PSI],
            psi_rate: y[IDX_PSI_RATE],
            theta: y[IDX_THETA],
            theta_rate: y[IDX_THETA_RATE],
            phi: y[IDX_PHI],
            eta: y[IDX_ETA],
        }
    }
}

/// Right-hand side of the slipping dynamics in the orbit-preserving time
/// `s` with `dt = η p ds`, which removes the `p = 0` and `η = 0`
/// singularities.
///
/// Total on the domain `θ ∈ (0, π/2)`: the set `{b = p = 0}` is a set of
/// equilibria. For `p < 0` the time change runs backwards; output there is
/// a reversed-time artefact of the paradox region.
pub fn desingularized_rhs(y: &[f64; DESING_DIM], params: &RodParams) -> [f64; DESING_DIM] {
    let (eta, phi, _psi, psi_rate, theta, theta_rate) = (
        y[IDX_ETA],
        y[IDX_PHI],
        y[IDX_PSI],
        y[IDX_PSI_RATE],
        y[IDX_THETA],
        y[IDX_THETA_RATE],
    );
    let state = ScaledState::slipping(0.0, psi_rate, theta, theta_rate, phi, eta);
    let k = system_coeffs(&state, params);
    let b = free_accel_b(psi_rate, theta_rate, theta);
    let p = contact_coeff_p(theta, phi, params);
    [
        eta * (-k.q1 * b + k.a1 * p),
        -k.q2 * b + (k.a2 - eta * psi_rate) * p,
        eta * p * psi_rate,
        eta * (-k.d1 * b + k.c1 * p),
        eta * p * theta_rate,
        eta * (-k.d2 * b + k.c2 * p),
    ]
}

/// Wrap an angle into `[-π, π)`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    let mut r = a % two_pi;
    if r < -core::f64::consts::PI {
        r += two_pi;
    } else if r >= core::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Normalize a slip angle for reporting.
///
/// Integration leaves `φ` unwrapped for continuity; reports wrap it into
/// `(-π, π]`. Values in `(0, π]` are images of the nominal range under the
/// symmetry `(φ, Ψ) ↦ (-π - φ, -Ψ)` of the slipping dynamics.
pub fn normalize_phi(phi: f64) -> f64 {
    let w = wrap_angle(phi);
    if w == -core::f64::consts::PI {
        core::f64::consts::PI
    } else {
        w
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen high-precision oracle values
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::{FRAC_PI_2, PI};

    fn params(alpha: f64, mu: f64) -> RodParams {
        RodParams::new(alpha, mu).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(RodParams::new(3.0, 1.4).is_ok());
        assert_eq!(
            RodParams::new(0.0, 1.0),
            Err(ParamError::NonPositiveAlpha(0.0))
        );
        assert_eq!(RodParams::new(3.0, -0.1), Err(ParamError::NegativeMu(-0.1)));
        assert_eq!(RodParams::new(f64::NAN, 1.0), Err(ParamError::NonFinite));
    }

    #[test]
    fn b_at_rest_is_minus_one() {
        assert_relative_eq!(free_accel_b(0.0, 0.0, 0.7), -1.0);
    }

    #[test]
    fn b_vanishes_at_liftoff_threshold() {
        // Smallest |Ψ| with lift-off at Θ = 0 is Ψ_L at θ_L = asin(1/√3).
        let psi_l = (3.0 * 3.0_f64.sqrt() / 2.0).sqrt();
        let theta_l = (1.0 / 3.0_f64.sqrt()).asin();
        assert_relative_eq!(free_accel_b(psi_l, 0.0, theta_l), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn b_vanishes_on_zero_psi_manifold() {
        let theta = 0.9702;
        let theta_rate = (1.0 / theta.sin()).sqrt();
        assert_relative_eq!(free_accel_b(0.0, theta_rate, theta), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn p_roots_match_stated_geometry() {
        let pr = params(3.0, 1.4);
        assert!(contact_coeff_p(0.9702, -FRAC_PI_2, &pr).abs() < 1e-4);
        let theta_p = 2.0_f64.atan();
        assert!(contact_coeff_p(theta_p, -1.8807, &pr).abs() < 1e-4);
        assert!(contact_coeff_p(theta_p, -1.2610, &pr).abs() < 1e-4);
    }

    #[test]
    fn p_positive_without_friction() {
        let pr = params(3.0, 0.0);
        for i in 1..40 {
            let theta = FRAC_PI_2 * i as f64 / 40.0;
            for j in 0..40 {
                let phi = -PI + PI * j as f64 / 40.0;
                assert!(contact_coeff_p(theta, phi, &pr) >= 1.0);
            }
        }
    }

    #[test]
    fn coeffs_vanish_without_rates() {
        let pr = params(3.0, 1.4);
        let st = ScaledState::slipping(0.3, 0.0, 1.1, 0.0, -1.2, 0.5);
        let k = system_coeffs(&st, &pr);
        assert_eq!(k.a1, 0.0);
        assert_eq!(k.a2, 0.0);
        assert_eq!(k.c1, 0.0);
        assert_eq!(k.c2, 0.0);
    }

    #[test]
    fn coeffs_at_planar_slip_angle() {
        // cos φ = 0 kills Q₂ and d₁.
        let pr = params(3.0, 1.4);
        let st = ScaledState::slipping(0.0, 0.5, 1.0, 0.3, -FRAC_PI_2, 1.0);
        let k = system_coeffs(&st, &pr);
        assert!(k.q2.abs() < 1e-15);
        assert!(k.d1.abs() < 1e-15);
    }

    #[test]
    fn coeffs_full_vector_frozen() {
        // Independent high-precision evaluation of the coefficient
        // formulas at θ=1, φ=-1.6, Ψ=0.5, Θ=0.3, α=3, μ=1.4.
        let pr = params(3.0, 1.4);
        let st = ScaledState::slipping(0.0, 0.5, 1.0, 0.3, -1.6, 1.0);
        let k = system_coeffs(&st, &pr);
        assert_relative_eq!(k.q1, -3.011589179570186, epsilon = 1e-13);
        assert_relative_eq!(k.q2, 0.075612600458897182, epsilon = 1e-13);
        assert_relative_eq!(k.a1, -0.088021810598104173, epsilon = 1e-13);
        assert_relative_eq!(k.a2, -0.0025712912123114971, epsilon = 1e-13);
        assert_relative_eq!(k.d1, 0.2269803262608002, epsilon = 1e-13);
        assert_relative_eq!(k.d2, 1.9117642557806942, epsilon = 1e-13);
        assert_relative_eq!(k.c1, 0.46722231739647067, epsilon = 1e-13);
        assert_relative_eq!(k.c2, -0.11366217835321021, epsilon = 1e-13);
    }

    #[test]
    fn normal_force_direct_ratio() {
        // F_z = -b/p; at Θ=Ψ=0 the free acceleration is -1, so F_z = 1/p.
        let pr = params(3.0, 1.4);
        let st = ScaledState::slipping(0.0, 0.0, 0.5, 0.0, -FRAC_PI_2, 1.0);
        let p = st.p(&pr);
        assert!(p > 0.0);
        assert_relative_eq!(normal_force(&st, &pr).unwrap(), 1.0 / p, epsilon = 1e-14);
    }

    #[test]
    fn normal_force_zero_on_b_zero() {
        let pr = params(3.0, 1.4);
        let theta = 0.5;
        let st =
            ScaledState::slipping(0.0, 0.0, theta, (1.0 / theta.sin()).sqrt(), -FRAC_PI_2, 1.0);
        assert!(normal_force(&st, &pr).unwrap().abs() < 1e-14);
    }

    #[test]
    fn normal_force_degenerate_near_paradox_boundary() {
        let pr = params(3.0, 1.4);
        let mut st = ScaledState::slipping(0.0, 0.0, 0.9702, 0.0, -FRAC_PI_2, 1.0);
        // Move θ onto the p = 0 root by bisection.
        let (mut lo, mut hi) = (0.9, 1.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if contact_coeff_p(mid, st.phi, &pr) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        st.theta = 0.5 * (lo + hi);
        assert!(matches!(
            normal_force(&st, &pr),
            Err(ModelError::DegenerateContact { .. })
        ));
    }

    #[test]
    fn planar_problem_is_invariant() {
        // Ψ = 0, φ = -π/2: the azimuthal and slip-angle rates vanish.
        let pr = params(3.0, 1.4);
        for &(theta, theta_rate, eta) in &[(0.4, 0.0, 1.0), (0.9, 0.7, 2.0), (1.3, -0.5, 0.3)] {
            let st = ScaledState::slipping(0.2, 0.0, theta, theta_rate, -FRAC_PI_2, eta);
            let r = slipping_rhs(&st, &pr).unwrap();
            assert!(r.phi.abs() < 1e-14, "phi rate {}", r.phi);
            assert!(r.psi_rate.abs() < 1e-14, "psi_rate rate {}", r.psi_rate);
        }
    }

    #[test]
    fn theta_accel_at_zero_rates() {
        // With Θ = Ψ = 0, b = -1 and the θ-equation reduces to -d₂·b/p.
        let pr = params(3.0, 1.4);
        let st = ScaledState::slipping(0.0, 0.0, 0.8, 0.0, -1.0, 1.5);
        let r = slipping_rhs(&st, &pr).unwrap();
        let k = system_coeffs(&st, &pr);
        let p = st.p(&pr);
        assert_relative_eq!(r.theta_rate, k.d2 / p, epsilon = 1e-13);
        assert_relative_eq!(st.b(), -1.0);
    }

    #[test]
    fn contact_point_kinematics() {
        let pr = params(3.0, 1.4);
        let st = ScaledState::slipping(0.7, 0.2, 1.0, -0.1, -1.3, 1.7);
        let r = slipping_rhs(&st, &pr).unwrap();
        assert_relative_eq!(r.x, st.eta * (st.psi + st.phi).cos(), epsilon = 1e-15);
        assert_relative_eq!(r.y, st.eta * (st.psi + st.phi).sin(), epsilon = 1e-15);
        assert_eq!(r.z, 0.0);
        assert_eq!(r.w, 0.0);
    }

    #[test]
    fn slip_speed_zero_is_an_error() {
        let pr = params(3.0, 1.4);
        let st = ScaledState::slipping(0.0, 0.0, 0.8, 0.0, -1.0, 0.0);
        assert!(matches!(
            slipping_rhs(&st, &pr),
            Err(ModelError::SlipSpeedZero { .. })
        ));
    }

    #[test]
    fn desingularized_at_zero_eta() {
        // Every component except φ' carries a factor η.
        let pr = params(3.0, 1.4);
        let y = [0.0, -1.2, 0.3, 0.4, 0.9, 0.2];
        let f = desingularized_rhs(&y, &pr);
        let st = ScaledState::slipping(0.3, 0.4, 0.9, 0.2, -1.2, 0.0);
        let k = system_coeffs(&st, &pr);
        let expect_phi = -k.q2 * st.b() + k.a2 * st.p(&pr);
        for (i, v) in f.iter().enumerate() {
            if i == IDX_PHI {
                assert_relative_eq!(*v, expect_phi, epsilon = 1e-14);
            } else {
                assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn desingularized_equilibrium_on_intersection() {
        // b = p = 0 is a set of equilibria of the desingularized flow.
        let pr = params(3.0, 1.4);
        let theta = 0.97015541598827928; // root of p(θ, -π/2) = 0
        let theta_rate = (1.0 / theta.sin()).sqrt();
        let y = [2.0, -FRAC_PI_2, 0.1, 0.0, theta, theta_rate];
        let f = desingularized_rhs(&y, &pr);
        for v in f {
            assert!(v.abs() < 1e-13, "field component {v} at equilibrium");
        }
    }

    #[test]
    fn desingularization_identity_random_states() {
        // η·p·(physical rates of (η,φ,ψ,Ψ,θ,Θ)) equals the desingularized
        // field wherever both are defined.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let pr = params(3.0, 1.4);
        let mut checked = 0;
        while checked < 1000 {
            let st = ScaledState::slipping(
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.05..1.5),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-3.1..0.0),
                rng.gen_range(0.1..4.0),
            );
            let p = st.p(&pr);
            if p.abs() < 1e-3 {
                continue;
            }
            let phys = match slipping_rhs(&st, &pr) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let desing = desingularized_rhs(&st.desing_vector(), &pr);
            let scale = st.eta * p;
            let phys_vec = [
                phys.eta,
                phys.phi,
                phys.psi,
                phys.psi_rate,
                phys.theta,
                phys.theta_rate,
            ];
            for i in 0..DESING_DIM {
                let lhs = scale * phys_vec[i];
                let denom = lhs.abs().max(desing[i].abs()).max(1e-12);
                assert!(
                    (lhs - desing[i]).abs() / denom < 1e-12,
                    "component {i}: {lhs} vs {}",
                    desing[i]
                );
            }
            checked += 1;
        }
    }

    #[test]
    fn b_p_symmetries() {
        let pr = params(3.0, 1.4);
        for &(psi_rate, theta_rate, theta, phi) in &[
            (0.7, 0.3, 0.9, -1.2),
            (1.5, -0.4, 1.3, -2.8),
            (0.0, 1.1, 0.4, -0.3),
        ] {
            // b even in Θ and in Ψ.
            assert_eq!(
                free_accel_b(psi_rate, theta_rate, theta),
                free_accel_b(-psi_rate, -theta_rate, theta)
            );
            // p symmetric about φ = -π/2.
            let mirrored = -PI - phi;
            assert_relative_eq!(
                contact_coeff_p(theta, phi, &pr),
                contact_coeff_p(theta, mirrored, &pr),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn angle_wrapping() {
        assert_relative_eq!(wrap_angle(3.0 * PI), -PI);
        assert_relative_eq!(wrap_angle(-PI), -PI);
        assert_relative_eq!(wrap_angle(0.5), 0.5);
        assert_relative_eq!(normalize_phi(-PI - 0.25), PI - 0.25, epsilon = 1e-14);
    }
}
