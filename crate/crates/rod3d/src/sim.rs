//! Event-detecting integration of the slipping dynamics, in
//! desingularized and in physical time, and the separatrix experiments
//! near `{b = p = 0}`.
//!
//! The desingularized flow is total between events, so the integrator
//! runs freely and terminal events (`p = 0`, `b = 0`, `η = 0`, domain
//! exit) are located on the dense interpolant of the step that crossed
//! them. Physical-time integration of the same orbit is kept for
//! cross-checking the time change `dt = η p ds`; it stops just short of
//! the `p = 0` singularity instead of crossing it.

use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::gb::GBPoint;
use crate::linearize::{eigen_classify, k_matrix, EigenData, KMatrix, LinearizeError};
use crate::model::{
    b_gradient, contact_coeff_p, free_accel_b, p_gradient, slipping_rhs, RodParams, ScaledState,
    TOL_ETA,
};
use crate::ode::{DenseStep, Dopri5, StepError};

/// Integration state: the six desingularized coordinates, the cyclic
/// contact-point position, and the other clock.
const DIM: usize = 9;
const I_ETA: usize = 0;
const I_PHI: usize = 1;
const I_PSI: usize = 2;
const I_PSI_RATE: usize = 3;
const I_THETA: usize = 4;
const I_THETA_RATE: usize = 5;
const I_X: usize = 6;
const I_Y: usize = 7;
const I_CLOCK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub h_init: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cap on the integration variable (`s` or `t`); near-manifold
    /// dynamics are slow, so the default is generous.
    pub max_time: f64,
    /// Event location tolerance in the integration variable.
    pub event_tol: f64,
    /// Record every n-th accepted step (events and endpoints always).
    pub output_stride: usize,
    pub max_steps: usize,
    /// Domain guard: `θ` kept inside `[margin, π/2 - margin]`.
    pub domain_margin: f64,
    /// Step cap so no event is skipped inside one long step.
    pub h_max: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            h_init: 1e-4,
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_time: 1e3,
            event_tol: 1e-12,
            output_stride: 1,
            max_steps: 2_000_000,
            domain_margin: 1e-6,
            h_max: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// `p` reached zero (paradox boundary).
    CrossP0,
    /// `b` reached zero (lift-off boundary).
    CrossB0,
    /// `η` fell to the sticking tolerance.
    EtaZero,
    /// Terminated at or below the sticking tolerance without a located
    /// crossing (e.g. at the initial state).
    Stuck,
    /// `θ` left the admissible cone.
    LeftDomain,
}

impl EventKind {
    pub fn label(self) -> &'static str {
        match self {
            EventKind::CrossP0 => "cross_p0",
            EventKind::CrossB0 => "cross_b0",
            EventKind::EtaZero => "eta_zero",
            EventKind::Stuck => "stuck",
            EventKind::LeftDomain => "left_domain",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    /// Index into the sample list.
    pub index: usize,
    pub kind: EventKind,
    /// Value of the integration variable at the event.
    pub s: f64,
    pub state: ScaledState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Inconsistent,
    LiftOff,
    Stuck,
    /// No contact-mode resolution before the time or domain budget ran
    /// out.
    MaxTime,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Inconsistent => "inconsistent",
            Verdict::LiftOff => "lift_off",
            Verdict::Stuck => "stuck",
            Verdict::MaxTime => "max_time",
        }
    }
}

/// One output row: both clocks, the state, and the contact fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    /// Desingularized time.
    pub s: f64,
    /// Physical time.
    pub t: f64,
    pub state: ScaledState,
    pub b: f64,
    pub p: f64,
    /// `-b/p`, unbounded near the paradox boundary.
    pub f_z: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord {
    pub samples: Vec<Sample>,
    pub events: Vec<Event>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimError {
    /// Step-size underflow; the last valid state is reported.
    StepFailure {
        s: f64,
        last: ScaledState,
    },
    TooManySteps {
        s: f64,
    },
    /// Initial state violates `p > 0`, `θ ∈ (0, π/2)`, or finiteness.
    InvalidInitial,
    /// Nonpositive tolerance or budget in the configuration.
    InvalidConfig,
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::StepFailure { s, .. } => write!(f, "step controller underflow at s = {s}"),
            SimError::TooManySteps { s } => write!(f, "step budget exhausted at s = {s}"),
            SimError::InvalidInitial => write!(f, "initial state outside the slipping closure"),
            SimError::InvalidConfig => write!(f, "tolerances and budgets must be positive"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SimError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutcomeError {
    /// Two events landed within event tolerance of each other.
    Ambiguous {
        first: EventKind,
        second: EventKind,
        s: f64,
    },
    /// The terminating event does not satisfy its sign condition.
    Unresolved { kind: EventKind },
}

impl fmt::Display for OutcomeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeError::Ambiguous { first, second, s } => {
                write!(
                    f,
                    "events {} and {} coincide at s = {s}",
                    first.label(),
                    second.label()
                )
            }
            OutcomeError::Unresolved { kind } => {
                write!(f, "event {} lacks its sign condition", kind.label())
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OutcomeError {}

fn state_of(y: &[f64; DIM]) -> ScaledState {
    ScaledState {
        x: y[I_X],
        y: y[I_Y],
        z: 0.0,
        w: 0.0,
        psi: y[I_PSI],
        psi_rate: y[I_PSI_RATE],
        theta: y[I_THETA],
        theta_rate: y[I_THETA_RATE],
        phi: y[I_PHI],
        eta: y[I_ETA],
    }
}

fn sample_of(s_var: f64, y: &[f64; DIM], params: &RodParams, desingularized: bool) -> Sample {
    let state = state_of(y);
    let b = state.b();
    let p = state.p(params);
    let (s, t) = if desingularized {
        (s_var, y[I_CLOCK])
    } else {
        (y[I_CLOCK], s_var)
    };
    Sample {
        s,
        t,
        state,
        b,
        p,
        f_z: -b / p,
    }
}

/// Terminal event functions, all positive while slipping remains
/// admissible; a crossing to zero terminates. An event arms only once its
/// guard has cleared a small band, so starts on a boundary (the manifold
/// itself) idle instead of firing on rounding noise.
const ARM_BAND: f64 = 1e-11;

struct Guards<'a> {
    params: &'a RodParams,
    margin: f64,
    /// Physical-time runs cannot touch `p = 0`; stop at a small positive
    /// offset instead.
    p_floor: f64,
}

impl Guards<'_> {
    fn eval(&self, y: &[f64; DIM]) -> [f64; 4] {
        let theta = y[I_THETA];
        [
            contact_coeff_p(theta, y[I_PHI], self.params) - self.p_floor,
            -free_accel_b(y[I_PSI_RATE], y[I_THETA_RATE], theta),
            y[I_ETA] - TOL_ETA,
            (theta - self.margin).min(core::f64::consts::FRAC_PI_2 - self.margin - theta),
        ]
    }

    fn kind(i: usize) -> EventKind {
        match i {
            0 => EventKind::CrossP0,
            1 => EventKind::CrossB0,
            2 => EventKind::EtaZero,
            _ => EventKind::LeftDomain,
        }
    }
}

fn integrate(
    initial: &ScaledState,
    params: &RodParams,
    config: &SimConfig,
    desingularized: bool,
) -> Result<TrajectoryRecord, SimError> {
    if !(config.abs_tol > 0.0
        && config.rel_tol > 0.0
        && config.event_tol > 0.0
        && config.max_time > 0.0
        && config.h_max > 0.0)
    {
        return Err(SimError::InvalidConfig);
    }
    let p0 = initial.p(params);
    let margin = config.domain_margin;
    // The closure of the slipping region includes p = 0 (the manifold
    // itself is a valid, stationary start).
    let theta_ok = initial.theta > margin && initial.theta < core::f64::consts::FRAC_PI_2 - margin;
    let eta_ok = initial.eta.is_finite() && initial.eta >= 0.0;
    if p0.is_nan() || p0 <= -1e-12 || !theta_ok || !eta_ok {
        return Err(SimError::InvalidInitial);
    }

    let guards = Guards {
        params,
        margin,
        p_floor: if desingularized { 0.0 } else { 1e-8 },
    };
    let prm = *params;
    let mut rhs = move |_s: f64, y: &[f64; DIM]| -> [f64; DIM] {
        let mut out = [0.0; DIM];
        let six = [y[0], y[1], y[2], y[3], y[4], y[5]];
        if desingularized {
            let f = crate::model::desingularized_rhs(&six, &prm);
            out[..6].copy_from_slice(&f);
            let eta = y[I_ETA];
            let p = contact_coeff_p(y[I_THETA], y[I_PHI], &prm);
            let heading = y[I_PSI] + y[I_PHI];
            out[I_X] = eta * eta * p * heading.cos();
            out[I_Y] = eta * eta * p * heading.sin();
            out[I_CLOCK] = eta * p;
        } else {
            let state = state_of(y);
            match slipping_rhs(&state, &prm) {
                Ok(r) => {
                    out = [
                        r.eta,
                        r.phi,
                        r.psi,
                        r.psi_rate,
                        r.theta,
                        r.theta_rate,
                        r.x,
                        r.y,
                        0.0,
                    ];
                    let denom = state.eta * state.p(&prm);
                    out[I_CLOCK] = 1.0 / denom;
                }
                Err(_) => {
                    // Past an event; poison the stage so the step is
                    // rejected and shrinks back.
                    out = [f64::NAN; DIM];
                }
            }
        }
        out
    };

    let y0 = [
        initial.eta,
        initial.phi,
        initial.psi,
        initial.psi_rate,
        initial.theta,
        initial.theta_rate,
        initial.x,
        initial.y,
        0.0,
    ];

    let mut samples = Vec::new();
    let mut events = Vec::new();
    samples.push(sample_of(0.0, &y0, params, desingularized));

    if initial.eta <= TOL_ETA {
        events.push(Event {
            index: 0,
            kind: EventKind::Stuck,
            s: 0.0,
            state: *initial,
        });
        return Ok(TrajectoryRecord {
            samples,
            events,
            verdict: Verdict::Stuck,
        });
    }

    let mut stepper: Dopri5<DIM> = Dopri5::new(
        0.0,
        y0,
        config.h_init,
        config.abs_tol,
        config.rel_tol,
        config.h_max,
        &mut rhs,
    );
    let mut g_prev = guards.eval(&y0);
    let mut armed = [false; 4];
    for (a, g) in armed.iter_mut().zip(g_prev) {
        *a = g > ARM_BAND;
    }
    let mut since_output = 0usize;

    for _ in 0..config.max_steps {
        let step = match stepper.step(&mut rhs) {
            Ok(st) => st,
            Err(StepError::StepSizeUnderflow { t } | StepError::NonFinite { t }) => {
                let last = samples.last().map(|s| s.state).unwrap_or(*initial);
                return Err(SimError::StepFailure { s: t, last });
            }
        };
        let s1 = step.t1();
        let y1 = *stepper.y();
        let g_now = guards.eval(&y1);

        // Locate the earliest guard crossing inside this step, if any.
        let mut hits: Vec<(f64, usize)> = Vec::new();
        for i in 0..4 {
            if !armed[i] {
                armed[i] = g_now[i] > ARM_BAND;
                continue;
            }
            if g_prev[i] > 0.0 && g_now[i] <= 0.0 {
                let s_hit = bisect_guard(&step, &guards, i, config.event_tol);
                hits.push((s_hit, i));
            }
        }
        if !hits.is_empty() {
            hits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let (s_star, _) = hits[0];
            let y_star = step.eval(s_star);
            samples.push(sample_of(s_star, &y_star, params, desingularized));
            let idx = samples.len() - 1;
            let state = state_of(&y_star);
            for (s_hit, i) in &hits {
                if *s_hit - s_star <= config.event_tol {
                    events.push(Event {
                        index: idx,
                        kind: Guards::kind(*i),
                        s: *s_hit,
                        state,
                    });
                }
            }
            let verdict = match events[0].kind {
                EventKind::CrossP0 => Verdict::Inconsistent,
                EventKind::CrossB0 => Verdict::LiftOff,
                EventKind::EtaZero | EventKind::Stuck => Verdict::Stuck,
                EventKind::LeftDomain => Verdict::MaxTime,
            };
            return Ok(TrajectoryRecord {
                samples,
                events,
                verdict,
            });
        }
        g_prev = g_now;

        if s1 >= config.max_time {
            let y_end = step.eval(config.max_time);
            samples.push(sample_of(config.max_time, &y_end, params, desingularized));
            return Ok(TrajectoryRecord {
                samples,
                events,
                verdict: Verdict::MaxTime,
            });
        }

        since_output += 1;
        if since_output >= config.output_stride {
            samples.push(sample_of(s1, &y1, params, desingularized));
            since_output = 0;
        }
    }
    Err(SimError::TooManySteps { s: stepper.t() })
}

fn bisect_guard(step: &DenseStep<DIM>, guards: &Guards<'_>, i: usize, tol: f64) -> f64 {
    let mut lo = step.t0;
    let mut hi = step.t1();
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if guards.eval(&step.eval(mid))[i] > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Integrate the desingularized flow from a slipping state until a
/// terminal event or the time budget.
pub fn integrate_desingularized(
    initial: &ScaledState,
    params: &RodParams,
    config: &SimConfig,
) -> Result<TrajectoryRecord, SimError> {
    integrate(initial, params, config, true)
}

/// Integrate the physical-time slipping dynamics. Stops a small positive
/// offset short of `p = 0`, where the contact force diverges.
pub fn integrate_slipping(
    initial: &ScaledState,
    params: &RodParams,
    config: &SimConfig,
) -> Result<TrajectoryRecord, SimError> {
    integrate(initial, params, config, false)
}

/// Re-derive the verdict from the recorded events, validating the sign
/// conditions and rejecting coincident events.
pub fn classify_outcome(record: &TrajectoryRecord) -> Result<Verdict, OutcomeError> {
    if record.events.len() >= 2 {
        return Err(OutcomeError::Ambiguous {
            first: record.events[0].kind,
            second: record.events[1].kind,
            s: record.events[0].s,
        });
    }
    let ev = match record.events.first() {
        None => return Ok(Verdict::MaxTime),
        Some(ev) => ev,
    };
    let sample = &record.samples[ev.index];
    match ev.kind {
        EventKind::CrossP0 => {
            if sample.b < 0.0 {
                Ok(Verdict::Inconsistent)
            } else {
                Err(OutcomeError::Unresolved { kind: ev.kind })
            }
        }
        EventKind::CrossB0 => {
            if sample.p > 0.0 {
                Ok(Verdict::LiftOff)
            } else {
                Err(OutcomeError::Unresolved { kind: ev.kind })
            }
        }
        EventKind::EtaZero | EventKind::Stuck => Ok(Verdict::Stuck),
        EventKind::LeftDomain => Ok(Verdict::MaxTime),
    }
}

/// Fan of initial conditions around a manifold point in the `(p, b)`
/// coordinate lift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanSpec {
    /// Slip speed at the base point; `K` depends on it, so it is
    /// required.
    pub eta: f64,
    /// Radius of the fan in `(p, b)` values.
    pub delta: f64,
    pub n_seeds: usize,
    /// Bisection tolerance on the fan angle, radians.
    pub angle_tol: f64,
    /// Fan angles (in the `(p, b)`-plane) swept over the slipping
    /// quadrant.
    pub gamma_min: f64,
    pub gamma_max: f64,
}

impl FanSpec {
    pub fn new(eta: f64) -> Self {
        FanSpec {
            eta,
            delta: 1e-3,
            n_seeds: 9,
            angle_tol: 1e-6,
            gamma_min: -core::f64::consts::FRAC_PI_2 + 0.02,
            gamma_max: -0.02,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparatrixResult {
    /// Empirical separating angle in the `(p, b)`-plane.
    pub gamma: f64,
    /// Unit direction `(cos γ, sin γ)`.
    pub direction: [f64; 2],
    /// Eigenvector of the smaller eigenvalue of `K`, the predicted
    /// tangent.
    pub designated_eigvec: [f64; 2],
    /// Angle between the two as lines (mod π), radians.
    pub angle_error: f64,
    pub k: KMatrix,
    pub eigen: EigenData,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeparatrixError {
    Linearize(LinearizeError),
    /// Complex eigenvalues at the base point (not a `Θ > 0` point).
    ComplexEigenvalues,
    /// The whole fan produced one verdict.
    NoSignChange,
    Sim(SimError),
}

impl fmt::Display for SeparatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparatrixError::Linearize(e) => write!(f, "{e}"),
            SeparatrixError::ComplexEigenvalues => {
                write!(f, "complex eigenvalues at the base point")
            }
            SeparatrixError::NoSignChange => write!(f, "fan produced a single verdict"),
            SeparatrixError::Sim(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SeparatrixError {}

impl From<LinearizeError> for SeparatrixError {
    fn from(e: LinearizeError) -> Self {
        SeparatrixError::Linearize(e)
    }
}

impl From<SimError> for SeparatrixError {
    fn from(e: SimError) -> Self {
        SeparatrixError::Sim(e)
    }
}

/// Right inverse of the `(p, b)` gradient at a manifold point: columns
/// move the state one unit in `p` resp. `b` while leaving the other
/// fixed, staying in the `(φ, Ψ, θ, Θ)` directions.
fn coordinate_lift(point: &GBPoint, params: &RodParams) -> [[f64; 6]; 2] {
    let (p_theta, p_phi) = p_gradient(point.theta, point.phi, params);
    let (b_psi_rate, b_theta, b_theta_rate) =
        b_gradient(point.psi_rate, point.theta_rate, point.theta);
    let rows = [
        [0.0, p_phi, 0.0, 0.0, p_theta, 0.0],
        [0.0, 0.0, 0.0, b_psi_rate, b_theta, b_theta_rate],
    ];
    // Gram matrix and its inverse.
    let mut gram = [[0.0f64; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            gram[r][c] = (0..6).map(|i| rows[r][i] * rows[c][i]).sum();
        }
    }
    let det = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0];
    let inv = [
        [gram[1][1] / det, -gram[0][1] / det],
        [-gram[1][0] / det, gram[0][0] / det],
    ];
    let mut lift = [[0.0f64; 6]; 2];
    for col in 0..2 {
        for i in 0..6 {
            lift[col][i] = rows[0][i] * inv[0][col] + rows[1][i] * inv[1][col];
        }
    }
    lift
}

fn fan_state(
    point: &GBPoint,
    eta: f64,
    lift: &[[f64; 6]; 2],
    delta: f64,
    gamma: f64,
) -> ScaledState {
    let dir = [gamma.cos(), gamma.sin()];
    let mut y = [
        eta,
        point.phi,
        0.0,
        point.psi_rate,
        point.theta,
        point.theta_rate,
    ];
    for i in 0..6 {
        y[i] += delta * (dir[0] * lift[0][i] + dir[1] * lift[1][i]);
    }
    ScaledState::slipping(y[2], y[3], y[4], y[5], y[1], y[0])
}

/// Bisect a one-parameter fan of initial conditions transverse to the
/// manifold for the direction separating lift-off from inconsistency,
/// and compare it with the designated eigenvector.
pub fn find_separatrix(
    point: &GBPoint,
    params: &RodParams,
    config: &SimConfig,
    fan: &FanSpec,
) -> Result<SeparatrixResult, SeparatrixError> {
    let k = k_matrix(point, fan.eta, params)?;
    let eigen = eigen_classify(&k);
    let designated = match eigen.e_minus {
        Some(e) => e,
        None => return Err(SeparatrixError::ComplexEigenvalues),
    };
    let lift = coordinate_lift(point, params);

    let verdict_at = |gamma: f64| -> Result<Verdict, SimError> {
        let ic = fan_state(point, fan.eta, &lift, fan.delta, gamma);
        Ok(integrate_desingularized(&ic, params, config)?.verdict)
    };

    let n = fan.n_seeds.max(2);
    let mut bracket: Option<(f64, f64)> = None; // (inconsistent side, lift-off side)
    let mut prev: Option<(f64, Verdict)> = None;
    for i in 0..n {
        let gamma = fan.gamma_min + (fan.gamma_max - fan.gamma_min) * i as f64 / (n - 1) as f64;
        let v = verdict_at(gamma)?;
        if let Some((pg, pv)) = prev {
            match (pv, v) {
                (Verdict::Inconsistent, Verdict::LiftOff) => {
                    bracket = Some((pg, gamma));
                    break;
                }
                (Verdict::LiftOff, Verdict::Inconsistent) => {
                    bracket = Some((gamma, pg));
                    break;
                }
                _ => {}
            }
        }
        prev = Some((gamma, v));
    }
    let (mut g_inc, mut g_lift) = bracket.ok_or(SeparatrixError::NoSignChange)?;

    let mut gamma = 0.5 * (g_inc + g_lift);
    while (g_inc - g_lift).abs() > fan.angle_tol {
        gamma = 0.5 * (g_inc + g_lift);
        match verdict_at(gamma)? {
            Verdict::Inconsistent => g_inc = gamma,
            Verdict::LiftOff => g_lift = gamma,
            // Converged onto the invariant orbit itself.
            _ => break,
        }
    }

    let direction = [gamma.cos(), gamma.sin()];
    let mut d = (gamma - designated[1].atan2(designated[0])) % core::f64::consts::PI;
    if d < 0.0 {
        d += core::f64::consts::PI;
    }
    if d > core::f64::consts::FRAC_PI_2 {
        d = core::f64::consts::PI - d;
    }
    Ok(SeparatrixResult {
        gamma,
        direction,
        designated_eigvec: designated,
        angle_error: d,
        k,
        eigen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::{gb_point_at, Branch};
    use crate::Sign;
    use core::f64::consts::FRAC_PI_2;

    fn params() -> RodParams {
        RodParams::new(3.0, 1.4).unwrap()
    }

    fn quick_config() -> SimConfig {
        SimConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            ..SimConfig::default()
        }
    }

    #[test]
    fn equilibrium_initial_condition_stays_put() {
        let pr = params();
        let pt = gb_point_at(&pr, 0.0, -FRAC_PI_2, Branch::Lower, Sign::Plus).unwrap();
        let ic = ScaledState::slipping(0.0, 0.0, pt.theta, pt.theta_rate, pt.phi, 2.0);
        let mut cfg = quick_config();
        cfg.max_time = 5.0;
        let rec = integrate_desingularized(&ic, &pr, &cfg).unwrap();
        assert_eq!(rec.verdict, Verdict::MaxTime);
        let last = rec.samples.last().unwrap();
        assert!((last.state.theta - pt.theta).abs() < 1e-9);
        assert!((last.state.theta_rate - pt.theta_rate).abs() < 1e-9);
    }

    #[test]
    fn stuck_at_zero_slip_speed() {
        let pr = params();
        let ic = ScaledState::slipping(0.0, 0.0, 0.8, 0.0, -1.2, 0.0);
        let rec = integrate_desingularized(&ic, &pr, &quick_config()).unwrap();
        assert_eq!(rec.verdict, Verdict::Stuck);
        assert_eq!(classify_outcome(&rec).unwrap(), Verdict::Stuck);
    }

    #[test]
    fn invalid_config_rejected() {
        let pr = params();
        let ic = ScaledState::slipping(0.0, 0.0, 0.8, 0.0, -1.2, 1.0);
        let cfg = SimConfig {
            abs_tol: 0.0,
            ..SimConfig::default()
        };
        assert!(matches!(
            integrate_desingularized(&ic, &pr, &cfg),
            Err(SimError::InvalidConfig)
        ));
    }

    #[test]
    fn invalid_initial_rejected() {
        let pr = params();
        // Inside the paradox region: p < 0.
        let ic = ScaledState::slipping(0.0, 0.0, 1.1, 0.0, -FRAC_PI_2, 1.0);
        assert!(matches!(
            integrate_desingularized(&ic, &pr, &quick_config()),
            Err(SimError::InvalidInitial)
        ));
    }

    #[test]
    fn slipping_state_resolves_to_liftoff_or_paradox() {
        // A plain slipping state away from the manifold must terminate
        // with a contact-mode event whose sign condition holds.
        let pr = params();
        let ic = ScaledState::slipping(0.0, 0.0, 0.6, 0.4, -1.9, 1.5);
        let rec = integrate_desingularized(&ic, &pr, &quick_config()).unwrap();
        let v = classify_outcome(&rec).unwrap();
        assert_eq!(v, rec.verdict);
        assert!(matches!(
            v,
            Verdict::LiftOff | Verdict::Inconsistent | Verdict::Stuck
        ));
        let ev = rec.events[0];
        let at = &rec.samples[ev.index];
        match ev.kind {
            EventKind::CrossP0 => assert!(at.p.abs() < 1e-8 && at.b < 0.0),
            EventKind::CrossB0 => assert!(at.b.abs() < 1e-8 && at.p > 0.0),
            EventKind::EtaZero => assert!(at.state.eta <= TOL_ETA * 1.01),
            _ => {}
        }
    }

    #[test]
    fn samples_are_monotone_in_both_clocks() {
        let pr = params();
        let ic = ScaledState::slipping(0.0, 0.2, 0.9, 0.3, -1.7, 2.0);
        let rec = integrate_desingularized(&ic, &pr, &quick_config()).unwrap();
        assert!(rec.samples.len() > 3);
        for w in rec.samples.windows(2) {
            assert!(w[1].s >= w[0].s);
            // p > 0 throughout slipping, so physical time advances too.
            assert!(w[1].t >= w[0].t);
        }
    }

    #[test]
    fn classify_rejects_coincident_events() {
        let st = ScaledState::slipping(0.0, 0.0, 0.8, 0.0, -1.2, 1.0);
        let sample = Sample {
            s: 1.0,
            t: 1.0,
            state: st,
            b: -0.1,
            p: 0.0,
            f_z: f64::INFINITY,
        };
        let rec = TrajectoryRecord {
            samples: alloc::vec![sample],
            events: alloc::vec![
                Event {
                    index: 0,
                    kind: EventKind::CrossP0,
                    s: 1.0,
                    state: st
                },
                Event {
                    index: 0,
                    kind: EventKind::CrossB0,
                    s: 1.0 + 1e-13,
                    state: st
                },
            ],
            verdict: Verdict::Inconsistent,
        };
        assert!(matches!(
            classify_outcome(&rec),
            Err(OutcomeError::Ambiguous { .. })
        ));
    }
}
