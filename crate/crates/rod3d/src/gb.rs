//! Tracing of the codimension-2 set `{b = 0} ∩ {p = 0}` at fixed `Ψ`.
//!
//! On `p = 0` the polar angle is a closed-form function of the slip angle,
//! `θ = θ∓(φ)`, and `b = 0` fixes the polar rate through the ellipse
//! `M(θ) Ψ² + Θ² = N(θ)` with `M = cos²θ`, `N = cscθ`. A section of the
//! set at fixed `Ψ` is therefore a curve over the `p = 0` loop in the
//! `(θ, φ)`-plane, cut wherever `N - M Ψ²` turns negative; the cut
//! locations coincide with the endpoints of the `Θ = 0` lift-off interval
//! and are computed exactly in `θ` (the `φ`-parametrization is
//! ill-conditioned there, the `θ` one is not).

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::critical::{critical_set, paradox_boundary_phi};
use crate::model::{contact_coeff_p, free_accel_b, RodParams};
use crate::modes::liftoff_at_zero_theta_rate;
use crate::Sign;

/// On-manifold residual bound for traced points.
pub const TOL_ON: f64 = 1e-10;

/// Which `θ`-root of `p = 0` generated a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `θ₋(φ)`, below `θ_P`.
    Lower,
    /// `θ₊(φ)`, above `θ_P`.
    Upper,
}

/// One point on `{b = 0} ∩ {p = 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GBPoint {
    pub theta: f64,
    pub phi: f64,
    pub theta_rate: f64,
    pub psi_rate: f64,
    pub branch: Branch,
}

/// Connectivity of the fixed-sign section.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Empty,
    /// The whole `p = 0` loop is admissible; `|Θ|` never reaches zero.
    Closed,
    /// One open arc with `Θ = 0` endpoints.
    SingleArc,
    /// Two open arcs, one through `θ₁` and one through `θ₂`.
    TwoArcs,
}

/// Ordered samples of the section at fixed `Ψ` and fixed sign of `Θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GBCurve {
    pub points: Vec<GBPoint>,
    pub topology: Topology,
    pub theta_rate_sign: Sign,
    pub psi_rate: f64,
}

/// Coefficients of the `b = 0` ellipse in `(Ψ, Θ)` at fixed `θ`:
/// `M Ψ² + Θ² = N`.
pub fn ellipse_mn(theta: f64) -> (f64, f64) {
    let c = theta.cos();
    (c * c, 1.0 / theta.sin())
}

/// `θ`-root of `p(θ, φ) = 0` on the requested branch, if any.
pub fn theta_root(phi: f64, branch: Branch, params: &RodParams) -> Option<f64> {
    let s = -params.mu * params.alpha * phi.sin();
    if s <= 0.0 {
        return None;
    }
    let mut disc = s * s - 4.0 * (params.alpha + 1.0);
    if disc < 0.0 {
        if disc > -1e-12 * s * s {
            disc = 0.0;
        } else {
            return None;
        }
    }
    let root = disc.sqrt();
    Some(match branch {
        Branch::Lower => (0.5 * s - 0.5 * root).atan(),
        Branch::Upper => (0.5 * s + 0.5 * root).atan(),
    })
}

/// Squared polar rate `N - M Ψ²` on `b = 0` at this `θ`.
fn theta_rate_sq(theta: f64, psi_rate: f64) -> f64 {
    let (m, n) = ellipse_mn(theta);
    n - m * psi_rate * psi_rate
}

fn point_from_theta_phi(
    theta: f64,
    phi: f64,
    psi_rate: f64,
    sign: Sign,
    branch: Branch,
) -> Option<GBPoint> {
    let t2 = theta_rate_sq(theta, psi_rate);
    // Rounding band around Θ = 0 (arc endpoints land here by
    // construction).
    let snap = 1e-13 * (psi_rate * psi_rate).max(1.0);
    if t2 < -snap {
        return None;
    }
    let theta_rate = if t2 <= snap {
        0.0
    } else {
        sign.as_f64() * t2.sqrt()
    };
    Some(GBPoint {
        theta,
        phi,
        theta_rate,
        psi_rate,
        branch,
    })
}

/// Single-point accessor: the manifold point over `φ` on the given branch,
/// if the `θ`-root exists and the polar rate is real.
pub fn gb_point_at(
    params: &RodParams,
    psi_rate: f64,
    phi: f64,
    branch: Branch,
    theta_rate_sign: Sign,
) -> Option<GBPoint> {
    let theta = theta_root(phi, branch, params)?;
    point_from_theta_phi(theta, phi, psi_rate, theta_rate_sign, branch)
}

/// Position along the `p = 0` loop, `w ∈ [0, 2)`: the lower branch swept
/// from `φ₁` to `φ₂`, then the upper branch back.
#[derive(Debug, Clone, Copy)]
struct LoopParam {
    phi_1: f64,
    phi_2: f64,
}

impl LoopParam {
    fn eval(&self, w: f64, params: &RodParams, theta_p: f64) -> (f64, f64, Branch) {
        let span = self.phi_2 - self.phi_1;
        let (phi, branch) = if w <= 1.0 {
            (self.phi_1 + span * w, Branch::Lower)
        } else {
            (self.phi_2 - span * (w - 1.0), Branch::Upper)
        };
        let theta = theta_root(phi, branch, params).unwrap_or(theta_p);
        (theta, phi, branch)
    }

    fn w_of(&self, phi: f64, branch: Branch) -> f64 {
        let span = self.phi_2 - self.phi_1;
        match branch {
            Branch::Lower => (phi - self.phi_1) / span,
            Branch::Upper => 1.0 + (self.phi_2 - phi) / span,
        }
    }
}

/// Trace the fixed-sign section of `{b = 0} ∩ {p = 0}` with roughly
/// `n_points` samples ordered along the loop.
///
/// `Θ = 0` arc endpoints are included exactly. `Empty` is the answer both
/// for `μ ≤ μ_P` (no paradox) and for `|Ψ| ≥ Ψ₂` (the whole loop sits in
/// the lift-off band).
pub fn trace_gb(
    params: &RodParams,
    psi_rate: f64,
    theta_rate_sign: Sign,
    n_points: usize,
) -> GBCurve {
    let empty = GBCurve {
        points: Vec::new(),
        topology: Topology::Empty,
        theta_rate_sign,
        psi_rate,
    };
    let cs = critical_set(params);
    let pg = match cs.paradox {
        Some(pg) => pg,
        None => return empty,
    };
    let lp = LoopParam {
        phi_1: pg.phi_1,
        phi_2: pg.phi_2,
    };
    let n_points = n_points.max(4);

    // Cut positions in w where the polar rate reaches zero: θ equal to a
    // lift-off interval endpoint lying strictly inside (θ₁, θ₂).
    let mut cuts: Vec<f64> = Vec::new();
    if let Some((lo, hi)) = liftoff_at_zero_theta_rate(params, psi_rate) {
        for ell in [lo, hi] {
            if ell <= pg.theta_1 || ell >= pg.theta_2 || (ell - cs.theta_p).abs() < 1e-14 {
                continue;
            }
            let branch = if ell < cs.theta_p {
                Branch::Lower
            } else {
                Branch::Upper
            };
            if let Some((phi_minus, phi_plus)) = paradox_boundary_phi(ell, params) {
                cuts.push(lp.w_of(phi_minus, branch));
                cuts.push(lp.w_of(phi_plus, branch));
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let admissible_at = |w: f64| -> bool {
        let (theta, _, _) = lp.eval(w, params, cs.theta_p);
        theta_rate_sq(theta, psi_rate) >= -1e-12
    };

    if cuts.is_empty() {
        if !admissible_at(0.5) {
            return empty;
        }
        // Full loop: sample uniformly, anchoring the θ-extremes at
        // w = 0.5 and w = 1.5.
        let mut points = Vec::with_capacity(n_points);
        for i in 0..n_points {
            let w = 2.0 * i as f64 / n_points as f64;
            let (theta, phi, branch) = lp.eval(w, params, cs.theta_p);
            if let Some(pt) = point_from_theta_phi(theta, phi, psi_rate, theta_rate_sign, branch) {
                points.push(pt);
            }
        }
        for w in [0.5, 1.5] {
            let (theta, phi, branch) = lp.eval(w, params, cs.theta_p);
            if let Some(pt) = point_from_theta_phi(theta, phi, psi_rate, theta_rate_sign, branch) {
                points.push(pt);
            }
        }
        points.sort_by(|a, b| {
            lp.w_of(a.phi, a.branch)
                .partial_cmp(&lp.w_of(b.phi, b.branch))
                .unwrap()
        });
        points.dedup_by(|a, b| a.theta == b.theta && a.phi == b.phi);
        return GBCurve {
            points,
            topology: Topology::Closed,
            theta_rate_sign,
            psi_rate,
        };
    }

    // Segments between consecutive cuts, the last one wrapping past w = 2.
    let mut arcs: Vec<(f64, f64)> = Vec::new();
    for i in 0..cuts.len() {
        let a = cuts[i];
        let b = if i + 1 < cuts.len() {
            cuts[i + 1]
        } else {
            cuts[0] + 2.0
        };
        if admissible_at(0.5 * (a + b) % 2.0) {
            arcs.push((a, b));
        }
    }
    if arcs.is_empty() {
        return empty;
    }

    let total: f64 = arcs.iter().map(|(a, b)| b - a).sum();
    let mut points = Vec::with_capacity(n_points + 2 * arcs.len());
    for &(a, b) in &arcs {
        let len = b - a;
        let n_arc = ((n_points as f64 * len / total).round() as usize).max(2);
        for i in 0..n_arc {
            let w = (a + len * i as f64 / (n_arc - 1) as f64) % 2.0;
            let (theta, phi, branch) = lp.eval(w, params, cs.theta_p);
            if let Some(pt) = point_from_theta_phi(theta, phi, psi_rate, theta_rate_sign, branch) {
                points.push(pt);
            }
        }
    }
    let topology = match arcs.len() {
        1 => Topology::SingleArc,
        _ => Topology::TwoArcs,
    };
    GBCurve {
        points,
        topology,
        theta_rate_sign,
        psi_rate,
    }
}

/// Residuals `(b, p)` of a point; both must be below [`TOL_ON`] for the
/// point to count as on-manifold.
pub fn residuals(point: &GBPoint, params: &RodParams) -> (f64, f64) {
    (
        free_accel_b(point.psi_rate, point.theta_rate, point.theta),
        contact_coeff_p(point.theta, point.phi, params),
    )
}
