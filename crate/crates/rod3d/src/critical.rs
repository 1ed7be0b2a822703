//! Closed-form critical parameters of the slipping rod and the kinematic
//! case taxonomy they induce.
//!
//! Three friction thresholds matter: `μ_P` (paradox onset), `μ_C`
//! (eigenvector-orientation change of the planar problem) and `μ_L`
//! (ordering of the lift-off and tangency rates). Three azimuthal-rate
//! thresholds follow: `Ψ_L` (lift-off possible at `Θ = 0`), `Ψ_1` and
//! `Ψ_2` (where `b = 0` becomes tangent to the paradox cylinder at `θ_1`,
//! `θ_2`); past `Ψ_2` the inconsistent mode is gone.

use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::model::RodParams;

/// Equality band for boundary-case detection: exact float equality is
/// meaningless, and the codimension-1/2 cells are answers of their own.
pub const TOL_BND: f64 = 1e-9;

/// Polar angle of the lift-off threshold, `arcsin(1/√3)`. Independent of
/// `μ` and `α`.
pub const THETA_L: f64 = 0.615_479_708_670_387_3;

/// Azimuthal rate above which lift-off can occur with `Θ = 0`,
/// `(3√3/2)^½`. Independent of `μ` and `α`.
pub const PSI_L: f64 = 1.611_854_897_735_312_9;

/// Everything the parameters determine in closed form.
///
/// The paradox geometry exists only for `μ ≥ μ_P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalSet {
    /// Paradox onset `μ_P = 2√(α+1)/α`.
    pub mu_p: f64,
    /// Planar eigenvector threshold `μ_C = (2/√3) μ_P`.
    pub mu_c: f64,
    /// `μ_L = (2α+3)/(α√2)`, where `Ψ_1 = Ψ_L`.
    pub mu_l: f64,
    /// `θ_P = arctan √(1+α)`, the slip-angle extremum of the paradox
    /// region.
    pub theta_p: f64,
    /// [`THETA_L`], repeated here for completeness of the set.
    pub theta_l: f64,
    /// [`PSI_L`].
    pub psi_l: f64,
    /// `Ψ_P = ((2+α)³/(1+α))^¼`, the common limit of `Ψ_1`, `Ψ_2` at
    /// `μ = μ_P`.
    pub psi_p: f64,
    /// Present when `μ ≥ μ_P`.
    pub paradox: Option<ParadoxGeometry>,
}

/// Bounds of the `p < 0` region and the tangency rates, defined for
/// `μ ≥ μ_P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParadoxGeometry {
    /// Roots of `p(θ, -π/2) = 0`, `θ_1 ≤ θ_P ≤ θ_2`.
    pub theta_1: f64,
    pub theta_2: f64,
    /// Slip-angle bounds of the paradox region, `φ_1 ≤ -π/2 ≤ φ_2`.
    pub phi_1: f64,
    pub phi_2: f64,
    /// Tangency rates of `b = 0` with the cylinder `p = 0` at `θ_1`,
    /// `θ_2`.
    pub psi_1: f64,
    pub psi_2: f64,
}

/// `Ψ` at which `b(Ψ, 0, θ) = 0`, i.e. `(1 + tan²θ)^¾ / √tanθ`.
fn tangency_rate(theta: f64) -> f64 {
    let t = theta.tan();
    (1.0 + t * t).powf(0.75) / t.sqrt()
}

/// Compute the full critical set for the given parameters.
pub fn critical_set(params: &RodParams) -> CriticalSet {
    let alpha = params.alpha;
    let mu_p = 2.0 * (alpha + 1.0).sqrt() / alpha;
    let mu_c = 2.0 / 3.0_f64.sqrt() * mu_p;
    let mu_l = (2.0 * alpha + 3.0) / (alpha * 2.0_f64.sqrt());
    let theta_p = (1.0 + alpha).sqrt().atan();
    let psi_p = ((2.0 + alpha).powi(3) / (1.0 + alpha)).powf(0.25);

    let paradox =
        paradox_boundary_theta(-core::f64::consts::FRAC_PI_2, params).map(|(theta_1, theta_2)| {
            let x = 2.0 * (1.0 + alpha).sqrt() / (alpha * params.mu);
            let half = x.clamp(-1.0, 1.0).acos();
            ParadoxGeometry {
                theta_1,
                theta_2,
                phi_1: -core::f64::consts::FRAC_PI_2 - half,
                phi_2: -core::f64::consts::FRAC_PI_2 + half,
                psi_1: tangency_rate(theta_1),
                psi_2: tangency_rate(theta_2),
            }
        });

    CriticalSet {
        mu_p,
        mu_c,
        mu_l,
        theta_p,
        theta_l: THETA_L,
        psi_l: PSI_L,
        psi_p,
        paradox,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerateSlipAngle;

impl fmt::Display for DegenerateSlipAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no paradox threshold at sin(phi) = 0")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DegenerateSlipAngle {}

/// Friction threshold for `p < 0` at slip angle `φ`:
/// `μ*_P = 2√(α+1)/(α|sinφ|)`.
pub fn mu_p_star(phi: f64, alpha: f64) -> Result<f64, DegenerateSlipAngle> {
    let s = phi.sin().abs();
    if s == 0.0 {
        return Err(DegenerateSlipAngle);
    }
    Ok(2.0 * (alpha + 1.0).sqrt() / (alpha * s))
}

/// Both roots of `p(θ, φ) = 0` in `θ`, when they exist.
///
/// `None` means the paradox region does not reach this slip angle.
pub fn paradox_boundary_theta(phi: f64, params: &RodParams) -> Option<(f64, f64)> {
    let s = params.mu * params.alpha * phi.sin();
    let mut disc = s * s - 4.0 * (params.alpha + 1.0);
    // At μ exactly μ*_P the discriminant is a rounding-level negative.
    if disc < 0.0 {
        if disc > -1e-12 * s * s.max(1.0) {
            disc = 0.0;
        } else {
            return None;
        }
    }
    let root = disc.sqrt();
    let theta_minus = (0.5 * s.abs() - 0.5 * root).atan();
    let theta_plus = (0.5 * s.abs() + 0.5 * root).atan();
    Some((theta_minus, theta_plus))
}

/// Both roots of `p(θ, φ) = 0` in `φ`, when they exist:
/// `φ∓ = -π/2 ∓ arccos((1 + α cos²θ)/(α μ sinθ cosθ))`.
pub fn paradox_boundary_phi(theta: f64, params: &RodParams) -> Option<(f64, f64)> {
    let (st, ct) = (theta.sin(), theta.cos());
    let x = (1.0 + params.alpha * ct * ct) / (params.alpha * params.mu * st * ct);
    if x.is_nan() || x.abs() > 1.0 + 1e-14 {
        return None;
    }
    let half = x.clamp(-1.0, 1.0).acos();
    Some((
        -core::f64::consts::FRAC_PI_2 - half,
        -core::f64::consts::FRAC_PI_2 + half,
    ))
}

/// Deformation mechanism of the mode geometry as `|Ψ|` grows, set by `μ`
/// alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    /// `μ < μ_P`: no paradox.
    I,
    /// `μ_P < μ < μ_L`: lift-off appears at `Θ = 0` before indeterminacy.
    II,
    /// `μ > μ_L`: indeterminacy appears at `Θ = 0` before lift-off.
    III,
}

/// Friction boundary a state sits on, within [`TOL_BND`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuBoundary {
    AtMuP,
    AtMuL,
}

/// Azimuthal-rate boundary a state sits on, within [`TOL_BND`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiBoundary {
    AtPsiL,
    AtPsi1,
    AtPsi2,
}

/// A codimension-1 or codimension-2 cell between the open cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryTag {
    pub mu: Option<MuBoundary>,
    pub psi: Option<PsiBoundary>,
}

/// One of the seven open kinematic cases, or a boundary cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseId {
    /// No paradox, no lift-off at `Θ = 0`.
    Case1,
    /// No paradox, lift-off possible at `Θ = 0`.
    Case2,
    /// Paradox, neither lift-off nor indeterminacy at `Θ = 0`.
    Case3,
    /// Paradox, lift-off (only) possible at `Θ = 0`.
    Case4,
    /// Paradox, indeterminacy (only) possible at `Θ = 0`.
    Case5,
    /// Paradox, both lift-off and indeterminacy at `Θ = 0`.
    Case6,
    /// Inconsistent mode gone.
    Case7,
    Boundary(BoundaryTag),
}

/// Case and mechanism of a `(μ, Ψ)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KinematicCase {
    pub case: CaseId,
    pub mechanism: Mechanism,
}

/// Classify `(params, Ψ)` into the seven open cases or an explicit
/// boundary cell.
///
/// Boundary μ-values are tagged with the mechanism of the larger-μ side.
pub fn classify_case(params: &RodParams, psi_rate: f64) -> KinematicCase {
    let cs = critical_set(params);
    let mu = params.mu;
    let a = psi_rate.abs();

    let mu_boundary = if (mu - cs.mu_p).abs() <= TOL_BND {
        Some(MuBoundary::AtMuP)
    } else if (mu - cs.mu_l).abs() <= TOL_BND {
        Some(MuBoundary::AtMuL)
    } else {
        None
    };

    let mechanism = if mu < cs.mu_p - TOL_BND {
        Mechanism::I
    } else if mu < cs.mu_l - TOL_BND {
        Mechanism::II
    } else {
        Mechanism::III
    };

    let psi_boundary = if (a - PSI_L).abs() <= TOL_BND {
        Some(PsiBoundary::AtPsiL)
    } else if let Some(pg) = &cs.paradox {
        // At μ = μ_P the two tangency rates collapse to Ψ_P; prefer the
        // lower tag.
        if (a - pg.psi_1).abs() <= TOL_BND {
            Some(PsiBoundary::AtPsi1)
        } else if (a - pg.psi_2).abs() <= TOL_BND {
            Some(PsiBoundary::AtPsi2)
        } else {
            None
        }
    } else {
        None
    };

    if mu_boundary.is_some() || psi_boundary.is_some() {
        return KinematicCase {
            case: CaseId::Boundary(BoundaryTag {
                mu: mu_boundary,
                psi: psi_boundary,
            }),
            mechanism,
        };
    }

    let case = match mechanism {
        Mechanism::I => {
            if a < PSI_L {
                CaseId::Case1
            } else {
                CaseId::Case2
            }
        }
        Mechanism::II | Mechanism::III => {
            let pg = cs.paradox.expect("paradox geometry exists for mu > mu_P");
            if a < PSI_L {
                CaseId::Case3
            } else if a < pg.psi_1 {
                if mechanism == Mechanism::II {
                    CaseId::Case4
                } else {
                    CaseId::Case5
                }
            } else if a < pg.psi_2 {
                CaseId::Case6
            } else {
                CaseId::Case7
            }
        }
    };
    KinematicCase { case, mechanism }
}
