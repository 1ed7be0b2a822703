//! The reduced 2×2 Jacobian of the desingularized slipping flow on
//! `{b = p = 0}`, its eigen-analysis, and the bifurcation set `det K = 0`.
//!
//! Near a point of `{b = p = 0}` the flow of `(p, b)` is governed by
//! `(p, b)' = K (p, b)` with `K` the product of the 6×2 and 2×6 factors of
//! the full Jacobian; the six-dimensional linearization has the two
//! eigenvalues of `K` plus four zeros. `det K = 0` on the set reduces, at
//! fixed `(θ, φ)` on `p = 0`, to a quartic in `Ψ` once `b = 0` is folded
//! in through the ellipse `M Ψ² + Θ² = N`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::gb::{self, ellipse_mn, GBPoint};
use crate::model::{
    b_gradient, contact_coeff_p, p_gradient, system_coeffs, RodParams, ScaledState,
};
use crate::poly::{self, RealRoot};
use crate::Sign;

/// `|det K|` below this counts as a vanishing eigenvalue.
pub const TOL_EIG: f64 = 1e-10;

/// Entries of the reduced Jacobian at a manifold point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMatrix {
    pub k11: f64,
    pub k12: f64,
    pub k21: f64,
    pub k22: f64,
    /// The manifold point the entries were evaluated at.
    pub at: GBPoint,
    /// Slip speed the evaluation used; `K` depends on it and no default
    /// is assumed.
    pub eta: f64,
}

impl KMatrix {
    pub fn det(&self) -> f64 {
        self.k11 * self.k22 - self.k12 * self.k21
    }

    pub fn trace(&self) -> f64 {
        self.k11 + self.k22
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinearizeError {
    /// Residuals of the point exceed [`gb::TOL_ON`].
    OffManifold { b: f64, p: f64 },
    /// The quartic is posed on `p = 0`; this `(θ, φ)` is not.
    OffParadoxBoundary { p: f64 },
}

impl fmt::Display for LinearizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearizeError::OffManifold { b, p } => {
                write!(f, "point off the manifold: residuals b = {b}, p = {p}")
            }
            LinearizeError::OffParadoxBoundary { p } => {
                write!(f, "(theta, phi) not on the paradox boundary: p = {p}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for LinearizeError {}

/// Raw closed-form entries of `K` at `(θ, φ, Ψ, Θ, η)`.
///
/// Meaningful as the reduced Jacobian only on `{b = p = 0}`; exposed
/// unchecked because the `Ψ = 0` focus analysis sweeps `Θ` through the
/// formula off-manifold.
pub fn k_entries(
    theta: f64,
    phi: f64,
    psi_rate: f64,
    theta_rate: f64,
    eta: f64,
    params: &RodParams,
) -> [[f64; 2]; 2] {
    let (alpha, mu) = (params.alpha, params.mu);
    let (st, ct) = (theta.sin(), theta.cos());
    let t = st / ct;
    let cp = phi.cos();
    let g = alpha * mu * ct * ct * cp * cp;
    let s = alpha * mu * st * ct * cp;
    [
        [
            g + eta * (theta_rate * (t - (1.0 + alpha) / t) - psi_rate * s),
            (1.0 + alpha) * g,
        ],
        [
            eta * theta_rate / t,
            eta * (2.0 * psi_rate * s - 2.0 * theta_rate * t),
        ],
    ]
}

/// Closed-form determinant of `K`.
///
/// Equals `k11 k22 - k12 k21` identically; kept as an independent
/// expression for consistency checks.
pub fn det_k_closed_form(
    theta: f64,
    phi: f64,
    psi_rate: f64,
    theta_rate: f64,
    eta: f64,
    params: &RodParams,
) -> f64 {
    let (alpha, mu) = (params.alpha, params.mu);
    let (st, ct) = (theta.sin(), theta.cos());
    let t = st / ct;
    let cp = phi.cos();
    let s = alpha * mu * st * ct * cp;
    eta * alpha
        * mu
        * ct
        * ct
        * cp
        * cp
        * (theta_rate * (-2.0 * t - (1.0 + alpha) / t) + 2.0 * psi_rate * s)
        + eta
            * eta
            * (theta_rate * theta_rate * (2.0 * (1.0 + alpha) - 2.0 * t * t)
                + theta_rate * psi_rate * s * (4.0 * t - 2.0 * (1.0 + alpha) / t)
                - 2.0 * psi_rate * psi_rate * s * s)
}

/// The reduced Jacobian at a manifold point, residual-checked.
pub fn k_matrix(point: &GBPoint, eta: f64, params: &RodParams) -> Result<KMatrix, LinearizeError> {
    let (b, p) = gb::residuals(point, params);
    if b.abs() > gb::TOL_ON || p.abs() > gb::TOL_ON {
        return Err(LinearizeError::OffManifold { b, p });
    }
    let m = k_entries(
        point.theta,
        point.phi,
        point.psi_rate,
        point.theta_rate,
        eta,
        params,
    );
    Ok(KMatrix {
        k11: m[0][0],
        k12: m[0][1],
        k21: m[1][0],
        k22: m[1][1],
        at: *point,
        eta,
    })
}

/// Local phase-portrait type in the `(p, b)`-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityClass {
    StableNode,
    Saddle,
    UnstableNode,
    UnstableFocus,
    StableFocus,
    NonHyperbolic,
}

impl StabilityClass {
    pub fn label(self) -> &'static str {
        match self {
            StabilityClass::StableNode => "stable_node",
            StabilityClass::Saddle => "saddle",
            StabilityClass::UnstableNode => "unstable_node",
            StabilityClass::UnstableFocus => "unstable_focus",
            StabilityClass::StableFocus => "stable_focus",
            StabilityClass::NonHyperbolic => "non_hyperbolic",
        }
    }
}

/// Eigenvalues, eigenvectors (real case only) and the phase-portrait
/// class of a reduced Jacobian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    /// Unit eigenvectors in `(p, b)` coordinates when the eigenvalues are
    /// real; sign is not normalized (they are lines).
    pub e_plus: Option<[f64; 2]>,
    pub e_minus: Option<[f64; 2]>,
    pub classification: StabilityClass,
}

fn eigenvector(k: &KMatrix, lambda: f64) -> [f64; 2] {
    // (K12, λ - K11) spans the eigenspace unless that row is degenerate.
    let v = [k.k12, lambda - k.k11];
    let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
    let w = [lambda - k.k22, k.k21];
    let nw = (w[0] * w[0] + w[1] * w[1]).sqrt();
    if n >= nw && n > 0.0 {
        [v[0] / n, v[1] / n]
    } else if nw > 0.0 {
        [w[0] / nw, w[1] / nw]
    } else {
        [1.0, 0.0]
    }
}

/// Eigen-decompose and classify a reduced Jacobian.
pub fn eigen_classify(k: &KMatrix) -> EigenData {
    let tr = k.trace();
    let det = k.det();
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        let re = 0.5 * tr;
        let im = 0.5 * (-disc).sqrt();
        let classification = if re.abs() < TOL_EIG {
            StabilityClass::NonHyperbolic
        } else if re < 0.0 {
            StabilityClass::StableFocus
        } else {
            StabilityClass::UnstableFocus
        };
        return EigenData {
            lambda_plus: Complex64::new(re, im),
            lambda_minus: Complex64::new(re, -im),
            e_plus: None,
            e_minus: None,
            classification,
        };
    }
    let root = disc.sqrt();
    let lambda_plus = 0.5 * (tr + root);
    let lambda_minus = 0.5 * (tr - root);
    let classification = if det.abs() < TOL_EIG {
        StabilityClass::NonHyperbolic
    } else if det < 0.0 {
        StabilityClass::Saddle
    } else if tr < 0.0 {
        StabilityClass::StableNode
    } else {
        StabilityClass::UnstableNode
    };
    EigenData {
        lambda_plus: Complex64::new(lambda_plus, 0.0),
        lambda_minus: Complex64::new(lambda_minus, 0.0),
        e_plus: Some(eigenvector(k, lambda_plus)),
        e_minus: Some(eigenvector(k, lambda_minus)),
        classification,
    }
}

/// Closed-form eigenpairs of the planar (`φ = -π/2`) reduction of `K`,
/// posed at the planar intersection angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoDEigen {
    /// `λ₁ = ηΘ(tanθ - (1+α)cotθ)`, `λ₂ = -2ηΘ tanθ`.
    pub lambda_1: f64,
    pub lambda_2: f64,
    /// `e₁ = (3tan²θ - (1+α), 1)`, unnormalized; its first component
    /// vanishes at `μ = μ_C`.
    pub e_1: [f64; 2],
    /// `e₂ = (0, 1)`, the `b`-axis.
    pub e_2: [f64; 2],
}

pub fn two_d_eigen(theta: f64, theta_rate: f64, eta: f64, params: &RodParams) -> TwoDEigen {
    let alpha = params.alpha;
    let t = theta.tan();
    TwoDEigen {
        lambda_1: eta * theta_rate * (t - (1.0 + alpha) / t),
        lambda_2: -2.0 * eta * theta_rate * t,
        e_1: [3.0 * t * t - (1.0 + alpha), 1.0],
        e_2: [0.0, 1.0],
    }
}

/// Coefficients of the bifurcation condition at fixed `(θ, φ)` on
/// `p = 0`.
///
/// `det K = 0` reads `A Ψ² + B ΨΘ + Γ Ψ = Δ Θ² + E Θ`; eliminating `Θ`
/// through the ellipse `M Ψ² + Θ² = N` leaves the quartic
/// `Σ cᵢ Ψⁱ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoeffs {
    pub theta: f64,
    pub phi: f64,
    pub eta: f64,
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub delta: f64,
    pub e: f64,
    pub m: f64,
    pub n: f64,
    /// Ascending: `c[i]` multiplies `Ψⁱ`.
    pub c: [f64; 5],
}

/// An admissible bifurcation point: a real quartic root on the ellipse,
/// with its polar rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleRoot {
    pub psi_rate: f64,
    pub theta_rate: f64,
    /// `|det K|` after substitution, as a quality witness.
    pub det_residual: f64,
}

/// The quartic together with its real roots and the admissible subset.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticAnalysis {
    pub coeffs: QuarticCoeffs,
    /// All real roots of the quartic, multiplicity included.
    pub real_roots: Vec<RealRoot>,
    pub admissible: Vec<AdmissibleRoot>,
}

fn quartic_coeffs(theta: f64, phi: f64, eta: f64, params: &RodParams) -> QuarticCoeffs {
    let (alpha, mu) = (params.alpha, params.mu);
    let t = theta.tan();
    let cp = phi.cos();
    let t2 = t * t;
    let one_a = 1.0 + alpha;
    let a = -2.0 * eta * alpha * alpha * mu * mu * t2 * t * cp * cp;
    let b = 2.0 * eta * alpha * mu * cp * t * (1.0 + t2) * (2.0 * t2 - one_a);
    let gamma = 2.0 * alpha * alpha * mu * mu * cp * cp * cp * t2;
    let delta = 2.0 * eta * t * (1.0 + t2) * (1.0 + t2) * (t2 - one_a);
    let e = alpha * mu * cp * cp * (1.0 + t2) * (2.0 * t2 + one_a);
    let (m, n) = ellipse_mn(theta);
    let c4 = (a + m * delta) * (a + m * delta) + m * b * b;
    let c3 = 2.0 * (a * gamma + m * (gamma * delta - e * b));
    let c2 = gamma * gamma - 2.0 * delta * n * (a + m * delta) - n * b * b + m * e * e;
    let c1 = 2.0 * n * (e * b - gamma * delta);
    let c0 = n * (n * delta * delta - e * e);
    QuarticCoeffs {
        theta,
        phi,
        eta,
        a,
        b,
        gamma,
        delta,
        e,
        m,
        n,
        c: [c0, c1, c2, c3, c4],
    }
}

/// `Θ` on the ellipse with the sign chosen to minimise `|det K|`.
fn theta_rate_at_root(q: &QuarticCoeffs, psi_rate: f64, params: &RodParams) -> (f64, f64) {
    let t2 = (q.n - q.m * psi_rate * psi_rate).max(0.0);
    let magnitude = t2.sqrt();
    let den = q.b * psi_rate - q.e;
    let linear = q.delta * t2 - q.a * psi_rate * psi_rate - q.gamma * psi_rate;
    let preferred = if den.abs() > 1e-10 * (q.b.abs() * psi_rate.abs() + q.e.abs()).max(1e-300) {
        (linear / den).signum()
    } else {
        1.0
    };
    let mut best = (f64::INFINITY, magnitude);
    for sign in [preferred, -preferred] {
        let theta_rate = sign * magnitude;
        let det = det_of(q, psi_rate, theta_rate, params).abs();
        if det < best.0 {
            best = (det, theta_rate);
        }
    }
    (best.1, best.0)
}

fn det_of(q: &QuarticCoeffs, psi_rate: f64, theta_rate: f64, params: &RodParams) -> f64 {
    let m = k_entries(q.theta, q.phi, psi_rate, theta_rate, q.eta, params);
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Analyse `det K = 0` in `Ψ` at a point of the paradox boundary.
pub fn det_k_quartic(
    theta: f64,
    phi: f64,
    eta: f64,
    params: &RodParams,
) -> Result<QuarticAnalysis, LinearizeError> {
    let p = contact_coeff_p(theta, phi, params);
    if p.abs() > 1e-9 {
        return Err(LinearizeError::OffParadoxBoundary { p });
    }
    let coeffs = quartic_coeffs(theta, phi, eta, params);
    let real_roots = poly::real_roots(&coeffs.c);
    let psi_max_sq = coeffs.n / coeffs.m;
    let mut admissible = Vec::new();
    for r in &real_roots {
        if r.x * r.x > psi_max_sq * (1.0 + 1e-12) {
            continue;
        }
        // Polish on the on-ellipse determinant, which is what the root is
        // for.
        let mut psi_rate = r.x;
        let (mut theta_rate, mut residual) = theta_rate_at_root(&coeffs, psi_rate, params);
        let h = 1e-7 * psi_rate.abs().max(1.0);
        for _ in 0..6 {
            if residual == 0.0 {
                break;
            }
            let f0 = det_of(
                &coeffs,
                psi_rate,
                theta_rate_at_root(&coeffs, psi_rate, params).0,
                params,
            );
            let fp = det_of(
                &coeffs,
                psi_rate + h,
                theta_rate_at_root(&coeffs, psi_rate + h, params).0,
                params,
            );
            let fm = det_of(
                &coeffs,
                psi_rate - h,
                theta_rate_at_root(&coeffs, psi_rate - h, params).0,
                params,
            );
            let d = (fp - fm) / (2.0 * h);
            if d.abs() < 1e-300 {
                break;
            }
            let next = psi_rate - f0 / d;
            if !next.is_finite() || next * next > psi_max_sq * (1.0 + 1e-9) {
                break;
            }
            psi_rate = next;
            let (tr, res) = theta_rate_at_root(&coeffs, psi_rate, params);
            theta_rate = tr;
            if res >= residual {
                break;
            }
            residual = res;
        }
        admissible.push(AdmissibleRoot {
            psi_rate,
            theta_rate,
            det_residual: residual,
        });
    }
    Ok(QuarticAnalysis {
        coeffs,
        real_roots,
        admissible,
    })
}

/// The `Θ < 0` window of complex eigenvalues at `Ψ = 0`, present only for
/// `μ > μ_C`.
///
/// Unbounded below when `3 tan²θ = (1 + α)` (the window endpoint formula
/// degenerates); empty when `cosφ = 0`.
pub fn zero_psi_focus_window(
    theta: f64,
    phi: f64,
    eta: f64,
    params: &RodParams,
) -> Option<(f64, f64)> {
    let cs = crate::critical::critical_set(params);
    if params.mu <= cs.mu_c {
        return None;
    }
    let (alpha, mu) = (params.alpha, params.mu);
    let (st, ct) = (theta.sin(), theta.cos());
    let t = st / ct;
    let cp = phi.cos();
    if cp.abs() < 1e-9 {
        return None;
    }
    let g = alpha * mu * ct * ct * cp * cp;
    let u = (3.0 * t).sqrt();
    let v = ((1.0 + alpha) / t).sqrt();
    let narrow = (u + v) * (u + v);
    let wide = (u - v) * (u - v);
    let upper = -g / (eta * narrow);
    let lower = if wide < 1e-300 {
        f64::NEG_INFINITY
    } else {
        -g / (eta * wide)
    };
    Some((lower, upper))
}

/// Residual of the closed-form `det K = 0` condition specialised to
/// `Ψ = 0`, as a function of `θ` alone (the slip angle on `p = 0` enters
/// through `cos²φ = 1 - X²`).
///
/// Vanishes exactly at the `Ψ = 0` bifurcation points of the given
/// `Θ`-sign branch.
pub fn zero_psi_bifurcation_residual(
    theta: f64,
    eta: f64,
    params: &RodParams,
    theta_rate_sign: Sign,
) -> f64 {
    let (alpha, mu) = (params.alpha, params.mu);
    let (st, ct) = (theta.sin(), theta.cos());
    let t = st / ct;
    let x = (1.0 + alpha * ct * ct) / (alpha * mu * st * ct);
    let cos2_phi = 1.0 - x * x;
    let one_a = 1.0 + alpha;
    alpha * mu * cos2_phi
        - theta_rate_sign.as_f64()
            * 2.0
            * eta
            * t.sqrt()
            * (1.0 + t * t).powf(1.25)
            * (one_a - t * t)
            / (one_a + 2.0 * t * t)
}

/// Leading-order bifurcation quartic near the paradox onset
/// `μ = μ_P (1 + ε²μ̂)`, `φ = -π/2 + εφ̂`.
///
/// The coefficients are homogeneous in `(μ̂, φ̂²)`, so `ε` can be absorbed:
/// passing `ε²μ̂` and `εφ̂` directly gives the same roots. Odd coefficients
/// vanish identically.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticQuartic {
    pub hat_mu: f64,
    pub hat_phi: f64,
    /// Ascending, `c[1] = c[3] = 0`.
    pub c: [f64; 5],
    /// Polar-angle perturbations `θ̂± = ±(√(1+α)/(2+α))√(2μ̂ - φ̂²)`, real
    /// when `2μ̂ ≥ φ̂²`.
    pub hat_theta_pm: Option<(f64, f64)>,
    /// Real roots in `Ψ`.
    pub roots: Vec<f64>,
}

pub fn asymptotic_quartic(hat_mu: f64, hat_phi: f64, params: &RodParams) -> AsymptoticQuartic {
    let alpha = params.alpha;
    let one_a = 1.0 + alpha;
    let two_a = 2.0 + alpha;
    let phi2 = hat_phi * hat_phi;
    let c4 = one_a * one_a * (2.0 * two_a * hat_mu - phi2);
    let c2 = -one_a.powf(1.5) * two_a.powf(1.5) * (4.0 * two_a * hat_mu - (3.0 + alpha) * phi2);
    let c0 = one_a * two_a.powi(4) * (2.0 * hat_mu - phi2);
    let c = [c0, 0.0, c2, 0.0, c4];
    let roots = poly::real_roots(&c).iter().map(|r| r.x).collect();
    let hat_theta_pm = if 2.0 * hat_mu >= phi2 {
        let mag = one_a.sqrt() / two_a * (2.0 * hat_mu - phi2).sqrt();
        Some((-mag, mag))
    } else {
        None
    };
    AsymptoticQuartic {
        hat_mu,
        hat_phi,
        c,
        hat_theta_pm,
        roots,
    }
}

/// The 6×2 and 2×6 factors of the full Jacobian at a manifold point:
/// sensitivities of the field to `(p, b)` and the gradients of `(p, b)`
/// over the state `(η, φ, ψ, Ψ, θ, Θ)`.
pub fn jacobian_factors(
    point: &GBPoint,
    eta: f64,
    params: &RodParams,
) -> ([[f64; 2]; 6], [[f64; 6]; 2]) {
    let state = ScaledState::slipping(
        0.0,
        point.psi_rate,
        point.theta,
        point.theta_rate,
        point.phi,
        eta,
    );
    let k = system_coeffs(&state, params);
    let a = [
        [eta * k.a1, -eta * k.q1],
        [k.a2 - eta * point.psi_rate, -k.q2],
        [eta * point.psi_rate, 0.0],
        [eta * k.c1, -eta * k.d1],
        [eta * point.theta_rate, 0.0],
        [eta * k.c2, -eta * k.d2],
    ];
    let (p_theta, p_phi) = p_gradient(point.theta, point.phi, params);
    let (b_psi_rate, b_theta, b_theta_rate) =
        b_gradient(point.psi_rate, point.theta_rate, point.theta);
    let b = [
        [0.0, p_phi, 0.0, 0.0, p_theta, 0.0],
        [0.0, 0.0, 0.0, b_psi_rate, b_theta, b_theta_rate],
    ];
    (a, b)
}

/// Spectrum of a 6×6 product `A·B` from the 2×2 product `B·A`: its two
/// eigenvalues plus four zeros.
pub fn matrix_product_eigen_reduce(a: &[[f64; 2]; 6], b: &[[f64; 6]; 2]) -> [Complex64; 6] {
    let mut k = [[0.0f64; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let mut acc = 0.0;
            for i in 0..6 {
                acc += b[r][i] * a[i][c];
            }
            k[r][c] = acc;
        }
    }
    let tr = k[0][0] + k[1][1];
    let det = k[0][0] * k[1][1] - k[0][1] * k[1][0];
    let disc = tr * tr - 4.0 * det;
    let (lp, lm) = if disc >= 0.0 {
        let root = disc.sqrt();
        (
            Complex64::new(0.5 * (tr + root), 0.0),
            Complex64::new(0.5 * (tr - root), 0.0),
        )
    } else {
        let im = 0.5 * (-disc).sqrt();
        (Complex64::new(0.5 * tr, im), Complex64::new(0.5 * tr, -im))
    };
    [
        lp,
        lm,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]
}
