//! Dynamics of a slender rigid rod slipping on a rough horizontal plane
//! under Coulomb friction, in three dimensions.
//!
//! The rod state is kept in the scaled (dimensionless) variables
//! `(x, y, z, w, ψ, Ψ, θ, Θ, φ, η)`: contact-point position, tip height and
//! vertical velocity, azimuthal angle and rate, polar angle and rate,
//! relative slip angle, and slip speed. Two scalar fields organise
//! everything:
//!
//! * `b(Ψ, Θ, θ)` — the free vertical acceleration of the rod tip, and
//! * `p(θ, φ)` — the coefficient multiplying the normal contact force in
//!   the tip's vertical acceleration.
//!
//! Their signs split the state space into slipping, lift-off, inconsistent
//! and indeterminate contact modes ([`modes`]); `p < 0` is the frictional
//! paradox. The codimension-2 set `{b = 0} ∩ {p = 0}` ([`gb`]) carries the
//! interesting dynamics: it is a set of equilibria of the desingularized
//! slipping flow, with a 2×2 reduced Jacobian analysed in [`linearize`]
//! and separatrix experiments driven by [`sim`].
//!
//! The crate is `no_std`-compatible (`--no-default-features --features
//! libm`); everything here is pure computation. File formats and the
//! command-line front end live in the companion `rod3d-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("rod3d requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod critical;
pub mod dimensional;
pub mod gb;
pub mod linearize;
pub mod model;
pub mod modes;
pub mod poly;
pub mod sim;

mod ode;

pub use critical::{critical_set, CriticalSet, KinematicCase};
pub use gb::{trace_gb, GBCurve, GBPoint};
pub use model::{RodParams, ScaledState};
pub use modes::{classify_mode, sample_surfaces, ContactMode, SurfaceGrid};
pub use sim::{integrate_desingularized, TrajectoryRecord, Verdict};

/// Sign of a polar-rate branch or fan direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1.0` or `-1.0`.
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}
