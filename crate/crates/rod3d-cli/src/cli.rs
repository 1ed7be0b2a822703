//! Argument surface. Flags mirror the usual symbols (`--alpha`, `--mu`,
//! `--Psi`, `--Theta-sign`, `--eta`); a JSON config may supply any of
//! them, with explicit flags taking precedence.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "rod3d",
    version,
    about = "Contact modes, critical values, manifold geometry, stability and simulation of a slender rod slipping on a rough plane"
)]
pub struct Cli {
    /// JSON object supplying defaults for any flag of the subcommand.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Closed-form critical parameters (and the kinematic case at a given
    /// azimuthal rate).
    Critical(CriticalArgs),
    /// Sample b, p and the contact mode over a (theta, phi, Theta) grid.
    Modes(ModesArgs),
    /// Trace the {b = 0, p = 0} section at fixed azimuthal rate.
    Gb(GbArgs),
    /// Bifurcation quartic along the paradox boundary.
    Quartic(QuarticArgs),
    /// Integrate a trajectory with event detection.
    Simulate(SimulateArgs),
    /// Locate the separatrix direction at a manifold point.
    Separatrix(SeparatrixArgs),
}

#[derive(Args)]
pub struct CriticalArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    /// Also classify the kinematic case at this azimuthal rate.
    #[arg(long = "Psi")]
    pub psi: Option<f64>,
    /// Emit JSON instead of the table.
    #[arg(long)]
    pub json: bool,
    /// Output target; `-` is standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct ModesArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long = "Psi")]
    pub psi: Option<f64>,
    /// Grid sizes as NxNxN over (theta, phi, Theta).
    #[arg(long)]
    pub grid: Option<String>,
    /// Axis bounds, `min:max`.
    #[arg(long = "theta-range")]
    pub theta_range: Option<String>,
    #[arg(long = "phi-range")]
    pub phi_range: Option<String>,
    #[arg(long = "Theta-range")]
    pub theta_rate_range: Option<String>,
    /// Refuse grids with more cells than this.
    #[arg(long = "cell-cap")]
    pub cell_cap: Option<usize>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct GbArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long = "Psi")]
    pub psi: Option<f64>,
    /// `+1` or `-1`: sign of the polar rate branch.
    #[arg(long = "Theta-sign", allow_hyphen_values = true)]
    pub theta_sign: Option<String>,
    #[arg(long = "n-points")]
    pub n_points: Option<usize>,
    /// Extend each point with the reduced Jacobian and its eigen-data.
    #[arg(long)]
    pub eig: bool,
    /// Slip speed for the eigen-sweep (required with --eig).
    #[arg(long)]
    pub eta: Option<f64>,
    /// Exit with a domain error if the section is empty.
    #[arg(long = "require-nonempty")]
    pub require_nonempty: bool,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct QuarticArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    /// Number of slip-angle samples across the paradox region.
    #[arg(long = "n-phi")]
    pub n_phi: Option<usize>,
    /// Also emit leading-order roots for this value of eps^2*mu_hat
    /// (mu is then derived as mu_P(1 + value)).
    #[arg(long)]
    pub asymptotic: Option<f64>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    /// Initial condition: inline JSON or @file, keys
    /// {x,y,z,w,psi,Psi,theta,Theta,phi,eta}.
    #[arg(long)]
    pub ic: Option<String>,
    /// Integrate the physical-time slipping system instead of the
    /// desingularized one.
    #[arg(long = "physical-time")]
    pub physical_time: bool,
    #[arg(long = "max-time")]
    pub max_time: Option<f64>,
    #[arg(long = "abs-tol")]
    pub abs_tol: Option<f64>,
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
    #[arg(long = "event-tol")]
    pub event_tol: Option<f64>,
    /// Record every n-th accepted step.
    #[arg(long)]
    pub stride: Option<usize>,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args)]
pub struct SeparatrixArgs {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long = "Psi")]
    pub psi: Option<f64>,
    /// Slip angle selecting the base point on the section.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Which theta root of p = 0: `lower` or `upper`.
    #[arg(long)]
    pub branch: Option<String>,
    #[arg(long = "Theta-sign", allow_hyphen_values = true)]
    pub theta_sign: Option<String>,
    /// Slip speed at the base point.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Fan radius in (p, b) values.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long = "n-seeds")]
    pub n_seeds: Option<usize>,
    /// Bisection tolerance on the fan angle, radians.
    #[arg(long = "angle-tol")]
    pub angle_tol: Option<f64>,
    #[arg(long = "max-time")]
    pub max_time: Option<f64>,
    #[arg(long, default_value = "-")]
    pub out: String,
}
