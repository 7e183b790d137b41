//! Verification monitors run on recorded trajectories: evolution-identity
//! residuals, the median-curvature estimate, the speed estimates, the Gaussian
//! density identity, rescaled roundness and curvature-derivative growth.

mod estimate;
mod gaussian;
mod identity;
mod roundness;
mod speed;

pub use estimate::{derivative_boundedness, geometric_estimate, DerivativeReport, DerivativeRow, GeometricEstimateRow, DERIVATIVE_CAP};
pub use gaussian::{gaussian_monitor, gaussian_terms, GaussianMonitor, GaussianRow, GaussianTerms};
pub use identity::{
    identity_audit, identity_level, identity_residuals, identity_rhs, IdentityLevel, IdentityResidualReport, IdentityRow, ORDER_WINDOW,
};
pub use roundness::{rescaled_f, rescaled_roundness, RoundnessRow};
pub use speed::{periodic_d1, periodic_d2, speed_in_angle, speed_monitor, AngleSpeed, SpeedMonitor, SpeedRow};
