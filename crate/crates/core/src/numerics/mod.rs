//! Zeta evaluation, compensated summation and adaptive quadrature.

pub mod quadrature;
pub mod summation;
pub mod zeta;

pub use quadrature::{integrate_adaptive, integrate_panels, Integrator, PanelSummary, QuadArray, QuadValue, QuadratureResult};
pub use summation::{CompensatedSum, ComplexSum};
pub use zeta::{zeta_eval, zeta_partial_sum, zeta_real, ComplexPoint, ZetaEvaluator, ZetaMethod, ZetaValue};
