//! Dirichlet polynomials: prime sums, truncated exponentials and the mollifier.

mod exp;
mod mollifier;
mod params;
mod poly;
mod prime_sum;

pub use exp::{exp_series, truncated_exp, truncated_exp_terms};
pub use mollifier::{
    mollifier_coeffs, mollifier_coeffs_with_cap, truncated_product, Mollifier, MollifierEvaluator, PointValues,
    DEFAULT_COEFF_CAP,
};
pub use params::{ParamOverrides, ParamSet, MIN_HEIGHT};
pub use poly::{eval_dirichlet_poly, PreparedPoly, SparseDirichletCoeffs};
pub use prime_sum::{prime_sum, PrimeSumMode, PrimeSumSpec};
