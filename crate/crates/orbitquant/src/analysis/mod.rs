//! Instance checks of the analytic statements: T₀-norm continuity, positivity of
//! point evaluations, the Wick rotation and holomorphic dependence on ħ.

mod holomorphy;
mod norms;
mod positivity;
mod wick;

pub use holomorphy::{holomorphy_probe, HolomorphyReport};
pub use norms::{continuity_sweep, entry_monomials, t0_norm, t0_norm_numeric, NormReport, CONTINUITY_BISECTION_STEPS};
pub use positivity::{positivity_check, positivity_hypothesis, PositivityReport, PositivityValue};
pub use wick::{wick_rotation_check, WickReport};
