//! Star products of polynomials on the group and on the orbit, built from the
//! twist by left-invariant derivations.

mod checks;
mod group;
mod mpoly;
mod orbit_side;
mod product;

pub use checks::{
    check_associativity, check_classical_limit, check_cross_oracle, check_first_order_bracket, check_unit,
    linear_generators, orbit_generators, pair_grade, triple_grade, verify_associativity, verify_cross_oracle,
    verify_first_order_bracket, StarCheckReport,
};
pub use checks::ensure;
pub use group::{leftinv_apply, leftinv_word, point_eval, sample_orbit_points, symbolic_adjugate, OrbitPoint, Pullback};
pub use mpoly::{mpoly_from_json, Exponents, MPoly, VarKind};
pub use orbit_side::{
    antipode_action, coord_of_matrix, coordinate_monomials, fundamental_action, fundamental_word, poisson_bracket,
    real_form_conjugate,
};
pub use product::{PointValues, Side, StarContext, StarTerm};
