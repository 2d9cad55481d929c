//! Additive-group machinery: sets, sumsets, subgroups, thickness,
//! genericity and triangular bases.

mod set;
mod subgroup;
mod thick;
mod triangular;

pub use set::ElementSet;
pub use subgroup::{
    closure, closure_of_set, cosets_meet, enumerate_subgroups, is_coset_independent, sum_is_whole, Subgroup,
    COSET_CHECK_LIMIT,
};
pub use thick::{
    genericity_number, thickness, Genericity, Thickness, COVER_WORK_BUDGET, DEFAULT_THICKNESS_CAP, EXACT_COVER_LIMIT,
};
pub use triangular::{triangularize, TriangularBasis};
