//! Product sets, step-counted generation and ideal search.

mod bounds;
mod bourgain;
mod ideal;
mod product;
mod steps;

pub use bounds::{verify_generic_generation_bound, verify_sunital_factorial, FactorialVerdict, GenericBoundReport};
pub use bourgain::{verify_bourgain_system, BourgainReport, BourgainViolation};
pub use ideal::{
    find_ideal_within, ideal_closure, is_ideal, principal_ideal, IdealSearchResult, IDEAL_SEARCH_LIMIT,
    IDEAL_STATE_BUDGET,
};
pub use product::{left_multiples, product_set, right_multiples, Side, SideMode};
pub use steps::{half_step_set, is_subgroup_set, min_steps_to_group, step_set, HalfSteps, StepChain, StepOutcome};
