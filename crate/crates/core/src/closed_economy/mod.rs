//! The closed economy: aggregate maps, long-run growth, steady states and
//! transition paths.

pub mod growth;
pub mod maps;
pub mod path;
pub mod steady;
pub mod transition;

pub use growth::{psi_growth, saddle_eigenvalues, solve_growth_rate, GrowthSolution};
pub use maps::{
    implied_threshold, step_capital, step_capital_quadrature, wealth_price_maps, StateVars,
};
pub use path::{EquilibriumPath, CSV_HEADER};
pub use steady::{capital_at_threshold, solve_steady_state, SteadyState};
pub use transition::{
    solve_transition, solve_transition_detailed, solve_transition_with, terminal_threshold, Schedule,
    TransitionOptions, TransitionSolution,
};
