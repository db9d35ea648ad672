//! Numerical kernels shared by the model solvers.

pub mod minimize;
pub mod quadrature;
pub mod root;
pub mod spline;
pub mod tail;

pub use minimize::{minimize, minimize_with_step, Minimum};
pub use quadrature::{default_rule, gauss_laguerre, QuadratureRule};
pub use root::{find_root, Bracket};
pub use spline::SplinePath;
pub use tail::{hill_estimate, hill_estimator, HillEstimate};
