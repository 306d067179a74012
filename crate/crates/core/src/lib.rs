//! A CDCL SAT solver with a conflict-analytics layer.
//!
//! The crate is organized around five modules:
//!
//! - [`cnf`]: formulas, DIMACS parsing, model checking.
//! - [`engine`]: the CDCL core — trail, watched-literal propagation, first-UIP
//!   conflict analysis, backjumping, Luby restarts, clause-database reduction,
//!   DRAT proof output.
//! - [`branching`]: EVSIDS activity-based variable selection, extended with
//!   the CRVR strategy (poor-mc detection and lazy activity reduction).
//! - [`analytics`]: classifies single-conflict vs multi-conflict decisions,
//!   tracks burst statistics, LBD aggregates, and conflicts-proximity samples,
//!   and produces [`analytics::RunStats`].
//! - [`harness`]: batch solving over instance directories, PAR-2 scoring,
//!   CSV/JSON reports, and SVG plots.

pub mod analytics;
pub mod branching;
pub mod cnf;
pub mod engine;
pub mod harness;
pub mod instances;

mod rng;
