//! Ekeland-type variational principles on finite quasi-pseudometric spaces,
//! with brute-force oracles and a falsifier for the condition checkers.

pub mod config;
pub mod error;
pub mod ext;
pub mod instance;
pub mod io;
pub mod objective;
pub mod oracle;
pub mod space;
pub mod strong;
pub mod tol;
pub mod topology;
pub mod variational;

pub use config::{DOrder, Mutation, SolverConfig};
pub use error::{Error, Result};
pub use ext::ExtReal;
pub use objective::{Objective, ObjectiveFormula};
pub use space::{FiniteSpace, ImplicitSpace, QuasiMetric, Which};
