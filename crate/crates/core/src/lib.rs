//! Exact computation of Markov bases for toric fiber products of hierarchical
//! log-linear models.

pub mod exact;
pub mod fiber;
pub mod holes;
pub mod model;
pub mod moves;
pub mod notation;
pub mod dio;
pub mod cone;
pub mod lp;
pub mod markov;
pub mod tfp;
