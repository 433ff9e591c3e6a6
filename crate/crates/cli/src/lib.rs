//! Command-line front end for the `tfpm` library: shared pipeline state and
//! the comparison table printed by `tfpm repro`.

pub mod pipeline;
pub mod repro;
