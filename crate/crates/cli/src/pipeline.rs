//! The shared intermediate results of the `K_{3,N}` computation.

use tfpm::holes::{hole_families, HoleFamily};
use tfpm::markov::kernel_markov_basis;
use tfpm::model::DesignMatrix;
use tfpm::moves::{Move, MoveSet};
use tfpm::tfp::{self, Lift, ProjectedFiberSystem};

/// Hole families, projected-fiber basis, lifts and the kernel basis of the
/// codimension-zero product, computed once.
pub struct Pipeline {
    pub families: Vec<HoleFamily>,
    pub system: ProjectedFiberSystem,
    pub pf_basis: MoveSet,
    pub lifts: Vec<(Move, Vec<Lift>)>,
    pub kernel: MoveSet,
}

impl Pipeline {
    pub fn new() -> Self {
        let codim_zero = DesignMatrix::k4_tilde();
        let families = hole_families(&codim_zero);
        let system = tfp::projected_fiber_system(&families);
        let pf_basis = tfp::pf_markov_basis(&system);
        let lifts = tfp::all_lifts(&pf_basis);
        let kernel = kernel_markov_basis(&codim_zero);
        Self { families, system, pf_basis, lifts, kernel }
    }

    /// The assembled basis of `K_{3,N}` from generators of degree at most `max_degree`.
    pub fn assemble(&self, n: usize, max_degree: i64) -> MoveSet {
        tfp::assemble_up_to(n, &self.lifts, &self.kernel, max_degree)
    }
}

impl Default for Pipeline {
    fn default() -> Self {
        Self::new()
    }
}
