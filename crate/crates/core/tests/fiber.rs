use tfpm::fiber::{markov_degree_check, markov_degree_check_symmetric, FiberError, DEFAULT_CAP};
use tfpm::holes::hole_families;
use tfpm::markov::kernel_markov_basis;
use tfpm::model::DesignMatrix;
use tfpm::moves::MoveSet;
use tfpm::notation::SymmetryGroup;
use tfpm::tfp::{all_lifts, assemble_markov_basis, pf_markov_basis, projected_fiber_system, quadratic_swaps};

fn assembled(n: usize) -> MoveSet {
    let families = hole_families(&DesignMatrix::k4_tilde());
    let lifts = all_lifts(&pf_markov_basis(&projected_fiber_system(&families)));
    assemble_markov_basis(n, &lifts, &kernel_markov_basis(&DesignMatrix::k4_tilde()))
}

#[test]
fn symmetric_check_agrees_with_the_full_check() {
    for n in 1..=2 {
        let model = DesignMatrix::k3n(n);
        let basis = assembled(n);
        let full = markov_degree_check(model.matrix(), &basis, 5, DEFAULT_CAP).unwrap();
        let reduced = markov_degree_check_symmetric(model.matrix(), &basis, 5, DEFAULT_CAP, &SymmetryGroup::k3n(n)).unwrap();
        assert!(full.passed() && reduced.passed());
        assert_eq!(full.essential_degree, reduced.essential_degree);
        assert!(reduced.fibers_checked < full.fibers_checked);
    }
}

#[test]
fn symmetric_check_finds_disconnected_fibers() {
    let model = DesignMatrix::k3n(2);
    let swaps = quadratic_swaps(2);
    let full = markov_degree_check(model.matrix(), &swaps, 4, DEFAULT_CAP).unwrap();
    let reduced = markov_degree_check_symmetric(model.matrix(), &swaps, 4, DEFAULT_CAP, &SymmetryGroup::k3n(2)).unwrap();
    assert!(!full.passed());
    assert!(!reduced.passed());
}

#[test]
fn symmetric_check_accepts_a_basis_that_is_not_closed() {
    let model = DesignMatrix::k3n(1);
    let group = SymmetryGroup::k3n(1);
    let own = kernel_markov_basis(&model);
    // the images of an added sum are not in the set but are reachable by it
    let mut kept: Vec<_> = own.iter().cloned().collect();
    kept.push(own.moves()[0].add(&own.moves()[1]));
    let padded = MoveSet::from_moves(kept);
    let report = markov_degree_check_symmetric(model.matrix(), &padded, 4, DEFAULT_CAP, &group).unwrap();
    assert!(report.passed());
}

#[test]
fn non_symmetries_are_rejected() {
    let model = DesignMatrix::k3n(1);
    let swap_leaf = SymmetryGroup::block_permutations(4, &[vec![0, 1, 2, 3]], &[]);
    let result = markov_degree_check_symmetric(model.matrix(), &kernel_markov_basis(&model), 3, DEFAULT_CAP, &swap_leaf);
    assert!(matches!(result, Err(FiberError::NotInvariant(_))));
}
