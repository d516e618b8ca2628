use glmn::gauss_currents::{check_definition_glmn, check_serre, evaluation_currents, same_verdicts, CheckOptions};
use glmn::graded_tensor::ParityStructure;
use glmn::report::Status;

fn gl(m: usize, n: usize) -> ParityStructure {
    ParityStructure::new(m, n).unwrap()
}

#[test]
fn sampled_verdicts_match_symbolic_ones_for_gl12() {
    let symbolic = check_definition_glmn(gl(1, 2), &CheckOptions::new(6));
    let mut opts = CheckOptions::new(6);
    for seed in [1, 2] {
        opts.sample_seed = Some(seed);
        assert!(same_verdicts(&symbolic, &check_definition_glmn(gl(1, 2), &opts)));
    }
}

#[test]
fn gl12_relations_and_serre_pass() {
    let opts = CheckOptions::new(6);
    assert!(check_definition_glmn(gl(1, 2), &opts).all_pass());
    let serre = check_serre(gl(1, 2), &opts);
    assert!(!serre.checks.is_empty());
    assert!(serre.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn currents_are_graded_by_the_node() {
    let cs = evaluation_currents(gl(1, 2), &CheckOptions::new(4)).unwrap();
    assert_eq!(cs.x_plus.len(), 2);
    assert_eq!(cs.k_plus.len(), 3);
    assert_eq!((cs.parity(1), cs.parity(2)), (1, 0));
}
