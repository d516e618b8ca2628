use glmn::graded_tensor::{Grading, ParityStructure};
use glmn::report::Status;
use glmn::rll_evaluation::rll_suite;
use glmn::rmatrix::{build_r, check_pt_symmetry, check_ybe, YbeForm};

#[test]
fn graded_embeddings_are_needed_exactly_when_there_is_an_odd_index() {
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let ps = ParityStructure::new(m, n).unwrap();
        assert_eq!(check_ybe(ps, YbeForm::GradedEmbedding).status, Status::Pass);
        assert_eq!(check_ybe(ps, YbeForm::UngradedPlain).status, Status::Fail);
    }
}

#[test]
fn rll_relations_hold_for_gl12() {
    let report = rll_suite(ParityStructure::new(1, 2).unwrap());
    assert!(report.checks.len() >= 10);
    assert!(report.all_pass(), "{:?}", report.summary());
}

#[test]
fn rll_relations_need_the_grading() {
    let ps = ParityStructure::new(1, 1).unwrap().with_grading(Grading::Off);
    let report = rll_suite(ps);
    assert!(report.checks.iter().any(|c| c.status == Status::Fail));
}

#[test]
fn pt_symmetry_for_the_largest_default_shape() {
    let ps = ParityStructure::new(3, 2).unwrap();
    assert!(check_pt_symmetry(&build_r(ps)).is_pass());
}
