pub mod distributions;
pub mod gauss_currents;
pub mod graded_tensor;
pub mod hopf_symbolic;
pub mod report;
pub mod rll_evaluation;
pub mod rmatrix;
pub mod scalar_field;
