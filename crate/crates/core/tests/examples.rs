//! Runs every example's entry point.

#[allow(dead_code)]
#[path = "../examples/analytic_classification.rs"]
mod analytic_classification;

#[allow(dead_code)]
#[path = "../examples/brown_halmos.rs"]
mod brown_halmos;

#[allow(dead_code)]
#[path = "../examples/cli_reports.rs"]
mod cli_reports;

#[allow(dead_code)]
#[path = "../examples/compactness.rs"]
mod compactness;

#[allow(dead_code)]
#[path = "../examples/gamma_membership.rs"]
mod gamma_membership;

#[allow(dead_code)]
#[path = "../examples/gamma_tuples.rs"]
mod gamma_tuples;

#[allow(dead_code)]
#[path = "../examples/minimal_extension.rs"]
mod minimal_extension;

#[allow(dead_code)]
#[path = "../examples/norm_convergence.rs"]
mod norm_convergence;

#[allow(dead_code)]
#[path = "../examples/operator_matrices.rs"]
mod operator_matrices;

#[allow(dead_code)]
#[path = "../examples/product_and_blocks.rs"]
mod product_and_blocks;

#[allow(dead_code)]
#[path = "../examples/recover_symbol.rs"]
mod recover_symbol;

#[allow(dead_code)]
#[path = "../examples/symbols.rs"]
mod symbols;

#[test]
fn example_analytic_classification() {
    analytic_classification::run_example().unwrap();
}

#[test]
fn example_brown_halmos() {
    brown_halmos::run_example().unwrap();
}

#[test]
fn example_cli_reports() {
    cli_reports::run_example().unwrap();
}

#[test]
fn example_compactness() {
    compactness::run_example().unwrap();
}

#[test]
fn example_gamma_membership() {
    gamma_membership::run_example().unwrap();
}

#[test]
fn example_gamma_tuples() {
    gamma_tuples::run_example().unwrap();
}

#[test]
fn example_minimal_extension() {
    minimal_extension::run_example().unwrap();
}

#[test]
fn example_norm_convergence() {
    norm_convergence::run_example().unwrap();
}

#[test]
fn example_operator_matrices() {
    operator_matrices::run_example().unwrap();
}

#[test]
fn example_product_and_blocks() {
    product_and_blocks::run_example().unwrap();
}

#[test]
fn example_recover_symbol() {
    recover_symbol::run_example().unwrap();
}

#[test]
fn example_symbols() {
    symbols::run_example().unwrap();
}
