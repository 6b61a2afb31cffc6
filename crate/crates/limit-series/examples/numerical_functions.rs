//! The integer side of the theory: admissible numerical functions, their
//! exact refinements, enumeration of all refinements, and the dimension of
//! the forgetful-map fibers between refinement strata.
//!
//! Run with: cargo run --example numerical_functions

use limit_series::numfn::{NumericalFunction, Triple, DEFAULT_REFINEMENT_BOUND};

fn main() {
    // the pure-jump function for n = 2: admissible, nothing exact about it
    let f = NumericalFunction::new(2, 0, vec![Triple::new(0, 2, 0)]).unwrap();
    println!("admissible: {}", f.is_admissible());
    println!("exact: {}", f.is_exact().unwrap());

    // its canonical exact refinement at ratio 2 concentrates deficiency 2
    let refined = f.refine(2, 1).unwrap();
    println!(
        "refinement window {:?}, values {:?}",
        refined.window(),
        refined.values()
    );
    println!("refinement is exact: {}", refined.is_exact().unwrap());
    let (back, report) = refined.restrict(2);
    println!(
        "restricting recovers the input: {} (admissible: {})",
        back == f,
        report.admissible
    );

    // all admissible refinements at ratio 2
    let all = f.enumerate_refinements(2, DEFAULT_REFINEMENT_BOUND).unwrap();
    println!("number of admissible refinements: {}", all.len());
    for candidate in &all {
        println!(
            "  interior value {:?}, fiber dimension {}",
            candidate.eval(1),
            candidate.fiber_dimension(2)
        );
    }

    // the exact one collapses to a sum of squared deficiency blocks
    println!(
        "exact case: {} = {}",
        refined.fiber_dimension(2),
        refined.interior_block_squares(2)
    );
}
