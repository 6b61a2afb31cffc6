//! Linked sequences of vector spaces: validation of the linking axioms,
//! the kernel-dimension profile, and exactness certificates.
//!
//! Run with: cargo run --example linked_sequences

use limit_series::linked::{random_linked_sequence, LinkedSequence};
use limit_series::qlinalg::{FieldSpec, Matrix};

fn main() {
    let f2 = FieldSpec::prime(2).unwrap();

    // a two-dimensional sequence with a single stored edge
    let up = Matrix::from_i64_rows(f2, &[&[1, 0], &[0, 0]]);
    let dn = Matrix::from_i64_rows(f2, &[&[0, 0], &[0, 1]]);
    let s = LinkedSequence::new(f2, 2, 0, 1, vec![up], vec![dn]).unwrap();
    println!("violations: {:?}", s.validate());
    let profile = s.numerical_profile().unwrap();
    println!(
        "profile on the window: {:?} (total deficiency {})",
        profile.triples(),
        profile.total_deficiency()
    );
    let certificate = s.exactness().unwrap();
    println!(
        "exact: {} (edge ranks {:?})",
        certificate.exact, certificate.edge_ranks
    );

    // breaking the composite-vanishing axiom is caught immediately
    let one = Matrix::identity(f2, 1);
    let broken = LinkedSequence::new(f2, 1, 0, 1, vec![one.clone()], vec![one]).unwrap();
    println!("a broken sequence reports: {:?}", broken.validate());

    // random valid sequences mix exact and non-exact
    for seed in 0..4 {
        let s = random_linked_sequence(f2, 3, 4, seed);
        let certificate = s.exactness().unwrap();
        println!(
            "seed {}: window {:?}, deficiency {}, exact: {}",
            seed,
            s.window(),
            certificate.total_deficiency,
            certificate.exact
        );
    }
}
