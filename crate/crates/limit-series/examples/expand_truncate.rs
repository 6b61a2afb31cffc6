//! Every linked sequence is a truncation of an exact one: expansion inserts
//! graph spaces at deficient edges, and the recorded schedule truncates the
//! result back to the input, matrix for matrix.
//!
//! Run with: cargo run --example expand_truncate

use limit_series::linked::{random_linked_sequence, LinkedSequence};
use limit_series::qlinalg::{FieldSpec, Matrix};

fn main() {
    let f2 = FieldSpec::prime(2).unwrap();

    // the pure jump: both maps vanish on its one edge, nothing is exact
    let zero = Matrix::zeros(f2, 2, 2);
    let jump = LinkedSequence::new(f2, 2, 0, 1, vec![zero.clone()], vec![zero]).unwrap();
    println!("pure jump deficiency: {}", jump.total_deficiency().unwrap());

    let expansion = jump.expand_to_exact().unwrap();
    println!(
        "expanded at edges {:?}; new window {:?}; exact: {}",
        expansion.schedule,
        expansion.sequence.window(),
        expansion.sequence.is_exact().unwrap()
    );
    println!(
        "schedule recovers the input: {}",
        expansion.recover().unwrap() == jump
    );

    // truncation composes the maps across the removed space
    let truncated = expansion.sequence.truncate(0).unwrap();
    println!(
        "truncating the expansion at its inserted edge: equal to the jump: {}",
        truncated == jump
    );

    // the same round trip on random sequences
    let f3 = FieldSpec::prime(3).unwrap();
    for seed in 0..5 {
        let s = random_linked_sequence(f3, 3, 5, seed);
        let e = s.expand_to_exact().unwrap();
        println!(
            "seed {}: deficiency {} -> {} insertions -> recovered: {}",
            seed,
            s.total_deficiency().unwrap(),
            e.schedule.len(),
            e.recover().unwrap() == s
        );
    }
}
