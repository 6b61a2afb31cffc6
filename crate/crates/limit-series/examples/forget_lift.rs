//! Forgetful maps between levels and the constructive fiber sampler: exact
//! series lift uniquely along their unique exact refinement, and every
//! series admits an exact lift.
//!
//! Run with: cargo run --example forget_lift

use limit_series::curvemodel::{fiber_sample, random_exact_series, random_series, CurveConfig};
use limit_series::qlinalg::FieldSpec;

fn main() {
    let f3 = FieldSpec::prime(3).unwrap();

    // an exact series at level 1, lifted to level 3
    let config = CurveConfig::new(f3, 2, 1).unwrap();
    let g = random_exact_series(&config, 1, 42).unwrap();
    println!("base profile: {:?}", g.profile().unwrap().values());
    let refined = g.profile().unwrap().refine(3, 1).unwrap();
    let lifted = fiber_sample(&g, &refined, 3, 0).unwrap();
    println!(
        "lift is exact: {}, forgets back exactly: {}",
        lifted.is_exact().unwrap(),
        lifted.forget(1).unwrap() == g
    );
    // zero-dimensional fibers: the seed cannot matter
    let again = fiber_sample(&g, &refined, 3, 99).unwrap();
    println!("lift is independent of the seed: {}", again == lifted);
    println!(
        "fiber dimension over the exact stratum: {}",
        refined.fiber_dimension(3)
    );

    // a non-exact series still lifts into the exact locus
    for seed in 0..40 {
        let h = random_series(&config, 0, seed).unwrap();
        if h.is_exact().unwrap() {
            continue;
        }
        println!("seed {}: non-exact base, profile {:?}", seed, h.profile().unwrap().values());
        let refined = h.profile().unwrap().refine(2, 1).unwrap();
        let lifted = fiber_sample(&h, &refined, 2, seed).unwrap();
        println!(
            "  exact lift found: {}, fiber dimension {}",
            lifted.is_exact().unwrap(),
            refined.fiber_dimension(2)
        );
        break;
    }
}
