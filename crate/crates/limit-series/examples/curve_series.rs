//! The polynomial model of the two-component curve: twist levels and their
//! canonical bases, the connecting maps, and level series with their
//! numerical profiles.
//!
//! Run with: cargo run --example curve_series

use limit_series::curvemodel::{phi_up, CurveConfig, LimitSeries, Section};
use limit_series::qlinalg::{FieldSpec, Subspace};

fn main() {
    let f2 = FieldSpec::prime(2).unwrap();
    let config = CurveConfig::new(f2, 1, 2).unwrap();

    // bidegrees along the twist sequence of a degree-1, level-2 curve
    for i in 0..=config.top_level() {
        let t = config.twist(i).unwrap();
        println!(
            "level {}: deg_Y = {}, deg_Z = {}, invertible: {}, dim = {}",
            i,
            t.deg_y(),
            t.deg_z(),
            t.is_invertible(),
            t.dim()
        );
    }

    // the section (1,1) of the invertible level 0 climbs the sequence
    let s = Section::new(&f2, &[1], &[1]);
    let s1 = phi_up(&config, 0, &s).unwrap();
    let s2 = phi_up(&config, 1, &s1).unwrap();
    println!("(1,1) -> {:?} -> {:?}", s1, s2);

    // the exact desk series: spans of (1,1), (0,1), (0,z)
    let span = |level: usize, sections: &[Section]| {
        let twist = config.twist(level).unwrap();
        Subspace::from_rows(
            f2,
            twist.dim(),
            sections.iter().map(|s| twist.coords_of(s).unwrap()).collect(),
        )
    };
    let g = LimitSeries::new(
        config,
        0,
        vec![
            span(0, &[Section::new(&f2, &[1], &[1])]),
            span(1, &[Section::new(&f2, &[], &[1])]),
            span(2, &[Section::new(&f2, &[], &[0, 1])]),
        ],
    )
    .unwrap();
    println!("violations: {:?}", g.validate());
    println!("profile values: {:?}", g.profile().unwrap().values());
    println!("exact: {}", g.is_exact().unwrap());

    // replace the bottom space and exactness dies with the whole deficiency
    let h = LimitSeries::new(
        config,
        0,
        vec![
            span(0, &[Section::new(&f2, &[0, 1], &[])]),
            span(1, &[Section::new(&f2, &[], &[1])]),
            span(2, &[Section::new(&f2, &[], &[0, 1])]),
        ],
    )
    .unwrap();
    println!(
        "flat variant: valid, exact: {}, deficiency support: {:?}",
        h.is_exact().unwrap(),
        h.component_support().unwrap()
    );
}
