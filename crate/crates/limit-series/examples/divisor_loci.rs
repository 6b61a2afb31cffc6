//! Divisors of sections, the degree-d Abel map, and enumeration of the
//! divisor locus of a series over a small prime field, including the
//! exactness dichotomy along a forgetful pair.
//!
//! Run with: cargo run --example divisor_loci

use limit_series::abelmap::{
    abel, compare_locus, divisor_of_section, enumerate_locus, DEFAULT_SECTION_BOUND,
};
use limit_series::curvemodel::{fiber_sample, CurveConfig, LimitSeries, Section};
use limit_series::json;
use limit_series::qlinalg::{FieldSpec, Subspace};

fn main() {
    let f2 = FieldSpec::prime(2).unwrap();
    let config = CurveConfig::new(f2, 1, 2).unwrap();
    let span = |level: usize, sections: &[Section]| {
        let twist = config.twist(level).unwrap();
        Subspace::from_rows(
            f2,
            twist.dim(),
            sections.iter().map(|s| twist.coords_of(s).unwrap()).collect(),
        )
    };

    // the exact desk series and the divisor of its surviving section
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
    let divisor = divisor_of_section(&g, 0, &Section::new(&f2, &[1], &[1])).unwrap();
    println!(
        "divisor of (1,1): {}",
        json::to_canonical_string(&json::divisor_to_value(&divisor))
    );
    println!("its degree: {}, Abel class: {:?}", divisor.degree(), abel(1, &divisor).unwrap());

    let locus = enumerate_locus(&g, DEFAULT_SECTION_BOUND).unwrap();
    println!(
        "locus of the exact series: {}",
        json::to_canonical_string(&json::locus_to_value(&locus))
    );

    // a non-exact series at level 1 and its exact lift: the locus grows
    let flat_config = CurveConfig::new(f2, 1, 1).unwrap();
    let flat_span = |level: usize, s: &Section| {
        let twist = flat_config.twist(level).unwrap();
        Subspace::from_rows(f2, twist.dim(), vec![twist.coords_of(s).unwrap()])
    };
    let flat = LimitSeries::new(
        flat_config,
        0,
        vec![
            flat_span(0, &Section::new(&f2, &[0, 1], &[])),
            flat_span(1, &Section::new(&f2, &[], &[0, 1])),
        ],
    )
    .unwrap();
    let refined = flat.profile().unwrap().refine(2, 1).unwrap();
    let lift = fiber_sample(&flat, &refined, 2, 0).unwrap();
    let report = compare_locus(&flat, &lift, DEFAULT_SECTION_BOUND).unwrap();
    println!(
        "flat series locus is empty: {}, its exact lift gains components {:?}",
        report.coarse.points.is_empty(),
        report.extra_components
    );
    println!(
        "comparison report: {}",
        json::to_canonical_string(&json::comparison_to_value(&report))
    );
}
