//! Exact subspace calculus: canonical echelon representatives, rank/kernel/
//! image, sums and intersections, and the complement-and-graph construction.
//!
//! Run with: cargo run --example subspaces

use limit_series::qlinalg::{complement_and_graph, FieldSpec, Matrix, Subspace};

fn main() {
    // ranks and kernels are exact over the rationals
    let q = FieldSpec::Rationals;
    let m = Matrix::from_i64_rows(q, &[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
    let (rank, kernel, image) = m.rank_kernel_image();
    println!("over Q: rank {} of a 3x3 matrix", rank);
    println!("  kernel basis rows: {:?}", kernel.basis_matrix());
    println!("  image dimension:   {}", image.dim());

    // canonical representatives make equality structural
    let f2 = FieldSpec::prime(2).unwrap();
    let a = Subspace::from_span_matrix(&Matrix::from_i64_rows(f2, &[&[1, 0, 1], &[0, 1, 1]]));
    let b = Subspace::from_span_matrix(&Matrix::from_i64_rows(f2, &[&[1, 1, 0], &[0, 1, 1]]));
    println!("two spanning sets, one subspace: {}", a == b);

    // the modular dimension law dim(U+W) + dim(U/\W) = dim U + dim W
    let u = Subspace::from_span_matrix(&Matrix::from_i64_rows(f2, &[&[1, 0, 1]]));
    let w = Subspace::from_span_matrix(&Matrix::from_i64_rows(f2, &[&[1, 0, 0], &[0, 0, 1]]));
    let (sum, intersection) = u.sum_intersect(&w).unwrap();
    println!(
        "dim(U+W) = {}, dim(U/\\W) = {}, dim U + dim W = {}",
        sum.dim(),
        intersection.dim(),
        u.dim() + w.dim()
    );

    // complements by the pivot rule, and the graph matching them
    let full = Subspace::full(f2, 2);
    let line_a = Subspace::from_span_matrix(&Matrix::from_i64_rows(f2, &[&[1, 0]]));
    let line_b = Subspace::from_span_matrix(&Matrix::from_i64_rows(f2, &[&[0, 1]]));
    let (c_a, c_b, graph) = complement_and_graph(&line_a, &full, &line_b, &full).unwrap();
    println!("complement of span{{e1}}: {:?}", c_a.basis_matrix());
    println!("complement of span{{e2}}: {:?}", c_b.basis_matrix());
    println!("graph in the product space: {:?}", graph.basis_matrix());
}
