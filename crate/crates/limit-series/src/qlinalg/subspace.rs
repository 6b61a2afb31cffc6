//! Subspaces of `F^n` in canonical reduced-echelon form, plus the sum,
//! intersection, complement and graph constructions used throughout.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;
use super::QlinalgError;

/// A subspace of `F^n`, stored as a reduced row-echelon basis with no zero
/// rows. The echelon form is the unique canonical representative, so `==`
/// on `Subspace` values is equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// The subspace spanned by the given row vectors, canonicalized.
    pub fn from_rows(field: FieldSpec, ambient: usize, rows: Vec<Vec<Scalar>>) -> Subspace {
        let m = Matrix::from_rows_vec(field, ambient, rows);
        Subspace::from_span_matrix(&m)
    }

    /// The row space of a matrix, canonicalized.
    pub fn from_span_matrix(m: &Matrix) -> Subspace {
        let (rr, pivots) = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| rr.row(i).to_vec()).collect();
        let basis = Matrix::from_rows_vec(*m.field(), m.cols(), rows);
        Subspace {
            field: *m.field(),
            ambient: m.cols(),
            basis,
        }
    }

    pub fn zero(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_row(&self, i: usize) -> &[Scalar] {
        self.basis.row(i)
    }

    /// Pivot column of each basis row, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                self.basis_row(i)
                    .iter()
                    .position(|e| !e.is_zero())
                    .expect("no zero rows in a canonical basis")
            })
            .collect()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let f = &self.field;
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (i, p) in self.pivots().into_iter().enumerate() {
            let c = rem[p].clone();
            if !c.is_zero() {
                for j in 0..self.ambient {
                    let s = f.mul(&c, &self.basis.get(i, j).clone());
                    rem[j] = f.sub(&rem[j], &s);
                }
            }
            coords.push(c);
        }
        if rem.iter().all(|e| e.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && other.field == self.field
            && (0..other.dim()).all(|i| self.contains_vector(other.basis_row(i)))
    }

    /// The vector with the given coordinates in the echelon basis.
    pub fn vector_from_coordinates(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let f = &self.field;
        let mut v = vec![f.zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient {
                v[j] = f.add(&v[j], &f.mul(c, self.basis.get(i, j)));
            }
        }
        v
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), QlinalgError> {
        if self.field != other.field {
            return Err(QlinalgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(QlinalgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Sum and intersection in one sweep (Zassenhaus block reduction).
    pub fn sum_intersect(&self, other: &Subspace) -> Result<(Subspace, Subspace), QlinalgError> {
        self.check_compatible(other)?;
        let f = self.field;
        let n = self.ambient;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(self.dim() + other.dim());
        for i in 0..self.dim() {
            let mut row = self.basis_row(i).to_vec();
            row.extend_from_slice(self.basis_row(i));
            rows.push(row);
        }
        for i in 0..other.dim() {
            let mut row = other.basis_row(i).to_vec();
            row.extend(vec![f.zero(); n]);
            rows.push(row);
        }
        let block = Matrix::from_rows_vec(f, 2 * n, rows);
        let (rr, pivots) = block.rref();
        let mut sum_rows = Vec::new();
        let mut int_rows = Vec::new();
        for i in 0..pivots.len() {
            let row = rr.row(i);
            let left = &row[..n];
            let right = &row[n..];
            if left.iter().any(|e| !e.is_zero()) {
                sum_rows.push(left.to_vec());
            } else {
                int_rows.push(right.to_vec());
            }
        }
        Ok((
            Subspace::from_rows(f, n, sum_rows),
            Subspace::from_rows(f, n, int_rows),
        ))
    }

    /// The deterministic complement of `self` inside `sup`: the span of the
    /// basis rows of `sup` whose pivot is not a pivot of `self`.
    pub fn complement_in(&self, sup: &Subspace) -> Result<Subspace, QlinalgError> {
        self.check_compatible(sup)?;
        if !sup.contains_subspace(self) {
            return Err(QlinalgError::NotContained);
        }
        let own: std::collections::HashSet<usize> = self.pivots().into_iter().collect();
        let rows: Vec<Vec<Scalar>> = sup
            .pivots()
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !own.contains(p))
            .map(|(i, _)| sup.basis_row(i).to_vec())
            .collect();
        Ok(Subspace::from_rows(self.field, self.ambient, rows))
    }
}

/// Complements `C_A` of `a` in `u` and `C_B` of `b` in `w`, together with the
/// graph of the linear isomorphism `C_A -> C_B` matching basis vectors in
/// increasing pivot order. The graph lives in the product space
/// `F^(dim u ambient + dim w ambient)`. Requires equal codimensions.
pub fn complement_and_graph(
    a: &Subspace,
    u: &Subspace,
    b: &Subspace,
    w: &Subspace,
) -> Result<(Subspace, Subspace, Subspace), QlinalgError> {
    let c_a = a.complement_in(u)?;
    let c_b = b.complement_in(w)?;
    if c_a.dim() != c_b.dim() {
        return Err(QlinalgError::CodimensionMismatch {
            left: c_a.dim(),
            right: c_b.dim(),
        });
    }
    let f = *u.field();
    if f != *w.field() {
        return Err(QlinalgError::FieldMismatch);
    }
    let (na, nb) = (u.ambient_dim(), w.ambient_dim());
    let rows: Vec<Vec<Scalar>> = (0..c_a.dim())
        .map(|t| {
            let mut row = c_a.basis_row(t).to_vec();
            row.extend_from_slice(c_b.basis_row(t));
            row
        })
        .collect();
    Ok((c_a, c_b, Subspace::from_rows(f, na + nb, rows)))
}

/// Deterministic pseudo-random `k`-dimensional subspace of `F^n` over a prime
/// field. A fixed seed always yields the same subspace, and every subspace is
/// reached as the seed varies.
pub fn random_subspace(
    field: FieldSpec,
    n: usize,
    k: usize,
    seed: u64,
) -> Result<Subspace, QlinalgError> {
    let Some(p) = field.order() else {
        return Err(QlinalgError::RequiresFiniteField);
    };
    if k > n {
        return Err(QlinalgError::DimensionTooLarge { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if k == 0 {
        return Ok(Subspace::zero(field, n));
    }
    loop {
        let rows: Vec<Vec<Scalar>> = (0..k)
            .map(|_| (0..n).map(|_| Scalar::Fp(rng.gen_range(0..p))).collect())
            .collect();
        let s = Subspace::from_rows(field, n, rows);
        if s.dim() == k {
            return Ok(s);
        }
    }
}

/// A pseudo-random vector of the subspace (possibly zero).
pub fn random_vector_in(rng: &mut ChaCha8Rng, s: &Subspace) -> Vec<Scalar> {
    let p = s.field().order().expect("finite field sampling only");
    let coords: Vec<Scalar> = (0..s.dim())
        .map(|_| Scalar::Fp(rng.gen_range(0..p)))
        .collect();
    s.vector_from_coordinates(&coords)
}

/// A pseudo-random subspace `t` with `lower <= t <= upper` and `dim t = k`.
pub fn random_subspace_between(
    rng: &mut ChaCha8Rng,
    lower: &Subspace,
    upper: &Subspace,
    k: usize,
) -> Result<Subspace, QlinalgError> {
    if !(lower.dim() <= k && k <= upper.dim()) || !upper.contains_subspace(lower) {
        return Err(QlinalgError::InfeasibleSandwich {
            lower: lower.dim(),
            upper: upper.dim(),
            target: k,
        });
    }
    let field = *upper.field();
    let n = upper.ambient_dim();
    loop {
        let mut rows: Vec<Vec<Scalar>> = (0..lower.dim()).map(|i| lower.basis_row(i).to_vec()).collect();
        for _ in 0..(k - lower.dim()) {
            rows.push(random_vector_in(rng, upper));
        }
        let s = Subspace::from_rows(field, n, rows);
        if s.dim() == k {
            return Ok(s);
        }
    }
}

/// A pseudo-random invertible `n x n` matrix over a prime field.
pub fn random_invertible(rng: &mut ChaCha8Rng, field: FieldSpec, n: usize) -> Matrix {
    let p = field.order().expect("finite field sampling only");
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| Scalar::Fp(rng.gen_range(0..p))).collect())
            .collect();
        let m = Matrix::from_rows_vec(field, n, rows);
        if m.rank() == n {
            return m;
        }
    }
}

/// Inverse of an invertible square matrix.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let field = *m.field();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = m.row(i).to_vec();
        for j in 0..n {
            row.push(if i == j { field.one() } else { field.zero() });
        }
        rows.push(row);
    }
    let aug = Matrix::from_rows_vec(field, 2 * n, rows);
    let (rr, pivots) = aug.rref();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    let mut inv_rows = Vec::with_capacity(n);
    for i in 0..n {
        inv_rows.push(rr.row(i)[n..].to_vec());
    }
    Some(Matrix::from_rows_vec(field, n, inv_rows))
}

/// All `k`-dimensional subspaces of `F^n`, one canonical representative each.
pub fn enumerate_subspaces(
    field: FieldSpec,
    n: usize,
    k: usize,
) -> Result<Vec<Subspace>, QlinalgError> {
    let Some(p) = field.order() else {
        return Err(QlinalgError::RequiresFiniteField);
    };
    if k > n {
        return Err(QlinalgError::DimensionTooLarge { k, n });
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // free entries of the echelon shape: (r, j) with j > pivot_r, j not a pivot
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &pr) in pivots.iter().enumerate() {
            for j in (pr + 1)..n {
                if !pivots.contains(&j) {
                    free.push((r, j));
                }
            }
        }
        let mut assignment = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![field.zero(); n]; k];
            for (r, &pr) in pivots.iter().enumerate() {
                rows[r][pr] = field.one();
            }
            for (slot, &(r, j)) in free.iter().enumerate() {
                rows[r][j] = Scalar::Fp(assignment[slot]);
            }
            let basis = Matrix::from_rows_vec(field, n, rows);
            out.push(Subspace {
                field,
                ambient: n,
                basis,
            });
            // odometer over F^free
            let mut carry = true;
            for slot in assignment.iter_mut() {
                *slot += 1;
                if *slot == p {
                    *slot = 0;
                } else {
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
    }
    Ok(out)
}

/// Representatives of the nonzero vectors of `F^k` up to scalar: the first
/// nonzero coordinate is 1.
pub fn projective_representatives(field: FieldSpec, k: usize) -> Result<Vec<Vec<Scalar>>, QlinalgError> {
    let Some(p) = field.order() else {
        return Err(QlinalgError::RequiresFiniteField);
    };
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        let mut odo = vec![0u64; tail];
        loop {
            let mut v = vec![field.zero(); k];
            v[lead] = field.one();
            for (t, &val) in odo.iter().enumerate() {
                v[lead + 1 + t] = Scalar::Fp(val);
            }
            out.push(v);
            let mut carry = true;
            for slot in odo.iter_mut() {
                *slot += 1;
                if *slot == p {
                    *slot = 0;
                } else {
                    carry = false;
                    break;
                }
            }
            if carry {
                break;
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if idx[k - 1] >= n {
            break;
        }
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] <= n - (k - i) {
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn sp(field: FieldSpec, n: usize, rows: &[&[i64]]) -> Subspace {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Subspace::from_rows(field, n, rows)
    }

    #[test]
    fn canonical_equality() {
        let a = sp(f2(), 3, &[&[1, 0, 1], &[0, 1, 1]]);
        let b = sp(f2(), 3, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(a, b); // same span, different spanning sets
    }

    #[test]
    fn sum_intersect_idempotent() {
        let u = sp(f2(), 3, &[&[1, 0, 1]]);
        let (s, i) = u.sum_intersect(&u).unwrap();
        assert_eq!(s, u);
        assert_eq!(i, u);
    }

    #[test]
    fn sum_intersect_complementary_lines() {
        let q = FieldSpec::Rationals;
        let u = sp(q, 2, &[&[1, 0]]);
        let w = sp(q, 2, &[&[0, 1]]);
        let (s, i) = u.sum_intersect(&w).unwrap();
        assert_eq!(s, Subspace::full(q, 2));
        assert_eq!(i.dim(), 0);
    }

    #[test]
    fn sum_intersect_f2_line_in_plane() {
        // oracle: enumerate the 8 vectors of F_2^3 and intersect by membership
        let u = sp(f2(), 3, &[&[1, 0, 1]]);
        let w = sp(f2(), 3, &[&[1, 0, 0], &[0, 0, 1]]);
        let (s, i) = u.sum_intersect(&w).unwrap();
        assert_eq!(i, sp(f2(), 3, &[&[1, 0, 1]]));
        assert_eq!(s, w);
        let mut members = Vec::new();
        for bits in 0..8u32 {
            let v: Vec<Scalar> = (0..3).map(|j| f2().from_i64(((bits >> j) & 1) as i64)).collect();
            if u.contains_vector(&v) && w.contains_vector(&v) && v.iter().any(|e| !e.is_zero()) {
                members.push(v);
            }
        }
        assert_eq!(members.len(), 1);
        assert!(i.contains_vector(&members[0]));
    }

    #[test]
    fn modular_dimension_law_mismatch_errors() {
        let u = sp(f2(), 2, &[&[1, 0]]);
        let w = sp(f2(), 3, &[&[1, 0, 0]]);
        assert!(u.sum_intersect(&w).is_err());
        let q = sp(FieldSpec::Rationals, 2, &[&[1, 0]]);
        assert!(u.sum_intersect(&q).is_err());
    }

    #[test]
    fn complement_pivot_rule() {
        let u = Subspace::full(f2(), 2);
        let a = sp(f2(), 2, &[&[1, 0]]);
        let b = sp(f2(), 2, &[&[0, 1]]);
        let (c_a, c_b, graph) = complement_and_graph(&a, &u, &b, &u).unwrap();
        assert_eq!(c_a, sp(f2(), 2, &[&[0, 1]]));
        assert_eq!(c_b, sp(f2(), 2, &[&[1, 0]]));
        assert_eq!(graph, sp(f2(), 4, &[&[0, 1, 1, 0]]));
    }

    #[test]
    fn graph_of_nothing_and_of_identity() {
        let u = sp(f2(), 1, &[&[1]]);
        let (c_a, c_b, graph) = complement_and_graph(&u, &u, &u, &u).unwrap();
        assert_eq!(c_a.dim(), 0);
        assert_eq!(c_b.dim(), 0);
        assert_eq!(graph.dim(), 0);

        let z = Subspace::zero(f2(), 1);
        let full = Subspace::full(f2(), 1);
        let (_, _, graph) = complement_and_graph(&z, &full, &z, &full).unwrap();
        assert_eq!(graph, sp(f2(), 2, &[&[1, 1]]));
    }

    #[test]
    fn complement_codimension_mismatch() {
        let u = Subspace::full(f2(), 2);
        let a = sp(f2(), 2, &[&[1, 0]]);
        let b = Subspace::zero(f2(), 2);
        assert!(complement_and_graph(&a, &u, &b, &u).is_err());
    }

    #[test]
    fn random_subspace_extremes() {
        for seed in 0..4 {
            let s = random_subspace(f2(), 3, 0, seed).unwrap();
            assert_eq!(s, Subspace::zero(f2(), 3));
            let s = random_subspace(f2(), 3, 3, seed).unwrap();
            assert_eq!(s, Subspace::full(f2(), 3));
        }
        assert!(random_subspace(f2(), 2, 3, 0).is_err());
        assert!(random_subspace(FieldSpec::Rationals, 2, 1, 0).is_err());
    }

    #[test]
    fn random_subspace_covers_the_three_lines() {
        // exhaust seeds 0..7 and collect distinct outputs
        let mut seen = std::collections::HashSet::new();
        for seed in 0..8 {
            seen.insert(random_subspace(f2(), 2, 1, seed).unwrap());
        }
        let all = enumerate_subspaces(f2(), 2, 1).unwrap();
        assert_eq!(all.len(), 3);
        for line in all {
            assert!(seen.contains(&line), "seed sweep misses {:?}", line);
        }
    }

    #[test]
    fn enumerate_counts() {
        // Gaussian binomials: [4 2]_2 = 35, [3 1]_3 = 13
        assert_eq!(enumerate_subspaces(f2(), 4, 2).unwrap().len(), 35);
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(enumerate_subspaces(f3, 3, 1).unwrap().len(), 13);
    }

    #[test]
    fn projective_representative_counts() {
        assert_eq!(projective_representatives(f2(), 3).unwrap().len(), 7);
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(projective_representatives(f3, 2).unwrap().len(), 4);
    }
}
