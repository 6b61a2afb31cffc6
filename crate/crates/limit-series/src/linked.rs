//! Linked sequences of vector spaces: equal-dimensional spaces `V^(i)`
//! coordinatized as `F^n`, with upward maps `h^i: V^(i) -> V^(i+1)` and
//! downward maps `h_i: V^(i+1) -> V^(i)` whose composites vanish and whose
//! kernels at each index meet trivially. Outside the stored window the maps
//! follow the boundary convention: below it the downward maps are the
//! identity and the upward maps are zero, above it the reverse.
//!
//! A sequence is its matrices; windows are trimmed so that no stored edge
//! equals a convention edge.

use thiserror::Error;

use crate::numfn::{Condition, NumericalFunction, Triple};
use crate::qlinalg::{complement_and_graph, FieldSpec, Matrix, QlinalgError, Scalar, Subspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkedError {
    #[error("window is malformed: lo {lo} > hi {hi}")]
    BadWindow { lo: i64, hi: i64 },
    #[error("expected {expected} stored maps in each direction, got {up} up / {dn} down")]
    MapCount { expected: usize, up: usize, dn: usize },
    #[error("map at edge {edge} is not a {n}x{n} matrix over the sequence field")]
    MalformedMap { edge: i64, n: usize },
    #[error("sequence violates the linking axioms: {0}")]
    Invalid(Violation),
    #[error("edge {edge} has full rank sum; nothing to expand")]
    NothingToExpand { edge: i64 },
    #[error(transparent)]
    Linalg(#[from] QlinalgError),
    #[error(transparent)]
    Numerical(#[from] crate::numfn::NumfnError),
}

/// A violated linking axiom, with the index it fails at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// `h_i h^i != 0` at the edge.
    UpThenDownNonzero { edge: i64 },
    /// `h^i h_i != 0` at the edge.
    DownThenUpNonzero { edge: i64 },
    /// `Ker(h^i)` meets `Ker(h_{i-1})` nontrivially.
    KernelOverlap { index: i64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::UpThenDownNonzero { edge } => {
                write!(f, "down-after-up composite is nonzero at edge {}", edge)
            }
            Violation::DownThenUpNonzero { edge } => {
                write!(f, "up-after-down composite is nonzero at edge {}", edge)
            }
            Violation::KernelOverlap { index } => {
                write!(f, "upward and downward kernels overlap at index {}", index)
            }
        }
    }
}

/// The kernel-dimension profile of a sequence on its inclusive window
/// `[lo, hi]`, with the usual tail conventions outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalProfile {
    n: usize,
    lo: i64,
    triples: Vec<Triple>,
}

impl NumericalProfile {
    pub fn new(n: usize, lo: i64, triples: Vec<Triple>) -> Self {
        let mut p = NumericalProfile { n, lo, triples };
        p.trim();
        p
    }

    fn trim(&mut self) {
        let left = Triple::new(0, self.n as i64, 0);
        let right = Triple::new(self.n as i64, 0, 0);
        while self.triples.first() == Some(&left) {
            self.triples.remove(0);
            self.lo += 1;
        }
        while self.triples.last() == Some(&right) {
            self.triples.pop();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inclusive window `[lo, hi]`; `hi = lo - 1` when every value is a tail.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.triples.len() as i64 - 1)
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn eval(&self, i: i64) -> Triple {
        if i < self.lo {
            Triple::new(0, self.n as i64, 0)
        } else if i >= self.lo + self.triples.len() as i64 {
            Triple::new(self.n as i64, 0, 0)
        } else {
            self.triples[(i - self.lo) as usize]
        }
    }

    pub fn total_deficiency(&self) -> i64 {
        self.triples.iter().map(|t| t.m).sum()
    }

    /// The same data as a numerical function on a half-open window.
    pub fn to_function(&self) -> NumericalFunction {
        NumericalFunction::new(self.n as i64, self.lo, self.triples.clone())
            .expect("profile dimensions are positive")
    }
}

/// Exactness certificate: per-edge ranks over the stored window and the
/// first equality characterization that fails, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub exact: bool,
    /// `(edge, rank of the upward map, rank of the downward map)`.
    pub edge_ranks: Vec<(i64, usize, usize)>,
    pub total_deficiency: i64,
    pub first_failure: Option<(Condition, i64)>,
}

/// A linked sequence of vector spaces, all identified with `F^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkedSequence {
    field: FieldSpec,
    n: usize,
    lo: i64,
    hi: i64,
    up: Vec<Matrix>,
    dn: Vec<Matrix>,
}

impl LinkedSequence {
    /// Build from stored maps for the edges `lo..hi`. Shapes are validated
    /// here; the linking axioms are checked by [`Self::validate`].
    pub fn new(
        field: FieldSpec,
        n: usize,
        lo: i64,
        hi: i64,
        up: Vec<Matrix>,
        dn: Vec<Matrix>,
    ) -> Result<Self, LinkedError> {
        if lo > hi {
            return Err(LinkedError::BadWindow { lo, hi });
        }
        let expected = (hi - lo) as usize;
        if up.len() != expected || dn.len() != expected {
            return Err(LinkedError::MapCount {
                expected,
                up: up.len(),
                dn: dn.len(),
            });
        }
        for (k, m) in up.iter().chain(dn.iter()).enumerate() {
            if m.rows() != n || m.cols() != n || *m.field() != field {
                let edge = lo + (k % expected.max(1)) as i64;
                return Err(LinkedError::MalformedMap { edge, n });
            }
        }
        Ok(LinkedSequence {
            field,
            n,
            lo,
            hi,
            up,
            dn,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Stored window: spaces live at `lo..=hi`, stored edges at `lo..hi`.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn stored_up(&self) -> &[Matrix] {
        &self.up
    }

    pub fn stored_dn(&self) -> &[Matrix] {
        &self.dn
    }

    /// The upward map at an edge, materializing the boundary convention.
    pub fn up_map(&self, edge: i64) -> Matrix {
        if edge < self.lo {
            Matrix::zeros(self.field, self.n, self.n)
        } else if edge >= self.hi {
            Matrix::identity(self.field, self.n)
        } else {
            self.up[(edge - self.lo) as usize].clone()
        }
    }

    /// The downward map at an edge, materializing the boundary convention.
    pub fn dn_map(&self, edge: i64) -> Matrix {
        if edge < self.lo {
            Matrix::identity(self.field, self.n)
        } else if edge >= self.hi {
            Matrix::zeros(self.field, self.n, self.n)
        } else {
            self.dn[(edge - self.lo) as usize].clone()
        }
    }

    /// All axiom violations, over the window and one conventional edge on
    /// each side. Empty exactly when the sequence is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for edge in (self.lo - 1)..=self.hi {
            let up = self.up_map(edge);
            let dn = self.dn_map(edge);
            if !dn.mul(&up).is_zero() {
                out.push(Violation::UpThenDownNonzero { edge });
            }
            if !up.mul(&dn).is_zero() {
                out.push(Violation::DownThenUpNonzero { edge });
            }
        }
        for index in self.lo..=self.hi {
            let up = self.up_map(index);
            let dn_below = self.dn_map(index - 1);
            // dim of Ker(up) meet Ker(dn_below) via the stacked matrix
            let mut rows = Vec::with_capacity(2 * self.n);
            for i in 0..self.n {
                rows.push(up.row(i).to_vec());
            }
            for i in 0..self.n {
                rows.push(dn_below.row(i).to_vec());
            }
            let stacked = Matrix::from_rows_vec(self.field, self.n, rows);
            if stacked.rank() < self.n {
                out.push(Violation::KernelOverlap { index });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn require_valid(&self) -> Result<(), LinkedError> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(LinkedError::Invalid(v)),
        }
    }

    /// Kernel dimensions `(p_i, q_i, m_i)` over the inclusive window.
    pub fn numerical_profile(&self) -> Result<NumericalProfile, LinkedError> {
        self.require_valid()?;
        let triples = (self.lo..=self.hi)
            .map(|i| {
                let p = (self.n - self.dn_map(i - 1).rank()) as i64;
                let q = (self.n - self.up_map(i).rank()) as i64;
                Triple::new(p, q, self.n as i64 - p - q)
            })
            .collect();
        Ok(NumericalProfile::new(self.n, self.lo, triples))
    }

    /// Exactness of the two-periodic complex, certified by edge ranks. The
    /// verdict always equals `total deficiency == n`.
    pub fn exactness(&self) -> Result<ExactnessCertificate, LinkedError> {
        self.require_valid()?;
        let profile = self.numerical_profile()?;
        let mut edge_ranks = Vec::new();
        let mut exact = true;
        for edge in self.lo..self.hi {
            let up_rank = self.up_map(edge).rank();
            let dn_rank = self.dn_map(edge).rank();
            edge_ranks.push((edge, up_rank, dn_rank));
            if up_rank + dn_rank != self.n {
                exact = false;
            }
        }
        let total = profile.total_deficiency();
        debug_assert_eq!(exact, total == self.n as i64);
        let first_failure = if exact {
            None
        } else {
            self.first_equality_failure(&profile)
        };
        Ok(ExactnessCertificate {
            exact,
            edge_ranks,
            total_deficiency: total,
            first_failure,
        })
    }

    pub fn is_exact(&self) -> Result<bool, LinkedError> {
        Ok(self.exactness()?.exact)
    }

    fn first_equality_failure(&self, profile: &NumericalProfile) -> Option<(Condition, i64)> {
        for i in (self.lo - 1)..=self.hi {
            let t = profile.eval(i);
            let u = profile.eval(i + 1);
            if t.p + t.m != u.p {
                return Some((Condition::ForwardMonotonicity, i));
            }
            if u.q + u.m != t.q {
                return Some((Condition::BackwardMonotonicity, i));
            }
            let rank_sum = self.up_map(i).rank() + self.dn_map(i).rank();
            if rank_sum != self.n {
                return Some((Condition::RankBudget, i));
            }
        }
        Some((Condition::DeficiencyBudget, self.lo))
    }

    /// Total deficiency of the sequence.
    pub fn total_deficiency(&self) -> Result<i64, LinkedError> {
        Ok(self.numerical_profile()?.total_deficiency())
    }

    /// The computed lower and upper bounds: the largest index below which
    /// every downward map is an isomorphism, and the smallest index from
    /// which every upward map is. Bounds are derived from the maps, never
    /// stored.
    pub fn bounds(&self) -> (i64, i64) {
        let mut lower = self.lo;
        while lower < self.hi && self.dn_map(lower).rank() == self.n {
            lower += 1;
        }
        let mut upper = self.hi;
        while upper > lower && self.up_map(upper - 1).rank() == self.n {
            upper -= 1;
        }
        (lower, upper)
    }

    /// Drop stored boundary edges that equal the convention edges.
    pub fn trim(&self) -> LinkedSequence {
        let mut s = self.clone();
        while s.lo < s.hi && s.up[0].is_zero() && s.dn[0].is_identity() {
            s.up.remove(0);
            s.dn.remove(0);
            s.lo += 1;
        }
        while s.lo < s.hi
            && s.up.last().expect("nonempty").is_identity()
            && s.dn.last().expect("nonempty").is_zero()
        {
            s.up.pop();
            s.dn.pop();
            s.hi -= 1;
        }
        s
    }

    /// Elementary truncation at `m`: removes the space at `m + 1` and
    /// replaces the two edges around it by their composites. The result is
    /// trimmed to its minimal window.
    pub fn truncate(&self, m: i64) -> Result<LinkedSequence, LinkedError> {
        self.require_valid()?;
        let span_lo = (self.lo - 1).min(m - 1);
        let span_hi = self.hi.max(m + 1);
        let mut up = Vec::new();
        let mut dn = Vec::new();
        for k in span_lo..span_hi {
            if k < m {
                up.push(self.up_map(k));
                dn.push(self.dn_map(k));
            } else if k == m {
                up.push(self.up_map(m + 1).mul(&self.up_map(m)));
                dn.push(self.dn_map(m).mul(&self.dn_map(m + 1)));
            } else {
                up.push(self.up_map(k + 1));
                dn.push(self.dn_map(k + 1));
            }
        }
        let out = LinkedSequence::new(self.field, self.n, span_lo, span_hi, up, dn)?;
        debug_assert!(out.is_valid());
        Ok(out.trim())
    }

    /// Insert a new space between `edge` and `edge + 1`, following the graph
    /// construction: the inserted space is `(Im(h_i) + Im(h^i)) + K` inside
    /// `V^(i) x V^(i+1)` with `K` the pivot-order graph between the
    /// complements of the images inside the opposite kernels. Fails when the
    /// edge already has full rank sum.
    pub fn expand_once(&self, edge: i64) -> Result<LinkedSequence, LinkedError> {
        self.require_valid()?;
        let up = self.up_map(edge);
        let dn = self.dn_map(edge);
        let (up_rank, im_up) = {
            let s = up.image();
            (s.dim(), s)
        };
        let (dn_rank, im_dn) = {
            let s = dn.image();
            (s.dim(), s)
        };
        if up_rank + dn_rank >= self.n {
            return Err(LinkedError::NothingToExpand { edge });
        }
        let ker_up = up.kernel();
        let ker_dn = dn.kernel();
        let (_, _, graph) = complement_and_graph(&im_dn, &ker_up, &im_up, &ker_dn)?;
        // the inserted space, as a subspace of F^n x F^n
        let f = self.field;
        let n = self.n;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..im_dn.dim() {
            let mut row = im_dn.basis_row(i).to_vec();
            row.extend(vec![f.zero(); n]);
            rows.push(row);
        }
        for i in 0..im_up.dim() {
            let mut row = vec![f.zero(); n];
            row.extend_from_slice(im_up.basis_row(i));
            rows.push(row);
        }
        for i in 0..graph.dim() {
            rows.push(graph.basis_row(i).to_vec());
        }
        let inserted = Subspace::from_rows(f, 2 * n, rows);
        assert_eq!(inserted.dim(), n, "inserted space has dimension n");

        // connecting maps in the echelon coordinates of the inserted space
        let coords_of = |v: &[Scalar]| -> Vec<Scalar> {
            inserted
                .coordinates(v)
                .expect("vector lies in the inserted space")
        };
        let mut g_up_lower = Matrix::zeros(f, n, n); // V^(i) -> W
        let mut g_dn_upper = Matrix::zeros(f, n, n); // V^(i+1) -> W
        for j in 0..n {
            let e_j: Vec<Scalar> = (0..n)
                .map(|t| if t == j { f.one() } else { f.zero() })
                .collect();
            let mut up_vec = vec![f.zero(); n];
            up_vec.extend(up.apply(&e_j));
            for (i, c) in coords_of(&up_vec).into_iter().enumerate() {
                g_up_lower.set(i, j, c);
            }
            let mut dn_vec = dn.apply(&e_j);
            dn_vec.extend(vec![f.zero(); n]);
            for (i, c) in coords_of(&dn_vec).into_iter().enumerate() {
                g_dn_upper.set(i, j, c);
            }
        }
        let mut g_dn_lower = Matrix::zeros(f, n, n); // W -> V^(i)
        let mut g_up_upper = Matrix::zeros(f, n, n); // W -> V^(i+1)
        for j in 0..n {
            let row = inserted.basis_row(j);
            for i in 0..n {
                g_dn_lower.set(i, j, row[i].clone());
                g_up_upper.set(i, j, row[n + i].clone());
            }
        }

        // splice: the stored edge at `edge` becomes two edges
        let idx = (edge - self.lo) as usize;
        let mut new_up = self.up.clone();
        let mut new_dn = self.dn.clone();
        new_up.splice(idx..idx + 1, [g_up_lower, g_up_upper]);
        new_dn.splice(idx..idx + 1, [g_dn_lower, g_dn_upper]);
        let out = LinkedSequence::new(self.field, self.n, self.lo, self.hi + 1, new_up, new_dn)?;
        debug_assert!(out.is_valid());
        Ok(out)
    }

    /// Expand at the smallest deficient edge until the sequence is exact.
    /// Returns the exact expansion and the insertion schedule; truncating at
    /// the recorded edges in reverse order recovers the input.
    pub fn expand_to_exact(&self) -> Result<Expansion, LinkedError> {
        self.require_valid()?;
        let mut current = self.clone();
        let mut schedule = Vec::new();
        loop {
            let deficient = (current.lo..current.hi).find(|&edge| {
                current.up_map(edge).rank() + current.dn_map(edge).rank() < current.n
            });
            match deficient {
                None => {
                    return Ok(Expansion {
                        sequence: current,
                        schedule,
                    })
                }
                Some(edge) => {
                    current = current.expand_once(edge)?;
                    schedule.push(edge);
                    assert!(schedule.len() <= current.n, "expansion must terminate");
                }
            }
        }
    }
}

/// An exact expansion together with the schedule that recovers the input.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub sequence: LinkedSequence,
    pub schedule: Vec<i64>,
}

/// Deterministic pseudo-random valid linked sequence over a prime field.
///
/// Starts from a direct sum of rank-1 transitions at random indices in
/// `[0, max_window]`, changes basis independently at every window space, and
/// applies a few random truncations. The construction only ever leaves the
/// class of valid sequences, and truncation mixes exact and non-exact
/// outputs. The result is trimmed.
pub fn random_linked_sequence(
    field: FieldSpec,
    n: usize,
    max_window: usize,
    seed: u64,
) -> LinkedSequence {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    assert!(n >= 1, "dimension must be positive");
    assert!(field.is_prime_field(), "finite field sampling only");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let transitions: Vec<i64> = (0..n)
        .map(|_| rng.gen_range(0..=max_window as i64))
        .collect();
    let lo = *transitions.iter().min().expect("n >= 1");
    let hi = *transitions.iter().max().expect("n >= 1");
    // diagonal model: strand k climbs at its transition index
    let mut up = Vec::new();
    let mut dn = Vec::new();
    for edge in lo..hi {
        let mut u = Matrix::zeros(field, n, n);
        let mut d = Matrix::zeros(field, n, n);
        for (k, &t) in transitions.iter().enumerate() {
            if t <= edge {
                u.set(k, k, field.one());
            } else {
                d.set(k, k, field.one());
            }
        }
        up.push(u);
        dn.push(d);
    }
    // change of basis per space; equal beyond the window so the convention
    // maps stay the identity
    let change: Vec<Matrix> = (lo..=hi)
        .map(|_| crate::qlinalg::random_invertible(&mut rng, field, n))
        .collect();
    let inverse: Vec<Matrix> = change
        .iter()
        .map(|a| crate::qlinalg::invert(a).expect("invertible by construction"))
        .collect();
    for i in 0..(hi - lo) as usize {
        up[i] = change[i + 1].mul(&up[i]).mul(&inverse[i]);
        dn[i] = change[i].mul(&dn[i]).mul(&inverse[i + 1]);
    }
    let mut s = LinkedSequence::new(field, n, lo, hi, up, dn).expect("shapes agree");
    let truncations = rng.gen_range(0..=2usize);
    for _ in 0..truncations {
        let (lo, hi) = s.window();
        let m = rng.gen_range(lo - 1..=hi);
        s = s.truncate(m).expect("valid sequences stay valid");
    }
    let s = s.trim();
    debug_assert!(s.is_valid());
    s
}

impl Expansion {
    /// Undo the expansion by truncating at the recorded edges in reverse.
    pub fn recover(&self) -> Result<LinkedSequence, LinkedError> {
        let mut current = self.sequence.clone();
        for &edge in self.schedule.iter().rev() {
            current = current.truncate(edge)?;
        }
        Ok(current)
    }
}
