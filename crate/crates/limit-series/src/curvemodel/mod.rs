//! A concrete model of twist sequences and level series on the curve
//! `X = Y u Z`, two rational components glued transversally at a point `P`.
//!
//! Coordinates are fixed once and for all: `y` on `Y` with `P` at `y = 0`
//! and `Q_Y` at `y = infinity`; `z` on `Z` with `P` at `z = 0` and `Q_Z` at
//! `z = infinity`. The bundle class is normalized to bidegree `(d, 0)`.
//!
//! At level `i` the global sections are pairs `(f, h)` of polynomials:
//! `f` in `y` of degree at most `d` vanishing to order at least
//! `ceil(i/delta)` at `y = 0`, and `h` in `z` of degree at most
//! `floor(i/delta)`, standing for the rational section `h(z)/z^floor(i/delta)`
//! on the `Z` side. When `delta` divides `i` the two sides glue at `P`: the
//! coefficient of `y^(i/delta)` in `f` equals `h(0)`. Either way the space
//! has dimension `d + 1`.
//!
//! The connecting maps carry the `Z`-component upward (multiplying by `z`
//! exactly when the target level is divisible by `delta`) and the
//! `Y`-component downward; both composites vanish and the full-space
//! complexes are exact.

pub mod poly;
mod sample;

pub use sample::{fiber_sample, random_exact_series, random_series, DEFAULT_RETRY_BUDGET};

use thiserror::Error;

use crate::linked::{LinkedError, LinkedSequence};
use crate::numfn::NumericalFunction;
use crate::qlinalg::{FieldSpec, Matrix, QlinalgError, Scalar, Subspace};
use poly::Poly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("degree and level must be at least 1, got d = {d}, delta = {delta}")]
    BadConfig { d: usize, delta: usize },
    #[error("rank {r} needs subspaces of dimension {} in ambient dimension {}", r + 1, d + 1)]
    RankTooLarge { r: usize, d: usize },
    #[error("level index {i} is outside 0..={max}")]
    LevelOutOfRange { i: usize, max: usize },
    #[error("expected {expected} level subspaces, got {got}")]
    LevelCount { expected: usize, got: usize },
    #[error("subspace at level {level} has ambient dimension {got}, expected {expected}")]
    LevelAmbient {
        level: usize,
        got: usize,
        expected: usize,
    },
    #[error("section does not belong to the level-{level} section space")]
    NotASection { level: usize },
    #[error("series is invalid: {0}")]
    InvalidSeries(SeriesViolation),
    #[error("target level {target} does not divide the series level {delta}")]
    LevelNotDivisible { target: usize, delta: usize },
    #[error("configurations differ between the two series")]
    ConfigMismatch,
    #[error("refined function does not restrict to the series profile")]
    ProfileMismatch,
    #[error("sampling requires a prime field")]
    NeedsPrimeField,
    #[error("sampler gave up after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    #[error(transparent)]
    Linked(#[from] LinkedError),
    #[error(transparent)]
    Linalg(#[from] QlinalgError),
    #[error(transparent)]
    Numerical(#[from] crate::numfn::NumfnError),
}

/// A containment or dimension violation in a candidate series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesViolation {
    WrongDimension { level: usize, dim: usize, expected: usize },
    /// The upward image of a basis section escapes the next subspace.
    UpwardEscape { edge: usize, section: Vec<Scalar> },
    /// The downward image of a basis section escapes the previous subspace.
    DownwardEscape { edge: usize, section: Vec<Scalar> },
}

impl std::fmt::Display for SeriesViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesViolation::WrongDimension { level, dim, expected } => write!(
                f,
                "subspace at level {} has dimension {}, expected {}",
                level, dim, expected
            ),
            SeriesViolation::UpwardEscape { edge, .. } => write!(
                f,
                "upward image of a section at level {} escapes level {}",
                edge,
                edge + 1
            ),
            SeriesViolation::DownwardEscape { edge, .. } => write!(
                f,
                "downward image of a section at level {} escapes level {}",
                edge + 1,
                edge
            ),
        }
    }
}

/// The curve, its degree and its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveConfig {
    field: FieldSpec,
    d: usize,
    delta: usize,
}

impl CurveConfig {
    pub fn new(field: FieldSpec, d: usize, delta: usize) -> Result<Self, CurveError> {
        if d < 1 || delta < 1 {
            return Err(CurveError::BadConfig { d, delta });
        }
        Ok(CurveConfig { field, d, delta })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.delta
    }

    /// Number of levels in the normalized window `0..=d*delta`.
    pub fn top_level(&self) -> usize {
        self.d * self.delta
    }

    pub fn twist(&self, i: usize) -> Result<TwistLevel, CurveError> {
        if i > self.top_level() {
            return Err(CurveError::LevelOutOfRange {
                i,
                max: self.top_level(),
            });
        }
        Ok(TwistLevel::new(*self, i))
    }
}

/// A section `(f, h)` of some twist level: `f` is the `Y`-side polynomial in
/// `y`, `h` the `Z`-side polynomial in `z` standing for `h/z^floor(i/delta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub f: Poly,
    pub h: Poly,
}

impl Section {
    pub fn new(field: &FieldSpec, f: &[i64], h: &[i64]) -> Section {
        Section {
            f: poly::trimmed(f.iter().map(|&v| field.from_i64(v)).collect()),
            h: poly::trimmed(h.iter().map(|&v| field.from_i64(v)).collect()),
        }
    }

    pub fn zero() -> Section {
        Section {
            f: Vec::new(),
            h: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        poly::is_zero(&self.f) && poly::is_zero(&self.h)
    }
}

/// One level of the twist sequence, with its bidegree bookkeeping and the
/// canonical ordered basis of the section space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistLevel {
    config: CurveConfig,
    index: usize,
    /// `ceil(i/delta)`: minimal vanishing order at `P` on the `Y` side.
    y_order: usize,
    /// `floor(i/delta)`: maximal pole order at `P` on the `Z` side.
    z_degree: usize,
    invertible: bool,
}

impl TwistLevel {
    fn new(config: CurveConfig, index: usize) -> TwistLevel {
        let delta = config.delta;
        TwistLevel {
            config,
            index,
            y_order: index.div_ceil(delta),
            z_degree: index / delta,
            invertible: index % delta == 0,
        }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn config(&self) -> &CurveConfig {
        &self.config
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }

    pub fn deg_y(&self) -> i64 {
        self.config.d as i64 - self.y_order as i64
    }

    pub fn deg_z(&self) -> i64 {
        self.z_degree as i64
    }

    pub fn y_order(&self) -> usize {
        self.y_order
    }

    pub fn z_degree(&self) -> usize {
        self.z_degree
    }

    /// Dimension of the section space; always `d + 1`.
    pub fn dim(&self) -> usize {
        self.config.d + 1
    }

    /// The canonical ordered basis: `Y`-monomials descending to the gluing
    /// vector (when the level is invertible), then `Z`-monomials ascending.
    pub fn basis_sections(&self) -> Vec<Section> {
        let field = &self.config.field;
        let d = self.config.d;
        let mut out = Vec::with_capacity(d + 1);
        let one = field.one();
        let monomial = |k: usize| -> Poly {
            let mut p = vec![field.zero(); k + 1];
            p[k] = one.clone();
            p
        };
        if self.invertible {
            let q = self.z_degree;
            for j in ((q + 1)..=d).rev() {
                out.push(Section {
                    f: monomial(j),
                    h: Vec::new(),
                });
            }
            out.push(Section {
                f: monomial(q),
                h: monomial(0),
            });
            for k in 1..=q {
                out.push(Section {
                    f: Vec::new(),
                    h: monomial(k),
                });
            }
        } else {
            for j in (self.y_order..=d).rev() {
                out.push(Section {
                    f: monomial(j),
                    h: Vec::new(),
                });
            }
            for k in 0..=self.z_degree {
                out.push(Section {
                    f: Vec::new(),
                    h: monomial(k),
                });
            }
        }
        debug_assert_eq!(out.len(), d + 1);
        out
    }

    /// Coordinates of a section in the canonical basis; errors when the pair
    /// is not a section of this level.
    pub fn coords_of(&self, s: &Section) -> Result<Vec<Scalar>, CurveError> {
        let field = &self.config.field;
        let d = self.config.d;
        let err = || CurveError::NotASection { level: self.index };
        if poly::degree(&s.f).is_some_and(|deg| deg > d) {
            return Err(err());
        }
        if poly::valuation(&s.f).is_some_and(|v| v < self.y_order) {
            return Err(err());
        }
        if poly::degree(&s.h).is_some_and(|deg| deg > self.z_degree) {
            return Err(err());
        }
        let mut coords = Vec::with_capacity(d + 1);
        if self.invertible {
            let q = self.z_degree;
            let glue_f = poly::coeff(field, &s.f, q);
            let glue_h = poly::coeff(field, &s.h, 0);
            if glue_f != glue_h {
                return Err(err());
            }
            for j in ((q + 1)..=d).rev() {
                coords.push(poly::coeff(field, &s.f, j));
            }
            coords.push(glue_f);
            for k in 1..=q {
                coords.push(poly::coeff(field, &s.h, k));
            }
        } else {
            for j in (self.y_order..=d).rev() {
                coords.push(poly::coeff(field, &s.f, j));
            }
            for k in 0..=self.z_degree {
                coords.push(poly::coeff(field, &s.h, k));
            }
        }
        Ok(coords)
    }

    /// The section with the given coordinates in the canonical basis.
    pub fn section_of(&self, coords: &[Scalar]) -> Section {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let field = &self.config.field;
        let d = self.config.d;
        let mut f = vec![field.zero(); d + 1];
        let mut h = vec![field.zero(); self.z_degree + 1];
        let mut pos = 0;
        if self.invertible {
            let q = self.z_degree;
            for j in ((q + 1)..=d).rev() {
                f[j] = coords[pos].clone();
                pos += 1;
            }
            f[q] = coords[pos].clone();
            h[0] = coords[pos].clone();
            pos += 1;
            for k in 1..=q {
                h[k] = coords[pos].clone();
                pos += 1;
            }
        } else {
            for j in (self.y_order..=d).rev() {
                f[j] = coords[pos].clone();
                pos += 1;
            }
            for k in 0..=self.z_degree {
                h[k] = coords[pos].clone();
                pos += 1;
            }
        }
        Section {
            f: poly::trimmed(f),
            h: poly::trimmed(h),
        }
    }
}

/// The upward connecting map on sections: kill the `Y`-component, carry the
/// `Z`-component, re-representing by a `z`-shift exactly when the target
/// level is divisible by `delta`.
pub fn phi_up(config: &CurveConfig, i: usize, s: &Section) -> Result<Section, CurveError> {
    if i >= config.top_level() {
        return Err(CurveError::LevelOutOfRange {
            i,
            max: config.top_level().saturating_sub(1),
        });
    }
    config.twist(i)?.coords_of(s)?;
    let h = if (i + 1) % config.delta == 0 {
        poly::shift_up(&config.field, &s.h, 1)
    } else {
        s.h.clone()
    };
    Ok(Section { f: Vec::new(), h })
}

/// The downward connecting map on sections: carry the `Y`-component, kill
/// the `Z`-component. The input lives at level `i + 1`, the output at `i`.
pub fn phi_dn(config: &CurveConfig, i: usize, s: &Section) -> Result<Section, CurveError> {
    if i >= config.top_level() {
        return Err(CurveError::LevelOutOfRange {
            i,
            max: config.top_level().saturating_sub(1),
        });
    }
    config.twist(i + 1)?.coords_of(s)?;
    Ok(Section {
        f: s.f.clone(),
        h: Vec::new(),
    })
}

/// Matrix of [`phi_up`] in the canonical bases of levels `i` and `i + 1`.
pub fn phi_up_matrix(config: &CurveConfig, i: usize) -> Result<Matrix, CurveError> {
    let source = config.twist(i)?;
    let target = config.twist(i + 1)?;
    phi_matrix(&source, &target, |s| phi_up(config, i, s))
}

/// Matrix of [`phi_dn`] in the canonical bases of levels `i + 1` and `i`.
pub fn phi_dn_matrix(config: &CurveConfig, i: usize) -> Result<Matrix, CurveError> {
    let source = config.twist(i + 1)?;
    let target = config.twist(i)?;
    phi_matrix(&source, &target, |s| phi_dn(config, i, s))
}

fn phi_matrix(
    source: &TwistLevel,
    target: &TwistLevel,
    map: impl Fn(&Section) -> Result<Section, CurveError>,
) -> Result<Matrix, CurveError> {
    let field = *source.config.field();
    let n = source.dim();
    let mut m = Matrix::zeros(field, n, n);
    for (j, b) in source.basis_sections().into_iter().enumerate() {
        let image = map(&b)?;
        let coords = target.coords_of(&image)?;
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// A level series: subspaces of constant dimension `r + 1` at every level of
/// the normalized window, compatible with both connecting maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSeries {
    config: CurveConfig,
    r: usize,
    levels: Vec<Subspace>,
}

impl LimitSeries {
    pub fn new(config: CurveConfig, r: usize, levels: Vec<Subspace>) -> Result<Self, CurveError> {
        if r + 1 > config.d + 1 {
            return Err(CurveError::RankTooLarge { r, d: config.d });
        }
        let expected = config.top_level() + 1;
        if levels.len() != expected {
            return Err(CurveError::LevelCount {
                expected,
                got: levels.len(),
            });
        }
        for (level, v) in levels.iter().enumerate() {
            if v.field() != config.field() {
                return Err(CurveError::Linalg(QlinalgError::FieldMismatch));
            }
            if v.ambient_dim() != config.d + 1 {
                return Err(CurveError::LevelAmbient {
                    level,
                    got: v.ambient_dim(),
                    expected: config.d + 1,
                });
            }
        }
        Ok(LimitSeries { config, r, levels })
    }

    pub fn config(&self) -> &CurveConfig {
        &self.config
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn level_space(&self, i: usize) -> &Subspace {
        &self.levels[i]
    }

    pub fn level_spaces(&self) -> &[Subspace] {
        &self.levels
    }

    /// All dimension and containment violations; empty exactly when valid.
    pub fn validate(&self) -> Vec<SeriesViolation> {
        let mut out = Vec::new();
        for (i, v) in self.levels.iter().enumerate() {
            if v.dim() != self.r + 1 {
                out.push(SeriesViolation::WrongDimension {
                    level: i,
                    dim: v.dim(),
                    expected: self.r + 1,
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for edge in 0..self.config.top_level() {
            let up = phi_up_matrix(&self.config, edge).expect("edge in range");
            let dn = phi_dn_matrix(&self.config, edge).expect("edge in range");
            let (lower, upper) = (&self.levels[edge], &self.levels[edge + 1]);
            for t in 0..lower.dim() {
                let image = up.apply(lower.basis_row(t));
                if !upper.contains_vector(&image) {
                    out.push(SeriesViolation::UpwardEscape {
                        edge,
                        section: lower.basis_row(t).to_vec(),
                    });
                }
            }
            for t in 0..upper.dim() {
                let image = dn.apply(upper.basis_row(t));
                if !lower.contains_vector(&image) {
                    out.push(SeriesViolation::DownwardEscape {
                        edge,
                        section: upper.basis_row(t).to_vec(),
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn require_valid(&self) -> Result<(), CurveError> {
        match self.validate().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(CurveError::InvalidSeries(v)),
        }
    }

    /// The linked sequence of the series: the connecting maps restricted to
    /// the level subspaces, written in their echelon bases.
    pub fn linked_sequence(&self) -> Result<LinkedSequence, CurveError> {
        self.require_valid()?;
        let n = self.r + 1;
        let field = *self.config.field();
        let top = self.config.top_level();
        let mut up = Vec::with_capacity(top);
        let mut dn = Vec::with_capacity(top);
        for edge in 0..top {
            let up_full = phi_up_matrix(&self.config, edge)?;
            let dn_full = phi_dn_matrix(&self.config, edge)?;
            up.push(restrict_map(&up_full, &self.levels[edge], &self.levels[edge + 1]));
            dn.push(restrict_map(&dn_full, &self.levels[edge + 1], &self.levels[edge]));
        }
        Ok(LinkedSequence::new(field, n, 0, top as i64, up, dn)?)
    }

    /// The numerical function of the series' linked sequence.
    pub fn profile(&self) -> Result<NumericalFunction, CurveError> {
        Ok(self.linked_sequence()?.numerical_profile()?.to_function())
    }

    pub fn is_exact(&self) -> Result<bool, CurveError> {
        Ok(self.linked_sequence()?.is_exact()?)
    }

    /// Deficiency triples per level of the untrimmed window `0..=d*delta`.
    pub fn level_deficiencies(&self) -> Result<Vec<i64>, CurveError> {
        let seq = self.linked_sequence()?;
        let n = self.r as i64 + 1;
        Ok((0..=self.config.top_level() as i64)
            .map(|i| {
                let p = n - seq.dn_map(i - 1).rank() as i64;
                let q = n - seq.up_map(i).rank() as i64;
                n - p - q
            })
            .collect())
    }

    /// Indices with positive deficiency, computed on the untrimmed window.
    pub fn component_support(&self) -> Result<std::collections::BTreeSet<i64>, CurveError> {
        Ok(self
            .level_deficiencies()?
            .into_iter()
            .enumerate()
            .filter(|&(_, m)| m > 0)
            .map(|(i, _)| i as i64)
            .collect())
    }

    /// Restriction to levels divisible by `delta' / target`: the forgetful
    /// map to a coarser level. The twist data at matched levels coincide, so
    /// the subspaces are reused verbatim.
    pub fn forget(&self, target: usize) -> Result<LimitSeries, CurveError> {
        if target < 1 || self.config.delta % target != 0 {
            return Err(CurveError::LevelNotDivisible {
                target,
                delta: self.config.delta,
            });
        }
        let c = self.config.delta / target;
        if c == 1 {
            return Ok(self.clone());
        }
        let config = CurveConfig::new(self.config.field, self.config.d, target)?;
        let levels = (0..=config.top_level())
            .map(|i| self.levels[c * i].clone())
            .collect();
        LimitSeries::new(config, self.r, levels)
    }
}

/// Matrix of a full-space map restricted to `source -> target` subspaces,
/// in their echelon bases. Panics when the image escapes the target; callers
/// validate containment first.
fn restrict_map(full: &Matrix, source: &Subspace, target: &Subspace) -> Matrix {
    let field = *full.field();
    let n = source.dim();
    let mut m = Matrix::zeros(field, target.dim(), n);
    for j in 0..n {
        let image = full.apply(source.basis_row(j));
        let coords = target
            .coordinates(&image)
            .expect("restricted image lies in the target subspace");
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfn::Triple;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn cfg(d: usize, delta: usize) -> CurveConfig {
        CurveConfig::new(f2(), d, delta).unwrap()
    }

    /// The exact rank-0 series on d = 1, delta = 2:
    /// spans of (1,1), (0,1), (0,z).
    fn desk_exact() -> LimitSeries {
        let config = cfg(1, 2);
        let levels = vec![
            span(&config, 0, &[Section::new(&f2(), &[1], &[1])]),
            span(&config, 1, &[Section::new(&f2(), &[], &[1])]),
            span(&config, 2, &[Section::new(&f2(), &[], &[0, 1])]),
        ];
        LimitSeries::new(config, 0, levels).unwrap()
    }

    /// The non-exact rank-0 series: spans of (y,0), (0,1), (0,z).
    fn desk_nonexact() -> LimitSeries {
        let config = cfg(1, 2);
        let levels = vec![
            span(&config, 0, &[Section::new(&f2(), &[0, 1], &[])]),
            span(&config, 1, &[Section::new(&f2(), &[], &[1])]),
            span(&config, 2, &[Section::new(&f2(), &[], &[0, 1])]),
        ];
        LimitSeries::new(config, 0, levels).unwrap()
    }

    fn span(config: &CurveConfig, level: usize, sections: &[Section]) -> Subspace {
        let twist = config.twist(level).unwrap();
        let rows: Vec<Vec<Scalar>> = sections.iter().map(|s| twist.coords_of(s).unwrap()).collect();
        Subspace::from_rows(*config.field(), twist.dim(), rows)
    }

    #[test]
    fn twist_degrees_follow_euclidean_quotients() {
        for d in 1..=4 {
            for delta in 1..=3 {
                let config = cfg(d, delta);
                for i in 0..=config.top_level() {
                    let t = config.twist(i).unwrap();
                    assert_eq!(t.dim(), d + 1);
                    let gap = i64::from(i % delta != 0);
                    assert_eq!(t.deg_y() + t.deg_z(), d as i64 - gap);
                }
                assert_eq!(config.twist(0).unwrap().deg_y(), d as i64);
                assert_eq!(config.twist(d * delta).unwrap().deg_z(), d as i64);
            }
        }
    }

    #[test]
    fn basis_round_trip() {
        for (d, delta) in [(1, 2), (2, 1), (3, 2), (2, 3)] {
            let config = cfg(d, delta);
            for i in 0..=config.top_level() {
                let t = config.twist(i).unwrap();
                for (j, b) in t.basis_sections().into_iter().enumerate() {
                    let coords = t.coords_of(&b).unwrap();
                    let expected: Vec<Scalar> = (0..t.dim())
                        .map(|k| if k == j { f2().one() } else { f2().zero() })
                        .collect();
                    assert_eq!(coords, expected);
                    assert_eq!(t.section_of(&coords), b);
                }
            }
        }
    }

    #[test]
    fn gluing_constraint_enforced() {
        let config = cfg(1, 2);
        let t0 = config.twist(0).unwrap();
        // (1, 1) glues, (1, 0) does not
        assert!(t0.coords_of(&Section::new(&f2(), &[1], &[1])).is_ok());
        assert!(t0.coords_of(&Section::new(&f2(), &[1], &[])).is_err());
        // order constraint at level 1
        let t1 = config.twist(1).unwrap();
        assert!(t1.coords_of(&Section::new(&f2(), &[1], &[])).is_err());
        assert!(t1.coords_of(&Section::new(&f2(), &[0, 1], &[])).is_ok());
    }

    #[test]
    fn phi_desk_values() {
        let config = cfg(1, 2);
        let s = Section::new(&f2(), &[1], &[1]); // (1, 1) at level 0
        let up = phi_up(&config, 0, &s).unwrap();
        assert_eq!(up, Section::new(&f2(), &[], &[1]));
        let up2 = phi_up(&config, 1, &up).unwrap();
        assert_eq!(up2, Section::new(&f2(), &[], &[0, 1])); // z-shift into level 2
        let dn = phi_dn(&config, 0, &Section::new(&f2(), &[], &[1])).unwrap();
        assert!(dn.is_zero());
        let glue2 = Section::new(&f2(), &[0, 1], &[1]); // (y, 1) at level 2
        let dn2 = phi_dn(&config, 1, &glue2).unwrap();
        assert_eq!(dn2, Section::new(&f2(), &[0, 1], &[]));
    }

    #[test]
    fn pure_sided_sections_die() {
        let config = cfg(2, 2);
        for i in 0..config.top_level() {
            let t = config.twist(i).unwrap();
            for b in t.basis_sections() {
                if poly::is_zero(&b.h) {
                    assert!(phi_up(&config, i, &b).unwrap().is_zero());
                }
            }
            let t1 = config.twist(i + 1).unwrap();
            for b in t1.basis_sections() {
                if poly::is_zero(&b.f) {
                    assert!(phi_dn(&config, i, &b).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn full_space_complex_is_exact() {
        for (d, delta) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 1)] {
            let config = cfg(d, delta);
            for i in 0..config.top_level() {
                let up = phi_up_matrix(&config, i).unwrap();
                let dn = phi_dn_matrix(&config, i).unwrap();
                assert!(up.mul(&dn).is_zero());
                assert!(dn.mul(&up).is_zero());
                assert_eq!(up.kernel(), dn.image());
                assert_eq!(dn.kernel(), up.image());
            }
        }
    }

    #[test]
    fn desk_series_validate_and_profiles() {
        let g = desk_exact();
        assert!(g.validate().is_empty());
        let f = g.profile().unwrap();
        assert_eq!(f.eval(0), Triple::new(0, 0, 1));
        assert!(g.is_exact().unwrap());

        let h = desk_nonexact();
        assert!(h.validate().is_empty());
        let fh = h.profile().unwrap();
        assert_eq!(fh.window(), (1, 1)); // pure jump, no deficiency anywhere
        assert!(!h.is_exact().unwrap());
        assert_eq!(h.component_support().unwrap().len(), 0);
        assert_eq!(g.component_support().unwrap().into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn invalid_series_reports_the_escape() {
        let config = cfg(1, 2);
        let levels = vec![
            span(&config, 0, &[Section::new(&f2(), &[1], &[1])]),
            span(&config, 1, &[Section::new(&f2(), &[0, 1], &[])]),
            span(&config, 2, &[Section::new(&f2(), &[], &[0, 1])]),
        ];
        let g = LimitSeries::new(config, 0, levels).unwrap();
        let violations = g.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, SeriesViolation::UpwardEscape { edge: 0, .. })));
        assert!(g.profile().is_err());
    }

    #[test]
    fn forget_desk_series() {
        let g = desk_exact();
        let forgotten = g.forget(1).unwrap();
        assert_eq!(forgotten.config().level(), 1);
        assert_eq!(forgotten.level_space(0), g.level_space(0));
        assert_eq!(forgotten.level_space(1), g.level_space(2));
        assert!(forgotten.is_exact().unwrap());
        let f = forgotten.profile().unwrap();
        assert_eq!(f.eval(0), Triple::new(0, 0, 1));
        // identity at ratio 1
        assert_eq!(g.forget(2).unwrap(), g);
        // non-divisor rejected
        assert!(matches!(g.forget(3), Err(CurveError::LevelNotDivisible { .. })));
    }

    #[test]
    fn desk_series_works_over_the_rationals() {
        // same series, rational coefficients: profiles and exactness agree
        let q = FieldSpec::Rationals;
        let config = CurveConfig::new(q, 1, 2).unwrap();
        let span_q = |level: usize, s: &Section| {
            let twist = config.twist(level).unwrap();
            Subspace::from_rows(q, twist.dim(), vec![twist.coords_of(s).unwrap()])
        };
        let g = LimitSeries::new(
            config,
            0,
            vec![
                span_q(0, &Section::new(&q, &[1], &[1])),
                span_q(1, &Section::new(&q, &[], &[1])),
                span_q(2, &Section::new(&q, &[], &[0, 1])),
            ],
        )
        .unwrap();
        assert!(g.validate().is_empty());
        assert_eq!(g.profile().unwrap().eval(0), Triple::new(0, 0, 1));
        assert!(g.is_exact().unwrap());
        // scaled spanning sections give the identical canonical series
        let h = LimitSeries::new(
            config,
            0,
            vec![
                span_q(0, &Section::new(&q, &[-3], &[-3])),
                span_q(1, &Section::new(&q, &[], &[7])),
                span_q(2, &Section::new(&q, &[], &[0, 2])),
            ],
        )
        .unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn forget_composes() {
        // build a level-4 series by refining twice, then compare the two
        // routes down; here we just exercise index arithmetic on the desk
        // series lifted trivially
        let g = desk_exact();
        let once = g.forget(1).unwrap();
        assert_eq!(g.forget(2).unwrap().forget(1).unwrap(), once);
    }

    #[test]
    fn profile_restricts_along_forget() {
        let g = desk_exact();
        let forgotten = g.forget(1).unwrap();
        let (restricted, report) = g.profile().unwrap().restrict(2);
        assert!(report.admissible);
        assert_eq!(restricted, forgotten.profile().unwrap());
    }
}
