//! Divisors on the two-component curve, the divisor of zeros of a section,
//! the degree-d Abel map, and enumeration of the divisor locus of a series
//! over a prime field.
//!
//! A divisor is stored in canonical form: a monic polynomial with nonzero
//! constant term on each component (its roots away from the marked points,
//! never factorized), plus multiplicities at the two points at infinity and
//! at the node. Equality of canonical forms is equality of divisors.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::curvemodel::poly::{self, Poly};
use crate::curvemodel::{CurveError, LimitSeries, Section};
use crate::qlinalg::{projective_representatives, FieldSpec, QlinalgError};

/// Default cap on the number of sections enumerated by [`enumerate_locus`].
pub const DEFAULT_SECTION_BOUND: u64 = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AbelError {
    #[error("divisor is undefined for torsion directions (a section component vanishes)")]
    TorsionDirection,
    #[error("section does not belong to the requested level subspace")]
    NotInLevel,
    #[error("divisor has degree {got}, expected {expected}")]
    DegreeMismatch { got: usize, expected: usize },
    #[error("enumeration needs {needed} sections, above the bound of {bound}")]
    BoundExceeded { needed: u64, bound: u64 },
    #[error("enumeration is defined over prime fields only")]
    NeedsPrimeField,
    #[error("the coarse series is not the forgetful image of the refined one")]
    NotAForgetfulPair,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Linalg(#[from] QlinalgError),
}

/// An effective divisor on `X = Y u Z` in canonical form. `u_y` and `u_z`
/// are monic with nonzero constant term; `k_qy`, `k_qz`, `k_p` are the
/// multiplicities at `Q_Y`, `Q_Z` and the node `P`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Divisor {
    field: FieldSpec,
    u_y: Poly,
    k_qy: usize,
    u_z: Poly,
    k_qz: usize,
    k_p: usize,
}

impl Divisor {
    pub fn new(
        field: FieldSpec,
        u_y: Poly,
        k_qy: usize,
        u_z: Poly,
        k_qz: usize,
        k_p: usize,
    ) -> Divisor {
        assert!(
            u_y.last().is_some_and(|c| c.is_one()) && !u_y[0].is_zero(),
            "u_y must be monic with nonzero constant term"
        );
        assert!(
            u_z.last().is_some_and(|c| c.is_one()) && !u_z[0].is_zero(),
            "u_z must be monic with nonzero constant term"
        );
        Divisor {
            field,
            u_y,
            k_qy,
            u_z,
            k_qz,
            k_p,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn u_y(&self) -> &Poly {
        &self.u_y
    }

    pub fn u_z(&self) -> &Poly {
        &self.u_z
    }

    pub fn k_qy(&self) -> usize {
        self.k_qy
    }

    pub fn k_qz(&self) -> usize {
        self.k_qz
    }

    pub fn k_p(&self) -> usize {
        self.k_p
    }

    pub fn degree(&self) -> usize {
        poly::degree(&self.u_y).expect("monic") + self.k_qy
            + poly::degree(&self.u_z).expect("monic") + self.k_qz
            + self.k_p
    }

    /// The point `Q_Y` with multiplicity `k`, and nothing else.
    pub fn at_q_y(field: FieldSpec, k: usize) -> Divisor {
        Divisor::new(field, vec![field.one()], k, vec![field.one()], 0, 0)
    }

    /// The point `Q_Z` with multiplicity `k`.
    pub fn at_q_z(field: FieldSpec, k: usize) -> Divisor {
        Divisor::new(field, vec![field.one()], 0, vec![field.one()], k, 0)
    }

    /// The node `P` with multiplicity `k`.
    pub fn at_node(field: FieldSpec, k: usize) -> Divisor {
        Divisor::new(field, vec![field.one()], 0, vec![field.one()], 0, k)
    }
}

/// The class of a degree-d divisor in the bidegree-normalized component of
/// the Picard group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbelClass {
    pub deg_y: i64,
    pub deg_z: i64,
}

/// The divisor of zeros of a section surviving both kernels at its level.
///
/// Pushing to the nearest invertible level below keeps the `Y`-polynomial;
/// pushing up keeps the `Z`-polynomial (shifted once when the level is not
/// invertible). The valuations of both components fold into the node
/// multiplicity, and a correction at `P` applies between invertible levels.
pub fn divisor_of_section(
    g: &LimitSeries,
    i: usize,
    s: &Section,
) -> Result<Divisor, AbelError> {
    let config = g.config();
    let field = *config.field();
    let twist = config.twist(i)?;
    let coords = twist.coords_of(s)?;
    if !g.level_space(i).contains_vector(&coords) {
        return Err(AbelError::NotInLevel);
    }
    if poly::is_zero(&s.f) || poly::is_zero(&s.h) {
        return Err(AbelError::TorsionDirection);
    }
    let d = config.degree();
    let floor = twist.z_degree();
    let f_val = poly::valuation(&s.f).expect("nonzero");
    let h_val = poly::valuation(&s.h).expect("nonzero");
    let u_y = poly::monic(&field, &poly::shift_down(&s.f, f_val));
    let u_z = poly::monic(&field, &poly::shift_down(&s.h, h_val));
    let k_qy = d - poly::degree(&s.f).expect("nonzero");
    let k_qz = floor - poly::degree(&s.h).expect("nonzero");
    let k_p = f_val + h_val - floor;
    let divisor = Divisor::new(field, u_y, k_qy, u_z, k_qz, k_p);
    debug_assert_eq!(divisor.degree(), d);
    Ok(divisor)
}

/// The degree-d Abel map: the bidegree of the invertible sheaf attached to a
/// divisor, normalized so the node sits on the `Y` side. The twist that
/// moves the `Z`-side degree to zero makes the class independent of how the
/// node multiplicity is split.
pub fn abel(d: usize, divisor: &Divisor) -> Result<AbelClass, AbelError> {
    if divisor.degree() != d {
        return Err(AbelError::DegreeMismatch {
            got: divisor.degree(),
            expected: d,
        });
    }
    Ok(abel_with_split(divisor, divisor.k_p))
}

/// The Abel class computed with `k_to_y` of the node multiplicity assigned
/// to the `Y` side; exposed for the split-independence checks.
pub fn abel_with_split(divisor: &Divisor, k_to_y: usize) -> AbelClass {
    assert!(k_to_y <= divisor.k_p, "cannot assign more than k_p to Y");
    let d1 = poly::degree(&divisor.u_y).expect("monic") + divisor.k_qy + k_to_y;
    let d2 = poly::degree(&divisor.u_z).expect("monic")
        + divisor.k_qz
        + (divisor.k_p - k_to_y);
    AbelClass {
        deg_y: (d1 + d2) as i64,
        deg_z: 0,
    }
}

/// The divisor locus of a series: canonical divisors of all sections that
/// survive both kernels, level by level, plus the component support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLocus {
    pub points: BTreeSet<Divisor>,
    /// Levels with positive deficiency; these index the components.
    pub support: BTreeSet<i64>,
    pub exact: bool,
}

/// Divisors of the surviving sections at one level.
pub fn level_points(g: &LimitSeries, i: usize) -> Result<BTreeSet<Divisor>, AbelError> {
    let v = g.level_space(i);
    let twist = g.config().twist(i)?;
    let mut out = BTreeSet::new();
    for rep in projective_representatives(*g.config().field(), v.dim())? {
        let coords = v.vector_from_coordinates(&rep);
        let section = twist.section_of(&coords);
        if poly::is_zero(&section.f) || poly::is_zero(&section.h) {
            continue;
        }
        out.insert(divisor_of_section(g, i, &section)?);
    }
    Ok(out)
}

/// Enumerate the full divisor locus over a prime field, guarded by a cap on
/// the number of sections visited.
pub fn enumerate_locus(g: &LimitSeries, bound: u64) -> Result<DivisorLocus, AbelError> {
    let Some(p) = g.config().field().order() else {
        return Err(AbelError::NeedsPrimeField);
    };
    if let Some(v) = g.validate().into_iter().next() {
        return Err(AbelError::Curve(CurveError::InvalidSeries(v)));
    }
    let levels = g.config().top_level() as u64 + 1;
    let per_level = p.saturating_pow(g.rank() as u32 + 1);
    let needed = (g.rank() as u64 + 1)
        .saturating_mul(levels)
        .saturating_mul(per_level);
    if needed > bound {
        return Err(AbelError::BoundExceeded { needed, bound });
    }
    let mut points = BTreeSet::new();
    for i in 0..=g.config().top_level() {
        points.extend(level_points(g, i)?);
    }
    Ok(DivisorLocus {
        points,
        support: g.component_support()?,
        exact: g.is_exact()?,
    })
}

/// Comparison of the divisor loci of a series and one of its refinements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusComparison {
    /// Points of the coarse locus inside the refined locus.
    pub inclusion_holds: bool,
    /// Refined support indices not matched by coarse support indices.
    pub extra_components: BTreeSet<i64>,
    pub coarse_exact: bool,
    pub refined_exact: bool,
    /// Point sets agree at every matched level.
    pub matched_levels_equal: bool,
    /// The exactness dichotomy at generator level: an exact coarse series
    /// acquires no extra components and keeps its matched-level points,
    /// and an exact refinement of a non-exact one strictly gains components.
    pub dichotomy_holds: bool,
    pub coarse: DivisorLocus,
    pub refined: DivisorLocus,
}

/// Compare the divisor loci along a forgetful pair: `coarse` must be the
/// forgetful image of `refined`.
pub fn compare_locus(
    coarse: &LimitSeries,
    refined: &LimitSeries,
    bound: u64,
) -> Result<LocusComparison, AbelError> {
    if refined.config().field() != coarse.config().field()
        || refined.config().degree() != coarse.config().degree()
    {
        return Err(AbelError::Curve(CurveError::ConfigMismatch));
    }
    let delta = coarse.config().level();
    if refined.config().level() % delta != 0 {
        return Err(AbelError::Curve(CurveError::LevelNotDivisible {
            target: delta,
            delta: refined.config().level(),
        }));
    }
    if refined.forget(delta)? != *coarse {
        return Err(AbelError::NotAForgetfulPair);
    }
    let c = (refined.config().level() / delta) as i64;
    let coarse_locus = enumerate_locus(coarse, bound)?;
    let refined_locus = enumerate_locus(refined, bound)?;
    let inclusion_holds = coarse_locus.points.is_subset(&refined_locus.points);
    let matched: BTreeSet<i64> = coarse_locus.support.iter().map(|&i| c * i).collect();
    let extra_components: BTreeSet<i64> = refined_locus
        .support
        .difference(&matched)
        .copied()
        .collect();
    let mut matched_levels_equal = true;
    for i in 0..=coarse.config().top_level() {
        let lhs = level_points(coarse, i)?;
        let rhs = level_points(refined, c as usize * i)?;
        if lhs != rhs {
            matched_levels_equal = false;
            break;
        }
    }
    let dichotomy_holds = if coarse_locus.exact {
        refined_locus.exact && extra_components.is_empty() && matched_levels_equal
    } else if refined_locus.exact {
        !extra_components.is_empty()
    } else {
        true
    };
    Ok(LocusComparison {
        inclusion_holds,
        extra_components,
        coarse_exact: coarse_locus.exact,
        refined_exact: refined_locus.exact,
        matched_levels_equal,
        dichotomy_holds,
        coarse: coarse_locus,
        refined: refined_locus,
    })
}
