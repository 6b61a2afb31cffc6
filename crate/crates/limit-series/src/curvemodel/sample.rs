//! Constructive sampling in the fibers of the forgetful map, and random
//! generators for valid and exact series.
//!
//! The fiber sampler follows the parameter-space description of the
//! forgetful map between refinement strata: per coarse gap it computes the
//! side spaces `V_+` and `V_-` (images of the matched-level subspaces in the
//! `Z`- and `Y`-parts) and `W_+`, `W_-` (preimages of the matched-level
//! kernels under the injective side comparison maps), samples nested flags
//! with the dimensions prescribed by the refined numerical function, and
//! fills each interior level with a subspace that contains the forced lower
//! bound and projects onto both flag members. The last step is built from a
//! graph of a random isomorphism, so it never needs rejection; the only
//! retries are inside the flag sampling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::numfn::NumericalFunction;
use crate::qlinalg::{
    random_invertible, random_subspace, random_subspace_between, random_vector_in, FieldSpec,
    Matrix, Scalar, Subspace,
};

use super::{
    phi_dn_matrix, phi_up_matrix, CurveConfig, CurveError, LimitSeries, Section, TwistLevel,
};

/// Default number of whole-sample retries in [`fiber_sample`].
pub const DEFAULT_RETRY_BUDGET: usize = 64;

fn vec_add(field: &FieldSpec, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

/// Coordinates of the `Z`-part at a level: positions `0..=z_degree`.
fn z_projection(twist: &TwistLevel) -> Matrix {
    let field = *twist.config().field();
    let rows = twist.z_degree() + 1;
    let mut m = Matrix::zeros(field, rows, twist.dim());
    for j in 0..twist.dim() {
        let coords: Vec<Scalar> = (0..twist.dim())
            .map(|k| if k == j { field.one() } else { field.zero() })
            .collect();
        let s = twist.section_of(&coords);
        for k in 0..rows {
            m.set(k, j, super::poly::coeff(&field, &s.h, k));
        }
    }
    m
}

/// Coordinates of the `Y`-part at a level: positions for `y^(y_order..=d)`.
fn y_projection(twist: &TwistLevel) -> Matrix {
    let field = *twist.config().field();
    let d = twist.config().degree();
    let rows = d - twist.y_order() + 1;
    let mut m = Matrix::zeros(field, rows, twist.dim());
    for j in 0..twist.dim() {
        let coords: Vec<Scalar> = (0..twist.dim())
            .map(|k| if k == j { field.one() } else { field.zero() })
            .collect();
        let s = twist.section_of(&coords);
        for t in 0..rows {
            m.set(t, j, super::poly::coeff(&field, &s.f, twist.y_order() + t));
        }
    }
    m
}

/// Embed `Z`-part coordinates into a level, with an optional `z`-shift.
fn z_embedding(twist: &TwistLevel, source_degree: usize, shift: usize) -> Matrix {
    let field = *twist.config().field();
    let cols = source_degree + 1;
    let mut m = Matrix::zeros(field, twist.dim(), cols);
    for k in 0..cols {
        let mut h = vec![field.zero(); k + shift + 1];
        h[k + shift] = field.one();
        let coords = twist
            .coords_of(&Section { f: Vec::new(), h })
            .expect("shifted monomial is a section");
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, k, c);
        }
    }
    m
}

/// Embed `Y`-part coordinates (exponents `y_order..=d` of a reference level)
/// into a target level.
fn y_embedding(target: &TwistLevel, y_order: usize) -> Matrix {
    let field = *target.config().field();
    let d = target.config().degree();
    let cols = d - y_order + 1;
    let mut m = Matrix::zeros(field, target.dim(), cols);
    for t in 0..cols {
        let mut f = vec![field.zero(); y_order + t + 1];
        f[y_order + t] = field.one();
        let coords = target
            .coords_of(&Section { f, h: Vec::new() })
            .expect("high-order monomial is a section");
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, t, c);
        }
    }
    m
}

/// Sample a level series at level `c * delta` with numerical function
/// `refined`, in the fiber of the forgetful map over `g`. Deterministic in
/// `(g, refined, c, seed)`.
pub fn fiber_sample(
    g: &LimitSeries,
    refined: &NumericalFunction,
    c: usize,
    seed: u64,
) -> Result<LimitSeries, CurveError> {
    fiber_sample_with_budget(g, refined, c, seed, DEFAULT_RETRY_BUDGET)
}

pub fn fiber_sample_with_budget(
    g: &LimitSeries,
    refined: &NumericalFunction,
    c: usize,
    seed: u64,
    budget: usize,
) -> Result<LimitSeries, CurveError> {
    if !g.config().field().is_prime_field() {
        return Err(CurveError::NeedsPrimeField);
    }
    if let Some(failure) = refined.admissibility().failure {
        return Err(CurveError::Numerical(crate::numfn::NumfnError::NotAdmissible(failure)));
    }
    let profile = g.profile()?;
    let (restricted, _) = refined.restrict(c as i64);
    if restricted != profile {
        return Err(CurveError::ProfileMismatch);
    }
    if c == 1 {
        return Ok(g.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while attempts < budget {
        attempts += 1;
        let candidate = sample_once(g, refined, c, &mut rng)?;
        if candidate.validate().is_empty()
            && candidate.profile()? == *refined
            && candidate.forget(g.config().level())? == *g
        {
            return Ok(candidate);
        }
    }
    Err(CurveError::SamplingExhausted { attempts })
}

fn sample_once(
    g: &LimitSeries,
    refined: &NumericalFunction,
    c: usize,
    rng: &mut ChaCha8Rng,
) -> Result<LimitSeries, CurveError> {
    let field = *g.config().field();
    let d = g.config().degree();
    let delta = g.config().level();
    let n = g.rank() + 1;
    let out_config = CurveConfig::new(field, d, delta * c)?;
    let top = out_config.top_level();
    let mut levels: Vec<Option<Subspace>> = vec![None; top + 1];
    for i in 0..=g.config().top_level() {
        levels[c * i] = Some(g.level_space(i).clone());
    }

    for i in 0..g.config().top_level() {
        let v_lo = g.level_space(i);
        let v_hi = g.level_space(i + 1);
        let twist_lo = out_config.twist(c * i)?;
        let twist_hi = out_config.twist(c * (i + 1))?;
        let twist_int = out_config.twist(c * i + 1)?;
        let z_deg = twist_lo.z_degree();
        let y_ord = twist_hi.y_order();
        // the interior levels share one basis layout
        debug_assert_eq!(twist_int.z_degree(), z_deg);
        debug_assert_eq!(twist_int.y_order(), y_ord);
        let shift = usize::from((i + 1) % delta == 0);

        let v_plus = z_projection(&twist_lo).image_of_subspace(v_lo);
        let v_minus = y_projection(&twist_hi).image_of_subspace(v_hi);
        let w_plus = z_embedding(&twist_hi, z_deg, shift).preimage_of_subspace(v_hi);
        let w_minus = y_embedding(&twist_lo, y_ord).preimage_of_subspace(v_lo);

        let value = |j: usize| refined.eval((c * i + j) as i64);
        // nested flags with the prescribed dimensions
        let mut a_flags: Vec<Subspace> = vec![v_plus.clone()];
        for j in 1..c {
            let dim = (n as i64 - value(j).q) as usize;
            let prev = a_flags.last().expect("seeded with the lower bound");
            a_flags.push(random_subspace_between(rng, prev, &w_plus, dim)?);
        }
        let mut b_flags: Vec<Subspace> = vec![v_minus.clone()];
        for j in (1..c).rev() {
            let dim = (n as i64 - value(j).p) as usize;
            let prev = b_flags.last().expect("seeded with the lower bound");
            b_flags.push(random_subspace_between(rng, prev, &w_minus, dim)?);
        }
        b_flags.reverse(); // now b_flags[j - 1] = B_j for j = 1..c, last = V_-

        let embed_y = y_embedding(&twist_int, y_ord);
        let embed_z = z_embedding(&twist_int, z_deg, 0);
        for j in 1..c {
            let b_here = &b_flags[j - 1];
            let b_next = if j == c - 1 { &v_minus } else { &b_flags[j] };
            let a_here = &a_flags[j];
            let a_prev = &a_flags[j - 1];
            let c_b = b_next.complement_in(b_here)?;
            let c_a = a_prev.complement_in(a_here)?;
            let m_j = value(j).m as usize;
            let b_zero = random_subspace_between(
                rng,
                &Subspace::zero(field, c_b.ambient_dim()),
                &c_b,
                c_b.dim() - m_j,
            )?;
            let a_zero = random_subspace_between(
                rng,
                &Subspace::zero(field, c_a.ambient_dim()),
                &c_a,
                c_a.dim() - m_j,
            )?;
            let d_b = b_zero.complement_in(&c_b)?;
            let d_a = a_zero.complement_in(&c_a)?;
            debug_assert_eq!(d_b.dim(), m_j);
            debug_assert_eq!(d_a.dim(), m_j);
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for s in [b_next, &b_zero] {
                for t in 0..s.dim() {
                    rows.push(embed_y.apply(s.basis_row(t)));
                }
            }
            for s in [a_prev, &a_zero] {
                for t in 0..s.dim() {
                    rows.push(embed_z.apply(s.basis_row(t)));
                }
            }
            if m_j > 0 {
                let mix = random_invertible(rng, field, m_j);
                for t in 0..m_j {
                    let mut z_side = vec![field.zero(); d_a.ambient_dim()];
                    for s in 0..m_j {
                        let coeff = mix.get(s, t);
                        if coeff.is_zero() {
                            continue;
                        }
                        let scaled: Vec<Scalar> = d_a
                            .basis_row(s)
                            .iter()
                            .map(|x| field.mul(coeff, x))
                            .collect();
                        z_side = vec_add(&field, &z_side, &scaled);
                    }
                    let row = vec_add(
                        &field,
                        &embed_y.apply(d_b.basis_row(t)),
                        &embed_z.apply(&z_side),
                    );
                    rows.push(row);
                }
            }
            let interior = Subspace::from_rows(field, d + 1, rows);
            debug_assert_eq!(interior.dim(), n);
            levels[c * i + j] = Some(interior);
        }
    }

    let levels: Vec<Subspace> = levels
        .into_iter()
        .map(|v| v.expect("every level filled"))
        .collect();
    LimitSeries::new(out_config, g.rank(), levels)
}

/// Deterministic pseudo-random exact series: a random bottom subspace
/// continued upward so that every edge of the restricted sequence is exact.
pub fn random_exact_series(
    config: &CurveConfig,
    r: usize,
    seed: u64,
) -> Result<LimitSeries, CurveError> {
    if !config.field().is_prime_field() {
        return Err(CurveError::NeedsPrimeField);
    }
    if r + 1 > config.degree() + 1 {
        return Err(CurveError::RankTooLarge {
            r,
            d: config.degree(),
        });
    }
    let field = *config.field();
    let n = r + 1;
    let ambient = config.degree() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut levels = vec![random_subspace(field, ambient, n, rng.gen())?];
    for i in 0..config.top_level() {
        let up = phi_up_matrix(config, i)?;
        let dn = phi_dn_matrix(config, i)?;
        let current = levels.last().expect("seeded");
        let image = up.image_of_subspace(current);
        let (_, dying) = current.sum_intersect(&up.kernel())?;
        let dn_kernel = dn.kernel();
        let mut rows: Vec<Vec<Scalar>> = (0..image.dim()).map(|t| image.basis_row(t).to_vec()).collect();
        for t in 0..dying.dim() {
            // lift through the downward map; solvable because the full-space
            // complex is exact
            let lift = dn
                .solve(dying.basis_row(t))
                .expect("upward kernel lies in the downward image");
            let noise = random_vector_in(&mut rng, &dn_kernel);
            rows.push(vec_add(&field, &lift, &noise));
        }
        let next = Subspace::from_rows(field, ambient, rows);
        assert_eq!(next.dim(), n, "exact continuation preserves dimension");
        levels.push(next);
    }
    let series = LimitSeries::new(*config, r, levels)?;
    debug_assert!(series.validate().is_empty());
    debug_assert!(series.is_exact()?);
    Ok(series)
}

/// Deterministic pseudo-random valid series, not necessarily exact: each
/// level is a random subspace squeezed between the upward image and the
/// downward preimage of the level below.
pub fn random_series(config: &CurveConfig, r: usize, seed: u64) -> Result<LimitSeries, CurveError> {
    if !config.field().is_prime_field() {
        return Err(CurveError::NeedsPrimeField);
    }
    if r + 1 > config.degree() + 1 {
        return Err(CurveError::RankTooLarge {
            r,
            d: config.degree(),
        });
    }
    let field = *config.field();
    let n = r + 1;
    let ambient = config.degree() + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = 32;
    'attempt: for _ in 0..attempts {
        let mut levels = vec![random_subspace(field, ambient, n, rng.gen())?];
        for i in 0..config.top_level() {
            let up = phi_up_matrix(config, i)?;
            let dn = phi_dn_matrix(config, i)?;
            let current = levels.last().expect("seeded");
            let lower = up.image_of_subspace(current);
            let upper = dn.preimage_of_subspace(current);
            if upper.dim() < n {
                continue 'attempt;
            }
            levels.push(random_subspace_between(&mut rng, &lower, &upper, n)?);
        }
        let series = LimitSeries::new(*config, r, levels)?;
        debug_assert!(series.validate().is_empty());
        return Ok(series);
    }
    Err(CurveError::SamplingExhausted { attempts })
}
