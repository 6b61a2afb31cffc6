//! The integer calculus of n-admissible numerical functions: triples
//! `(p_i, q_i, m_i)` indexed by the integers with stabilized tails, the
//! admissibility and exactness conditions, refinements along a level ratio
//! `c`, and the fiber-dimension formula of the forgetful map between
//! refinement strata.

use thiserror::Error;

/// Default cap on candidate slot assignments in [`NumericalFunction::enumerate_refinements`].
pub const DEFAULT_REFINEMENT_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumfnError {
    #[error("dimension must be at least 1, got {0}")]
    BadDimension(i64),
    #[error("function is not admissible: {0}")]
    NotAdmissible(AdmissibilityFailure),
    #[error("split position {ell} is outside 1..={max}")]
    SplitOutOfRange { ell: i64, max: i64 },
    #[error("refinement search space exceeds the bound of {bound} candidate slot assignments")]
    SearchSpaceExceeded { bound: u64 },
}

/// One value of a numerical function: kernel dimensions of the downward and
/// upward maps and the deficiency `m = n - p - q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub p: i64,
    pub q: i64,
    pub m: i64,
}

impl Triple {
    pub fn new(p: i64, q: i64, m: i64) -> Self {
        Triple { p, q, m }
    }
}

/// The admissibility conditions, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `p + q + m = n` at every index.
    SumEqualsDim,
    /// all of `p`, `q`, `m` nonnegative.
    Nonnegative,
    /// `p_i + m_i <= p_{i+1}`.
    ForwardMonotonicity,
    /// `q_{i+1} + m_{i+1} <= q_i`.
    BackwardMonotonicity,
    /// `sum of m_i <= n`.
    DeficiencyBudget,
    /// `rk(h^i) + rk(h_i) <= n`; only used in exactness certificates.
    RankBudget,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Condition::SumEqualsDim => "p+q+m=n",
            Condition::Nonnegative => "nonnegativity",
            Condition::ForwardMonotonicity => "p_i+m_i<=p_{i+1}",
            Condition::BackwardMonotonicity => "q_{i+1}+m_{i+1}<=q_i",
            Condition::DeficiencyBudget => "sum(m)<=n",
            Condition::RankBudget => "rank sum<=n",
        };
        f.write_str(name)
    }
}

/// First admissibility failure: which condition broke, and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibilityFailure {
    pub condition: Condition,
    pub index: i64,
}

impl std::fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails at index {}", self.condition, self.index)
    }
}

/// Outcome of an admissibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub failure: Option<AdmissibilityFailure>,
}

/// A function `Z -> Z^3` with left tail `(0, n, 0)` and right tail `(n, 0, 0)`.
/// Values are stored on the half-open window `[lo, hi)` and trimmed so that
/// no stored value equals the adjacent tail value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumericalFunction {
    n: i64,
    lo: i64,
    values: Vec<Triple>,
}

impl NumericalFunction {
    /// Build from explicit window values; trims to the canonical window.
    /// Admissibility is not required here — see [`Self::admissibility`].
    pub fn new(n: i64, lo: i64, values: Vec<Triple>) -> Result<Self, NumfnError> {
        if n < 1 {
            return Err(NumfnError::BadDimension(n));
        }
        let mut f = NumericalFunction { n, lo, values };
        f.trim();
        Ok(f)
    }

    /// The function that is `(0,n,0)` below the transition index and
    /// `(n,0,0)` from it on.
    pub fn pure_jump(n: i64, transition: i64) -> Result<Self, NumfnError> {
        NumericalFunction::new(n, transition, Vec::new())
    }

    fn left_tail(&self) -> Triple {
        Triple::new(0, self.n, 0)
    }

    fn right_tail(&self) -> Triple {
        Triple::new(self.n, 0, 0)
    }

    fn trim(&mut self) {
        let left = self.left_tail();
        let right = self.right_tail();
        while self.values.first() == Some(&left) {
            self.values.remove(0);
            self.lo += 1;
        }
        while self.values.last() == Some(&right) {
            self.values.pop();
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Canonical window `[lo, hi)`; empty when the function equals its tails.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.values.len() as i64)
    }

    pub fn values(&self) -> &[Triple] {
        &self.values
    }

    pub fn eval(&self, i: i64) -> Triple {
        let (lo, hi) = self.window();
        if i < lo {
            self.left_tail()
        } else if i >= hi {
            self.right_tail()
        } else {
            self.values[(i - lo) as usize]
        }
    }

    /// Total deficiency `sum of m_i`.
    pub fn total_deficiency(&self) -> i64 {
        self.values.iter().map(|t| t.m).sum()
    }

    /// Check conditions (sum, nonnegativity, both monotonicity families and
    /// the deficiency budget) over the whole line; tails make all but
    /// finitely many checks trivial.
    pub fn admissibility(&self) -> AdmissibilityReport {
        let (lo, hi) = self.window();
        for i in lo..hi {
            let t = self.eval(i);
            if t.p + t.q + t.m != self.n {
                return fail(Condition::SumEqualsDim, i);
            }
            if t.p < 0 || t.q < 0 || t.m < 0 {
                return fail(Condition::Nonnegative, i);
            }
        }
        for i in (lo - 1)..=hi {
            let t = self.eval(i);
            let u = self.eval(i + 1);
            if t.p + t.m > u.p {
                return fail(Condition::ForwardMonotonicity, i);
            }
            if u.q + u.m > t.q {
                return fail(Condition::BackwardMonotonicity, i);
            }
        }
        if self.total_deficiency() > self.n {
            return fail(Condition::DeficiencyBudget, lo);
        }
        AdmissibilityReport {
            admissible: true,
            failure: None,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility().admissible
    }

    fn require_admissible(&self) -> Result<(), NumfnError> {
        match self.admissibility().failure {
            None => Ok(()),
            Some(f) => Err(NumfnError::NotAdmissible(f)),
        }
    }

    /// True when every monotonicity inequality is an equality, equivalently
    /// when the total deficiency reaches `n`.
    pub fn is_exact(&self) -> Result<bool, NumfnError> {
        self.require_admissible()?;
        let (lo, hi) = self.window();
        let all_equal = ((lo - 1)..=hi).all(|i| {
            let t = self.eval(i);
            let u = self.eval(i + 1);
            t.p + t.m == u.p && u.q + u.m == t.q
        });
        debug_assert_eq!(all_equal, self.total_deficiency() == self.n);
        Ok(all_equal)
    }

    /// The exact refinement along `c` with split position `ell`: values at
    /// multiples of `c` reproduce `self`, and the interior of each gap is
    /// filled with the unique exact pattern that concentrates the new
    /// deficiency at slot `ell`.
    pub fn refine(&self, c: i64, ell: i64) -> Result<NumericalFunction, NumfnError> {
        self.require_admissible()?;
        assert!(c >= 2, "refinement needs a level ratio of at least 2");
        if !(1..=c - 1).contains(&ell) {
            return Err(NumfnError::SplitOutOfRange { ell, max: c - 1 });
        }
        let (lo, hi) = self.window();
        let mut values = Vec::new();
        let out_lo = c * (lo - 1);
        for i in (lo - 1)..=hi {
            let t = self.eval(i);
            let u = self.eval(i + 1);
            values.push(t);
            for j in 1..c {
                let slot = if j < ell {
                    Triple::new(t.p + t.m, t.q, 0)
                } else if j == ell {
                    Triple::new(t.p + t.m, u.q + u.m, u.p - t.p - t.m)
                } else {
                    Triple::new(u.p, u.q + u.m, 0)
                };
                values.push(slot);
            }
        }
        values.push(self.eval(hi + 1));
        let out = NumericalFunction::new(self.n, out_lo, values)?;
        debug_assert!(out.is_admissible());
        debug_assert!(out.is_exact().unwrap());
        Ok(out)
    }

    /// Subsample every `c`-th value: `restrict(f)(i) = f(ci)`. Returns the
    /// result together with its admissibility report rather than erroring,
    /// so callers can diagnose non-admissible restrictions.
    pub fn restrict(&self, c: i64) -> (NumericalFunction, AdmissibilityReport) {
        assert!(c >= 1, "level ratio must be positive");
        let (lo, hi) = self.window();
        let out_lo = lo.div_euclid(c) - 1;
        let out_hi = hi.div_euclid(c) + 2;
        let values: Vec<Triple> = (out_lo..out_hi).map(|i| self.eval(c * i)).collect();
        let out = NumericalFunction::new(self.n, out_lo, values).expect("n unchanged");
        let report = out.admissibility();
        (out, report)
    }

    /// All admissible functions restricting to `self` along `c`, sorted
    /// canonically and duplicate-free. Fails loudly when the product of
    /// per-gap candidate counts exceeds `bound`.
    pub fn enumerate_refinements(
        &self,
        c: i64,
        bound: u64,
    ) -> Result<Vec<NumericalFunction>, NumfnError> {
        self.require_admissible()?;
        assert!(c >= 1, "level ratio must be positive");
        if c == 1 {
            return Ok(vec![self.clone()]);
        }
        let (lo, hi) = self.window();
        let gaps: Vec<i64> = ((lo - 1)..=hi).collect();
        let mut per_gap: Vec<Vec<Vec<Triple>>> = Vec::with_capacity(gaps.len());
        for &i in &gaps {
            per_gap.push(self.gap_chains(i, c));
        }
        let mut count: u128 = 1;
        for chains in &per_gap {
            count = count.saturating_mul(chains.len() as u128);
            if count > bound as u128 {
                return Err(NumfnError::SearchSpaceExceeded { bound });
            }
        }
        let mut out = Vec::new();
        let mut choice = vec![0usize; gaps.len()];
        'outer: loop {
            let mut values = Vec::new();
            for (g, &i) in gaps.iter().enumerate() {
                values.push(self.eval(i));
                values.extend(per_gap[g][choice[g]].iter().copied());
            }
            values.push(self.eval(hi + 1));
            let candidate = NumericalFunction::new(self.n, c * (lo - 1), values)?;
            if candidate.is_admissible() {
                out.push(candidate);
            }
            for g in 0..gaps.len() {
                choice[g] += 1;
                if choice[g] < per_gap[g].len() {
                    continue 'outer;
                }
                choice[g] = 0;
            }
            break;
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Interior slot chains for the gap between `f(i)` and `f(i+1)` that
    /// satisfy both monotonicity families locally.
    fn gap_chains(&self, i: i64, c: i64) -> Vec<Vec<Triple>> {
        let t = self.eval(i);
        let u = self.eval(i + 1);
        let slots: Vec<Triple> = {
            let mut v = Vec::new();
            for p in 0..=self.n {
                for q in 0..=(self.n - p) {
                    v.push(Triple::new(p, q, self.n - p - q));
                }
            }
            v
        };
        let mut chains = Vec::new();
        let mut stack: Vec<Triple> = Vec::new();
        fn dfs(
            slots: &[Triple],
            prev: Triple,
            last: Triple,
            remaining: i64,
            stack: &mut Vec<Triple>,
            chains: &mut Vec<Vec<Triple>>,
        ) {
            if remaining == 0 {
                if stack.is_empty() {
                    chains.push(Vec::new());
                    return;
                }
                let tail = *stack.last().expect("nonempty");
                if tail.p + tail.m <= last.p && last.q + last.m <= tail.q {
                    chains.push(stack.clone());
                }
                return;
            }
            for &s in slots {
                if prev.p + prev.m <= s.p && s.q + s.m <= prev.q {
                    stack.push(s);
                    dfs(slots, s, last, remaining - 1, stack, chains);
                    stack.pop();
                }
            }
        }
        dfs(&slots, t, u, c - 1, &mut stack, &mut chains);
        chains
    }

    /// The fiber-dimension triple sum of the forgetful map from strata at
    /// level ratio `c`, evaluated literally with tail conventions. The sum
    /// is finite because every term vanishes on the tails.
    pub fn fiber_dimension(&self, c: i64) -> i64 {
        assert!(c >= 1, "level ratio must be positive");
        let (lo, hi) = self.window();
        let i_min = (lo - c - 1).div_euclid(c) - 1;
        let i_max = (hi + c + 1).div_euclid(c) + 1;
        let p = |k: i64| self.eval(k).p;
        let q = |k: i64| self.eval(k).q;
        let m = |k: i64| self.eval(k).m;
        let mut total = 0;
        for i in i_min..=i_max {
            for j in 1..c {
                let k = c * i + j;
                total += (q(k - 1) - q(k)) * (p(c * i + c) - p(k) - m(k));
                total += (p(k + 1) - p(k)) * (q(c * i) - q(k) - m(k));
                total += m(k) * (p(k + 1) - p(k - 1) - m(k - 1));
            }
        }
        total
    }

    /// The collapse of the fiber dimension for exact functions: the sum of
    /// squared interior deficiency blocks.
    pub fn interior_block_squares(&self, c: i64) -> i64 {
        assert!(c >= 1, "level ratio must be positive");
        let (lo, hi) = self.window();
        let i_min = (lo - c - 1).div_euclid(c) - 1;
        let i_max = (hi + c + 1).div_euclid(c) + 1;
        (i_min..=i_max)
            .map(|i| {
                let block: i64 = (1..c).map(|j| self.eval(c * i + j).m).sum();
                block * block
            })
            .sum()
    }
}

fn fail(condition: Condition, index: i64) -> AdmissibilityReport {
    AdmissibilityReport {
        admissible: false,
        failure: Some(AdmissibilityFailure { condition, index }),
    }
}
