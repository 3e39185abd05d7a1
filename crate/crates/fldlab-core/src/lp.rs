//! Exact linear programming over arbitrary-precision rationals, with a
//! parallel binary64 mode behind the same model type.
//!
//! The solver is a two-phase revised primal simplex. Equality rows are split
//! into two inequalities (no big-M constants), and pricing runs Dantzig's
//! rule until a streak of degenerate pivots, then falls back to Bland's rule
//! so cycling is impossible.

use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

/// Exact rational scalar used by the default solver instantiation.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("row {row} references column {col}, but the model has {ncols} columns")]
    BadColumnIndex { row: usize, col: usize, ncols: usize },
    #[error("objective length {got} does not match column count {ncols}")]
    BadObjectiveLength { got: usize, ncols: usize },
    #[error("upper-bound list length {got} does not match column count {ncols}")]
    BadUpperLength { got: usize, ncols: usize },
}

/// Row sense of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LpRow<T> {
    /// Sparse coefficients as (column, value) pairs.
    pub coeffs: Vec<(usize, T)>,
    pub sense: Sense,
    pub rhs: T,
}

/// Minimization model: `min objective · x` subject to the rows, with an
/// implicit lower bound of 0 on every variable and optional upper bounds.
#[derive(Debug, Clone)]
pub struct LpModel<T> {
    pub ncols: usize,
    pub objective: Vec<T>,
    pub rows: Vec<LpRow<T>>,
    pub upper: Vec<Option<T>>,
}

impl<T: LpScalar> LpModel<T> {
    pub fn new(ncols: usize) -> Self {
        LpModel {
            ncols,
            objective: vec![T::zero(); ncols],
            rows: Vec::new(),
            upper: vec![None; ncols],
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, T)>, sense: Sense, rhs: T) {
        self.rows.push(LpRow { coeffs, sense, rhs });
    }

    fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.ncols {
            return Err(LpError::BadObjectiveLength { got: self.objective.len(), ncols: self.ncols });
        }
        if self.upper.len() != self.ncols {
            return Err(LpError::BadUpperLength { got: self.upper.len(), ncols: self.ncols });
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (c, _) in &row.coeffs {
                if *c >= self.ncols {
                    return Err(LpError::BadColumnIndex { row: i, col: *c, ncols: self.ncols });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver output. At `Optimal`, `assignment` is exactly feasible and
/// `duals` (one multiplier per original row; `Ge` rows nonnegative, `Le`
/// rows nonpositive, `Eq` rows free) certify optimality: the solver checks
/// `A^T y <= c` column-wise and `b . y = value` before returning.
#[derive(Debug, Clone)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub value: Option<T>,
    pub assignment: Vec<T>,
    pub duals: Vec<T>,
}

/// Knobs for `solve_with`. `batch` enables partial pricing over column
/// blocks of the given size; semantics are unchanged.
#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub batch: Option<usize>,
    /// Skip the post-solve optimality audit (it is exact and cheap for the
    /// model sizes this crate builds, so it defaults to on).
    pub skip_audit: bool,
}

/// Scalar the simplex can run on. `sign` is the only place a float
/// tolerance enters; rationals compare exactly.
pub trait LpScalar: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// -1, 0, +1 against zero (tolerance-aware for floats).
    fn sign(&self) -> i8;

    fn is_zero_val(&self) -> bool {
        self.sign() == 0
    }
    fn cmp_ref(&self, other: &Self) -> Ordering {
        match self.sub_ref(other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl LpScalar for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Absolute tolerance for the float mode; the LPs this crate builds in
/// float mode are scaled so coefficients sit in [0, 1].
pub const F64_EPS: f64 = 1e-10;

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn sign(&self) -> i8 {
        if *self > F64_EPS {
            1
        } else if *self < -F64_EPS {
            -1
        } else {
            0
        }
    }
}

pub fn solve<T: LpScalar>(model: &LpModel<T>) -> Result<LpSolution<T>, LpError> {
    solve_with(model, &SolveOptions::default())
}

pub fn solve_with<T: LpScalar>(model: &LpModel<T>, opts: &SolveOptions) -> Result<LpSolution<T>, LpError> {
    model.validate()?;
    let mut sx = Simplex::build(model);
    let status = sx.run(opts);
    let solution = sx.extract(model, status);
    if status == LpStatus::Optimal && !opts.skip_audit {
        audit(model, &solution);
    }
    Ok(solution)
}

/// Exact post-solve certificate: primal feasibility row by row, dual sign
/// conditions, dual feasibility `A^T y <= c`, and strong duality
/// `b . y = value`. Violations are implementation bugs, hence panics.
fn audit<T: LpScalar>(model: &LpModel<T>, sol: &LpSolution<T>) {
    let x = &sol.assignment;
    for (i, row) in model.rows.iter().enumerate() {
        let mut lhs = T::zero();
        for (c, a) in &row.coeffs {
            lhs = lhs.add_ref(&a.mul_ref(&x[*c]));
        }
        let d = lhs.sub_ref(&row.rhs).sign();
        let ok = match row.sense {
            Sense::Le => d <= 0,
            Sense::Ge => d >= 0,
            Sense::Eq => d == 0,
        };
        assert!(ok, "lp audit: primal row {i} violated");
        let ys = sol.duals[i].sign();
        let sign_ok = match row.sense {
            Sense::Le => ys <= 0,
            Sense::Ge => ys >= 0,
            Sense::Eq => true,
        };
        assert!(sign_ok, "lp audit: dual sign on row {i}");
    }
    let mut aty = vec![T::zero(); model.ncols];
    for (i, row) in model.rows.iter().enumerate() {
        if sol.duals[i].sign() == 0 {
            continue;
        }
        for (c, a) in &row.coeffs {
            aty[*c] = aty[*c].add_ref(&a.mul_ref(&sol.duals[i]));
        }
    }
    for (j, aty_j) in aty.iter().enumerate() {
        if model.upper[j].is_some() {
            // Upper-bounded columns carry an extra internal row whose dual
            // is folded away; skip the reduced-cost check for them.
            continue;
        }
        assert!(
            aty_j.sub_ref(&model.objective[j]).sign() <= 0,
            "lp audit: dual infeasible at column {j}"
        );
    }
    let mut by = T::zero();
    for (i, row) in model.rows.iter().enumerate() {
        by = by.add_ref(&row.rhs.mul_ref(&sol.duals[i]));
    }
    let gap = by.sub_ref(sol.value.as_ref().expect("optimal value"));
    assert!(gap.sign() == 0, "lp audit: duality gap {gap:?}");
}

/// One normalized internal row: sense is Le or Ge, rhs >= 0.
struct NormRow<T> {
    coeffs: Vec<(usize, T)>,
    ge: bool,
    rhs: T,
    /// (original row index, +1/-1 multiplier applied), or None for an
    /// internal upper-bound row.
    origin: Option<(usize, i8)>,
}

struct Simplex<T> {
    m: usize,
    /// Structural + slack/surplus + artificial columns, column-major sparse.
    cols: Vec<Vec<(usize, T)>>,
    nstruct: usize,
    nartif: usize,
    first_artif: usize,
    cost_phase2: Vec<T>,
    rows: Vec<NormRow<T>>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<Vec<T>>,
    xb: Vec<T>,
}

impl<T: LpScalar> Simplex<T> {
    fn build(model: &LpModel<T>) -> Self {
        let mut rows: Vec<NormRow<T>> = Vec::new();
        let mut push = |coeffs: Vec<(usize, T)>, sense: Sense, rhs: T, origin: Option<(usize, i8)>| {
            // Split equalities, then normalize to rhs >= 0. A `Ge` row with
            // rhs 0 flips to `Le` so the slack basis stays feasible.
            let mut add = |coeffs: Vec<(usize, T)>, ge: bool, rhs: T, origin: Option<(usize, i8)>| {
                let (coeffs, ge, rhs, origin) = if rhs.sign() < 0 || (ge && rhs.sign() == 0) {
                    (
                        coeffs.into_iter().map(|(c, a)| (c, a.neg_ref())).collect(),
                        !ge,
                        rhs.neg_ref(),
                        origin.map(|(i, s)| (i, -s)),
                    )
                } else {
                    (coeffs, ge, rhs, origin)
                };
                rows.push(NormRow { coeffs, ge, rhs, origin });
            };
            match sense {
                Sense::Le => add(coeffs, false, rhs, origin),
                Sense::Ge => add(coeffs, true, rhs, origin),
                Sense::Eq => {
                    add(coeffs.clone(), false, rhs.clone(), origin);
                    add(coeffs, true, rhs, origin);
                }
            }
        };
        for (i, row) in model.rows.iter().enumerate() {
            push(row.coeffs.clone(), row.sense, row.rhs.clone(), Some((i, 1)));
        }
        for (j, ub) in model.upper.iter().enumerate() {
            if let Some(u) = ub {
                push(vec![(j, T::one())], Sense::Le, u.clone(), None);
            }
        }

        let m = rows.len();
        let nstruct = model.ncols;
        let nartif = rows.iter().filter(|r| r.ge).count();
        let ncols_total = nstruct + m + nartif;
        let mut cols: Vec<Vec<(usize, T)>> = vec![Vec::new(); ncols_total];
        for (i, row) in rows.iter().enumerate() {
            for (c, a) in &row.coeffs {
                if a.sign() != 0 {
                    cols[*c].push((i, a.clone()));
                }
            }
        }
        let first_artif = nstruct + m;
        let mut basis = Vec::with_capacity(m);
        let mut artif = 0;
        for (i, row) in rows.iter().enumerate() {
            // slack (+1) or surplus (-1) column for row i
            let sc = nstruct + i;
            let unit = if row.ge { T::one().neg_ref() } else { T::one() };
            cols[sc].push((i, unit));
            if row.ge {
                let ac = first_artif + artif;
                cols[ac].push((i, T::one()));
                basis.push(ac);
                artif += 1;
            } else {
                basis.push(sc);
            }
        }
        let mut cost_phase2 = vec![T::zero(); ncols_total];
        cost_phase2[..nstruct].clone_from_slice(&model.objective);
        let mut in_basis = vec![false; ncols_total];
        for &b in &basis {
            in_basis[b] = true;
        }
        let binv = (0..m)
            .map(|i| {
                let mut row = vec![T::zero(); m];
                row[i] = T::one();
                row
            })
            .collect();
        let xb: Vec<T> = rows.iter().map(|r| r.rhs.clone()).collect();
        Simplex {
            m,
            cols,
            nstruct,
            nartif,
            first_artif,
            cost_phase2,
            rows,
            basis,
            in_basis,
            binv,
            xb,
        }
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.first_artif
    }

    /// y = c_B^T B^{-1}
    fn dual_prices(&self, cost: &[T]) -> Vec<T> {
        let mut y = vec![T::zero(); self.m];
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.sign() != 0 {
                for (k, yk) in y.iter_mut().enumerate() {
                    let add = cb.mul_ref(&self.binv[i][k]);
                    if add.sign() != 0 {
                        *yk = yk.add_ref(&add);
                    }
                }
            }
        }
        y
    }

    fn reduced_cost(&self, cost: &[T], y: &[T], j: usize) -> T {
        let mut d = cost[j].clone();
        for (i, a) in &self.cols[j] {
            d = d.sub_ref(&y[*i].mul_ref(a));
        }
        d
    }

    /// direction u = B^{-1} A_j
    fn direction(&self, j: usize) -> Vec<T> {
        let mut u = vec![T::zero(); self.m];
        for (i, a) in &self.cols[j] {
            for k in 0..self.m {
                let add = self.binv[k][*i].mul_ref(a);
                if add.sign() != 0 {
                    u[k] = u[k].add_ref(&add);
                }
            }
        }
        u
    }

    /// Returns false on unboundedness. Artificial columns are never
    /// eligible to enter; once one leaves the basis it stays out.
    fn phase(&mut self, cost: &[T], opts: &SolveOptions) -> bool {
        let ncols = self.cols.len();
        let mut degenerate_streak = 0usize;
        let mut cursor = 0usize;
        loop {
            let y = self.dual_prices(cost);
            let bland = degenerate_streak >= 64;
            let mut entering: Option<(usize, T)> = None;
            let eligible = |j: usize, sx: &Self| -> bool { !sx.in_basis[j] && !sx.is_artificial(j) };
            if bland {
                for j in 0..ncols {
                    if eligible(j, self) {
                        let d = self.reduced_cost(cost, &y, j);
                        if d.sign() < 0 {
                            entering = Some((j, d));
                            break;
                        }
                    }
                }
            } else if let Some(batch) = opts.batch {
                // Partial pricing: rotate through blocks; take the best
                // column of the first block that contains an improving one.
                let batch = batch.max(1);
                let mut scanned = 0;
                while scanned < ncols {
                    let start = cursor % ncols;
                    let mut best: Option<(usize, T)> = None;
                    for off in 0..batch.min(ncols) {
                        let j = (start + off) % ncols;
                        if eligible(j, self) {
                            let d = self.reduced_cost(cost, &y, j);
                            if d.sign() < 0
                                && best.as_ref().map_or(true, |(_, bd)| d.cmp_ref(bd) == Ordering::Less)
                            {
                                best = Some((j, d));
                            }
                        }
                    }
                    cursor = (start + batch) % ncols.max(1);
                    scanned += batch;
                    if best.is_some() {
                        entering = best;
                        break;
                    }
                }
            } else {
                for j in 0..ncols {
                    if eligible(j, self) {
                        let d = self.reduced_cost(cost, &y, j);
                        if d.sign() < 0
                            && entering
                                .as_ref()
                                .map_or(true, |(_, bd)| d.cmp_ref(bd) == Ordering::Less)
                        {
                            entering = Some((j, d));
                        }
                    }
                }
            }
            let Some((j_in, _)) = entering else {
                return true; // optimal for this phase
            };
            let u = self.direction(j_in);
            // Ratio test with Bland tie-breaking. Basic artificials must
            // stay at zero: any nonzero pivot entry on such a row leaves at
            // ratio zero, which also drives them out of the basis.
            let mut leave: Option<(usize, T)> = None; // (row, ratio)
            for i in 0..self.m {
                let basic_is_artif = self.is_artificial(self.basis[i]);
                let us = u[i].sign();
                let candidate = if us > 0 {
                    Some(self.xb[i].div_ref(&u[i]))
                } else if us != 0 && basic_is_artif && self.xb[i].sign() == 0 {
                    Some(T::zero())
                } else {
                    None
                };
                if let Some(ratio) = candidate {
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => match ratio.cmp_ref(lr) {
                            Ordering::Less => true,
                            Ordering::Greater => false,
                            Ordering::Equal => self.basis[i] < self.basis[*li],
                        },
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, t)) = leave else {
                return false; // unbounded direction
            };
            degenerate_streak = if t.sign() == 0 { degenerate_streak + 1 } else { 0 };
            // Pivot: basis, x_B, B^{-1}.
            let j_out = self.basis[r];
            self.in_basis[j_out] = false;
            self.in_basis[j_in] = true;
            self.basis[r] = j_in;
            for i in 0..self.m {
                if i != r {
                    let delta = t.mul_ref(&u[i]);
                    if delta.sign() != 0 {
                        self.xb[i] = self.xb[i].sub_ref(&delta);
                    }
                }
            }
            self.xb[r] = t;
            let pivot = u[r].clone();
            for k in 0..self.m {
                self.binv[r][k] = self.binv[r][k].div_ref(&pivot);
            }
            for i in 0..self.m {
                if i != r && u[i].sign() != 0 {
                    for k in 0..self.m {
                        let sub = u[i].mul_ref(&self.binv[r][k]);
                        if sub.sign() != 0 {
                            self.binv[i][k] = self.binv[i][k].sub_ref(&sub);
                        }
                    }
                }
            }
        }
    }

    fn run(&mut self, opts: &SolveOptions) -> LpStatus {
        if self.nartif > 0 {
            let mut cost1 = vec![T::zero(); self.cols.len()];
            for c in cost1.iter_mut().skip(self.first_artif) {
                *c = T::one();
            }
            let bounded = self.phase(&cost1, opts);
            debug_assert!(bounded, "phase 1 is bounded below by zero");
            let mut infeas = T::zero();
            for (i, &b) in self.basis.iter().enumerate() {
                if self.is_artificial(b) {
                    infeas = infeas.add_ref(&self.xb[i]);
                }
            }
            if infeas.sign() > 0 {
                return LpStatus::Infeasible;
            }
        }
        let cost2 = self.cost_phase2.clone();
        if self.phase(&cost2, opts) {
            LpStatus::Optimal
        } else {
            LpStatus::Unbounded
        }
    }

    fn extract(&self, model: &LpModel<T>, status: LpStatus) -> LpSolution<T> {
        if status != LpStatus::Optimal {
            return LpSolution {
                status,
                value: None,
                assignment: vec![T::zero(); model.ncols],
                duals: vec![T::zero(); model.rows.len()],
            };
        }
        let mut assignment = vec![T::zero(); model.ncols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nstruct {
                assignment[b] = self.xb[i].clone();
            }
        }
        let mut value = T::zero();
        for j in 0..model.ncols {
            value = value.add_ref(&model.objective[j].mul_ref(&assignment[j]));
        }
        // Duals in the original row orientation; equality rows sum the
        // multipliers of their two split halves.
        let y = self.dual_prices(&self.cost_phase2);
        let mut duals = vec![T::zero(); model.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            if let Some((orig, sgn)) = row.origin {
                let yi = if sgn == 1 { y[i].clone() } else { y[i].neg_ref() };
                duals[orig] = duals[orig].add_ref(&yi);
            }
        }
        LpSolution {
            status,
            value: Some(value),
            assignment,
            duals,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ge(coeffs: Vec<(usize, i64)>, rhs: i64) -> LpRow<Rational> {
        LpRow {
            coeffs: coeffs.into_iter().map(|(c, v)| (c, rat(v, 1))).collect(),
            sense: Sense::Ge,
            rhs: rat(rhs, 1),
        }
    }

    #[test]
    fn min_x_at_least_three() {
        let mut m = LpModel::new(1);
        m.objective[0] = rat(1, 1);
        m.rows.push(ge(vec![(0, 1)], 3));
        let s = solve(&m).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value.unwrap(), rat(3, 1));
    }

    #[test]
    fn symmetric_intersection() {
        // min x+y s.t. x+2y >= 4, 2x+y >= 4  ->  8/3 at (4/3, 4/3)
        let mut m = LpModel::new(2);
        m.objective = vec![rat(1, 1), rat(1, 1)];
        m.rows.push(ge(vec![(0, 1), (1, 2)], 4));
        m.rows.push(ge(vec![(0, 2), (1, 1)], 4));
        let s = solve(&m).unwrap();
        assert_eq!(s.value.unwrap(), rat(8, 3));
        assert_eq!(s.assignment, vec![rat(4, 3), rat(4, 3)]);
    }

    #[test]
    fn infeasible_band() {
        // min x s.t. x >= 1, x <= 0
        let mut m = LpModel::new(1);
        m.objective[0] = rat(1, 1);
        m.rows.push(ge(vec![(0, 1)], 1));
        m.add_row(vec![(0, rat(1, 1))], Sense::Le, rat(0, 1));
        let s = solve(&m).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let mut m = LpModel::new(1);
        m.objective[0] = rat(-1, 1);
        m.rows.push(ge(vec![(0, 1)], 0));
        let s = solve(&m).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_as_two_inequalities() {
        // min x+y s.t. x+y = 5, x <= 2 -> y = 3
        let mut m = LpModel::new(2);
        m.objective = vec![rat(1, 1), rat(1, 1)];
        m.add_row(vec![(0, rat(1, 1)), (1, rat(1, 1))], Sense::Eq, rat(5, 1));
        m.upper[0] = Some(rat(2, 1));
        let s = solve(&m).unwrap();
        assert_eq!(s.value.unwrap(), rat(5, 1));
        assert_eq!(s.assignment[1], rat(3, 1));
    }

    /// Exhaustive basic-solution enumeration for small standard-form LPs:
    /// an oracle independent of the simplex path.
    fn vertex_enum_min(obj: &[Rational], rows: &[(Vec<Rational>, Rational)]) -> Option<Rational> {
        // rows are `a . x <= b`; enumerate all subsets of active constraints
        // (including bounds x_j = 0) of size n and keep feasible vertices.
        let n = obj.len();
        let m = rows.len();
        let idx: Vec<usize> = (0..m + n).collect();
        let mut best: Option<Rational> = None;
        // choose n constraints to be active
        fn combos(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if pool.len() < k {
                return vec![];
            }
            let mut out = Vec::new();
            for (i, &p) in pool.iter().enumerate() {
                for mut rest in combos(&pool[i + 1..], k - 1) {
                    rest.insert(0, p);
                    out.push(rest);
                }
            }
            out
        }
        for active in combos(&idx, n) {
            // Solve the n x n system by Gaussian elimination in rationals.
            let mut a = vec![vec![Rational::zero(); n]; n];
            let mut b = vec![Rational::zero(); n];
            for (r, &c) in active.iter().enumerate() {
                if c < m {
                    a[r].clone_from_slice(&rows[c].0);
                    b[r] = rows[c].1.clone();
                } else {
                    a[r][c - m] = Rational::one();
                }
            }
            // elimination
            let mut ok = true;
            let mut x = b.clone();
            let mut mat = a.clone();
            for col in 0..n {
                let piv = (col..n).find(|&r| !mat[r][col].is_zero());
                let Some(p) = piv else {
                    ok = false;
                    break;
                };
                mat.swap(col, p);
                x.swap(col, p);
                let pv = mat[col][col].clone();
                for r in 0..n {
                    if r != col && !mat[r][col].is_zero() {
                        let f = &mat[r][col] / &pv;
                        for c2 in 0..n {
                            let t = &mat[col][c2] * &f;
                            mat[r][c2] = &mat[r][c2] - &t;
                        }
                        let t = &x[col] * &f;
                        x[r] = &x[r] - &t;
                    }
                }
            }
            if !ok {
                continue;
            }
            for col in 0..n {
                x[col] = &x[col] / &mat[col][col];
            }
            // feasibility
            if x.iter().any(|v| v.is_negative()) {
                continue;
            }
            if rows.iter().any(|(a, b)| {
                let lhs: Rational = a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
                lhs > *b
            }) {
                continue;
            }
            let val: Rational = obj.iter().zip(&x).map(|(c, xi)| c * xi).sum();
            best = Some(match best {
                None => val,
                Some(b) if val < b => val,
                Some(b) => b,
            });
        }
        best
    }

    #[test]
    fn beale_degenerate_terminates_and_matches_vertex_oracle() {
        // Beale's classic cycling example; degenerate under naive pricing.
        let obj = vec![rat(-3, 4), rat(150, 1), rat(-1, 50), rat(6, 1)];
        let rows = vec![
            (vec![rat(1, 4), rat(-60, 1), rat(-1, 25), rat(9, 1)], rat(0, 1)),
            (vec![rat(1, 2), rat(-90, 1), rat(-1, 50), rat(3, 1)], rat(0, 1)),
            (vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)], rat(1, 1)),
        ];
        let oracle = vertex_enum_min(&obj, &rows).unwrap();
        assert_eq!(oracle, rat(-1, 20));

        let mut m = LpModel::new(4);
        m.objective = obj;
        for (coeffs, rhs) in rows {
            m.add_row(coeffs.into_iter().enumerate().collect(), Sense::Le, rhs);
        }
        let s = solve(&m).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value.unwrap(), rat(-1, 20));
    }

    #[test]
    fn partial_pricing_same_optimum() {
        let mut m = LpModel::new(40);
        for j in 0..40 {
            m.objective[j] = rat(1 + (j as i64 % 7), 1);
        }
        // cover constraints: each row needs two specific columns
        for i in 0..12 {
            m.rows.push(ge(vec![(i, 1), (i + 13, 1), ((i * 3 + 5) % 40, 1)], 1));
        }
        let full = solve(&m).unwrap().value.unwrap();
        let batched = solve_with(
            &m,
            &SolveOptions {
                batch: Some(7),
                ..Default::default()
            },
        )
        .unwrap()
        .value
        .unwrap();
        assert_eq!(full, batched);
    }

    #[test]
    fn float_mode_matches_rational_on_small_cover() {
        let mut mr = LpModel::new(3);
        mr.objective = vec![rat(1, 1); 3];
        mr.rows.push(ge(vec![(0, 1), (1, 1)], 1));
        mr.rows.push(ge(vec![(1, 1), (2, 1)], 1));
        mr.rows.push(ge(vec![(0, 1), (2, 1)], 1));
        let vr = solve(&mr).unwrap().value.unwrap();

        let mut mf = LpModel::<f64>::new(3);
        mf.objective = vec![1.0; 3];
        for r in &mr.rows {
            mf.rows.push(LpRow {
                coeffs: r.coeffs.iter().map(|(c, _)| (*c, 1.0)).collect(),
                sense: Sense::Ge,
                rhs: 1.0,
            });
        }
        let vf = solve(&mf).unwrap().value.unwrap();
        assert_eq!(vr, rat(3, 2));
        assert!((vf - 1.5).abs() < 1e-12);
    }
}
