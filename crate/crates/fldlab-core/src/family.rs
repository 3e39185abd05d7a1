//! Block templates for maximal-reversing ples of P(1,d;n), the exact
//! reversal-count formula, and the finite-n reduced four-row LP.

use crate::lp::{self, LpModel, LpStatus, Rational, Sense, SolveOptions};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("parameters out of bounds: {0}")]
    Parameter(String),
    #[error("no valid template for n={n}, d={d}, a={a}, {spec:?}")]
    NoTemplate { n: u64, d: u64, a: u64, spec: TopSpec },
    #[error("closed form not divisible by d+1 (implementation bug): n={n} d={d} a={a} m={m}")]
    Divisibility { n: u64, d: u64, a: u64, m: u64 },
    #[error("exact-rational arithmetic is reserved for n <= {cap}, got n={n}")]
    RationalCap { n: u64, cap: u64 },
    #[error(transparent)]
    Lp(#[from] lp::LpError),
    #[error("LP reported {0:?} for a model that is feasible and bounded by construction")]
    UnexpectedStatus(LpStatus),
}

/// How the top of the template looks: `TopGap(m)` puts m minimals above
/// every maximal present (so b = C(n-m, d)); `Saturated` includes every
/// maximal (b = C(n, d)), with the top block holding the d-sets missing
/// from the reversing stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopSpec {
    TopGap(u64),
    Saturated,
}

/// Block-size profile [A_0 < B_1 < A_1 < ... < B_s < A_s < B_{s+1}] of the
/// canonical maximal-reversing ple with the given (a, top) parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTemplate {
    pub n: u64,
    pub d: u64,
    pub a0: u64,
    /// |A_1| .. |A_s|
    pub minimal_blocks: Vec<u64>,
    /// |B_1| .. |B_{s+1}| (the last entry may be zero when the top maximal
    /// block is empty)
    pub maximal_blocks: Vec<BigUint>,
    pub a: u64,
    pub b: BigUint,
    pub r: BigUint,
    pub q: BigUint,
}

impl BlockTemplate {
    pub fn block_length(&self) -> usize {
        self.minimal_blocks.len()
    }
}

/// C(n, k), zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        num /= BigUint::from(i + 1);
    }
    num
}

/// Exact closed form for the reversal count of the TopGap(m) template:
/// r = (1/(d+1)) [ (n + md - d) C(n-m, d) - (n - a - d) C(n-a, d) ],
/// equal to C(n-a,d) + ... + C(n-m-1,d) + m*C(n-m,d) with the convention
/// C(j, d) = 0 for j < d.
pub fn r_closed_form(n: u64, d: u64, a: u64, m: u64) -> Result<BigUint, FamilyError> {
    if !(2 <= d && d < n) || a > n || m > a || m > n - d {
        return Err(FamilyError::Parameter(format!(
            "r_closed_form needs 2 <= d < n, m <= a <= n, m <= n-d; got n={n} d={d} a={a} m={m}"
        )));
    }
    let term = |coef: i64, nn: u64| -> BigInt {
        BigInt::from(coef) * BigInt::from(binomial(nn, d))
    };
    let c1 = (n + m * d) as i64 - d as i64;
    let c2 = n as i64 - a as i64 - d as i64;
    let num = term(c1, n - m) - term(c2, n.saturating_sub(a));
    let dd = BigInt::from(d + 1);
    let (quot, rem) = num.clone().div_rem(&dd);
    if !rem.is_zero() || quot.is_negative() {
        return Err(FamilyError::Divisibility { n, d, a, m });
    }
    Ok(quot.to_biguint().expect("nonnegative"))
}

/// Builds the unique block-size profile satisfying the maximal-reversing
/// characterization (singleton interior minimal blocks, forced bottom
/// block, forced A_0 and B_{s+1} sizes) for the requested shape.
pub fn max_reversing_template(n: u64, d: u64, a: u64, spec: TopSpec) -> Result<BlockTemplate, FamilyError> {
    if !(2 <= d && d < n) {
        return Err(FamilyError::Parameter(format!("need 2 <= d < n, got d={d} n={n}")));
    }
    if a < 1 || a > n {
        return Err(FamilyError::Parameter(format!("need 1 <= a <= n, got a={a}")));
    }
    let a0 = a.saturating_sub(n - d); // |A_0| = max(0, a - (n-d))
    let k = a - a0; // minimals stacked above maximals
    let m = match spec {
        TopSpec::TopGap(m) => {
            if m < 1 || m > k {
                return Err(FamilyError::NoTemplate { n, d, a, spec });
            }
            m
        }
        TopSpec::Saturated => {
            if k < 1 {
                return Err(FamilyError::NoTemplate { n, d, a, spec });
            }
            1
        }
    };
    let s = k - m + 1;
    // |A_1| .. |A_{s-1}| = 1, |A_s| = m
    let mut minimal_blocks = vec![1u64; s as usize];
    *minimal_blocks.last_mut().expect("s >= 1") = m;
    // B_1 holds the d-sets containing A_0 and avoiding the k stacked
    // minimals; B_i (2 <= i <= s) holds those containing the distinguished
    // element of A_{i-1} and avoiding everything placed at level i or above.
    let mut maximal_blocks = Vec::with_capacity(s as usize + 1);
    maximal_blocks.push(binomial(n - a0 - k, d - a0));
    for i in 2..=s {
        let above = k - (i - 1); // minimals at level i or above
        maximal_blocks.push(binomial(n - 1 - above, d - 1));
    }
    let b_low: BigUint = maximal_blocks.iter().sum();
    let b = match spec {
        TopSpec::TopGap(_) => {
            maximal_blocks.push(BigUint::zero());
            b_low
        }
        TopSpec::Saturated => {
            let b = binomial(n, d);
            let top = &b - &b_low;
            maximal_blocks.push(top);
            b
        }
    };
    debug_assert_eq!(
        match spec {
            TopSpec::TopGap(_) => binomial(n - m, d),
            TopSpec::Saturated => binomial(n, d),
        },
        b
    );
    // r = sum over minimal blocks of |A_i| * (maximals below them)
    let mut r = BigUint::zero();
    let mut below = BigUint::zero();
    for (i, &ai) in minimal_blocks.iter().enumerate() {
        below += &maximal_blocks[i];
        r += BigUint::from(ai) * &below;
    }
    let q = BigUint::from(a) * &b - &r;
    Ok(BlockTemplate {
        n,
        d,
        a0,
        minimal_blocks,
        maximal_blocks,
        a,
        b,
        r,
        q,
    })
}

/// The maximal-preserving full linear extension [Min(P) < Max(P)]:
/// a = n, b = C(n,d), r = 0, q = n*C(n,d).
pub fn max_preserving_full(n: u64, d: u64) -> Result<BlockTemplate, FamilyError> {
    if !(2 <= d && d < n) {
        return Err(FamilyError::Parameter(format!("need 2 <= d < n, got d={d} n={n}")));
    }
    let b = binomial(n, d);
    Ok(BlockTemplate {
        n,
        d,
        a0: n,
        minimal_blocks: vec![],
        maximal_blocks: vec![b.clone()],
        a: n,
        b: b.clone(),
        r: BigUint::zero(),
        q: BigUint::from(n) * b,
    })
}

/// Elements of an explicitly instantiated family ple: minimals are ground
/// integers, maximals are d-subset bitmasks. Small n only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyElt {
    Min(u32),
    Max(u64),
}

/// Instantiate a template as an explicit ple over the ground set {0..n-1}:
/// A_0 = {0..a0-1}, the stacked minimals are a0, a0+1, ... bottom to top,
/// and each maximal block gets the d-sets its definition forces.
pub fn instantiate_template(t: &BlockTemplate) -> Vec<FamilyElt> {
    let n = t.n as u32;
    let d = t.d as usize;
    assert!(n <= 60, "explicit instantiation is for small n");
    let s = t.minimal_blocks.len();
    // stacked minimals bottom-to-top: a0, a0+1, ..., a-1 grouped per block
    let mut level_of = vec![usize::MAX; n as usize]; // block index of stacked minimals
    let mut next = t.a0 as u32;
    let mut groups: Vec<Vec<u32>> = Vec::with_capacity(s);
    for (i, &ai) in t.minimal_blocks.iter().enumerate() {
        let mut g = Vec::with_capacity(ai as usize);
        for _ in 0..ai {
            level_of[next as usize] = i;
            g.push(next);
            next += 1;
        }
        groups.push(g);
    }
    let a0_mask: u64 = (0..t.a0 as u32).fold(0, |m, u| m | (1 << u));
    let mut out = Vec::new();
    for u in 0..t.a0 as u32 {
        out.push(FamilyElt::Min(u));
    }
    // enumerate all d-subsets once, classify per block
    let subsets = crate::poset::d_subsets(n as usize, d);
    let in_block = |mask: u64, i: usize| -> bool {
        // B_1 (i=0): contains A_0, avoids all stacked minimals.
        // B_i (i>=1): contains the distinguished element of A_{i-1} (the
        // singleton; the lemma's interior blocks are singletons), avoids
        // every stacked minimal at level >= i.
        let avoid: u64 = groups[i..]
            .iter()
            .flatten()
            .fold(0u64, |m, &u| m | (1 << u));
        if mask & avoid != 0 {
            return false;
        }
        if i == 0 {
            mask & a0_mask == a0_mask
        } else {
            let anchor = groups[i - 1][0];
            debug_assert_eq!(groups[i - 1].len(), 1);
            mask & (1 << anchor) != 0
        }
    };
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &u| m | (1 << u as u32)))
        .collect();
    let mut used = vec![false; masks.len()];
    for i in 0..s {
        for (j, &mask) in masks.iter().enumerate() {
            if !used[j] && in_block(mask, i) {
                used[j] = true;
                out.push(FamilyElt::Max(mask));
            }
        }
        for &u in &groups[i] {
            out.push(FamilyElt::Min(u));
        }
    }
    // top maximal block: whatever b still requires, taken as the unused sets
    let placed_max = out.iter().filter(|e| matches!(e, FamilyElt::Max(_))).count();
    let want_b = t.b.to_usize().expect("small n");
    if want_b > placed_max {
        let mut extra = want_b - placed_max;
        for (j, &mask) in masks.iter().enumerate() {
            if extra == 0 {
                break;
            }
            if !used[j] {
                used[j] = true;
                out.push(FamilyElt::Max(mask));
                extra -= 1;
            }
        }
        assert_eq!(extra, 0, "not enough d-sets for the requested b");
    }
    out
}

/// Literal reversed/preserved pair count over an explicit ple.
pub fn brute_stats(seq: &[FamilyElt]) -> (u64, u64, u64, u64) {
    let mut a = 0u64;
    let mut b = 0u64;
    let mut r = 0u64;
    let mut q = 0u64;
    for (i, e) in seq.iter().enumerate() {
        match e {
            FamilyElt::Min(_) => a += 1,
            FamilyElt::Max(_) => b += 1,
        }
        for f in &seq[i + 1..] {
            match (e, f) {
                (FamilyElt::Max(_), FamilyElt::Min(_)) => r += 1, // minimal above a maximal
                (FamilyElt::Min(_), FamilyElt::Max(_)) => q += 1,
                _ => {}
            }
        }
    }
    (a, b, r, q)
}

/// Checks that an instantiated template really is a ple of P(1,d;n): no
/// maximal may appear below one of its own elements.
pub fn instantiation_is_ple(seq: &[FamilyElt]) -> bool {
    for (i, e) in seq.iter().enumerate() {
        if let FamilyElt::Max(mask) = e {
            for f in &seq[i + 1..] {
                if let FamilyElt::Min(u) = f {
                    if mask & (1 << u) != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A column of the reduced LP.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    TopGap { a: u64, m: u64 },
    Saturated { a: u64 },
    FullLinearExtension,
}

#[derive(Debug, Clone)]
pub struct ReducedLpResult<T> {
    pub c0: T,
    pub support: Vec<(ColumnKind, T)>,
    pub columns: usize,
    pub diagnostic: bool,
}

/// Past this n the (a, m) grid is subsampled geometrically and results are
/// labeled diagnostic.
pub const FULL_GRID_MAX_N: u64 = 2000;
/// Exact rational solves are reserved for small n (the float threshold).
pub const RATIONAL_MAX_N: u64 = 50;

fn grid_values(max: u64, subsample: bool) -> Vec<u64> {
    if !subsample {
        return (1..=max).collect();
    }
    let mut vals = std::collections::BTreeSet::new();
    vals.insert(1);
    vals.insert(max);
    let mut x = 1.0f64;
    while x < max as f64 {
        vals.insert(x.round() as u64);
        x *= 1.07;
    }
    vals.into_iter().filter(|&v| v >= 1 && v <= max).collect()
}

fn column_grid(n: u64, d: u64, subsample: bool) -> Vec<ColumnKind> {
    let mut cols = Vec::new();
    for a in grid_values(n, subsample) {
        let k = a.min(n - d);
        for m in grid_values(k, subsample) {
            cols.push(ColumnKind::TopGap { a, m });
        }
        if k >= 1 {
            cols.push(ColumnKind::Saturated { a });
        }
    }
    cols.push(ColumnKind::FullLinearExtension);
    cols
}

/// Row of binomials C(j, d) for j = 0..=n, built once per (n, d) so the
/// O(n^2)-column grid costs O(1) big-integer work per column.
struct BinomialRow {
    row: Vec<BigUint>,
}

impl BinomialRow {
    fn new(n: u64, d: u64) -> Self {
        let mut row = vec![BigUint::zero(); n as usize + 1];
        if d <= n {
            row[d as usize] = BigUint::one();
            for j in d..n {
                // C(j+1, d) = C(j, d) * (j+1) / (j+1-d), exact at each step
                let next = &row[j as usize] * BigUint::from(j + 1) / BigUint::from(j + 1 - d);
                row[j as usize + 1] = next;
            }
        }
        BinomialRow { row }
    }

    fn c(&self, j: u64) -> &BigUint {
        &self.row[j as usize]
    }
}

fn r_closed_with(bin: &BinomialRow, n: u64, d: u64, a: u64, m: u64) -> Result<BigUint, FamilyError> {
    let term = |coef: i64, nn: u64| -> BigInt { BigInt::from(coef) * BigInt::from(bin.c(nn).clone()) };
    let c1 = (n + m * d) as i64 - d as i64;
    let c2 = n as i64 - a as i64 - d as i64;
    let num = term(c1, n - m) - term(c2, n - a);
    let (quot, rem) = num.div_rem(&BigInt::from(d + 1));
    if !rem.is_zero() || quot.is_negative() {
        return Err(FamilyError::Divisibility { n, d, a, m });
    }
    Ok(quot.to_biguint().expect("nonnegative"))
}

fn column_stats(
    bin: &BinomialRow,
    n: u64,
    d: u64,
    kind: ColumnKind,
) -> Result<(u64, BigUint, BigUint, BigUint), FamilyError> {
    match kind {
        ColumnKind::TopGap { a, m } => {
            let b = bin.c(n - m).clone();
            let r = r_closed_with(bin, n, d, a, m)?;
            let q = BigUint::from(a) * &b - &r;
            Ok((a, b, r, q))
        }
        ColumnKind::Saturated { a } => {
            let b = bin.c(n).clone();
            let r = r_closed_with(bin, n, d, a, 1)?;
            let q = BigUint::from(a) * &b - &r;
            Ok((a, b, r, q))
        }
        ColumnKind::FullLinearExtension => {
            let b = bin.c(n).clone();
            let q = BigUint::from(n) * &b;
            Ok((n, b, BigUint::zero(), q))
        }
    }
}

/// Solve the scaled four-row LP over the template column grid in exact
/// rationals. Reserved for n <= RATIONAL_MAX_N.
pub fn reduced_lp_rational(n: u64, d: u64) -> Result<ReducedLpResult<Rational>, FamilyError> {
    if !(2 <= d && d < n) {
        return Err(FamilyError::Parameter(format!("need 2 <= d < n, got d={d} n={n}")));
    }
    if n > RATIONAL_MAX_N {
        return Err(FamilyError::RationalCap { n, cap: RATIONAL_MAX_N });
    }
    let kinds = column_grid(n, d, false);
    let bin = BinomialRow::new(n, d);
    let ncols = kinds.len() + 1;
    let c_col = kinds.len();
    let big = |u: &BigUint| BigInt::from(u.clone());
    let scale_a = BigInt::from(n);
    let scale_b = big(&binomial(n, d));
    let scale_r = BigInt::from(n) * big(&binomial(n - 1, d));
    let scale_q = BigInt::from(n) * big(&binomial(n, d));
    let mut model = LpModel::<Rational>::new(ncols);
    model.objective[c_col] = Rational::one();
    let mut row_a = Vec::with_capacity(ncols);
    let mut row_b = Vec::with_capacity(ncols);
    let mut row_r = Vec::with_capacity(ncols);
    let mut row_q = Vec::with_capacity(ncols);
    for (j, &kind) in kinds.iter().enumerate() {
        let (a, b, r, q) = column_stats(&bin, n, d, kind)?;
        row_a.push((j, Rational::new(BigInt::from(a), scale_a.clone())));
        row_b.push((j, Rational::new(big(&b), scale_b.clone())));
        if !r.is_zero() {
            row_r.push((j, Rational::new(big(&r), scale_r.clone())));
        }
        if !q.is_zero() {
            row_q.push((j, Rational::new(big(&q), scale_q.clone())));
        }
    }
    let minus_one = -Rational::one();
    row_a.push((c_col, minus_one.clone()));
    row_b.push((c_col, minus_one));
    model.add_row(row_a, Sense::Le, Rational::zero());
    model.add_row(row_b, Sense::Le, Rational::zero());
    model.add_row(row_r, Sense::Ge, Rational::one());
    model.add_row(row_q, Sense::Ge, Rational::one());
    let sol = lp::solve(&model)?;
    if sol.status != LpStatus::Optimal {
        return Err(FamilyError::UnexpectedStatus(sol.status));
    }
    let support = kinds
        .iter()
        .enumerate()
        .filter(|(j, _)| !sol.assignment[*j].is_zero())
        .map(|(j, &k)| (k, sol.assignment[j].clone()))
        .collect();
    Ok(ReducedLpResult {
        c0: sol.value.expect("optimal"),
        support,
        columns: kinds.len(),
        diagnostic: false,
    })
}

/// Solve the scaled four-row LP in binary64. The column grid is exact
/// (statistics computed in big integers, converted once); for
/// n > FULL_GRID_MAX_N the grid is subsampled and the result flagged
/// diagnostic.
pub fn reduced_lp_float(n: u64, d: u64) -> Result<ReducedLpResult<f64>, FamilyError> {
    if !(2 <= d && d < n) {
        return Err(FamilyError::Parameter(format!("need 2 <= d < n, got d={d} n={n}")));
    }
    let subsample = n > FULL_GRID_MAX_N;
    let kinds = column_grid(n, d, subsample);
    let bin = BinomialRow::new(n, d);
    let ncols = kinds.len() + 1;
    let c_col = kinds.len();
    let to_f = |u: &BigUint| u.to_f64().expect("binomial fits f64 range");
    let scale_a = n as f64;
    let scale_b = to_f(&binomial(n, d));
    let scale_r = n as f64 * to_f(&binomial(n - 1, d));
    let scale_q = n as f64 * scale_b;
    let mut model = LpModel::<f64>::new(ncols);
    model.objective[c_col] = 1.0;
    let mut row_a = Vec::with_capacity(ncols);
    let mut row_b = Vec::with_capacity(ncols);
    let mut row_r = Vec::with_capacity(ncols);
    let mut row_q = Vec::with_capacity(ncols);
    for (j, &kind) in kinds.iter().enumerate() {
        let (a, b, r, q) = column_stats(&bin, n, d, kind)?;
        row_a.push((j, a as f64 / scale_a));
        row_b.push((j, to_f(&b) / scale_b));
        if !r.is_zero() {
            row_r.push((j, to_f(&r) / scale_r));
        }
        if !q.is_zero() {
            row_q.push((j, to_f(&q) / scale_q));
        }
    }
    row_a.push((c_col, -1.0));
    row_b.push((c_col, -1.0));
    model.add_row(row_a, Sense::Le, 0.0);
    model.add_row(row_b, Sense::Le, 0.0);
    model.add_row(row_r, Sense::Ge, 1.0);
    model.add_row(row_q, Sense::Ge, 1.0);
    let sol = lp::solve_with(&model, &SolveOptions::default())?;
    if sol.status != LpStatus::Optimal {
        return Err(FamilyError::UnexpectedStatus(sol.status));
    }
    let support = kinds
        .iter()
        .enumerate()
        .filter(|(j, _)| sol.assignment[*j] > 1e-12)
        .map(|(j, &k)| (k, sol.assignment[j]))
        .collect();
    Ok(ReducedLpResult {
        c0: sol.value.expect("optimal"),
        support,
        columns: kinds.len(),
        diagnostic: subsample,
    })
}
