//! The exact fractional-local-dimension LP for small posets, the
//! linear-extensions-only restriction (fractional dimension), and realizer
//! verification.

use crate::lp::{self, LpModel, LpStatus, Rational, Sense};
use crate::ple::{self, CoverageSignature, Ple, PleError};
use crate::poset::Poset;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FldimError {
    #[error(transparent)]
    Ple(#[from] PleError),
    #[error(transparent)]
    Lp(#[from] lp::LpError),
    #[error("ple list inconsistent with the poset: {0}")]
    InconsistentPles(String),
    #[error("weight function uses an invalid ple: {0}")]
    BadWitness(String),
    #[error("LP reported {0:?} for a model that is feasible and bounded by construction")]
    UnexpectedStatus(LpStatus),
}

/// Which columns the model gets: every ple, or full linear extensions only
/// (the latter computes fractional dimension).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FldimMode {
    Local,
    LinearOnly,
}

/// A rational weighting of ples of a host poset; unlisted ples weigh 0.
#[derive(Debug, Clone)]
pub struct WeightFunction {
    pub poset: Poset,
    pub weights: Vec<(Ple, Rational)>,
}

impl WeightFunction {
    /// mu(u, w): total weight of ples containing u.
    pub fn local_measure(&self, u: usize) -> Rational {
        self.weights
            .iter()
            .filter(|(m, _)| m.contains(u))
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// mu(P, w) = max_u mu(u, w).
    pub fn measure(&self) -> Rational {
        (0..self.poset.len())
            .map(|u| self.local_measure(u))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// The assembled LP plus the column bookkeeping needed to read a witness
/// back out of a solution.
pub struct FldimModel {
    pub model: LpModel<Rational>,
    /// One representative ple per merged column, in column order; the cost
    /// column c is the last column of `model` and has no representative.
    pub columns: Vec<Ple>,
    /// Ple count before signature deduplication.
    pub ples_in: usize,
    pub rows: usize,
}

/// Build the covering LP: one weight column per (signature-deduplicated)
/// ple plus a cost column c; `>= 1` rows for every ordered pair u <= v
/// (reflexive included) and every incomparable ordered pair; `<= 0` rows
/// tying each element's measure to c. Objective: minimize c.
pub fn build_fldim_model(p: &Poset, ples: &[Ple], mode: FldimMode) -> Result<FldimModel, FldimError> {
    let n = p.len();
    let mut merged: BTreeMap<CoverageSignature, Ple> = BTreeMap::new();
    let mut ples_in = 0usize;
    for m in ples {
        if mode == FldimMode::LinearOnly && m.len() != n {
            continue;
        }
        let sig = ple::coverage_signature(p, m)
            .map_err(|e| FldimError::InconsistentPles(e.to_string()))?;
        ples_in += 1;
        merged.entry(sig).or_insert_with(|| m.clone());
    }
    let columns: Vec<(CoverageSignature, Ple)> = merged.into_iter().collect();
    let ncols = columns.len() + 1;
    let c_col = columns.len();
    let mut model = LpModel::<Rational>::new(ncols);
    model.objective[c_col] = Rational::one();

    let one = Rational::one;
    // kept rows: ordered pairs with u <= v in P, u = v included
    for u in 0..n {
        for v in 0..n {
            if p.le(u, v) {
                let coeffs: Vec<(usize, Rational)> = columns
                    .iter()
                    .enumerate()
                    .filter(|(_, (sig, _))| sig.kept.contains(&(u, v)))
                    .map(|(j, _)| (j, one()))
                    .collect();
                model.add_row(coeffs, Sense::Ge, one());
            }
        }
    }
    // reversal rows: incomparable ordered pairs
    for (u, v) in p.incomparable_ordered_pairs() {
        let coeffs: Vec<(usize, Rational)> = columns
            .iter()
            .enumerate()
            .filter(|(_, (sig, _))| sig.reversed.contains(&(u, v)))
            .map(|(j, _)| (j, one()))
            .collect();
        model.add_row(coeffs, Sense::Ge, one());
    }
    // measure rows: sum of weights of ples containing u, minus c, <= 0
    for u in 0..n {
        let mut coeffs: Vec<(usize, Rational)> = columns
            .iter()
            .enumerate()
            .filter(|(_, (_, rep))| rep.contains(u))
            .map(|(j, _)| (j, one()))
            .collect();
        coeffs.push((c_col, -one()));
        model.add_row(coeffs, Sense::Le, Rational::zero());
    }
    let rows = model.rows.len();
    Ok(FldimModel {
        model,
        columns: columns.into_iter().map(|(_, m)| m).collect(),
        ples_in,
        rows,
    })
}

fn solve_mode(p: &Poset, cap: usize, mode: FldimMode) -> Result<(Rational, WeightFunction), FldimError> {
    let ples = ple::enumerate_ples(p, cap)?;
    let built = build_fldim_model(p, &ples, mode)?;
    let sol = lp::solve(&built.model)?;
    if sol.status != LpStatus::Optimal {
        return Err(FldimError::UnexpectedStatus(sol.status));
    }
    let value = sol.value.expect("optimal");
    let weights = built
        .columns
        .iter()
        .enumerate()
        .filter(|(j, _)| !sol.assignment[*j].is_zero())
        .map(|(j, m)| (m.clone(), sol.assignment[j].clone()))
        .collect();
    Ok((
        value,
        WeightFunction { poset: p.clone(), weights },
    ))
}

/// Exact fldim(P) with an optimal fractional local realizer as witness.
pub fn fldim_exact(p: &Poset, cap: usize) -> Result<(Rational, WeightFunction), FldimError> {
    solve_mode(p, cap, FldimMode::Local)
}

/// Exact fractional dimension: positive weight allowed on full linear
/// extensions only.
pub fn fdim_exact(p: &Poset, cap: usize) -> Result<Rational, FldimError> {
    solve_mode(p, cap, FldimMode::LinearOnly).map(|(v, _)| v)
}

/// Check a weight function against the realizer conditions in exact
/// arithmetic; returns validity plus mu(P, w).
pub fn verify_realizer(p: &Poset, w: &WeightFunction) -> Result<(bool, Rational), FldimError> {
    let mut sigs = Vec::with_capacity(w.weights.len());
    for (m, _) in &w.weights {
        sigs.push(ple::coverage_signature(p, m).map_err(|e| FldimError::BadWitness(e.to_string()))?);
    }
    let coverage = |pred: &dyn Fn(&CoverageSignature) -> bool| -> Rational {
        sigs.iter()
            .zip(&w.weights)
            .filter(|(sig, _)| pred(sig))
            .map(|(_, (_, wt))| wt.clone())
            .sum()
    };
    let one = Rational::one();
    let mut valid = true;
    for u in 0..p.len() {
        for v in 0..p.len() {
            if p.le(u, v) && coverage(&|s| s.kept.contains(&(u, v))) < one {
                valid = false;
            }
        }
    }
    for (u, v) in p.incomparable_ordered_pairs() {
        if coverage(&|s| s.reversed.contains(&(u, v))) < one {
            valid = false;
        }
    }
    Ok((valid, w.measure()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn fldim(p: &Poset) -> Rational {
        let (v, w) = fldim_exact(p, 8).unwrap();
        let (ok, measure) = verify_realizer(p, &w).unwrap();
        assert!(ok, "witness must be a fractional local realizer");
        assert_eq!(measure, v, "witness measure equals the optimum");
        v
    }

    #[test]
    fn model_shapes() {
        let anti = Poset::antichain(2).unwrap();
        let ples = ple::enumerate_ples(&anti, 8).unwrap();
        let built = build_fldim_model(&anti, &ples, FldimMode::Local).unwrap();
        assert_eq!(built.model.ncols, 5); // 4 ples + c
        assert_eq!(built.rows, 6); // 2 kept + 2 reversed + 2 measure

        let chain = Poset::chain(2).unwrap();
        let ples = ple::enumerate_ples(&chain, 8).unwrap();
        let built = build_fldim_model(&chain, &ples, FldimMode::Local).unwrap();
        assert_eq!(built.model.ncols, 4);
        assert_eq!(built.rows, 5);

        let s2 = Poset::standard_example(2).unwrap();
        let ples = ple::enumerate_ples(&s2, 8).unwrap();
        let built = build_fldim_model(&s2, &ples, FldimMode::Local).unwrap();
        assert_eq!(built.rows, 18); // 6 kept + 8 reversed + 4 measure
    }

    #[test]
    fn chain_and_antichain() {
        assert_eq!(fldim(&Poset::chain(3).unwrap()), rat(1, 1));
        assert_eq!(fldim(&Poset::chain(4).unwrap()), rat(1, 1));
        assert_eq!(fldim(&Poset::antichain(2).unwrap()), rat(2, 1));
        assert_eq!(fldim(&Poset::standard_example(2).unwrap()), rat(2, 1));
    }

    #[test]
    fn s3_strictly_between_two_and_three() {
        let s3 = Poset::standard_example(3).unwrap();
        let v = fldim(&s3);
        assert!(v > rat(2, 1) && v < rat(3, 1));
        // Regression constant: first exact computation gave 7/3.
        assert_eq!(v, rat(7, 3));
        // P(1,2;3) is isomorphic to S_3.
        assert_eq!(fldim(&Poset::family(2, 3).unwrap()), rat(7, 3));
    }

    #[test]
    fn fdim_values() {
        assert_eq!(fdim_exact(&Poset::standard_example(3).unwrap(), 8).unwrap(), rat(3, 1));
        assert_eq!(fdim_exact(&Poset::family(2, 3).unwrap(), 8).unwrap(), rat(3, 1));
        assert_eq!(fdim_exact(&Poset::chain(2).unwrap(), 8).unwrap(), rat(1, 1));
    }

    #[test]
    fn verify_realizer_examples() {
        let chain = Poset::chain(2).unwrap();
        let w = WeightFunction {
            poset: chain.clone(),
            weights: vec![(Ple::new(&chain, vec![0, 1]).unwrap(), rat(1, 1))],
        };
        assert_eq!(verify_realizer(&chain, &w).unwrap(), (true, rat(1, 1)));

        let anti = Poset::antichain(2).unwrap();
        let both = |wt: Rational| WeightFunction {
            poset: anti.clone(),
            weights: vec![
                (Ple::new(&anti, vec![0, 1]).unwrap(), wt.clone()),
                (Ple::new(&anti, vec![1, 0]).unwrap(), wt),
            ],
        };
        assert_eq!(verify_realizer(&anti, &both(rat(1, 1))).unwrap(), (true, rat(2, 1)));
        let (ok, _) = verify_realizer(&anti, &both(rat(1, 2))).unwrap();
        assert!(!ok);
    }

    #[test]
    fn fldim_le_fdim_small() {
        for p in [
            Poset::standard_example(2).unwrap(),
            Poset::standard_example(3).unwrap(),
            Poset::antichain(3).unwrap(),
            Poset::from_relations(4, &[(0, 2), (1, 2), (1, 3)]).unwrap(),
        ] {
            let (fl, _) = fldim_exact(&p, 8).unwrap();
            let fd = fdim_exact(&p, 8).unwrap();
            assert!(fl <= fd);
        }
    }
}
