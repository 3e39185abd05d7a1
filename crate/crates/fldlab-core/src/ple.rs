//! Partial linear extensions: validation, enumeration, coverage signatures
//! for the exact LP, and the min/max pair statistics of height-2 posets.

use crate::poset::Poset;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PleError {
    #[error("sequence repeats element {element}")]
    RepeatedEntry { element: usize },
    #[error("sequence entry {index} out of range for {n} elements")]
    BadIndex { index: usize, n: usize },
    #[error("sequence is not order-respecting, so it is not a ple")]
    NotOrderRespecting,
    #[error("poset has {n} elements, above the size limit {cap}")]
    SizeLimit { n: usize, cap: usize },
    #[error("poset has height > 2 (element {element} is neither minimal nor maximal)")]
    HeightTooLarge { element: usize },
}

/// A partial linear extension: a linear extension of an induced subposet,
/// stored bottom-to-top.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ple {
    seq: Vec<usize>,
}

impl Ple {
    /// Validates `seq` against `p`; errors on malformed input, returns the
    /// ple otherwise.
    pub fn new(p: &Poset, seq: Vec<usize>) -> Result<Ple, PleError> {
        match check_seq(p, &seq)? {
            true => Ok(Ple { seq }),
            false => Err(PleError::NotOrderRespecting),
        }
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn contains(&self, u: usize) -> bool {
        self.seq.contains(&u)
    }
}

/// §-style statistics of a ple of a height-2 poset. `s` is the block-length
/// of the alternating minimal/maximal block decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PleStats {
    pub a: u64,
    pub b: u64,
    pub r: u64,
    pub q: u64,
    pub s: usize,
}

/// Which ordered requirements a ple satisfies: `kept` holds (u,v) with
/// u <= v in P and u at-or-below v in M (reflexive pairs for members);
/// `reversed` holds incomparable (u,v) with u above v in M.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverageSignature {
    pub kept: BTreeSet<(usize, usize)>,
    pub reversed: BTreeSet<(usize, usize)>,
}

fn check_seq(p: &Poset, seq: &[usize]) -> Result<bool, PleError> {
    let n = p.len();
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n {
            return Err(PleError::BadIndex { index: v, n });
        }
        if seen[v] {
            return Err(PleError::RepeatedEntry { element: v });
        }
        seen[v] = true;
    }
    for i in 0..seq.len() {
        for j in 0..i {
            // seq[j] comes before seq[i]; a strict relation the other way
            // violates order-respect.
            if p.lt(seq[i], seq[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff `seq` is a ple of `p`; malformed sequences (repeats, bad
/// indices) are errors rather than `false`.
pub fn is_ple(p: &Poset, seq: &[usize]) -> Result<bool, PleError> {
    check_seq(p, seq)
}

/// All linear extensions of the induced subposet on `subset`, by recursive
/// minimal-element choice in ascending index order.
pub(crate) fn linear_extensions_of(p: &Poset, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = subset.to_vec();
    let mut placed = Vec::with_capacity(subset.len());
    fn rec(p: &Poset, placed: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(placed.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest[i];
            if rest.iter().all(|&u| u == v || !p.lt(u, v)) {
                rest.remove(i);
                placed.push(v);
                rec(p, placed, rest, out);
                placed.pop();
                rest.insert(i, v);
            }
        }
    }
    rec(p, &mut placed, &mut rest, &mut out);
    out
}

/// Every nonempty ple of `p`: subsets ascending by size then
/// lexicographically, linear extensions per subset. Deterministic order.
pub fn enumerate_ples(p: &Poset, cap: usize) -> Result<Vec<Ple>, PleError> {
    let n = p.len();
    if n > cap {
        return Err(PleError::SizeLimit { n, cap });
    }
    let mut out = Vec::new();
    for size in 1..=n {
        let mut subset = Vec::with_capacity(size);
        subsets_rec(n, size, 0, &mut subset, &mut |s| {
            for ext in linear_extensions_of(p, s) {
                out.push(Ple { seq: ext });
            }
        });
    }
    Ok(out)
}

fn subsets_rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == size {
        f(cur);
        return;
    }
    for v in start..n {
        cur.push(v);
        subsets_rec(n, size, v + 1, cur, f);
        cur.pop();
    }
}

pub fn coverage_signature(p: &Poset, m: &Ple) -> Result<CoverageSignature, PleError> {
    if !check_seq(p, m.seq())? {
        return Err(PleError::NotOrderRespecting);
    }
    let mut kept = BTreeSet::new();
    let mut reversed = BTreeSet::new();
    let seq = m.seq();
    for (i, &u) in seq.iter().enumerate() {
        kept.insert((u, u));
        for &v in &seq[i + 1..] {
            // u sits below v in M.
            if p.lt(u, v) {
                kept.insert((u, v));
            } else if p.incomparable(u, v) {
                reversed.insert((v, u));
            }
        }
    }
    Ok(CoverageSignature { kept, reversed })
}

/// Min x Max pair statistics for a height-2 poset. Elements that are both
/// minimal and maximal count on the Min side, keeping the two sides
/// disjoint so r + q = a*b holds.
pub fn bipartite_stats(p: &Poset, m: &Ple) -> Result<PleStats, PleError> {
    if !check_seq(p, m.seq())? {
        return Err(PleError::NotOrderRespecting);
    }
    let mins: BTreeSet<usize> = p.minimals().into_iter().collect();
    let maxs: BTreeSet<usize> = p.maximals().into_iter().filter(|u| !mins.contains(u)).collect();
    for u in 0..p.len() {
        if !mins.contains(&u) && !maxs.contains(&u) {
            return Err(PleError::HeightTooLarge { element: u });
        }
    }
    let seq = m.seq();
    let is_min: Vec<bool> = seq.iter().map(|u| mins.contains(u)).collect();
    let a = is_min.iter().filter(|&&b| b).count() as u64;
    let b = (seq.len() as u64) - a;
    let mut r = 0u64;
    let mut q = 0u64;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            // position i sits below position j in M
            match (is_min[i], is_min[j]) {
                (true, false) => q += 1,  // minimal below maximal
                (false, true) => r += 1,  // maximal below minimal: reversed
                _ => {}
            }
        }
    }
    // Block-length: number of maximal-run -> minimal-run transitions.
    let mut s = 0usize;
    for w in is_min.windows(2) {
        if !w[0] && w[1] {
            s += 1;
        }
    }
    debug_assert_eq!(r + q, a * b);
    Ok(PleStats { a, b, r, q, s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ple(p: &Poset, seq: &[usize]) -> Ple {
        Ple::new(p, seq.to_vec()).unwrap()
    }

    #[test]
    fn is_ple_basics() {
        let chain = Poset::chain(2).unwrap();
        assert!(is_ple(&chain, &[0, 1]).unwrap());
        assert!(!is_ple(&chain, &[1, 0]).unwrap());
        assert!(matches!(is_ple(&chain, &[0, 0]), Err(PleError::RepeatedEntry { .. })));
        assert!(matches!(is_ple(&chain, &[7]), Err(PleError::BadIndex { .. })));
    }

    #[test]
    fn enumerate_counts() {
        let anti = Poset::antichain(2).unwrap();
        let ples = enumerate_ples(&anti, 8).unwrap();
        let seqs: Vec<&[usize]> = ples.iter().map(|p| p.seq()).collect();
        assert_eq!(seqs, vec![&[0][..], &[1], &[0, 1], &[1, 0]]);

        let chain = Poset::chain(2).unwrap();
        let ples = enumerate_ples(&chain, 8).unwrap();
        assert_eq!(ples.len(), 3);

        // every nonempty subset of a chain has exactly one extension
        let chain3 = Poset::chain(3).unwrap();
        assert_eq!(enumerate_ples(&chain3, 8).unwrap().len(), 7);

        assert!(matches!(
            enumerate_ples(&Poset::antichain(9).unwrap(), 8),
            Err(PleError::SizeLimit { .. })
        ));
    }

    #[test]
    fn signature_examples() {
        // S_2: elements a1=0 a2=1 b1=2 b2=3; M=[a1,b1]
        let s2 = Poset::standard_example(2).unwrap();
        let sig = coverage_signature(&s2, &ple(&s2, &[0, 2])).unwrap();
        assert_eq!(sig.kept, [(0, 0), (2, 2)].into_iter().collect());
        assert_eq!(sig.reversed, [(2, 0)].into_iter().collect());

        let chain = Poset::chain(2).unwrap();
        let sig = coverage_signature(&chain, &ple(&chain, &[0, 1])).unwrap();
        assert_eq!(sig.kept, [(0, 0), (1, 1), (0, 1)].into_iter().collect());
        assert!(sig.reversed.is_empty());

        let anti = Poset::antichain(2).unwrap();
        let sig = coverage_signature(&anti, &ple(&anti, &[1, 0])).unwrap();
        assert_eq!(sig.reversed, [(0, 1)].into_iter().collect());
    }

    /// Independent oracle: recompute kept/reversed with a naive double loop
    /// over all ordered pairs and positions.
    fn naive_signature(p: &Poset, m: &Ple) -> CoverageSignature {
        let pos = |u: usize| m.seq().iter().position(|&v| v == u);
        let mut kept = BTreeSet::new();
        let mut reversed = BTreeSet::new();
        for u in 0..p.len() {
            for v in 0..p.len() {
                if let (Some(pu), Some(pv)) = (pos(u), pos(v)) {
                    if p.le(u, v) && pu <= pv {
                        kept.insert((u, v));
                    }
                    if p.incomparable(u, v) && pu > pv {
                        reversed.insert((u, v));
                    }
                }
            }
        }
        CoverageSignature { kept, reversed }
    }

    #[test]
    fn signature_matches_naive_oracle() {
        for p in [
            Poset::standard_example(2).unwrap(),
            Poset::chain(3).unwrap(),
            Poset::antichain(3).unwrap(),
            Poset::from_relations(4, &[(0, 1), (0, 2)]).unwrap(),
            Poset::family(2, 3).unwrap(),
        ] {
            for m in enumerate_ples(&p, 8).unwrap() {
                let fast = coverage_signature(&p, &m).unwrap();
                assert_eq!(fast, naive_signature(&p, &m), "ple {:?}", m.seq());
                // reflexive kept pairs count the members
                let refl = fast.kept.iter().filter(|(u, v)| u == v).count();
                assert_eq!(refl, m.len());
            }
        }
    }

    #[test]
    fn bipartite_stats_examples() {
        // P(1,2;3): minimals 0,1,2; maximals 3={12},4={13},5={23}
        let f = Poset::family(2, 3).unwrap();
        let all_min_below = ple(&f, &[0, 1, 2, 3, 4, 5]);
        let st = bipartite_stats(&f, &all_min_below).unwrap();
        assert_eq!((st.a, st.b, st.r, st.q, st.s), (3, 3, 0, 9, 0));

        let all_max_below = ple(&f, &[3, 4, 5, 0, 1, 2]);
        let st = bipartite_stats(&f, &all_max_below).unwrap();
        assert_eq!((st.a, st.b, st.r, st.q, st.s), (3, 3, 9, 0, 1));

        // [{1,2} < 3 < {1,3}] -> indices [3, 2, 4]
        let mixed = ple(&f, &[3, 2, 4]);
        let st = bipartite_stats(&f, &mixed).unwrap();
        assert_eq!((st.a, st.b, st.r, st.q, st.s), (1, 2, 1, 1, 1));

        let chain3 = Poset::chain(3).unwrap();
        assert!(matches!(
            bipartite_stats(&chain3, &ple(&chain3, &[0])),
            Err(PleError::HeightTooLarge { .. })
        ));
    }

    #[test]
    fn stats_identity_on_enumerations() {
        for p in [Poset::family(2, 3).unwrap(), Poset::standard_example(3).unwrap()] {
            for m in enumerate_ples(&p, 8).unwrap() {
                let st = bipartite_stats(&p, &m).unwrap();
                assert_eq!(st.r + st.q, st.a * st.b);
            }
        }
    }

    #[test]
    fn ple_count_dual_invariant() {
        for p in [
            Poset::standard_example(2).unwrap(),
            Poset::family(2, 3).unwrap(),
            Poset::from_relations(4, &[(0, 1), (1, 2), (0, 3)]).unwrap(),
        ] {
            let n = enumerate_ples(&p, 8).unwrap().len();
            let nd = enumerate_ples(&p.dual(), 8).unwrap().len();
            assert_eq!(n, nd);
        }
    }
}
