//! Finite posets as dense strict-order matrices, canonical constructors,
//! and a brute-force classical-dimension search for small instances.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("relation contains a cycle through element {element}")]
    Cycle { element: usize },
    #[error("parameter out of bounds: {0}")]
    Parameter(String),
    #[error("poset has {n} elements, above the size limit {cap}")]
    SizeLimit { n: usize, cap: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A finite poset on elements `0..n` with `lt[u][v]` iff `u < v` strictly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    lt: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Transitive closure of an arbitrary acyclic relation.
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let mut lt = vec![false; n * n];
        for &(u, v) in pairs {
            if u >= n {
                return Err(PosetError::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(PosetError::IndexOutOfRange { index: v, n });
            }
            lt[u * n + v] = true;
        }
        // Floyd-Warshall closure.
        for k in 0..n {
            for u in 0..n {
                if lt[u * n + k] {
                    for v in 0..n {
                        if lt[k * n + v] {
                            lt[u * n + v] = true;
                        }
                    }
                }
            }
        }
        for u in 0..n {
            if lt[u * n + u] {
                return Err(PosetError::Cycle { element: u });
            }
        }
        // Antisymmetry follows: u<v and v<u would close to u<u.
        Ok(Poset { n, lt, labels: None })
    }

    pub fn chain(k: usize) -> Result<Poset, PosetError> {
        if k < 1 {
            return Err(PosetError::Parameter("chain needs k >= 1".into()));
        }
        let pairs: Vec<_> = (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Poset::from_relations(k, &pairs)
    }

    pub fn antichain(k: usize) -> Result<Poset, PosetError> {
        if k < 1 {
            return Err(PosetError::Parameter("antichain needs k >= 1".into()));
        }
        Poset::from_relations(k, &[])
    }

    /// The standard example S_n: minimals a_1..a_n are 0..n, maximals
    /// b_1..b_n are n..2n, and a_i < b_j iff i != j.
    pub fn standard_example(n: usize) -> Result<Poset, PosetError> {
        if n < 2 {
            return Err(PosetError::Parameter("standard_example needs n >= 2".into()));
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    pairs.push((i, n + j));
                }
            }
        }
        let mut p = Poset::from_relations(2 * n, &pairs)?;
        let labels = (0..n)
            .map(|i| format!("a{}", i + 1))
            .chain((0..n).map(|j| format!("b{}", j + 1)))
            .collect();
        p.labels = Some(labels);
        Ok(p)
    }

    /// P(1,d;n): singletons 0..n below the d-subsets of {0..n-1} (listed in
    /// lexicographic order after the singletons), ordered by inclusion.
    pub fn family(d: usize, n: usize) -> Result<Poset, PosetError> {
        if !(2 <= d && d < n) {
            return Err(PosetError::Parameter(format!("family needs 2 <= d < n, got d={d} n={n}")));
        }
        let subsets = d_subsets(n, d);
        let mut pairs = Vec::new();
        for (i, s) in subsets.iter().enumerate() {
            for &u in s {
                pairs.push((u, n + i));
            }
        }
        let mut p = Poset::from_relations(n + subsets.len(), &pairs)?;
        let labels = (0..n)
            .map(|u| format!("{}", u + 1))
            .chain(subsets.iter().map(|s| {
                s.iter().map(|u| format!("{}", u + 1)).collect::<Vec<_>>().join("")
            }))
            .collect();
        p.labels = Some(labels);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        self.lt[u * self.n + v]
    }

    pub fn le(&self, u: usize, v: usize) -> bool {
        u == v || self.lt(u, v)
    }

    pub fn incomparable(&self, u: usize, v: usize) -> bool {
        u != v && !self.lt(u, v) && !self.lt(v, u)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, u: usize) -> String {
        match &self.labels {
            Some(ls) => ls[u].clone(),
            None => u.to_string(),
        }
    }

    pub fn dual(&self) -> Poset {
        let mut lt = vec![false; self.n * self.n];
        for u in 0..self.n {
            for v in 0..self.n {
                lt[v * self.n + u] = self.lt[u * self.n + v];
            }
        }
        Poset { n: self.n, lt, labels: self.labels.clone() }
    }

    /// All ordered pairs (u,v), u != v, with u and v incomparable; both
    /// orientations are listed.
    pub fn incomparable_ordered_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.incomparable(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All ordered pairs (u,v) with u < v strictly.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.lt(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn minimals(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| (0..self.n).all(|u| !self.lt(u, v))).collect()
    }

    pub fn maximals(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| (0..self.n).all(|v| !self.lt(u, v))).collect()
    }

    /// Induced subposet on `keep` (which must be distinct, in-range
    /// indices); element i of the result corresponds to keep[i].
    pub fn induced(&self, keep: &[usize]) -> Result<Poset, PosetError> {
        for &u in keep {
            if u >= self.n {
                return Err(PosetError::IndexOutOfRange { index: u, n: self.n });
            }
        }
        let m = keep.len();
        let mut lt = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                lt[i * m + j] = self.lt(keep[i], keep[j]);
            }
        }
        let labels = self.labels.as_ref().map(|ls| keep.iter().map(|&u| ls[u].clone()).collect());
        Ok(Poset { n: m, lt, labels })
    }

    pub fn removed(&self, x: usize) -> Result<Poset, PosetError> {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != x).collect();
        self.induced(&keep)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| u == v || !self.incomparable(u, v)))
    }

    /// All linear extensions, as sequences from bottom to top.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        crate::ple::linear_extensions_of(self, &all)
    }

    /// Least t such that some t linear extensions intersect to this poset.
    /// Exhaustive set-cover search over reversal signatures; intended for
    /// n <= cap only (default cap 7).
    pub fn dimension_brute(&self, cap: usize) -> Result<usize, PosetError> {
        if self.n > cap {
            return Err(PosetError::SizeLimit { n: self.n, cap });
        }
        if self.n == 0 {
            return Ok(1);
        }
        let inc = self.incomparable_ordered_pairs();
        if inc.is_empty() {
            return Ok(1);
        }
        let pair_index: std::collections::HashMap<(usize, usize), usize> =
            inc.iter().copied().enumerate().map(|(i, p)| (p, i)).collect();
        // Signature of L: bitset of incomparable (u,v) with u above v in L.
        let mut signatures: Vec<u64> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        assert!(inc.len() <= 64, "n <= 7 keeps incomparable pairs within 64");
        for ext in self.linear_extensions() {
            let mut pos = vec![0usize; self.n];
            for (i, &v) in ext.iter().enumerate() {
                pos[v] = i;
            }
            let mut sig = 0u64;
            for (&(u, v), &i) in &pair_index {
                if pos[u] > pos[v] {
                    sig |= 1 << i;
                }
            }
            if seen.insert(sig) {
                signatures.push(sig);
            }
        }
        let full: u64 = if inc.len() == 64 { !0 } else { (1 << inc.len()) - 1 };
        for t in 1..=signatures.len() {
            if cover_search(&signatures, full, t) {
                return Ok(t);
            }
        }
        unreachable!("every orientation of an incomparable pair is reversed by some linear extension");
    }

    /// Parse the poset text format: comment lines start with '#';
    /// `elements: n`, optional `labels: ...`, then cover lines `i < j`.
    pub fn parse(text: &str) -> Result<Poset, PosetError> {
        let mut n: Option<usize> = None;
        let mut labels: Option<Vec<String>> = None;
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("elements:") {
                let count = rest.trim().parse::<usize>().map_err(|e| PosetError::Parse {
                    line: lineno,
                    message: format!("bad element count: {e}"),
                })?;
                n = Some(count);
            } else if let Some(rest) = line.strip_prefix("labels:") {
                labels = Some(rest.split_whitespace().map(|s| s.to_string()).collect());
            } else if let Some((a, b)) = line.split_once('<') {
                let parse_idx = |s: &str| {
                    s.trim().parse::<usize>().map_err(|e| PosetError::Parse {
                        line: lineno,
                        message: format!("bad index: {e}"),
                    })
                };
                pairs.push((parse_idx(a)?, parse_idx(b)?));
            } else {
                return Err(PosetError::Parse {
                    line: lineno,
                    message: format!("unrecognized line: {line:?}"),
                });
            }
        }
        let n = n.ok_or(PosetError::Parse { line: 0, message: "missing `elements: n` line".into() })?;
        let mut p = Poset::from_relations(n, &pairs)?;
        if let Some(ls) = labels {
            if ls.len() != n {
                return Err(PosetError::Parse {
                    line: 0,
                    message: format!("{} labels for {} elements", ls.len(), n),
                });
            }
            p.labels = Some(ls);
        }
        Ok(p)
    }

    /// Render in the same text format `parse` accepts (covers only).
    pub fn to_text(&self) -> String {
        let mut out = format!("elements: {}\n", self.n);
        if let Some(ls) = &self.labels {
            out.push_str(&format!("labels: {}\n", ls.join(" ")));
        }
        for (u, v) in self.cover_pairs() {
            out.push_str(&format!("{u} < {v}\n"));
        }
        out
    }

    /// Covering pairs: u < v with no w strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.lt(u, v) && !(0..self.n).any(|w| self.lt(u, w) && self.lt(w, v)) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

fn cover_search(signatures: &[u64], remaining: u64, budget: usize) -> bool {
    if remaining == 0 {
        return true;
    }
    if budget == 0 {
        return false;
    }
    // Branch on the lowest uncovered pair; only signatures covering it help.
    let pair = remaining.trailing_zeros();
    for &sig in signatures {
        if sig & (1 << pair) != 0 && cover_search(signatures, remaining & !sig, budget - 1) {
            return true;
        }
    }
    false
}

/// All d-element subsets of {0..n-1} in lexicographic order.
pub fn d_subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, d, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, d, 0, &mut cur, &mut out);
    out
}
