//! Integer-matrix index sets labelling every basis: row/column sums, the
//! corner-sum statistics `sigma_{i,j}`, the partial order they induce, and
//! enumeration of the finite sets used at desk scale.
//!
//! Matrix positions are 0-based in this API; text forms such as `E12` are 1-based.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::qring::RingSpec;

pub type Entries = SmallVec<[i64; 16]>;

/// An `n x n` integer matrix with nonnegative off-diagonal entries.
///
/// Diagonal entries may be negative (windows of the stabilized algebra).
/// The derived order is lexicographic on the row-major entry list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatIdx {
    n: usize,
    entries: Entries,
}

impl fmt::Debug for MatIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MatIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl MatIdx {
    /// Row-major constructor; rejects negative off-diagonal entries.
    pub fn new(n: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(entries.len(), n * n));
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && entries[i * n + j] < 0 {
                    return Err(Error::InvalidParams(format!(
                        "off-diagonal entry ({},{}) is negative",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self {
            n,
            entries: entries.iter().copied().collect(),
        })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParams("matrix must be square".into()));
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::new(n, &flat)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: SmallVec::from_elem(0, n * n),
        }
    }

    pub fn diag(d: &[i64]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.entries[i * d.len() + i] = *x;
        }
        m
    }

    /// `E_{i,j}` (0-based), scaled by `c`.
    pub fn unit(n: usize, i: usize, j: usize, c: i64) -> Self {
        let mut m = Self::zero(n);
        m.entries[i * n + j] = c;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, x: i64) {
        self.entries[i * self.n + j] = x;
    }

    #[inline]
    pub(crate) fn bump(&mut self, i: usize, j: usize, dx: i64) {
        self.entries[i * self.n + j] += dx;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn ro(&self) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).sum())
            .collect()
    }

    pub fn co(&self) -> Vec<i64> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j)).sum())
            .collect()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0))
    }

    /// The matrix with its diagonal zeroed.
    pub fn off_diag(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.set(i, i, 0);
        }
        m
    }

    pub fn with_diag(&self, d: &[i64]) -> Self {
        let mut m = self.clone();
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, *x);
        }
        m
    }

    /// Copy with `dx` added at `(i, j)`; no sign check.
    pub fn add_entry(&self, i: usize, j: usize, dx: i64) -> Self {
        let mut m = self.clone();
        m.bump(i, j, dx);
        m
    }

    pub fn add_diag(&self, d: &[i64]) -> Self {
        let mut m = self.clone();
        for (i, x) in d.iter().enumerate() {
            m.bump(i, i, *x);
        }
        m
    }

    pub fn max_off_diag(&self) -> i64 {
        let mut best = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    best = best.max(self.get(i, j));
                }
            }
        }
        best
    }

    pub fn min_diag(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).min().unwrap_or(0)
    }

    /// Sum of all entries.
    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Sum of off-diagonal entries.
    pub fn off_diag_total(&self) -> i64 {
        self.total() - self.diagonal().iter().sum::<i64>()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    /// Conjugation by the longest permutation: `a_{i,j} -> a_{n-1-i, n-1-j}`.
    pub fn reverse(&self) -> Self {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(n - 1 - i, n - 1 - j, self.get(i, j));
            }
        }
        m
    }

    /// `sigma_{i,j}` (0-based, `i != j`): the corner sum north-east of `(i,j)`
    /// for `i < j`, south-west for `i > j`.
    pub fn sigma_ij(&self, i: usize, j: usize) -> i64 {
        let n = self.n;
        let mut s = 0;
        match i.cmp(&j) {
            Ordering::Less => {
                for a in 0..=i {
                    for b in j..n {
                        s += self.get(a, b);
                    }
                }
            }
            Ordering::Greater => {
                for a in i..n {
                    for b in 0..=j {
                        s += self.get(a, b);
                    }
                }
            }
            Ordering::Equal => panic!("sigma_ij needs i != j"),
        }
        s
    }

    /// `sigma_i(A) = sum_{j<i} (a_{i,j} + a_{j,i})`.
    pub fn sigma_vec(&self) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..i).map(|j| self.get(i, j) + self.get(j, i)).sum())
            .collect()
    }

    /// The full `sigma_{i,j}` table, diagonal entries left at 0.
    pub fn sigma_table(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { 0 } else { self.sigma_ij(i, j) })
                    .collect()
            })
            .collect()
    }

    /// Sum of all `sigma_{i,j}`; strictly decreases along the order.
    pub fn sigma_weight(&self) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.sigma_ij(i, j);
                }
            }
        }
        s
    }

    /// Text form accepted by [`MatIdx::parse`], e.g. `2E12+E21+diag(1,0)`.
    pub fn compact(&self) -> String {
        let mut parts = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.get(i, j);
                if i == j || c == 0 {
                    continue;
                }
                let coeff = if c == 1 { String::new() } else { c.to_string() };
                let sep = if self.n >= 10 { "," } else { "" };
                parts.push(format!("{coeff}E{}{sep}{}", i + 1, j + 1));
            }
        }
        let d = self.diagonal();
        if parts.is_empty() || d.iter().any(|&x| x != 0) {
            let d: Vec<String> = d.iter().map(i64::to_string).collect();
            parts.push(format!("diag({})", d.join(",")));
        }
        parts.join("+")
    }

    /// Parses `E12`, `2E12+E21`, `diag(1,0)`, `E12+diag(0,1)` or a JSON row list.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("[[") {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            let m = Self::from_rows(&rows)?;
            if m.n != n {
                return Err(Error::SizeMismatch(m.n, n));
            }
            return Ok(m);
        }
        let mut m = Self::zero(n);
        for part in s.split('+') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            if let Some(inner) = part.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
                let d: Vec<i64> = inner
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Parse(e.to_string()))?;
                if d.len() != n {
                    return Err(Error::SizeMismatch(d.len(), n));
                }
                m = m.add_diag(&d);
                continue;
            }
            let pos = part
                .find('E')
                .ok_or_else(|| Error::Parse(format!("cannot parse term {part:?}")))?;
            let coeff: i64 = if pos == 0 {
                1
            } else {
                part[..pos]
                    .trim_end_matches('*')
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {part:?}")))?
            };
            let idx = &part[pos + 1..];
            let (i, j) = if let Some((a, b)) = idx.split_once(',') {
                (a.parse::<usize>(), b.parse::<usize>())
            } else if idx.len() == 2 {
                (idx[..1].parse::<usize>(), idx[1..].parse::<usize>())
            } else {
                return Err(Error::Parse(format!("bad index in {part:?}")));
            };
            let (i, j) = match (i, j) {
                (Ok(i), Ok(j)) if (1..=n).contains(&i) && (1..=n).contains(&j) => (i - 1, j - 1),
                _ => return Err(Error::Parse(format!("index out of range in {part:?}"))),
            };
            m.bump(i, j, coeff);
        }
        Self::new(n, m.entries())
    }
}

/// `ro(A)`.
pub fn ro(a: &MatIdx) -> Vec<i64> {
    a.ro()
}

/// `co(A)`.
pub fn co(a: &MatIdx) -> Vec<i64> {
    a.co()
}

/// The `sigma_{i,j}` table together with the vector `sigma(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaStats {
    pub table: Vec<Vec<i64>>,
    pub vector: Vec<i64>,
}

pub fn sigma_stats(a: &MatIdx) -> SigmaStats {
    SigmaStats {
        table: a.sigma_table(),
        vector: a.sigma_vec(),
    }
}

/// Outcome of comparing `B` against `A` in the corner-sum order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderRel {
    StrictlyLower,
    EqualStats,
    StrictlyHigher,
    Incomparable,
}

/// Compares `b` with `a`: `StrictlyLower` iff every `sigma_{i,j}(b) <= sigma_{i,j}(a)`
/// with at least one strict.
pub fn cmp_order(b: &MatIdx, a: &MatIdx) -> Result<OrderRel> {
    if b.n != a.n {
        return Err(Error::SizeMismatch(b.n, a.n));
    }
    let (mut le, mut ge) = (true, true);
    for i in 0..a.n {
        for j in 0..a.n {
            if i == j {
                continue;
            }
            let (x, y) = (b.sigma_ij(i, j), a.sigma_ij(i, j));
            le &= x <= y;
            ge &= x >= y;
        }
    }
    Ok(match (le, ge) {
        (true, true) => OrderRel::EqualStats,
        (true, false) => OrderRel::StrictlyLower,
        (false, true) => OrderRel::StrictlyHigher,
        (false, false) => OrderRel::Incomparable,
    })
}

/// A weak composition of `total` into `n` nonnegative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<i64>,
    pub total: i64,
}

impl Composition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|x| *x < 0) {
            return Err(Error::InvalidParams("composition parts must be >= 0".into()));
        }
        let total = parts.iter().sum();
        Ok(Self { parts, total })
    }
}

/// All weak compositions of `r` into `n` parts (`Lambda(n, r)`), lexicographic.
pub fn compositions(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if r < 0 {
        return out;
    }
    let mut cur = vec![0i64; n];
    fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let n = cur.len();
        if k + 1 == n {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[k] = x;
            rec(k + 1, left - x, cur, out);
        }
    }
    if n == 0 {
        if r == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, r, &mut cur, &mut out);
    out
}

/// All vectors in `[0, bound)^n`, lexicographic.
pub fn boxed_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * bound.max(0) as usize);
        for v in &out {
            for x in 0..bound {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Diagonal residues modulo `l' p^{h-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagResidue {
    pub residues: Vec<i64>,
    pub modulus: i64,
}

impl DiagResidue {
    pub fn new(values: &[i64], modulus: i64) -> Self {
        Self {
            residues: values.iter().map(|x| x.rem_euclid(modulus)).collect(),
            modulus,
        }
    }
}

/// Parameters of a level: off-diagonal bound `l p^{h-1}` and diagonal period `l' p^{h-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBounds {
    pub bound: i64,
    pub period: i64,
}

impl LevelBounds {
    pub fn of(ring: &RingSpec) -> Self {
        Self {
            bound: ring.bound(),
            period: ring.period(),
        }
    }
}

/// The finite index sets (or finite windows of infinite ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexSet {
    /// `Theta^{+-}(n)` with off-diagonal entries at most `max_entry`.
    ThetaPm { n: usize, max_entry: i64 },
    /// `Theta^{+-}(n,h)`: zero diagonal, off-diagonals `< bound`.
    ThetaPmLevel { n: usize, bound: i64 },
    /// `Theta(n,r)`: nonnegative matrices with entry sum `r`.
    ThetaNr { n: usize, r: i64 },
    /// `Theta~(n,h)` with diagonals confined to `window`.
    ThetaTildeLevel {
        n: usize,
        bound: i64,
        window: Option<(i64, i64)>,
    },
    /// `Theta~(n,h)_q`: off-diagonals `< bound`, diagonals as residues mod `period`.
    ThetaTildeQuot { n: usize, levels: LevelBounds },
    /// `Theta(n,r)_h`: `Theta(n,r)` with off-diagonals `< bound`.
    ThetaNrLevel { n: usize, r: i64, bound: i64 },
}

fn off_diag_patterns(n: usize, bound_incl: i64) -> Vec<MatIdx> {
    let slots = n * n - n;
    let vs = boxed_vectors(slots, bound_incl + 1);
    vs.into_iter()
        .map(|v| {
            let mut m = MatIdx::zero(n);
            let mut k = 0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        m.set(i, j, v[k]);
                        k += 1;
                    }
                }
            }
            m
        })
        .collect()
}

/// Exhaustive, duplicate-free enumeration in lexicographic entry order.
pub fn enumerate_set(kind: &IndexSet) -> Result<Vec<MatIdx>> {
    let mut out = match kind {
        IndexSet::ThetaPm { n, max_entry } => off_diag_patterns(*n, *max_entry),
        IndexSet::ThetaPmLevel { n, bound } => {
            if *bound < 1 {
                return Err(Error::InvalidParams("bound must be >= 1".into()));
            }
            off_diag_patterns(*n, bound - 1)
        }
        IndexSet::ThetaNr { n, r } => compositions(n * n, *r)
            .into_iter()
            .map(|v| MatIdx::new(*n, &v).unwrap())
            .collect(),
        IndexSet::ThetaTildeLevel { n, bound, window } => {
            let (lo, hi) = window.ok_or_else(|| {
                Error::InfiniteSet("Theta~(n,h) needs a diagonal window".into())
            })?;
            let mut out = Vec::new();
            let diags: Vec<Vec<i64>> = boxed_vectors(*n, hi - lo + 1)
                .into_iter()
                .map(|v| v.into_iter().map(|x| x + lo).collect())
                .collect();
            for a in off_diag_patterns(*n, bound - 1) {
                for d in &diags {
                    out.push(a.with_diag(d));
                }
            }
            out
        }
        IndexSet::ThetaTildeQuot { n, levels } => {
            let mut out = Vec::new();
            let diags = boxed_vectors(*n, levels.period);
            for a in off_diag_patterns(*n, levels.bound - 1) {
                for d in &diags {
                    out.push(a.with_diag(d));
                }
            }
            out
        }
        IndexSet::ThetaNrLevel { n, r, bound } => compositions(n * n, *r)
            .into_iter()
            .map(|v| MatIdx::new(*n, &v).unwrap())
            .filter(|m| m.max_off_diag() < *bound)
            .collect(),
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// Reduces the diagonal of `a` modulo the period; rejects off-diagonals `>= bound`.
pub fn pr(a: &MatIdx, levels: LevelBounds) -> Result<(MatIdx, DiagResidue)> {
    if a.max_off_diag() >= levels.bound {
        return Err(Error::BoundViolation(format!(
            "{a} has an off-diagonal entry >= {}",
            levels.bound
        )));
    }
    Ok((a.off_diag(), DiagResidue::new(&a.diagonal(), levels.period)))
}

/// The quotient symbol of `a` as a matrix whose diagonal lies in `[0, period)`.
pub fn pr_matrix(a: &MatIdx, period: i64) -> MatIdx {
    let d: Vec<i64> = a.diagonal().iter().map(|x| x.rem_euclid(period)).collect();
    a.with_diag(&d)
}

/// A representative of `(offdiag, residues)`.
///
/// Without a target the diagonal is the canonical residue in `[0, period)`.
/// With a row-sum target the diagonal is forced by the target, which must be
/// congruent to the residues.
pub fn lift(offdiag: &MatIdx, residues: &DiagResidue, row_sums: Option<&[i64]>) -> Result<MatIdx> {
    let n = offdiag.n();
    if residues.residues.len() != n {
        return Err(Error::SizeMismatch(residues.residues.len(), n));
    }
    let base = offdiag.off_diag();
    match row_sums {
        None => Ok(base.with_diag(&residues.residues)),
        Some(target) => {
            if target.len() != n {
                return Err(Error::SizeMismatch(target.len(), n));
            }
            let ro = base.ro();
            let d: Vec<i64> = (0..n).map(|i| target[i] - ro[i]).collect();
            for i in 0..n {
                if (d[i] - residues.residues[i]).rem_euclid(residues.modulus) != 0 {
                    return Err(Error::InvalidParams(format!(
                        "row-sum target {target:?} is incompatible with residues {:?}",
                        residues.residues
                    )));
                }
            }
            Ok(base.with_diag(&d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> MatIdx {
        MatIdx::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn row_and_column_sums() {
        let id = MatIdx::diag(&[1, 1]);
        assert_eq!((id.ro(), id.co()), (vec![1, 1], vec![1, 1]));
        let e12 = MatIdx::unit(2, 0, 1, 1);
        assert_eq!((e12.ro(), e12.co()), (vec![1, 0], vec![0, 1]));
        let a = m(&[&[0, 1], &[1, -1]]);
        assert_eq!((a.ro(), a.co()), (vec![1, 0], vec![1, 0]));
    }

    #[test]
    fn negative_off_diagonal_rejected() {
        assert!(MatIdx::new(2, &[0, -1, 0, 0]).is_err());
        assert!(MatIdx::new(2, &[-3, 1, 0, 0]).is_ok());
        assert!(MatIdx::new(2, &[0, 1, 0]).is_err());
    }

    #[test]
    fn sigma_examples() {
        let d = MatIdx::diag(&[3, -2]);
        assert_eq!(sigma_stats(&d).vector, vec![0, 0]);
        assert_eq!(d.sigma_ij(0, 1), 0);
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!((a.sigma_ij(0, 1), a.sigma_ij(1, 0)), (1, 1));
        assert_eq!(a.sigma_vec(), vec![0, 2]);
        let b = m(&[&[0, 2], &[1, 0]]);
        assert_eq!((b.sigma_ij(0, 1), b.sigma_ij(1, 0)), (2, 1));
        assert_eq!(b.sigma_vec(), vec![0, 3]);
    }

    #[test]
    fn order_examples() {
        let flip = m(&[&[0, 1], &[1, 0]]);
        let e12 = MatIdx::unit(2, 0, 1, 1);
        let e21 = MatIdx::unit(2, 1, 0, 1);
        assert_eq!(cmp_order(&MatIdx::diag(&[1, 1]), &flip).unwrap(), OrderRel::StrictlyLower);
        assert_eq!(cmp_order(&flip, &flip).unwrap(), OrderRel::EqualStats);
        assert_eq!(cmp_order(&e12, &e21).unwrap(), OrderRel::Incomparable);
        assert!(cmp_order(&e12, &MatIdx::zero(3)).is_err());
    }

    #[test]
    fn order_is_strict_partial_order() {
        for r in 0..=3 {
            let set = enumerate_set(&IndexSet::ThetaNr { n: 2, r }).unwrap();
            let lt = |x: &MatIdx, y: &MatIdx| cmp_order(x, y).unwrap() == OrderRel::StrictlyLower;
            for a in &set {
                assert!(!lt(a, a));
                for b in &set {
                    if !lt(a, b) {
                        continue;
                    }
                    assert!(!lt(b, a));
                    for c in &set {
                        if lt(b, c) {
                            assert!(lt(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_ignores_diagonal() {
        let a = m(&[&[2, 1, 0], &[3, -1, 2], &[0, 4, 5]]);
        let b = a.add_diag(&[7, -3, 11]);
        assert_eq!(a.sigma_table(), b.sigma_table());
    }

    #[test]
    fn cardinalities() {
        assert_eq!(enumerate_set(&IndexSet::ThetaNr { n: 2, r: 1 }).unwrap().len(), 4);
        assert_eq!(
            enumerate_set(&IndexSet::ThetaPmLevel { n: 2, bound: 3 }).unwrap().len(),
            9
        );
        let lv = LevelBounds { bound: 3, period: 3 };
        assert_eq!(
            enumerate_set(&IndexSet::ThetaTildeQuot { n: 2, levels: lv }).unwrap().len(),
            81
        );
        // |Theta(n,r)| = C(n^2 + r - 1, r)
        let binom = |a: u64, b: u64| (1..=b).fold(1u64, |acc, k| acc * (a - b + k) / k);
        for n in 1..=3usize {
            for r in 0..=4i64 {
                let got = enumerate_set(&IndexSet::ThetaNr { n, r }).unwrap().len() as u64;
                assert_eq!(got, binom((n * n) as u64 + r as u64 - 1, r as u64), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn infinite_set_needs_window() {
        let set = IndexSet::ThetaTildeLevel {
            n: 2,
            bound: 3,
            window: None,
        };
        assert!(matches!(enumerate_set(&set), Err(Error::InfiniteSet(_))));
        let set = IndexSet::ThetaTildeLevel {
            n: 2,
            bound: 3,
            window: Some((-1, 1)),
        };
        assert_eq!(enumerate_set(&set).unwrap().len(), 81);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let set = enumerate_set(&IndexSet::ThetaNr { n: 2, r: 2 }).unwrap();
        let mut sorted = set.clone();
        sorted.sort_by(|a, b| a.entries().cmp(b.entries()));
        assert_eq!(set, sorted);
    }

    #[test]
    fn pr_and_lift() {
        let lv = LevelBounds { bound: 3, period: 3 };
        let (a, r) = pr(&MatIdx::diag(&[3, -3]), lv).unwrap();
        assert!(a.is_diagonal());
        assert_eq!(r.residues, vec![0, 0]);
        assert_eq!(pr(&MatIdx::diag(&[4, 1]), lv).unwrap().1.residues, vec![1, 1]);
        let x = MatIdx::unit(2, 0, 1, 1).add_diag(&[-1, 5]);
        let (a, r) = pr(&x, lv).unwrap();
        assert_eq!(a, MatIdx::unit(2, 0, 1, 1));
        assert_eq!(r.residues, vec![2, 2]);
        assert!(pr(&MatIdx::unit(2, 0, 1, 3), lv).is_err());

        let res = DiagResidue::new(&[1, 2], 3);
        assert_eq!(lift(&MatIdx::zero(2), &res, None).unwrap(), MatIdx::diag(&[1, 2]));
        // forced row sums pick a shifted representative
        let l = lift(&MatIdx::zero(2), &res, Some(&[4, -1])).unwrap();
        assert_eq!(l, MatIdx::diag(&[4, -1]));
        assert!(lift(&MatIdx::zero(2), &res, Some(&[0, 0])).is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(MatIdx::parse("E12", 2).unwrap(), MatIdx::unit(2, 0, 1, 1));
        assert_eq!(
            MatIdx::parse("2E12+E21", 2).unwrap(),
            m(&[&[0, 2], &[1, 0]])
        );
        assert_eq!(
            MatIdx::parse("E12+diag(0,1)", 2).unwrap(),
            m(&[&[0, 1], &[0, 1]])
        );
        assert_eq!(MatIdx::parse("[[0,1],[1,-1]]", 2).unwrap(), m(&[&[0, 1], &[1, -1]]));
        assert!(MatIdx::parse("E13", 2).is_err());
    }
}
