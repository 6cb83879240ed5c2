//! Exact linear algebra: rank, span membership with certificates, and
//! unitriangular inversion.
//!
//! Field computations run over any [`Field`]. Ranks over the fraction field of
//! `Z[v, v^-1]` use fraction-free (Bareiss) elimination with exact division.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::indices::MatIdx;
use crate::qring::{Field, LaurentPoly, Ring};

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Matrices at or above this size use sparse elimination.
pub const DENSE_LIMIT: usize = 200;

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    ncols: usize,
    rows: Vec<SparseVec<E>>,
}

/// Sorts, merges duplicate columns and drops zeros.
pub fn normalize<R: Ring>(ring: &R, mut v: Vec<(usize, R::Elem)>) -> SparseVec<R::Elem> {
    v.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec<R::Elem> = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some((lc, lx)) if *lc == c => *lx = ring.add(lx, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !ring.is_zero(x));
    out
}

impl<E: Clone> SparseMatrix<E> {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<E>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn push_row<R: Ring<Elem = E>>(&mut self, ring: &R, row: Vec<(usize, E)>) -> Result<()> {
        if let Some((c, _)) = row.iter().find(|(c, _)| *c >= self.ncols) {
            return Err(Error::Dimension(format!("column {c} >= {}", self.ncols)));
        }
        self.rows.push(normalize(ring, row));
        Ok(())
    }

    pub fn from_dense<R: Ring<Elem = E>>(ring: &R, dense: &[Vec<E>]) -> Result<Self> {
        let ncols = dense.first().map_or(0, Vec::len);
        let mut m = Self::new(ncols);
        for r in dense {
            if r.len() != ncols {
                return Err(Error::Dimension("ragged dense matrix".into()));
            }
            m.push_row(ring, r.iter().cloned().enumerate().collect())?;
        }
        Ok(m)
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![ring.zero(); self.ncols];
                for (c, x) in r {
                    d[*c] = x.clone();
                }
                d
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec<E>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (c, x) in r {
                cols[*c].push((i, x.clone()));
            }
        }
        Self {
            ncols: self.rows.len(),
            rows: cols,
        }
    }

    /// Triplet dump: a `% rows cols nnz` header, then `row col value` lines, 1-based.
    pub fn to_triplets<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "% {} {} {}", self.nrows(), self.ncols, self.nnz());
        for (i, r) in self.rows.iter().enumerate() {
            for (c, x) in r {
                let _ = writeln!(s, "{} {} {}", i + 1, c + 1, ring.format_elem(x));
            }
        }
        s
    }
}

/// `acc += c * v` on sparse vectors.
fn axpy<R: Ring>(ring: &R, acc: &mut BTreeMap<usize, R::Elem>, c: &R::Elem, v: &[(usize, R::Elem)]) {
    for (j, x) in v {
        let t = ring.mul(c, x);
        match acc.get_mut(j) {
            Some(y) => {
                *y = ring.add(y, &t);
                if ring.is_zero(y) {
                    acc.remove(j);
                }
            }
            None => {
                if !ring.is_zero(&t) {
                    acc.insert(*j, t);
                }
            }
        }
    }
}

/// Incrementally built row echelon form with optional combination tracking.
///
/// Every stored row has a distinct pivot column normalized to 1; when tracking,
/// each stored row also remembers its expression in the inserted rows.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    pivots: BTreeMap<usize, usize>,
    rows: Vec<SparseVec<F::Elem>>,
    combos: Vec<SparseVec<F::Elem>>,
    track: bool,
    inserted: usize,
}

/// Outcome of reducing a vector against an echelon form.
pub struct Reduction<E> {
    pub remainder: SparseVec<E>,
    /// `v - remainder = sum coords[k] * (inserted row k)`, when tracking.
    pub coords: SparseVec<E>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ncols: usize, track: bool) -> Self {
        Self {
            field: field.clone(),
            ncols,
            pivots: BTreeMap::new(),
            rows: Vec::new(),
            combos: Vec::new(),
            track,
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> Reduction<F::Elem> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = v
            .iter()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(c, x)| (*c, x.clone()))
            .collect();
        let mut coords: BTreeMap<usize, F::Elem> = BTreeMap::new();
        let mut cursor = 0usize;
        while let Some((&c, x)) = acc.range(cursor..).next() {
            if let Some(&k) = self.pivots.get(&c) {
                let factor = f.neg(x);
                axpy(f, &mut acc, &factor, &self.rows[k]);
                if self.track {
                    axpy(f, &mut coords, &f.neg(&factor), &self.combos[k]);
                }
            }
            cursor = c + 1;
        }
        Reduction {
            remainder: acc.into_iter().collect(),
            coords: coords.into_iter().collect(),
        }
    }

    /// Inserts a row; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> bool {
        let f = self.field.clone();
        let idx = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let Some((pc, px)) = red.remainder.first().cloned() else {
            return false;
        };
        let inv = f.inv(&px).expect("nonzero pivot is invertible");
        let row: SparseVec<F::Elem> = red
            .remainder
            .iter()
            .map(|(c, x)| (*c, f.mul(&inv, x)))
            .collect();
        if self.track {
            // row = inv * (v - sum coords * inserted)
            let mut combo: BTreeMap<usize, F::Elem> = BTreeMap::new();
            combo.insert(idx, inv.clone());
            let neg_inv = f.neg(&inv);
            axpy(&f, &mut combo, &neg_inv, &red.coords);
            self.combos.push(combo.into_iter().collect());
        }
        self.pivots.insert(pc, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).remainder.is_empty()
    }
}

fn dense_rank<F: Field>(field: &F, mut m: Vec<Vec<F::Elem>>) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !field.is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][c]).expect("nonzero pivot is invertible");
        let pivot_row: Vec<F::Elem> = m[rank].iter().map(|x| field.mul(&inv, x)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                let t = field.mul(&factor, &pivot_row[j]);
                row[j] = field.sub(&row[j], &t);
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Exact rank over a field; dense below [`DENSE_LIMIT`], sparse above.
pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    if m.nrows().max(m.ncols()) < DENSE_LIMIT {
        return dense_rank(field, m.to_dense(field));
    }
    // Markowitz-style: sparsest rows pivot first, limiting fill-in.
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by_key(|&i| m.rows[i].len());
    let mut ech = Echelon::new(field, m.ncols(), false);
    for i in order {
        ech.insert(&m.rows[i]);
        if ech.rank() == m.ncols() {
            break;
        }
    }
    ech.rank()
}

/// Rank of a set of sparse vectors.
pub fn rank_of_vectors<F: Field>(field: &F, ncols: usize, vs: &[SparseVec<F::Elem>]) -> usize {
    let mut m = SparseMatrix::new(ncols);
    m.rows = vs.to_vec();
    rank(field, &m)
}

/// Span membership. On success returns coordinates `c` with `v = sum c_k basis_k`.
pub fn in_span<F: Field>(
    field: &F,
    v: &[(usize, F::Elem)],
    basis: &SparseMatrix<F::Elem>,
) -> Result<Option<Vec<F::Elem>>> {
    if let Some((c, _)) = v.iter().find(|(c, _)| *c >= basis.ncols()) {
        return Err(Error::Dimension(format!(
            "vector column {c} outside ambient dimension {}",
            basis.ncols()
        )));
    }
    let mut ech = Echelon::new(field, basis.ncols(), true);
    for r in basis.rows() {
        ech.insert(r);
    }
    let red = ech.reduce(v);
    if !red.remainder.is_empty() {
        return Ok(None);
    }
    let mut coords = vec![field.zero(); basis.nrows()];
    for (k, x) in red.coords {
        coords[k] = x;
    }
    Ok(Some(coords))
}

/// `sum coords_k * rows_k`.
pub fn combine<R: Ring>(ring: &R, coords: &[R::Elem], rows: &[SparseVec<R::Elem>]) -> SparseVec<R::Elem> {
    let mut acc = BTreeMap::new();
    for (c, r) in coords.iter().zip(rows) {
        if !ring.is_zero(c) {
            axpy(ring, &mut acc, c, r);
        }
    }
    acc.into_iter().collect()
}

/// Inverts a unitriangular change of basis.
///
/// Row `i` expresses the `i`-th monomial in the basis listed by `order`
/// (lower elements first): entry `i` must be 1 and every other entry must sit
/// at a position `j < i`. Returns rows of the inverse in the same convention.
pub fn solve_unitriangular<R: Ring>(
    ring: &R,
    order: &[MatIdx],
    rows: &[SparseVec<R::Elem>],
) -> Result<Vec<SparseVec<R::Elem>>> {
    if order.len() != rows.len() {
        return Err(Error::Dimension(format!(
            "{} basis labels for {} rows",
            order.len(),
            rows.len()
        )));
    }
    let mut inv: Vec<SparseVec<R::Elem>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let mut diag_ok = false;
        let mut acc: BTreeMap<usize, R::Elem> = BTreeMap::new();
        acc.insert(i, ring.one());
        for (j, x) in row {
            if *j == i {
                diag_ok = ring.is_one(x);
                if !diag_ok {
                    return Err(Error::NotUnitriangular(format!(
                        "diagonal entry {} at {}",
                        ring.format_elem(x),
                        order[i]
                    )));
                }
            } else if *j > i {
                return Err(Error::NotUnitriangular(format!(
                    "{} has a term at the higher index {}",
                    order[i], order[*j]
                )));
            } else {
                axpy(ring, &mut acc, &ring.neg(x), &inv[*j]);
            }
        }
        if !diag_ok {
            return Err(Error::NotUnitriangular(format!("missing diagonal at {}", order[i])));
        }
        inv.push(acc.into_iter().collect());
    }
    Ok(inv)
}

/// Rank over `Q(v)` of a dense matrix over `Z[v, v^-1]` by Bareiss elimination.
pub fn rank_generic(rows: &[Vec<LaurentPoly>]) -> usize {
    let mut m: Vec<Vec<LaurentPoly>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = LaurentPoly::one();
    let mut rank = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for r in rank + 1..nrows {
            let a = m[r][c].clone();
            for j in c..ncols {
                let num = &(&piv * &m[r][j]) - &(&a * &m[rank][j]);
                m[r][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact over Z[v, v^-1]");
            }
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Rank over `Q(v)` of sparse Laurent vectors.
pub fn rank_generic_sparse(ncols: usize, vs: &[SparseVec<LaurentPoly>]) -> usize {
    let dense: Vec<Vec<LaurentPoly>> = vs
        .iter()
        .map(|r| {
            let mut d = vec![LaurentPoly::zero(); ncols];
            for (c, x) in r {
                d[*c] = x.clone();
            }
            d
        })
        .collect();
    rank_generic(&dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::{make_ring, Generic, RingMode, RingSpec};

    fn f4() -> RingSpec {
        make_ring(3, 2, 1, RingMode::Auto).unwrap()
    }

    fn identity<F: Field>(f: &F, n: usize) -> SparseMatrix<F::Elem> {
        let mut m = SparseMatrix::new(n);
        for i in 0..n {
            m.push_row(f, vec![(i, f.one())]).unwrap();
        }
        m
    }

    #[test]
    fn trivial_ranks() {
        let k = f4();
        assert_eq!(rank(&k, &identity(&k, 5)), 5);
        let z = SparseMatrix::from_dense(&k, &vec![vec![k.zero(); 4]; 3]).unwrap();
        assert_eq!(rank(&k, &z), 0);
        assert_eq!(rank(&k, &identity(&k, 250)), 250);
    }

    #[test]
    fn dependent_rows_over_f4() {
        let k = f4();
        let e = k.eps();
        let r1 = vec![k.one(), e.clone(), k.zero()];
        let r2: Vec<_> = r1.iter().map(|x| k.mul(&e, x)).collect();
        let r3 = vec![k.zero(), k.one(), k.one()];
        let m = SparseMatrix::from_dense(&k, &[r1, r2, r3]).unwrap();
        assert_eq!(rank(&k, &m), 2);
        assert_eq!(rank(&k, &m.transpose()), 2);
    }

    #[test]
    fn span_certificates() {
        let k = f4();
        let id = identity(&k, 4);
        let c = in_span(&k, &[(0, k.one())], &id).unwrap().unwrap();
        assert_eq!(c[0], k.one());
        assert!(c[1..].iter().all(|x| k.is_zero(x)));
        let c = in_span(&k, &[], &id).unwrap().unwrap();
        assert!(c.iter().all(|x| k.is_zero(x)));
        let mut m = SparseMatrix::new(3);
        m.push_row(&k, vec![(0, k.one()), (1, k.one())]).unwrap();
        m.push_row(&k, vec![(1, k.one()), (2, k.eps())]).unwrap();
        let v = vec![(0, k.one()), (2, k.eps())];
        let c = in_span(&k, &v, &m).unwrap().unwrap();
        assert_eq!(combine(&k, &c, m.rows()), v);
        assert!(in_span(&k, &[(2, k.one())], &m).unwrap().is_none());
        assert!(in_span(&k, &[(7, k.one())], &m).is_err());
    }

    #[test]
    fn unitriangular_inverse() {
        let g = Generic::new();
        let order = vec![MatIdx::diag(&[1, 1]), MatIdx::parse("E12+E21", 2).unwrap()];
        let rows = vec![
            vec![(0, LaurentPoly::one())],
            vec![(0, LaurentPoly::v_pow(-1)), (1, LaurentPoly::one())],
        ];
        let inv = solve_unitriangular(&g, &order, &rows).unwrap();
        assert_eq!(inv[1], vec![(0, -LaurentPoly::v_pow(-1)), (1, LaurentPoly::one())]);
        let bad = vec![vec![(0, LaurentPoly::one())], vec![(1, LaurentPoly::v_pow(1))]];
        assert!(matches!(
            solve_unitriangular(&g, &order, &bad),
            Err(Error::NotUnitriangular(_))
        ));
        let above = vec![vec![(0, LaurentPoly::one()), (1, LaurentPoly::one())], rows[1].clone()];
        assert!(solve_unitriangular(&g, &order, &above).is_err());
    }

    #[test]
    fn generic_rank() {
        let v = LaurentPoly::v_pow(1);
        let one = LaurentPoly::one();
        let rows = vec![
            vec![one.clone(), v.clone()],
            vec![v.clone(), &v * &v],
        ];
        assert_eq!(rank_generic(&rows), 1);
        let rows = vec![
            vec![one.clone(), v.clone(), LaurentPoly::zero()],
            vec![v.clone(), one.clone(), one.clone()],
            vec![&one + &v, &one + &v, one.clone()],
        ];
        assert_eq!(rank_generic(&rows), 2);
    }

    #[test]
    fn triplet_dump() {
        let k = f4();
        let m = identity(&k, 2);
        assert_eq!(m.to_triplets(&k), "% 2 2 2\n1 1 1\n2 2 1\n");
    }
}
