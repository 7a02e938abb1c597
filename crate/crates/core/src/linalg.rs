//! Exact sparse linear algebra over the rationals.
//!
//! Every homological quantity in the crate reduces to ranks and kernels of
//! [`RatMatrix`] values. Ranks use fraction-free integer row elimination;
//! kernels use a sparse reduced row echelon form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps numerator and denominator
/// coprime with a positive denominator.
pub type Rat = BigRational;

/// Sparse vector indexed by basis position.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Adds `c * e_idx` to `v`, dropping the entry if it cancels.
pub fn axpy_entry(v: &mut SparseVec, idx: usize, c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(idx).or_insert_with(Rat::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&idx);
    }
}

/// Rational matrix stored as sparse rows. Stored entries are never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                write!(f, " ({r},{c})={v}")?;
            }
        }
        write!(f, " ]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix literal");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, rat(v));
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (&i, v) in col {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(&c).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        axpy_entry(&mut self.data[r], c, v);
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data.iter().enumerate().filter_map(|(r, row)| row.get(&c).map(|v| (r, v.clone()))).collect()
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Iterates the nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, Rat)> {
        self.entries().next().map(|(r, c, v)| (r, c, v.clone()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if s.is_zero() {
            return out;
        }
        for (r, row) in self.data.iter().enumerate() {
            out.data[r] = row.iter().map(|(&c, v)| (c, v * s)).collect();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Rat::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_to(r, c, v.clone());
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = SparseVec::new();
            for (&k, a) in row {
                for (&c, b) in &other.data[k] {
                    axpy_entry(&mut acc, c, a * b);
                }
            }
            out.data[r] = acc;
        }
        out
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Rat::zero();
            for (c, a) in row {
                if let Some(b) = v.get(c) {
                    acc += a * b;
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    /// Conjugates by diagonal sign matrices: `diag(row_signs) * self * diag(col_signs)`.
    pub fn sign_twisted(&self, row_signs: &[bool], col_signs: &[bool]) -> Self {
        let mut out = self.clone();
        for (r, row) in out.data.iter_mut().enumerate() {
            for (c, v) in row.iter_mut() {
                if row_signs[r] != col_signs[*c] {
                    *v = -v.clone();
                }
            }
        }
        out
    }

    /// Reindexes rows and columns: entry `(r, c)` moves to `(row_map[r], col_map[c])`.
    pub fn permuted(&self, row_map: &[usize], col_map: &[usize], rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for (r, c, v) in self.entries() {
            out.set(row_map[r], col_map[c], v.clone());
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (c, v) in &self.data[r] {
                if let Some(&j) = col_pos.get(c) {
                    out.data[i].insert(j, v.clone());
                }
            }
        }
        out
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for (r, c, v) in block.entries() {
            self.add_to(r0 + r, c0 + c, v.clone());
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.add_block(0, 0, self);
        out.add_block(0, self.cols, other);
        out
    }
}

/// Clears denominators row by row, giving integer rows with the same row space.
fn integer_rows(m: &RatMatrix) -> Vec<BTreeMap<usize, BigInt>> {
    m.data
        .iter()
        .filter(|row| !row.is_empty())
        .map(|row| {
            let lcm = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let mut out: BTreeMap<usize, BigInt> =
                row.iter().map(|(&c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
            remove_content(&mut out);
            out
        })
        .collect()
}

fn remove_content(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Exact rank by fraction-free elimination on integer rows.
///
/// Pivots are taken from the shortest remaining row, at the column of that row
/// which occurs in the fewest remaining rows (a Markowitz-style fill heuristic).
/// Row contents are divided out after every update, so entries stay small.
pub fn rank(m: &RatMatrix) -> usize {
    let mut rows = integer_rows(m);
    let mut rank = 0;
    while !rows.is_empty() {
        let mut col_count: BTreeMap<usize, usize> = BTreeMap::new();
        for row in &rows {
            for &c in row.keys() {
                *col_count.entry(c).or_default() += 1;
            }
        }
        let (pi, _) = rows.iter().enumerate().min_by_key(|(_, r)| r.len()).expect("nonempty");
        let pivot_row = rows.swap_remove(pi);
        let pc = *pivot_row.keys().min_by_key(|c| col_count[c]).expect("rows are nonempty");
        let pv = pivot_row[&pc].clone();
        rank += 1;
        let mut next = Vec::with_capacity(rows.len());
        for mut row in rows {
            if let Some(a) = row.get(&pc).cloned() {
                let mut combined: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (&c, v) in &row {
                    combined.insert(c, v * &pv);
                }
                for (&c, v) in &pivot_row {
                    let e = combined.entry(c).or_insert_with(BigInt::zero);
                    *e -= v * &a;
                }
                combined.retain(|_, v| !v.is_zero());
                row = combined;
                remove_content(&mut row);
            }
            if !row.is_empty() {
                next.push(row);
            }
        }
        rows = next;
    }
    rank
}

/// Sparse reduced row echelon form. Returns the nonzero rows (each with a
/// leading 1 at its pivot) and the pivot columns, sorted by pivot.
pub fn rref(m: &RatMatrix) -> (Vec<SparseVec>, Vec<usize>) {
    let mut pivots: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for row in &m.data {
        let mut r = row.clone();
        // Reduce against existing pivots in increasing column order.
        loop {
            let lead = r.iter().find(|(c, _)| pivots.contains_key(c)).map(|(&c, v)| (c, v.clone()));
            match lead {
                Some((c, v)) => {
                    let p = &pivots[&c];
                    for (&pc, pv) in p {
                        axpy_entry(&mut r, pc, -(&v * pv));
                    }
                }
                None => break,
            }
        }
        if let Some((&c, v)) = r.iter().next() {
            let inv = v.recip();
            for val in r.values_mut() {
                *val *= &inv;
            }
            // Back-substitute into existing rows.
            for prow in pivots.values_mut() {
                if let Some(f) = prow.get(&c).cloned() {
                    for (&rc, rv) in &r {
                        axpy_entry(prow, rc, -(&f * rv));
                    }
                }
            }
            pivots.insert(c, r);
        }
    }
    let cols: Vec<usize> = pivots.keys().copied().collect();
    (pivots.into_values().collect(), cols)
}

/// Exact basis of the null space, one vector per free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<SparseVec> {
    let (rows, pivot_cols) = rref(m);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = SparseVec::new();
            v.insert(free, Rat::one());
            for (row, &pc) in rows.iter().zip(&pivot_cols) {
                if let Some(x) = row.get(&free) {
                    v.insert(pc, -x.clone());
                }
            }
            v
        })
        .collect()
}

/// `dim ker(d_out) - rank(d_in)` for a composable square-zero pair
/// `d_in: C_{n+1} -> C_n`, `d_out: C_n -> C_{n-1}`.
pub fn homology_dim(d_in: &RatMatrix, d_out: &RatMatrix) -> Result<usize, Error> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::ShapeMismatch {
            context: "homology_dim".into(),
            expected: d_in.rows(),
            found: d_out.cols(),
        });
    }
    if let Some((row, col, _)) = d_out.mul(d_in).first_nonzero() {
        return Err(Error::CompositionNonzero { degree: None, row, col });
    }
    let nullity = d_out.cols() - rank(d_out);
    Ok(nullity - rank(d_in))
}

/// Whether `v` lies in the column span of `m`.
pub fn in_column_span(m: &RatMatrix, v: &SparseVec) -> bool {
    let col = RatMatrix::from_columns(m.rows(), std::slice::from_ref(v));
    rank(&m.hstack(&col)) == rank(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_proportional_rows() {
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn rank_of_zero_matrix() {
        assert_eq!(rank(&RatMatrix::zeros(3, 5)), 0);
    }

    #[test]
    fn rank_of_sl2_bracket_map() {
        // Columns are h^e, h^f, e^f in the basis (h, e, f):
        // [h,e] = 2e, [h,f] = -2f, [e,f] = h.
        let m = RatMatrix::from_i64(&[&[0, 0, 1], &[2, 0, 0], &[0, -2, 0]]);
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn rank_with_fractions() {
        let mut m = RatMatrix::zeros(2, 2);
        m.set(0, 0, ratio(1, 3));
        m.set(0, 1, ratio(1, 2));
        m.set(1, 0, ratio(2, 3));
        m.set(1, 1, rat(1));
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(kernel_basis(&RatMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_rank_one_2x2() {
        let m = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        // proportional to (2, -1)
        assert_eq!(&v[&0] * rat(-1), &v[&1] * rat(2));
        assert!(m.apply(v).is_empty());
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let m = RatMatrix::from_i64(&[&[1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Rat = v.values().cloned().sum();
            assert!(s.is_zero());
        }
        assert_eq!(rank(&RatMatrix::from_columns(3, &k)), 2);
    }

    #[test]
    fn homology_of_zero_maps() {
        let n = 4;
        assert_eq!(homology_dim(&RatMatrix::zeros(n, 0), &RatMatrix::zeros(0, n)).unwrap(), n);
    }

    #[test]
    fn homology_of_identity_in() {
        assert_eq!(homology_dim(&RatMatrix::identity(3), &RatMatrix::zeros(0, 3)).unwrap(), 0);
    }

    #[test]
    fn homology_of_exact_three_term() {
        // 0 -> Q -> Q^2 -> Q -> 0, middle term
        let d_in = RatMatrix::from_i64(&[&[1], &[0]]);
        let d_out = RatMatrix::from_i64(&[&[0, 1]]);
        assert_eq!(homology_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn homology_rejects_nonzero_composite() {
        let d = RatMatrix::identity(1);
        assert!(matches!(homology_dim(&d, &d), Err(Error::CompositionNonzero { .. })));
    }

    #[test]
    fn homology_rejects_shape_mismatch() {
        let err = homology_dim(&RatMatrix::zeros(2, 1), &RatMatrix::zeros(1, 3)).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
    }
}
