//! Finite chain complexes of rational vector spaces, homologically graded.
//!
//! Conventions: `(C[k])_n = C_{n-k}` with differential `(-1)^k d`; the tensor
//! differential is `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`; the dual has
//! `(C^∨)_n = (C_{-n})^∨` with the transposed differential.

use std::collections::BTreeMap;

use crate::error::{Error, Violation};
use crate::linalg::{homology_dim, sign, RatMatrix};

/// Block layout of a graded tensor product: for every output key, the
/// ordered list of `(left key, right key)` blocks and their offsets.
///
/// Blocks inside one output key are ordered by `(left key, right key)`, and
/// within a block the basis is `left index` major.
#[derive(Debug, Clone)]
pub(crate) struct TensorLayout<K: Ord + Copy> {
    pub dims: BTreeMap<K, usize>,
    blocks: BTreeMap<(K, K), (K, usize)>,
    left_dims: BTreeMap<K, usize>,
    right_dims: BTreeMap<K, usize>,
}

impl<K: Ord + Copy> TensorLayout<K> {
    pub fn new(left: &BTreeMap<K, usize>, right: &BTreeMap<K, usize>, add: impl Fn(K, K) -> K) -> Self {
        let mut dims: BTreeMap<K, usize> = BTreeMap::new();
        let mut blocks = BTreeMap::new();
        for (&kl, &dl) in left {
            for (&kr, &dr) in right {
                if dl == 0 || dr == 0 {
                    continue;
                }
                let k = add(kl, kr);
                let off = dims.entry(k).or_insert(0);
                blocks.insert((kl, kr), (k, *off));
                *off += dl * dr;
            }
        }
        TensorLayout { dims, blocks, left_dims: left.clone(), right_dims: right.clone() }
    }

    pub fn position(&self, kl: K, kr: K, i: usize, j: usize) -> Option<(K, usize)> {
        let (k, off) = *self.blocks.get(&(kl, kr))?;
        Some((k, off + i * self.right_dims[&kr] + j))
    }

    pub fn blocks(&self) -> impl Iterator<Item = (K, K, K, usize)> + '_ {
        self.blocks.iter().map(|(&(kl, kr), &(k, off))| (kl, kr, k, off))
    }

    /// Extends odd operators `op_l` and `op_r` to the tensor product by the
    /// Koszul rule `op(x⊗y) = op(x)⊗y + (-1)^{|x|} x⊗op(y)`.
    ///
    /// Each operator is given as a target-key function and its matrices by
    /// source key; missing matrices are zero.
    pub fn odd_operator(
        &self,
        target: impl Fn(K) -> K,
        parity: impl Fn(K) -> i64,
        op_l: &BTreeMap<K, RatMatrix>,
        op_r: &BTreeMap<K, RatMatrix>,
    ) -> BTreeMap<K, RatMatrix> {
        let mut out: BTreeMap<K, RatMatrix> = BTreeMap::new();
        for (kl, kr, k, off) in self.blocks() {
            let tk = target(k);
            let Some(&tdim) = self.dims.get(&tk) else { continue };
            let sdim = self.dims[&k];
            let dr = self.right_dims[&kr];
            if let Some(a) = op_l.get(&kl) {
                let tl = target(kl);
                for (i2, i, v) in a.entries() {
                    for j in 0..dr {
                        let (_, col_t) = self.position(tl, kr, i2, j).expect("target block exists");
                        out.entry(k).or_insert_with(|| RatMatrix::zeros(tdim, sdim)).add_to(
                            col_t,
                            off + i * dr + j,
                            v.clone(),
                        );
                    }
                }
            }
            if let Some(b) = op_r.get(&kr) {
                let tr = target(kr);
                let s = sign(parity(kl));
                let ldim = self.left_dims[&kl];
                for (j2, j, v) in b.entries() {
                    for i in 0..ldim {
                        let (_, col_t) = self.position(kl, tr, i, j2).expect("target block exists");
                        out.entry(k).or_insert_with(|| RatMatrix::zeros(tdim, sdim)).add_to(
                            col_t,
                            off + i * dr + j,
                            v * &s,
                        );
                    }
                }
            }
        }
        out.retain(|_, m| !m.is_zero());
        out
    }
}

/// A bounded chain complex of finite-dimensional rational vector spaces.
///
/// `diffs[n]` is the matrix of `d_n: C_n -> C_{n-1}`. Zero-dimensional
/// degrees and zero differentials are not stored, so structural equality is
/// equality of complexes with their bases.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainComplex {
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, RatMatrix>,
}

impl ChainComplex {
    pub fn new(dims: BTreeMap<i64, usize>, diffs: BTreeMap<i64, RatMatrix>) -> Result<Self, Error> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dim = |n: i64| dims.get(&n).copied().unwrap_or(0);
        for (&n, m) in &diffs {
            if m.cols() != dim(n) {
                return Err(Error::ShapeMismatch {
                    context: format!("source of d_{n}"),
                    expected: dim(n),
                    found: m.cols(),
                });
            }
            if m.rows() != dim(n - 1) {
                return Err(Error::ShapeMismatch {
                    context: format!("target of d_{n}"),
                    expected: dim(n - 1),
                    found: m.rows(),
                });
            }
        }
        let diffs = diffs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(ChainComplex { dims, diffs })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// One-dimensional complex concentrated in `degree`.
    pub fn point(degree: i64) -> Self {
        Self::with_zero_differential(BTreeMap::from([(degree, 1)]))
    }

    pub fn with_zero_differential(dims: BTreeMap<i64, usize>) -> Self {
        Self::new(dims, BTreeMap::new()).expect("no differentials to mismatch")
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    /// `d_n`, as a `dim C_{n-1} x dim C_n` matrix (zero when not stored).
    pub fn differential(&self, n: i64) -> RatMatrix {
        self.diffs.get(&n).cloned().unwrap_or_else(|| RatMatrix::zeros(self.dim(n - 1), self.dim(n)))
    }

    pub fn differentials(&self) -> &BTreeMap<i64, RatMatrix> {
        &self.diffs
    }

    /// Checks `d_{n-1} ∘ d_n = 0`, reporting the first failing `(n, row, col)`.
    pub fn validate(&self) -> Result<(), Violation> {
        for (&n, d) in &self.diffs {
            if let Some(d_next) = self.diffs.get(&(n - 1)) {
                if let Some((r, c, _)) = d_next.mul(d).first_nonzero() {
                    return Err(Violation::new("d∘d = 0", format!("degree {n}, entry ({r}, {c})")));
                }
            }
        }
        Ok(())
    }

    pub fn shift(&self, k: i64) -> Self {
        let s = sign(k);
        ChainComplex {
            dims: self.dims.iter().map(|(&n, &d)| (n + k, d)).collect(),
            diffs: self.diffs.iter().map(|(&n, m)| (n + k, m.scaled(&s))).collect(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let layout = TensorLayout::new(&self.dims, &other.dims, |a, b| a + b);
        let diffs = layout.odd_operator(|n| n - 1, |n| n, &self.diffs, &other.diffs);
        ChainComplex::new(layout.dims.clone(), diffs).expect("tensor layout is consistent")
    }

    /// Degreewise linear dual; the differential is the plain transpose.
    pub fn dual(&self) -> Self {
        ChainComplex {
            dims: self.dims.iter().map(|(&n, &d)| (-n, d)).collect(),
            // d_n : C_n -> C_{n-1} dualizes to (C^∨)_{1-n} -> (C^∨)_{-n}
            diffs: self.diffs.iter().map(|(&n, m)| (1 - n, m.transpose())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        for (&n, &d) in &other.dims {
            *dims.entry(n).or_insert(0) += d;
        }
        let mut diffs = BTreeMap::new();
        for &n in dims.keys() {
            let a = self.differential(n);
            let b = other.differential(n);
            let mut m = RatMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
            m.add_block(0, 0, &a);
            m.add_block(a.rows(), a.cols(), &b);
            diffs.insert(n, m);
        }
        ChainComplex::new(dims, diffs).expect("block sum is consistent")
    }

    /// Degreewise homology dimensions over the support.
    pub fn homology(&self) -> Result<BTreeMap<i64, usize>, Error> {
        let mut out = BTreeMap::new();
        for &n in self.dims.keys() {
            let h = homology_dim(&self.differential(n + 1), &self.differential(n)).map_err(|e| match e {
                Error::CompositionNonzero { row, col, .. } => {
                    Error::CompositionNonzero { degree: Some(n + 1), row, col }
                }
                other => other,
            })?;
            out.insert(n, h);
        }
        Ok(out)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term_identity() -> ChainComplex {
        ChainComplex::new(BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::from([(1, RatMatrix::identity(1))])).unwrap()
    }

    #[test]
    fn zero_complex_validates() {
        assert!(ChainComplex::zero().validate().is_ok());
    }

    #[test]
    fn identity_one_to_zero_validates_and_is_acyclic() {
        let c = two_term_identity();
        assert!(c.validate().is_ok());
        assert!(c.homology().unwrap().values().all(|&h| h == 0));
    }

    #[test]
    fn stacked_identities_violate_at_degree_two() {
        let c = ChainComplex::new(
            BTreeMap::from([(0, 1), (1, 1), (2, 1)]),
            BTreeMap::from([(1, RatMatrix::identity(1)), (2, RatMatrix::identity(1))]),
        )
        .unwrap();
        let v = c.validate().unwrap_err();
        assert!(v.witness.starts_with("degree 2"), "{v}");
        assert!(c.homology().is_err());
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        let err = ChainComplex::new(BTreeMap::from([(0, 1), (1, 2)]), BTreeMap::from([(1, RatMatrix::identity(1))]));
        assert!(matches!(err, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn shift_moves_degrees_up() {
        assert_eq!(ChainComplex::point(0).shift(2), ChainComplex::point(2));
        let c = two_term_identity();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).differential(2), RatMatrix::identity(1).neg());
        assert_eq!(c.shift(3).shift(-1), c.shift(2));
    }

    #[test]
    fn tensor_dims_are_binomial() {
        let a = ChainComplex::with_zero_differential(BTreeMap::from([(0, 1), (1, 1)]));
        let t = a.tensor(&a);
        assert_eq!(t.dims(), &BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let c = two_term_identity().direct_sum(&ChainComplex::point(3));
        assert_eq!(ChainComplex::point(0).tensor(&c), c);
        assert_eq!(c.tensor(&ChainComplex::point(0)), c);
    }

    #[test]
    fn dual_of_point() {
        assert_eq!(ChainComplex::point(3).dual(), ChainComplex::point(-3));
    }

    #[test]
    fn homology_with_zero_differentials_is_components() {
        let dims = BTreeMap::from([(-1, 2), (0, 3), (4, 1)]);
        let c = ChainComplex::with_zero_differential(dims.clone());
        assert_eq!(c.homology().unwrap(), dims);
    }
}
