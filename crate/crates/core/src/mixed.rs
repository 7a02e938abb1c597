//! Strict mixed graded modules: weight-indexed chain complexes with a mixed
//! differential `ε_p : (M_p)_n -> (M_{p-1})_{n+1}` satisfying `ε∘ε = 0` and
//! `ε∘d + d∘ε = 0`.
//!
//! Cells are addressed by `(weight, degree)`. Every operator is stored by its
//! source cell; absent matrices are zero.

use std::collections::BTreeMap;

use crate::complex::{ChainComplex, TensorLayout};
use crate::error::{Error, Violation};
use crate::linalg::{sign, RatMatrix};

/// Per-weight dimensions and differentials, before assembly.
pub(crate) type WeightParts = BTreeMap<i64, (BTreeMap<i64, usize>, BTreeMap<i64, RatMatrix>)>;
/// `(weight, internal degree)`.
pub type Cell = (i64, i64);

/// Which adjoint of the forgetful functor to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A weight-graded family of chain complexes with no mixed structure.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedModule {
    weights: BTreeMap<i64, ChainComplex>,
}

impl GradedModule {
    pub fn new(weights: BTreeMap<i64, ChainComplex>) -> Self {
        GradedModule { weights: weights.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// A single complex placed in weight `p`.
    pub fn concentrated(c: ChainComplex, p: i64) -> Self {
        Self::new(BTreeMap::from([(p, c)]))
    }

    pub fn weights(&self) -> &BTreeMap<i64, ChainComplex> {
        &self.weights
    }

    pub fn weight(&self, p: i64) -> ChainComplex {
        self.weights.get(&p).cloned().unwrap_or_default()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        for (p, c) in &self.weights {
            c.validate().map_err(|v| Violation::new(v.law, format!("weight {p}, {}", v.witness)))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedGradedModule {
    weights: BTreeMap<i64, ChainComplex>,
    mixed: BTreeMap<Cell, RatMatrix>,
}

impl MixedGradedModule {
    /// Assembles a module from its weights and the `ε` matrices keyed by
    /// source cell. Shapes are checked; zero data is dropped.
    pub fn new(weights: BTreeMap<i64, ChainComplex>, mixed: BTreeMap<Cell, RatMatrix>) -> Result<Self, Error> {
        let weights: BTreeMap<i64, ChainComplex> = weights.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let dim = |p: i64, n: i64| weights.get(&p).map_or(0, |c| c.dim(n));
        for (&(p, n), m) in &mixed {
            if m.cols() != dim(p, n) || m.rows() != dim(p - 1, n + 1) {
                return Err(Error::ShapeMismatch {
                    context: format!("ε at weight {p}, degree {n}"),
                    expected: dim(p, n) * dim(p - 1, n + 1),
                    found: m.cols() * m.rows(),
                });
            }
        }
        let mixed = mixed.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(MixedGradedModule { weights, mixed })
    }

    /// The unit object `k(q)`: a single line in weight `q`, degree 0.
    pub fn unit(q: i64) -> Self {
        MixedGradedModule { weights: BTreeMap::from([(q, ChainComplex::point(0))]), mixed: BTreeMap::new() }
    }

    fn from_cells(
        dims: BTreeMap<Cell, usize>,
        d: BTreeMap<Cell, RatMatrix>,
        eps: BTreeMap<Cell, RatMatrix>,
    ) -> Result<Self, Error> {
        let mut wdims: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
        for (&(p, n), &k) in &dims {
            wdims.entry(p).or_default().insert(n, k);
        }
        let mut wd: BTreeMap<i64, BTreeMap<i64, RatMatrix>> = BTreeMap::new();
        for ((p, n), m) in d {
            wd.entry(p).or_default().insert(n, m);
        }
        let mut weights = BTreeMap::new();
        for (p, dm) in wdims {
            weights.insert(p, ChainComplex::new(dm, wd.remove(&p).unwrap_or_default())?);
        }
        Self::new(weights, eps)
    }

    pub fn weights(&self) -> &BTreeMap<i64, ChainComplex> {
        &self.weights
    }

    pub fn weight(&self, p: i64) -> ChainComplex {
        self.weights.get(&p).cloned().unwrap_or_default()
    }

    pub fn weight_range(&self) -> Option<(i64, i64)> {
        Some((*self.weights.keys().next()?, *self.weights.keys().next_back()?))
    }

    pub fn dim(&self, p: i64, n: i64) -> usize {
        self.weights.get(&p).map_or(0, |c| c.dim(n))
    }

    /// Nonzero cell dimensions.
    pub fn cell_dims(&self) -> BTreeMap<Cell, usize> {
        self.weights.iter().flat_map(|(&p, c)| c.dims().iter().map(move |(&n, &k)| ((p, n), k))).collect()
    }

    /// `ε_{p,n}`, as a `dim (M_{p-1})_{n+1} x dim (M_p)_n` matrix.
    pub fn epsilon(&self, p: i64, n: i64) -> RatMatrix {
        self.mixed.get(&(p, n)).cloned().unwrap_or_else(|| RatMatrix::zeros(self.dim(p - 1, n + 1), self.dim(p, n)))
    }

    pub fn epsilons(&self) -> &BTreeMap<Cell, RatMatrix> {
        &self.mixed
    }

    /// Internal differentials keyed by source cell.
    pub fn d_ops(&self) -> BTreeMap<Cell, RatMatrix> {
        self.weights
            .iter()
            .flat_map(|(&p, c)| c.differentials().iter().map(move |(&n, m)| ((p, n), m.clone())))
            .collect()
    }

    pub fn oblv(&self) -> GradedModule {
        GradedModule::new(self.weights.clone())
    }

    /// Checks `d∘d = 0`, `ε∘ε = 0` and `ε∘d + d∘ε = 0` cell by cell.
    pub fn validate(&self) -> Result<(), Violation> {
        for (p, c) in &self.weights {
            c.validate().map_err(|v| Violation::new(v.law, format!("weight {p}, {}", v.witness)))?;
        }
        for (&(p, n), e) in &self.mixed {
            let ee = self.epsilon(p - 1, n + 1).mul(e);
            if let Some((r, c, _)) = ee.first_nonzero() {
                return Err(Violation::new("ε∘ε = 0", format!("weight {p}, degree {n}, entry ({r}, {c})")));
            }
        }
        for &(p, n) in self.cell_dims().keys() {
            // (p, n) -> (p-1, n): ε_{p,n-1} d_{p,n} + d_{p-1,n+1} ε_{p,n}
            let lhs = self.epsilon(p, n - 1).mul(&self.weight(p).differential(n));
            let rhs = self.weight(p - 1).differential(n + 1).mul(&self.epsilon(p, n));
            if let Some((r, c, _)) = lhs.add(&rhs).first_nonzero() {
                return Err(Violation::new("ε∘d + d∘ε = 0", format!("weight {p}, degree {n}, entry ({r}, {c})")));
            }
        }
        Ok(())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let layout =
            TensorLayout::new(&self.cell_dims(), &other.cell_dims(), |a: Cell, b: Cell| (a.0 + b.0, a.1 + b.1));
        let d = layout.odd_operator(|(p, n)| (p, n - 1), |(_, n)| n, &self.d_ops(), &other.d_ops());
        let eps = layout.odd_operator(|(p, n)| (p - 1, n + 1), |(_, n)| n, &self.mixed, &other.mixed);
        Self::from_cells(layout.dims.clone(), d, eps).expect("tensor layout is consistent")
    }

    /// `(M^∨)_p = (M_{-p})^∨`; both `d` and `ε` dualize to plain transposes.
    pub fn dual(&self) -> Self {
        let weights = self.weights.iter().map(|(&p, c)| (-p, c.dual())).collect();
        // ε_{p,n}: (p,n) -> (p-1,n+1) dualizes to a map out of cell (1-p, -n-1).
        let mixed = self.mixed.iter().map(|(&(p, n), m)| ((1 - p, -n - 1), m.transpose())).collect();
        MixedGradedModule { weights, mixed }
    }

    pub fn weight_shift(&self, q: i64) -> Self {
        MixedGradedModule {
            weights: self.weights.iter().map(|(&p, c)| (p + q, c.clone())).collect(),
            mixed: self.mixed.iter().map(|(&(p, n), m)| ((p + q, n), m.clone())).collect(),
        }
    }

    /// Conjugates every structure map by the cellwise diagonal sign
    /// `(-1)^{odd(cell)}`: a map from cell `s` to cell `t` is multiplied by
    /// `(-1)^{odd(s) + odd(t)}`.
    pub fn sign_twisted(&self, odd: impl Fn(i64, i64) -> bool) -> Self {
        let flip = |s: Cell, t: Cell, m: &RatMatrix| {
            if odd(s.0, s.1) != odd(t.0, t.1) {
                m.neg()
            } else {
                m.clone()
            }
        };
        let d = self.d_ops().iter().map(|(&(p, n), m)| ((p, n), flip((p, n), (p, n - 1), m))).collect();
        let eps = self.mixed.iter().map(|(&(p, n), m)| ((p, n), flip((p, n), (p - 1, n + 1), m))).collect();
        Self::from_cells(self.cell_dims(), d, eps).expect("same shapes")
    }

    /// The internal mapping object. Weight `p`, degree `d` is
    /// `⊕_q ⊕_a Hom((M_q)_a, (N_{q+p})_{a+d})`, with basis `E_{ij}` ordered by
    /// `(q, a)`, then target index `i`, then source index `j`.
    ///
    /// `D(f) = d_N∘f - (-1)^{|f|} f∘d_M` and `ε(f) = ε_N∘f - (-1)^{|f|} f∘ε_M`, so
    /// closed weight-0, degree-0 elements killed by `ε` are strict maps.
    pub fn internal_hom(&self, target: &Self) -> Self {
        let src = self.cell_dims();
        let tgt = target.cell_dims();
        // (hom cell, source cell) -> offset
        let mut offsets: BTreeMap<(Cell, Cell), usize> = BTreeMap::new();
        let mut dims: BTreeMap<Cell, usize> = BTreeMap::new();
        for (&(q, a), &dm) in &src {
            for (&(r, b), &dn) in &tgt {
                let cell = (r - q, b - a);
                let off = dims.entry(cell).or_insert(0);
                offsets.insert((cell, (q, a)), *off);
                *off += dm * dn;
            }
        }
        let dim_src = |c: Cell| src.get(&c).copied().unwrap_or(0);
        let pos = |cell: Cell, s: Cell, i: usize, j: usize| -> Option<usize> {
            offsets.get(&(cell, s)).map(|off| off + i * dim_src(s) + j)
        };
        let mut d_ops: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
        let mut e_ops: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
        for (&(cell, (q, a)), &off) in &offsets {
            let (p, deg) = cell;
            let dm = dim_src((q, a));
            let r = q + p;
            let b = a + deg;
            let dn = target.dim(r, b);
            let s = sign(deg);
            let cols = dims[&cell];
            let emit =
                |ops: &mut BTreeMap<Cell, RatMatrix>, tcell: Cell, row: Option<usize>, col: usize, v: crate::Rat| {
                    if let (Some(row), Some(&rows)) = (row, dims.get(&tcell)) {
                        ops.entry(cell).or_insert_with(|| RatMatrix::zeros(rows, cols)).add_to(row, col, v);
                    }
                };
            // d_N ∘ E_ij
            let d_n = target.weight(r).differential(b);
            for (k, i, v) in d_n.entries() {
                for j in 0..dm {
                    emit(&mut d_ops, (p, deg - 1), pos((p, deg - 1), (q, a), k, j), off + i * dm + j, v.clone());
                }
            }
            // -(-1)^deg E_ij ∘ d_M, d_M : (M_q)_{a+1} -> (M_q)_a
            let d_m = self.weight(q).differential(a + 1);
            for (j, l, v) in d_m.entries() {
                for i in 0..dn {
                    emit(&mut d_ops, (p, deg - 1), pos((p, deg - 1), (q, a + 1), i, l), off + i * dm + j, -(v * &s));
                }
            }
            // ε_N ∘ E_ij
            let e_n = target.epsilon(r, b);
            for (k, i, v) in e_n.entries() {
                for j in 0..dm {
                    emit(
                        &mut e_ops,
                        (p - 1, deg + 1),
                        pos((p - 1, deg + 1), (q, a), k, j),
                        off + i * dm + j,
                        v.clone(),
                    );
                }
            }
            // -(-1)^deg E_ij ∘ ε_M, ε_M : (M_{q+1})_{a-1} -> (M_q)_a
            let e_m = self.epsilon(q + 1, a - 1);
            for (j, l, v) in e_m.entries() {
                for i in 0..dn {
                    emit(
                        &mut e_ops,
                        (p - 1, deg + 1),
                        pos((p - 1, deg + 1), (q + 1, a - 1), i, l),
                        off + i * dm + j,
                        -(v * &s),
                    );
                }
            }
        }
        Self::from_cells(dims, d_ops, e_ops).expect("hom layout is consistent")
    }

    /// Total complex `⊕_{p ≥ floor} M_{-p}[-2p]` with differential `d + ε`.
    ///
    /// Weight `q` (with `q ≤ -floor`) and degree `n` lands in total degree
    /// `n + 2q`. Inside a total degree the blocks are ordered by weight.
    pub fn tate_total(&self, weight_floor: i64) -> Result<ChainComplex, Error> {
        if weight_floor > 0 {
            return Err(Error::FloorTooHigh(weight_floor));
        }
        let cells: BTreeMap<Cell, usize> =
            self.cell_dims().into_iter().filter(|&((q, _), _)| q <= -weight_floor).collect();
        let mut offsets: BTreeMap<Cell, (i64, usize)> = BTreeMap::new();
        let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
        for (&(q, n), &k) in &cells {
            let t = n + 2 * q;
            let off = dims.entry(t).or_insert(0);
            offsets.insert((q, n), (t, *off));
            *off += k;
        }
        let mut diffs: BTreeMap<i64, RatMatrix> = BTreeMap::new();
        for (&(q, n), &(t, off)) in &offsets {
            let cols = dims[&t];
            let mut place = |m: &RatMatrix, tcell: Cell| {
                if let Some(&(tt, toff)) = offsets.get(&tcell) {
                    debug_assert_eq!(tt, t - 1);
                    let rows = dims[&tt];
                    let slot = diffs.entry(t).or_insert_with(|| RatMatrix::zeros(rows, cols));
                    for (r, c, v) in m.entries() {
                        slot.add_to(toff + r, off + c, v.clone());
                    }
                }
            };
            place(&self.weight(q).differential(n), (q, n - 1));
            place(&self.epsilon(q, n), (q - 1, n + 1));
        }
        ChainComplex::new(dims, diffs)
    }

    /// The stabilized Tate total: the floor is lowered until every weight is
    /// included.
    pub fn tate_realization(&self) -> ChainComplex {
        let floor = self.weight_range().map_or(0, |(_, hi)| (-hi).min(0));
        self.tate_total(floor).expect("floor is nonpositive")
    }
}

/// The mixed module with the same weights and zero mixed differential.
pub fn triv_eps(g: &GradedModule) -> MixedGradedModule {
    MixedGradedModule { weights: g.weights.clone(), mixed: BTreeMap::new() }
}

/// Left or right adjoint to forgetting the mixed structure.
///
/// Left: weight `p` is `g_p ⊕ g_{p+1}[1]`, and `ε` sends the `g_p` summand of
/// weight `p` identically onto the `g_p[1]` summand of weight `p-1`.
/// Right: weight `p` is `g_p ⊕ g_{p-1}[-1]`, and `ε` sends the `g_{p-1}[-1]`
/// summand of weight `p` identically onto the `g_{p-1}` summand of weight `p-1`.
pub fn adjoint_eps(g: &GradedModule, side: Side) -> MixedGradedModule {
    let (offset, shift) = match side {
        Side::Left => (1, 1),
        Side::Right => (-1, -1),
    };
    let mut support: Vec<i64> = g.weights.keys().flat_map(|&p| [p, p - offset]).collect();
    support.sort_unstable();
    support.dedup();
    let mut weights = BTreeMap::new();
    for &p in &support {
        weights.insert(p, g.weight(p).direct_sum(&g.weight(p + offset).shift(shift)));
    }
    let mut mixed = BTreeMap::new();
    for &p in &support {
        let src = &weights[&p];
        for (&n, &_k) in src.dims() {
            let tgt_dim = weights.get(&(p - 1)).map_or(0, |c: &ChainComplex| c.dim(n + 1));
            let mut m = RatMatrix::zeros(tgt_dim, src.dim(n));
            match side {
                Side::Left => {
                    // g_p (first summand, degree n) -> g_p[1] in weight p-1 (second summand, degree n+1)
                    let k = g.weight(p).dim(n);
                    let toff = g.weight(p - 1).dim(n + 1);
                    for i in 0..k {
                        m.set(toff + i, i, crate::rat(1));
                    }
                }
                Side::Right => {
                    // g_{p-1}[-1] (second summand, degree n) -> g_{p-1} in weight p-1 (first summand, degree n+1)
                    let soff = g.weight(p).dim(n);
                    let k = g.weight(p - 1).dim(n + 1);
                    for i in 0..k {
                        m.set(i, soff + i, crate::rat(1));
                    }
                }
            }
            mixed.insert((p, n), m);
        }
    }
    MixedGradedModule::new(weights, mixed).expect("adjoint layout is consistent")
}

/// The free mixed module on a line in weight `q`, degree 0.
pub fn free_eps(q: i64) -> MixedGradedModule {
    adjoint_eps(&GradedModule::concentrated(ChainComplex::point(0), q), Side::Left)
}

/// A weight- and degree-preserving map of mixed graded modules, stored by
/// source cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedMap {
    pub source: MixedGradedModule,
    pub target: MixedGradedModule,
    pub cells: BTreeMap<Cell, RatMatrix>,
}

impl MixedMap {
    pub fn cell(&self, p: i64, n: i64) -> RatMatrix {
        self.cells
            .get(&(p, n))
            .cloned()
            .unwrap_or_else(|| RatMatrix::zeros(self.target.dim(p, n), self.source.dim(p, n)))
    }

    /// Checks `f∘d = d∘f` and `f∘ε = ε∘f` on every source cell.
    pub fn validate(&self) -> Result<(), Violation> {
        for &(p, n) in self.source.cell_dims().keys() {
            let f = self.cell(p, n);
            let lhs = self.cell(p, n - 1).mul(&self.source.weight(p).differential(n));
            let rhs = self.target.weight(p).differential(n).mul(&f);
            if let Some((r, c, _)) = lhs.add(&rhs.neg()).first_nonzero() {
                return Err(Violation::new("f∘d = d∘f", format!("weight {p}, degree {n}, entry ({r}, {c})")));
            }
            let lhs = self.cell(p - 1, n + 1).mul(&self.source.epsilon(p, n));
            let rhs = self.target.epsilon(p, n).mul(&f);
            if let Some((r, c, _)) = lhs.add(&rhs.neg()).first_nonzero() {
                return Err(Violation::new("f∘ε = ε∘f", format!("weight {p}, degree {n}, entry ({r}, {c})")));
            }
        }
        Ok(())
    }
}
