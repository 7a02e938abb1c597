//! Truncated models of universal enveloping algebras.
//!
//! PBW monomials are nondecreasing generator words in which odd generators
//! occur at most once; words are brought to normal form with
//! `yx = (-1)^{|x||y|} xy + [y,x]` and `xx = ½[x,x]` for odd `x`.
//!
//! Windows: both the resolution `V•(g)` and the mixed module `U(Cn(g))` keep
//! the basis elements `u ⊗ a` with `len(u) + len(a) ≤ D + 1`. The filtration
//! `len(u) + len(a)` never increases under the structure maps, so the window
//! is a subcomplex; with `len(a) ≥ 1` the word `u` has length at most `D`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::complex::ChainComplex;
use crate::error::{Error, Violation};
use crate::lie::{cone_mixed, DgLieAlgebra, MixedLieAlgebra};
use crate::linalg::{kernel_basis, rank, ratio, sign, Rat, RatMatrix, SparseVec};
use crate::mixed::{Cell, MixedGradedModule, WeightParts};
use crate::sym::{add_term, MonoComb, Monomial, SymAlgebra};

/// `U(g)` with a word-length bound `D` and memoized PBW normal forms.
#[derive(Debug)]
pub struct PbwTruncation {
    lie: DgLieAlgebra,
    max_word: usize,
    sym: SymAlgebra,
    memo: Mutex<HashMap<Vec<usize>, MonoComb>>,
}

impl Clone for PbwTruncation {
    fn clone(&self) -> Self {
        PbwTruncation {
            lie: self.lie.clone(),
            max_word: self.max_word,
            sym: self.sym.clone(),
            memo: Mutex::new(self.memo.lock().expect("memo lock").clone()),
        }
    }
}

pub fn pbw_truncate(g: &DgLieAlgebra, max_word: usize) -> PbwTruncation {
    PbwTruncation {
        lie: g.clone(),
        max_word,
        sym: SymAlgebra::new(g.degrees().to_vec()),
        memo: Mutex::new(HashMap::new()),
    }
}

impl PbwTruncation {
    pub fn lie(&self) -> &DgLieAlgebra {
        &self.lie
    }

    pub fn max_word(&self) -> usize {
        self.max_word
    }

    /// PBW monomials of length `≤ D`, by length and then lexicographically.
    pub fn basis(&self) -> Vec<Monomial> {
        self.basis_up_to(self.max_word)
    }

    pub fn basis_up_to(&self, len: usize) -> Vec<Monomial> {
        (0..=len).flat_map(|k| self.sym.basis(k).by_degree().values().flatten().cloned().collect::<Vec<_>>()).collect()
    }

    pub fn degree(&self, word: &[usize]) -> i64 {
        self.sym.degree(word)
    }

    /// Normal form of an arbitrary word.
    pub fn normal_form(&self, word: &[usize]) -> MonoComb {
        if let Some(v) = self.memo.lock().expect("memo lock").get(word) {
            return v.clone();
        }
        let out = self.rewrite(word);
        self.memo.lock().expect("memo lock").insert(word.to_vec(), out.clone());
        out
    }

    fn rewrite(&self, w: &[usize]) -> MonoComb {
        let Some(k) =
            (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1] || (w[k] == w[k + 1] && self.sym.is_odd(w[k])))
        else {
            return MonoComb::from([(w.to_vec(), Rat::one())]);
        };
        let (y, x) = (w[k], w[k + 1]);
        let mut out = MonoComb::new();
        let splice = |mid: &[usize]| -> Vec<usize> {
            let mut v = w[..k].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[k + 2..]);
            v
        };
        let mut add = |word: Vec<usize>, c: Rat| {
            for (m, v) in self.normal_form(&word) {
                add_term(&mut out, m, &c * v);
            }
        };
        if x == y {
            for (&z, c) in &self.lie.bracket(y, x) {
                add(splice(&[z]), c * ratio(1, 2));
            }
        } else {
            let deg = self.lie.degrees();
            add(splice(&[x, y]), sign(deg[x] * deg[y]));
            for (&z, c) in &self.lie.bracket(y, x) {
                add(splice(&[z]), c.clone());
            }
        }
        out
    }

    /// Product of two PBW monomials; `Overflow` if it may leave the window.
    pub fn multiply(&self, a: &[usize], b: &[usize]) -> Result<MonoComb, Error> {
        if a.len() + b.len() > self.max_word {
            return Err(Error::Overflow(format!(
                "product of lengths {} + {} exceeds {}",
                a.len(),
                b.len(),
                self.max_word
            )));
        }
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        Ok(self.normal_form(&w))
    }

    fn multiply_comb(&self, x: &MonoComb, y: &MonoComb) -> Result<MonoComb, Error> {
        let mut out = MonoComb::new();
        for (a, s) in x {
            for (b, t) in y {
                for (m, v) in self.multiply(a, b)? {
                    add_term(&mut out, m, s * t * v);
                }
            }
        }
        Ok(out)
    }

    /// `(ab)c = a(bc)` for all basis triples whose total length fits.
    pub fn check_associativity(&self) -> Result<(), Violation> {
        let basis = self.basis();
        let one = |m: &Monomial| MonoComb::from([(m.clone(), Rat::one())]);
        for a in &basis {
            for b in &basis {
                for c in &basis {
                    if a.len() + b.len() + c.len() > self.max_word {
                        continue;
                    }
                    let l = self.multiply(a, b).and_then(|ab| self.multiply_comb(&ab, &one(c)));
                    let r = self.multiply(b, c).and_then(|bc| self.multiply_comb(&one(a), &bc));
                    if l != r {
                        return Err(Violation::new("(ab)c = a(bc)", format!("({a:?}, {b:?}, {c:?})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Basis keys `(u, a)` of a window, grouped by degree.
pub type WindowBasis = BTreeMap<i64, Vec<(Monomial, Monomial)>>;

/// Checks that positive-degree cycles of `small` are boundaries of `large`
/// (the inclusion is by basis keys), and that both have `H_0 = ℚ`.
pub fn nested_window_exactness(
    small: (&ChainComplex, &WindowBasis),
    large: (&ChainComplex, &WindowBasis),
) -> Result<(), Violation> {
    for (c, _) in [small, large] {
        let h = c.homology().map_err(|e| Violation::new("d∘d = 0", e.to_string()))?;
        if h.get(&0).copied().unwrap_or(0) != 1 {
            return Err(Violation::new("H_0 = ℚ", format!("H_0 has dimension {:?}", h.get(&0))));
        }
    }
    let (sc, sb) = small;
    let (lc, lb) = large;
    for (&n, keys) in sb {
        if n <= 0 {
            continue;
        }
        let lindex: HashMap<&(Monomial, Monomial), usize> =
            lb.get(&n).map(|v| v.iter().enumerate().map(|(i, k)| (k, i)).collect()).unwrap_or_default();
        let boundaries = lc.differential(n + 1);
        let base_rank = rank(&boundaries);
        let mut cols: Vec<SparseVec> = (0..boundaries.cols()).map(|c| boundaries.column(c)).collect();
        for z in kernel_basis(&sc.differential(n)) {
            let moved: SparseVec = z
                .iter()
                .map(|(&i, c)| (*lindex.get(&keys[i]).expect("small window embeds in the large one"), c.clone()))
                .collect();
            cols.push(moved);
        }
        let stacked = RatMatrix::from_columns(lc.dim(n), &cols);
        if rank(&stacked) != base_rank {
            return Err(Violation::new("cycles become boundaries in the larger window", format!("degree {n}")));
        }
    }
    Ok(())
}

/// The window `len(u) + n ≤ D + 1`, `n ≤ P`, of the resolution
/// `V_n = U(g) ⊗ Λ^n g` of the trivial module, for discrete `g`.
#[derive(Debug, Clone)]
pub struct KoszulResolution {
    truncation: PbwTruncation,
    max_ext: usize,
    basis: WindowBasis,
    complex: ChainComplex,
}

/// `d(u ⊗ g_1∧…∧g_n) = Σ_i (-1)^{i+1} u g_i ⊗ (…ĝ_i…)
///                    + Σ_{i<j} (-1)^{i+j} u ⊗ [g_i,g_j]∧(…ĝ_i…ĝ_j…)`.
pub fn koszul_resolution(g: &DgLieAlgebra, max_word: usize, max_ext: usize) -> Result<KoszulResolution, Error> {
    if let Some(i) = g.degrees().iter().position(|&d| d != 0) {
        return Err(Error::NotDiscrete(g.names()[i].clone()));
    }
    let max_ext = max_ext.min(g.dim());
    let truncation = pbw_truncate(g, max_word);
    let ext = SymAlgebra::new(vec![1; g.dim()]);
    let mut basis = WindowBasis::new();
    for n in 0..=max_ext.min(max_word + 1) {
        let words = truncation.basis_up_to(max_word + 1 - n);
        let wedges: Vec<Monomial> = ext.basis(n).by_degree().values().flatten().cloned().collect();
        let keys = basis.entry(n as i64).or_default();
        for u in &words {
            for s in &wedges {
                keys.push((u.clone(), s.clone()));
            }
        }
    }
    let index: HashMap<(Monomial, Monomial), usize> =
        basis.values().flat_map(|v| v.iter().enumerate().map(|(i, k)| (k.clone(), i))).collect();
    let mut diffs: BTreeMap<i64, RatMatrix> = BTreeMap::new();
    for (&n, keys) in &basis {
        if n == 0 {
            continue;
        }
        let rows = basis[&(n - 1)].len();
        let mut mat = RatMatrix::zeros(rows, keys.len());
        for (col, (u, s)) in keys.iter().enumerate() {
            let mut put = |uu: &Monomial, ss: Monomial, c: Rat| {
                let row = index[&(uu.clone(), ss)];
                mat.add_to(row, col, c);
            };
            for i in 0..s.len() {
                let mut rest = s.clone();
                let gi = rest.remove(i);
                let mut w = u.clone();
                w.push(gi);
                for (uu, c) in truncation.normal_form(&w) {
                    put(&uu, rest.clone(), c * sign(i as i64));
                }
            }
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    let rest: Vec<usize> = (0..s.len()).filter(|&k| k != i && k != j).map(|k| s[k]).collect();
                    for (&z, c) in &g.bracket(s[i], s[j]) {
                        let mut w = vec![z];
                        w.extend_from_slice(&rest);
                        if let Some((neg, m)) = ext.normalize(&w) {
                            let v = c * sign((i + j) as i64) * if neg { -Rat::one() } else { Rat::one() };
                            put(u, m, v);
                        }
                    }
                }
            }
        }
        diffs.insert(n, mat);
    }
    let dims = basis.iter().map(|(&n, v)| (n, v.len())).collect();
    let complex = ChainComplex::new(dims, diffs)?;
    complex.validate().map_err(|v| Error::AxiomFailure(v.to_string()))?;
    Ok(KoszulResolution { truncation, max_ext, basis, complex })
}

impl KoszulResolution {
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn basis(&self) -> &WindowBasis {
        &self.basis
    }

    pub fn truncation(&self) -> &PbwTruncation {
        &self.truncation
    }

    pub fn max_ext(&self) -> usize {
        self.max_ext
    }

    /// `V_0 → ℚ`, sending `1 ⊗ 1` to 1 and longer words to 0.
    pub fn augmentation(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(1, self.complex.dim(0));
        if let Some(i) = self.basis.get(&0).and_then(|v| v.iter().position(|(u, _)| u.is_empty())) {
            m.set(0, i, Rat::one());
        }
        m
    }
}

/// The window of `U(Cn(g))`: weight `p` is `U(g) ⊗ Sym^p(g[-1])`, spanned by
/// PBW words `u·ā_1⋯ā_p` of the cone, with `d` and `ε` acting as derivations
/// and results brought back to normal form.
#[derive(Debug, Clone)]
pub struct UConeMixed {
    cone: MixedLieAlgebra,
    pbw: PbwTruncation,
    max_word: usize,
    max_weight: usize,
    cells: BTreeMap<Cell, Vec<(Monomial, Monomial)>>,
    module: MixedGradedModule,
}

pub fn u_cone_mixed(g: &DgLieAlgebra, max_word: usize, max_weight: usize) -> Result<UConeMixed, Error> {
    crate::lie::validate_lie(g).map_err(|v| Error::NotValidated(v.to_string()))?;
    let cone = cone_mixed(g)?;
    let n = g.dim();
    let pbw = pbw_truncate(cone.lie(), max_word + 1);
    let ug = pbw_truncate(g, max_word + 1);
    let shifted = SymAlgebra::new(g.degrees().iter().map(|d| d - 1).collect());
    let mut cells: BTreeMap<Cell, Vec<(Monomial, Monomial)>> = BTreeMap::new();
    for p in 0..=max_weight.min(max_word + 1) {
        let words = ug.basis_up_to(max_word + 1 - p);
        let sb = shifted.basis(p);
        for u in &words {
            for (&k, monos) in sb.by_degree() {
                for s in monos {
                    cells.entry((p as i64, ug.degree(u) + k)).or_default().push((u.clone(), s.clone()));
                }
            }
        }
    }
    let index: HashMap<(Monomial, Monomial), (Cell, usize)> =
        cells.iter().flat_map(|(&c, v)| v.iter().enumerate().map(move |(i, k)| (k.clone(), (c, i)))).collect();
    let deg = cone.lie().degrees().to_vec();
    let split = |w: &Monomial| -> (Monomial, Monomial) {
        let (a, b): (Vec<usize>, Vec<usize>) = w.iter().partition(|&&i| i < n);
        (a, b.into_iter().map(|i| i - n).collect())
    };
    // derivation extending letterwise images
    let derive = |word: &[usize], image: &dyn Fn(usize) -> SparseVec| -> MonoComb {
        let mut out = MonoComb::new();
        let mut passed = 0i64;
        for i in 0..word.len() {
            let s = sign(passed);
            for (&z, c) in &image(word[i]) {
                let mut w = word.to_vec();
                w[i] = z;
                for (m, v) in pbw.normal_form(&w) {
                    add_term(&mut out, m, &s * c * v);
                }
            }
            passed += deg[word[i]];
        }
        out
    };
    let d_img = |i: usize| cone.lie().differential(i).clone();
    let e_img = |i: usize| cone.epsilon(i).clone();
    let dims: BTreeMap<Cell, usize> = cells.iter().map(|(&c, v)| (c, v.len())).collect();
    let mut d_ops: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    let mut e_ops: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    for (&cell, keys) in &cells {
        for (col, (u, s)) in keys.iter().enumerate() {
            let mut word = u.clone();
            word.extend(s.iter().map(|i| i + n));
            for (ops, img, tcell) in [
                (&mut d_ops, &d_img as &dyn Fn(usize) -> SparseVec, (cell.0, cell.1 - 1)),
                (&mut e_ops, &e_img as &dyn Fn(usize) -> SparseVec, (cell.0 - 1, cell.1 + 1)),
            ] {
                for (w, c) in derive(&word, img) {
                    let key = split(&w);
                    let Some(&(tc, row)) = index.get(&key) else {
                        return Err(Error::Overflow(format!("{w:?} leaves the window")));
                    };
                    debug_assert_eq!(tc, tcell);
                    ops.entry(cell).or_insert_with(|| RatMatrix::zeros(dims[&tc], keys.len())).add_to(row, col, c);
                }
            }
        }
    }
    let mut wdims: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
    for (&(p, k), &c) in &dims {
        wdims.entry(p).or_default().insert(k, c);
    }
    let mut wd: BTreeMap<i64, BTreeMap<i64, RatMatrix>> = BTreeMap::new();
    for ((p, k), m) in d_ops {
        wd.entry(p).or_default().insert(k, m);
    }
    let weights = wdims
        .into_iter()
        .map(|(p, dm)| Ok((p, ChainComplex::new(dm, wd.remove(&p).unwrap_or_default())?)))
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    let module = MixedGradedModule::new(weights, e_ops)?;
    module.validate().map_err(|v| Error::AxiomFailure(format!("U(Cn) window: {v}")))?;
    Ok(UConeMixed { cone, pbw, max_word, max_weight, cells, module })
}

impl UConeMixed {
    pub fn module(&self) -> &MixedGradedModule {
        &self.module
    }

    pub fn cone(&self) -> &MixedLieAlgebra {
        &self.cone
    }

    pub fn max_word(&self) -> usize {
        self.max_word
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// Basis keys `(u, s)` of a cell; `s` indexes generators of `g`.
    pub fn cell_basis(&self, cell: Cell) -> &[(Monomial, Monomial)] {
        self.cells.get(&cell).map_or(&[], |v| v.as_slice())
    }

    pub fn cells(&self) -> &BTreeMap<Cell, Vec<(Monomial, Monomial)>> {
        &self.cells
    }

    /// `ε(u ⊗ s)` as `((u', s'), coefficient)` terms; `None` when `u ⊗ s` is
    /// not a basis element of the window.
    pub fn eps_of(&self, u: &Monomial, s: &Monomial) -> Option<Vec<((Monomial, Monomial), Rat)>> {
        let (cell, col) = self.locate(u, s)?;
        let m = self.module.epsilon(cell.0, cell.1);
        let target = self.cell_basis((cell.0 - 1, cell.1 + 1));
        Some(
            (0..m.rows())
                .filter_map(|r| {
                    let v = m.get(r, col);
                    (!v.is_zero()).then(|| (target[r].clone(), v))
                })
                .collect(),
        )
    }

    pub fn locate(&self, u: &Monomial, s: &Monomial) -> Option<(Cell, usize)> {
        self.cells.iter().find_map(|(&c, v)| v.iter().position(|(a, b)| a == u && b == s).map(|i| (c, i)))
    }

    /// `k ⊗_{U(g)} (−)`: rows and columns with `u = 1`.
    pub fn reduce_augmentation(&self) -> MixedGradedModule {
        let keep: BTreeMap<Cell, Vec<usize>> = self
            .cells
            .iter()
            .map(|(&c, v)| (c, v.iter().enumerate().filter(|(_, (u, _))| u.is_empty()).map(|(i, _)| i).collect()))
            .collect();
        let rows = |c: Cell| keep.get(&c).cloned().unwrap_or_default();
        let mut weights: WeightParts = BTreeMap::new();
        let mut eps = BTreeMap::new();
        for (&(p, n), cols) in &keep {
            let w = weights.entry(p).or_default();
            w.0.insert(n, cols.len());
            w.1.insert(n, self.module.weight(p).differential(n).submatrix(&rows((p, n - 1)), cols));
            eps.insert((p, n), self.module.epsilon(p, n).submatrix(&rows((p - 1, n + 1)), cols));
        }
        let weights = weights
            .into_iter()
            .map(|(p, (dm, ds))| (p, ChainComplex::new(dm, ds).expect("submatrices of a valid module")))
            .collect();
        MixedGradedModule::new(weights, eps).expect("submatrices of a valid module")
    }

    /// `ε(x·m) = (-1)^{|x|} x·ε(m)` for every generator `x` and basis element
    /// `m` with `x·m` inside the window.
    pub fn check_left_linearity(&self) -> Result<(), Violation> {
        let g = self.cone.lie();
        let n = g.dim() / 2;
        let ug = pbw_truncate(&restrict_to_g(g, n), self.max_word + 1);
        let act = |x: usize, u: &Monomial, s: &Monomial| -> Option<Vec<((Monomial, Monomial), Rat)>> {
            let mut w = vec![x];
            w.extend_from_slice(u);
            let mut out = Vec::new();
            for (uu, c) in ug.normal_form(&w) {
                self.locate(&uu, s)?;
                out.push(((uu, s.clone()), c));
            }
            Some(out)
        };
        for keys in self.cells.values() {
            for (u, s) in keys {
                for x in 0..n {
                    let Some(xm) = act(x, u, s) else { continue };
                    let mut lhs: BTreeMap<(Monomial, Monomial), Rat> = BTreeMap::new();
                    for ((uu, ss), c) in &xm {
                        for (k, v) in self.eps_of(uu, ss).expect("in window") {
                            *lhs.entry(k).or_insert_with(Rat::zero) += c * v;
                        }
                    }
                    let mut rhs: BTreeMap<(Monomial, Monomial), Rat> = BTreeMap::new();
                    let sx = sign(g.degrees()[x]);
                    let mut inside = true;
                    for ((uu, ss), c) in self.eps_of(u, s).expect("in window") {
                        match act(x, &uu, &ss) {
                            Some(terms) => {
                                for (k, v) in terms {
                                    *rhs.entry(k).or_insert_with(Rat::zero) += &c * v * &sx;
                                }
                            }
                            None => inside = false,
                        }
                    }
                    if !inside {
                        continue;
                    }
                    lhs.retain(|_, v| !v.is_zero());
                    rhs.retain(|_, v| !v.is_zero());
                    if lhs != rhs {
                        return Err(Violation::new(
                            "ε(x·m) = (-1)^{|x|} x·ε(m)",
                            format!("x = {}, m = ({u:?}, {s:?})", g.names()[x]),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The Tate total with its basis keys by total degree.
    pub fn tate_with_basis(&self) -> (ChainComplex, WindowBasis) {
        let total = self.module.tate_realization();
        let mut basis = WindowBasis::new();
        for (&(p, n), keys) in &self.cells {
            basis.entry(n + 2 * p).or_default().extend(keys.iter().cloned());
        }
        (total, basis)
    }

    pub fn pbw(&self) -> &PbwTruncation {
        &self.pbw
    }
}

fn restrict_to_g(cone: &DgLieAlgebra, n: usize) -> DgLieAlgebra {
    let gens = cone.names()[..n].iter().cloned().zip(cone.degrees()[..n].iter().copied()).collect();
    let mut g = DgLieAlgebra::new(gens);
    for i in 0..n {
        g.set_differential(i, cone.differential(i).clone());
        for j in 0..n {
            let b = cone.bracket(i, j);
            if !b.is_empty() {
                g.set_bracket(i, j, b);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::ce_homological;
    use crate::lie::fixtures::*;
    use crate::linalg::rat;

    #[test]
    fn abelian_pbw_dimension() {
        let t = pbw_truncate(&abelian(3), 2);
        assert_eq!(t.basis().len(), 1 + 3 + 6);
    }

    #[test]
    fn aff1_rewrite() {
        let t = pbw_truncate(&aff1(), 2);
        let nf = t.multiply(&[1], &[0]).unwrap();
        assert_eq!(nf, MonoComb::from([(vec![0, 1], rat(1)), (vec![0], rat(-1))]));
        assert!(matches!(t.multiply(&[1, 1], &[0]), Err(Error::Overflow(_))));
    }

    #[test]
    fn associativity() {
        for g in [sl2(), heis3(), aff1_contractible_extension()] {
            assert_eq!(pbw_truncate(&g, 3).check_associativity(), Ok(()));
        }
    }

    #[test]
    fn aff1_resolution_differential() {
        let v = koszul_resolution(&aff1(), 4, 2).unwrap();
        let keys = &v.basis()[&2];
        let col = keys.iter().position(|(u, s)| u.is_empty() && s == &vec![0, 1]).unwrap();
        let d = v.complex().differential(2).column(col);
        let rows = &v.basis()[&1];
        let at = |u: Vec<usize>, s: Vec<usize>| rows.iter().position(|k| k == &(u.clone(), s.clone())).unwrap();
        let expected = SparseVec::from([
            (at(vec![0], vec![1]), rat(1)),
            (at(vec![1], vec![0]), rat(-1)),
            (at(vec![], vec![0]), rat(-1)),
        ]);
        assert_eq!(d, expected);
        assert!(matches!(koszul_resolution(&trivial_shifted(), 2, 1), Err(Error::NotDiscrete(_))));
    }

    #[test]
    fn resolution_windows_are_exact() {
        for g in [abelian(2), aff1(), heis3()] {
            for d in 2..=3 {
                let small = koszul_resolution(&g, d, g.dim()).unwrap();
                let large = koszul_resolution(&g, d + 2, g.dim()).unwrap();
                assert_eq!(
                    nested_window_exactness((small.complex(), small.basis()), (large.complex(), large.basis())),
                    Ok(())
                );
            }
        }
    }

    #[test]
    fn paper_example() {
        let u = u_cone_mixed(&aff1(), 3, 2).unwrap();
        for w in pbw_truncate(&aff1(), 2).basis() {
            let got: BTreeMap<_, _> = u.eps_of(&w, &vec![0, 1]).unwrap().into_iter().collect();
            let mut want: BTreeMap<(Monomial, Monomial), Rat> = BTreeMap::new();
            let nf = |x: usize| pbw_truncate(&aff1(), 4).normal_form(&[w.clone(), vec![x]].concat());
            for (m, c) in nf(0) {
                *want.entry((m, vec![1])).or_insert_with(Rat::zero) += c;
            }
            for (m, c) in nf(1) {
                *want.entry((m, vec![0])).or_insert_with(Rat::zero) -= c;
            }
            *want.entry((w.clone(), vec![0])).or_insert_with(Rat::zero) -= rat(1);
            want.retain(|_, v| !v.is_zero());
            assert_eq!(got, want, "u = {w:?}");
        }
    }

    #[test]
    fn reduction_matches_ce_after_weight_sign() {
        for g in [aff1(), sl2(), aff1_contractible_extension()] {
            let u = u_cone_mixed(&g, 2, 2).unwrap();
            let ce = ce_homological(&g, 2).module().sign_twisted(|p, _| p.rem_euclid(2) == 1);
            assert_eq!(u.reduce_augmentation(), ce);
            assert_eq!(u.check_left_linearity(), Ok(()));
        }
    }

    #[test]
    fn tate_of_u_cone_is_the_resolution() {
        let u = u_cone_mixed(&aff1(), 3, 2).unwrap();
        let v = koszul_resolution(&aff1(), 3, 2).unwrap();
        let (total, basis) = u.tate_with_basis();
        assert_eq!(&basis, v.basis());
        assert_eq!(&total, v.complex());
    }
}
