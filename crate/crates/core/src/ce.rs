//! Mixed graded Chevalley–Eilenberg objects.
//!
//! `CE_ε(g)` has weight `p` equal to `Sym^p(g[-1])`: the shifted generator `ā`
//! has degree `|a| - 1`. The internal differential is the coderivation
//! extending `ā ↦ -overline(da)` and `ε` is the coderivation with quadratic
//! part `ā b̄ ↦ (-1)^{|a|} overline([a,b])`. `CE^ε(g)` is its weightwise dual,
//! with product dual to the shuffle coproduct.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::complex::{ChainComplex, TensorLayout};
use crate::error::{Error, Violation};
use crate::lie::{product_lie, validate_lie, validate_rep, DgLieAlgebra, LieMorphism, Representation};
use crate::linalg::{sign, Rat, RatMatrix, SparseVec};
use crate::mixed::{Cell, MixedGradedModule, MixedMap};
use crate::sym::{add_term, MonoComb, Monomial, SymAlgebra, SymBasis};

type Coproduct = BTreeMap<(Monomial, Monomial), Rat>;

fn neg_vec(v: &SparseVec) -> SparseVec {
    v.iter().map(|(&i, c)| (i, -c.clone())).collect()
}

type MonoOp<'a> = &'a dyn Fn(&Monomial) -> MonoComb;
/// Builds operator matrices keyed by source cell from an action on monomials.
/// `dw` is the weight change of the operator.
fn assemble(bases: &BTreeMap<i64, SymBasis>, dw: i64, op: impl Fn(&Monomial) -> MonoComb) -> BTreeMap<Cell, RatMatrix> {
    let mut out: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    for (&p, basis) in bases {
        let Some(tb) = bases.get(&(p + dw)) else { continue };
        let tdims = tb.dims();
        for (&n, monos) in basis.by_degree() {
            for (col, m) in monos.iter().enumerate() {
                for (t, c) in op(m) {
                    let (tn, row) = tb.locate(&t).expect("image stays in the window");
                    out.entry((p, n)).or_insert_with(|| RatMatrix::zeros(tdims[&tn], monos.len())).add_to(row, col, c);
                }
            }
        }
    }
    out.retain(|_, m| !m.is_zero());
    out
}

fn module_from(
    bases: &BTreeMap<i64, SymBasis>,
    d: BTreeMap<Cell, RatMatrix>,
    eps: BTreeMap<Cell, RatMatrix>,
) -> MixedGradedModule {
    let mut wd: BTreeMap<i64, BTreeMap<i64, RatMatrix>> = BTreeMap::new();
    for ((p, n), m) in d {
        wd.entry(p).or_default().insert(n, m);
    }
    let weights = bases
        .iter()
        .map(|(&p, b)| (p, ChainComplex::new(b.dims(), wd.remove(&p).unwrap_or_default()).expect("cell-checked")))
        .collect();
    MixedGradedModule::new(weights, eps).expect("cell-checked")
}

/// Sign of moving a term of degree `a` past one of degree `b`.
fn koszul(a: i64, b: i64) -> Rat {
    sign(a * b)
}

/// `CE_ε(g)` on weights `0..=max_weight` with its shuffle coproduct.
#[derive(Debug, Clone)]
pub struct CeHomological {
    lie: DgLieAlgebra,
    sym: SymAlgebra,
    max_weight: usize,
    bases: BTreeMap<i64, SymBasis>,
    module: MixedGradedModule,
}

pub fn ce_homological(g: &DgLieAlgebra, max_weight: usize) -> CeHomological {
    let sym = SymAlgebra::new(g.degrees().iter().map(|d| d - 1).collect());
    let bases: BTreeMap<i64, SymBasis> = (0..=max_weight).map(|p| (p as i64, sym.basis(p))).collect();
    let mut ce = CeHomological { lie: g.clone(), sym, max_weight, bases, module: MixedGradedModule::default() };
    let d = assemble(&ce.bases, 0, |m| ce.d_monomial(m));
    let eps = assemble(&ce.bases, -1, |m| ce.eps_monomial(m));
    ce.module = module_from(&ce.bases, d, eps);
    ce
}

impl CeHomological {
    pub fn module(&self) -> &MixedGradedModule {
        &self.module
    }

    pub fn lie(&self) -> &DgLieAlgebra {
        &self.lie
    }

    pub fn sym(&self) -> &SymAlgebra {
        &self.sym
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// Monomial basis of weight `p`, grouped by degree.
    pub fn basis(&self, p: i64) -> Option<&SymBasis> {
        self.bases.get(&p)
    }

    pub fn bases(&self) -> &BTreeMap<i64, SymBasis> {
        &self.bases
    }

    pub fn d_monomial(&self, m: &[usize]) -> MonoComb {
        let images: Vec<SparseVec> = (0..self.lie.dim()).map(|i| neg_vec(self.lie.differential(i))).collect();
        self.sym.coderivation_linear(&images, m)
    }

    pub fn eps_monomial(&self, m: &[usize]) -> MonoComb {
        let deg = self.lie.degrees();
        self.sym.coderivation_quadratic(
            |a, b| {
                let v = self.lie.bracket(a, b);
                if deg[a].rem_euclid(2) == 1 {
                    neg_vec(&v)
                } else {
                    v
                }
            },
            m,
        )
    }

    pub fn comultiply(&self, m: &[usize]) -> Coproduct {
        self.sym.coproduct(m)
    }

    fn apply_to_pairs(&self, pairs: &Coproduct, op: &dyn Fn(&Monomial) -> MonoComb) -> Coproduct {
        // (op ⊗ 1 + 1 ⊗ op)(x ⊗ y) = op(x) ⊗ y + (-1)^{|x|} x ⊗ op(y)
        let mut out = Coproduct::new();
        for ((x, y), c) in pairs {
            for (x2, a) in op(x) {
                *out.entry((x2, y.clone())).or_insert_with(Rat::zero) += c * &a;
            }
            let s = sign(self.sym.degree(x));
            for (y2, b) in op(y) {
                *out.entry((x.clone(), y2)).or_insert_with(Rat::zero) += c * &b * &s;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn comultiply_comb(&self, comb: &MonoComb) -> Coproduct {
        let mut out = Coproduct::new();
        for (m, c) in comb {
            for (k, v) in self.sym.coproduct(m) {
                *out.entry(k).or_insert_with(Rat::zero) += c * &v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `Δ∘D = (D⊗1 + 1⊗D)∘Δ` for `D` in `{d, ε}` on every basis monomial.
    pub fn check_coderivations(&self) -> Result<(), Violation> {
        let ops: [(&str, MonoOp); 2] =
            [("Δ∘d = (d⊗1 + 1⊗d)∘Δ", &|m| self.d_monomial(m)), ("Δ∘ε = (ε⊗1 + 1⊗ε)∘Δ", &|m| self.eps_monomial(m))];
        for (law, op) in ops {
            for b in self.bases.values() {
                for m in b.by_degree().values().flatten() {
                    let lhs = self.comultiply_comb(&op(m));
                    let rhs = self.apply_to_pairs(&self.comultiply(m), op);
                    if lhs != rhs {
                        return Err(Violation::new(law, format!("monomial {m:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Coassociativity and counitality on every basis monomial.
    pub fn check_coalgebra(&self) -> Result<(), Violation> {
        for b in self.bases.values() {
            for m in b.by_degree().values().flatten() {
                let delta = self.comultiply(m);
                let one: Monomial = Vec::new();
                if delta.get(&(one.clone(), m.clone())) != Some(&Rat::one())
                    || delta.get(&(m.clone(), one.clone())) != Some(&Rat::one())
                {
                    return Err(Violation::new("counit", format!("monomial {m:?}")));
                }
                let mut left: BTreeMap<[Monomial; 3], Rat> = BTreeMap::new();
                let mut right: BTreeMap<[Monomial; 3], Rat> = BTreeMap::new();
                for ((x, y), c) in &delta {
                    for ((x1, x2), a) in self.comultiply(x) {
                        *left.entry([x1, x2, y.clone()]).or_insert_with(Rat::zero) += c * &a;
                    }
                    for ((y1, y2), a) in self.comultiply(y) {
                        *right.entry([x.clone(), y1, y2]).or_insert_with(Rat::zero) += c * &a;
                    }
                }
                left.retain(|_, v| !v.is_zero());
                right.retain(|_, v| !v.is_zero());
                if left != right {
                    return Err(Violation::new("coassociativity", format!("monomial {m:?}")));
                }
            }
        }
        Ok(())
    }
}

/// `CE^ε(g)`: the weightwise dual of `CE_ε(g)`, weights `-max_weight..=0`.
/// The basis of weight `-p` is dual to the monomial basis of weight `p`.
#[derive(Debug, Clone)]
pub struct CeCohomological {
    homological: CeHomological,
    module: MixedGradedModule,
}

pub fn ce_cohomological(g: &DgLieAlgebra, max_weight: usize) -> CeCohomological {
    let homological = ce_homological(g, max_weight);
    let module = homological.module().dual();
    CeCohomological { homological, module }
}

impl CeCohomological {
    pub fn module(&self) -> &MixedGradedModule {
        &self.module
    }

    pub fn homological(&self) -> &CeHomological {
        &self.homological
    }

    /// Product of dual basis elements: `(a^∨ · b^∨)(c)` is the coefficient of
    /// `a ⊗ b` in `Δ(c)`. Products leaving the window vanish.
    pub fn product(&self, a: &[usize], b: &[usize]) -> MonoComb {
        let mut out = MonoComb::new();
        if a.len() + b.len() > self.homological.max_weight {
            return out;
        }
        for c in self.homological.sym.multiply(a, b).into_keys() {
            if let Some(v) = self.homological.comultiply(&c).get(&(a.to_vec(), b.to_vec())) {
                add_term(&mut out, c, v.clone());
            }
        }
        out
    }

    /// Multiplicative unit: the dual of the empty monomial.
    pub fn augmentation(&self) -> MonoComb {
        MonoComb::from([(Vec::new(), Rat::one())])
    }

    /// `ε` on a dual basis element, as a combination of dual basis elements.
    pub fn eps_dual(&self, a: &[usize]) -> MonoComb {
        let h = &self.homological;
        let mut out = MonoComb::new();
        if let Some(b) = h.basis(a.len() as i64 + 1) {
            for c in b.by_degree().values().flatten() {
                if let Some(v) = h.eps_monomial(c).get(a) {
                    add_term(&mut out, c.clone(), v.clone());
                }
            }
        }
        out
    }

    fn mul_combs(&self, x: &MonoComb, y: &MonoComb) -> MonoComb {
        let mut out = MonoComb::new();
        for (a, s) in x {
            for (b, t) in y {
                for (c, v) in self.product(a, b) {
                    add_term(&mut out, c, s * t * v);
                }
            }
        }
        out
    }

    /// `ε(f·g) = εf·g + (-1)^{|f|} f·εg` on all basis pairs whose products
    /// stay inside the window, plus graded commutativity and associativity.
    pub fn check_algebra(&self) -> Result<(), Violation> {
        let h = &self.homological;
        let all: Vec<&Monomial> = h.bases.values().flat_map(|b| b.by_degree().values().flatten()).collect();
        let deg = |m: &Monomial| -h.sym.degree(m);
        let single = |m: &Monomial| MonoComb::from([(m.clone(), Rat::one())]);
        for a in &all {
            for b in &all {
                if a.len() + b.len() + 1 > h.max_weight {
                    continue;
                }
                let ab = self.product(a, b);
                let mut lhs = MonoComb::new();
                for (c, v) in &ab {
                    for (e, w) in self.eps_dual(c) {
                        add_term(&mut lhs, e, v * w);
                    }
                }
                let mut rhs = self.mul_combs(&self.eps_dual(a), &single(b));
                let s = sign(deg(a));
                for (e, w) in self.mul_combs(&single(a), &self.eps_dual(b)) {
                    add_term(&mut rhs, e, w * &s);
                }
                if lhs != rhs {
                    return Err(Violation::new("ε(fg) = εf·g + (-1)^{|f|} f·εg", format!("({a:?}, {b:?})")));
                }
            }
        }
        for a in &all {
            for b in &all {
                let ab = self.product(a, b);
                let ba: MonoComb =
                    self.product(b, a).into_iter().map(|(k, v)| (k, v * koszul(deg(a), deg(b)))).collect();
                if ab != ba {
                    return Err(Violation::new("graded commutativity", format!("({a:?}, {b:?})")));
                }
            }
        }
        for a in &all {
            for b in &all {
                for c in &all {
                    if a.len() + b.len() + c.len() > h.max_weight {
                        continue;
                    }
                    let l = self.mul_combs(&self.product(a, b), &single(c));
                    let r = self.mul_combs(&single(a), &self.product(b, c));
                    if l != r {
                        return Err(Violation::new("associativity", format!("({a:?}, {b:?}, {c:?})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `CE^ε(g; M)`: weight `-p` is `Hom(Sym^p(g[-1]), M)`.
///
/// A basis element `E_{s,m}` sends the monomial `s` to the basis vector `m`
/// and has degree `|m| - |s|`. Within a cell the order is by `|s|`, then `s`,
/// then `m`. The internal differential is `f ↦ f∘d - (-1)^{|f|} d_M∘f` and
/// `ε(f) = f∘ε - A(f)` with the action term
/// `A(f)(ā_1⋯ā_k) = Σ_i ± (-1)^{|f||a_i|} a_i·f(⋯â_i⋯)`, `±` the Koszul sign of
/// moving `ā_i` to the front.
pub fn ce_coefficients(g: &DgLieAlgebra, m: &Representation, max_weight: usize) -> Result<MixedGradedModule, Error> {
    validate_rep(g, m).map_err(|v| Error::RepInvalid(v.to_string()))?;
    let h = ce_homological(g, max_weight);
    let mdeg = m.degrees();
    // cell -> ordered basis of (s, m)
    let mut cells: BTreeMap<Cell, Vec<(Monomial, usize)>> = BTreeMap::new();
    for (&p, b) in h.bases() {
        for (&k, monos) in b.by_degree() {
            for s in monos {
                for (j, &dm) in mdeg.iter().enumerate() {
                    cells.entry((-p, dm - k)).or_default().push((s.clone(), j));
                }
            }
        }
    }
    let index: HashMap<(Monomial, usize), (Cell, usize)> =
        cells.iter().flat_map(|(&c, v)| v.iter().enumerate().map(move |(i, key)| (key.clone(), (c, i)))).collect();
    // removal index: rest -> [(c, position of removed generator, κ)]
    let mut removals: HashMap<Monomial, Vec<(Monomial, usize, bool)>> = HashMap::new();
    for b in h.bases().values() {
        for c in b.by_degree().values().flatten() {
            for i in 0..c.len() {
                if i > 0 && c[i] == c[i - 1] {
                    continue;
                }
                let mut rest = c.clone();
                let a = rest.remove(i);
                // an even shifted generator repeated r times contributes r equal terms
                let mult = c.iter().filter(|&&x| x == a).count();
                for _ in 0..mult {
                    removals.entry(rest.clone()).or_default().push((c.clone(), a, h.sym().front_sign(c, &[i])));
                }
            }
        }
    }
    // transposed structure maps of CE_ε: image monomial -> [(source monomial, coeff)]
    let mut d_t: HashMap<Monomial, Vec<(Monomial, Rat)>> = HashMap::new();
    let mut e_t: HashMap<Monomial, Vec<(Monomial, Rat)>> = HashMap::new();
    for b in h.bases().values() {
        for t in b.by_degree().values().flatten() {
            for (s, c) in h.d_monomial(t) {
                d_t.entry(s).or_default().push((t.clone(), c));
            }
            for (s, c) in h.eps_monomial(t) {
                e_t.entry(s).or_default().push((t.clone(), c));
            }
        }
    }
    let mut d_ops: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    let mut e_ops: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    let dims: BTreeMap<Cell, usize> = cells.iter().map(|(&c, v)| (c, v.len())).collect();
    let emit = |ops: &mut BTreeMap<Cell, RatMatrix>, src: Cell, col: usize, key: (Monomial, usize), v: Rat| {
        if v.is_zero() {
            return;
        }
        let (tc, row) = index[&key];
        ops.entry(src).or_insert_with(|| RatMatrix::zeros(dims[&tc], dims[&src])).add_to(row, col, v);
    };
    let gdeg = g.degrees();
    for (&cell, keys) in &cells {
        let n = cell.1;
        let sn = sign(n);
        for (col, (s, j)) in keys.iter().enumerate() {
            // f∘d_S and f∘ε_S
            for (t, c) in d_t.get(s).into_iter().flatten() {
                emit(&mut d_ops, cell, col, (t.clone(), *j), c.clone());
            }
            for (t, c) in e_t.get(s).into_iter().flatten() {
                emit(&mut e_ops, cell, col, (t.clone(), *j), c.clone());
            }
            // -(-1)^n d_M∘f
            for (&j2, c) in m.differential(*j) {
                emit(&mut d_ops, cell, col, (s.clone(), j2), -(c * &sn));
            }
            // -A(f)
            for (c, a, kappa) in removals.get(s).into_iter().flatten() {
                let mut coef = -sign(n * gdeg[*a]);
                if *kappa {
                    coef = -coef;
                }
                for (&j2, v) in &m.act_basis(*a, *j) {
                    emit(&mut e_ops, cell, col, (c.clone(), j2), &coef * v);
                }
            }
        }
    }
    let mut wdims: BTreeMap<i64, BTreeMap<i64, usize>> = BTreeMap::new();
    for (&(p, n), &k) in &dims {
        wdims.entry(p).or_default().insert(n, k);
    }
    let mut wd: BTreeMap<i64, BTreeMap<i64, RatMatrix>> = BTreeMap::new();
    for ((p, n), mat) in d_ops {
        wd.entry(p).or_default().insert(n, mat);
    }
    let weights = wdims
        .into_iter()
        .map(|(p, dm)| Ok((p, ChainComplex::new(dm, wd.remove(&p).unwrap_or_default())?)))
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    let out = MixedGradedModule::new(weights, e_ops)?;
    out.validate().map_err(|v| Error::AxiomFailure(format!("coefficients: {v}")))?;
    Ok(out)
}

/// `Sym^p(f[-1])` on every weight, as a map `CE_ε(g) → CE_ε(h)`.
pub fn ce_map(f: &LieMorphism, max_weight: usize) -> Result<MixedMap, Error> {
    let src = ce_homological(f.source(), max_weight);
    let tgt = ce_homological(f.target(), max_weight);
    let image = |m: &Monomial| -> MonoComb {
        let mut acc = MonoComb::from([(Vec::new(), Rat::one())]);
        for &a in m {
            let mut next = MonoComb::new();
            for (w, c) in &acc {
                for (&b, v) in f.image(a) {
                    let mut word = w.clone();
                    word.push(b);
                    if let Some((neg, n)) = tgt.sym().normalize(&word) {
                        let x = c * v;
                        add_term(&mut next, n, if neg { -x } else { x });
                    }
                }
            }
            acc = next;
        }
        acc
    };
    let mut cells: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
    for (&p, b) in src.bases() {
        let tb = &tgt.bases()[&p];
        for (&n, monos) in b.by_degree() {
            let rows = tb.dims().get(&n).copied().unwrap_or(0);
            let mut mat = RatMatrix::zeros(rows, monos.len());
            for (col, m) in monos.iter().enumerate() {
                for (t, c) in image(m) {
                    let (tn, row) = tb.locate(&t).expect("same weight");
                    debug_assert_eq!(tn, n);
                    mat.add_to(row, col, c);
                }
            }
            cells.insert((p, n), mat);
        }
    }
    // Δ compatibility
    for b in src.bases().values() {
        for m in b.by_degree().values().flatten() {
            let mut lhs = Coproduct::new();
            for (t, c) in image(m) {
                for (k, v) in tgt.comultiply(&t) {
                    *lhs.entry(k).or_insert_with(Rat::zero) += &c * &v;
                }
            }
            let mut rhs = Coproduct::new();
            for ((x, y), c) in src.comultiply(m) {
                for (x2, a) in image(&x) {
                    for (y2, b) in image(&y) {
                        *rhs.entry((x2.clone(), y2)).or_insert_with(Rat::zero) += &c * &a * &b;
                    }
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(Error::AxiomFailure(format!("induced map does not respect Δ at {m:?}")));
            }
        }
    }
    let map = MixedMap { source: src.module().clone(), target: tgt.module().clone(), cells };
    map.validate().map_err(|v| Error::AxiomFailure(v.to_string()))?;
    Ok(map)
}

/// Compares `CE_ε(g×h)` with `CE_ε(g) ⊗ CE_ε(h)` on weights `≤ max_weight`
/// through the bijection `m_g m_h ↦ m_g ⊗ m_h`: dimensions, `d`, `ε` and `Δ`.
pub fn monoidality_check(g: &DgLieAlgebra, h: &DgLieAlgebra, max_weight: usize) -> Result<(), Violation> {
    let gh = ce_homological(&product_lie(g, h), max_weight);
    let cg = ce_homological(g, max_weight);
    let ch = ce_homological(h, max_weight);
    let tensor = cg.module().tensor(ch.module());
    let layout = TensorLayout::new(&cg.module().cell_dims(), &ch.module().cell_dims(), |a: Cell, b: Cell| {
        (a.0 + b.0, a.1 + b.1)
    });
    let ng = g.dim();
    let split = |m: &Monomial| -> (Monomial, Monomial) {
        let (a, b): (Vec<usize>, Vec<usize>) = m.iter().partition(|&&i| i < ng);
        (a, b.into_iter().map(|i| i - ng).collect())
    };
    // tensor position of each product monomial
    let mut perm: BTreeMap<Cell, Vec<usize>> = BTreeMap::new();
    for (&p, b) in gh.bases() {
        for (&n, monos) in b.by_degree() {
            let mut v = Vec::with_capacity(monos.len());
            for m in monos {
                let (mg, mh) = split(m);
                let (pg, ph) = (mg.len() as i64, mh.len() as i64);
                let (ng_deg, ig) = cg.basis(pg).and_then(|b| b.locate(&mg)).expect("g factor in window");
                let (nh_deg, ih) = ch.basis(ph).and_then(|b| b.locate(&mh)).expect("h factor in window");
                let (cell, idx) = layout.position((pg, ng_deg), (ph, nh_deg), ig, ih).expect("block exists");
                debug_assert_eq!(cell, (p, n));
                v.push(idx);
            }
            perm.insert((p, n), v);
        }
    }
    let truncated: BTreeMap<Cell, usize> =
        tensor.cell_dims().into_iter().filter(|&((p, _), _)| p <= max_weight as i64).collect();
    if truncated != gh.module().cell_dims() {
        return Err(Violation::new("dims of CE(g×h) = dims of CE(g)⊗CE(h)", format!("{truncated:?}")));
    }
    let identity = |c: Cell| perm.get(&c).cloned().unwrap_or_default();
    for (&(p, n), &k) in &truncated {
        let pairs = [
            ("d", (p, n - 1), gh.module().weight(p).differential(n), tensor.weight(p).differential(n)),
            ("ε", (p - 1, n + 1), gh.module().epsilon(p, n), tensor.epsilon(p, n)),
        ];
        for (name, tcell, ours, theirs) in pairs {
            let rows = identity(tcell);
            let moved = ours.permuted(&rows, &identity((p, n)), theirs.rows(), k);
            if p - 1 < 0 && name == "ε" {
                continue;
            }
            if moved != theirs {
                return Err(Violation::new(
                    format!("{name} of CE(g×h) = {name} of CE(g)⊗CE(h)"),
                    format!("weight {p}, degree {n}"),
                ));
            }
        }
    }
    for b in gh.bases().values() {
        for m in b.by_degree().values().flatten() {
            let lhs = gh.comultiply(m);
            let (mg, mh) = split(m);
            let mut rhs = Coproduct::new();
            for ((x1, x2), a) in cg.comultiply(&mg) {
                for ((y1, y2), b) in ch.comultiply(&mh) {
                    let s = koszul(cg.sym().degree(&x2), ch.sym().degree(&y1));
                    let join = |x: &Monomial, y: &Monomial| -> Monomial {
                        x.iter().copied().chain(y.iter().map(|i| i + ng)).collect()
                    };
                    *rhs.entry((join(&x1, &y1), join(&x2, &y2))).or_insert_with(Rat::zero) += &a * &b * s;
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(Violation::new("Δ of CE(g×h) = Δ of CE(g)⊗CE(h)", format!("monomial {m:?}")));
            }
        }
    }
    Ok(())
}

/// Checks `CE^ε(g) = dual(CE_ε(g))` cell-exactly, that the coefficient
/// construction with trivial coefficients gives the same module, and that the
/// product is the transpose of `Δ`.
pub fn duality_check(g: &DgLieAlgebra, max_weight: usize) -> Result<(), Violation> {
    let hom = ce_homological(g, max_weight);
    let cohom = ce_cohomological(g, max_weight);
    if cohom.module() != &hom.module().dual() {
        return Err(Violation::new("CE^ε = dual ∘ CE_ε", "module"));
    }
    let coeff = ce_coefficients(g, &Representation::trivial(), max_weight)
        .map_err(|e| Violation::new("CE^ε(g; k) is defined", e.to_string()))?;
    if &coeff != cohom.module() {
        return Err(Violation::new("CE^ε(g; k) = CE^ε(g)", "module"));
    }
    for b in hom.bases().values() {
        for c in b.by_degree().values().flatten() {
            for ((x, y), v) in hom.comultiply(c) {
                if cohom.product(&x, &y).get(c) != Some(&v) {
                    return Err(Violation::new("product = transpose of Δ", format!("({x:?}, {y:?}) at {c:?}")));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CeSide {
    Homological,
    Cohomological,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// The weight window may cut off classes of the untruncated complex.
    WindowUnfaithful(String),
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::WindowUnfaithful(s) => write!(f, "window unfaithful: {s}"),
        }
    }
}

/// Reasons the weight window `0..=max_weight` may be a proper truncation.
pub fn window_warnings(g: &DgLieAlgebra, max_weight: usize) -> Vec<Warning> {
    let mut out = Vec::new();
    let even: Vec<&str> = g
        .names()
        .iter()
        .zip(g.degrees())
        .filter(|(_, &d)| (d - 1).rem_euclid(2) == 0)
        .map(|(n, _)| n.as_str())
        .collect();
    if !even.is_empty() {
        out.push(Warning::WindowUnfaithful(format!(
            "shifted generators of even degree ({}) make Sym unbounded; weights above {max_weight} are dropped",
            even.join(", ")
        )));
    }
    let odd = g.dim() - even.len();
    if max_weight < odd {
        out.push(Warning::WindowUnfaithful(format!("max weight {max_weight} is below the exterior bound {odd}")));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiReport {
    /// Homological degree for the homological side, cohomological degree
    /// for the cohomological side.
    pub betti: BTreeMap<i64, usize>,
    pub warnings: Vec<Warning>,
}

/// Betti numbers of the Tate realization of `CE_ε(g)` or `CE^ε(g; M)`,
/// restricted to `degrees` when given (bounds inclusive). Degrees inside the
/// window with zero homology are reported as 0.
pub fn betti(
    g: &DgLieAlgebra,
    side: CeSide,
    coefficients: Option<&Representation>,
    max_weight: usize,
    degrees: Option<(i64, i64)>,
) -> Result<BettiReport, Error> {
    validate_lie(g).map_err(|v| Error::NotValidated(v.to_string()))?;
    let (total, flip) = match (side, coefficients) {
        (CeSide::Homological, None) => (ce_homological(g, max_weight).module().tate_realization(), false),
        (CeSide::Homological, Some(_)) => {
            return Err(Error::RepInvalid("coefficients are supported on the cohomological side only".into()))
        }
        (CeSide::Cohomological, None) => (ce_cohomological(g, max_weight).module().tate_realization(), true),
        (CeSide::Cohomological, Some(m)) => (ce_coefficients(g, m, max_weight)?.tate_realization(), true),
    };
    let raw = total.homology()?;
    let mut betti: BTreeMap<i64, usize> = raw.into_iter().map(|(n, k)| (if flip { -n } else { n }, k)).collect();
    if let Some((a, b)) = degrees {
        betti.retain(|&n, _| a <= n && n <= b);
        for n in a..=b {
            betti.entry(n).or_insert(0);
        }
    }
    Ok(BettiReport { betti, warnings: window_warnings(g, max_weight) })
}
