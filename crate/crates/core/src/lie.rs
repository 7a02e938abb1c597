//! Finite dimensional dg Lie algebras given by structure constants, their
//! representations, morphisms, and the mixed graded cone.
//!
//! Elements are sparse vectors over the generator basis. Brackets are stored
//! as explicitly supplied; a pair with only one order given is completed by
//! graded antisymmetry on lookup.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::complex::ChainComplex;
use crate::error::{Error, Violation};
use crate::linalg::{axpy_entry, sign, Rat, RatMatrix, SparseVec};
use crate::mixed::{Cell, MixedGradedModule, WeightParts};

pub(crate) fn add_scaled(acc: &mut SparseVec, c: &Rat, v: &SparseVec) {
    for (&i, x) in v {
        axpy_entry(acc, i, c * x);
    }
}

fn scaled(c: &Rat, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    add_scaled(&mut out, c, v);
    out
}

fn sum(parts: &[SparseVec]) -> SparseVec {
    let mut out = SparseVec::new();
    for p in parts {
        add_scaled(&mut out, &Rat::one(), p);
    }
    out
}

fn unit(i: usize) -> SparseVec {
    SparseVec::from([(i, Rat::one())])
}

/// Renders a linear combination using basis names, e.g. `2*e - h`.
pub fn format_vec(v: &SparseVec, names: &[String]) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (&i, c)) in v.iter().enumerate() {
        let neg = c < &Rat::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&format!("{a}*"));
        }
        s.push_str(&names[i]);
    }
    s
}

/// Chain complex spanned by homogeneous basis vectors, ordered by degree and
/// then by index, together with each vector's `(degree, position)`.
pub(crate) fn spanned_complex(degrees: &[i64], diff: &[SparseVec]) -> (ChainComplex, Vec<(i64, usize)>) {
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    let mut pos = Vec::with_capacity(degrees.len());
    for &d in degrees {
        let k = dims.entry(d).or_insert(0);
        pos.push((d, *k));
        *k += 1;
    }
    let mut diffs: BTreeMap<i64, RatMatrix> = BTreeMap::new();
    for (i, img) in diff.iter().enumerate() {
        let (n, col) = pos[i];
        for (&j, c) in img {
            let (m, row) = pos[j];
            debug_assert_eq!(m, n - 1);
            diffs
                .entry(n)
                .or_insert_with(|| RatMatrix::zeros(dims.get(&(n - 1)).copied().unwrap_or(0), dims[&n]))
                .add_to(row, col, c.clone());
        }
    }
    (ChainComplex::new(dims, diffs).expect("degree-checked basis"), pos)
}

fn homogeneous_of(v: &SparseVec, degrees: &[i64], want: i64) -> bool {
    v.keys().all(|&i| degrees[i] == want)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DgLieAlgebra {
    names: Vec<String>,
    degrees: Vec<i64>,
    diff: Vec<SparseVec>,
    bracket: BTreeMap<(usize, usize), SparseVec>,
}

impl DgLieAlgebra {
    /// Generators with zero differential and zero bracket.
    pub fn new(generators: Vec<(String, i64)>) -> Self {
        let n = generators.len();
        let (names, degrees) = generators.into_iter().unzip();
        DgLieAlgebra { names, degrees, diff: vec![SparseVec::new(); n], bracket: BTreeMap::new() }
    }

    pub fn with_differential(mut self, src: usize, image: SparseVec) -> Self {
        self.set_differential(src, image);
        self
    }

    pub fn with_bracket(mut self, left: usize, right: usize, value: SparseVec) -> Self {
        self.set_bracket(left, right, value);
        self
    }

    pub fn set_differential(&mut self, src: usize, image: SparseVec) {
        self.diff[src] = image.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }

    /// Sets `[left, right]`. The reversed pair follows by antisymmetry unless
    /// it is also set explicitly.
    pub fn set_bracket(&mut self, left: usize, right: usize, value: SparseVec) {
        self.bracket.insert((left, right), value.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_discrete(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
    }

    pub fn differential(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    /// Explicitly supplied bracket entries.
    pub fn bracket_entries(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.bracket
    }

    pub fn bracket(&self, i: usize, j: usize) -> SparseVec {
        if let Some(v) = self.bracket.get(&(i, j)) {
            return v.clone();
        }
        if let Some(v) = self.bracket.get(&(j, i)) {
            return scaled(&-sign(self.degrees[i] * self.degrees[j]), v);
        }
        SparseVec::new()
    }

    pub fn bracket_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                add_scaled(&mut out, &(a * b), &self.bracket(i, j));
            }
        }
        out
    }

    pub fn d_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in v {
            add_scaled(&mut out, a, &self.diff[i]);
        }
        out
    }

    /// Underlying chain complex; generators of one degree keep their order.
    pub fn complex(&self) -> ChainComplex {
        spanned_complex(&self.degrees, &self.diff).0
    }

    /// `(degree, index within degree)` of every generator in [`Self::complex`].
    pub fn positions(&self) -> Vec<(i64, usize)> {
        spanned_complex(&self.degrees, &[]).1
    }

    fn witness(&self, idx: &[usize]) -> String {
        let parts: Vec<&str> = idx.iter().map(|&i| self.names[i].as_str()).collect();
        format!("({})", parts.join(", "))
    }

    fn fmt(&self, v: &SparseVec) -> String {
        format_vec(v, &self.names)
    }
}

/// Checks degrees, `d∘d = 0`, graded antisymmetry, graded Jacobi and the
/// Leibniz rule on generators, reporting the first failure.
pub fn validate_lie(g: &DgLieAlgebra) -> Result<(), Violation> {
    let n = g.dim();
    let deg = &g.degrees;
    for i in 0..n {
        if !homogeneous_of(&g.diff[i], deg, deg[i] - 1) {
            return Err(Violation::new("d has degree -1", g.witness(&[i])));
        }
    }
    for (&(i, j), v) in &g.bracket {
        if i >= n || j >= n || !homogeneous_of(v, deg, deg[i] + deg[j]) {
            return Err(Violation::new("bracket is degree additive", g.witness(&[i, j])));
        }
    }
    for i in 0..n {
        let dd = g.d_vec(&g.diff[i]);
        if !dd.is_empty() {
            return Err(Violation::new("d∘d = 0", format!("{} -> {}", g.witness(&[i]), g.fmt(&dd))));
        }
    }
    for i in 0..n {
        for j in i..n {
            let (p, q) = (deg[i], deg[j]);
            let lhs = sum(&[g.bracket(i, j), scaled(&sign(p * q), &g.bracket(j, i))]);
            if !lhs.is_empty() {
                return Err(Violation::new("[x,y] + (-1)^{pq}[y,x] = 0", g.witness(&[i, j])));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let (p, q, r) = (deg[i], deg[j], deg[k]);
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let t1 = scaled(&sign(p * r), &g.bracket_vec(&x, &g.bracket(j, k)));
                let t2 = scaled(&sign(p * q), &g.bracket_vec(&y, &g.bracket(k, i)));
                let t3 = scaled(&sign(q * r), &g.bracket_vec(&z, &g.bracket(i, j)));
                let total = sum(&[t1, t2, t3]);
                if !total.is_empty() {
                    return Err(Violation::new(
                        "graded Jacobi",
                        format!("{} -> {}", g.witness(&[i, j, k]), g.fmt(&total)),
                    ));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = g.d_vec(&g.bracket(i, j));
            let rhs = sum(&[
                g.bracket_vec(&g.diff[i], &unit(j)),
                scaled(&sign(deg[i]), &g.bracket_vec(&unit(i), &g.diff[j])),
            ]);
            let diff = sum(&[lhs, scaled(&-Rat::one(), &rhs)]);
            if !diff.is_empty() {
                return Err(Violation::new("d[x,y] = [dx,y] + (-1)^p [x,dy]", g.witness(&[i, j])));
            }
        }
    }
    Ok(())
}

/// Direct sum with componentwise bracket; `h`'s generators follow `g`'s.
pub fn product_lie(g: &DgLieAlgebra, h: &DgLieAlgebra) -> DgLieAlgebra {
    let off = g.dim();
    let shift = |v: &SparseVec| -> SparseVec { v.iter().map(|(&i, c)| (i + off, c.clone())).collect() };
    let mut names = g.names.clone();
    names.extend(h.names.iter().cloned());
    let mut degrees = g.degrees.clone();
    degrees.extend(h.degrees.iter().copied());
    let mut diff = g.diff.clone();
    diff.extend(h.diff.iter().map(shift));
    let mut bracket = g.bracket.clone();
    for (&(i, j), v) in &h.bracket {
        bracket.insert((i + off, j + off), shift(v));
    }
    DgLieAlgebra { names, degrees, diff, bracket }
}

/// The abelian dg Lie algebra on a chain complex: one generator per basis
/// vector, in degree order, named `x1, x2, ...`.
pub fn trivial_lie(c: &ChainComplex) -> DgLieAlgebra {
    let mut gens = Vec::new();
    let mut first: BTreeMap<i64, usize> = BTreeMap::new();
    for (&n, &k) in c.dims() {
        first.insert(n, gens.len());
        for _ in 0..k {
            gens.push((format!("x{}", gens.len() + 1), n));
        }
    }
    let mut g = DgLieAlgebra::new(gens);
    for (&n, m) in c.differentials() {
        for (r, col, v) in m.entries() {
            let src = first[&n] + col;
            let mut img = g.diff[src].clone();
            axpy_entry(&mut img, first[&(n - 1)] + r, v.clone());
            g.diff[src] = img;
        }
    }
    g
}

/// A dg representation: a finite complex with an action of the generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Representation {
    names: Vec<String>,
    degrees: Vec<i64>,
    diff: Vec<SparseVec>,
    action: BTreeMap<(usize, usize), SparseVec>,
}

impl Representation {
    pub fn new(basis: Vec<(String, i64)>) -> Self {
        let n = basis.len();
        let (names, degrees) = basis.into_iter().unzip();
        Representation { names, degrees, diff: vec![SparseVec::new(); n], action: BTreeMap::new() }
    }

    /// The trivial one-dimensional representation in degree 0.
    pub fn trivial() -> Self {
        Self::new(vec![("1".to_string(), 0)])
    }

    /// `x·v = [x, v]`.
    pub fn adjoint(g: &DgLieAlgebra) -> Self {
        let mut m = Self::new(g.names.iter().cloned().zip(g.degrees.iter().copied()).collect());
        m.diff = g.diff.clone();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let v = g.bracket(i, j);
                if !v.is_empty() {
                    m.action.insert((i, j), v);
                }
            }
        }
        m
    }

    pub fn with_differential(mut self, src: usize, image: SparseVec) -> Self {
        self.set_differential(src, image);
        self
    }

    pub fn with_action(mut self, x: usize, v: usize, value: SparseVec) -> Self {
        self.set_action(x, v, value);
        self
    }

    pub fn set_differential(&mut self, src: usize, image: SparseVec) {
        self.diff[src] = image.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }

    pub fn set_action(&mut self, x: usize, v: usize, value: SparseVec) {
        let value: SparseVec = value.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if value.is_empty() {
            self.action.remove(&(x, v));
        } else {
            self.action.insert((x, v), value);
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn differential(&self, i: usize) -> &SparseVec {
        &self.diff[i]
    }

    pub fn action_entries(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.action
    }

    /// `x_i · v` for a basis vector `v_j`.
    pub fn act_basis(&self, x: usize, j: usize) -> SparseVec {
        self.action.get(&(x, j)).cloned().unwrap_or_default()
    }

    /// Action of a generator combination on a vector.
    pub fn act(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in v {
                if let Some(w) = self.action.get(&(i, j)) {
                    add_scaled(&mut out, &(a * b), w);
                }
            }
        }
        out
    }

    pub fn d_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in v {
            add_scaled(&mut out, a, &self.diff[i]);
        }
        out
    }

    pub fn complex(&self) -> ChainComplex {
        spanned_complex(&self.degrees, &self.diff).0
    }

    pub fn positions(&self) -> Vec<(i64, usize)> {
        spanned_complex(&self.degrees, &[]).1
    }
}

/// Checks that `m` is a dg representation of `g`:
/// `d∘d = 0`, `d(x·v) = dx·v + (-1)^{|x|} x·dv` and
/// `[x,y]·v = x·(y·v) - (-1)^{|x||y|} y·(x·v)`.
pub fn validate_rep(g: &DgLieAlgebra, m: &Representation) -> Result<(), Violation> {
    let w = |x: &[usize], v: usize| -> String {
        let mut parts: Vec<&str> = x.iter().map(|&i| g.names[i].as_str()).collect();
        parts.push(m.names[v].as_str());
        format!("({})", parts.join(", "))
    };
    for i in 0..m.dim() {
        if !homogeneous_of(&m.diff[i], &m.degrees, m.degrees[i] - 1) {
            return Err(Violation::new("d has degree -1", format!("({})", m.names[i])));
        }
    }
    for (&(x, v), img) in &m.action {
        if x >= g.dim() || v >= m.dim() || !homogeneous_of(img, &m.degrees, g.degrees[x] + m.degrees[v]) {
            return Err(Violation::new("action is degree additive", w(&[x], v)));
        }
    }
    for i in 0..m.dim() {
        if !m.d_vec(&m.diff[i]).is_empty() {
            return Err(Violation::new("d∘d = 0", format!("({})", m.names[i])));
        }
    }
    for x in 0..g.dim() {
        for v in 0..m.dim() {
            let lhs = m.d_vec(&m.act_basis(x, v));
            let rhs = sum(&[m.act(&g.diff[x], &unit(v)), scaled(&sign(g.degrees[x]), &m.act(&unit(x), &m.diff[v]))]);
            if lhs != rhs {
                return Err(Violation::new("d(x·v) = dx·v + (-1)^{|x|} x·dv", w(&[x], v)));
            }
        }
    }
    for x in 0..g.dim() {
        for y in 0..g.dim() {
            for v in 0..m.dim() {
                let lhs = m.act(&g.bracket(x, y), &unit(v));
                let xy = m.act(&unit(x), &m.act_basis(y, v));
                let yx = m.act(&unit(y), &m.act_basis(x, v));
                let rhs = sum(&[xy, scaled(&-sign(g.degrees[x] * g.degrees[y]), &yx)]);
                if lhs != rhs {
                    return Err(Violation::new("[x,y]·v = x·(y·v) - (-1)^{pq} y·(x·v)", w(&[x, y], v)));
                }
            }
        }
    }
    Ok(())
}

/// A degree-preserving linear map on generators commuting with `d` and the
/// bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieMorphism {
    source: DgLieAlgebra,
    target: DgLieAlgebra,
    images: Vec<SparseVec>,
}

impl LieMorphism {
    pub fn new(source: DgLieAlgebra, target: DgLieAlgebra, images: Vec<SparseVec>) -> Result<Self, Error> {
        if images.len() != source.dim() {
            return Err(Error::ShapeMismatch {
                context: "morphism images".into(),
                expected: source.dim(),
                found: images.len(),
            });
        }
        let images: Vec<SparseVec> =
            images.into_iter().map(|v| v.into_iter().filter(|(_, c)| !c.is_zero()).collect()).collect();
        let f = LieMorphism { source, target, images };
        f.check()?;
        Ok(f)
    }

    pub fn identity(g: &DgLieAlgebra) -> Self {
        LieMorphism { source: g.clone(), target: g.clone(), images: (0..g.dim()).map(unit).collect() }
    }

    pub fn zero(source: &DgLieAlgebra, target: &DgLieAlgebra) -> Self {
        LieMorphism { source: source.clone(), target: target.clone(), images: vec![SparseVec::new(); source.dim()] }
    }

    pub fn source(&self) -> &DgLieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &DgLieAlgebra {
        &self.target
    }

    pub fn image(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in v {
            add_scaled(&mut out, a, &self.images[i]);
        }
        out
    }

    fn check(&self) -> Result<(), Error> {
        let (g, h) = (&self.source, &self.target);
        for i in 0..g.dim() {
            if self.images[i].keys().any(|&j| j >= h.dim())
                || !homogeneous_of(&self.images[i], &h.degrees, g.degrees[i])
            {
                return Err(Error::NotLieMorphism(format!("f({}) is not of degree {}", g.names[i], g.degrees[i])));
            }
            if self.apply(&g.diff[i]) != h.d_vec(&self.images[i]) {
                return Err(Error::NotLieMorphism(format!("f(d{0}) != d f({0})", g.names[i])));
            }
        }
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                if self.apply(&g.bracket(i, j)) != h.bracket_vec(&self.images[i], &self.images[j]) {
                    return Err(Error::NotLieMorphism(format!("bracket of ({}, {})", g.names[i], g.names[j])));
                }
            }
        }
        Ok(())
    }
}

/// A dg Lie algebra with generators in weights and a mixed differential `ε`
/// of degree +1 lowering weight by one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedLieAlgebra {
    lie: DgLieAlgebra,
    weights: Vec<i64>,
    eps: Vec<SparseVec>,
}

impl MixedLieAlgebra {
    pub fn lie(&self) -> &DgLieAlgebra {
        &self.lie
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn epsilon(&self, i: usize) -> &SparseVec {
        &self.eps[i]
    }

    pub fn eps_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in v {
            add_scaled(&mut out, a, &self.eps[i]);
        }
        out
    }

    /// The underlying mixed graded module. Inside a cell, generators keep
    /// their order.
    pub fn module(&self) -> MixedGradedModule {
        let mut dims: BTreeMap<Cell, usize> = BTreeMap::new();
        let mut pos = Vec::new();
        for (i, &w) in self.weights.iter().enumerate() {
            let k = dims.entry((w, self.lie.degrees[i])).or_insert(0);
            pos.push(*k);
            *k += 1;
        }
        let cell = |i: usize| (self.weights[i], self.lie.degrees[i]);
        let mut weights: WeightParts = BTreeMap::new();
        for (&(w, n), &k) in &dims {
            weights.entry(w).or_default().0.insert(n, k);
        }
        let mut mixed: BTreeMap<Cell, RatMatrix> = BTreeMap::new();
        for i in 0..self.lie.dim() {
            let (w, n) = cell(i);
            for (&j, c) in &self.lie.diff[i] {
                let rows = dims[&cell(j)];
                weights
                    .get_mut(&w)
                    .expect("weight present")
                    .1
                    .entry(n)
                    .or_insert_with(|| RatMatrix::zeros(rows, dims[&(w, n)]))
                    .add_to(pos[j], pos[i], c.clone());
            }
            for (&j, c) in &self.eps[i] {
                let rows = dims[&cell(j)];
                mixed.entry((w, n)).or_insert_with(|| RatMatrix::zeros(rows, dims[&(w, n)])).add_to(
                    pos[j],
                    pos[i],
                    c.clone(),
                );
            }
        }
        let weights =
            weights.into_iter().map(|(w, (dm, ds))| (w, ChainComplex::new(dm, ds).expect("degree-checked"))).collect();
        MixedGradedModule::new(weights, mixed).expect("cell-checked")
    }

    /// Lie axioms, `ε` of weight -1 and degree +1, `ε∘ε = 0`,
    /// `εd + dε = 0`, and `ε[a,b] = [εa,b] + (-1)^{|a|}[a,εb]`.
    pub fn validate(&self) -> Result<(), Violation> {
        validate_lie(&self.lie)?;
        let g = &self.lie;
        let n = g.dim();
        for i in 0..n {
            if self.eps[i].keys().any(|&j| g.degrees[j] != g.degrees[i] + 1 || self.weights[j] != self.weights[i] - 1) {
                return Err(Violation::new("ε has weight -1 and degree +1", g.witness(&[i])));
            }
            for &j in g.diff[i].keys() {
                if self.weights[j] != self.weights[i] {
                    return Err(Violation::new("d preserves weight", g.witness(&[i])));
                }
            }
        }
        for (&(i, j), v) in &g.bracket {
            if v.keys().any(|&k| self.weights[k] != self.weights[i] + self.weights[j]) {
                return Err(Violation::new("bracket is weight additive", g.witness(&[i, j])));
            }
        }
        for i in 0..n {
            if !self.eps_vec(&self.eps[i]).is_empty() {
                return Err(Violation::new("ε∘ε = 0", g.witness(&[i])));
            }
            let anti = sum(&[self.eps_vec(&g.diff[i]), g.d_vec(&self.eps[i])]);
            if !anti.is_empty() {
                return Err(Violation::new("ε∘d + d∘ε = 0", g.witness(&[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.eps_vec(&g.bracket(i, j));
                let rhs = sum(&[
                    g.bracket_vec(&self.eps[i], &unit(j)),
                    scaled(&sign(g.degrees[i]), &g.bracket_vec(&unit(i), &self.eps[j])),
                ]);
                if lhs != rhs {
                    return Err(Violation::new("ε[a,b] = [εa,b] + (-1)^{|a|}[a,εb]", g.witness(&[i, j])));
                }
            }
        }
        Ok(())
    }
}

/// Name of the shifted copy of a generator in the cone.
pub fn bar_name(name: &str) -> String {
    format!("~{name}")
}

/// The mixed graded cone: `g` in weight 0, `ḡ = g[-1]` in weight 1 with
/// `ε(ā) = a` and `d(ā) = -overline(da)`.
///
/// Brackets: `[x, ȳ] = (-1)^{|x|} overline([x,y])`, `[ȳ, x] = overline([y,x])`,
/// `[x̄, ȳ] = 0`. The sign on the first is forced by the Leibniz rule once
/// `d` is nonzero.
pub fn cone_mixed(g: &DgLieAlgebra) -> Result<MixedLieAlgebra, Error> {
    let n = g.dim();
    let bar = |v: &SparseVec| -> SparseVec { v.iter().map(|(&i, c)| (i + n, c.clone())).collect() };
    let mut gens: Vec<(String, i64)> = g.names.iter().cloned().zip(g.degrees.iter().copied()).collect();
    gens.extend(g.names.iter().zip(&g.degrees).map(|(s, &d)| (bar_name(s), d - 1)));
    let mut lie = DgLieAlgebra::new(gens);
    for i in 0..n {
        lie.set_differential(i, g.diff[i].clone());
        lie.set_differential(i + n, scaled(&-Rat::one(), &bar(&g.diff[i])));
    }
    for i in 0..n {
        for j in 0..n {
            let b = g.bracket(i, j);
            if b.is_empty() {
                continue;
            }
            lie.set_bracket(i, j, b.clone());
            lie.set_bracket(i, j + n, scaled(&sign(g.degrees[i]), &bar(&b)));
            lie.set_bracket(j + n, i, bar(&g.bracket(j, i)));
        }
    }
    let weights = (0..2 * n).map(|i| if i < n { 0 } else { 1 }).collect();
    let eps = (0..2 * n).map(|i| if i < n { SparseVec::new() } else { unit(i - n) }).collect();
    let cone = MixedLieAlgebra { lie, weights, eps };
    cone.validate().map_err(|v| Error::AxiomFailure(format!("cone: {v}")))?;
    Ok(cone)
}

/// Standard small algebras used by the tests and the command line tool.
pub mod fixtures {
    use super::*;
    use rand::Rng;

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, crate::rat(c))).collect()
    }

    fn named(names: &[&str], degree: i64) -> Vec<(String, i64)> {
        names.iter().map(|s| (s.to_string(), degree)).collect()
    }

    /// `n` degree-0 generators `x1..xn`, zero bracket.
    pub fn abelian(n: usize) -> DgLieAlgebra {
        DgLieAlgebra::new((1..=n).map(|i| (format!("x{i}"), 0)).collect())
    }

    /// `[e1, e2] = e1`.
    pub fn aff1() -> DgLieAlgebra {
        DgLieAlgebra::new(named(&["e1", "e2"], 0)).with_bracket(0, 1, v(&[(0, 1)]))
    }

    /// Basis `e, f, h` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> DgLieAlgebra {
        DgLieAlgebra::new(named(&["e", "f", "h"], 0))
            .with_bracket(2, 0, v(&[(0, 2)]))
            .with_bracket(2, 1, v(&[(1, -2)]))
            .with_bracket(0, 1, v(&[(2, 1)]))
    }

    /// `[x, y] = z`.
    pub fn heis3() -> DgLieAlgebra {
        DgLieAlgebra::new(named(&["x", "y", "z"], 0)).with_bracket(0, 1, v(&[(2, 1)]))
    }

    /// One generator `t` in degree -1, zero bracket.
    pub fn trivial_shifted() -> DgLieAlgebra {
        DgLieAlgebra::new(vec![("t".into(), -1)])
    }

    pub fn aff1_x_sl2() -> DgLieAlgebra {
        product_lie(&aff1(), &sl2())
    }

    /// `aff(1)` extended by the contractible ideal spanned by `a` (degree 1)
    /// and `b = da` (degree 0), with `[e2, a] = a`, `[e2, b] = b`.
    pub fn aff1_contractible_extension() -> DgLieAlgebra {
        DgLieAlgebra::new(vec![("e1".into(), 0), ("e2".into(), 0), ("a".into(), 1), ("b".into(), 0)])
            .with_differential(2, v(&[(3, 1)]))
            .with_bracket(0, 1, v(&[(0, 1)]))
            .with_bracket(1, 2, v(&[(2, 1)]))
            .with_bracket(1, 3, v(&[(3, 1)]))
    }

    /// The projection of [`aff1_contractible_extension`] onto `aff(1)`; a
    /// surjective quasi-isomorphism.
    pub fn contractible_projection() -> LieMorphism {
        LieMorphism::new(
            aff1_contractible_extension(),
            aff1(),
            vec![v(&[(0, 1)]), v(&[(1, 1)]), SparseVec::new(), SparseVec::new()],
        )
        .expect("projection is a morphism")
    }

    /// A random two-step nilpotent algebra of dimension at most `max_dim`:
    /// brackets of the first block land in a central block, so Jacobi holds
    /// identically. With `graded`, generators get degrees in `{-1, 0, 1}`.
    pub fn random_two_step<R: Rng>(rng: &mut R, max_dim: usize, graded: bool) -> DgLieAlgebra {
        let dim = rng.gen_range(1..=max_dim.max(1));
        let top = rng.gen_range(1..=dim);
        let mut degrees: Vec<i64> = (0..top).map(|_| if graded { rng.gen_range(-1..=1) } else { 0 }).collect();
        let mut sums: Vec<i64> = Vec::new();
        for i in 0..top {
            for j in i..top {
                let s = degrees[i] + degrees[j];
                let allowed = i != j || (degrees[i].rem_euclid(2) == 1);
                if allowed && !sums.contains(&s) {
                    sums.push(s);
                }
            }
        }
        for _ in top..dim {
            degrees.push(if sums.is_empty() { 0 } else { sums[rng.gen_range(0..sums.len())] });
        }
        let gens = degrees.iter().enumerate().map(|(i, &d)| (format!("a{}", i + 1), d)).collect();
        let mut g = DgLieAlgebra::new(gens);
        for i in 0..top {
            for j in i..top {
                if i == j && degrees[i].rem_euclid(2) == 0 {
                    continue;
                }
                let mut val = SparseVec::new();
                for k in top..dim {
                    if degrees[k] == degrees[i] + degrees[j] {
                        let c: i64 = rng.gen_range(-2..=2);
                        if c != 0 {
                            val.insert(k, crate::rat(c));
                        }
                    }
                }
                if !val.is_empty() {
                    g.set_bracket(i, j, val);
                }
            }
        }
        g
    }
}
