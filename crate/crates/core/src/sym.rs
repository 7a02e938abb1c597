//! Graded-commutative symmetric algebras on finitely many homogeneous
//! generators: monomial bases, Koszul-signed normal forms, coderivations and
//! the shuffle coproduct.
//!
//! A monomial is a nondecreasing list of generator indices in which odd
//! generators appear at most once.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::linalg::{Rat, SparseVec};

pub type Monomial = Vec<usize>;

/// Linear combination of monomials.
pub type MonoComb = BTreeMap<Monomial, Rat>;

pub fn add_term(c: &mut MonoComb, m: Monomial, v: Rat) {
    if v.is_zero() {
        return;
    }
    let slot = c.entry(m.clone()).or_insert_with(Rat::zero);
    *slot += v;
    if slot.is_zero() {
        c.remove(&m);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymAlgebra {
    degrees: Vec<i64>,
}

impl SymAlgebra {
    pub fn new(degrees: Vec<i64>) -> Self {
        SymAlgebra { degrees }
    }

    pub fn generator_degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn is_odd(&self, g: usize) -> bool {
        self.degrees[g].rem_euclid(2) == 1
    }

    pub fn degree(&self, word: &[usize]) -> i64 {
        word.iter().map(|&g| self.degrees[g]).sum()
    }

    fn parity(&self, word: &[usize]) -> bool {
        word.iter().filter(|&&g| self.is_odd(g)).count() % 2 == 1
    }

    /// Sorts a word into a monomial, returning the Koszul sign of the
    /// permutation (`true` = negative), or `None` if an odd generator repeats.
    pub fn normalize(&self, word: &[usize]) -> Option<(bool, Monomial)> {
        let mut w = word.to_vec();
        let mut neg = false;
        // insertion sort, tracking transpositions of odd neighbours
        for i in 1..w.len() {
            let mut j = i;
            while j > 0 && w[j - 1] > w[j] {
                if self.is_odd(w[j - 1]) && self.is_odd(w[j]) {
                    neg = !neg;
                }
                w.swap(j - 1, j);
                j -= 1;
            }
        }
        if w.windows(2).any(|p| p[0] == p[1] && self.is_odd(p[0])) {
            return None;
        }
        Some((neg, w))
    }

    /// Sign of moving the entries at `positions` (increasing) to the front,
    /// keeping their relative order (`true` = negative).
    pub fn front_sign(&self, word: &[usize], positions: &[usize]) -> bool {
        let mut neg = false;
        let mut chosen = vec![false; word.len()];
        for &p in positions {
            chosen[p] = true;
        }
        for &p in positions {
            if !self.is_odd(word[p]) {
                continue;
            }
            for k in 0..p {
                if !chosen[k] && self.is_odd(word[k]) {
                    neg = !neg;
                }
            }
        }
        neg
    }

    /// Monomials of word length `p`, grouped by degree, each group in
    /// lexicographic order.
    pub fn basis(&self, p: usize) -> SymBasis {
        let mut all = Vec::new();
        let mut cur = Vec::with_capacity(p);
        self.enumerate(p, 0, &mut cur, &mut all);
        SymBasis::from_monomials(all.into_iter().map(|m| (self.degree(&m), m)))
    }

    fn enumerate(&self, p: usize, start: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for g in start..self.len() {
            cur.push(g);
            let next = if self.is_odd(g) { g + 1 } else { g };
            self.enumerate(p, next, cur, out);
            cur.pop();
        }
    }

    fn push_product(&self, out: &mut MonoComb, word: Vec<usize>, coeff: Rat) {
        if let Some((neg, m)) = self.normalize(&word) {
            add_term(out, m, if neg { -coeff } else { coeff });
        }
    }

    /// Coderivation (equivalently, derivation) extending a linear map on
    /// generators: `D(a_1⋯a_k) = Σ_i ± f(a_i)·a_1⋯â_i⋯a_k`, where `±` is the
    /// Koszul sign of moving `a_i` to the front.
    pub fn coderivation_linear(&self, images: &[SparseVec], word: &[usize]) -> MonoComb {
        let mut out = MonoComb::new();
        for i in 0..word.len() {
            let img = &images[word[i]];
            if img.is_empty() {
                continue;
            }
            let s = if self.front_sign(word, &[i]) { -Rat::one() } else { Rat::one() };
            let rest: Vec<usize> = word.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &g)| g).collect();
            for (&h, c) in img {
                let mut w = Vec::with_capacity(word.len());
                w.push(h);
                w.extend_from_slice(&rest);
                self.push_product(&mut out, w, &s * c);
            }
        }
        out
    }

    /// Coderivation with quadratic corestriction `q`:
    /// `D(a_1⋯a_k) = Σ_{i<j} ± q(a_i, a_j)·(rest)`, `±` the Koszul sign of moving
    /// `a_i, a_j` to the front.
    pub fn coderivation_quadratic(&self, q: impl Fn(usize, usize) -> SparseVec, word: &[usize]) -> MonoComb {
        let mut out = MonoComb::new();
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                let img = q(word[i], word[j]);
                if img.is_empty() {
                    continue;
                }
                let s = if self.front_sign(word, &[i, j]) { -Rat::one() } else { Rat::one() };
                let rest: Vec<usize> =
                    word.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &g)| g).collect();
                for (&h, c) in &img {
                    let mut w = Vec::with_capacity(word.len() - 1);
                    w.push(h);
                    w.extend_from_slice(&rest);
                    self.push_product(&mut out, w, &s * c);
                }
            }
        }
        out
    }

    /// Shuffle coproduct `Δ(a_1⋯a_k) = Σ_S ± a_S ⊗ a_{S^c}` over all subsets `S`.
    pub fn coproduct(&self, word: &[usize]) -> BTreeMap<(Monomial, Monomial), Rat> {
        let k = word.len();
        let mut out: BTreeMap<(Monomial, Monomial), Rat> = BTreeMap::new();
        for mask in 0u64..(1u64 << k) {
            let positions: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let left: Vec<usize> = positions.iter().map(|&i| word[i]).collect();
            let right: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 0).map(|i| word[i]).collect();
            let (Some((nl, l)), Some((nr, r))) = (self.normalize(&left), self.normalize(&right)) else { continue };
            let neg = self.front_sign(word, &positions) ^ nl ^ nr;
            let slot = out.entry((l, r)).or_insert_with(Rat::zero);
            if neg {
                *slot -= Rat::one();
            } else {
                *slot += Rat::one();
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Product of two monomials, normalized.
    pub fn multiply(&self, a: &[usize], b: &[usize]) -> MonoComb {
        let mut out = MonoComb::new();
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        self.push_product(&mut out, w, Rat::one());
        out
    }

    /// Whether a monomial has odd total parity.
    pub fn is_odd_monomial(&self, m: &[usize]) -> bool {
        self.parity(m)
    }
}

/// Monomials of one word length, grouped by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymBasis {
    by_degree: BTreeMap<i64, Vec<Monomial>>,
    index: HashMap<Monomial, (i64, usize)>,
}

impl SymBasis {
    pub fn from_monomials(items: impl IntoIterator<Item = (i64, Monomial)>) -> Self {
        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for (d, m) in items {
            by_degree.entry(d).or_default().push(m);
        }
        let mut index = HashMap::new();
        for (&d, ms) in &by_degree {
            for (i, m) in ms.iter().enumerate() {
                index.insert(m.clone(), (d, i));
            }
        }
        SymBasis { by_degree, index }
    }

    pub fn by_degree(&self) -> &BTreeMap<i64, Vec<Monomial>> {
        &self.by_degree
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.by_degree.iter().map(|(&d, v)| (d, v.len())).collect()
    }

    pub fn locate(&self, m: &Monomial) -> Option<(i64, usize)> {
        self.index.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}
