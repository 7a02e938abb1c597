//! Independent oracles for the classical Chevalley–Eilenberg complexes.
//!
//! Nothing here goes through the mixed graded pipeline: monomials are
//! multiplicity vectors or bitmasks, signs come from explicit permutations.

#![allow(dead_code)]

use std::collections::BTreeMap;

use mgce_core::lie::fixtures::*;
use mgce_core::lie::{trivial_lie, DgLieAlgebra, Representation};
use mgce_core::linalg::{rank, RatMatrix};
use mgce_core::{rat, ChainComplex, Rat};
use num_traits::{One, Zero};

/// The bundled fixtures, by name.
pub fn fixtures() -> Vec<(&'static str, DgLieAlgebra)> {
    let mut v: Vec<(&'static str, DgLieAlgebra)> = vec![
        ("abelian_1", abelian(1)),
        ("abelian_2", abelian(2)),
        ("abelian_3", abelian(3)),
        ("abelian_4", abelian(4)),
        ("abelian_5", abelian(5)),
        ("aff1", aff1()),
        ("heis3", heis3()),
        ("sl2", sl2()),
        ("aff1_x_sl2", aff1_x_sl2()),
        ("trivial_shifted", trivial_shifted()),
    ];
    v.push(("aff1_ext", aff1_contractible_extension()));
    v
}

/// Betti numbers of a complex given by per-degree dims and differentials.
pub fn betti_of(c: &ChainComplex) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (&n, &k) in c.dims() {
        let out_rank = rank(&c.differential(n));
        let in_rank = rank(&c.differential(n + 1));
        out.insert(n, k - out_rank - in_rank);
    }
    out
}

fn binom_subsets(n: usize, p: usize) -> Vec<u32> {
    // subsets as bitmasks, ordered lexicographically as sorted index lists
    fn go(start: usize, n: usize, left: usize, acc: u32, out: &mut Vec<u32>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            go(i + 1, n, left - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    go(0, n, p, 0, &mut out);
    out
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Classical homological complex `k ⊗_{U(g)} V•(g)` of a discrete Lie algebra:
/// `d(x_1∧…∧x_n) = Σ_{i<j} (-1)^{i+j} [x_i,x_j]∧x_1∧…x̂_i…x̂_j…∧x_n`.
/// Degree `n` has the `n`-subsets in lexicographic order.
pub fn classical_homological(g: &DgLieAlgebra) -> ChainComplex {
    assert!(g.is_discrete());
    let n = g.dim();
    let mut dims = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    let subsets: Vec<Vec<u32>> = (0..=n).map(|p| binom_subsets(n, p)).collect();
    for p in 0..=n {
        dims.insert(p as i64, subsets[p].len());
    }
    for p in 2..=n {
        let index: BTreeMap<u32, usize> = subsets[p - 1].iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut mat = RatMatrix::zeros(subsets[p - 1].len(), subsets[p].len());
        for (col, &mask) in subsets[p].iter().enumerate() {
            let idx = bits(mask);
            for i in 0..p {
                for j in i + 1..p {
                    let rest = mask & !(1 << idx[i]) & !(1 << idx[j]);
                    // (i+1) + (j+1) with 1-based positions
                    let s = if (i + j) % 2 == 0 { rat(1) } else { rat(-1) };
                    for (&z, c) in &g.bracket(idx[i], idx[j]) {
                        if rest >> z & 1 == 1 {
                            continue;
                        }
                        // z in front, then sort: sign = (-1)^{#elements of rest below z}
                        let below = bits(rest).iter().filter(|&&k| k < z).count();
                        let s2 = if below % 2 == 0 { s.clone() } else { -s.clone() };
                        mat.add_to(index[&(rest | (1 << z))], col, c * s2);
                    }
                }
            }
        }
        diffs.insert(p as i64, mat);
    }
    ChainComplex::new(dims, diffs).unwrap()
}

/// Classical cochains `Hom(Λ^p g, M)` for discrete `g` and `M` concentrated
/// in degree 0, with
/// `δf(x_0,…,x_p) = Σ_i (-1)^i x_i·f(…x̂_i…) + Σ_{i<j} (-1)^{i+j} f([x_i,x_j],…)`.
/// Returned as a homologically graded complex with `C_{-p}` the `p`-cochains.
pub fn classical_cochains(g: &DgLieAlgebra, m: &Representation) -> ChainComplex {
    assert!(g.is_discrete());
    assert!(m.degrees().iter().all(|&d| d == 0));
    let n = g.dim();
    let k = m.dim();
    let subsets: Vec<Vec<u32>> = (0..=n).map(|p| binom_subsets(n, p)).collect();
    // evaluate f = E_{s, j} (sends subset s to basis vector j) on wedge words
    let wedge_sign = |word: &[usize]| -> Option<(u32, Rat)> {
        let mut w = word.to_vec();
        let mut s = Rat::one();
        for i in 0..w.len() {
            for j in 0..w.len() - 1 - i {
                if w[j] == w[j + 1] {
                    return None;
                }
                if w[j] > w[j + 1] {
                    w.swap(j, j + 1);
                    s = -s;
                }
            }
        }
        if w.windows(2).any(|p| p[0] == p[1]) {
            return None;
        }
        Some((w.iter().fold(0u32, |a, &i| a | (1 << i)), s))
    };
    let mut dims = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for p in 0..=n {
        dims.insert(-(p as i64), subsets[p].len() * k);
    }
    for p in 0..n {
        let mut mat = RatMatrix::zeros(subsets[p + 1].len() * k, subsets[p].len() * k);
        for (si, &s) in subsets[p].iter().enumerate() {
            for j in 0..k {
                let col = si * k + j;
                // δf evaluated on each (p+1)-subset t
                for (ti, &t) in subsets[p + 1].iter().enumerate() {
                    let xs = bits(t);
                    let mut val: BTreeMap<usize, Rat> = BTreeMap::new();
                    for i in 0..=p {
                        let rest: Vec<usize> =
                            xs.iter().enumerate().filter(|&(q, _)| q != i).map(|(_, &x)| x).collect();
                        if let Some((mask, sg)) = wedge_sign(&rest) {
                            if mask == s {
                                let c = if i % 2 == 0 { sg } else { -sg };
                                for (&j2, v) in &m.act_basis(xs[i], j) {
                                    *val.entry(j2).or_insert_with(Rat::zero) += &c * v;
                                }
                            }
                        }
                    }
                    for i in 0..=p {
                        for l in i + 1..=p {
                            let rest: Vec<usize> =
                                xs.iter().enumerate().filter(|&(q, _)| q != i && q != l).map(|(_, &x)| x).collect();
                            for (&z, c) in &g.bracket(xs[i], xs[l]) {
                                let mut w = vec![z];
                                w.extend_from_slice(&rest);
                                if let Some((mask, sg)) = wedge_sign(&w) {
                                    if mask == s {
                                        let c2 = if (i + l) % 2 == 0 { c * sg } else { -(c * sg) };
                                        *val.entry(j).or_insert_with(Rat::zero) += c2;
                                    }
                                }
                            }
                        }
                    }
                    for (j2, v) in val {
                        if !v.is_zero() {
                            mat.add_to(ti * k + j2, col, v);
                        }
                    }
                }
            }
        }
        diffs.insert(-(p as i64), mat);
    }
    let c = ChainComplex::new(dims, diffs).unwrap();
    c.validate().expect("classical cochains square to zero");
    c
}

/// Classical homological complex on `Sym^{≤P}(g[1])` for a graded dg Lie
/// algebra, monomials stored as multiplicity vectors:
/// `d(sx_1⋯sx_n) = Σ_i ± s(dx_i)⋯ + Σ_{i<j} ± s[x_i,x_j]⋯` with signs
/// computed by sorting explicit words.
pub fn classical_graded_homological(g: &DgLieAlgebra, max_weight: usize) -> ChainComplex {
    let n = g.dim();
    let sdeg: Vec<i64> = g.degrees().iter().map(|d| d + 1).collect();
    let odd = |i: usize| sdeg[i].rem_euclid(2) == 1;
    // enumerate multiplicity vectors of total length p
    fn vectors(n: usize, p: usize, odd: &dyn Fn(usize) -> bool) -> Vec<Vec<u32>> {
        fn go(
            i: usize,
            n: usize,
            left: usize,
            cur: &mut Vec<u32>,
            odd: &dyn Fn(usize) -> bool,
            out: &mut Vec<Vec<u32>>,
        ) {
            if i == n {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let cap = if odd(i) { left.min(1) } else { left };
            for k in 0..=cap {
                cur[i] = k as u32;
                go(i + 1, n, left - k, cur, odd, out);
            }
            cur[i] = 0;
        }
        let mut out = Vec::new();
        go(0, n, p, &mut vec![0; n], odd, &mut out);
        out
    }
    let degree = |v: &[u32]| -> i64 { v.iter().enumerate().map(|(i, &k)| sdeg[i] * k as i64).sum() };
    let word = |v: &[u32]| -> Vec<usize> {
        v.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect()
    };
    // sort a word by adjacent swaps; None if an odd letter repeats
    let sort = |w: &[usize]| -> Option<(Vec<u32>, Rat)> {
        let mut w = w.to_vec();
        let mut s = Rat::one();
        for a in 0..w.len() {
            for b in 0..w.len().saturating_sub(1 + a) {
                if w[b] > w[b + 1] {
                    if odd(w[b]) && odd(w[b + 1]) {
                        s = -s;
                    }
                    w.swap(b, b + 1);
                }
            }
        }
        let mut v = vec![0u32; n];
        for &i in &w {
            v[i] += 1;
            if odd(i) && v[i] > 1 {
                return None;
            }
        }
        Some((v, s))
    };
    let mut cells: BTreeMap<i64, Vec<Vec<u32>>> = BTreeMap::new();
    for p in 0..=max_weight {
        for v in vectors(n, p, &odd) {
            cells.entry(degree(&v)).or_default().push(v);
        }
    }
    let index: BTreeMap<Vec<u32>, usize> =
        cells.values().flat_map(|vs| vs.iter().enumerate().map(|(i, v)| (v.clone(), i))).collect();
    let mut diffs: BTreeMap<i64, RatMatrix> = BTreeMap::new();
    for (&t, vs) in &cells {
        let rows = cells.get(&(t - 1)).map_or(0, |v| v.len());
        let mut mat = RatMatrix::zeros(rows, vs.len());
        for (col, v) in vs.iter().enumerate() {
            let w = word(v);
            // sign of moving the letters at `pos` to the front
            let front = |pos: &[usize]| -> Rat {
                let mut s = Rat::one();
                for &p in pos {
                    if !odd(w[p]) {
                        continue;
                    }
                    for q in 0..p {
                        if !pos.contains(&q) && odd(w[q]) {
                            s = -s;
                        }
                    }
                }
                s
            };
            for i in 0..w.len() {
                let rest: Vec<usize> = (0..w.len()).filter(|&q| q != i).map(|q| w[q]).collect();
                for (&z, c) in g.differential(w[i]) {
                    let mut nw = vec![z];
                    nw.extend_from_slice(&rest);
                    if let Some((u, s)) = sort(&nw) {
                        // d(sx) = -s(dx)
                        mat.add_to(index[&u], col, -(c * s * front(&[i])));
                    }
                }
            }
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    let rest: Vec<usize> = (0..w.len()).filter(|&q| q != i && q != j).map(|q| w[q]).collect();
                    for (&z, c) in &g.bracket(w[i], w[j]) {
                        let mut nw = vec![z];
                        nw.extend_from_slice(&rest);
                        if let Some((u, s)) = sort(&nw) {
                            // s[x,y] from (sx)(sy) carries (-1)^{|sx|}
                            let ks = if sdeg[w[i]].rem_euclid(2) == 1 { -Rat::one() } else { Rat::one() };
                            mat.add_to(index[&u], col, c * s * front(&[i, j]) * ks);
                        }
                    }
                }
            }
        }
        if rows > 0 {
            diffs.insert(t, mat);
        }
    }
    let dims = cells.iter().map(|(&t, v)| (t, v.len())).collect();
    let c = ChainComplex::new(dims, diffs).unwrap();
    c.validate().expect("classical graded complex squares to zero");
    c
}

/// Trivial Lie algebras on random small complexes.
pub fn trivial_lies() -> Vec<DgLieAlgebra> {
    vec![
        trivial_lie(&ChainComplex::point(0)),
        trivial_lie(&ChainComplex::point(-1)),
        trivial_lie(
            &ChainComplex::new(
                BTreeMap::from([(1, 1), (0, 2)]),
                BTreeMap::from([(1, RatMatrix::from_i64(&[&[1], &[2]]))]),
            )
            .unwrap(),
        ),
    ]
}
