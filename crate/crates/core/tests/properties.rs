//! Randomized laws for the exact linear algebra and the complex operations.

use std::collections::BTreeMap;

use mgce_core::ce::ce_homological;
use mgce_core::lie::fixtures::random_two_step;
use mgce_core::linalg::{kernel_basis, rank};
use mgce_core::{rat, ChainComplex, Rat, RatMatrix};
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

fn matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            let mut m = RatMatrix::zeros(r, c);
            for (k, x) in v.into_iter().enumerate() {
                if x != 0 {
                    m.set(k / c.max(1), k % c.max(1), rat(x));
                }
            }
            m
        })
    })
}

/// Dense textbook Gaussian elimination, used as the rank oracle.
fn dense_rank(m: &RatMatrix) -> usize {
    let (r, c) = m.shape();
    let mut a: Vec<Vec<Rat>> = (0..r).map(|i| (0..c).map(|j| m.get(i, j)).collect()).collect();
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, piv);
        for i in 0..r {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] / &a[rank][col];
                for j in 0..c {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Unit upper triangular matrix from a seed vector: always invertible.
fn unipotent(n: usize, seed: &[i64]) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            let x = seed.get(k % seed.len().max(1)).copied().unwrap_or(0);
            k += 1;
            if x != 0 {
                m.set(i, j, rat(x));
            }
        }
    }
    m
}

/// A three-term complex `C_2 → C_1 → C_0` with `d_2` built from kernel
/// vectors of a random `d_1`, so `d∘d = 0` by construction.
fn complex() -> impl Strategy<Value = ChainComplex> {
    (matrix(4), prop::collection::vec(-2i64..=2, 0..12), 0usize..4).prop_map(|(d1, mix, c2)| {
        let ker = kernel_basis(&d1);
        let mut d2 = RatMatrix::zeros(d1.cols(), c2);
        if !ker.is_empty() {
            for col in 0..c2 {
                for (k, v) in ker.iter().enumerate() {
                    let s = mix.get((col * ker.len() + k) % mix.len().max(1)).copied().unwrap_or(1);
                    for (&i, x) in v {
                        d2.add_to(i, col, x * rat(s));
                    }
                }
            }
        }
        let dims = BTreeMap::from([(0, d1.rows()), (1, d1.cols()), (2, c2)]);
        ChainComplex::new(dims, BTreeMap::from([(1, d1), (2, d2)])).expect("d∘d = 0")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_matches_dense_elimination(m in matrix(6)) {
        prop_assert_eq!(rank(&m), dense_rank(&m));
    }

    #[test]
    fn rank_plus_nullity(m in matrix(6)) {
        let ker = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).values().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn transpose_preserves_rank(m in matrix(6)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn invertible_change_of_basis_preserves_rank(m in matrix(5), s in prop::collection::vec(-2i64..=2, 1..10)) {
        let p = unipotent(m.rows(), &s);
        let q = unipotent(m.cols(), &s).transpose();
        prop_assert_eq!(rank(&p.mul(&m).mul(&q)), rank(&m));
    }

    #[test]
    fn euler_characteristic_of_homology(c in complex()) {
        let h = c.homology().unwrap();
        let chi: i64 = h.iter().map(|(&n, &k)| if n % 2 == 0 { k as i64 } else { -(k as i64) }).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
    }

    #[test]
    fn tensor_and_shift_square_to_zero(a in complex(), b in complex(), k in -3i64..=3) {
        let t = a.tensor(&b.shift(k));
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(t.euler_characteristic(), a.euler_characteristic() * b.shift(k).euler_characteristic());
    }

    #[test]
    fn dual_is_an_involution(c in complex()) {
        prop_assert_eq!(c.dual().dual(), c.clone());
        prop_assert!(c.dual().validate().is_ok());
    }

    #[test]
    fn kunneth_on_betti_numbers(a in complex(), b in complex()) {
        let (ha, hb) = (a.homology().unwrap(), b.homology().unwrap());
        let mut want: BTreeMap<i64, usize> = BTreeMap::new();
        for (&i, &x) in &ha {
            for (&j, &y) in &hb {
                *want.entry(i + j).or_insert(0) += x * y;
            }
        }
        let got = a.tensor(&b).homology().unwrap();
        let nonzero = |m: BTreeMap<i64, usize>| m.into_iter().filter(|&(_, k)| k > 0).collect::<BTreeMap<_, _>>();
        prop_assert_eq!(nonzero(got), nonzero(want));
    }

    #[test]
    fn mixed_tensor_and_dual_of_ce_modules(seed in any::<u64>()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let g = random_two_step(&mut rng, 3, true);
        let h = random_two_step(&mut rng, 2, true);
        let a = ce_homological(&g, 2).module().clone();
        let b = ce_homological(&h, 2).module().clone();
        prop_assert!(a.tensor(&b).validate().is_ok());
        prop_assert!(a.dual().validate().is_ok());
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert!(a.tate_realization().validate().is_ok());
    }
}
