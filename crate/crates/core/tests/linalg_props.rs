//! Smith normal form against brute-force oracles on small matrices.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, Zero};
use obstruction_core::linalg::{
    elementary_divisors, smith_normal_form, smith_normal_form_over, solve_integer, Coefficient, SparseIntMatrix,
};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `D_k` = gcd of all `k x k` minors, for `k = 1..`, stopping at the rank.
fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let d = determinantal_divisors(m);
    (0..d.len()).map(|k| if k == 0 { d[0] } else { d[k] / d[k - 1] }).collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn rank_mod_p(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn divisors_match_minor_gcds(m in matrix()) {
        let a = SparseIntMatrix::from_dense(&m);
        let got: Vec<BigInt> = elementary_divisors(&a, Coefficient::Z);
        prop_assert_eq!(got, big(&invariant_factors(&m)));
    }

    #[test]
    fn transforms_reconstruct_the_matrix(m in matrix()) {
        let a = SparseIntMatrix::from_dense(&m);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), a.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), SparseIntMatrix::identity(a.nrows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), SparseIntMatrix::identity(a.ncols()));
        for (i, j, v) in s.d.iter() {
            prop_assert_eq!(i, j);
            prop_assert!(i < s.rank() && *v == s.divisors[i]);
        }
        for w in s.divisors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.divisors.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn solvability_matches_determinantal_criterion(m in matrix(), seed in prop::collection::vec(-3i64..=3, 4)) {
        let a = SparseIntMatrix::from_dense(&m);
        let b: Vec<i64> = (0..m.len()).map(|i| seed[i]).collect();
        let mut aug = m.clone();
        for (row, bi) in aug.iter_mut().zip(&b) {
            row.push(*bi);
        }
        // A x = b is solvable over Z iff A and [A | b] share determinantal divisors
        let solvable = determinantal_divisors(&m) == determinantal_divisors(&aug);
        let x = solve_integer(&a, &big(&b)).unwrap();
        prop_assert_eq!(x.is_some(), solvable);
        if let Some(x) = x {
            prop_assert_eq!(a.mul_vec(&x).unwrap(), big(&b));
        }
    }

    #[test]
    fn images_are_always_solvable(m in matrix(), x0 in prop::collection::vec(-5i64..=5, 4)) {
        let a = SparseIntMatrix::from_dense(&m);
        let x0 = big(&x0[..m[0].len()]);
        let b = a.mul_vec(&x0).unwrap();
        let x = smith_normal_form(&a).solve(&b).unwrap().expect("b lies in the image");
        prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn kernel_basis_is_annihilated(m in matrix()) {
        let a = SparseIntMatrix::from_dense(&m);
        let s = smith_normal_form(&a);
        let k = s.kernel_basis();
        prop_assert_eq!(k.len(), a.ncols() - s.rank());
        for v in &k {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn field_rank_matches_gaussian_elimination(m in matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let a = SparseIntMatrix::from_dense(&m);
        let ring = Coefficient::modulo(p).unwrap();
        let s = smith_normal_form_over(&a, ring);
        prop_assert_eq!(s.rank(), rank_mod_p(&m, p as i64));
        prop_assert!(s.divisors.iter().all(|d| *d == BigInt::from(1)));
    }
}

#[test]
fn larger_random_matrices_reconstruct() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (r, c) = (rng.gen_range(5..25), rng.gen_range(5..25));
        let m: Vec<Vec<i64>> =
            (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(0.3) { rng.gen_range(-9..=9) } else { 0 }).collect()).collect();
        let a = SparseIntMatrix::from_dense(&m);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), a);
        // rational rank, read modulo a prime far larger than any minor's small factors
        assert_eq!(s.rank(), rank_mod_p(&m, 1_000_003));
    }
}
