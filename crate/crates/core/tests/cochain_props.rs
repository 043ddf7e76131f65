mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use obstruction_core::cohomology::{cohomology, degree, homology, pullback, CochainSpace};
use obstruction_core::corpus;
use obstruction_core::linalg::Coefficient;
use obstruction_core::operations::{cup, hopf_invariant, hopf_invariant_by_primitive, steenrod_sq};
use obstruction_core::simplicial::{SimplicialMap, SimplicialPair};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ids() -> impl Strategy<Value = &'static str> {
    prop::sample::select(common::COMPLEXES.to_vec())
}

fn pair(id: &str) -> Arc<SimplicialPair> {
    corpus::space(id).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn chain_level_identities(id in ids(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::chain_identities(&common::spaces(id), &mut rng).map_err(|e| TestCaseError::fail(format!("{id}: {e}")))?;
    }

    #[test]
    fn chain_identities_on_thom_pairs(id in prop::sample::select(vec!["thom_e1", "thom_e0"]), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::chain_identities(&common::spaces(id), &mut rng).map_err(|e| TestCaseError::fail(format!("{id}: {e}")))?;
    }

    #[test]
    fn squares_at_the_ends(id in ids(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = common::spaces(id).z2.clone();
        for k in 0..=space.dimension() {
            let x = common::random_class(&space, k, &mut rng);
            prop_assert_eq!(steenrod_sq(0, &x).unwrap(), x.clone());
            prop_assert_eq!(steenrod_sq(k, &x).unwrap(), cup(&x, &x).unwrap());
            prop_assert!(steenrod_sq(k + 1, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn squares_are_additive(id in ids(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = common::spaces(id).z2.clone();
        let k = 1 + (seed as usize) % space.dimension().max(1);
        let x = common::random_class(&space, k.min(space.dimension()), &mut rng);
        let y = common::random_class(&space, x.degree(), &mut rng);
        for i in 0..=x.degree() {
            let lhs = steenrod_sq(i, &x.add(&y).unwrap()).unwrap();
            let rhs = steenrod_sq(i, &x).unwrap().add(&steenrod_sq(i, &y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// Self-maps of a boundary simplex permuting vertices have the sign of
    /// the permutation as degree; degrees multiply under composition.
    #[test]
    fn degree_of_vertex_permutations(n in 1usize..=4, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let k = corpus::boundary_simplex(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p: Vec<usize> = (0..=n + 1).collect();
        let mut q = p.clone();
        p.shuffle(&mut rng);
        q.shuffle(&mut rng);
        let f = SimplicialMap::new(k.clone(), k.clone(), p.clone()).unwrap();
        let g = SimplicialMap::new(k.clone(), k.clone(), q.clone()).unwrap();
        prop_assert_eq!(degree(&f).unwrap(), BigInt::from(parity(&p)));
        let gf = g.compose_after(&f).unwrap();
        prop_assert_eq!(degree(&gf).unwrap(), degree(&f).unwrap() * degree(&g).unwrap());
        // pullback is functorial on the top class
        let top = CochainSpace::absolute(k.clone(), Coefficient::Z).generator(n, 0).unwrap();
        let two_step = pullback(&f, &pullback(&g, &top).unwrap()).unwrap();
        prop_assert_eq!(two_step, pullback(&gf, &top).unwrap());
    }
}

fn parity(p: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

#[test]
fn euler_characteristic_and_universal_coefficients() {
    for id in common::COMPLEXES {
        let k = corpus::complex(id).unwrap();
        let z: Vec<_> = (0..=k.dimension() + 1).map(|d| homology(&k, d, Coefficient::Z).unwrap()).collect();
        let z2: Vec<_> = (0..=k.dimension()).map(|d| homology(&k, d, Coefficient::Z2).unwrap()).collect();
        let chi: i64 = z.iter().enumerate().map(|(d, g)| if d % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) }).sum();
        assert_eq!(chi, k.euler_characteristic(), "{id}");
        let even = |d: usize| z[d].torsion.iter().filter(|t| (*t % 2u32).is_zero()).count();
        for d in 0..=k.dimension() {
            let want = z[d].free_rank + even(d) + if d > 0 { even(d - 1) } else { 0 };
            assert_eq!(z2[d].free_rank, want, "{id}: mod-2 Betti number in degree {d}");
        }
        // cohomology: free part agrees with homology, torsion shifts up one degree
        for d in 0..=k.dimension() {
            let h = cohomology(&SimplicialPair::absolute(k.clone()), d, Coefficient::Z).unwrap();
            assert_eq!(h.free_rank, z[d].free_rank, "{id} degree {d}");
            let shifted = if d > 0 { z[d - 1].torsion.clone() } else { vec![] };
            assert_eq!(h.torsion, shifted, "{id} degree {d}");
        }
    }
}

#[test]
fn first_square_is_the_cup_square_on_rp2() {
    let space = CochainSpace::new(pair("rp2"), Coefficient::Z2);
    let x = space.generator(1, 0).unwrap();
    let sq1 = steenrod_sq(1, &x).unwrap();
    assert!(!sq1.is_zero());
    assert_eq!(sq1, cup(&x, &x).unwrap());
}

#[test]
fn rp4_cohomology_ring_is_truncated_polynomial() {
    let space = CochainSpace::new(pair("rp4"), Coefficient::Z2);
    let x = space.generator(1, 0).unwrap();
    let mut power = x.clone();
    for k in 2..=4 {
        power = cup(&power, &x).unwrap();
        assert!(!power.is_zero(), "x^{k}");
    }
    // Sq^1 x^3 = x^4 and Sq^2 x^2 = x^4 in RP^4
    let x2 = cup(&x, &x).unwrap();
    let x3 = cup(&x2, &x).unwrap();
    assert_eq!(steenrod_sq(1, &x3).unwrap(), power);
    assert_eq!(steenrod_sq(2, &x2).unwrap(), power);
    assert!(steenrod_sq(1, &x2).unwrap().is_zero());
}

#[test]
fn hopf_invariant_agrees_with_primitive_oracle() {
    for (id, d) in [("hopf_map", 1), ("hopf_map_d2", 2), ("hopf_map_d3", 3)] {
        let f = corpus::map(id).unwrap();
        let h = hopf_invariant(&f).unwrap();
        assert_eq!(h, hopf_invariant_by_primitive(&f).unwrap(), "{id}");
        assert_eq!(h, BigInt::from(-d), "{id}");
    }
    let c = corpus::map("s3_to_s2_constant").unwrap();
    assert!(hopf_invariant(&c).unwrap().is_zero());
    assert!(hopf_invariant_by_primitive(&c).unwrap().is_zero());
}

#[test]
fn hopf_invariant_is_multiplicative_in_source_degree() {
    let h = corpus::map("hopf_map").unwrap();
    let base = hopf_invariant(&h).unwrap();
    for id in ["s3_wrap_d2", "s3_wrap_d3"] {
        let g = corpus::map(id).unwrap();
        let hg = h.compose_after(&g).unwrap();
        assert_eq!(hopf_invariant(&hg).unwrap(), degree(&g).unwrap() * &base, "{id}");
    }
    // post-composing with a reflection of S^2 keeps H (degree squared)
    let r = corpus::map("s2_reflection").unwrap();
    assert_eq!(hopf_invariant(&r.compose_after(&h).unwrap()).unwrap(), base);
}

#[test]
fn pullback_along_wrap_multiplies_top_class() {
    let f = corpus::map("hexagon_wrap").unwrap();
    let top = CochainSpace::absolute(f.target().clone(), Coefficient::Z).generator(1, 0).unwrap();
    let m = corpus::oriented("hexagon").unwrap();
    let tm = corpus::oriented("s1").unwrap();
    let pulled = pullback(&f, &top).unwrap();
    assert_eq!(m.evaluate(&pulled).unwrap(), BigInt::from(2) * tm.evaluate(&top).unwrap());
    assert!(!tm.evaluate(&top).unwrap().is_zero() && tm.evaluate(&top).unwrap().magnitude().is_one());
}
