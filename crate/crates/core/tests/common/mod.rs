#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use obstruction_core::cohomology::CochainSpace;
use obstruction_core::exec::Execution;
use obstruction_core::linalg::{Coefficient, Integer};
use obstruction_core::operations::{cup_cochains, cup_i_cochains};
use obstruction_core::simplicial::SimplicialPair;
use rand::Rng;

/// Corpus complexes exercised by the randomized chain-level checks.
pub const COMPLEXES: &[&str] = &[
    "s1", "s2", "s3", "s4", "s5", "hexagon", "cp2", "rp2", "rp4", "s2xs2", "torus", "klein", "s3_hopf", "s3_hopf_d2",
];

pub fn random_cochain<R: Rng>(rng: &mut R, len: usize, ring: Coefficient) -> Vec<Integer> {
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.4) {
                ring.normalize(BigInt::from(rng.gen_range(-2i64..=2)))
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

fn add(a: &[Integer], b: &[Integer], ring: Coefficient) -> Vec<Integer> {
    a.iter().zip(b).map(|(x, y)| ring.normalize(x + y)).collect()
}

fn scale(a: &[Integer], s: i64, ring: Coefficient) -> Vec<Integer> {
    a.iter().map(|x| ring.normalize(x * s)).collect()
}

fn zero_vec(a: &[Integer]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Integral and mod-2 cochains on one corpus space, built once per process
/// so the cached (co)homology groups are shared across rounds.
pub struct Spaces {
    pub z: Arc<CochainSpace>,
    pub z2: Arc<CochainSpace>,
}

pub fn spaces(id: &str) -> Arc<Spaces> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<Spaces>>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache
        .entry(id.to_string())
        .or_insert_with(|| {
            let pair: Arc<SimplicialPair> = obstruction_core::corpus::space(id).unwrap();
            Arc::new(Spaces {
                z: CochainSpace::new(pair.clone(), Coefficient::Z),
                z2: CochainSpace::new(pair, Coefficient::Z2),
            })
        })
        .clone()
}

/// One randomized round of every chain-level identity on `pair`:
/// `∂∂ = 0`, `δδ = 0`, Leibniz over `Z`, the cup-i coboundary formula
/// over `Z/2`, and invariance of cup classes under changing representatives.
pub fn chain_identities<R: Rng>(spaces: &Spaces, rng: &mut R) -> Result<(), String> {
    let (z, z2) = (&spaces.z, &spaces.z2);
    let pair = z.pair();
    let dim = pair.dimension();
    let ex = Execution::Sequential;

    if dim >= 2 {
        let k = rng.gen_range(2..=dim);
        let c = random_cochain(rng, pair.relative_count(k), Coefficient::Z);
        let dc = pair.relative_boundary(k).mul_vec(&c).unwrap();
        if !zero_vec(&pair.relative_boundary(k - 1).mul_vec(&dc).unwrap()) {
            return Err(format!("boundary of a boundary is nonzero in degree {k}"));
        }
        let k = rng.gen_range(0..=dim - 2);
        let a = random_cochain(rng, pair.relative_count(k), Coefficient::Z);
        if !zero_vec(&z.coboundary(k + 1, &z.coboundary(k, &a).unwrap()).unwrap()) {
            return Err(format!("coboundary squared is nonzero in degree {k}"));
        }
    }

    if dim >= 1 {
        // Leibniz: δ(a ∪ b) = δa ∪ b + (-1)^p a ∪ δb
        let p = rng.gen_range(0..dim);
        let q = rng.gen_range(0..dim - p);
        let ring = Coefficient::Z;
        let a = random_cochain(rng, pair.relative_count(p), ring);
        let b = random_cochain(rng, pair.relative_count(q), ring);
        let lhs = z.coboundary(p + q, &cup_cochains(pair, ring, p, &a, q, &b, ex)).unwrap();
        let t1 = cup_cochains(pair, ring, p + 1, &z.coboundary(p, &a).unwrap(), q, &b, ex);
        let t2 = cup_cochains(pair, ring, p, &a, q + 1, &z.coboundary(q, &b).unwrap(), ex);
        let rhs = add(&t1, &scale(&t2, if p % 2 == 0 { 1 } else { -1 }, ring), ring);
        if lhs != rhs {
            return Err(format!("Leibniz rule fails for degrees ({p}, {q})"));
        }

        // δ(x ∪_i y) = x ∪_{i-1} y + y ∪_{i-1} x + δx ∪_i y + x ∪_i δy  (mod 2)
        let ring = Coefficient::Z2;
        let p = rng.gen_range(0..dim);
        let q = rng.gen_range(0..dim - p);
        let i = rng.gen_range(0..=p.min(q));
        let x = random_cochain(rng, pair.relative_count(p), ring);
        let y = random_cochain(rng, pair.relative_count(q), ring);
        let n = p + q - i;
        let lhs = z2.coboundary(n, &cup_i_cochains(pair, i, p, &x, q, &y, ex)).unwrap();
        let mut rhs = vec![BigInt::zero(); pair.relative_count(n + 1)];
        if i > 0 {
            rhs = add(&rhs, &cup_i_cochains(pair, i - 1, p, &x, q, &y, ex), ring);
            rhs = add(&rhs, &cup_i_cochains(pair, i - 1, q, &y, p, &x, ex), ring);
        }
        rhs = add(&rhs, &cup_i_cochains(pair, i, p + 1, &z2.coboundary(p, &x).unwrap(), q, &y, ex), ring);
        rhs = add(&rhs, &cup_i_cochains(pair, i, p, &x, q + 1, &z2.coboundary(q, &y).unwrap(), ex), ring);
        if lhs != rhs {
            return Err(format!("cup-{i} coboundary formula fails for degrees ({p}, {q})"));
        }
    }

    if dim >= 2 {
        // the class of x ∪ y depends only on the classes of x and y
        let space = if rng.gen_bool(0.5) { z } else { z2 };
        let ring = space.coefficient();
        let p = rng.gen_range(1..dim);
        let q = rng.gen_range(1..=dim - p);
        let x = random_class(space, p, rng);
        let y = random_class(space, q, rng);
        let x2 = x.plus_coboundary(&random_cochain(rng, pair.relative_count(p - 1), ring)).unwrap();
        let y2 = y.plus_coboundary(&random_cochain(rng, pair.relative_count(q - 1), ring)).unwrap();
        let a = obstruction_core::operations::cup(&x, &y).unwrap();
        let b = obstruction_core::operations::cup(&x2, &y2).unwrap();
        if a != b {
            return Err(format!("cup class changes with representatives in degrees ({p}, {q}) over {ring}"));
        }
    }
    Ok(())
}

pub fn random_class<R: Rng>(
    space: &Arc<CochainSpace>,
    k: usize,
    rng: &mut R,
) -> obstruction_core::cohomology::CohomologyClass {
    let g = space.group(k);
    let n = g.free_rank + g.torsion.len();
    let coords: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    space.from_coordinates(k, &coords).unwrap()
}
