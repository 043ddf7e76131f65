use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::{Coefficient, Integer, SparseIntMatrix};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An integer matrix with entries reduced into `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModpMatrix {
    pub modulus: u64,
    pub inner: SparseIntMatrix,
}

impl ModpMatrix {
    pub fn coefficient(&self) -> Coefficient {
        Coefficient::Mod(self.modulus)
    }
}

pub fn reduce_mod_p(a: &SparseIntMatrix, p: u64) -> Result<ModpMatrix> {
    if !is_prime(p) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    let ring = Coefficient::Mod(p);
    Ok(ModpMatrix { modulus: p, inner: a.map_entries(|v| ring.normalize_ref(v)) })
}

pub fn reduce_vector_mod_p(v: &[Integer], p: u64) -> Result<Vec<Integer>> {
    if !is_prime(p) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    let m = BigInt::from(p);
    Ok(v.iter().map(|x| num_integer::Integer::mod_floor(x, &m)).collect())
}
