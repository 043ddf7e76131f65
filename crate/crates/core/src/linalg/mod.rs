//! Exact integer linear algebra: sparse matrices, Smith normal form,
//! integer system solving and reduction mod p.

mod modp;
mod ring;
mod smith;
mod sparse;

pub use modp::{is_prime, reduce_mod_p, reduce_vector_mod_p, ModpMatrix};
pub use ring::Coefficient;
pub use smith::{elementary_divisors, smith_normal_form, smith_normal_form_over, solve_integer, SmithDecomposition};
pub use sparse::{Integer, SparseIntMatrix};
