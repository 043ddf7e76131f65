use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::ring::{xgcd, Coefficient};
use super::{Integer, SparseIntMatrix};

/// `A = U * D * V` with `U`, `V` invertible over the coefficient ring and
/// `D` diagonal with a divisor chain `d_0 | d_1 | ... | d_{r-1}` on its
/// leading diagonal. The inverses are kept because every cohomology
/// computation needs them (coordinates go through `U^-1`, kernels through
/// `V^-1`).
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub coefficient: Coefficient,
    pub u: SparseIntMatrix,
    pub d: SparseIntMatrix,
    pub v: SparseIntMatrix,
    pub u_inv: SparseIntMatrix,
    pub v_inv: SparseIntMatrix,
    pub divisors: Vec<Integer>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Some `x` with `A x = b`, or `None` when the system has no solution
    /// over the coefficient ring.
    pub fn solve(&self, b: &[Integer]) -> Result<Option<Vec<Integer>>> {
        let ring = self.coefficient;
        let c = self.u_inv.mul_vec(b)?;
        let r = self.rank();
        let mut y = vec![BigInt::zero(); self.v.nrows()];
        for (i, ci) in c.iter().enumerate() {
            let ci = ring.normalize_ref(ci);
            if i < r {
                if !ring.divides(&self.divisors[i], &ci) {
                    return Ok(None);
                }
                y[i] = ring.exact_div(&ci, &self.divisors[i]);
            } else if !ci.is_zero() {
                return Ok(None);
            }
        }
        let x: Vec<Integer> = self.v_inv.mul_vec(&y)?.into_iter().map(|t| ring.normalize(t)).collect();
        Ok(Some(x))
    }

    /// A basis of `ker A`: the trailing columns of `V^-1`.
    pub fn kernel_basis(&self) -> Vec<Vec<Integer>> {
        (self.rank()..self.v_inv.ncols()).map(|j| self.v_inv.column(j)).collect()
    }
}

/// Smith normal form over the integers.
pub fn smith_normal_form(a: &SparseIntMatrix) -> SmithDecomposition {
    smith_normal_form_over(a, Coefficient::Integers)
}

/// Smith normal form over `ring`; over a prime field every divisor is 1.
pub fn smith_normal_form_over(a: &SparseIntMatrix, ring: Coefficient) -> SmithDecomposition {
    let mut e = Eliminator::new(a, ring, true);
    e.run();
    e.finish()
}

/// Elementary divisors only, skipping the transform bookkeeping.
pub fn elementary_divisors(a: &SparseIntMatrix, ring: Coefficient) -> Vec<Integer> {
    let mut e = Eliminator::new(a, ring, false);
    e.run();
    e.finish().divisors
}

/// Integer (or mod-p) solution of `A x = b`, verified by substitution.
pub fn solve_integer(a: &SparseIntMatrix, b: &[Integer]) -> Result<Option<Vec<Integer>>> {
    if b.len() != a.nrows() {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            a.nrows()
        )));
    }
    let snf = smith_normal_form(a);
    let x = snf.solve(b)?;
    if let Some(x) = &x {
        debug_assert_eq!(&a.mul_vec(x)?, b);
    }
    Ok(x)
}

/// Rows of a matrix under elementary row operations.
struct RowStore {
    rows: Vec<BTreeMap<usize, Integer>>,
    ring: Coefficient,
}

impl RowStore {
    fn identity(n: usize, ring: Coefficient) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut m = BTreeMap::new();
                m.insert(i, BigInt::one());
                m
            })
            .collect();
        RowStore { rows, ring }
    }

    /// `row_i += k * row_j`
    fn add(&mut self, i: usize, j: usize, k: &Integer) {
        if k.is_zero() {
            return;
        }
        let src: Vec<(usize, Integer)> = self.rows[j].iter().map(|(c, v)| (*c, v * k)).collect();
        let ring = self.ring;
        let dst = &mut self.rows[i];
        for (c, v) in src {
            let entry = dst.entry(c).or_insert_with(BigInt::zero);
            *entry = ring.normalize(&*entry + v);
            if entry.is_zero() {
                dst.remove(&c);
            }
        }
    }

    /// `(row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)`
    fn combine(&mut self, i: usize, j: usize, m: [&Integer; 4]) {
        let [a, b, c, d] = m;
        let cols: BTreeSet<usize> = self.rows[i].keys().chain(self.rows[j].keys()).copied().collect();
        let zero = BigInt::zero();
        let mut new_i = BTreeMap::new();
        let mut new_j = BTreeMap::new();
        for col in cols {
            let x = self.rows[i].get(&col).unwrap_or(&zero);
            let y = self.rows[j].get(&col).unwrap_or(&zero);
            let vi = self.ring.normalize(a * x + b * y);
            let vj = self.ring.normalize(c * x + d * y);
            if !vi.is_zero() {
                new_i.insert(col, vi);
            }
            if !vj.is_zero() {
                new_j.insert(col, vj);
            }
        }
        self.rows[i] = new_i;
        self.rows[j] = new_j;
    }

    fn scale(&mut self, i: usize, u: &Integer) {
        let ring = self.ring;
        for v in self.rows[i].values_mut() {
            *v = ring.normalize(&*v * u);
        }
    }

    fn permute(&mut self, order: &[usize]) {
        let mut old = std::mem::take(&mut self.rows);
        self.rows = order.iter().map(|&o| std::mem::take(&mut old[o])).collect();
    }

    fn into_matrix(self, cols: usize) -> SparseIntMatrix {
        SparseIntMatrix::from_row_maps(self.rows.len(), cols, self.rows)
    }
}

/// Transforms accumulated while eliminating: `P A Q = D`. `P` and `Q^-1`
/// are stored by rows, `P^-1` and `Q` by columns (transposed), so that every
/// update is a row operation on its store.
struct Transforms {
    p: RowStore,
    p_inv_t: RowStore,
    q_t: RowStore,
    q_inv: RowStore,
}

struct Eliminator {
    ring: Coefficient,
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Integer>>,
    cols: Vec<BTreeSet<usize>>,
    pivots: Vec<(usize, usize, Integer)>,
    tf: Option<Transforms>,
}

impl Eliminator {
    fn new(a: &SparseIntMatrix, ring: Coefficient, track: bool) -> Self {
        let (nrows, ncols) = (a.nrows(), a.ncols());
        let mut rows: Vec<BTreeMap<usize, Integer>> = vec![BTreeMap::new(); nrows];
        let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (i, j, v) in a.iter() {
            let v = ring.normalize_ref(v);
            if !v.is_zero() {
                rows[i].insert(j, v);
                cols[j].insert(i);
            }
        }
        let tf = track.then(|| Transforms {
            p: RowStore::identity(nrows, ring),
            p_inv_t: RowStore::identity(nrows, ring),
            q_t: RowStore::identity(ncols, ring),
            q_inv: RowStore::identity(ncols, ring),
        });
        Eliminator { ring, nrows, ncols, rows, cols, pivots: Vec::new(), tf }
    }

    fn set(&mut self, i: usize, j: usize, v: Integer) {
        if v.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    fn get(&self, i: usize, j: usize) -> Integer {
        self.rows[i].get(&j).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `row_i += k row_j`
    fn row_add(&mut self, i: usize, j: usize, k: &Integer) {
        let src: Vec<(usize, Integer)> = self.rows[j].iter().map(|(c, v)| (*c, v * k)).collect();
        for (c, v) in src {
            let nv = self.ring.normalize(self.get(i, c) + v);
            self.set(i, c, nv);
        }
        if let Some(tf) = &mut self.tf {
            tf.p.add(i, j, k);
            tf.p_inv_t.add(j, i, &-k);
        }
    }

    /// `col_j += k col_i`
    fn col_add(&mut self, j: usize, i: usize, k: &Integer) {
        let src: Vec<(usize, Integer)> = self.cols[i].iter().map(|r| (*r, &self.rows[*r][&i] * k)).collect();
        for (r, v) in src {
            let nv = self.ring.normalize(self.get(r, j) + v);
            self.set(r, j, nv);
        }
        if let Some(tf) = &mut self.tf {
            tf.q_t.add(j, i, k);
            tf.q_inv.add(i, j, &-k);
        }
    }

    /// Rows `(i, j) <- E (i, j)` for `E = [[a, b], [c, d]]` with `det E = 1`.
    fn row_pair(&mut self, i: usize, j: usize, a: &Integer, b: &Integer, c: &Integer, d: &Integer) {
        let touched: BTreeSet<usize> = self.rows[i].keys().chain(self.rows[j].keys()).copied().collect();
        for col in touched {
            let (x, y) = (self.get(i, col), self.get(j, col));
            let ni = self.ring.normalize(a * &x + b * &y);
            let nj = self.ring.normalize(c * &x + d * &y);
            self.set(i, col, ni);
            self.set(j, col, nj);
        }
        if let Some(tf) = &mut self.tf {
            tf.p.combine(i, j, [a, b, c, d]);
            tf.p_inv_t.combine(i, j, [d, &-c, &-b, a]);
        }
    }

    /// Columns: `col_i <- a col_i + c col_j`, `col_j <- b col_i + d col_j`, `ad - bc = 1`.
    fn col_pair(&mut self, i: usize, j: usize, a: &Integer, b: &Integer, c: &Integer, d: &Integer) {
        let touched: BTreeSet<usize> = self.cols[i].iter().chain(self.cols[j].iter()).copied().collect();
        for row in touched {
            let (x, y) = (self.get(row, i), self.get(row, j));
            let ni = self.ring.normalize(a * &x + c * &y);
            let nj = self.ring.normalize(b * &x + d * &y);
            self.set(row, i, ni);
            self.set(row, j, nj);
        }
        if let Some(tf) = &mut self.tf {
            tf.q_t.combine(i, j, [a, c, b, d]);
            tf.q_inv.combine(i, j, [d, &-b, &-c, a]);
        }
    }

    fn row_scale(&mut self, i: usize, u: &Integer) {
        let cols: Vec<usize> = self.rows[i].keys().copied().collect();
        for c in cols {
            let nv = self.ring.normalize(self.get(i, c) * u);
            self.set(i, c, nv);
        }
        if let Some(tf) = &mut self.tf {
            tf.p.scale(i, u);
            tf.p_inv_t.scale(i, &self.ring.unit_inverse(u));
        }
    }

    /// Smallest-magnitude entry, ties broken by Markowitz cost then position.
    fn choose_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(Integer, usize, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let rlen = row.len();
            for (j, v) in row {
                let key_mag = self.ring.magnitude(v);
                let cost = (rlen - 1) * (self.cols[*j].len() - 1);
                let better = match &best {
                    None => true,
                    Some((m, c, bi, bj)) => (&key_mag, cost, i, *j) < (m, *c, *bi, *bj),
                };
                if better {
                    let unit = key_mag.is_one();
                    best = Some((key_mag, cost, i, *j));
                    if unit && cost == 0 {
                        return Some((i, *j));
                    }
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    fn run(&mut self) {
        while let Some((r, c)) = self.choose_pivot() {
            self.eliminate(r, c);
            let mut p = self.get(r, c);
            let u = self.ring.normalizing_unit(&p);
            if !u.is_one() {
                self.row_scale(r, &u);
                p = self.get(r, c);
            }
            self.set(r, c, BigInt::zero());
            self.pivots.push((r, c, p));
        }
    }

    /// Clears row `r` and column `c` except the pivot.
    fn eliminate(&mut self, r: usize, c: usize) {
        loop {
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let a = self.get(i, c);
                if a.is_zero() {
                    continue;
                }
                let p = self.get(r, c);
                if self.ring.divides(&p, &a) {
                    let q = self.ring.exact_div(&a, &p);
                    self.row_add(i, r, &-q);
                } else {
                    let (g, s, t) = xgcd(&p, &a);
                    self.row_pair(r, i, &s, &t, &-(&a / &g), &(&p / &g));
                }
            }
            let mut col_dirty = false;
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
            for j in others {
                let b = self.get(r, j);
                if b.is_zero() {
                    continue;
                }
                let p = self.get(r, c);
                if self.ring.divides(&p, &b) {
                    let q = self.ring.exact_div(&b, &p);
                    self.col_add(j, c, &-q);
                } else {
                    let (g, s, t) = xgcd(&p, &b);
                    self.col_pair(c, j, &s, &-(&b / &g), &t, &(&p / &g));
                    col_dirty = true;
                }
            }
            // a gcd column step can refill column c; the pivot shrank, so repeat
            if !col_dirty || self.cols[c].len() <= 1 {
                break;
            }
        }
    }

    fn finish(mut self) -> SmithDecomposition {
        let ring = self.ring;
        let used_rows: BTreeSet<usize> = self.pivots.iter().map(|p| p.0).collect();
        let used_cols: BTreeSet<usize> = self.pivots.iter().map(|p| p.1).collect();
        let row_order: Vec<usize> = self
            .pivots
            .iter()
            .map(|p| p.0)
            .chain((0..self.nrows).filter(|i| !used_rows.contains(i)))
            .collect();
        let col_order: Vec<usize> = self
            .pivots
            .iter()
            .map(|p| p.1)
            .chain((0..self.ncols).filter(|j| !used_cols.contains(j)))
            .collect();
        let mut diag: Vec<Integer> = self.pivots.iter().map(|p| p.2.clone()).collect();
        if let Some(tf) = &mut self.tf {
            tf.p.permute(&row_order);
            tf.p_inv_t.permute(&row_order);
            tf.q_t.permute(&col_order);
            tf.q_inv.permute(&col_order);
        }

        if ring == Coefficient::Integers {
            // enforce d_i | d_j by replacing pairs with (gcd, lcm)
            for i in 0..diag.len() {
                for j in (i + 1)..diag.len() {
                    if (&diag[j] % &diag[i]).is_zero() {
                        continue;
                    }
                    let (a, b) = (diag[i].clone(), diag[j].clone());
                    let (g, s, t) = xgcd(&a, &b);
                    let (a1, b1) = (&a / &g, &b / &g);
                    if let Some(tf) = &mut self.tf {
                        let one = BigInt::one();
                        tf.p.add(i, j, &one);
                        tf.p_inv_t.add(j, i, &-&one);
                        // col_i <- s col_i + t col_j, col_j <- -b1 col_i + a1 col_j
                        let mb1 = -&b1;
                        tf.q_t.combine(i, j, [&s, &t, &mb1, &a1]);
                        tf.q_inv.combine(i, j, [&a1, &b1, &-&t, &s]);
                        let k = -(&t * &b1);
                        tf.p.add(j, i, &k);
                        tf.p_inv_t.add(i, j, &-&k);
                    }
                    diag[i] = g;
                    diag[j] = &a1 * &b;
                }
            }
        }

        let d = SparseIntMatrix::from_triplets(
            self.nrows,
            self.ncols,
            diag.iter().enumerate().map(|(i, v)| (i, i, v.clone())),
        )
        .expect("diagonal within bounds");

        let (u, u_inv, v, v_inv) = match self.tf {
            Some(tf) => (
                tf.p_inv_t.into_matrix(self.nrows).transpose(),
                tf.p.into_matrix(self.nrows),
                tf.q_inv.into_matrix(self.ncols),
                tf.q_t.into_matrix(self.ncols).transpose(),
            ),
            None => (
                SparseIntMatrix::zeros(0, 0),
                SparseIntMatrix::zeros(0, 0),
                SparseIntMatrix::zeros(0, 0),
                SparseIntMatrix::zeros(0, 0),
            ),
        };
        SmithDecomposition { coefficient: ring, u, d, v, u_inv, v_inv, divisors: diag }
    }
}
