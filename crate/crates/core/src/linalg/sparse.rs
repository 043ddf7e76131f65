use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer used for every matrix entry and cochain value.
pub type Integer = BigInt;

/// Sparse integer matrix in row-major form. Each row keeps its nonzero
/// entries sorted by column; zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Integer)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, BigInt::one())]).collect();
        SparseIntMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed; entries that end up zero are dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Integer)>,
    {
        let mut acc: Vec<BTreeMap<usize, Integer>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            *acc[i].entry(j).or_insert_with(BigInt::zero) += v;
        }
        Ok(Self::from_row_maps(rows, cols, acc))
    }

    pub(crate) fn from_row_maps(rows: usize, cols: usize, maps: Vec<BTreeMap<usize, Integer>>) -> Self {
        let data = maps
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseIntMatrix { rows, cols, data }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let data = dense
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, BigInt::from(*v)))
                    .collect()
            })
            .collect();
        SparseIntMatrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, Integer)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Integer {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.data[i][pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Iterates `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Integer)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.iter() {
            data[j].push((i, v.clone()));
        }
        SparseIntMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let maps = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Integer> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(BigInt::zero) += a * b;
                    }
                }
                acc
            })
            .collect();
        Ok(Self::from_row_maps(self.rows, other.cols, maps))
    }

    pub fn mul_vec(&self, x: &[Integer]) -> Result<Vec<Integer>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().fold(BigInt::zero(), |s, (j, a)| s + a * &x[*j]))
            .collect())
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> SparseIntMatrix {
        let mut position = vec![None; self.cols];
        for (new, &old) in keep.iter().enumerate() {
            position[old] = Some(new);
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut r: Vec<(usize, Integer)> = row
                    .iter()
                    .filter_map(|(j, v)| position[*j].map(|n| (n, v.clone())))
                    .collect();
                r.sort_by_key(|(j, _)| *j);
                r
            })
            .collect();
        SparseIntMatrix { rows: self.rows, cols: keep.len(), data }
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Integer>]) -> SparseIntMatrix {
        let mut data: Vec<Vec<(usize, Integer)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[i].push((j, v.clone()));
                }
            }
        }
        SparseIntMatrix { rows, cols: columns.len(), data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Integer>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn map_entries<F: Fn(&Integer) -> Integer>(&self, f: F) -> SparseIntMatrix {
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(j, v)| (*j, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseIntMatrix { rows: self.rows, cols: self.cols, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = SparseIntMatrix::from_triplets(
            2,
            2,
            vec![(0, 0, BigInt::from(1)), (0, 0, BigInt::from(-1)), (1, 1, BigInt::from(3))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(3));
        assert!(SparseIntMatrix::from_triplets(1, 1, vec![(1, 0, BigInt::one())]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![0, 3]]);
        let b = SparseIntMatrix::from_dense(&[vec![4, 0], vec![1, -1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseIntMatrix::from_dense(&[vec![6, -2], vec![3, -3]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(
            a.mul_vec(&[BigInt::from(1), BigInt::from(1)]).unwrap(),
            vec![BigInt::from(3), BigInt::from(3)]
        );
        assert!(a.mul(&SparseIntMatrix::zeros(3, 1)).is_err());
    }
}
