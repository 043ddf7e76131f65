//! Finite simplicial complexes, full-subcomplex pairs and simplicial maps.
//!
//! Simplices are strictly increasing vertex tuples, listed per dimension in
//! lexicographic order; every matrix in the crate is relative to that order.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::SparseIntMatrix;

pub type Simplex = Vec<usize>;

#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

/// Downward closure of `top_simplices` on the vertex set `0..=max`.
pub fn build_complex(top_simplices: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let n = top_simplices.iter().flatten().max().map_or(0, |m| m + 1);
    SimplicialComplex::from_top_simplices(n, top_simplices)
}

impl SimplicialComplex {
    /// Every vertex in `0..vertex_count` is a 0-simplex, listed or not.
    pub fn from_top_simplices(vertex_count: usize, top_simplices: &[Vec<usize>]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Validation("a complex needs at least one vertex".into()));
        }
        let mut closure: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new()];
        for v in 0..vertex_count {
            closure[0].insert(vec![v]);
        }
        for raw in top_simplices {
            let mut s = raw.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::MalformedSimplex(raw.clone(), "empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedSimplex(raw.clone(), "repeated vertex".into()));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::MalformedSimplex(
                    raw.clone(),
                    format!("vertex {v} outside 0..{vertex_count}"),
                ));
            }
            let k = s.len() - 1;
            if closure.len() <= k {
                closure.resize_with(k + 1, BTreeSet::new);
            }
            if closure[k].contains(&s) {
                continue;
            }
            // all nonempty subsets
            let m = s.len();
            for mask in 1u64..(1u64 << m) {
                let face: Simplex = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                closure[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = closure.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex { vertex_count, simplices, index })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    /// The `k`-simplices in canonical order (empty above the dimension).
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for k in 1..self.simplices.len() {
            for s in &self.simplices[k] {
                for i in 0..s.len() {
                    let face = drop_vertex(s, i);
                    covered[k - 1][self.index[k - 1][&face]] = true;
                }
            }
        }
        let mut out = Vec::new();
        for (k, list) in self.simplices.iter().enumerate() {
            for (i, s) in list.iter().enumerate() {
                if !covered[k][i] {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.maximal_simplices().iter().all(|s| s.len() == d + 1)
    }

    /// Matrix of the boundary map from `k`-chains to `(k-1)`-chains.
    pub fn boundary_matrix(&self, k: usize) -> Result<SparseIntMatrix> {
        if k == 0 || k > self.dimension() {
            return Err(Error::Dimension(format!(
                "boundary in degree {k} on a complex of dimension {}",
                self.dimension()
            )));
        }
        Ok(self.boundary_or_zero(k))
    }

    /// Like [`Self::boundary_matrix`] but total: the zero map outside `1..=dim`.
    pub fn boundary_or_zero(&self, k: usize) -> SparseIntMatrix {
        if k == 0 || k > self.dimension() {
            return SparseIntMatrix::zeros(if k == 0 { 0 } else { self.count(k - 1) }, self.count(k));
        }
        let mut triplets = Vec::with_capacity(self.count(k) * (k + 1));
        for (j, s) in self.simplices[k].iter().enumerate() {
            for i in 0..s.len() {
                let face = drop_vertex(s, i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                triplets.push((self.index[k - 1][&face], j, BigInt::from(sign)));
            }
        }
        SparseIntMatrix::from_triplets(self.count(k - 1), self.count(k), triplets).expect("faces are indexed")
    }

    /// Closed star minus open star of `v`, on the original vertex labels.
    pub fn link(&self, v: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for list in self.simplices.iter().skip(1) {
            for s in list {
                if let Ok(pos) = s.binary_search(&v) {
                    out.push(drop_vertex(s, pos));
                }
            }
        }
        out
    }

    /// The full subcomplex spanned by `vertices`, relabelled `0..vertices.len()`
    /// in increasing order of the original labels.
    pub fn induced_subcomplex(&self, vertices: &[usize]) -> Result<(SimplicialComplex, Vec<usize>)> {
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.vertex_count) {
            return Err(Error::InvalidPair(format!("vertex {v} is not in the complex")));
        }
        if keep.is_empty() {
            return Err(Error::InvalidPair("empty subcomplex".into()));
        }
        let inclusion: Vec<usize> = keep.iter().copied().collect();
        let relabel: HashMap<usize, usize> = inclusion.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let tops: Vec<Simplex> = self
            .simplices
            .iter()
            .flatten()
            .filter(|s| s.iter().all(|v| keep.contains(v)))
            .map(|s| s.iter().map(|v| relabel[v]).collect())
            .collect();
        Ok((SimplicialComplex::from_top_simplices(inclusion.len(), &tops)?, inclusion))
    }

    /// Top simplices re-listed, for serialisation.
    pub fn top_simplices(&self) -> Vec<Simplex> {
        self.maximal_simplices()
    }
}

pub(crate) fn drop_vertex(s: &[usize], i: usize) -> Simplex {
    let mut f = Vec::with_capacity(s.len() - 1);
    f.extend_from_slice(&s[..i]);
    f.extend_from_slice(&s[i + 1..]);
    f
}

/// Staircase triangulation of `|K| x |L|`. Vertex `(u, w)` is `u * |L| + w`;
/// each pair of maximal simplices contributes one simplex per monotone
/// lattice path through its vertex grid.
pub fn product_complex(k: &SimplicialComplex, l: &SimplicialComplex) -> SimplicialComplex {
    let nl = l.vertex_count();
    let mut tops = Vec::new();
    let (mk, ml) = (k.maximal_simplices(), l.maximal_simplices());
    for s in &mk {
        for t in &ml {
            for path in lattice_paths(s.len() - 1, t.len() - 1) {
                tops.push(path.iter().map(|&(a, b)| s[a] * nl + t[b]).collect());
            }
        }
    }
    SimplicialComplex::from_top_simplices(k.vertex_count() * nl, &tops).expect("product of valid complexes")
}

/// Monotone paths `(0,0) -> (p,q)` taking unit steps right or up.
fn lattice_paths(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur = vec![(0, 0)];
    fn go(p: usize, q: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let (a, b) = *cur.last().unwrap();
        if a == p && b == q {
            out.push(cur.clone());
            return;
        }
        if a < p {
            cur.push((a + 1, b));
            go(p, q, cur, out);
            cur.pop();
        }
        if b < q {
            cur.push((a, b + 1));
            go(p, q, cur, out);
            cur.pop();
        }
    }
    go(p, q, &mut cur, &mut out);
    out
}

/// The two projections of `product_complex(k, l)`.
pub fn product_projections(
    k: &Arc<SimplicialComplex>,
    l: &Arc<SimplicialComplex>,
    product: &Arc<SimplicialComplex>,
) -> Result<(SimplicialMap, SimplicialMap)> {
    let nl = l.vertex_count();
    let n = product.vertex_count();
    let p1 = SimplicialMap::new(product.clone(), k.clone(), (0..n).map(|v| v / nl).collect())?;
    let p2 = SimplicialMap::new(product.clone(), l.clone(), (0..n).map(|v| v % nl).collect())?;
    Ok((p1, p2))
}

/// A complex together with a full subcomplex; the subcomplex keeps the
/// total complex's vertex labels through `inclusion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialPair {
    total: Arc<SimplicialComplex>,
    sub: Option<SimplicialComplex>,
    inclusion: Vec<usize>,
    in_sub: Vec<Vec<bool>>,
    relative: Vec<Vec<usize>>,
    position: Vec<Vec<Option<usize>>>,
}

impl SimplicialPair {
    /// `K` relative to the empty subcomplex.
    pub fn absolute(total: Arc<SimplicialComplex>) -> Self {
        Self::assemble(total, None, Vec::new())
    }

    /// The pair `(K, K[vertices])` for the full subcomplex on `vertices`.
    pub fn induced(total: Arc<SimplicialComplex>, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Ok(Self::absolute(total));
        }
        let (sub, inclusion) = total.induced_subcomplex(vertices)?;
        Ok(Self::assemble(total, Some(sub), inclusion))
    }

    /// Validates that `sub` embeds as a full subcomplex via `inclusion`.
    pub fn new(total: Arc<SimplicialComplex>, sub: SimplicialComplex, inclusion: Vec<usize>) -> Result<Self> {
        if inclusion.len() != sub.vertex_count() {
            return Err(Error::InvalidPair(format!(
                "inclusion lists {} vertices, subcomplex has {}",
                inclusion.len(),
                sub.vertex_count()
            )));
        }
        let distinct: BTreeSet<usize> = inclusion.iter().copied().collect();
        if distinct.len() != inclusion.len() || inclusion.iter().any(|&v| v >= total.vertex_count()) {
            return Err(Error::InvalidPair("inclusion is not injective into the vertex set".into()));
        }
        for list in &sub.simplices {
            for s in list {
                let mut img: Simplex = s.iter().map(|&v| inclusion[v]).collect();
                img.sort_unstable();
                if !total.contains(&img) {
                    return Err(Error::InvalidPair(format!("subcomplex simplex {s:?} is not in the total complex")));
                }
            }
        }
        let (full, _) = total.induced_subcomplex(&inclusion)?;
        if full.f_vector() != sub.f_vector() {
            return Err(Error::InvalidPair("subcomplex is not full".into()));
        }
        Ok(Self::assemble(total, Some(sub), inclusion))
    }

    fn assemble(total: Arc<SimplicialComplex>, sub: Option<SimplicialComplex>, inclusion: Vec<usize>) -> Self {
        let keep: BTreeSet<usize> = inclusion.iter().copied().collect();
        let in_sub: Vec<Vec<bool>> = total
            .simplices
            .iter()
            .map(|l| l.iter().map(|s| sub.is_some() && s.iter().all(|v| keep.contains(v))).collect())
            .collect();
        let mut relative = Vec::new();
        let mut position = Vec::new();
        for flags in &in_sub {
            let mut rel = Vec::new();
            let mut pos = vec![None; flags.len()];
            for (i, &f) in flags.iter().enumerate() {
                if !f {
                    pos[i] = Some(rel.len());
                    rel.push(i);
                }
            }
            relative.push(rel);
            position.push(pos);
        }
        SimplicialPair { total, sub, inclusion, in_sub, relative, position }
    }

    pub fn total(&self) -> &Arc<SimplicialComplex> {
        &self.total
    }

    pub fn sub(&self) -> Option<&SimplicialComplex> {
        self.sub.as_ref()
    }

    pub fn sub_vertices(&self) -> &[usize] {
        &self.inclusion
    }

    pub fn is_absolute(&self) -> bool {
        self.sub.is_none()
    }

    pub fn dimension(&self) -> usize {
        self.total.dimension()
    }

    pub fn in_sub(&self, k: usize, total_index: usize) -> bool {
        self.in_sub.get(k).is_some_and(|f| f[total_index])
    }

    /// Number of relative `k`-cells (simplices outside the subcomplex).
    pub fn relative_count(&self, k: usize) -> usize {
        self.relative.get(k).map_or(0, Vec::len)
    }

    /// Total-complex index of each relative `k`-cell.
    pub fn relative_cells(&self, k: usize) -> &[usize] {
        self.relative.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn relative_position(&self, k: usize, total_index: usize) -> Option<usize> {
        self.position.get(k).and_then(|p| p[total_index])
    }

    /// Relative boundary `C_k(K, L) -> C_{k-1}(K, L)`.
    pub fn relative_boundary(&self, k: usize) -> SparseIntMatrix {
        let rows = if k == 0 { 0 } else { self.relative_count(k - 1) };
        if k == 0 || k > self.dimension() {
            return SparseIntMatrix::zeros(rows, self.relative_count(k));
        }
        let full = self.total.boundary_or_zero(k);
        let mut triplets = Vec::new();
        for (i, j, v) in full.iter() {
            if let (Some(r), Some(c)) = (self.position[k - 1][i], self.position[k][j]) {
                triplets.push((r, c, v.clone()));
            }
        }
        SparseIntMatrix::from_triplets(rows, self.relative_count(k), triplets).expect("restricted indices")
    }

    /// Relative coboundary `C^k -> C^{k+1}`.
    pub fn relative_coboundary(&self, k: usize) -> SparseIntMatrix {
        self.relative_boundary(k + 1).transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    vertex_images: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, vertex_images: Vec<usize>) -> Result<Self> {
        let f = SimplicialMap { source, target, vertex_images };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(k: Arc<SimplicialComplex>) -> Self {
        let n = k.vertex_count();
        SimplicialMap { source: k.clone(), target: k, vertex_images: (0..n).collect() }
    }

    pub fn constant(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, vertex: usize) -> Result<Self> {
        let n = source.vertex_count();
        Self::new(source, target, vec![vertex; n])
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertex_images.len() != self.source.vertex_count() {
            return Err(Error::InvalidMap(format!(
                "{} vertex images for {} source vertices",
                self.vertex_images.len(),
                self.source.vertex_count()
            )));
        }
        if let Some(v) = self.vertex_images.iter().find(|&&v| v >= self.target.vertex_count()) {
            return Err(Error::InvalidMap(format!("image vertex {v} is not in the target")));
        }
        for s in self.source.maximal_simplices() {
            let img = self.image(&s);
            if !self.target.contains(&img) {
                return Err(Error::InvalidMap(format!("image {img:?} of {s:?} is not a target simplex")));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn vertex_images(&self) -> &[usize] {
        &self.vertex_images
    }

    /// Image vertex set, sorted and deduplicated.
    pub fn image(&self, s: &[usize]) -> Simplex {
        let mut img: Simplex = s.iter().map(|&v| self.vertex_images[v]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `self` after `first`.
    pub fn compose_after(&self, first: &SimplicialMap) -> Result<SimplicialMap> {
        if first.target != self.source {
            return Err(Error::InvalidMap("composable maps must share the middle complex".into()));
        }
        let images = first.vertex_images.iter().map(|&v| self.vertex_images[v]).collect();
        Ok(SimplicialMap { source: first.source.clone(), target: self.target.clone(), vertex_images: images })
    }

    /// Matrix of `f_#` on `k`-chains: target `k`-simplices by source ones.
    pub fn induced_chain_map(&self, k: usize) -> SparseIntMatrix {
        let rows = self.target.count(k);
        let mut triplets = Vec::new();
        for (j, s) in self.source.simplices(k).iter().enumerate() {
            let raw: Vec<usize> = s.iter().map(|&v| self.vertex_images[v]).collect();
            if let Some((sorted, sign)) = sort_with_sign(&raw) {
                let i = self.target.index_of(&sorted).expect("validated map");
                triplets.push((i, j, BigInt::from(sign)));
            }
        }
        SparseIntMatrix::from_triplets(rows, self.source.count(k), triplets).expect("indices in range")
    }
}

/// Sorted copy and permutation sign, or `None` on a repeated entry.
pub(crate) fn sort_with_sign(raw: &[usize]) -> Option<(Simplex, i64)> {
    let mut v = raw.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}
