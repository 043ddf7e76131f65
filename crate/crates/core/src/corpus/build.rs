//! Constructions behind the corpus entries.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::simplicial::{product_complex, SimplicialComplex, SimplicialMap};

fn complex(n: usize, tops: &[Vec<usize>]) -> Arc<SimplicialComplex> {
    Arc::new(SimplicialComplex::from_top_simplices(n, tops).expect("corpus construction"))
}

/// `∂Δ^{n+1}`, the `n`-sphere on `n + 2` vertices.
pub fn boundary_simplex(n: usize) -> Arc<SimplicialComplex> {
    let m = n + 2;
    let tops: Vec<Vec<usize>> = (0..m).map(|skip| (0..m).filter(|&v| v != skip).collect()).collect();
    complex(m, &tops)
}

pub fn cycle(n: usize) -> Arc<SimplicialComplex> {
    complex(n, &(0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>())
}

/// The 9-vertex complex projective plane; vertex `3a + b` is the point
/// `(a, b)` of `Z3 x Z3`, which acts by translations.
pub fn cp2() -> Arc<SimplicialComplex> {
    const FACETS: [[usize; 5]; 36] = [
        [0, 1, 2, 3, 4], [0, 1, 2, 3, 5], [0, 1, 2, 4, 5], [0, 1, 3, 4, 6], [0, 1, 3, 5, 7], [0, 1, 3, 6, 7],
        [0, 1, 4, 5, 6], [0, 1, 5, 6, 8], [0, 1, 5, 7, 8], [0, 1, 6, 7, 8], [0, 2, 3, 4, 8], [0, 2, 3, 5, 8],
        [0, 2, 4, 5, 6], [0, 2, 4, 6, 7], [0, 2, 4, 7, 8], [0, 2, 5, 6, 8], [0, 2, 6, 7, 8], [0, 3, 4, 6, 7],
        [0, 3, 4, 7, 8], [0, 3, 5, 7, 8], [1, 2, 3, 4, 8], [1, 2, 3, 5, 7], [1, 2, 3, 6, 7], [1, 2, 3, 6, 8],
        [1, 2, 4, 5, 7], [1, 2, 4, 7, 8], [1, 2, 6, 7, 8], [1, 3, 4, 6, 8], [1, 4, 5, 6, 8], [1, 4, 5, 7, 8],
        [2, 3, 5, 6, 7], [2, 3, 5, 6, 8], [2, 4, 5, 6, 7], [3, 4, 5, 6, 7], [3, 4, 5, 6, 8], [3, 4, 5, 7, 8],
    ];
    complex(9, &FACETS.iter().map(|f| f.to_vec()).collect::<Vec<_>>())
}

/// Six-vertex projective plane (half of the icosahedron).
pub fn rp2() -> Arc<SimplicialComplex> {
    let f = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5], [1, 2, 4], [1, 3, 4], [1, 3, 5], [2, 3, 5], [2, 4, 5]];
    complex(6, &f.iter().map(|t| t.to_vec()).collect::<Vec<_>>())
}

/// `RP^n` as the antipodal quotient of the barycentric subdivision of
/// `∂Δ^{n+1}`: vertices are proper nonempty subsets of `{0..n+1}` up to
/// complement, facets are full flags.
pub fn projective_space(n: usize) -> Arc<SimplicialComplex> {
    let m = n + 2;
    let full = (1u32 << m) - 1;
    let rep = |s: u32| s.min(full ^ s);
    let classes: BTreeSet<u32> = (1..full).map(rep).collect();
    let index: BTreeMap<u32, usize> = classes.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut tops = BTreeSet::new();
    let mut perm: Vec<usize> = (0..m).collect();
    // a full flag is a permutation; its prefixes are the chain
    loop {
        let mut facet: Vec<usize> = (1..m)
            .map(|k| {
                let s = perm[..k].iter().fold(0u32, |acc, &v| acc | 1 << v);
                index[&rep(s)]
            })
            .collect();
        facet.sort_unstable();
        tops.insert(facet);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    complex(classes.len(), &tops.into_iter().collect::<Vec<_>>())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Seven-vertex torus.
pub fn torus() -> Arc<SimplicialComplex> {
    let mut tops = Vec::new();
    for i in 0..7 {
        tops.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        tops.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    complex(7, &tops)
}

/// Klein bottle from a 3 x 4 grid whose last row is glued back with a
/// reflection `x -> -x`.
pub fn klein_bottle() -> Arc<SimplicialComplex> {
    let (a, b) = (3usize, 4usize);
    let v = |x: usize, y: usize| {
        let (x, y) = if y == b { ((a - x % a) % a, 0) } else { (x % a, y) };
        x + a * y
    };
    let mut tops = Vec::new();
    for i in 0..a {
        for j in 0..b {
            let (p, q, r, s) = (v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1));
            tops.push(vec![p, q, r]);
            tops.push(vec![p, s, r]);
        }
    }
    complex(a * b, &tops)
}

/// Join; vertices of `l` follow those of `k`.
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> Arc<SimplicialComplex> {
    let nk = k.vertex_count();
    let mut tops = Vec::new();
    for s in k.maximal_simplices() {
        for t in l.maximal_simplices() {
            let mut f = s.clone();
            f.extend(t.iter().map(|w| w + nk));
            tops.push(f);
        }
    }
    complex(nk + l.vertex_count(), &tops)
}

pub fn product(k: &SimplicialComplex, l: &SimplicialComplex) -> Arc<SimplicialComplex> {
    Arc::new(product_complex(k, l))
}

/// Vertex of the Hopf construction: the two core circles and the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum HopfVertex {
    A(usize),
    B(usize),
    /// Torus point `(i, j)` ordered by `(i mod 3, j, i div 3)`.
    T { key: (usize, usize, usize) },
}

/// A 3-sphere glued from two solid tori, the mapping cylinders of the
/// projections of the grid torus `C_{3d} x C_3` onto its factor circles.
/// Returns the sphere, the Hopf-type map onto `∂Δ^3` composed with the
/// `d`-fold wrap, and the wrap onto the `d = 1` sphere.
pub struct HopfConstruction {
    pub sphere: Arc<SimplicialComplex>,
    pub hopf_images: Vec<usize>,
    pub wrap_images: Vec<usize>,
}

pub fn hopf_construction(d: usize) -> HopfConstruction {
    let ni = 3 * d;
    let t = |i: usize, j: usize| {
        let i = i % ni;
        HopfVertex::T { key: (i % 3, j % 3, i / 3) }
    };
    let mut tris = Vec::new();
    for i in 0..ni {
        for j in 0..3 {
            tris.push([t(i, j), t(i + 1, j), t(i + 1, j + 1)]);
            tris.push([t(i, j), t(i, j + 1), t(i + 1, j + 1)]);
        }
    }
    let torus_coords = |v: HopfVertex| match v {
        HopfVertex::T { key: (r, j, q) } => (3 * q + r, j),
        _ => unreachable!(),
    };
    let mut cells: BTreeSet<Vec<HopfVertex>> = BTreeSet::new();
    let projections: [&dyn Fn(HopfVertex) -> HopfVertex; 2] =
        [&|v| HopfVertex::A(torus_coords(v).0), &|v| HopfVertex::B(torus_coords(v).1)];
    for p in projections {
        for tri in &tris {
            let mut tri = *tri;
            tri.sort();
            for k in 0..3 {
                let mut cell: BTreeSet<HopfVertex> = tri[..=k].iter().copied().collect();
                cell.extend(tri[k..].iter().map(|&v| p(v)));
                if cell.len() == 4 {
                    cells.insert(cell.into_iter().collect());
                }
            }
        }
    }
    let names: BTreeSet<HopfVertex> = cells.iter().flatten().copied().collect();
    let index: BTreeMap<HopfVertex, usize> = names.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let tops: Vec<Vec<usize>> = cells.iter().map(|c| c.iter().map(|v| index[v]).collect()).collect();
    let sphere = complex(names.len(), &tops);

    // target vertex numbering of the d = 1 sphere
    let base: Vec<HopfVertex> = (0..3)
        .map(HopfVertex::A)
        .chain((0..3).map(HopfVertex::B))
        .chain((0..3).flat_map(|i| (0..3).map(move |j| HopfVertex::T { key: (i, j, 0) })))
        .collect();
    let base_index: BTreeMap<HopfVertex, usize> = base.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut hopf_images = Vec::new();
    let mut wrap_images = Vec::new();
    for v in &names {
        let (h, w) = match *v {
            HopfVertex::A(i) => (3, HopfVertex::A(i % 3)),
            HopfVertex::B(j) => (0, HopfVertex::B(j)),
            HopfVertex::T { key: (r, j, _) } => ((r + 3 - j) % 3, HopfVertex::T { key: (r, j, 0) }),
        };
        hopf_images.push(h);
        wrap_images.push(base_index[&w]);
    }
    HopfConstruction { sphere, hopf_images, wrap_images }
}

pub fn map(source: Arc<SimplicialComplex>, target: Arc<SimplicialComplex>, images: Vec<usize>) -> SimplicialMap {
    SimplicialMap::new(source, target, images).expect("corpus map is simplicial")
}
