//! Cup and cup-i products, Steenrod squares, the operation dispatch used by
//! the defect identities, mapping cylinders and the Hopf invariant.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cohomology::{evaluate, relative_homology, CochainSpace, CohomologyClass};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{solve_integer, Coefficient, Integer};
use crate::manifold::{fundamental_class, FundamentalClass};
use crate::simplicial::{SimplicialComplex, SimplicialMap, SimplicialPair};

/// Value of a relative cochain on the total-complex simplex `s`, zero on
/// simplices of the subcomplex.
fn value(pair: &SimplicialPair, c: &[Integer], s: &[usize]) -> Option<Integer> {
    let k = s.len() - 1;
    let t = pair.total().index_of(s)?;
    pair.relative_position(k, t).map(|i| c[i].clone())
}

/// Alexander–Whitney product of cochains of degrees `p` and `q`.
pub fn cup_cochains(
    pair: &SimplicialPair,
    ring: Coefficient,
    p: usize,
    x: &[Integer],
    q: usize,
    y: &[Integer],
    exec: Execution,
) -> Vec<Integer> {
    cup_mixed(pair, ring, (pair, p, x), (pair, q, y), exec)
}

/// Product of cochains read through possibly different pairs on one total
/// complex; the result lives on `out`.
fn cup_mixed(
    out: &SimplicialPair,
    ring: Coefficient,
    (px, p, x): (&SimplicialPair, usize, &[Integer]),
    (py, q, y): (&SimplicialPair, usize, &[Integer]),
    exec: Execution,
) -> Vec<Integer> {
    let n = p + q;
    let cells = out.relative_cells(n);
    let simplices = out.total().simplices(n);
    exec.map(cells, |&t| {
        let s = &simplices[t];
        match (value(px, x, &s[..=p]), value(py, y, &s[p..])) {
            (Some(a), Some(b)) if !a.is_zero() && !b.is_zero() => ring.normalize(a * b),
            _ => BigInt::zero(),
        }
    })
}

pub fn cup(x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
    cup_with(x, y, Execution::default())
}

/// Cup product of classes on one space, or of an absolute class with a
/// relative one on the same complex (landing in the relative group).
pub fn cup_with(x: &CohomologyClass, y: &CohomologyClass, exec: Execution) -> Result<CohomologyClass> {
    let (sx, sy) = (x.space(), y.space());
    let out = if sx.same_space(sy) {
        sx
    } else if sx.coefficient() != sy.coefficient() || sx.pair().total() != sy.pair().total() {
        return Err(Error::Shape("cup product of classes on different spaces".into()));
    } else if sx.pair().is_absolute() {
        sy
    } else if sy.pair().is_absolute() {
        sx
    } else {
        return Err(Error::Shape("cup product of classes relative to different subcomplexes".into()));
    };
    let c = cup_mixed(
        out.pair(),
        out.coefficient(),
        (sx.pair(), x.degree(), x.cocycle()),
        (sy.pair(), y.degree(), y.cocycle()),
        exec,
    );
    out.class(x.degree() + y.degree(), c)
}

/// Cup-i product over `Z/2`.
///
/// `(x ∪_i y)(v_0..v_n)` sums over `0 <= j_0 < ... < j_i <= n` with the
/// intervals `[0,j_0], [j_0,j_1], ..., [j_i,n]`; `x` reads the even-numbered
/// intervals and `y` the odd ones. Terms where `x` would not see `p+1`
/// vertices are dropped.
pub fn cup_i_cochains(
    pair: &SimplicialPair,
    i: usize,
    p: usize,
    x: &[Integer],
    q: usize,
    y: &[Integer],
    exec: Execution,
) -> Vec<Integer> {
    let ring = Coefficient::Z2;
    if p + q < i {
        return Vec::new();
    }
    let n = p + q - i;
    let cells = pair.relative_cells(n);
    if i > p.min(q) {
        return vec![BigInt::zero(); cells.len()];
    }
    let simplices = pair.total().simplices(n);
    let splits = interval_splits(n, i, p);
    exec.map(cells, |&t| {
        let s = &simplices[t];
        let mut acc = 0u8;
        for (front, back) in &splits {
            let f: Vec<usize> = front.iter().map(|&k| s[k]).collect();
            let b: Vec<usize> = back.iter().map(|&k| s[k]).collect();
            if let (Some(a), Some(c)) = (value(pair, x, &f), value(pair, y, &b)) {
                if !ring.is_zero(&a) && !ring.is_zero(&c) {
                    acc ^= 1;
                }
            }
        }
        BigInt::from(acc)
    })
}

/// Index sets `(even intervals, odd intervals)` of every admissible split.
fn interval_splits(n: usize, i: usize, p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut js = Vec::with_capacity(i + 1);
    fn rec(n: usize, i: usize, p: usize, start: usize, js: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        if js.len() == i + 1 {
            let mut bounds = vec![0];
            bounds.extend_from_slice(js);
            bounds.push(n);
            let (mut even, mut odd) = (Vec::new(), Vec::new());
            for (k, w) in bounds.windows(2).enumerate() {
                let part = if k % 2 == 0 { &mut even } else { &mut odd };
                for v in w[0]..=w[1] {
                    if part.last() != Some(&v) {
                        part.push(v);
                    }
                }
            }
            if even.len() == p + 1 {
                out.push((even, odd));
            }
            return;
        }
        for j in start..=n {
            js.push(j);
            rec(n, i, p, j + 1, js, out);
            js.pop();
        }
    }
    rec(n, i, p, 0, &mut js, &mut out);
    out
}

/// Class-level cup-i; only meaningful on classes for `i = 0` or on squares.
pub fn cup_i(x: &CohomologyClass, y: &CohomologyClass, i: usize) -> Result<Vec<Integer>> {
    if x.coefficient() != Coefficient::Z2 || !x.space().same_space(y.space()) {
        return Err(Error::Shape("cup-i needs two Z/2 cochains on one space".into()));
    }
    Ok(cup_i_cochains(x.space().pair(), i, x.degree(), x.cocycle(), y.degree(), y.cocycle(), Execution::default()))
}

/// `Sq^k x = x ∪_{n-k} x` for `x` of degree `n` over `Z/2`.
pub fn steenrod_sq(k: usize, x: &CohomologyClass) -> Result<CohomologyClass> {
    steenrod_sq_with(k, x, Execution::default())
}

pub fn steenrod_sq_with(k: usize, x: &CohomologyClass, exec: Execution) -> Result<CohomologyClass> {
    if x.coefficient() != Coefficient::Z2 {
        return Err(Error::Shape(format!("Steenrod squares need Z2 classes, got {}", x.coefficient())));
    }
    let n = x.degree();
    let space = x.space();
    if k > n {
        return Ok(space.zero(n + k));
    }
    let c = cup_i_cochains(space.pair(), n - k, n, x.cocycle(), n, x.cocycle(), exec);
    space.class(n + k, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OperationKind {
    CupSquare,
    Sq2AfterMod2,
    SqK(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyOperation {
    pub kind: OperationKind,
    pub source_degree: usize,
    pub target_degree: usize,
    pub source_coefficient: Coefficient,
    pub target_coefficient: Coefficient,
}

impl CohomologyOperation {
    pub fn cup_square(degree: usize) -> Self {
        CohomologyOperation {
            kind: OperationKind::CupSquare,
            source_degree: degree,
            target_degree: 2 * degree,
            source_coefficient: Coefficient::Z,
            target_coefficient: Coefficient::Z,
        }
    }

    pub fn sq2_after_mod2(degree: usize) -> Self {
        CohomologyOperation {
            kind: OperationKind::Sq2AfterMod2,
            source_degree: degree,
            target_degree: degree + 2,
            source_coefficient: Coefficient::Z,
            target_coefficient: Coefficient::Z2,
        }
    }

    pub fn sq(k: usize, degree: usize) -> Self {
        CohomologyOperation {
            kind: OperationKind::SqK(k),
            source_degree: degree,
            target_degree: degree + k,
            source_coefficient: Coefficient::Z2,
            target_coefficient: Coefficient::Z2,
        }
    }

    /// Applies the operation; `sign` scales the cup square.
    pub fn apply(&self, x: &CohomologyClass, sign: i64) -> Result<CohomologyClass> {
        if x.degree() != self.source_degree || x.coefficient() != self.source_coefficient {
            return Err(Error::Shape(format!(
                "operation expects degree {} over {}, got degree {} over {}",
                self.source_degree,
                self.source_coefficient,
                x.degree(),
                x.coefficient()
            )));
        }
        match self.kind {
            OperationKind::CupSquare => Ok(cup(x, x)?.scale(&BigInt::from(sign))),
            OperationKind::Sq2AfterMod2 => steenrod_sq(2, &x.mod2()),
            OperationKind::SqK(k) => steenrod_sq(k, x),
        }
    }
}

/// Staircase mapping cylinder of `f: K -> L` as the pair `(M_f, K)`.
///
/// Vertices of `K` keep their labels, vertex `w` of `L` becomes `|K| + w`.
/// For each maximal `v_0 < ... < v_p` of `K` and each `i` the simplex
/// `{v_0..v_i} ∪ f{v_i..v_p}` is added, together with all of `L`. Relative
/// cohomology of the pair is the reduced cohomology of the mapping cone.
pub fn mapping_cone(f: &SimplicialMap) -> Result<SimplicialPair> {
    let (cylinder, nk) = mapping_cylinder(f)?;
    SimplicialPair::induced(Arc::new(cylinder), &(0..nk).collect::<Vec<_>>())
}

fn mapping_cylinder(f: &SimplicialMap) -> Result<(SimplicialComplex, usize)> {
    f.validate()?;
    let nk = f.source().vertex_count();
    let shift = |w: usize| nk + w;
    let mut tops: Vec<Vec<usize>> = f.target().maximal_simplices().iter().map(|s| s.iter().map(|&w| shift(w)).collect()).collect();
    for s in f.source().maximal_simplices() {
        for i in 0..s.len() {
            let mut cell: Vec<usize> = s[..=i].to_vec();
            let mut img: Vec<usize> = s[i..].iter().map(|&v| shift(f.vertex_images()[v])).collect();
            img.sort_unstable();
            img.dedup();
            cell.extend(img);
            tops.push(cell);
        }
    }
    let complex = SimplicialComplex::from_top_simplices(nk + f.target().vertex_count(), &tops)?;
    Ok((complex, nk))
}

fn oriented_cycle(k: &SimplicialComplex, which: &str) -> Result<Vec<Integer>> {
    match fundamental_class(k, Coefficient::Z) {
        Ok(FundamentalClass::Cycle(c)) => Ok(c),
        Ok(FundamentalClass::NonOrientable) => Err(Error::Model(format!("{which} is not orientable"))),
        Err(e) => Err(Error::Model(format!("{which}: {e}"))),
    }
}

fn check_sphere_homology(k: &SimplicialComplex, n: usize, which: &str) -> Result<()> {
    if k.dimension() != n {
        return Err(Error::Model(format!("{which} has dimension {}, expected {n}", k.dimension())));
    }
    let pair = SimplicialPair::absolute(Arc::new(k.clone()));
    for d in 0..=n {
        let g = relative_homology(&pair, d, Coefficient::Z)?;
        let expect = if d == 0 || d == n { "Z^1" } else { "0" };
        if g.canonical_string() != expect {
            return Err(Error::Model(format!("{which} has H_{d} = {g}, not a homology {n}-sphere")));
        }
    }
    Ok(())
}

/// Hopf invariant of `f: S^3 -> S^2` from the cup square in the mapping cone.
///
/// With `u` in `H^2(M_f, K)` normalised by `<u, [S^2]> = +1` and `z` the
/// relative 4-cycle with `∂z = [S^3]`, returns `<u ∪ u, z>`.
pub fn hopf_invariant(f: &SimplicialMap) -> Result<Integer> {
    check_sphere_homology(f.source(), 3, "source")?;
    check_sphere_homology(f.target(), 2, "target")?;
    let z_k = oriented_cycle(f.source(), "source")?;
    let z_l = oriented_cycle(f.target(), "target")?;
    let pair = Arc::new(mapping_cone(f)?);
    let m = pair.total().clone();
    let nk = f.source().vertex_count();

    let space = CochainSpace::new(pair.clone(), Coefficient::Z);
    let g2 = space.group(2);
    if g2.free_rank != 1 || !g2.torsion.is_empty() {
        return Err(Error::Model(format!("mapping cone has H^2 = {g2}")));
    }
    let u = space.generator(2, 0)?;
    // <u, [L]> on the copy of L inside the cylinder
    let mut pairing = BigInt::zero();
    for (j, s) in f.target().simplices(2).iter().enumerate() {
        let shifted: Vec<usize> = s.iter().map(|w| w + nk).collect();
        let t = m.index_of(&shifted).expect("target copy");
        let r = pair.relative_position(2, t).expect("target simplices are relative");
        pairing += &u.cocycle()[r] * &z_l[j];
    }
    let u = if pairing == BigInt::one() {
        u
    } else if pairing == -BigInt::one() {
        u.neg()
    } else {
        return Err(Error::Model(format!("H^2 generator pairs to {pairing} with the target")));
    };

    let h4 = relative_homology(&pair, 4, Coefficient::Z)?;
    if h4.free_rank != 1 {
        return Err(Error::Model(format!("mapping cone has H_4 = {h4}")));
    }
    let mut z_rel = h4.generators[0].clone();
    // ∂ of the lifted chain lands on the source copy
    let mut lifted = vec![BigInt::zero(); m.count(4)];
    for (r, &t) in pair.relative_cells(4).iter().enumerate() {
        lifted[t] = z_rel[r].clone();
    }
    let boundary = m.boundary_or_zero(4).mul_vec(&lifted)?;
    let first = f.source().simplices(3).iter().position(|_| true).expect("nonempty");
    let t0 = m.index_of(&f.source().simplices(3)[first]).expect("source copy");
    let ratio = &boundary[t0] * &z_k[first];
    if ratio.abs() != BigInt::one() {
        return Err(Error::Model("relative 4-cycle does not bound the source".into()));
    }
    if ratio.is_negative() {
        z_rel.iter_mut().for_each(|v| *v = -&*v);
    }
    let sq = cup(&u, &u)?;
    Ok(evaluate(sq.cocycle(), &z_rel))
}

/// Independent evaluation through a primitive: `-<a ∪ f*ω, [S^3]>` with
/// `δa = f*ω`; used as a cross-check of [`hopf_invariant`].
///
/// The sign: extend `a` by zero and pull `ω` back along the cylinder
/// retraction to `v`; then `u = v - δã` and, since `v ∪ v = 0` on cochains,
/// `<u ∪ u, z> = -<f*ω ∪ a, ∂z> = -<a ∪ δa, [S^3]>` for `∂z = [S^3]`.
pub fn hopf_invariant_by_primitive(f: &SimplicialMap) -> Result<Integer> {
    let z_k = oriented_cycle(f.source(), "source")?;
    let z_l = oriented_cycle(f.target(), "target")?;
    let target = CochainSpace::absolute(f.target().clone(), Coefficient::Z);
    // ω: dual of one oriented triangle
    let mut omega = vec![BigInt::zero(); f.target().count(2)];
    omega[0] = z_l[0].clone();
    let omega = target.class(2, omega)?;
    let pulled = crate::cohomology::pullback(f, &omega)?;
    let source = pulled.space().clone();
    let d1 = source.pair().relative_coboundary(1);
    let a = solve_integer(&d1, pulled.cocycle())?.ok_or_else(|| Error::Model("f*ω is not exact".into()))?;
    let c = cup_cochains(source.pair(), Coefficient::Z, 1, &a, 2, pulled.cocycle(), Execution::Sequential);
    Ok(-evaluate(&c, &z_k))
}
