//! Fundamental classes, intersection forms and Thom-model algebra.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cohomology::{evaluate, is_cohomologous, relative_homology, CochainSpace, CohomologyClass};
use crate::error::{Error, Result};
use crate::linalg::{Coefficient, Integer};
use crate::operations::{cup, steenrod_sq};
use crate::simplicial::{drop_vertex, SimplicialComplex, SimplicialPair};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FundamentalClass {
    /// Coefficients on the top simplices, in canonical order.
    Cycle(Vec<Integer>),
    NonOrientable,
}

/// Facets adjacent across each ridge, after checking the closed
/// pseudomanifold conditions.
fn ridge_adjacency(k: &SimplicialComplex) -> Result<Vec<Vec<(usize, usize, usize)>>> {
    let n = k.dimension();
    if n == 0 {
        return Err(Error::Model("a 0-dimensional complex has no ridges".into()));
    }
    if !k.is_pure() {
        return Err(Error::Model("complex is not pure".into()));
    }
    let facets = k.simplices(n);
    let mut by_ridge: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
    for (j, s) in facets.iter().enumerate() {
        for i in 0..s.len() {
            by_ridge.entry(drop_vertex(s, i)).or_default().push((j, i));
        }
    }
    let mut adj = vec![Vec::new(); facets.len()];
    for (ridge, owners) in &by_ridge {
        if owners.len() != 2 {
            return Err(Error::Model(format!("ridge {ridge:?} lies in {} facets, not 2", owners.len())));
        }
        let ((a, ia), (b, ib)) = (owners[0], owners[1]);
        adj[a].push((b, ia, ib));
        adj[b].push((a, ib, ia));
    }
    Ok(adj)
}

/// Orientation signs by propagation across ridges, `None` if they clash.
/// Errors on non-pseudomanifolds and disconnected input.
fn propagate(k: &SimplicialComplex) -> Result<Option<Vec<i64>>> {
    let adj = ridge_adjacency(k)?;
    let mut sign = vec![0i64; adj.len()];
    let mut queue = VecDeque::from([0usize]);
    sign[0] = 1;
    let mut consistent = true;
    while let Some(a) = queue.pop_front() {
        for &(b, ia, ib) in &adj[a] {
            // opposite induced orientations on the shared ridge
            let want = -sign[a] * parity(ia) * parity(ib);
            if sign[b] == 0 {
                sign[b] = want;
                queue.push_back(b);
            } else if sign[b] != want {
                consistent = false;
            }
        }
    }
    if sign.contains(&0) {
        return Err(Error::Model("complex is disconnected (facets do not form one strongly connected piece)".into()));
    }
    Ok(consistent.then_some(sign))
}

fn parity(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coherent top cycle of a closed connected pseudomanifold.
pub fn fundamental_class(k: &SimplicialComplex, ring: Coefficient) -> Result<FundamentalClass> {
    let signs = propagate(k)?;
    if ring == Coefficient::Z2 {
        return Ok(FundamentalClass::Cycle(vec![BigInt::one(); k.count(k.dimension())]));
    }
    Ok(match signs {
        Some(s) => FundamentalClass::Cycle(s.into_iter().map(|v| ring.normalize(BigInt::from(v))).collect()),
        None => FundamentalClass::NonOrientable,
    })
}

/// Pseudomanifold check without the orientation question.
pub fn is_closed_pseudomanifold(k: &SimplicialComplex) -> bool {
    propagate(k).is_ok()
}

/// A closed complex with a chosen integral fundamental cycle.
#[derive(Debug, Clone)]
pub struct OrientedManifold {
    complex: Arc<SimplicialComplex>,
    cycle: Vec<Integer>,
    space: Arc<CochainSpace>,
}

impl OrientedManifold {
    /// `orientation = -1` reverses the propagated orientation.
    pub fn new(complex: Arc<SimplicialComplex>, orientation: i64) -> Result<Self> {
        if orientation.abs() != 1 {
            return Err(Error::Parameter(format!("orientation must be ±1, got {orientation}")));
        }
        let cycle = match fundamental_class(&complex, Coefficient::Z)? {
            FundamentalClass::Cycle(c) => c.into_iter().map(|v| v * orientation).collect(),
            FundamentalClass::NonOrientable => return Err(Error::Model("complex is not orientable".into())),
        };
        let space = CochainSpace::absolute(complex.clone(), Coefficient::Z);
        Ok(OrientedManifold { complex, cycle, space })
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    pub fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }

    pub fn fundamental_cycle(&self) -> &[Integer] {
        &self.cycle
    }

    /// `<x, [K]>` for a top-degree class.
    pub fn evaluate(&self, x: &CohomologyClass) -> Result<Integer> {
        if x.degree() != self.complex.dimension() || x.space().pair().total() != &self.complex {
            return Err(Error::Shape("class is not a top class on this manifold".into()));
        }
        Ok(evaluate(x.cocycle(), &self.cycle))
    }

    pub fn intersection_form(&self) -> Result<IntersectionForm> {
        if self.complex.dimension() != 4 {
            return Err(Error::Dimension(format!("intersection form of a {}-dimensional complex", self.complex.dimension())));
        }
        let group = self.space.group(2);
        let basis: Vec<CohomologyClass> =
            (0..group.free_rank).map(|i| self.space.generator(2, i)).collect::<Result<_>>()?;
        let mut form = self.intersection_form_on(&basis)?;
        form.torsion = group.torsion.iter().map(|t| t.to_i64().unwrap_or(i64::MAX)).collect();
        Ok(form)
    }

    /// The form on an explicit list of degree-2 classes.
    pub fn intersection_form_on(&self, basis: &[CohomologyClass]) -> Result<IntersectionForm> {
        let n = basis.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.evaluate(&cup(&basis[i], &basis[j])?)?;
                let v = v.to_i64().ok_or_else(|| Error::Validation("intersection number overflows i64".into()))?;
                matrix[i][j] = v;
                matrix[j][i] = v;
            }
        }
        let (signature, determinant) = signature_and_determinant(&matrix);
        Ok(IntersectionForm { basis: basis.to_vec(), matrix, signature, determinant, torsion: Vec::new() })
    }

    pub fn self_intersection(&self, x: &CohomologyClass) -> Result<Integer> {
        if x.degree() != 2 {
            return Err(Error::Shape(format!("self-intersection of a degree-{} class", x.degree())));
        }
        self.evaluate(&cup(x, x)?)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionForm {
    #[serde(skip)]
    pub basis: Vec<CohomologyClass>,
    pub matrix: Vec<Vec<i64>>,
    pub signature: i64,
    pub determinant: i64,
    /// Torsion of H^2, which the form does not see.
    pub torsion: Vec<i64>,
}

impl IntersectionForm {
    pub fn is_symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs() == 1
    }

    /// `x^T M x` for integer coordinates.
    pub fn evaluate(&self, x: &[i64]) -> i64 {
        let n = self.matrix.len();
        (0..n).map(|i| (0..n).map(|j| x[i] * self.matrix[i][j] * x[j]).sum::<i64>()).sum()
    }
}

/// Signature by congruence diagonalisation, determinant by elimination, both
/// over the rationals. The empty form has signature 0 and determinant 1.
fn signature_and_determinant(m: &[Vec<i64>]) -> (i64, i64) {
    let n = m.len();
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();

    let mut det = BigRational::one();
    {
        let mut b = a.clone();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !b[r][c].is_zero()) else {
                det = BigRational::zero();
                break;
            };
            if p != c {
                b.swap(p, c);
                det = -det;
            }
            det *= b[c][c].clone();
            for r in c + 1..n {
                let f = &b[r][c] / &b[c][c];
                for k in c..n {
                    let t = &f * &b[c][k];
                    b[r][k] -= t;
                }
            }
        }
    }

    let (mut pos, mut neg) = (0i64, 0i64);
    for c in 0..n {
        if a[c][c].is_zero() {
            if let Some(j) = (c + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(c, j);
                for row in a.iter_mut() {
                    row.swap(c, j);
                }
            } else if let Some(j) = (c + 1..n).find(|&j| !a[c][j].is_zero()) {
                // e_c <- e_c + e_j makes the diagonal 2 a_cj
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[c][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][c] += t;
                }
            } else {
                continue;
            }
        }
        let p = a[c][c].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for r in c + 1..n {
            let f = &a[r][c] / &p;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
        for r in c + 1..n {
            a[c][r] = BigRational::zero();
        }
    }
    (pos - neg, det.to_integer().to_i64().unwrap_or(0))
}

/// `intersection_form` with the propagated orientation.
pub fn intersection_form(k: &Arc<SimplicialComplex>) -> Result<IntersectionForm> {
    OrientedManifold::new(k.clone(), 1)?.intersection_form()
}

pub fn self_intersection(k: &Arc<SimplicialComplex>, x: &CohomologyClass) -> Result<Integer> {
    OrientedManifold::new(k.clone(), 1)?.self_intersection(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThomExpectation {
    Euler(i64),
    W2(u8),
}

/// A pair modelling `(DN, SN)`: rank 2 over the integers with Euler number
/// `e`, or rank 4 over `Z/2` with `w2`.
#[derive(Debug, Clone)]
pub struct ThomModel {
    pair: Arc<SimplicialPair>,
    rank: usize,
    orientation: i64,
    tau: CohomologyClass,
    top: CohomologyClass,
    relative_cycle: Vec<Integer>,
    pub euler_number: Option<i64>,
    pub w2: Option<u8>,
}

impl ThomModel {
    /// Uses the engine's generator of `H^rank` as `τ`.
    pub fn new(pair: Arc<SimplicialPair>, rank: usize, orientation: i64, expected: ThomExpectation) -> Result<Self> {
        let ring = Self::ring_for(rank)?;
        let space = CochainSpace::new(pair.clone(), ring);
        let tau = space.generator(rank, 0).map_err(|_| Error::Model(format!("H^{rank} of the pair is trivial")))?;
        Self::assemble(pair, rank, orientation, expected, tau)
    }

    /// With an explicit Thom cocycle, which must generate `H^rank`.
    pub fn with_tau(
        pair: Arc<SimplicialPair>,
        rank: usize,
        orientation: i64,
        expected: ThomExpectation,
        tau: Vec<Integer>,
    ) -> Result<Self> {
        let ring = Self::ring_for(rank)?;
        let space = CochainSpace::new(pair.clone(), ring);
        let tau = space.class(rank, tau).map_err(|e| Error::Model(format!("τ is not a cocycle: {e}")))?;
        Self::assemble(pair, rank, orientation, expected, tau)
    }

    fn ring_for(rank: usize) -> Result<Coefficient> {
        match rank {
            2 => Ok(Coefficient::Z),
            4 => Ok(Coefficient::Z2),
            r => Err(Error::Model(format!("Thom models have rank 2 or 4, not {r}"))),
        }
    }

    fn assemble(
        pair: Arc<SimplicialPair>,
        rank: usize,
        orientation: i64,
        expected: ThomExpectation,
        tau: CohomologyClass,
    ) -> Result<Self> {
        if orientation.abs() != 1 {
            return Err(Error::Model(format!("orientation must be ±1, got {orientation}")));
        }
        let ring = tau.coefficient();
        let space = tau.space().clone();
        let g = space.group(rank);
        if g.free_rank != 1 || !g.torsion.is_empty() {
            return Err(Error::Model(format!("H^{rank} of the pair is {g}, not cyclic")));
        }
        if !tau.coordinates()[0].abs().is_one() {
            return Err(Error::Model(format!("τ has coordinate {} and does not generate", tau.coordinates()[0])));
        }
        let top_degree = pair.dimension();
        let relative_cycle = top_relative_cycle(&pair, ring, orientation)?;
        let top = space.generator(top_degree, 0).map_err(|_| Error::Model("no top class".into()))?;
        let pairing = ring.normalize(evaluate(top.cocycle(), &relative_cycle));
        let top = if pairing.is_one() {
            top
        } else if ring.normalize(-&pairing).is_one() {
            top.neg()
        } else {
            return Err(Error::Model(format!("top class pairs to {pairing} with the relative cycle")));
        };

        let mut model = ThomModel { pair, rank, orientation, tau, top, relative_cycle, euler_number: None, w2: None };
        match (rank, expected) {
            (2, ThomExpectation::Euler(e)) => {
                let got = model.thom_square(1)?;
                let sq = cup(&model.tau, &model.tau)?;
                if !is_cohomologous(&sq, &model.top.scale(&got))? {
                    return Err(Error::Model("τ ∪ τ is not a multiple of the top class".into()));
                }
                if got != BigInt::from(e) {
                    return Err(Error::Model(format!("stored Euler number {e}, computed {got}")));
                }
                model.euler_number = Some(e);
            }
            (4, ThomExpectation::W2(w)) => {
                let got = model.sq2()?;
                if w > 1 || got != w {
                    return Err(Error::Model(format!("stored w2 = {w}, computed {got}")));
                }
                model.w2 = Some(w);
            }
            (r, e) => return Err(Error::Model(format!("rank {r} model cannot carry {e:?}"))),
        }
        Ok(model)
    }

    pub fn pair(&self) -> &Arc<SimplicialPair> {
        &self.pair
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn orientation(&self) -> i64 {
        self.orientation
    }

    pub fn tau(&self) -> &CohomologyClass {
        &self.tau
    }

    /// The top relative class `[DN]`, normalised to pair to 1.
    pub fn top_class(&self) -> &CohomologyClass {
        &self.top
    }

    /// Coefficient of a top-degree class on `[DN]`.
    pub fn evaluate_top(&self, x: &CohomologyClass) -> Result<Integer> {
        if x.degree() != self.pair.dimension() || !x.space().same_space(self.tau.space()) {
            return Err(Error::Shape("class is not a top class of this model".into()));
        }
        Ok(x.coefficient().normalize(evaluate(x.cocycle(), &self.relative_cycle)))
    }

    pub fn thom_square(&self, n: i64) -> Result<Integer> {
        if self.rank != 2 {
            return Err(Error::Model("thom_square needs a rank-2 model".into()));
        }
        let x = self.tau.scale(&BigInt::from(n));
        self.evaluate_top(&cup(&x, &x)?)
    }

    fn sq2(&self) -> Result<u8> {
        let s = steenrod_sq(2, &self.tau)?;
        Ok(self.evaluate_top(&s)?.to_u8().unwrap_or(0))
    }

    pub fn sq2_thom(&self) -> Result<u8> {
        if self.rank != 4 {
            return Err(Error::Model("sq2_thom needs a rank-4 model".into()));
        }
        self.sq2()
    }
}

/// `(nτ) ∪ (nτ)` on `[DN]`; equals `n^2 e`.
pub fn thom_square(t: &ThomModel, n: i64) -> Result<Integer> {
    t.thom_square(n)
}

pub fn sq2_thom(t: &ThomModel) -> Result<u8> {
    t.sq2_thom()
}

/// Relative top cycle: the restricted fundamental cycle when the total
/// complex is closed, else the homology generator with a positive leading
/// entry; then scaled by `orientation`.
fn top_relative_cycle(pair: &SimplicialPair, ring: Coefficient, orientation: i64) -> Result<Vec<Integer>> {
    let n = pair.dimension();
    let restricted = match fundamental_class(pair.total(), ring) {
        Ok(FundamentalClass::Cycle(c)) => Some(pair.relative_cells(n).iter().map(|&t| c[t].clone()).collect::<Vec<_>>()),
        _ => None,
    };
    let z = match restricted {
        Some(z) => z,
        None => {
            let h = relative_homology(pair, n, ring)?;
            if h.free_rank != 1 {
                return Err(Error::Model(format!("top relative homology is {h}")));
            }
            let mut z = h.generators[0].clone();
            if z.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
                z.iter_mut().for_each(|v| *v = -&*v);
            }
            z
        }
    };
    Ok(z.into_iter().map(|v| ring.normalize(v * orientation)).collect())
}
