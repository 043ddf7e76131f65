//! Shipped spaces, maps, Thom models and defect scenarios, each with a
//! provenance note and a validator run by `check`.

mod build;
mod scenarios;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::cohomology::{degree, pullback, relative_homology, CohomologyClass};
use crate::defect::{verify, DefectConfiguration, FibrationProfile, ProfileName, Provenance, SurfaceDefect};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::io::{ClassRef, ScenarioRecord};
use crate::linalg::Coefficient;
use crate::manifold::{OrientedManifold, ThomExpectation, ThomModel};
use crate::operations::hopf_invariant;
use crate::simplicial::{product_projections, SimplicialComplex, SimplicialMap, SimplicialPair};

pub use build::{boundary_simplex, cycle, hopf_construction, join, projective_space, HopfConstruction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    Complex,
    Pair,
    Map,
    ThomModel,
    Scenario,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub kind: CorpusKind,
    pub provenance: &'static str,
}

const fn entry(id: &'static str, kind: CorpusKind, provenance: &'static str) -> CorpusEntry {
    CorpusEntry { id, kind, provenance }
}

use CorpusKind::*;

static ENTRIES: &[CorpusEntry] = &[
    entry("s1", Complex, "boundary of the 2-simplex"),
    entry("s2", Complex, "boundary of the 3-simplex"),
    entry("s3", Complex, "boundary of the 4-simplex"),
    entry("s4", Complex, "boundary of the 5-simplex"),
    entry("s5", Complex, "boundary of the 6-simplex"),
    entry("hexagon", Complex, "6-cycle"),
    entry("cp2", Complex, "9-vertex CP^2 (Kühnel), found as the union of Z3xZ3 translation orbits of 5-sets with Betti numbers (1,0,1,0,1) and 3-sphere vertex links"),
    entry("rp2", Complex, "6-vertex RP^2, the antipodal quotient of the icosahedron"),
    entry("rp4", Complex, "RP^4 as the antipodal quotient of the barycentric subdivision of the boundary of the 5-simplex (31 vertices, 360 facets)"),
    entry("s2xs2", Complex, "staircase triangulation of the product of two boundaries of the 3-simplex"),
    entry("torus", Complex, "7-vertex Möbius torus, facets {i,i+1,i+3} and {i,i+2,i+3} mod 7"),
    entry("klein", Complex, "Klein bottle from a 3x4 grid with the last row reglued by x -> -x"),
    entry("s3_hopf", Complex, "15-vertex 3-sphere: mapping cylinders of the two projections of the 3x3 grid torus onto its factor circles, glued along the torus"),
    entry("s3_hopf_d2", Complex, "the same construction on the 6x3 grid torus (27 vertices)"),
    entry("s3_hopf_d3", Complex, "the same construction on the 9x3 grid torus"),
    entry("hopf_map", Map, "s3_hopf -> s2: torus point (i,j) goes to (i-j) mod 3, the two core circles to vertices 3 and 0; Hopf invariant -1 for the propagated orientation of the source"),
    entry("hopf_map_d2", Map, "hopf_map after the degree-2 wrap s3_hopf_d2 -> s3_hopf; Hopf invariant -2"),
    entry("hopf_map_d3", Map, "hopf_map after the degree-3 wrap s3_hopf_d3 -> s3_hopf; Hopf invariant -3"),
    entry("s3_wrap_d2", Map, "degree-2 wrap s3_hopf_d2 -> s3_hopf, (i,j) -> (i mod 3, j)"),
    entry("s3_wrap_d3", Map, "degree-3 wrap s3_hopf_d3 -> s3_hopf"),
    entry("hexagon_wrap", Map, "hexagon -> s1, i -> i mod 3, degree 2"),
    entry("s2_reflection", Map, "s2 -> s2 swapping vertices 0 and 1, degree -1"),
    entry("s3_to_s2_constant", Map, "constant map s3 -> s2"),
    entry("thom_e1", ThomModel, "(cp2, vertex 0): CP^2 is the Thom space of the Euler-number-1 disk bundle over S^2"),
    entry("thom_e0", ThomModel, "(s2xs2, S^2 x {vertex 0}): quotient is the Thom space of the trivial rank-2 bundle over S^2"),
    entry("thom_w2_1", ThomModel, "(cp2 joined with a 4-cycle, vertex 0): the double suspension of CP^2, Thom space of O(1) + trivial rank 2 over S^2, w2 = 1"),
    entry("thom_w2_0", ThomModel, "(s2 x s4, S^2 x {vertex 0}): Thom space of the trivial rank-4 bundle over S^2, w2 = 0"),
    entry("prop1_single", Scenario, "one surface, n = 1, chi = 9, replacement indices 4 + 5, c1^2 = 9, points -9"),
    entry("prop1_two_surfaces", Scenario, "surfaces (1,1,-1) and (2,3,-12), c1^2 = 13; uniform sign -1"),
    entry("prop1_inconsistent", Scenario, "surfaces (1,1,1) and (1,1,-1): no uniform sign"),
    entry("prop1_cp2_a1", Scenario, "c1 = h on cp2, one transversal surface of class h"),
    entry("prop1_cp2_a2", Scenario, "c1 = 2h on cp2, one transversal surface of class 2h"),
    entry("prop1_cp2_a3", Scenario, "c1 = 3h on cp2, one transversal surface of class 3h"),
    entry("prop1_thom_e1", Scenario, "surface chi read off thom_e1, n = 2"),
    entry("prop2_match", Scenario, "su3_s4, n = 1, w2 = 1, indices (1,0,0)"),
    entry("prop2_mismatch", Scenario, "su3_s4, n = 1, w2 = 0, indices (1)"),
    entry("prop2_zero_n", Scenario, "su3_s4, n = 0, w2 = 1, indices (1,1)"),
    entry("prop2_residual", Scenario, "su3_s4, n = 1, w2 = 1, indices (0): residual 1"),
    entry("prop2_thom", Scenario, "su3_s4 with w2 read off thom_w2_1"),
];

pub fn entries() -> &'static [CorpusEntry] {
    ENTRIES
}

pub fn entry_for(id: &str) -> Result<&'static CorpusEntry> {
    let id = id.strip_prefix("corpus:").unwrap_or(id);
    ENTRIES.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

/// Integral homology strings in degrees `0..=dim`.
pub fn expected_homology(id: &str) -> Option<&'static [&'static str]> {
    let e = entry_for(id).ok()?;
    Some(match e.id {
        "s1" | "hexagon" => &["Z^1", "Z^1"],
        "s2" => &["Z^1", "0", "Z^1"],
        "s3" | "s3_hopf" | "s3_hopf_d2" | "s3_hopf_d3" => &["Z^1", "0", "0", "Z^1"],
        "s4" => &["Z^1", "0", "0", "0", "Z^1"],
        "s5" => &["Z^1", "0", "0", "0", "0", "Z^1"],
        "cp2" => &["Z^1", "0", "Z^1", "0", "Z^1"],
        "rp2" => &["Z^1", "Z/2", "0"],
        "rp4" => &["Z^1", "Z/2", "0", "Z/2", "0"],
        "s2xs2" => &["Z^1", "0", "Z^2", "0", "Z^1"],
        "torus" => &["Z^1", "Z^2", "Z^1"],
        "klein" => &["Z^1", "Z^1 + Z/2", "0"],
        _ => return None,
    })
}

/// Orientation relative to the propagated one, chosen so that the named
/// classes square (or multiply) to `+1`.
fn orientation(id: &str) -> i64 {
    match id {
        "cp2" | "thom_e1" => CP2_ORIENTATION,
        "s2xs2" | "thom_e0" => S2XS2_ORIENTATION,
        _ => 1,
    }
}

const CP2_ORIENTATION: i64 = -1;
const S2XS2_ORIENTATION: i64 = 1;

pub fn complex(id: &str) -> Result<Arc<SimplicialComplex>> {
    let e = entry_for(id)?;
    Ok(match e.id {
        "s1" => boundary_simplex(1),
        "s2" => boundary_simplex(2),
        "s3" => boundary_simplex(3),
        "s4" => boundary_simplex(4),
        "s5" => boundary_simplex(5),
        "hexagon" => cycle(6),
        "cp2" => build::cp2(),
        "rp2" => build::rp2(),
        "rp4" => projective_space(4),
        "s2xs2" => build::product(&boundary_simplex(2), &boundary_simplex(2)),
        "torus" => build::torus(),
        "klein" => build::klein_bottle(),
        "s3_hopf" => hopf_construction(1).sphere,
        "s3_hopf_d2" => hopf_construction(2).sphere,
        "s3_hopf_d3" => hopf_construction(3).sphere,
        _ => return Err(Error::UnknownEntry(format!("`{}` is a {:?} entry, not a complex", e.id, e.kind))),
    })
}

pub fn map(id: &str) -> Result<SimplicialMap> {
    let e = entry_for(id)?;
    Ok(match e.id {
        "hopf_map" | "hopf_map_d2" | "hopf_map_d3" => {
            let d = match e.id {
                "hopf_map" => 1,
                "hopf_map_d2" => 2,
                _ => 3,
            };
            let h = hopf_construction(d);
            build::map(h.sphere, boundary_simplex(2), h.hopf_images)
        }
        "s3_wrap_d2" | "s3_wrap_d3" => {
            let h = hopf_construction(if e.id == "s3_wrap_d2" { 2 } else { 3 });
            build::map(h.sphere, hopf_construction(1).sphere, h.wrap_images)
        }
        "hexagon_wrap" => build::map(cycle(6), boundary_simplex(1), (0..6).map(|i| i % 3).collect()),
        "s2_reflection" => build::map(boundary_simplex(2), boundary_simplex(2), vec![1, 0, 2, 3]),
        "s3_to_s2_constant" => SimplicialMap::constant(boundary_simplex(3), boundary_simplex(2), 0)?,
        _ => return Err(Error::UnknownEntry(format!("`{}` is a {:?} entry, not a map", e.id, e.kind))),
    })
}

pub fn thom_model(id: &str) -> Result<ThomModel> {
    let e = entry_for(id)?;
    let (pair, rank, expected) = match e.id {
        "thom_e1" => (SimplicialPair::induced(build::cp2(), &[0])?, 2, ThomExpectation::Euler(1)),
        "thom_e0" => {
            let k = build::product(&boundary_simplex(2), &boundary_simplex(2));
            (SimplicialPair::induced(k, &slice(4, 4))?, 2, ThomExpectation::Euler(0))
        }
        "thom_w2_1" => (SimplicialPair::induced(join(&build::cp2(), &cycle(4)), &[0])?, 4, ThomExpectation::W2(1)),
        "thom_w2_0" => {
            let k = build::product(&boundary_simplex(2), &boundary_simplex(4));
            (SimplicialPair::induced(k, &slice(4, 6))?, 4, ThomExpectation::W2(0))
        }
        _ => return Err(Error::UnknownEntry(format!("`{}` is a {:?} entry, not a Thom model", e.id, e.kind))),
    };
    ThomModel::new(Arc::new(pair), rank, orientation(e.id), expected)
}

/// Vertices `(u, 0)` of a product with `nl` vertices in the second factor.
fn slice(nk: usize, nl: usize) -> Vec<usize> {
    (0..nk).map(|u| u * nl).collect()
}

/// A corpus complex or the total space of a corpus pair or Thom model.
pub fn space(id: &str) -> Result<Arc<SimplicialPair>> {
    let e = entry_for(id)?;
    match e.kind {
        Complex => Ok(Arc::new(SimplicialPair::absolute(complex(id)?))),
        ThomModel => Ok(thom_model(id)?.pair().clone()),
        _ => Err(Error::UnknownEntry(format!("`{}` is a {:?} entry, not a space", e.id, e.kind))),
    }
}

pub fn scenario(id: &str) -> Result<ScenarioRecord> {
    let e = entry_for(id)?;
    scenarios::record(e.id).ok_or_else(|| Error::UnknownEntry(format!("`{}` is a {:?} entry, not a scenario", e.id, e.kind)))
}

/// Scenario file text of a bundled scenario.
pub fn scenario_text(id: &str) -> Result<&'static str> {
    let e = entry_for(id)?;
    scenarios::text(e.id).ok_or_else(|| Error::UnknownEntry(format!("`{}` is a {:?} entry, not a scenario", e.id, e.kind)))
}

/// Expected outcome of a bundled scenario.
pub fn scenario_expectation(id: &str) -> Option<bool> {
    scenarios::expectation(entry_for(id).ok()?.id)
}

pub fn oriented(id: &str) -> Result<OrientedManifold> {
    let e = entry_for(id)?;
    OrientedManifold::new(complex(e.id)?, orientation(e.id))
}

/// Documented degree-2 basis of a corpus 4-manifold: `h` on cp2, the
/// factor classes `a`, `b` on s2xs2, engine generators otherwise.
pub fn named_classes(id: &str) -> Result<(OrientedManifold, Vec<(String, CohomologyClass)>)> {
    let m = oriented(id)?;
    let classes = match entry_for(id)?.id {
        "s2xs2" => {
            let s2 = boundary_simplex(2);
            let omega = s2_orientation_class(&s2)?;
            let (p1, p2) = product_projections(&s2, &s2, m.complex())?;
            let same = |c: CohomologyClass| m.space().class(2, c.cocycle().to_vec());
            vec![("a".into(), same(pullback(&p1, &omega)?)?), ("b".into(), same(pullback(&p2, &omega)?)?)]
        }
        "cp2" => vec![("h".into(), m.space().generator(2, 0)?)],
        _ => {
            let g = m.space().group(2);
            (0..g.free_rank).map(|i| Ok((format!("g{i}"), m.space().generator(2, i)?))).collect::<Result<_>>()?
        }
    };
    Ok((m, classes))
}

/// The degree-2 class of `∂Δ^3` pairing to `+1` with its orientation.
fn s2_orientation_class(s2: &Arc<SimplicialComplex>) -> Result<CohomologyClass> {
    let m = OrientedManifold::new(s2.clone(), 1)?;
    let g = m.space().generator(2, 0)?;
    let v = m.evaluate(&g)?;
    Ok(if v.is_negative() { g.neg() } else { g })
}

/// `Σ coords_i · basis_i` on a corpus 4-manifold.
pub fn class_from_ref(r: &ClassRef) -> Result<(OrientedManifold, CohomologyClass)> {
    let (m, basis) = named_classes(&r.manifold)?;
    if r.coords.len() != basis.len() {
        return Err(Error::Validation(format!(
            "{} coordinates on {} with a degree-2 basis of size {}",
            r.coords.len(),
            r.manifold,
            basis.len()
        )));
    }
    let mut x = m.space().zero(2);
    for (c, (_, b)) in r.coords.iter().zip(&basis) {
        x = x.add(&b.scale(&BigInt::from(*c)))?;
    }
    Ok((m, x))
}

fn self_intersection_of(r: &ClassRef) -> Result<i64> {
    let (m, x) = class_from_ref(r)?;
    m.self_intersection(&x)?.to_i64().ok_or_else(|| Error::Validation("self-intersection overflows".into()))
}

/// Turns a scenario record into a configuration, computing every quantity
/// given by reference.
pub fn resolve_scenario(rec: &ScenarioRecord) -> Result<DefectConfiguration> {
    let profile = FibrationProfile::by_name(&rec.profile)?;
    let mut config = DefectConfiguration::new(profile, Vec::new());
    config.point_indices = rec.point_indices.clone();
    match profile.name {
        ProfileName::Hopf => match (&rec.c1_squared, &rec.c1_class) {
            (Some(c), None) => config.c1_squared = Some(*c),
            (None, Some(r)) => {
                config.c1_squared = Some(self_intersection_of(r)?);
                config.c1_provenance = Provenance::Computed(format!("self-intersection of {:?} on {}", r.coords, r.manifold));
            }
            _ => return Err(Error::Validation("hopf scenarios need exactly one of c1_squared and c1_class".into())),
        },
        ProfileName::Su3S4 => {
            if rec.c1_squared.is_some() || rec.c1_class.is_some() {
                return Err(Error::Validation("su3_s4 scenarios carry no c1".into()));
            }
        }
    }
    for (i, s) in rec.surfaces.iter().enumerate() {
        let id = s.id.clone().unwrap_or_else(|| format!("surface{i}"));
        let mut surface = SurfaceDefect {
            id: id.clone(),
            n: s.n,
            chi: None,
            w2: None,
            replacement_indices: s.replacement_indices.clone(),
            transversal: s.transversal.unwrap_or(false),
            chi_provenance: Provenance::Supplied,
        };
        match profile.name {
            ProfileName::Hopf => {
                if s.w2.is_some() {
                    return Err(Error::Validation(format!("surface `{id}`: w2 belongs to su3_s4 scenarios")));
                }
                match (&s.chi, &s.chi_class, &s.thom_model) {
                    (Some(c), None, None) => surface.chi = Some(*c),
                    (None, Some(r), None) => {
                        surface.chi = Some(self_intersection_of(r)?);
                        surface.chi_provenance = Provenance::Computed(format!("self-intersection of {:?} on {}", r.coords, r.manifold));
                    }
                    (None, None, Some(t)) => {
                        let model = thom_model(t)?;
                        surface.chi = Some(model.euler_number.ok_or_else(|| Error::Validation(format!("{t} has no Euler number")))?);
                        surface.chi_provenance = Provenance::Computed(format!("Euler number of {t}"));
                    }
                    _ => return Err(Error::Validation(format!("surface `{id}` needs exactly one of chi, chi_class, thom_model"))),
                }
            }
            ProfileName::Su3S4 => {
                if s.chi.is_some() || s.chi_class.is_some() {
                    return Err(Error::Validation(format!("surface `{id}`: chi belongs to hopf scenarios")));
                }
                match (&s.w2, &s.thom_model) {
                    (Some(w), None) => surface.w2 = Some(*w),
                    (None, Some(t)) => {
                        let model = thom_model(t)?;
                        surface.w2 = Some(model.sq2_thom()?);
                        surface.chi_provenance = Provenance::Computed(format!("Sq^2 of the Thom class of {t}"));
                    }
                    _ => return Err(Error::Validation(format!("surface `{id}` needs exactly one of w2, thom_model"))),
                }
            }
        }
        config.surfaces.push(surface);
    }
    Ok(config)
}

/// Runs the entry's validator and returns a one-line summary.
pub fn validate(id: &str) -> Result<String> {
    let e = entry_for(id)?;
    match e.kind {
        Complex => {
            let k = complex(e.id)?;
            let pair = SimplicialPair::absolute(k.clone());
            let got: Vec<String> = (0..=k.dimension())
                .map(|d| Ok(relative_homology(&pair, d, Coefficient::Z)?.canonical_string()))
                .collect::<Result<_>>()?;
            if let Some(want) = expected_homology(e.id) {
                if got != want {
                    return Err(Error::Validation(format!("{}: homology {:?}, expected {:?}", e.id, got, want)));
                }
            }
            let mut summary = format!("f-vector {:?}, homology ({})", k.f_vector(), got.join(", "));
            if matches!(e.id, "cp2" | "s2xs2") {
                let (m, basis) = named_classes(e.id)?;
                let classes: Vec<CohomologyClass> = basis.iter().map(|(_, c)| c.clone()).collect();
                let form = m.intersection_form_on(&classes)?;
                let want: Vec<Vec<i64>> = if e.id == "cp2" { vec![vec![1]] } else { vec![vec![0, 1], vec![1, 0]] };
                if form.matrix != want {
                    return Err(Error::Validation(format!("{}: form {:?} on the named basis", e.id, form.matrix)));
                }
                summary += &format!(", form {:?}", form.matrix);
            }
            Ok(summary)
        }
        Map => {
            let f = map(e.id)?;
            let (what, value, want) = match e.id {
                "hopf_map" => ("Hopf invariant", hopf_invariant(&f)?, -1),
                "hopf_map_d2" => ("Hopf invariant", hopf_invariant(&f)?, -2),
                "hopf_map_d3" => ("Hopf invariant", hopf_invariant(&f)?, -3),
                "s3_to_s2_constant" => ("Hopf invariant", hopf_invariant(&f)?, 0),
                "s3_wrap_d2" => ("degree", degree(&f)?, 2),
                "s3_wrap_d3" => ("degree", degree(&f)?, 3),
                "hexagon_wrap" => ("degree", degree(&f)?, 2),
                "s2_reflection" => ("degree", degree(&f)?, -1),
                _ => unreachable!("every map entry has a check"),
            };
            if value != BigInt::from(want) {
                return Err(Error::Validation(format!("{}: {what} {value}, expected {want}", e.id)));
            }
            Ok(format!("{what} {value}"))
        }
        ThomModel => {
            let t = thom_model(e.id)?;
            Ok(match (t.euler_number, t.w2) {
                (Some(x), _) => format!("rank 2, e = {x}"),
                (_, Some(w)) => format!("rank 4, w2 = {w}"),
                _ => unreachable!(),
            })
        }
        Scenario => {
            let rec = scenario(e.id)?;
            let r = verify(&resolve_scenario(&rec)?)?;
            let want = scenario_expectation(e.id).expect("bundled scenarios carry an expectation");
            if r.passed != want {
                return Err(Error::Validation(format!("{}: report passed = {}, expected {want}", e.id, r.passed)));
            }
            Ok(format!("{} (sign {})", if r.passed { "passes" } else { "fails as expected" }, r.sign))
        }
        Pair => {
            let p = space(e.id)?;
            Ok(format!("pair with {} relative top cells", p.relative_count(p.dimension())))
        }
    }
}

/// Validates every entry; results stay in corpus order.
pub fn check_all(exec: Execution) -> Vec<(&'static str, Result<String>)> {
    exec.map(ENTRIES, |e| (e.id, validate(e.id)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = ENTRIES.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), ENTRIES.len());
    }

    #[test]
    fn unknown_ids() {
        assert!(matches!(complex("nope"), Err(Error::UnknownEntry(_))));
        assert!(matches!(complex("hopf_map"), Err(Error::UnknownEntry(_))));
        assert!(complex("corpus:s2").is_ok());
    }
}
