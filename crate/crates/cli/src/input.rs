//! Resolving command-line inputs: `corpus:<id>` or a JSON file.

use std::fs;
use std::sync::Arc;

use num_bigint::BigInt;
use obstruction_core::cohomology::{CochainSpace, CohomologyClass};
use obstruction_core::corpus::{self, CorpusKind};
use obstruction_core::io::{parse_complex, parse_map, parse_scenario, ComplexRecord, ScenarioRecord};
use obstruction_core::manifold::{OrientedManifold, ThomModel};
use obstruction_core::simplicial::{SimplicialMap, SimplicialPair};
use obstruction_core::{Error, Result};

pub enum Source {
    Corpus(&'static str),
    File(String),
}

impl Source {
    pub fn parse(arg: &str) -> Result<Source> {
        match arg.strip_prefix("corpus:") {
            Some(id) => Ok(Source::Corpus(corpus::entry_for(id)?.id)),
            None => fs::read_to_string(arg)
                .map(Source::File)
                .map_err(|e| Error::Parse(format!("cannot read `{arg}`: {e}"))),
        }
    }

    fn kind(&self) -> Option<CorpusKind> {
        match self {
            Source::Corpus(id) => corpus::entry_for(id).ok().map(|e| e.kind),
            Source::File(_) => None,
        }
    }

    fn record(&self) -> Result<ComplexRecord> {
        match self {
            Source::File(text) => parse_complex(text),
            Source::Corpus(_) => unreachable!(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Source::Corpus(id) => format!("corpus:{id}"),
            Source::File(_) => "input".into(),
        }
    }

    /// A complex as an absolute pair, a pair, or the pair of a Thom model.
    pub fn pair(&self) -> Result<Arc<SimplicialPair>> {
        match self {
            Source::Corpus(id) => corpus::space(id),
            Source::File(_) => Ok(Arc::new(self.record()?.pair()?)),
        }
    }

    pub fn map(&self) -> Result<SimplicialMap> {
        match self {
            Source::Corpus(id) => corpus::map(id),
            Source::File(text) => parse_map(text)?.map_with(&|id| corpus::complex(id)),
        }
    }

    pub fn thom_model(&self) -> Result<ThomModel> {
        match self {
            Source::Corpus(id) => corpus::thom_model(id),
            Source::File(_) => self.record()?.thom_model(),
        }
    }

    pub fn scenario(&self) -> Result<ScenarioRecord> {
        match self {
            Source::Corpus(id) => corpus::scenario(id),
            Source::File(text) => parse_scenario(text),
        }
    }

    /// A closed manifold with its orientation and degree-2 basis, named on
    /// corpus manifolds (`h`, `a`, `b`) and `g<i>` otherwise.
    pub fn manifold(&self) -> Result<(OrientedManifold, Vec<(String, CohomologyClass)>)> {
        match self {
            Source::Corpus(id) if self.kind() == Some(CorpusKind::Complex) => corpus::named_classes(id),
            Source::Corpus(id) => Err(Error::Validation(format!("corpus:{id} is not a closed manifold"))),
            Source::File(_) => {
                let r = self.record()?;
                if r.sub_vertices.is_some() {
                    return Err(Error::Validation("a closed manifold has no subcomplex".into()));
                }
                let m = OrientedManifold::new(Arc::new(r.complex()?), r.orientation.unwrap_or(1))?;
                let g = m.space().group(2);
                let basis = (0..g.free_rank)
                    .map(|i| Ok((format!("g{i}"), m.space().generator(2, i)?)))
                    .collect::<Result<_>>()?;
                Ok((m, basis))
            }
        }
    }

    /// Names usable in class specifications on this input.
    fn named_class(&self, name: &str) -> Result<Option<CohomologyClass>> {
        if self.kind() != Some(CorpusKind::Complex) {
            return Ok(None);
        }
        let Source::Corpus(id) = self else { return Ok(None) };
        if !matches!(*id, "cp2" | "s2xs2") {
            return Ok(None);
        }
        let (_, basis) = corpus::named_classes(id)?;
        Ok(basis.into_iter().find(|(n, _)| n == name).map(|(_, c)| c))
    }
}

/// Parses a class specification on `space`:
/// a corpus name (`h`, `a`, `b`), `g<i>` for the `i`-th engine generator of
/// `H^degree`, or `[k:]c0,c1,..` for coordinates in the engine basis of `H^k`.
pub fn class(source: &Source, space: &Arc<CochainSpace>, spec: &str, degree: usize) -> Result<CohomologyClass> {
    let spec = spec.trim();
    if let Some(c) = source.named_class(spec)? {
        // named classes live on the integral space of the same complex
        return if c.coefficient() == space.coefficient() {
            space.class(2, c.cocycle().to_vec())
        } else {
            space.class(2, c.mod2().cocycle().to_vec())
        };
    }
    if let Some(i) = spec.strip_prefix('g').and_then(|s| s.parse::<usize>().ok()) {
        return space.generator(degree, i);
    }
    let (k, coords) = match spec.split_once(':') {
        Some((k, rest)) => (k.parse::<usize>().map_err(|_| bad_class(spec))?, rest),
        None => (degree, spec),
    };
    let coords: Vec<BigInt> = coords
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| bad_class(spec)))
        .collect::<Result<_>>()?;
    space.from_coordinates(k, &coords)
}

fn bad_class(spec: &str) -> Error {
    Error::Parse(format!("cannot read class `{spec}`: expected a name, g<i>, or [k:]c0,c1,.."))
}
