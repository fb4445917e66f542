//! Enumeration of explicit amsts by index, exhaustively or by seeded
//! sampling, optionally reduced to one representative per symmetry orbit.

use amst_core::Amst;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::LabError;

/// Default cap on `|M| * 2^|L|` for exhaustive runs.
pub const DEFAULT_BIT_BUDGET: u64 = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Random { count: u64, seed: u64, density: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationSpace {
    pub models: u32,
    pub sentences: u32,
    pub mode: Mode,
    pub canonicalize: bool,
}

impl EnumerationSpace {
    pub fn exhaustive(models: u32, sentences: u32) -> Self {
        EnumerationSpace { models, sentences, mode: Mode::Exhaustive, canonicalize: false }
    }

    pub fn random(models: u32, sentences: u32, count: u64, seed: u64) -> Self {
        EnumerationSpace { models, sentences, mode: Mode::Random { count, seed, density: 0.5 }, canonicalize: false }
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize = true;
        self
    }

    /// Matrix bits per amst.
    pub fn bits(&self) -> u64 {
        (self.models as u64) << self.sentences
    }

    /// Checks the size against the index width and, when exhaustive, the budget.
    pub fn validate(&self, budget: u64) -> Result<(), LabError> {
        if self.models == 0 || self.sentences == 0 {
            return Err(LabError::InvalidSpace("models and sentences must be positive".into()));
        }
        if self.bits() > 64 {
            return Err(LabError::InvalidSpace(format!("{} matrix bits do not fit an index", self.bits())));
        }
        if let Mode::Random { density, .. } = self.mode {
            if !(0.0..=1.0).contains(&density) {
                return Err(LabError::InvalidSpace(format!("density {density} is not in [0, 1]")));
            }
        }
        if self.mode == Mode::Exhaustive && self.bits() > budget {
            return Err(LabError::OverBudget { models: self.models, sentences: self.sentences, bits: self.bits(), budget });
        }
        Ok(())
    }

    /// The index source, before any canonical filtering.
    pub fn source(&self, budget: u64) -> Result<IndexSource, LabError> {
        self.validate(budget)?;
        Ok(match self.mode {
            Mode::Exhaustive => IndexSource::Range(1u64.checked_shl(self.bits() as u32).unwrap_or(0)),
            Mode::Random { count, seed, density } => IndexSource::List(sample_indices(self.bits(), count, seed, density)),
        })
    }
}

/// Indices to visit, addressed by position so work can be split into ranges.
#[derive(Clone, Debug)]
pub enum IndexSource {
    /// `0..n`.
    Range(u64),
    List(Vec<u64>),
}

impl IndexSource {
    pub fn len(&self) -> usize {
        match self {
            IndexSource::Range(n) => *n as usize,
            IndexSource::List(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, pos: usize) -> u64 {
        match self {
            IndexSource::Range(_) => pos as u64,
            IndexSource::List(v) => v[pos],
        }
    }
}

/// Each matrix bit is set independently with probability `density`.
pub fn sample_indices(bits: u64, count: u64, seed: u64, density: f64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..bits).fold(0u64, |acc, b| if rng.gen_bool(density) { acc | 1 << b } else { acc })).collect()
}

/// The amsts of a space in enumeration order.
pub fn enumerate(space: &EnumerationSpace, budget: u64) -> Result<impl Iterator<Item = Amst>, LabError> {
    let source = space.source(budget)?;
    let sym = space.canonicalize.then(|| Symmetry::new(space.models, space.sentences));
    let (models, n) = (space.models, space.sentences);
    Ok((0..source.len())
        .map(move |p| source.get(p))
        .filter(move |&i| sym.as_ref().is_none_or(|s| s.is_canonical(i)))
        .map(move |i| Amst::from_index(models, n, i).expect("validated size")))
}

/// How many amsts a space yields.
pub fn count(space: &EnumerationSpace, budget: u64) -> Result<u64, LabError> {
    let source = space.source(budget)?;
    if !space.canonicalize {
        return Ok(source.len() as u64);
    }
    let sym = Symmetry::new(space.models, space.sentences);
    Ok((0..source.len()).filter(|&p| sym.is_canonical(source.get(p))).count() as u64)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Model and sentence permutations acting on matrix indices.
#[derive(Clone, Debug)]
pub struct Symmetry {
    models: u32,
    n: u32,
    model_perms: Vec<Vec<usize>>,
    /// Per sentence permutation, the image of every subset mask.
    mask_maps: Vec<Vec<u64>>,
}

impl Symmetry {
    pub fn new(models: u32, n: u32) -> Self {
        let mask_maps = permutations(n as usize)
            .into_iter()
            .map(|p| {
                (0..1u64 << n).map(|mask| (0..n as usize).filter(|&a| mask >> a & 1 == 1).fold(0u64, |acc, a| acc | 1 << p[a])).collect()
            })
            .collect();
        Symmetry { models, n, model_perms: permutations(models as usize), mask_maps }
    }

    fn apply(&self, index: u64, mp: &[usize], map: &[u64]) -> u64 {
        let mut out = 0u64;
        for (m, &target) in mp.iter().enumerate().take(self.models as usize) {
            for (mask, &image) in map.iter().enumerate() {
                if index >> ((m << self.n) | mask) & 1 == 1 {
                    out |= 1 << ((target << self.n) | image as usize);
                }
            }
        }
        out
    }

    /// The least index in the orbit.
    pub fn canonical(&self, index: u64) -> u64 {
        let mut best = index;
        for mp in &self.model_perms {
            for map in &self.mask_maps {
                best = best.min(self.apply(index, mp, map));
            }
        }
        best
    }

    pub fn is_canonical(&self, index: u64) -> bool {
        self.model_perms.iter().all(|mp| self.mask_maps.iter().all(|map| self.apply(index, mp, map) >= index))
    }
}
