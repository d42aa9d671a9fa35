//! Virus optimisation over neighbour vectors.
//!
//! Each virus is an even-weight `x`; its fitness is the certified minimum
//! distance of `neighbour(C, x)` (capped at the floor) followed by whether
//! the neighbour's parameter key is unseen. Every step classifies the
//! population, replicates it, evaluates the offspring and culls back to the
//! population size. At each round end the working code moves to the saved
//! neighbour with the highest `(gamma, beta)`.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Registry, RegistryKey, SearchConfig};
use crate::analysis::{screen, Certificate, Screen};
use crate::code::{CodeType, EnumeratorParams, LinearCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::neighbour::neighbour;
use crate::record::{CodeRecord, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fitness {
    pub distance: usize,
    pub novel: bool,
}

impl Fitness {
    pub const WORST: Fitness = Fitness {
        distance: 0,
        novel: false,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VirusClass {
    Strong,
    Common,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Virus {
    pub x: BitVector,
    pub fitness: Fitness,
    pub key: Option<RegistryKey>,
    pub class: VirusClass,
    pub evaluated: bool,
}

impl Virus {
    pub fn new(x: BitVector) -> Self {
        Self {
            x,
            fitness: Fitness::WORST,
            key: None,
            class: VirusClass::Common,
            evaluated: false,
        }
    }
}

pub fn params_key(p: &EnumeratorParams) -> RegistryKey {
    let (gamma, beta) = p.key_values();
    RegistryKey {
        code_type: p.code_type,
        family: p.family,
        gamma,
        beta,
    }
}

/// Result of scoring one `x` against one code.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub distance: usize,
    pub key: Option<RegistryKey>,
    /// The neighbour and its certificate when it is worth saving.
    pub saved: Option<(LinearCode, Certificate)>,
}

/// Scores `x`; anything that is not a valid neighbour gets distance 0.
pub fn evaluate_one(code: &LinearCode, x: &BitVector, floor: usize) -> Evaluation {
    let worst = Evaluation {
        distance: 0,
        key: None,
        saved: None,
    };
    let Ok(child) = neighbour(code, x) else {
        return worst;
    };
    match screen(&child, floor) {
        Ok(Screen::Below(d)) => Evaluation {
            distance: d.min(floor),
            key: None,
            saved: None,
        },
        Ok(Screen::Passed(cert)) => {
            let distance = cert.min_distance.lower_bound().min(floor);
            let key = cert.params.as_ref().ok().map(params_key);
            let keep = cert.min_distance.exact().is_some() && key.is_some();
            Evaluation {
                distance,
                key,
                saved: keep.then_some((child, cert)),
            }
        }
        Err(_) => worst,
    }
}

/// Scores every unevaluated virus in parallel. Returns the saveable
/// neighbours with their population index, in index order.
pub fn evaluate(
    population: &mut [Virus],
    code: &LinearCode,
    floor: usize,
    registry: &Registry,
) -> Vec<(usize, LinearCode, Certificate)> {
    population
        .par_iter_mut()
        .enumerate()
        .filter(|(_, v)| !v.evaluated)
        .filter_map(|(i, v)| {
            let e = evaluate_one(code, &v.x, floor);
            v.fitness = Fitness {
                distance: e.distance,
                novel: e.key.is_some_and(|k| !registry.contains(&k)),
            };
            v.key = e.key;
            v.evaluated = true;
            e.saved.map(|(c, cert)| (i, c, cert))
        })
        .collect()
}

/// Indices by decreasing fitness, ties by increasing index.
fn ranking(population: &[Virus]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by(|&a, &b| population[b].fitness.cmp(&population[a].fitness));
    order
}

/// Marks the top `ceil(strong_fraction * N)` viruses strong.
pub fn classify(population: &mut [Virus], strong_fraction: f64) {
    let cfg = SearchConfig {
        strong_fraction,
        ..SearchConfig::default()
    };
    let strong = cfg.strong_count(population.len());
    for v in population.iter_mut() {
        v.class = VirusClass::Common;
    }
    for i in ranking(population).into_iter().take(strong) {
        population[i].class = VirusClass::Strong;
    }
}

const TAG_INITIAL: u64 = 1;
const TAG_REPLICATE: u64 = 2;

/// Independent ChaCha stream for one `(run, iteration, virus)` coordinate.
pub fn stream(master_seed: u64, tag: u64, run: usize, iteration: usize, index: usize) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&tag.to_le_bytes());
    seed[16..24].copy_from_slice(&(run as u64).to_le_bytes());
    seed[24..].copy_from_slice(&(iteration as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(seed);
    rng.set_stream(index as u64);
    rng
}

/// Coordinates a search may flip: all but the last (reserved for the parity
/// repair), and only the second half when `half_zero` is set.
fn free_range(n: usize, half_zero: bool) -> std::ops::Range<usize> {
    let start = if half_zero { n / 2 } else { 0 };
    start..n.saturating_sub(1)
}

/// Flips the last coordinate when the weight is odd.
pub fn repair_parity(x: &mut BitVector) {
    if x.weight() % 2 == 1 {
        x.flip(x.len() - 1);
    }
}

pub fn random_virus(n: usize, half_zero: bool, rng: &mut impl Rng) -> BitVector {
    let mut x = BitVector::zeros(n);
    for i in free_range(n, half_zero) {
        if rng.gen::<bool>() {
            x.set(i, true);
        }
    }
    repair_parity(&mut x);
    x
}

pub fn initial_population(config: &SearchConfig, n: usize) -> Vec<Virus> {
    (0..config.population_size)
        .map(|i| {
            let mut rng = stream(config.master_seed, TAG_INITIAL, 0, 0, i);
            Virus::new(random_virus(n, config.half_zero, &mut rng))
        })
        .collect()
}

pub fn mutate(parent: &BitVector, flips: usize, half_zero: bool, rng: &mut impl Rng) -> BitVector {
    let range = free_range(parent.len(), half_zero);
    let mut x = parent.clone();
    let flips = flips.min(range.len());
    for i in sample(rng, range.len(), flips) {
        x.flip(range.start + i);
    }
    repair_parity(&mut x);
    x
}

/// Offspring of a classified population, parents in index order.
pub fn replicate(population: &[Virus], config: &SearchConfig, run: usize, iteration: usize) -> Vec<Virus> {
    let mut out = Vec::new();
    for (i, parent) in population.iter().enumerate() {
        let (growth, flips) = match parent.class {
            VirusClass::Strong => (config.strong_growth, config.strong_flips),
            VirusClass::Common => (config.common_growth, config.common_flips),
        };
        let mut rng = stream(config.master_seed, TAG_REPLICATE, run, iteration, i);
        for _ in 0..growth {
            out.push(Virus::new(mutate(&parent.x, flips, config.half_zero, &mut rng)));
        }
    }
    out
}

/// Keeps the best `size` viruses, preferring elders and then lower indices
/// on ties.
pub fn antivirus(mut elders: Vec<Virus>, offspring: Vec<Virus>, size: usize) -> Vec<Virus> {
    elders.extend(offspring);
    if elders.len() <= size {
        return elders;
    }
    // stable: elders precede offspring among equals
    elders.sort_by_key(|v| std::cmp::Reverse(v.fitness));
    elders.truncate(size);
    elders
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundSummary {
    pub run: usize,
    pub saved: usize,
    pub replaced: bool,
    /// `(gamma, beta)` of the working code after the round, if Type I.
    pub key: Option<(i64, i64)>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub records: Vec<CodeRecord>,
    pub rounds: Vec<RoundSummary>,
    pub final_code: LinearCode,
    pub final_provenance: Provenance,
}

fn type_i_key(cert: &Certificate) -> Option<(i64, i64)> {
    match &cert.params {
        Ok(p) if p.code_type == CodeType::TypeI => Some((p.gamma, p.beta)),
        _ => None,
    }
}

struct State<'a> {
    config: &'a SearchConfig,
    registry: &'a mut Registry,
    seen: HashSet<String>,
    records: Vec<CodeRecord>,
    round_best: Option<(usize, (i64, i64))>,
    sink: &'a mut dyn FnMut(&CodeRecord),
}

impl State<'_> {
    fn save(
        &mut self,
        saves: Vec<(usize, LinearCode, Certificate)>,
        population: &[Virus],
        index_offset: usize,
        parent: (&LinearCode, &Provenance),
        run: usize,
        iteration: usize,
    ) {
        let parent_fp = parent.0.fingerprint();
        for (i, child, cert) in saves {
            let fp = child.fingerprint();
            if self.seen.contains(&fp) {
                continue;
            }
            let provenance = parent.1.extended(population[i].x.clone(), parent_fp.clone());
            let Ok(mut rec) = CodeRecord::from_certificate(&child, &cert, provenance, self.records.len() as u64)
            else {
                continue;
            };
            if self.config.family_filter.is_some_and(|f| f != rec.family) || rec.d < self.config.distance_floor {
                continue;
            }
            self.seen.insert(fp);
            let key = rec.key();
            rec.is_new = self.registry.is_new(&key);
            rec.run = run;
            rec.iteration = iteration;
            rec.virus = index_offset + i;
            self.registry.insert_found(key);
            if let Some(k) = type_i_key(&cert) {
                if self.round_best.is_none_or(|(_, best)| k > best) {
                    self.round_best = Some((self.records.len(), k));
                }
            }
            (self.sink)(&rec);
            self.records.push(rec);
        }
    }
}

/// Runs the full search from `start`; records are streamed to `sink` in the
/// order they are returned.
pub fn run(
    config: &SearchConfig,
    start: &Provenance,
    registry: &mut Registry,
    sink: &mut dyn FnMut(&CodeRecord),
) -> Result<SearchOutcome> {
    let mut code = start
        .rebuild()
        .map_err(|e| Error::InvalidInitial(e.to_string()))?;
    let cert = match screen(&code, config.distance_floor) {
        Ok(Screen::Passed(cert)) => cert,
        Ok(Screen::Below(d)) => {
            return Err(Error::InvalidInitial(format!(
                "minimum distance {d} below floor {}",
                config.distance_floor
            )))
        }
        Err(e) => return Err(Error::InvalidInitial(e.to_string())),
    };
    let mut key = type_i_key(&cert);
    let mut provenance = start.clone();
    let n = code.length();

    let mut state = State {
        config,
        registry,
        seen: HashSet::from([code.fingerprint()]),
        records: Vec::new(),
        round_best: None,
        sink,
    };
    let mut rounds = Vec::new();
    let mut population = initial_population(config, n);

    for round in 0..config.runs {
        state.round_best = None;
        let before = state.records.len();
        for it in 0..config.iterations {
            let saves = evaluate(&mut population, &code, config.distance_floor, state.registry);
            state.save(saves, &population, 0, (&code, &provenance), round, it);

            classify(&mut population, config.strong_fraction);
            let mut offspring = replicate(&population, config, round, it);
            let saves = evaluate(&mut offspring, &code, config.distance_floor, state.registry);
            state.save(saves, &offspring, population.len(), (&code, &provenance), round, it);

            population = antivirus(population, offspring, config.population_size);
        }
        let mut replaced = false;
        if let Some((idx, best)) = state.round_best {
            let rec = &state.records[idx];
            // the working key never decreases
            if key.is_none_or(|k| best >= k) && rec.fingerprint != code.fingerprint() {
                code = rec.provenance.rebuild()?;
                provenance = rec.provenance.clone();
                key = Some(best);
                replaced = true;
                for v in population.iter_mut() {
                    v.evaluated = false;
                }
            }
        }
        rounds.push(RoundSummary {
            run: round,
            saved: state.records.len() - before,
            replaced,
            key,
        });
    }
    Ok(SearchOutcome {
        records: state.records,
        rounds,
        final_code: code,
        final_provenance: provenance,
    })
}
