//! The generational loop.
//!
//! Randomness comes from one seeded ChaCha generator consumed in a fixed
//! order: the initial population first, then per generation the elite's
//! neutral reselection followed by, for each offspring slot in order, its
//! selection draws and then its operator draws. Fitness evaluation runs in
//! parallel but draws nothing, so a seed fixes the whole run.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::focus::{update_focus, FocusState, Mode, UncleArchive};
use crate::genotype::Genotype;
use crate::imaging::SitterContext;

use super::operators::{adaptive_rate, crossover, mutate, neutral_reselect};
use super::population::{Individual, Population};

/// One line of `run.log`.
///
/// `mode` and `w_r` are the weights the generation was scored under.
/// `mutation_rate` bred it (zero for the initial population). `stagnation`
/// and `archive_size` are the controller's values after seeing it.
#[derive(Debug, Clone, PartialEq)]
pub struct LogRecord {
    pub generation: u64,
    pub best_combined: f64,
    /// Highest resemblance anywhere in the population.
    pub best_resemblance: f64,
    pub composition: f64,
    pub tonality: f64,
    pub harmony: f64,
    pub painterly: f64,
    pub mode: Mode,
    pub w_r: f64,
    pub mutation_rate: f64,
    pub stagnation: u32,
    pub archive_size: usize,
}

pub const LOG_HEADER: &str = "generation,best_combined,best_resemblance,composition,tonality,harmony,painterly,mode,w_r,mutation_rate,stagnation,archive_size";

impl fmt::Display for LogRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{},{:.4},{:.4},{},{}",
            self.generation,
            self.best_combined,
            self.best_resemblance,
            self.composition,
            self.tonality,
            self.harmony,
            self.painterly,
            self.mode,
            self.w_r,
            self.mutation_rate,
            self.stagnation,
            self.archive_size
        )
    }
}

impl LogRecord {
    /// Parse a line written by `Display`.
    pub fn parse(line: &str) -> Result<Self> {
        let f: Vec<&str> = line.trim().split(',').collect();
        let bad = || Error::Config(format!("malformed log record `{line}`"));
        if f.len() != 12 {
            return Err(bad());
        }
        let num = |i: usize| f[i].parse::<f64>().map_err(|_| bad());
        Ok(LogRecord {
            generation: f[0].parse().map_err(|_| bad())?,
            best_combined: num(1)?,
            best_resemblance: num(2)?,
            composition: num(3)?,
            tonality: num(4)?,
            harmony: num(5)?,
            painterly: num(6)?,
            mode: f[7].parse()?,
            w_r: num(8)?,
            mutation_rate: num(9)?,
            stagnation: f[10].parse().map_err(|_| bad())?,
            archive_size: f[11].parse().map_err(|_| bad())?,
        })
    }
}

/// What the loop exposes after each generation.
pub struct GenerationView<'a> {
    pub population: &'a Population,
    pub focus: &'a FocusState,
    pub archive: &'a UncleArchive,
    pub record: &'a LogRecord,
}

pub trait RunObserver {
    fn on_generation(&mut self, view: &GenerationView<'_>) -> Result<()>;

    fn on_finish(&mut self, _result: &RunResult) -> Result<()> {
        Ok(())
    }
}

/// Observer that does nothing.
pub struct Silent;

impl RunObserver for Silent {
    fn on_generation(&mut self, _view: &GenerationView<'_>) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub best_per_generation: Vec<Individual>,
    pub population: Population,
    pub archive: UncleArchive,
    pub focus_trace: Vec<FocusState>,
    pub log: Vec<LogRecord>,
}

/// State carried from one generation to the next.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub population: Population,
    pub focus: FocusState,
    pub mutation_rate: f64,
}

fn tournament<'p, R: Rng + ?Sized>(pop: &'p Population, size: usize, rng: &mut R) -> &'p Individual {
    let mut best = &pop.members[rng.gen_range(0..pop.len())];
    for _ in 1..size {
        let c = &pop.members[rng.gen_range(0..pop.len())];
        if c.combined() > best.combined() {
            best = c;
        }
    }
    best
}

fn absorb_uncles(pop: &Population, archive: &mut UncleArchive) -> Result<()> {
    for m in &pop.members {
        if let (Some(report), Some(digest)) = (m.report, m.digest) {
            if archive.qualifies(&report) {
                archive.insert(m.genotype.clone(), report, digest)?;
            }
        }
    }
    Ok(())
}

/// Produce the next generation.
///
/// Steps: score anything unscored under the current weight and archive new
/// uncles; carry the best individual over (after neutral reselection when the
/// best phenotype has stalled); fill the rest with offspring of tournament
/// parents, where the second parent comes from the uncle archive with
/// probability `p_uncle`; score the offspring under the same weight; advance
/// the focus controller with the new generation's best.
pub fn generation_step<R: Rng + ?Sized>(
    pop: &Population,
    sitter: &SitterContext,
    focus: &FocusState,
    archive: &mut UncleArchive,
    cfg: &RunConfig,
    rng: &mut R,
) -> Result<StepOutcome> {
    let weights = focus.weights();
    let mut current = pop.clone();
    current.evaluate(sitter, weights)?;
    absorb_uncles(&current, archive)?;

    let best = current.best_index();
    let elite = neutral_reselect(
        &current.members[best],
        &current.members,
        focus.digest_repeat,
        rng,
    );
    let rate = adaptive_rate(cfg.base_mutation, focus.stagnation);

    let mut members = Vec::with_capacity(current.len());
    members.push(elite);
    while members.len() < current.len() {
        let a = tournament(&current, cfg.tournament_size, rng);
        let b = if !archive.is_empty() && rng.gen_bool(cfg.p_uncle) {
            archive.sample(1, rng).remove(0)
        } else {
            tournament(&current, cfg.tournament_size, rng).genotype.clone()
        };
        let child = if rng.gen_bool(cfg.crossover_prob) {
            crossover(&a.genotype, &b, rng)?
        } else {
            a.genotype.clone()
        };
        members.push(Individual::new(mutate(&child, rate, rng)));
    }

    let mut next = Population {
        members,
        generation: current.generation + 1,
    };
    next.evaluate(sitter, weights)?;
    absorb_uncles(&next, archive)?;
    let top = next.best();
    let focus = update_focus(
        focus,
        top.report.as_ref().expect("evaluated"),
        top.digest.expect("evaluated"),
        &cfg.focus_params(),
    );
    Ok(StepOutcome {
        population: next,
        focus,
        mutation_rate: rate,
    })
}

fn record(
    pop: &Population,
    focus: &FocusState,
    archive: &UncleArchive,
    mutation_rate: f64,
) -> LogRecord {
    let best = pop.best().report.expect("evaluated");
    LogRecord {
        generation: pop.generation,
        best_combined: best.combined,
        best_resemblance: pop.best_resemblance(),
        composition: best.composition,
        tonality: best.tonality,
        harmony: best.harmony,
        painterly: best.painterly,
        mode: best.mode,
        w_r: best.w_r,
        mutation_rate,
        stagnation: focus.stagnation,
        archive_size: archive.len(),
    }
}

/// Run a full evolution from a random initial population.
pub fn run(cfg: &RunConfig, sitter: &SitterContext, observer: &mut dyn RunObserver) -> Result<RunResult> {
    run_seeded(cfg, sitter, Vec::new(), observer)
}

/// Like [`run`], but the initial population starts with `seeds` (for example
/// the final population of an earlier run) and is topped up with random
/// genotypes.
pub fn run_seeded(
    cfg: &RunConfig,
    sitter: &SitterContext,
    seeds: Vec<Genotype>,
    observer: &mut dyn RunObserver,
) -> Result<RunResult> {
    cfg.validate()?;
    if let Some(g) = seeds.iter().find(|g| g.node_count() != cfg.node_count) {
        return Err(Error::NodeCountMismatch {
            left: cfg.node_count,
            right: g.node_count(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut genotypes: Vec<Genotype> = seeds.into_iter().take(cfg.population).collect();
    while genotypes.len() < cfg.population {
        genotypes.push(Genotype::random(cfg.node_count, &mut rng));
    }

    let params = cfg.focus_params();
    let mut archive = UncleArchive::new(cfg.archive_capacity, cfg.uncle_criteria());
    let mut focus = FocusState::default();
    let mut pop = Population::new(genotypes);
    pop.evaluate(sitter, focus.weights())?;
    absorb_uncles(&pop, &mut archive)?;
    {
        let top = pop.best();
        focus = update_focus(
            &focus,
            top.report.as_ref().expect("evaluated"),
            top.digest.expect("evaluated"),
            &params,
        );
    }

    let mut result = RunResult {
        best_per_generation: Vec::new(),
        population: pop.clone(),
        archive: archive.clone(),
        focus_trace: Vec::new(),
        log: Vec::new(),
    };
    let mut rate = 0.0;
    loop {
        let rec = record(&pop, &focus, &archive, rate);
        observer.on_generation(&GenerationView {
            population: &pop,
            focus: &focus,
            archive: &archive,
            record: &rec,
        })?;
        result.best_per_generation.push(pop.best().clone());
        result.focus_trace.push(focus);
        let reached = cfg.target_fitness.is_some_and(|t| rec.best_combined >= t);
        result.log.push(rec);
        if pop.generation >= cfg.generations || reached {
            break;
        }
        let step = generation_step(&pop, sitter, &focus, &mut archive, cfg, &mut rng)?;
        pop = step.population;
        focus = step.focus;
        rate = step.mutation_rate;
    }
    result.population = pop;
    result.archive = archive;
    observer.on_finish(&result)?;
    Ok(result)
}
