//! Contextual focus: the controller that moves the fitness function between
//! resemblance-led scoring and painterly-led scoring, and the archive of
//! "strange uncles" (individuals that excel at the painterly rules).
//!
//! In focused mode the resemblance weight sits at 0.8. After the generation
//! best has stalled for more than `g_assoc` generations the controller turns
//! associative and slides the weight down by `slide_step` on every further
//! stalled generation, never below `w_r_floor`. A marked resemblance gain
//! (`delta_return`) while associative snaps back to focused.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fitness::{FitnessReport, FocusWeights};
use crate::genotype::Genotype;
use crate::imaging::PhenotypeDigest;

/// Resemblance weight in focused mode.
pub const FOCUSED_W_R: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Focused,
    Associative,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Focused => "focused",
            Mode::Associative => "associative",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "focused" => Ok(Mode::Focused),
            "associative" => Ok(Mode::Associative),
            other => Err(Error::Config(format!("unknown mode `{other}`"))),
        }
    }
}

/// Trigger thresholds for [`update_focus`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusParams {
    /// Stalled generations tolerated before going associative.
    pub g_assoc: u32,
    pub slide_step: f64,
    pub w_r_floor: f64,
    /// Resemblance gain that returns the controller to focused mode.
    pub delta_return: f64,
    /// Minimum combined-fitness gain that counts as progress.
    pub epsilon: f64,
}

impl Default for FocusParams {
    fn default() -> Self {
        FocusParams {
            g_assoc: 5,
            slide_step: 0.05,
            w_r_floor: 0.35,
            delta_return: 0.02,
            epsilon: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusState {
    pub mode: Mode,
    pub w_r: f64,
    /// Consecutive generations without a combined-fitness gain above epsilon.
    pub stagnation: u32,
    pub best_combined: f64,
    pub best_resemblance: f64,
    /// Consecutive generations whose best phenotype repeated the previous one.
    pub digest_repeat: u32,
    pub last_digest: Option<PhenotypeDigest>,
}

impl Default for FocusState {
    fn default() -> Self {
        FocusState {
            mode: Mode::Focused,
            w_r: FOCUSED_W_R,
            stagnation: 0,
            best_combined: f64::NEG_INFINITY,
            best_resemblance: f64::NEG_INFINITY,
            digest_repeat: 0,
            last_digest: None,
        }
    }
}

impl FocusState {
    pub fn weights(&self) -> FocusWeights {
        FocusWeights {
            mode: self.mode,
            w_r: self.w_r,
        }
    }

    /// Whether mode and weight agree: 0.8 when focused, `[floor, 0.8)` otherwise.
    pub fn is_coherent(&self, params: &FocusParams) -> bool {
        match self.mode {
            Mode::Focused => self.w_r == FOCUSED_W_R,
            Mode::Associative => self.w_r >= params.w_r_floor && self.w_r < FOCUSED_W_R,
        }
    }
}

/// Advance the controller by one generation.
pub fn update_focus(
    s: &FocusState,
    gen_best: &FitnessReport,
    gen_best_digest: PhenotypeDigest,
    params: &FocusParams,
) -> FocusState {
    let mut next = *s;
    let improved = gen_best.combined > s.best_combined + params.epsilon;
    next.stagnation = if improved { 0 } else { s.stagnation + 1 };
    next.digest_repeat = if s.last_digest == Some(gen_best_digest) {
        s.digest_repeat + 1
    } else {
        0
    };
    next.last_digest = Some(gen_best_digest);

    match s.mode {
        Mode::Focused => {
            if next.stagnation > params.g_assoc {
                next.mode = Mode::Associative;
                next.w_r = (FOCUSED_W_R - params.slide_step).max(params.w_r_floor);
            }
        }
        Mode::Associative => {
            if gen_best.resemblance >= s.best_resemblance + params.delta_return {
                next.mode = Mode::Focused;
                next.w_r = FOCUSED_W_R;
                next.stagnation = 0;
            } else if !improved {
                next.w_r = (s.w_r - params.slide_step).max(params.w_r_floor);
            }
        }
    }
    next.best_combined = s.best_combined.max(gen_best.combined);
    next.best_resemblance = s.best_resemblance.max(gen_best.resemblance);
    next
}

/// Qualification thresholds for the uncle archive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncleCriteria {
    /// Any single painterly rule at or above this qualifies.
    pub single_rule: f64,
    /// A combined painterly score at or above this qualifies.
    pub painterly: f64,
}

impl Default for UncleCriteria {
    fn default() -> Self {
        UncleCriteria {
            single_rule: 0.9,
            painterly: 0.8,
        }
    }
}

pub fn is_uncle(r: &FitnessReport, criteria: &UncleCriteria) -> bool {
    r.best_rule() >= criteria.single_rule || r.painterly >= criteria.painterly
}

#[derive(Debug, Clone, PartialEq)]
pub struct UncleEntry {
    pub genotype: Genotype,
    pub report: FitnessReport,
    pub digest: PhenotypeDigest,
}

/// Bounded archive of painterly high-scorers, best first.
#[derive(Debug, Clone)]
pub struct UncleArchive {
    entries: Vec<UncleEntry>,
    capacity: usize,
    criteria: UncleCriteria,
}

pub const DEFAULT_ARCHIVE_CAPACITY: usize = 16;

impl Default for UncleArchive {
    fn default() -> Self {
        UncleArchive::new(DEFAULT_ARCHIVE_CAPACITY, UncleCriteria::default())
    }
}

impl UncleArchive {
    pub fn new(capacity: usize, criteria: UncleCriteria) -> Self {
        UncleArchive {
            entries: Vec::with_capacity(capacity + 1),
            capacity,
            criteria,
        }
    }

    pub fn entries(&self) -> &[UncleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn criteria(&self) -> &UncleCriteria {
        &self.criteria
    }

    pub fn qualifies(&self, report: &FitnessReport) -> bool {
        is_uncle(report, &self.criteria)
    }

    /// Insert in painterly-descending order, evicting the weakest entry when
    /// full. Returns whether the archive changed. A phenotype already present
    /// is not stored twice.
    pub fn insert(
        &mut self,
        genotype: Genotype,
        report: FitnessReport,
        digest: PhenotypeDigest,
    ) -> Result<bool> {
        if !self.qualifies(&report) {
            return Err(Error::NotUncle);
        }
        if self.entries.iter().any(|e| e.digest == digest) {
            return Ok(false);
        }
        let at = self
            .entries
            .partition_point(|e| e.report.painterly >= report.painterly);
        if at >= self.capacity {
            return Ok(false);
        }
        self.entries.insert(
            at,
            UncleEntry {
                genotype,
                report,
                digest,
            },
        );
        self.entries.truncate(self.capacity);
        Ok(true)
    }

    /// Draw `min(k, len)` distinct entries with probability proportional to
    /// their painterly scores.
    pub fn sample<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Vec<Genotype> {
        let k = k.min(self.entries.len());
        if k == 0 {
            return Vec::new();
        }
        self.entries
            .choose_multiple_weighted(rng, k, |e| e.report.painterly)
            .expect("painterly scores of uncles are positive and finite")
            .map(|e| e.genotype.clone())
            .collect()
    }
}
