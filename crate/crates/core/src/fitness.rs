//! Scoring a rendered portrait: resemblance to the sitter plus three
//! painterly rules, blended by the current resemblance weight.

use crate::error::Result;
use crate::focus::Mode;
use crate::genotype::Genotype;
use crate::imaging::{
    through_rgb,
    hue_distance, hue_histogram, value_histogram, face_background_contrast, Histogram,
    ImageBuffer, Pyramid, SitterContext, HUE_BINS, QUARTER, VALUE_BINS,
};
use crate::program::render;

/// Per-channel weights of the resemblance distance (H, S, V).
pub const CHANNEL_WEIGHTS: [f64; 3] = [0.2, 0.2, 0.6];

/// Half-width, in bins, of the analogous and complementary hue windows.
pub const HARMONY_WINDOW: usize = 3;

/// Hue codes in `[0, WARM_LOW] ∪ [WARM_HIGH, 255]` are warm.
pub const WARM_LOW: f64 = 42.0;
pub const WARM_HIGH: f64 = 213.0;

/// The resemblance weight and the mode it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocusWeights {
    pub mode: Mode,
    pub w_r: f64,
}

impl FocusWeights {
    pub fn focused() -> Self {
        FocusWeights {
            mode: Mode::Focused,
            w_r: crate::focus::FOCUSED_W_R,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessReport {
    pub resemblance: f64,
    pub composition: f64,
    pub tonality: f64,
    pub harmony: f64,
    pub painterly: f64,
    pub combined: f64,
    pub w_r: f64,
    pub mode: Mode,
}

impl FitnessReport {
    /// Assemble a report from the four raw scores.
    pub fn from_scores(
        resemblance: f64,
        composition: f64,
        tonality: f64,
        harmony: f64,
        weights: FocusWeights,
    ) -> Self {
        let painterly = painterly_combine(composition, tonality, harmony);
        FitnessReport {
            resemblance,
            composition,
            tonality,
            harmony,
            painterly,
            combined: combined_fitness(resemblance, painterly, weights.w_r),
            w_r: weights.w_r,
            mode: weights.mode,
        }
    }

    /// Same scores, recombined under different weights.
    pub fn reweighted(&self, weights: FocusWeights) -> Self {
        FitnessReport {
            combined: combined_fitness(self.resemblance, self.painterly, weights.w_r),
            w_r: weights.w_r,
            mode: weights.mode,
            ..*self
        }
    }

    pub fn best_rule(&self) -> f64 {
        self.composition.max(self.tonality).max(self.harmony)
    }
}

fn unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Mean weighted channel distance between two equally sized images.
pub fn level_distance(a: &ImageBuffer, b: &ImageBuffer) -> f64 {
    debug_assert_eq!(a.dims(), b.dims());
    let [wh, ws, wv] = CHANNEL_WEIGHTS;
    let total: f64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(p, q)| {
            let dh = f64::from(hue_distance(p[0], q[0])) / 128.0;
            let ds = f64::from(p[1].abs_diff(q[1])) / 255.0;
            let dv = f64::from(p[2].abs_diff(q[2])) / 255.0;
            wh * dh + ws * ds + wv * dv
        })
        .sum();
    total / a.pixels().len() as f64
}

fn resemblance_of_pyramid(candidate: &Pyramid, sitter: &SitterContext) -> f64 {
    let levels = sitter.pyramid().levels();
    let mean: f64 = candidate
        .levels()
        .iter()
        .zip(levels)
        .map(|(c, s)| level_distance(c, s))
        .sum::<f64>()
        / levels.len() as f64;
    unit(1.0 - mean)
}

fn composition_of_quarter(quarter: &ImageBuffer, sitter: &SitterContext) -> f64 {
    let c = face_background_contrast(quarter, sitter.mask(QUARTER));
    unit(1.0 - (c - sitter.face_bg_contrast()).abs())
}

fn tonality_of_quarter(quarter: &ImageBuffer, sitter: &SitterContext) -> f64 {
    unit(value_histogram(quarter, VALUE_BINS).intersection(sitter.value_hist()))
}

/// `1 - mean over pyramid levels of the weighted channel distance`.
pub fn resemblance_score(candidate: &ImageBuffer, sitter: &SitterContext) -> Result<f64> {
    candidate.ensure_dims(sitter.dims())?;
    Ok(resemblance_of_pyramid(&Pyramid::build(candidate), sitter))
}

/// How closely the face/background value contrast at quarter scale matches
/// the sitter's.
pub fn composition_score(candidate: &ImageBuffer, sitter: &SitterContext) -> Result<f64> {
    candidate.ensure_dims(sitter.dims())?;
    Ok(composition_of_quarter(
        Pyramid::build(candidate).level(QUARTER),
        sitter,
    ))
}

/// Intersection of quarter-scale value histograms.
pub fn tonality_score(candidate: &ImageBuffer, sitter: &SitterContext) -> Result<f64> {
    candidate.ensure_dims(sitter.dims())?;
    Ok(tonality_of_quarter(
        Pyramid::build(candidate).level(QUARTER),
        sitter,
    ))
}

/// Statistics behind [`harmony_score`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonyParts {
    pub dominant_bin: usize,
    pub analogous: f64,
    pub complementary: f64,
    pub structure: f64,
    pub warm_fraction: f64,
    pub temperature: f64,
}

fn is_warm_bin(k: usize, bins: usize) -> bool {
    let center = (k as f64 + 0.5) * 256.0 / bins as f64;
    center <= WARM_LOW || center >= WARM_HIGH
}

pub fn harmony_parts(hist: &Histogram) -> HarmonyParts {
    let bins = hist.bin_count();
    let dominant_bin = hist.argmax();
    let analogous = hist.circular_window(dominant_bin, HARMONY_WINDOW);
    let opposite = (dominant_bin + bins / 2) % bins;
    let complementary = analogous + hist.circular_window(opposite, HARMONY_WINDOW);
    let structure = analogous.max(complementary.min(1.0));
    let warm_fraction: f64 = hist
        .bins()
        .iter()
        .enumerate()
        .filter(|(k, _)| is_warm_bin(*k, bins))
        .map(|(_, m)| m)
        .sum();
    HarmonyParts {
        dominant_bin,
        analogous,
        complementary,
        structure,
        warm_fraction,
        temperature: 2.0 * (warm_fraction - 0.5).abs(),
    }
}

/// Dominant-hue structure (analogous or complementary) averaged with
/// warm/cool imbalance, both read from the saturation-weighted hue histogram.
pub fn harmony_score(candidate: &ImageBuffer) -> f64 {
    let parts = harmony_parts(&hue_histogram(candidate, HUE_BINS));
    unit(0.5 * parts.structure + 0.5 * parts.temperature)
}

/// Half the best rule plus half the mean, so one excellent rule is rewarded
/// beyond its proportional share.
pub fn painterly_combine(composition: f64, tonality: f64, harmony: f64) -> f64 {
    let max = composition.max(tonality).max(harmony);
    let mean = (composition + tonality + harmony) / 3.0;
    unit(0.5 * max + 0.5 * mean)
}

pub fn combined_fitness(resemblance: f64, painterly: f64, w_r: f64) -> f64 {
    unit(w_r * resemblance + (1.0 - w_r) * painterly)
}

/// Score an already rendered candidate.
pub fn score_image(
    candidate: &ImageBuffer,
    sitter: &SitterContext,
    weights: FocusWeights,
) -> Result<FitnessReport> {
    candidate.ensure_dims(sitter.dims())?;
    let pyramid = Pyramid::build(candidate);
    let quarter = pyramid.level(QUARTER);
    Ok(FitnessReport::from_scores(
        resemblance_of_pyramid(&pyramid, sitter),
        composition_of_quarter(quarter, sitter),
        tonality_of_quarter(quarter, sitter),
        harmony_score(candidate),
        weights,
    ))
}

/// Render at sitter resolution and score the image as it would be saved,
/// so a candidate scored here and one reloaded from its PNG agree.
pub fn evaluate(
    genotype: &Genotype,
    sitter: &SitterContext,
    weights: FocusWeights,
) -> Result<(ImageBuffer, FitnessReport)> {
    let (w, h) = sitter.dims();
    let img = through_rgb(&render(genotype, w, h));
    let report = score_image(&img, sitter, weights)?;
    Ok((img, report))
}
