use rayon::prelude::*;

use crate::error::Result;
use crate::fitness::{evaluate, FitnessReport, FocusWeights};
use crate::genotype::Genotype;
use crate::imaging::{PhenotypeDigest, SitterContext};

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genotype: Genotype,
    pub report: Option<FitnessReport>,
    /// Digest of the render at sitter resolution.
    pub digest: Option<PhenotypeDigest>,
}

impl Individual {
    pub fn new(genotype: Genotype) -> Self {
        Individual {
            genotype,
            report: None,
            digest: None,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        self.report.is_some() && self.digest.is_some()
    }

    /// Combined fitness; unevaluated individuals rank below everything.
    pub fn combined(&self) -> f64 {
        self.report.map_or(f64::NEG_INFINITY, |r| r.combined)
    }

    /// Render and score if not done yet; otherwise bring the combined score
    /// up to date with `weights`.
    pub fn evaluate(&mut self, sitter: &SitterContext, weights: FocusWeights) -> Result<()> {
        match self.report {
            Some(r) if self.digest.is_some() => {
                if r.w_r != weights.w_r || r.mode != weights.mode {
                    self.report = Some(r.reweighted(weights));
                }
            }
            _ => {
                let (img, report) = evaluate(&self.genotype, sitter, weights)?;
                self.digest = Some(img.digest());
                self.report = Some(report);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
    pub generation: u64,
}

impl Population {
    pub fn new(genotypes: Vec<Genotype>) -> Self {
        Population {
            members: genotypes.into_iter().map(Individual::new).collect(),
            generation: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Evaluate every member under `weights`. Members are independent, so
    /// this runs in parallel; results land in member order.
    pub fn evaluate(&mut self, sitter: &SitterContext, weights: FocusWeights) -> Result<()> {
        self.members
            .par_iter_mut()
            .map(|m| m.evaluate(sitter, weights))
            .collect::<Result<Vec<()>>>()?;
        Ok(())
    }

    /// Index of the highest combined fitness; the lowest index wins ties.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate() {
            if m.combined() > self.members[best].combined() {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Individual {
        &self.members[self.best_index()]
    }

    /// Highest resemblance among evaluated members.
    pub fn best_resemblance(&self) -> f64 {
        self.members
            .iter()
            .filter_map(|m| m.report.map(|r| r.resemblance))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}
