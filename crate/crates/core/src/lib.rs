//! Evolving painterly portraits with Cartesian genetic programming.
//!
//! A [`Genotype`] is a feed-forward graph of numeric nodes that turns pixel
//! coordinates into HSV channels. Renders are scored against a sitter
//! photograph for likeness and for painterly qualities, and a focus controller
//! shifts weight between the two when progress stalls.

pub mod config;
pub mod error;
pub mod evolve;
pub mod fitness;
pub mod focus;
pub mod function;
pub mod genome_file;
pub mod genotype;
pub mod imaging;
pub mod output;
pub mod program;

pub use config::RunConfig;
pub use error::{Error, GeneLocation, Result};
pub use evolve::{
    adaptive_rate, crossover, generation_step, mutate, neutral_mutation, neutral_reselect, run,
    run_seeded, Individual, LogRecord, Population, RunObserver, RunResult, Silent,
};
pub use fitness::{evaluate, score_image, FitnessReport, FocusWeights};
pub use focus::{update_focus, FocusParams, FocusState, Mode, UncleArchive, UncleCriteria, FOCUSED_W_R};
pub use function::{apply_function, FunctionId, FUNCTION_COUNT};
pub use genome_file::{parse_cgp1, read_genome, to_cgp1, write_genome};
pub use genotype::{Address, Genotype, NodeGene};
pub use imaging::{build_sitter, load_png, save_png, ImageBuffer, Mask, PhenotypeDigest, SitterContext};
pub use output::{read_final_population, RunWriter};
pub use program::{decode_active, render, ActiveProgram, PixelCoord};
