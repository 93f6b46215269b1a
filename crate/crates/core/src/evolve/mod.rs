//! Variation operators, populations and the generational loop.

mod engine;
mod operators;
mod population;

pub use engine::{
    generation_step, run, run_seeded, GenerationView, LogRecord, RunObserver, RunResult, Silent,
    StepOutcome, LOG_HEADER,
};
pub use operators::{
    adaptive_rate, crossover, inactive_nodes, mutate, neutral_mutation, neutral_reselect,
    MAX_MUTATION_RATE, NEUTRAL_REPEAT_LIMIT, STAGNATION_CAP,
};
pub use population::{Individual, Population};
