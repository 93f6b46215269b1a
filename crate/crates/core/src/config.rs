//! Run configuration: flat `key = value` lines, `#` starts a comment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::focus::{FocusParams, UncleCriteria, FOCUSED_W_R};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub sitter: Option<PathBuf>,
    pub mask: Option<PathBuf>,
    pub out_dir: PathBuf,
    /// Size of emitted PNGs; scoring always happens at sitter resolution.
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub node_count: usize,
    pub population: usize,
    pub generations: u64,
    pub seed: u64,
    pub base_mutation: f64,
    pub crossover_prob: f64,
    pub p_uncle: f64,
    pub tournament_size: usize,
    pub g_assoc: u32,
    pub slide_step: f64,
    pub w_r_floor: f64,
    pub delta_return: f64,
    pub stagnation_epsilon: f64,
    pub uncle_single_rule: f64,
    pub uncle_painterly: f64,
    pub archive_capacity: usize,
    pub snapshot_every: u64,
    /// Stop early once the best combined fitness reaches this.
    pub target_fitness: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let focus = FocusParams::default();
        let uncle = UncleCriteria::default();
        RunConfig {
            sitter: None,
            mask: None,
            out_dir: PathBuf::from("run"),
            width: None,
            height: None,
            node_count: 30,
            population: 40,
            generations: 500,
            seed: 0,
            base_mutation: 0.02,
            crossover_prob: 0.6,
            p_uncle: 0.15,
            tournament_size: 3,
            g_assoc: focus.g_assoc,
            slide_step: focus.slide_step,
            w_r_floor: focus.w_r_floor,
            delta_return: focus.delta_return,
            stagnation_epsilon: focus.epsilon,
            uncle_single_rule: uncle.single_rule,
            uncle_painterly: uncle.painterly,
            archive_capacity: crate::focus::DEFAULT_ARCHIVE_CAPACITY,
            snapshot_every: 25,
            target_fitness: None,
        }
    }
}

/// Every recognized key, in the order `to_text` writes them.
pub const KEYS: &[&str] = &[
    "sitter",
    "mask",
    "out_dir",
    "width",
    "height",
    "node_count",
    "population",
    "generations",
    "seed",
    "base_mutation",
    "crossover_prob",
    "p_uncle",
    "tournament_size",
    "g_assoc",
    "slide_step",
    "w_r_floor",
    "delta_return",
    "stagnation_epsilon",
    "uncle_single_rule",
    "uncle_painterly",
    "archive_capacity",
    "snapshot_every",
    "target_fitness",
];

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}`")))
}

fn optional(value: &str) -> Option<&str> {
    match value {
        "" | "none" => None,
        v => Some(v),
    }
}

impl RunConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RunConfig::from_text(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Apply `key = value` lines on top of the current values.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    /// Set one key. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "sitter" => self.sitter = optional(value).map(PathBuf::from),
            "mask" => self.mask = optional(value).map(PathBuf::from),
            "out_dir" => self.out_dir = PathBuf::from(value),
            "width" => self.width = optional(value).map(|v| parse_num(key, v)).transpose()?,
            "height" => self.height = optional(value).map(|v| parse_num(key, v)).transpose()?,
            "node_count" => self.node_count = parse_num(key, value)?,
            "population" => self.population = parse_num(key, value)?,
            "generations" => self.generations = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "base_mutation" => self.base_mutation = parse_num(key, value)?,
            "crossover_prob" => self.crossover_prob = parse_num(key, value)?,
            "p_uncle" => self.p_uncle = parse_num(key, value)?,
            "tournament_size" => self.tournament_size = parse_num(key, value)?,
            "g_assoc" => self.g_assoc = parse_num(key, value)?,
            "slide_step" => self.slide_step = parse_num(key, value)?,
            "w_r_floor" => self.w_r_floor = parse_num(key, value)?,
            "delta_return" => self.delta_return = parse_num(key, value)?,
            "stagnation_epsilon" => self.stagnation_epsilon = parse_num(key, value)?,
            "uncle_single_rule" => self.uncle_single_rule = parse_num(key, value)?,
            "uncle_painterly" => self.uncle_painterly = parse_num(key, value)?,
            "archive_capacity" => self.archive_capacity = parse_num(key, value)?,
            "snapshot_every" => self.snapshot_every = parse_num(key, value)?,
            "target_fitness" => {
                self.target_fitness = optional(value).map(|v| parse_num(key, v)).transpose()?
            }
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        for (key, p) in [
            ("base_mutation", self.base_mutation),
            ("crossover_prob", self.crossover_prob),
            ("p_uncle", self.p_uncle),
            ("slide_step", self.slide_step),
            ("w_r_floor", self.w_r_floor),
            ("delta_return", self.delta_return),
            ("uncle_single_rule", self.uncle_single_rule),
            ("uncle_painterly", self.uncle_painterly),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("`{key}` must lie in [0, 1], got {p}"));
            }
        }
        for (key, n) in [
            ("node_count", self.node_count),
            ("population", self.population),
            ("tournament_size", self.tournament_size),
            ("archive_capacity", self.archive_capacity),
            ("snapshot_every", self.snapshot_every as usize),
            ("g_assoc", self.g_assoc as usize),
        ] {
            if n == 0 {
                return bad(format!("`{key}` must be positive"));
            }
        }
        if let (Some(0), _) | (_, Some(0)) = (self.width, self.height) {
            return bad("`width` and `height` must be positive".into());
        }
        if self.w_r_floor >= FOCUSED_W_R {
            return bad(format!("`w_r_floor` must be below {FOCUSED_W_R}"));
        }
        if self.stagnation_epsilon.is_nan() || self.stagnation_epsilon < 0.0 {
            return bad("`stagnation_epsilon` must be non-negative".into());
        }
        Ok(())
    }

    pub fn focus_params(&self) -> FocusParams {
        FocusParams {
            g_assoc: self.g_assoc,
            slide_step: self.slide_step,
            w_r_floor: self.w_r_floor,
            delta_return: self.delta_return,
            epsilon: self.stagnation_epsilon,
        }
    }

    pub fn uncle_criteria(&self) -> UncleCriteria {
        UncleCriteria {
            single_rule: self.uncle_single_rule,
            painterly: self.uncle_painterly,
        }
    }

    /// Serialize every key; `from_text` reads the result back unchanged.
    pub fn to_text(&self) -> String {
        fn path(p: &Option<PathBuf>) -> String {
            p.as_ref()
                .map_or_else(|| "none".into(), |p| p.display().to_string())
        }
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "none".into(), T::to_string)
        }
        let values = [
            path(&self.sitter),
            path(&self.mask),
            self.out_dir.display().to_string(),
            opt(&self.width),
            opt(&self.height),
            self.node_count.to_string(),
            self.population.to_string(),
            self.generations.to_string(),
            self.seed.to_string(),
            self.base_mutation.to_string(),
            self.crossover_prob.to_string(),
            self.p_uncle.to_string(),
            self.tournament_size.to_string(),
            self.g_assoc.to_string(),
            self.slide_step.to_string(),
            self.w_r_floor.to_string(),
            self.delta_return.to_string(),
            self.stagnation_epsilon.to_string(),
            self.uncle_single_rule.to_string(),
            self.uncle_painterly.to_string(),
            self.archive_capacity.to_string(),
            self.snapshot_every.to_string(),
            opt(&self.target_fitness),
        ];
        let mut s = String::new();
        for (k, v) in KEYS.iter().zip(values) {
            writeln!(s, "{k} = {v}").unwrap();
        }
        s
    }
}
