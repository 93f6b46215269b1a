//! On-disk layout of a run.
//!
//! ```text
//! <out>/config.txt
//! <out>/run.log
//! <out>/snapshots/gen_000025_best.{png,cgp}
//! <out>/uncles/uncle_00.{png,cgp}
//! <out>/final/best.{png,cgp}
//! <out>/final/population/ind_000.cgp
//! ```

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::evolve::{GenerationView, RunObserver, RunResult, LOG_HEADER};
use crate::genome_file::{read_genome, write_genome};
use crate::genotype::Genotype;
use crate::imaging::save_png;
use crate::program::render;

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

/// Writes the run directory as the loop progresses.
pub struct RunWriter {
    root: PathBuf,
    log: BufWriter<File>,
    log_path: PathBuf,
    snapshot_every: u64,
    last_generation: u64,
    size: (usize, usize),
}

impl RunWriter {
    /// Create the directory tree and write `config.txt`. PNGs are rendered at
    /// `cfg.width x cfg.height`, falling back to `sitter_dims`.
    pub fn create(cfg: &RunConfig, sitter_dims: (usize, usize)) -> Result<Self> {
        let root = cfg.out_dir.clone();
        create_dir(&root)?;
        create_dir(&root.join("snapshots"))?;
        let config_path = root.join("config.txt");
        fs::write(&config_path, cfg.to_text()).map_err(|e| Error::io(&config_path, e))?;
        let log_path = root.join("run.log");
        let file = File::create(&log_path).map_err(|e| Error::io(&log_path, e))?;
        let mut log = BufWriter::new(file);
        writeln!(log, "{LOG_HEADER}").map_err(|e| Error::io(&log_path, e))?;
        Ok(RunWriter {
            root,
            log,
            log_path,
            snapshot_every: cfg.snapshot_every,
            last_generation: cfg.generations,
            size: (
                cfg.width.unwrap_or(sitter_dims.0),
                cfg.height.unwrap_or(sitter_dims.1),
            ),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn write_pair(&self, g: &Genotype, stem: &Path) -> Result<()> {
        write_genome(stem.with_extension("cgp"), g)?;
        save_png(&render(g, self.size.0, self.size.1), stem.with_extension("png"))
    }
}

impl RunObserver for RunWriter {
    fn on_generation(&mut self, view: &GenerationView<'_>) -> Result<()> {
        writeln!(self.log, "{}", view.record).map_err(|e| Error::io(&self.log_path, e))?;
        let gen = view.record.generation;
        if gen.is_multiple_of(self.snapshot_every) || gen == self.last_generation {
            let stem = self.root.join("snapshots").join(format!("gen_{gen:06}_best"));
            self.write_pair(&view.population.best().genotype, &stem)?;
        }
        Ok(())
    }

    fn on_finish(&mut self, result: &RunResult) -> Result<()> {
        self.log.flush().map_err(|e| Error::io(&self.log_path, e))?;
        let uncles = self.root.join("uncles");
        create_dir(&uncles)?;
        for (i, e) in result.archive.entries().iter().enumerate() {
            self.write_pair(&e.genotype, &uncles.join(format!("uncle_{i:02}")))?;
        }
        let fin = self.root.join("final");
        let pop_dir = fin.join("population");
        create_dir(&pop_dir)?;
        self.write_pair(&result.population.best().genotype, &fin.join("best"))?;
        for (i, m) in result.population.members.iter().enumerate() {
            write_genome(pop_dir.join(format!("ind_{i:03}.cgp")), &m.genotype)?;
        }
        Ok(())
    }
}

/// Genotypes saved under `<run>/final/population`, in index order.
pub fn read_final_population(run_dir: impl AsRef<Path>) -> Result<Vec<Genotype>> {
    let dir = run_dir.as_ref().join("final").join("population");
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| Error::io(&dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "cgp"))
        .collect();
    paths.sort();
    paths.iter().map(read_genome).collect()
}
