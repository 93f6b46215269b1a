//! Fixtures shared by the benchmarks.

use cgp_portrait::{Genotype, ImageBuffer, SitterContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A square sitter with a bright oval on a dark ground.
pub fn sitter(size: usize) -> SitterContext {
    let c = size as f64 / 2.0;
    let img = ImageBuffer::from_fn(size, size, |col, row| {
        let dx = (col as f64 - c) / (0.35 * size as f64);
        let dy = (row as f64 - c) / (0.45 * size as f64);
        let v = if dx * dx + dy * dy < 1.0 { 210 } else { 50 };
        [20, 60, v]
    });
    SitterContext::new(img, None).expect("mask matches image")
}

pub fn genotypes(count: usize, nodes: usize, seed: u64) -> Vec<Genotype> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Genotype::random(nodes, &mut rng)).collect()
}
