//! Genetic operators. None of them mutate their inputs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::genotype::{address_limit, random_function, Genotype, NodeGene};
use crate::program::decode_active;

use super::population::Individual;

/// Upper bound on [`adaptive_rate`].
pub const MAX_MUTATION_RATE: f64 = 0.25;
/// Stagnation beyond this no longer raises the mutation rate.
pub const STAGNATION_CAP: u32 = 10;
/// Best-phenotype repeats tolerated before neutral reselection kicks in.
pub const NEUTRAL_REPEAT_LIMIT: u32 = 3;

fn resample_genes<R: Rng + ?Sized>(node: &mut NodeGene, position: usize, rate: f64, rng: &mut R) {
    let limit = address_limit(position);
    if rng.gen_bool(rate) {
        node.function = random_function(rng);
    }
    if rng.gen_bool(rate) {
        node.in_a = rng.gen_range(0..limit);
    }
    if rng.gen_bool(rate) {
        node.in_b = rng.gen_range(0..limit);
    }
    if rng.gen_bool(rate) {
        node.param = rng.gen();
    }
}

/// Replace every gene independently with probability `rate` by a uniformly
/// drawn legal value. Genes are visited node by node (function, in_a, in_b,
/// param), then the three outputs.
pub fn mutate<R: Rng + ?Sized>(g: &Genotype, rate: f64, rng: &mut R) -> Genotype {
    let mut nodes = g.nodes().to_vec();
    for (i, node) in nodes.iter_mut().enumerate() {
        resample_genes(node, i, rate, rng);
    }
    let space = g.address_space();
    let mut outputs = g.outputs();
    for out in &mut outputs {
        if rng.gen_bool(rate) {
            *out = rng.gen_range(0..space);
        }
    }
    Genotype::from_parts_unchecked(nodes, outputs)
}

/// Resample genes of inactive nodes only, each with probability `rate`.
/// The rendered phenotype cannot change.
pub fn neutral_mutation<R: Rng + ?Sized>(g: &Genotype, rate: f64, rng: &mut R) -> Genotype {
    let program = decode_active(g).expect("valid genotype");
    let mut nodes = g.nodes().to_vec();
    for (i, node) in nodes.iter_mut().enumerate() {
        if program.is_active(i) {
            continue;
        }
        resample_genes(node, i, rate, rng);
    }
    Genotype::from_parts_unchecked(nodes, g.outputs())
}

/// `base * (1 + 0.15 * min(stagnation, 10))`, capped at 0.25.
pub fn adaptive_rate(base: f64, stagnation: u32) -> f64 {
    let s = f64::from(stagnation.min(STAGNATION_CAP));
    (base * (1.0 + 0.15 * s)).min(MAX_MUTATION_RATE)
}

/// Whole-node uniform crossover: node `i` of the child is node `i` of one
/// parent, chosen by a fair coin; each output address likewise.
pub fn crossover<R: Rng + ?Sized>(a: &Genotype, b: &Genotype, rng: &mut R) -> Result<Genotype> {
    if a.node_count() != b.node_count() {
        return Err(Error::NodeCountMismatch {
            left: a.node_count(),
            right: b.node_count(),
        });
    }
    let nodes = a
        .nodes()
        .iter()
        .zip(b.nodes())
        .map(|(x, y)| if rng.gen_bool(0.5) { *x } else { *y })
        .collect();
    let (oa, ob) = (a.outputs(), b.outputs());
    let outputs = [0, 1, 2].map(|k| if rng.gen_bool(0.5) { oa[k] } else { ob[k] });
    Ok(Genotype::from_parts_unchecked(nodes, outputs))
}

/// Escape a phenotype plateau through neutral variation.
///
/// Once the best phenotype has repeated more than three generations, prefer
/// a peer with the same phenotype but a different genotype; failing that,
/// re-randomize the incumbent's inactive nodes. Otherwise the incumbent is
/// returned unchanged.
pub fn neutral_reselect<R: Rng + ?Sized>(
    incumbent: &Individual,
    peers: &[Individual],
    digest_repeat: u32,
    rng: &mut R,
) -> Individual {
    if digest_repeat <= NEUTRAL_REPEAT_LIMIT || incumbent.digest.is_none() {
        return incumbent.clone();
    }
    let twins: Vec<&Individual> = peers
        .iter()
        .filter(|p| p.digest == incumbent.digest && p.genotype != incumbent.genotype)
        .collect();
    if let Some(twin) = twins.choose(rng) {
        return Individual {
            genotype: twin.genotype.clone(),
            report: incumbent.report,
            digest: incumbent.digest,
        };
    }
    Individual {
        genotype: neutral_mutation(&incumbent.genotype, 1.0, rng),
        report: incumbent.report,
        digest: incumbent.digest,
    }
}

/// Node positions whose genes do not reach any output.
pub fn inactive_nodes(g: &Genotype) -> Vec<usize> {
    let program = decode_active(g).expect("valid genotype");
    (0..g.node_count()).filter(|&i| !program.is_active(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genotype::NODE_GENES;
    use crate::program::render;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_rate_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        let g = Genotype::random(30, &mut rng);
        assert_eq!(mutate(&g, 0.0, &mut rng), g);
    }

    #[test]
    fn full_rate_stays_legal() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..500 {
            let g = Genotype::random(rng.gen_range(1..20), &mut rng);
            let m = mutate(&g, 1.0, &mut rng);
            m.validate().unwrap();
            assert_eq!(m.node_count(), g.node_count());
        }
    }

    #[test]
    fn change_frequency_matches_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let n = 30;
        let rate = 0.05;
        let (mut changed, mut expected, mut genes) = (0.0, 0.0, 0.0);
        for _ in 0..10_000 {
            let g = Genotype::random(n, &mut rng);
            let m = mutate(&g, rate, &mut rng);
            let (a, b) = (g.to_integers(), m.to_integers());
            for (pos, (x, y)) in a.iter().zip(&b).enumerate() {
                // domain size of this gene; redraws of the same value are invisible
                let domain = if pos >= n * NODE_GENES {
                    (n + 2) as f64
                } else {
                    match pos % NODE_GENES {
                        0 => 13.0,
                        3 => 256.0,
                        _ => (pos / NODE_GENES + 2) as f64,
                    }
                };
                expected += rate * (1.0 - 1.0 / domain);
                genes += 1.0;
                if x != y {
                    changed += 1.0;
                }
            }
        }
        let observed = changed / genes;
        let want = expected / genes;
        assert!((observed - want).abs() <= 0.005, "{observed} vs {want}");
        // and the raw replacement rate, correcting for invisible redraws
        let visible_share = want / rate;
        assert!((observed / visible_share - rate).abs() <= 0.005);
    }

    #[test]
    fn adaptive_rate_examples() {
        assert_eq!(adaptive_rate(0.02, 0), 0.02);
        assert!((adaptive_rate(0.02, 10) - 0.05).abs() < 1e-15);
        assert!((adaptive_rate(0.02, 50) - 0.05).abs() < 1e-15);
        assert_eq!(adaptive_rate(0.2, 10), 0.25);
    }

    #[test]
    fn crossover_of_twins_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        let g = Genotype::random(12, &mut rng);
        assert_eq!(crossover(&g, &g, &mut rng).unwrap(), g);
    }

    #[test]
    fn crossover_blocks_come_from_a_parent() {
        let mut rng = ChaCha8Rng::seed_from_u64(74);
        for _ in 0..1000 {
            let a = Genotype::random(10, &mut rng);
            let b = Genotype::random(10, &mut rng);
            let c = crossover(&a, &b, &mut rng).unwrap();
            c.validate().unwrap();
            for i in 0..10 {
                let n = c.nodes()[i];
                assert!(n == a.nodes()[i] || n == b.nodes()[i]);
            }
            for k in 0..3 {
                assert!(c.outputs()[k] == a.outputs()[k] || c.outputs()[k] == b.outputs()[k]);
            }
        }
    }

    #[test]
    fn crossover_rejects_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(75);
        let a = Genotype::random(10, &mut rng);
        let b = Genotype::random(11, &mut rng);
        assert!(matches!(
            crossover(&a, &b, &mut rng),
            Err(Error::NodeCountMismatch { left: 10, right: 11 })
        ));
    }

    #[test]
    fn neutral_mutation_preserves_render() {
        let mut rng = ChaCha8Rng::seed_from_u64(76);
        for _ in 0..200 {
            let g = Genotype::random(20, &mut rng);
            let m = neutral_mutation(&g, 1.0, &mut rng);
            assert_eq!(render(&g, 16, 16).digest(), render(&m, 16, 16).digest());
            for i in decode_active(&g).unwrap().order() {
                assert_eq!(g.nodes()[*i], m.nodes()[*i]);
            }
        }
    }

    fn evaluated(g: Genotype) -> Individual {
        let digest = render(&g, 8, 8).digest();
        Individual {
            genotype: g,
            report: None,
            digest: Some(digest),
        }
    }

    /// A genotype with an inactive tail and a different one with the same
    /// outputs.
    fn twin_pair(rng: &mut ChaCha8Rng) -> (Genotype, Genotype) {
        loop {
            let g = Genotype::random(12, rng);
            if inactive_nodes(&g).is_empty() {
                continue;
            }
            let t = neutral_mutation(&g, 1.0, rng);
            if t != g {
                return (g, t);
            }
        }
    }

    #[test]
    fn reselect_prefers_iso_phenotype_peer() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let (g, twin) = twin_pair(&mut rng);
        let inc = evaluated(g);
        let peers = vec![
            inc.clone(),
            evaluated(Genotype::random(12, &mut rng)),
            evaluated(twin.clone()),
        ];
        let out = neutral_reselect(&inc, &peers, 4, &mut rng);
        assert_eq!(out.genotype, twin);
        assert_eq!(out.digest, inc.digest);
    }

    #[test]
    fn reselect_falls_back_to_neutral_mutation() {
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        for _ in 0..50 {
            let inc = evaluated(Genotype::random(12, &mut rng));
            let out = neutral_reselect(&inc, std::slice::from_ref(&inc), 5, &mut rng);
            assert_eq!(render(&out.genotype, 8, 8).digest(), inc.digest.unwrap());
        }
    }

    #[test]
    fn reselect_unarmed_returns_incumbent() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let (g, twin) = twin_pair(&mut rng);
        let inc = evaluated(g);
        let peers = vec![evaluated(twin)];
        for repeat in 0..=3 {
            assert_eq!(neutral_reselect(&inc, &peers, repeat, &mut rng).genotype, inc.genotype);
        }
    }
}
