//! Integer-encoded Cartesian GP genotypes.
//!
//! Address space: `0` is the pixel x input, `1` is the pixel y input and node
//! `j` answers at address `j + 2`. A node may only read addresses strictly
//! below its own, so every genotype is a feed-forward graph.
//!
//! The flat serialization is `n` blocks of `(function, in_a, in_b, param)`
//! followed by the three output addresses (H, S, V), `4n + 3` integers total.

use rand::Rng;

use crate::error::{Error, GeneLocation, Result};
use crate::function::{FunctionId, FUNCTION_COUNT};

/// Number of program inputs (pixel x and y).
pub const INPUT_COUNT: usize = 2;
/// Integers per node block.
pub const NODE_GENES: usize = 4;
/// Output addresses, one per HSV channel.
pub const OUTPUT_COUNT: usize = 3;

/// Address of a value in the program: an input or a node output.
pub type Address = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeGene {
    pub function: FunctionId,
    pub in_a: Address,
    pub in_b: Address,
    pub param: u8,
}

/// Flat length of a genotype with `n` nodes.
pub fn serialized_len(n: usize) -> usize {
    n * NODE_GENES + OUTPUT_COUNT
}

/// Exclusive upper bound on the addresses node `position` may read.
pub fn address_limit(position: usize) -> usize {
    position + INPUT_COUNT
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Genotype {
    nodes: Vec<NodeGene>,
    outputs: [Address; OUTPUT_COUNT],
}

impl Genotype {
    /// Build a genotype, checking every address invariant.
    pub fn new(nodes: Vec<NodeGene>, outputs: [Address; OUTPUT_COUNT]) -> Result<Self> {
        let g = Genotype { nodes, outputs };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_parts_unchecked(nodes: Vec<NodeGene>, outputs: [Address; 3]) -> Self {
        let g = Genotype { nodes, outputs };
        debug_assert!(g.validate().is_ok());
        g
    }

    pub fn nodes(&self) -> &[NodeGene] {
        &self.nodes
    }

    pub fn outputs(&self) -> [Address; OUTPUT_COUNT] {
        self.outputs
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Exclusive upper bound on every address in this genotype.
    pub fn address_space(&self) -> usize {
        self.nodes.len() + INPUT_COUNT
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::Length(OUTPUT_COUNT));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            let limit = address_limit(i);
            for (offset, addr) in [(1, node.in_a), (2, node.in_b)] {
                if addr >= limit {
                    return Err(Error::Structure {
                        position: i * NODE_GENES + offset,
                        location: GeneLocation::Node(i),
                        message: format!("address {addr} must be below {limit}"),
                    });
                }
            }
        }
        let limit = self.address_space();
        let base = self.nodes.len() * NODE_GENES;
        for (k, &addr) in self.outputs.iter().enumerate() {
            if addr >= limit {
                return Err(Error::Structure {
                    position: base + k,
                    location: GeneLocation::Output(k),
                    message: format!("address {addr} must be below {limit}"),
                });
            }
        }
        Ok(())
    }

    pub fn to_integers(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(serialized_len(self.nodes.len()));
        for n in &self.nodes {
            v.extend([
                i64::from(n.function.get()),
                n.in_a as i64,
                n.in_b as i64,
                i64::from(n.param),
            ]);
        }
        v.extend(self.outputs.iter().map(|&a| a as i64));
        v
    }

    pub fn from_integers(v: &[i64]) -> Result<Self> {
        if v.len() < serialized_len(1) || v.len() % NODE_GENES != OUTPUT_COUNT {
            return Err(Error::Length(v.len()));
        }
        let n = (v.len() - OUTPUT_COUNT) / NODE_GENES;
        let bad = |position: usize, location: GeneLocation, message: String| Error::Structure {
            position,
            location,
            message,
        };
        let mut nodes = Vec::with_capacity(n);
        for i in 0..n {
            let block = &v[i * NODE_GENES..(i + 1) * NODE_GENES];
            let at = GeneLocation::Node(i);
            let function = u8::try_from(block[0])
                .ok()
                .and_then(FunctionId::new)
                .ok_or_else(|| {
                    bad(
                        i * NODE_GENES,
                        at,
                        format!("function id {} outside 1..={FUNCTION_COUNT}", block[0]),
                    )
                })?;
            let limit = address_limit(i);
            let addr = |offset: usize| -> Result<Address> {
                let raw = block[offset];
                usize::try_from(raw)
                    .ok()
                    .filter(|&a| a < limit)
                    .ok_or_else(|| {
                        bad(
                            i * NODE_GENES + offset,
                            at,
                            format!("address {raw} must be in 0..{limit}"),
                        )
                    })
            };
            let in_a = addr(1)?;
            let in_b = addr(2)?;
            let param = u8::try_from(block[3]).map_err(|_| {
                bad(
                    i * NODE_GENES + 3,
                    at,
                    format!("param {} outside 0..=255", block[3]),
                )
            })?;
            nodes.push(NodeGene {
                function,
                in_a,
                in_b,
                param,
            });
        }
        let limit = n + INPUT_COUNT;
        let mut outputs = [0; OUTPUT_COUNT];
        for (k, out) in outputs.iter_mut().enumerate() {
            let position = n * NODE_GENES + k;
            let raw = v[position];
            *out = usize::try_from(raw)
                .ok()
                .filter(|&a| a < limit)
                .ok_or_else(|| {
                    bad(
                        position,
                        GeneLocation::Output(k),
                        format!("address {raw} must be in 0..{limit}"),
                    )
                })?;
        }
        Ok(Genotype { nodes, outputs })
    }

    /// Uniformly random genotype with `n` nodes.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 1, "a genotype needs at least one node");
        let nodes = (0..n).map(|i| random_node(i, rng)).collect();
        let limit = n + INPUT_COUNT;
        let outputs = [
            rng.gen_range(0..limit),
            rng.gen_range(0..limit),
            rng.gen_range(0..limit),
        ];
        Genotype { nodes, outputs }
    }
}

pub(crate) fn random_function<R: Rng + ?Sized>(rng: &mut R) -> FunctionId {
    FunctionId::new(rng.gen_range(1..=FUNCTION_COUNT)).expect("in range")
}

pub(crate) fn random_node<R: Rng + ?Sized>(position: usize, rng: &mut R) -> NodeGene {
    let limit = address_limit(position);
    NodeGene {
        function: random_function(rng),
        in_a: rng.gen_range(0..limit),
        in_b: rng.gen_range(0..limit),
        param: rng.gen(),
    }
}

/// Convenience wrapper over [`Genotype::random`].
pub fn random_genotype<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Genotype {
    Genotype::random(n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn serialized_lengths() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(Genotype::random(10, &mut rng).to_integers().len(), 43);
        let g = Genotype::random(1, &mut rng);
        let v = g.to_integers();
        assert_eq!(v.len(), 7);
        assert!(v[1] < 2 && v[2] < 2);
    }

    #[test]
    fn random_sweep_covers_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen = [false; 14];
        for _ in 0..10_000 {
            let n = rng.gen_range(1..12);
            let g = Genotype::random(n, &mut rng);
            g.validate().unwrap();
            for node in g.nodes() {
                seen[node.function.get() as usize] = true;
            }
        }
        assert!(seen[1..].iter().all(|&s| s));
    }

    #[test]
    fn rejects_bad_length() {
        assert!(matches!(
            Genotype::from_integers(&[0; 42]),
            Err(Error::Length(42))
        ));
        assert!(matches!(Genotype::from_integers(&[0; 3]), Err(Error::Length(3))));
    }

    #[test]
    fn rejects_function_14_naming_node_0() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut v = Genotype::random(4, &mut rng).to_integers();
        v[0] = 14;
        let err = Genotype::from_integers(&v).unwrap_err();
        match &err {
            Error::Structure {
                position, location, ..
            } => {
                assert_eq!(*position, 0);
                assert_eq!(*location, GeneLocation::Node(0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("node 0"));
    }

    #[test]
    fn rejects_forward_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut v = Genotype::random(4, &mut rng).to_integers();
        // node 1 may read 0..3
        v[NODE_GENES + 2] = 3;
        let err = Genotype::from_integers(&v).unwrap_err();
        assert!(matches!(
            err,
            Error::Structure {
                position: 6,
                location: GeneLocation::Node(1),
                ..
            }
        ));
        let mut v = Genotype::random(4, &mut rng).to_integers();
        let last = v.len() - 1;
        v[last] = 6;
        assert!(matches!(
            Genotype::from_integers(&v).unwrap_err(),
            Error::Structure {
                location: GeneLocation::Output(2),
                ..
            }
        ));
    }

    #[test]
    fn rejects_negative_and_large_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let base = Genotype::random(3, &mut rng).to_integers();
        for (pos, val) in [(1, -1), (3, 256), (3, -5), (0, 0)] {
            let mut v = base.clone();
            v[pos] = val;
            assert!(Genotype::from_integers(&v).is_err(), "pos {pos} val {val}");
        }
    }

    proptest! {
        #[test]
        fn integer_round_trip(seed in any::<u64>(), n in 1usize..40) {
            let g = Genotype::random(n, &mut ChaCha8Rng::seed_from_u64(seed));
            let v = g.to_integers();
            prop_assert_eq!(v.len(), serialized_len(n));
            let back = Genotype::from_integers(&v).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_integers(), v);
        }
    }
}
