//! Decoding genotypes into the active subgraph and running it per pixel.

use crate::error::Result;
use crate::genotype::{Genotype, INPUT_COUNT};
use crate::imaging::ImageBuffer;

/// Pixel position with both coordinates scaled to `[0, 255]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelCoord {
    pub x: f64,
    pub y: f64,
}

impl PixelCoord {
    /// Coordinate of pixel `(col, row)` in a `width x height` image.
    /// A dimension of size one maps to coordinate zero.
    pub fn of_pixel(col: usize, row: usize, width: usize, height: usize) -> Self {
        let unit = |i: usize, n: usize| {
            if n <= 1 {
                0.0
            } else {
                255.0 * i as f64 / (n - 1) as f64
            }
        };
        PixelCoord {
            x: unit(col, width),
            y: unit(row, height),
        }
    }
}

/// The part of a genotype that can influence its outputs.
#[derive(Debug, Clone)]
pub struct ActiveProgram<'g> {
    genotype: &'g Genotype,
    active: Vec<bool>,
    order: Vec<usize>,
}

impl<'g> ActiveProgram<'g> {
    pub fn genotype(&self) -> &'g Genotype {
        self.genotype
    }

    /// Active node positions in ascending order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_active(&self, position: usize) -> bool {
        self.active[position]
    }

    /// Evaluate the program at one pixel. `scratch` must hold at least
    /// `address_space()` values; it is overwritten.
    pub fn eval_with(&self, c: PixelCoord, scratch: &mut [f64]) -> [f64; 3] {
        scratch[0] = c.x;
        scratch[1] = c.y;
        let nodes = self.genotype.nodes();
        for &i in &self.order {
            let n = &nodes[i];
            scratch[i + INPUT_COUNT] = n.function.apply(scratch[n.in_a], scratch[n.in_b], n.param);
        }
        self.genotype.outputs().map(|a| scratch[a])
    }

    pub fn evaluate_pixel(&self, c: PixelCoord) -> [f64; 3] {
        let mut scratch = vec![0.0; self.genotype.address_space()];
        self.eval_with(c, &mut scratch)
    }
}

/// Mark every node reachable backward from the outputs. Both inputs of a
/// node count as edges whether or not its function reads them.
pub fn decode_active(g: &Genotype) -> Result<ActiveProgram<'_>> {
    g.validate()?;
    let n = g.node_count();
    let mut active = vec![false; n];
    for a in g.outputs() {
        if a >= INPUT_COUNT {
            active[a - INPUT_COUNT] = true;
        }
    }
    // addresses only point backward, so one descending sweep suffices
    for i in (0..n).rev() {
        if !active[i] {
            continue;
        }
        let node = &g.nodes()[i];
        for a in [node.in_a, node.in_b] {
            if a >= INPUT_COUNT {
                active[a - INPUT_COUNT] = true;
            }
        }
    }
    let order = (0..n).filter(|&i| active[i]).collect();
    Ok(ActiveProgram {
        genotype: g,
        active,
        order,
    })
}

pub fn evaluate_pixel(p: &ActiveProgram<'_>, c: PixelCoord) -> [f64; 3] {
    p.evaluate_pixel(c)
}

fn quantize(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Run the genotype at every pixel of a `width x height` image.
pub fn render(g: &Genotype, width: usize, height: usize) -> ImageBuffer {
    let program = decode_active(g).expect("genotype invariants hold");
    let mut scratch = vec![0.0; g.address_space()];
    ImageBuffer::from_fn(width, height, |col, row| {
        let c = PixelCoord::of_pixel(col, row, width, height);
        program.eval_with(c, &mut scratch).map(quantize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::FunctionId;
    use crate::genotype::NodeGene;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn node(f: u8, a: usize, b: usize, param: u8) -> NodeGene {
        NodeGene {
            function: FunctionId::new(f).unwrap(),
            in_a: a,
            in_b: b,
            param,
        }
    }

    /// Evaluates every node, active or not.
    fn evaluate_everything(g: &Genotype, c: PixelCoord) -> [f64; 3] {
        let mut vals = vec![c.x, c.y];
        for n in g.nodes() {
            let v = n.function.apply(vals[n.in_a], vals[n.in_b], n.param);
            vals.push(v);
        }
        g.outputs().map(|a| vals[a])
    }

    #[test]
    fn outputs_on_inputs_are_empty() {
        let g = Genotype::new(vec![node(5, 0, 1, 0), node(4, 2, 0, 0)], [0, 0, 0]).unwrap();
        assert!(decode_active(&g).unwrap().order().is_empty());
    }

    #[test]
    fn chain_is_fully_active() {
        let n = 6;
        let nodes = (0..n).map(|i| node(5, i + 1, 0, 0)).collect();
        let g = Genotype::new(nodes, [n + 1; 3]).unwrap();
        assert_eq!(decode_active(&g).unwrap().order(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn passthrough_pixel() {
        let g = Genotype::new(vec![node(5, 0, 0, 0)], [0, 1, 0]).unwrap();
        let p = decode_active(&g).unwrap();
        assert_eq!(p.evaluate_pixel(PixelCoord { x: 10.0, y: 20.0 }), [10.0, 20.0, 10.0]);
    }

    #[test]
    fn inverted_x() {
        let g = Genotype::new(vec![node(5, 0, 0, 0)], [2, 2, 2]).unwrap();
        let p = decode_active(&g).unwrap();
        assert_eq!(p.evaluate_pixel(PixelCoord { x: 255.0, y: 3.0 }), [0.0; 3]);
    }

    #[test]
    fn matches_evaluate_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..500 {
            let g = Genotype::random(rng.gen_range(1..25), &mut rng);
            let p = decode_active(&g).unwrap();
            for _ in 0..10 {
                let c = PixelCoord {
                    x: rng.gen_range(0.0..=255.0),
                    y: rng.gen_range(0.0..=255.0),
                };
                assert_eq!(p.evaluate_pixel(c), evaluate_everything(&g, c));
            }
        }
    }

    #[test]
    fn constant_program_renders_uniform() {
        // 255 - (255 - x) would vary, so feed f5 from the x-independent f12(x, x)
        let g = Genotype::new(vec![node(12, 0, 0, 0), node(5, 2, 2, 0)], [3, 3, 2]).unwrap();
        let img = render(&g, 9, 7);
        assert!(img.pixels().iter().all(|&p| p == [0, 0, 255]));
    }

    #[test]
    fn coordinate_map() {
        assert_eq!(PixelCoord::of_pixel(0, 0, 1, 1), PixelCoord { x: 0.0, y: 0.0 });
        assert_eq!(PixelCoord::of_pixel(3, 0, 4, 1), PixelCoord { x: 255.0, y: 0.0 });
        assert_eq!(PixelCoord::of_pixel(1, 2, 3, 5).y, 127.5);
    }

    #[test]
    fn resolution_independent_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let g = Genotype::random(20, &mut rng);
            let small = render(&g, 16, 16);
            let large = render(&g, 64, 64);
            // 255 * col / 15 == 255 * (21 col / 5) / 63 whenever 5 | col
            for col in (0..16).step_by(5) {
                for row in (0..16).step_by(5) {
                    assert_eq!(small.get(col, row), large.get(col * 21 / 5, row * 21 / 5));
                }
            }
        }
    }

    #[test]
    fn render_is_deterministic() {
        let g = Genotype::random(30, &mut ChaCha8Rng::seed_from_u64(32));
        assert_eq!(render(&g, 33, 17), render(&g, 33, 17));
    }
}
