//! Box-filter image pyramids.

use std::f64::consts::TAU;

use super::buffer::ImageBuffer;
use super::color::HUE_CIRCLE;

/// Levels in every pyramid: full, 1/2, 1/4 and 1/8 scale.
pub const PYRAMID_LEVELS: usize = 4;

/// Index of the quarter-scale level.
pub const QUARTER: usize = 2;

fn half(n: usize) -> usize {
    n.div_ceil(2)
}

/// Mean of `values`, rounded half up.
fn rounded_mean(values: &[u8]) -> u8 {
    let n = values.len() as u32;
    let sum: u32 = values.iter().map(|&v| u32::from(v)).sum();
    ((sum + n / 2) / n) as u8
}

/// Circular mean of hue codes.
///
/// Offsets are taken relative to the first hue, so rotating every input by a
/// constant rotates the result by exactly that constant.
pub fn circular_mean_hue(hues: &[u8]) -> u8 {
    let anchor = i32::from(hues[0]);
    let (mut sin, mut cos) = (0.0, 0.0);
    for &h in hues {
        let d = (i32::from(h) - anchor + HUE_CIRCLE / 2).rem_euclid(HUE_CIRCLE) - HUE_CIRCLE / 2;
        let angle = f64::from(d) * TAU / f64::from(HUE_CIRCLE);
        sin += angle.sin();
        cos += angle.cos();
    }
    let offset = (sin.atan2(cos) * f64::from(HUE_CIRCLE) / TAU).round() as i32;
    (anchor + offset).rem_euclid(HUE_CIRCLE) as u8
}

/// Halve each dimension (rounding up) by averaging 2x2 blocks.
///
/// Saturation and value use the arithmetic mean; hue uses the circular mean.
/// Blocks on an odd right or bottom edge average the pixels that exist.
pub fn downsample(img: &ImageBuffer) -> ImageBuffer {
    let (w, h) = img.dims();
    ImageBuffer::from_fn(half(w), half(h), |col, row| {
        let (mut hues, mut sats, mut vals) = ([0u8; 4], [0u8; 4], [0u8; 4]);
        let mut n = 0;
        for dy in 0..2 {
            for dx in 0..2 {
                let (c, r) = (2 * col + dx, 2 * row + dy);
                if c < w && r < h {
                    let [ph, ps, pv] = img.get(c, r);
                    (hues[n], sats[n], vals[n]) = (ph, ps, pv);
                    n += 1;
                }
            }
        }
        [
            circular_mean_hue(&hues[..n]),
            rounded_mean(&sats[..n]),
            rounded_mean(&vals[..n]),
        ]
    })
}

/// Four-level pyramid; level 0 is the source image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pyramid {
    levels: Vec<ImageBuffer>,
}

impl Pyramid {
    pub fn build(img: &ImageBuffer) -> Self {
        let mut levels = Vec::with_capacity(PYRAMID_LEVELS);
        levels.push(img.clone());
        for k in 1..PYRAMID_LEVELS {
            let next = downsample(&levels[k - 1]);
            levels.push(next);
        }
        Pyramid { levels }
    }

    pub fn levels(&self) -> &[ImageBuffer] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &ImageBuffer {
        &self.levels[k]
    }

    pub fn full(&self) -> &ImageBuffer {
        &self.levels[0]
    }
}

/// Binary face/background mask. `true` marks face pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    width: usize,
    height: usize,
    face: Vec<bool>,
}

/// Gray level at or above which a mask pixel counts as face.
pub const MASK_THRESHOLD: u8 = 128;

impl Mask {
    pub fn from_gray(width: usize, height: usize, gray: &[u8]) -> Self {
        assert_eq!(gray.len(), width * height);
        Mask {
            width,
            height,
            face: gray.iter().map(|&g| g >= MASK_THRESHOLD).collect(),
        }
    }

    /// Centered ellipse with semi-axes `0.35 * width` and `0.45 * height`,
    /// sampled at pixel centers.
    pub fn default_ellipse(width: usize, height: usize) -> Self {
        let (wf, hf) = (width as f64, height as f64);
        let (ax, ay) = (0.35 * wf, 0.45 * hf);
        let mut face = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                let dx = (col as f64 + 0.5 - wf / 2.0) / ax;
                let dy = (row as f64 + 0.5 - hf / 2.0) / ay;
                face.push(dx * dx + dy * dy <= 1.0);
            }
        }
        Mask {
            width,
            height,
            face,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn is_face(&self, col: usize, row: usize) -> bool {
        self.face[row * self.width + col]
    }

    pub fn bits(&self) -> &[bool] {
        &self.face
    }

    /// Box-average the mask as 0/255 gray, then re-threshold.
    pub fn downsample(&self) -> Mask {
        let (w, h) = (half(self.width), half(self.height));
        let mut gray = Vec::with_capacity(w * h);
        for row in 0..h {
            for col in 0..w {
                let mut vals = Vec::with_capacity(4);
                for dy in 0..2 {
                    for dx in 0..2 {
                        let (c, r) = (2 * col + dx, 2 * row + dy);
                        if c < self.width && r < self.height {
                            vals.push(if self.is_face(c, r) { 255 } else { 0 });
                        }
                    }
                }
                gray.push(rounded_mean(&vals));
            }
        }
        Mask::from_gray(w, h, &gray)
    }

    /// Mask at every pyramid level, full scale first.
    pub fn pyramid(&self) -> Vec<Mask> {
        let mut levels = vec![self.clone()];
        for k in 1..PYRAMID_LEVELS {
            let next = levels[k - 1].downsample();
            levels.push(next);
        }
        levels
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imaging::color::hue_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Angle-domain circular mean computed directly from absolute angles.
    fn oracle_circular_mean(hues: &[u8]) -> f64 {
        let (s, c) = hues.iter().fold((0.0, 0.0), |(s, c), &h| {
            let a = f64::from(h) / 256.0 * TAU;
            (s + a.sin(), c + a.cos())
        });
        (s.atan2(c) / TAU * 256.0).rem_euclid(256.0)
    }

    #[test]
    fn uniform_stays_uniform() {
        let img = ImageBuffer::filled(7, 5, [40, 50, 60]);
        let d = downsample(&img);
        assert_eq!(d.dims(), (4, 3));
        assert!(d.pixels().iter().all(|&p| p == [40, 50, 60]));
    }

    #[test]
    fn box_mean_of_value() {
        let img =
            ImageBuffer::from_pixels(2, 2, vec![[0, 0, 0], [0, 0, 0], [0, 0, 255], [0, 0, 255]])
                .unwrap();
        let v = downsample(&img).get(0, 0)[2];
        assert!(v == 127 || v == 128);
    }

    #[test]
    fn hue_wraparound_mean() {
        let m = circular_mean_hue(&[250, 4]);
        assert!(m == 255 || m == 1, "{m}");
        let oracle = oracle_circular_mean(&[250, 4]);
        assert!((oracle - 255.0).abs() < 1e-9);
        assert_eq!(m, 255);
    }

    #[test]
    fn circular_mean_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5000 {
            let n = rng.gen_range(1..=4);
            // keep inputs within a half circle so the mean is well defined
            let base: u8 = rng.gen();
            let hues: Vec<u8> = (0..n)
                .map(|_| base.wrapping_add(rng.gen_range(0..100)))
                .collect();
            let got = circular_mean_hue(&hues);
            let want = oracle_circular_mean(&hues);
            let err = (f64::from(got) - want).abs();
            assert!(err.min(256.0 - err) <= 0.5 + 1e-9, "{hues:?}: {got} vs {want}");
        }
    }

    #[test]
    fn odd_edges() {
        let img = ImageBuffer::from_fn(3, 3, |c, r| [0, 0, (c * 100 + r) as u8]);
        let d = downsample(&img);
        assert_eq!(d.dims(), (2, 2));
        assert_eq!(d.get(1, 0)[2], 201); // (200 + 201) / 2 rounded up
        assert_eq!(d.get(1, 1)[2], 202);
    }

    #[test]
    fn pyramid_dims() {
        let p = Pyramid::build(&ImageBuffer::filled(64, 64, [0; 3]));
        let dims: Vec<_> = p.levels().iter().map(|l| l.dims()).collect();
        assert_eq!(dims, vec![(64, 64), (32, 32), (16, 16), (8, 8)]);
        let p = Pyramid::build(&ImageBuffer::filled(1, 5, [0; 3]));
        let dims: Vec<_> = p.levels().iter().map(|l| l.dims()).collect();
        assert_eq!(dims, vec![(1, 5), (1, 3), (1, 2), (1, 1)]);
    }

    #[test]
    fn hue_rotation_commutes_with_downsampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let (w, h) = (rng.gen_range(1..20), rng.gen_range(1..20));
            let img = ImageBuffer::from_fn(w, h, |_, _| rng.gen());
            let shift: u8 = rng.gen();
            let mut rotated = img.clone();
            for p in rotated.pixels_mut() {
                p[0] = p[0].wrapping_add(shift);
            }
            let a = downsample(&img);
            let b = downsample(&rotated);
            for (pa, pb) in a.pixels().iter().zip(b.pixels()) {
                assert_eq!(pa[0].wrapping_add(shift), pb[0]);
                assert_eq!(&pa[1..], &pb[1..]);
            }
        }
    }

    #[test]
    fn ellipse_mask_shape() {
        let m = Mask::default_ellipse(64, 64);
        assert!(m.is_face(32, 32));
        assert!(!m.is_face(0, 0));
        assert!(!m.is_face(5, 32)); // beyond 0.35 * 64 from center
        assert!(m.is_face(32, 4)); // within 0.45 * 64
        let levels = m.pyramid();
        assert_eq!(levels[3].dims(), (8, 8));
        assert!(levels[3].is_face(4, 4));
        assert_eq!(hue_distance(0, 0), 0);
    }
}
