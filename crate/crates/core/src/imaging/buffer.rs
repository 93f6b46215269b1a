use sha2::{Digest as _, Sha256};

use crate::error::{Error, Result};

/// One pixel as `[h, s, v]`.
pub type Hsv = [u8; 3];

/// A `width x height` grid of HSV pixels in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImageBuffer {
    width: usize,
    height: usize,
    pixels: Vec<Hsv>,
}

impl ImageBuffer {
    pub fn filled(width: usize, height: usize, pixel: Hsv) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be positive");
        ImageBuffer {
            width,
            height,
            pixels: vec![pixel; width * height],
        }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Hsv>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::Dimensions {
                expected: (width, height),
                got: (pixels.len(), 1),
            });
        }
        Ok(ImageBuffer {
            width,
            height,
            pixels,
        })
    }

    /// Build an image by calling `f(col, row)` for every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> Hsv) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be positive");
        let mut pixels = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                pixels.push(f(col, row));
            }
        }
        ImageBuffer {
            width,
            height,
            pixels,
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

    pub fn pixels(&self) -> &[Hsv] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [Hsv] {
        &mut self.pixels
    }

    pub fn get(&self, col: usize, row: usize) -> Hsv {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, col: usize, row: usize, px: Hsv) {
        self.pixels[row * self.width + col] = px;
    }

    pub fn digest(&self) -> PhenotypeDigest {
        phenotype_digest(self)
    }

    pub fn ensure_dims(&self, expected: (usize, usize)) -> Result<()> {
        if self.dims() == expected {
            Ok(())
        } else {
            Err(Error::Dimensions {
                expected,
                got: self.dims(),
            })
        }
    }
}

/// SHA-256 over the raw channel bytes in row-major H, S, V order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhenotypeDigest(pub [u8; 32]);

impl std::fmt::Debug for PhenotypeDigest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PhenotypeDigest({self})")
    }
}

impl std::fmt::Display for PhenotypeDigest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

pub fn phenotype_digest(img: &ImageBuffer) -> PhenotypeDigest {
    let mut hasher = Sha256::new();
    hasher.update(img.pixels.as_flattened());
    PhenotypeDigest(hasher.finalize().into())
}
