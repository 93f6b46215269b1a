use std::path::Path;

use super::buffer::ImageBuffer;
use super::color::luma;
use super::histogram::{value_histogram, Histogram, VALUE_BINS};
use super::png_io::{load_png, load_rgb};
use super::pyramid::{Mask, Pyramid, QUARTER};
use crate::error::{Error, Result};

/// Everything the fitness function needs to know about the sitter,
/// computed once per run.
#[derive(Debug, Clone)]
pub struct SitterContext {
    pyramid: Pyramid,
    masks: Vec<Mask>,
    value_hist: Histogram,
    face_bg_contrast: f64,
}

impl SitterContext {
    /// `mask` defaults to the centered ellipse when absent.
    pub fn new(image: ImageBuffer, mask: Option<Mask>) -> Result<Self> {
        let mask = match mask {
            Some(m) => {
                if m.dims() != image.dims() {
                    return Err(Error::Dimensions {
                        expected: image.dims(),
                        got: m.dims(),
                    });
                }
                m
            }
            None => Mask::default_ellipse(image.width(), image.height()),
        };
        let pyramid = Pyramid::build(&image);
        let masks = mask.pyramid();
        let quarter = pyramid.level(QUARTER);
        let value_hist = value_histogram(quarter, VALUE_BINS);
        let face_bg_contrast = face_background_contrast(quarter, &masks[QUARTER]);
        Ok(SitterContext {
            pyramid,
            masks,
            value_hist,
            face_bg_contrast,
        })
    }

    pub fn image(&self) -> &ImageBuffer {
        self.pyramid.full()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.image().dims()
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn mask(&self, level: usize) -> &Mask {
        &self.masks[level]
    }

    pub fn value_hist(&self) -> &Histogram {
        &self.value_hist
    }

    pub fn face_bg_contrast(&self) -> f64 {
        self.face_bg_contrast
    }
}

/// `|mean V(face) - mean V(background)| / 255`. An empty region takes the
/// overall mean, so a degenerate mask gives zero contrast.
pub fn face_background_contrast(img: &ImageBuffer, mask: &Mask) -> f64 {
    assert_eq!(img.dims(), mask.dims());
    let (mut face_sum, mut face_n, mut bg_sum, mut bg_n) = (0.0, 0usize, 0.0, 0usize);
    for (p, &is_face) in img.pixels().iter().zip(mask.bits()) {
        let v = f64::from(p[2]);
        if is_face {
            face_sum += v;
            face_n += 1;
        } else {
            bg_sum += v;
            bg_n += 1;
        }
    }
    let overall = (face_sum + bg_sum) / (face_n + bg_n) as f64;
    let mean = |sum: f64, n: usize| if n == 0 { overall } else { sum / n as f64 };
    (mean(face_sum, face_n) - mean(bg_sum, bg_n)).abs() / 255.0
}

/// Read a mask PNG: luma at or above 128 marks the face.
pub fn load_mask(path: impl AsRef<Path>) -> Result<Mask> {
    let rgb = load_rgb(path)?;
    let gray: Vec<u8> = rgb.pixels.iter().map(|&p| luma(p)).collect();
    Ok(Mask::from_gray(rgb.width, rgb.height, &gray))
}

/// Load the sitter portrait and optional face mask.
pub fn build_sitter(image_path: impl AsRef<Path>, mask_path: Option<&Path>) -> Result<SitterContext> {
    let image = load_png(image_path.as_ref())?;
    let mask = match mask_path {
        Some(p) => {
            let m = load_mask(p)?;
            if m.dims() != image.dims() {
                return Err(Error::image(
                    p,
                    format!(
                        "mask is {}x{} but sitter is {}x{}",
                        m.width(),
                        m.height(),
                        image.width(),
                        image.height()
                    ),
                ));
            }
            Some(m)
        }
        None => None,
    };
    SitterContext::new(image, mask)
}
