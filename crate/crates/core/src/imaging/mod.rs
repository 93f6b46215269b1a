//! Image representation, color conversion, pyramids, histograms and PNG I/O.

mod buffer;
pub mod color;
mod histogram;
mod png_io;
mod pyramid;
mod sitter;

pub use buffer::{phenotype_digest, Hsv, ImageBuffer, PhenotypeDigest};
pub use color::{hsv_to_rgb, hue_distance, rgb_to_hsv};
pub use histogram::{byte_bin, hue_histogram, value_histogram, Histogram, HUE_BINS, VALUE_BINS};
pub use png_io::{decode_rgb, encode_rgb, load_png, load_rgb, save_png, save_rgb, through_rgb, to_rgb_bytes, RgbImage};
pub use pyramid::{circular_mean_hue, downsample, Mask, Pyramid, MASK_THRESHOLD, PYRAMID_LEVELS, QUARTER};
pub use sitter::{build_sitter, face_background_contrast, load_mask, SitterContext};
