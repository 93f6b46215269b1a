//! PNG input and output. Images live in HSV; files hold 8-bit RGB.

use std::io::Cursor;
use std::path::Path;

use png::{BitDepth, ColorType, Compression, Decoder, Encoder, Filter, Transformations};

use super::buffer::ImageBuffer;
use super::color::{hsv_to_rgb, rgb_to_hsv};
use crate::error::{Error, Result};

/// Decoded 8-bit RGB pixels, alpha already composited over white.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[u8; 3]>,
}

fn over_white(c: u8, alpha: u8) -> u8 {
    let a = u32::from(alpha);
    ((u32::from(c) * a + 255 * (255 - a) + 127) / 255) as u8
}

pub fn decode_rgb(bytes: &[u8], path: &Path) -> Result<RgbImage> {
    let mut decoder = Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(Transformations::normalize_to_color8());
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::image(path, e.to_string()))?;
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::image(path, "image too large"))?;
    let mut buf = vec![0; size];
    let info = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::image(path, e.to_string()))?;
    if info.bit_depth != BitDepth::Eight {
        return Err(Error::image(path, "unsupported bit depth"));
    }
    let (width, height) = (info.width as usize, info.height as usize);
    let mut pixels = Vec::with_capacity(width * height);
    for row in buf[..info.line_size * height].chunks(info.line_size) {
        let row = &row[..width * info.color_type.samples()];
        match info.color_type {
            ColorType::Rgb => pixels.extend(row.chunks(3).map(|c| [c[0], c[1], c[2]])),
            ColorType::Rgba => pixels.extend(
                row.chunks(4)
                    .map(|c| [0, 1, 2].map(|i| over_white(c[i], c[3]))),
            ),
            ColorType::Grayscale => pixels.extend(row.iter().map(|&g| [g, g, g])),
            ColorType::GrayscaleAlpha => pixels.extend(row.chunks(2).map(|c| {
                let g = over_white(c[0], c[1]);
                [g, g, g]
            })),
            ColorType::Indexed => return Err(Error::image(path, "palette not expanded")),
        }
    }
    Ok(RgbImage {
        width,
        height,
        pixels,
    })
}

pub fn load_rgb(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_rgb(&bytes, path)
}

/// Load a PNG and convert to HSV.
pub fn load_png(path: impl AsRef<Path>) -> Result<ImageBuffer> {
    let rgb = load_rgb(path)?;
    let pixels = rgb
        .pixels
        .iter()
        .map(|&[r, g, b]| rgb_to_hsv(r, g, b))
        .collect();
    ImageBuffer::from_pixels(rgb.width, rgb.height, pixels)
}

pub fn to_rgb_bytes(img: &ImageBuffer) -> Vec<u8> {
    img.pixels()
        .iter()
        .flat_map(|&[h, s, v]| hsv_to_rgb(h, s, v))
        .collect()
}

/// The image as it reads back from a saved PNG. HSV to RGB is not
/// injective, so this can differ from `img`.
pub fn through_rgb(img: &ImageBuffer) -> ImageBuffer {
    let pixels = img
        .pixels()
        .iter()
        .map(|&[h, s, v]| {
            let [r, g, b] = hsv_to_rgb(h, s, v);
            rgb_to_hsv(r, g, b)
        })
        .collect();
    ImageBuffer::from_pixels(img.width(), img.height(), pixels).expect("same dimensions")
}

/// Encode RGB bytes with fixed settings so identical input gives identical files.
pub fn encode_rgb(width: usize, height: usize, rgb: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut enc = Encoder::new(&mut out, width as u32, height as u32);
        enc.set_color(ColorType::Rgb);
        enc.set_depth(BitDepth::Eight);
        enc.set_compression(Compression::Balanced);
        enc.set_filter(Filter::Adaptive);
        let mut writer = enc
            .write_header()
            .map_err(|e| Error::image("<memory>", e.to_string()))?;
        writer
            .write_image_data(rgb)
            .map_err(|e| Error::image("<memory>", e.to_string()))?;
        writer
            .finish()
            .map_err(|e| Error::image("<memory>", e.to_string()))?;
    }
    Ok(out)
}

/// Convert to RGB and write a PNG.
pub fn save_png(img: &ImageBuffer, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_rgb(img.width(), img.height(), &to_rgb_bytes(img))
        .map_err(|e| match e {
            Error::Image { message, .. } => Error::image(path, message),
            other => other,
        })?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Write raw RGB pixels to a PNG file.
pub fn save_rgb(rgb: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let flat: Vec<u8> = rgb.pixels.iter().flatten().copied().collect();
    let bytes = encode_rgb(rgb.width, rgb.height, &flat)?;
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
