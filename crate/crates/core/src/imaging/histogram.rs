use super::buffer::ImageBuffer;

/// Default bin count for value histograms.
pub const VALUE_BINS: usize = 16;
/// Default bin count for hue histograms (about 10 degrees per bin).
pub const HUE_BINS: usize = 36;

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    bins: Vec<f64>,
    normalized: bool,
}

impl Histogram {
    pub fn from_counts(bins: Vec<f64>) -> Self {
        Histogram {
            bins,
            normalized: false,
        }
    }

    pub fn uniform(bin_count: usize) -> Self {
        Histogram {
            bins: vec![1.0 / bin_count as f64; bin_count],
            normalized: true,
        }
    }

    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn total(&self) -> f64 {
        self.bins.iter().sum()
    }

    /// Scale to unit mass. An empty histogram becomes uniform.
    pub fn normalize(self) -> Self {
        let total = self.total();
        if total <= 0.0 {
            return Histogram::uniform(self.bins.len());
        }
        Histogram {
            bins: self.bins.into_iter().map(|b| b / total).collect(),
            normalized: true,
        }
    }

    /// Sum of bin-wise minima.
    pub fn intersection(&self, other: &Histogram) -> f64 {
        assert_eq!(self.bin_count(), other.bin_count());
        self.bins
            .iter()
            .zip(&other.bins)
            .map(|(a, b)| a.min(*b))
            .sum()
    }

    /// Mass in the `2 * radius + 1` bins centered on `center`, wrapping around.
    pub fn circular_window(&self, center: usize, radius: usize) -> f64 {
        let n = self.bins.len();
        let span = (2 * radius + 1).min(n);
        (0..span)
            .map(|k| self.bins[(center + n - radius % n + k) % n])
            .sum()
    }

    /// Index of the largest bin; the first wins ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &b) in self.bins.iter().enumerate() {
            if b > self.bins[best] {
                best = i;
            }
        }
        best
    }
}

/// Bin index of a byte channel value.
pub fn byte_bin(value: u8, bins: usize) -> usize {
    usize::from(value) * bins / 256
}

/// Normalized histogram of the V channel.
pub fn value_histogram(img: &ImageBuffer, bins: usize) -> Histogram {
    let mut counts = vec![0.0; bins];
    for p in img.pixels() {
        counts[byte_bin(p[2], bins)] += 1.0;
    }
    Histogram::from_counts(counts).normalize()
}

/// Normalized hue histogram where each pixel weighs `s / 255`.
/// A fully achromatic image yields the uniform histogram.
pub fn hue_histogram(img: &ImageBuffer, bins: usize) -> Histogram {
    assert!(bins >= 2);
    let mut counts = vec![0.0; bins];
    for p in img.pixels() {
        counts[byte_bin(p[0], bins)] += f64::from(p[1]) / 255.0;
    }
    Histogram::from_counts(counts).normalize()
}
