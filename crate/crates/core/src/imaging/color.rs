//! Hexcone RGB <-> HSV with every channel stored as a byte.
//!
//! Hue wraps at 256: code `h` stands for `h * 360 / 256` degrees.

/// Size of the hue circle in hue codes.
pub const HUE_CIRCLE: i32 = 256;

pub fn rgb_to_hsv(r: u8, g: u8, b: u8) -> [u8; 3] {
    let (rf, gf, bf) = (f64::from(r), f64::from(g), f64::from(b));
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let chroma = f64::from(max - min);
    let v = max;
    let s = if max == 0 {
        0
    } else {
        (255.0 * chroma / f64::from(max)).round() as u8
    };
    let h = if max == min {
        0
    } else {
        let sector = if max == r {
            ((gf - bf) / chroma).rem_euclid(6.0)
        } else if max == g {
            (bf - rf) / chroma + 2.0
        } else {
            (rf - gf) / chroma + 4.0
        };
        ((sector * f64::from(HUE_CIRCLE) / 6.0).round() as i32).rem_euclid(HUE_CIRCLE) as u8
    };
    [h, s, v]
}

pub fn hsv_to_rgb(h: u8, s: u8, v: u8) -> [u8; 3] {
    let vf = f64::from(v);
    let chroma = vf * f64::from(s) / 255.0;
    let sector = f64::from(h) * 6.0 / f64::from(HUE_CIRCLE);
    let x = chroma * (1.0 - ((sector % 2.0) - 1.0).abs());
    let m = vf - chroma;
    let (r, g, b) = match sector as u32 {
        0 => (chroma, x, 0.0),
        1 => (x, chroma, 0.0),
        2 => (0.0, chroma, x),
        3 => (0.0, x, chroma),
        4 => (x, 0.0, chroma),
        _ => (chroma, 0.0, x),
    };
    let q = |c: f64| (c + m).round().clamp(0.0, 255.0) as u8;
    [q(r), q(g), q(b)]
}

/// Shortest distance between two hue codes around the circle, in `0..=128`.
pub fn hue_distance(a: u8, b: u8) -> u8 {
    let d = (i32::from(a) - i32::from(b)).abs();
    d.min(HUE_CIRCLE - d) as u8
}

/// Rec. 601 luma of an RGB triple.
pub fn luma(rgb: [u8; 3]) -> u8 {
    let [r, g, b] = rgb.map(f64::from);
    (0.299 * r + 0.587 * g + 0.114 * b).round().clamp(0.0, 255.0) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primaries() {
        assert_eq!(rgb_to_hsv(255, 0, 0), [0, 255, 255]);
        assert_eq!(hsv_to_rgb(0, 255, 255), [255, 0, 0]);
        // 120 and 240 degrees
        assert_eq!(rgb_to_hsv(0, 255, 0)[0], 85);
        assert_eq!(rgb_to_hsv(0, 0, 255)[0], 171);
        assert_eq!(rgb_to_hsv(0, 255, 255)[0], 128);
        assert_eq!(hsv_to_rgb(128, 255, 255), [0, 255, 255]);
    }

    #[test]
    fn grays_are_achromatic() {
        for g in 0..=255u8 {
            let [_, s, v] = rgb_to_hsv(g, g, g);
            assert_eq!((s, v), (0, g));
            assert_eq!(hsv_to_rgb(0, 0, g), [g, g, g]);
        }
    }

    #[test]
    fn hue_distance_wraps() {
        assert_eq!(hue_distance(250, 4), 10);
        assert_eq!(hue_distance(0, 128), 128);
        assert_eq!(hue_distance(10, 10), 0);
    }

    /// Largest channel error that 256 hue codes allow: half a hue step spans
    /// 255 * 6 / 512 levels of a fully saturated channel.
    const HUE_QUANTIZATION_BOUND: i32 = 3;

    #[test]
    fn lattice_round_trip() {
        let mut worst = 0;
        for r in (0..256).step_by(8) {
            for g in (0..256).step_by(8) {
                for b in (0..256).step_by(8) {
                    let rgb = [r as u8, g as u8, b as u8];
                    let [h, s, v] = rgb_to_hsv(rgb[0], rgb[1], rgb[2]);
                    let back = hsv_to_rgb(h, s, v);
                    // value is carried exactly
                    assert_eq!(back.iter().max(), rgb.iter().max());
                    for c in 0..3 {
                        worst = worst.max((i32::from(rgb[c]) - i32::from(back[c])).abs());
                    }
                }
            }
        }
        assert!(worst <= HUE_QUANTIZATION_BOUND, "round-trip error {worst}");
    }

    #[test]
    fn value_and_saturation_survive_hsv_round_trip() {
        for h in (0..256).step_by(5) {
            for s in (0..256).step_by(5) {
                for v in (0..256).step_by(5) {
                    let [r, g, b] = hsv_to_rgb(h as u8, s as u8, v as u8);
                    let [_, s2, v2] = rgb_to_hsv(r, g, b);
                    assert_eq!(v2, v as u8);
                    // chroma is an integer after rounding, so s drifts by at most 255 / (2v)
                    let tol = if v == 0 { 255 } else { 255 / (2 * v) + 1 };
                    assert!((i32::from(s2) - s).abs() <= tol, "{h} {s} {v} -> {s2}");
                }
            }
        }
    }
}
