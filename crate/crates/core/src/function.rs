//! The 13-function primitive set.
//!
//! Every function maps `(x, y, param)` with `x, y` in `[0, 255]` and `param`
//! an integer in `[0, 255]` to a real in `[0, 255]`. Functions that use only
//! one operand still receive both; the unused one is ignored.

use std::f64::consts::PI;
use std::fmt;

/// Number of primitives in the set.
pub const FUNCTION_COUNT: u8 = 13;

/// Tag selecting one primitive, always in `1..=13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionId(u8);

impl FunctionId {
    pub fn new(id: u8) -> Option<Self> {
        (1..=FUNCTION_COUNT).contains(&id).then_some(FunctionId(id))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = FunctionId> {
        (1..=FUNCTION_COUNT).map(FunctionId)
    }

    /// Apply this primitive. The result is always finite and in `[0, 255]`.
    pub fn apply(self, x: f64, y: f64, param: u8) -> f64 {
        apply_function(self, x, y, param)
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

fn byte(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

fn floor_mod(a: f64, m: f64) -> f64 {
    a.rem_euclid(m)
}

/// Evaluate primitive `f`.
pub fn apply_function(f: FunctionId, x: f64, y: f64, param: u8) -> f64 {
    let p = f64::from(param);
    let v = match f.0 {
        1 => f64::from(byte(x) | byte(y)),
        2 => f64::from(param & byte(x)),
        3 => floor_mod(x + y, 255.0),
        4 => (x - y).abs(),
        5 => 255.0 - x,
        6 => x.cos().abs() * 255.0,
        7 => ((floor_mod(x, 45.0) * PI) / 180.0).tan().abs() * 255.0,
        8 => floor_mod(x.tan().abs() * 255.0, 255.0),
        9 => ((x - p).powi(2) + (y - p).powi(2)).sqrt().min(255.0),
        10 => floor_mod(x, p + 1.0) + (255.0 - p),
        11 => (x + y) / 2.0,
        12 => {
            if x > y {
                255.0 * (y + 1.0) / (x + 1.0)
            } else {
                255.0 * (x + 1.0) / (y + 1.0)
            }
        }
        13 => floor_mod(((x - p).powi(2) + (y - p).powi(2)).sqrt(), 255.0),
        _ => unreachable!("FunctionId invariant"),
    };
    if v.is_finite() {
        v.clamp(0.0, 255.0)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(id: u8) -> FunctionId {
        FunctionId::new(id).unwrap()
    }

    #[test]
    fn id_range() {
        assert!(FunctionId::new(0).is_none());
        assert!(FunctionId::new(14).is_none());
        assert_eq!(FunctionId::all().count(), 13);
    }

    #[test]
    fn listed_examples() {
        assert_eq!(f(5).apply(0.0, 0.0, 0), 255.0);
        assert_eq!(f(11).apply(100.0, 200.0, 0), 150.0);
        assert_eq!(f(9).apply(77.0, 77.0, 77), 0.0);
        assert_eq!(f(1).apply(12.0, 10.0, 0), 14.0);
    }

    #[test]
    fn hand_checked_values() {
        assert_eq!(f(2).apply(0b1111_0000 as f64, 0.0, 0b1010_1010), 0b1010_0000 as f64);
        assert_eq!(f(3).apply(200.0, 100.0, 0), 45.0);
        assert_eq!(f(3).apply(200.0, 55.0, 0), 0.0);
        assert_eq!(f(4).apply(10.0, 30.0, 0), 20.0);
        assert_eq!(f(6).apply(0.0, 0.0, 0), 255.0);
        assert_eq!(f(7).apply(45.0, 0.0, 0), 0.0);
        assert!((f(7).apply(30.0, 0.0, 0) - (PI / 6.0).tan() * 255.0).abs() < 1e-9);
        assert_eq!(f(8).apply(0.0, 0.0, 0), 0.0);
        assert_eq!(f(9).apply(255.0, 255.0, 0), 255.0);
        // x mod 1 + 255 saturates
        assert_eq!(f(10).apply(3.0, 0.0, 0), 255.0);
        assert_eq!(f(10).apply(7.0, 0.0, 4), 2.0 + 251.0);
        assert_eq!(f(12).apply(0.0, 0.0, 0), 255.0);
        assert_eq!(f(12).apply(255.0, 0.0, 0), 255.0 / 256.0);
        assert_eq!(f(13).apply(3.0, 4.0, 0), 5.0);
    }

    #[test]
    fn floored_modulo() {
        assert_eq!(floor_mod(-1.0, 255.0), 254.0);
        assert_eq!(floor_mod(510.0, 255.0), 0.0);
    }

    #[test]
    fn totality_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for id in FunctionId::all() {
            for _ in 0..20_000 {
                let x = rng.gen_range(0.0..=255.0);
                let y = rng.gen_range(0.0..=255.0);
                let v = id.apply(x, y, rng.gen());
                assert!(v.is_finite() && (0.0..=255.0).contains(&v), "{id}: {v}");
            }
        }
    }
}
