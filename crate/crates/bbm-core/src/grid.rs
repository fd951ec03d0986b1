//! Dyadic grids on [0, 1].

use crate::error::{Error, Result};

/// Maximum grid level accepted by the library (2^26 + 1 points ≈ 0.5 GiB of
/// f64 per path); the CLI applies a much lower operational cap.
pub const MAX_LEVEL: u32 = 26;

/// The dyadic grid { i/2^J : i = 0…2^J } at level J ≥ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicGrid {
    level: u32,
    points: Vec<f64>,
}

impl DyadicGrid {
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::domain(format!(
                "grid level must lie in 1..={MAX_LEVEL}, got {level}"
            )));
        }
        let n = 1usize << level;
        let h = 1.0 / n as f64;
        let points = (0..=n).map(|i| i as f64 * h).collect();
        Ok(DyadicGrid { level, points })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// All 2^J + 1 points including t = 0.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// The 2^J strictly positive points t_1 … t_{2^J}; the Gram matrix is
    /// built over these (R(0, ·) = 0 makes the full matrix singular).
    pub fn nonzero_points(&self) -> &[f64] {
        &self.points[1..]
    }

    /// Number of grid points including 0, i.e. 2^J + 1.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 2^J, the number of subintervals (and of nonzero points).
    pub fn n_steps(&self) -> usize {
        self.points.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_expected_points() {
        let g = DyadicGrid::new(2).unwrap();
        assert_eq!(g.points(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(g.nonzero_points(), &[0.25, 0.5, 0.75, 1.0]);
        assert_eq!(g.level(), 2);
        assert_eq!(g.len(), 5);
        assert_eq!(g.n_steps(), 4);
    }

    #[test]
    fn endpoints_are_exact() {
        let g = DyadicGrid::new(10).unwrap();
        assert_eq!(g.points()[0], 0.0);
        assert_eq!(*g.points().last().unwrap(), 1.0);
        // dyadic rationals are exact in binary64
        assert_eq!(g.points()[1], 1.0 / 1024.0);
    }

    #[test]
    fn rejects_degenerate_levels() {
        assert!(DyadicGrid::new(0).is_err());
        assert!(DyadicGrid::new(MAX_LEVEL + 1).is_err());
    }
}
