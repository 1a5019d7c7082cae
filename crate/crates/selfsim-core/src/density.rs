//! Limit frequencies of the prototile classes.
//!
//! The counts of the M tile classes evolve under subdivision by a fixed
//! integer matrix C; the class frequencies of any θ-tiling converge to the
//! normalized limit of `Cⁿ c`, independent of θ. An empirical counter over
//! a window tiling cross-checks the limit.

use alloc::vec::Vec;
use core::fmt;

use crate::math;
use crate::pairs::GeneratingPair;
use crate::tiling::WindowTiling;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityError {
    /// Power iteration did not settle within the iteration cap. Not expected
    /// for gcd-1 exponents, where C is primitive.
    NoConvergence,
    /// The window holds too few tiles for a meaningful count.
    TooFewTiles { have: usize, need: usize },
}

impl fmt::Display for DensityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityError::NoConvergence => write!(f, "power iteration did not converge"),
            DensityError::TooFewTiles { have, need } => {
                write!(f, "window holds {have} tiles, {need} needed")
            }
        }
    }
}

impl core::error::Error for DensityError {}

/// The M x M class-subdivision matrix: first column counts the maps by
/// exponent, the upper off-diagonal is a shifted identity, and the last row
/// is zero past the first column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionMatrix {
    pub order: usize,
    /// Row-major M x M matrix.
    pub matrix: Vec<Vec<u32>>,
    /// `c[i]` is the number of maps with ratio `s^(i+1)`.
    pub counts: Vec<u32>,
}

/// Class frequencies: nonnegative entries summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityVector {
    pub d: Vec<f64>,
}

/// Tallies the exponents into the subdivision matrix.
pub fn build_matrix(pair: &GeneratingPair) -> SubdivisionMatrix {
    let order = pair.order() as usize;
    let mut counts = alloc::vec![0u32; order];
    for &a in pair.exponents() {
        counts[(a - 1) as usize] += 1;
    }
    let mut matrix = alloc::vec![alloc::vec![0u32; order]; order];
    for i in 0..order {
        matrix[i][0] = counts[i];
        if i + 1 < order {
            matrix[i][i + 1] = 1;
        }
    }
    SubdivisionMatrix { order, matrix, counts }
}

/// Iterations allowed before [`limit_densities`] gives up.
const POWER_ITERATION_CAP: usize = 10_000;

/// Limit of `Cⁿ c / (j · Cⁿ c)` by per-iteration-normalized power iteration
/// from `v0 = c`, stopping when successive normalized vectors agree to
/// 1e-13 in the max norm.
pub fn limit_densities(sm: &SubdivisionMatrix) -> Result<DensityVector, DensityError> {
    let m = sm.order;
    let normalize = |v: &mut [f64]| {
        let sum: f64 = v.iter().sum();
        for x in v.iter_mut() {
            *x /= sum;
        }
    };
    let mut v: Vec<f64> = sm.counts.iter().map(|&c| c as f64).collect();
    normalize(&mut v);
    if m == 1 {
        return Ok(DensityVector { d: v });
    }
    for _ in 0..POWER_ITERATION_CAP {
        let mut next = alloc::vec![0.0; m];
        for i in 0..m {
            for j in 0..m {
                next[i] += sm.matrix[i][j] as f64 * v[j];
            }
        }
        normalize(&mut next);
        let delta = v
            .iter()
            .zip(&next)
            .map(|(a, b)| math::abs(a - b))
            .fold(0.0, f64::max);
        v = next;
        if delta < 1e-13 {
            return Ok(DensityVector { d: v });
        }
    }
    Err(DensityError::NoConvergence)
}

/// Minimum tiles for an empirical count.
pub const EMPIRICAL_MIN_TILES: usize = 100;

/// Class-count fractions over the tiles whose centroid lies in the window
/// disk. Boundary-straddling tiles are O(R) of the O(R²) total, so the
/// centroid rule is below the test tolerances.
pub fn empirical_densities(tiling: &WindowTiling) -> Result<DensityVector, DensityError> {
    let m = tiling.order as usize;
    let mut counts = alloc::vec![0usize; m];
    let mut total = 0usize;
    for tile in &tiling.tiles {
        if tiling.window.contains(tile.shape.centroid()) {
            counts[tile.class as usize] += 1;
            total += 1;
        }
    }
    if total < EMPIRICAL_MIN_TILES {
        return Err(DensityError::TooFewTiles { have: total, need: EMPIRICAL_MIN_TILES });
    }
    Ok(DensityVector {
        d: counts.iter().map(|&c| c as f64 / total as f64).collect(),
    })
}

impl DensityVector {
    /// Largest absolute entry difference.
    pub fn max_norm_gap(&self, other: &DensityVector) -> f64 {
        self.d
            .iter()
            .zip(&other.d)
            .map(|(a, b)| math::abs(a - b))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Tolerance;
    use crate::math::GOLDEN_RATIO;
    use crate::pairs::{catalog, CatalogName};
    use alloc::vec;

    fn pair(name: CatalogName) -> GeneratingPair {
        catalog(&name, &Tolerance::default()).unwrap()
    }

    #[test]
    fn bee_matrix_is_fibonacci() {
        let sm = build_matrix(&pair(CatalogName::GoldenBee));
        assert_eq!(sm.order, 2);
        assert_eq!(sm.counts, vec![1, 1]);
        assert_eq!(sm.matrix, vec![vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn trapezoid_matrix() {
        let sm = build_matrix(&pair(CatalogName::Trapezoid(3, 1)));
        assert_eq!(sm.order, 3);
        assert_eq!(sm.counts, vec![1, 2, 1]);
        assert_eq!(
            sm.matrix,
            vec![vec![1, 1, 0], vec![2, 0, 1], vec![1, 0, 0]]
        );
    }

    #[test]
    fn square_matrix_trivial() {
        let sm = build_matrix(&pair(CatalogName::Square4));
        assert_eq!(sm.order, 1);
        assert_eq!(sm.counts, vec![4]);
        let d = limit_densities(&sm).unwrap();
        assert_eq!(d.d, vec![1.0]);
    }

    #[test]
    fn bee_densities_are_golden() {
        let sm = build_matrix(&pair(CatalogName::GoldenBee));
        let d = limit_densities(&sm).unwrap();
        assert!((d.d[0] - 1.0 / GOLDEN_RATIO).abs() < 1e-10);
        assert!((d.d[1] - (1.0 - 1.0 / GOLDEN_RATIO)).abs() < 1e-10);
        assert!((d.d[0] / d.d[1] - GOLDEN_RATIO).abs() < 1e-9);
        assert!((d.d[0] - 0.6180).abs() < 5e-4);
        assert!((d.d[1] - 0.3820).abs() < 5e-4);
    }

    #[test]
    fn limit_is_dominant_eigenvector() {
        // C d = λ d with λ = s^{-2}, the area growth rate per level.
        for name in [
            CatalogName::GoldenBee,
            CatalogName::Trapezoid(3, 1),
            CatalogName::SporadicA,
            CatalogName::SporadicD,
        ] {
            let p = pair(name);
            let sm = build_matrix(&p);
            let d = limit_densities(&sm).unwrap();
            let lambda = 1.0 / (p.scale() * p.scale());
            for i in 0..sm.order {
                let mut cd = 0.0;
                for j in 0..sm.order {
                    cd += sm.matrix[i][j] as f64 * d.d[j];
                }
                assert!((cd - lambda * d.d[i]).abs() < 1e-9, "{} row {i}", p.name());
            }
        }
    }

    #[test]
    fn densities_sum_to_one() {
        for name in [
            CatalogName::GoldenBee,
            CatalogName::Trapezoid(5, 1),
            CatalogName::RightTriangle(3, 2),
            CatalogName::SporadicC,
        ] {
            let sm = build_matrix(&pair(name));
            let d = limit_densities(&sm).unwrap();
            let sum: f64 = d.d.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
            assert!(d.d.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn trapezoid_densities_match_printed_values() {
        let sm = build_matrix(&pair(CatalogName::Trapezoid(3, 1)));
        let d = limit_densities(&sm).unwrap();
        assert!((d.d[0] - 0.3826).abs() < 5e-4);
        assert!((d.d[1] - 0.4392).abs() < 5e-4);
        assert!((d.d[2] - 0.1781).abs() < 5e-4);
    }
}
