//! Histogram-of-gradients features over multiple spatial grids.
//!
//! Gradients come from central differences `[-1, 0, 1]` with replicated
//! borders. Orientations are unsigned (folded into `[0, pi)`) and votes are
//! magnitude-weighted with linear interpolation between the two nearest
//! orientation bins. Each cell histogram is L2-normalized independently and
//! the per-grid blocks are concatenated in the configured grid order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::Mat;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HogConfig {
    pub image_size: usize,
    /// Cells per side for each spatial grid.
    pub grids: Vec<usize>,
    pub n_orientations: usize,
    /// Added inside the square root of the block norm.
    pub epsilon: f64,
}

impl Default for HogConfig {
    fn default() -> Self {
        HogConfig {
            image_size: 128,
            grids: vec![4, 8, 16],
            n_orientations: 9,
            epsilon: 1e-6,
        }
    }
}

impl HogConfig {
    pub fn validate(&self) -> Result<()> {
        if self.image_size == 0 {
            return Err(Error::config("image_size must be > 0"));
        }
        if self.n_orientations < 2 {
            return Err(Error::config("n_orientations must be >= 2"));
        }
        if self.epsilon <= 0.0 {
            return Err(Error::config("epsilon must be > 0"));
        }
        if self.grids.is_empty() {
            return Err(Error::config("at least one grid required"));
        }
        for &g in &self.grids {
            if g == 0 || self.image_size % g != 0 {
                return Err(Error::config(format!(
                    "grid {g} does not divide image size {}",
                    self.image_size
                )));
            }
        }
        Ok(())
    }

    /// Total feature length: sum over grids of cells x orientations.
    pub fn feature_len(&self) -> usize {
        self.grids.iter().map(|g| g * g * self.n_orientations).sum()
    }
}

/// Extracts the multi-grid HoG feature vector of a square grayscale image.
pub fn hog(image: &Mat, cfg: &HogConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let n = cfg.image_size;
    if image.rows() != n || image.cols() != n {
        return Err(Error::data(format!(
            "shape mismatch: image is {}x{}, expected {n}x{n}",
            image.rows(),
            image.cols()
        )));
    }
    if image.data().iter().any(|v| !v.is_finite()) {
        return Err(Error::numerical("non-finite pixel value"));
    }

    // per-pixel gradient magnitude and unsigned orientation
    let mut mag = vec![0.0f64; n * n];
    let mut ori = vec![0.0f64; n * n];
    for y in 0..n {
        for x in 0..n {
            let xl = image[(y, x.saturating_sub(1))];
            let xr = image[(y, (x + 1).min(n - 1))];
            let yu = image[(y.saturating_sub(1), x)];
            let yd = image[((y + 1).min(n - 1), x)];
            let gx = xr - xl;
            let gy = yd - yu;
            let m = (gx * gx + gy * gy).sqrt();
            let mut theta = gy.atan2(gx);
            if theta < 0.0 {
                theta += std::f64::consts::PI;
            }
            if theta >= std::f64::consts::PI {
                theta -= std::f64::consts::PI;
            }
            mag[y * n + x] = m;
            ori[y * n + x] = theta;
        }
    }

    let bin_width = std::f64::consts::PI / cfg.n_orientations as f64;
    let mut out = Vec::with_capacity(cfg.feature_len());
    for &g in &cfg.grids {
        let cell_px = n / g;
        let mut hist = vec![0.0f64; g * g * cfg.n_orientations];
        for y in 0..n {
            for x in 0..n {
                let m = mag[y * n + x];
                if m == 0.0 {
                    continue;
                }
                let c = ori[y * n + x] / bin_width;
                let i0 = (c.floor() as usize).min(cfg.n_orientations - 1);
                let frac = c - i0 as f64;
                let i1 = (i0 + 1) % cfg.n_orientations;
                let cell = (y / cell_px) * g + (x / cell_px);
                let base = cell * cfg.n_orientations;
                hist[base + i0] += (1.0 - frac) * m;
                hist[base + i1] += frac * m;
            }
        }
        for cell in 0..g * g {
            let h = &mut hist[cell * cfg.n_orientations..(cell + 1) * cfg.n_orientations];
            let ss: f64 = h.iter().map(|v| v * v).sum();
            let norm = (ss + cfg.epsilon).sqrt();
            for v in h.iter_mut() {
                *v /= norm;
            }
        }
        out.extend_from_slice(&hist);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg(size: usize, grids: &[usize], bins: usize) -> HogConfig {
        HogConfig {
            image_size: size,
            grids: grids.to_vec(),
            n_orientations: bins,
            epsilon: 1e-6,
        }
    }

    #[test]
    fn constant_image_gives_zero_vector() {
        let cfg = HogConfig::default();
        let image = Mat::from_vec(128, 128, vec![0.7; 128 * 128]);
        let f = hog(&image, &cfg).unwrap();
        assert_eq!(f.len(), 3024);
        assert!(f.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn default_feature_length_is_3024() {
        assert_eq!(HogConfig::default().feature_len(), (16 + 64 + 256) * 9);
    }

    #[test]
    fn invariant_to_constant_pixel_shift() {
        let cfg = small_cfg(8, &[2, 4], 5);
        let mut base = Mat::zeros(8, 8);
        for y in 0..8 {
            for x in 0..8 {
                base[(y, x)] = ((x * 31 + y * 17) % 11) as f64 / 10.0;
            }
        }
        let mut shifted = base.clone();
        for v in shifted.data_mut() {
            *v += 42.0;
        }
        let f0 = hog(&base, &cfg).unwrap();
        let f1 = hog(&shifted, &cfg).unwrap();
        for (a, b) in f0.iter().zip(&f1) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn vertical_step_edge_votes_in_horizontal_gradient_bin() {
        // 4x4 image, left half 0, right half 1: gx > 0, gy = 0 at the edge,
        // so orientation 0 -> all mass lands in bin 0 of cells touching the edge.
        let cfg = small_cfg(4, &[2], 4);
        let mut image = Mat::zeros(4, 4);
        for y in 0..4 {
            for x in 2..4 {
                image[(y, x)] = 1.0;
            }
        }
        let f = hog(&image, &cfg).unwrap();
        // 4 cells x 4 bins; every nonzero entry must be a bin-0 entry
        for (i, &v) in f.iter().enumerate() {
            if i % 4 != 0 {
                assert_eq!(v, 0.0, "mass leaked into bin {} of cell {}", i % 4, i / 4);
            }
        }
        let cell_norms: Vec<f64> = (0..4).map(|c| f[c * 4]).collect();
        // all four cells straddle or touch the edge column pair
        assert!(cell_norms.iter().all(|&v| v > 0.0), "{cell_norms:?}");
    }

    #[test]
    fn wrong_image_size_is_shape_mismatch() {
        let cfg = HogConfig::default();
        let err = hog(&Mat::zeros(64, 64), &cfg).unwrap_err();
        assert!(err.to_string().contains("shape mismatch"), "{err}");
    }

    #[test]
    fn grid_must_divide_image() {
        let cfg = small_cfg(10, &[3], 4);
        assert!(hog(&Mat::zeros(10, 10), &cfg).is_err());
    }
}
