//! Principal component analysis.
//!
//! Fitting eigendecomposes the sample covariance (divisor N-1). When there
//! are fewer samples than dimensions the N x N Gram matrix is decomposed
//! instead and eigenvectors are mapped back, which keeps HoG-sized inputs
//! (D in the thousands) cheap at desk scale.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::container;
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Mean vector plus an orthonormal projection basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// D x k, orthonormal columns, descending eigenvalue order.
    pub basis: Mat,
    /// Sample variance captured by each retained component.
    pub eigenvalues: Vec<f64>,
}

impl PcaModel {
    pub fn input_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn output_dim(&self) -> usize {
        self.basis.cols()
    }

    /// basis^T (x - mean)
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.input_dim() {
            return Err(Error::data(format!(
                "shape mismatch: vector of dim {} into PCA of dim {}",
                x.len(),
                self.input_dim()
            )));
        }
        let centered: Vec<f64> = x.iter().zip(&self.mean).map(|(a, m)| a - m).collect();
        Ok(self.basis.matvec_t(&centered))
    }

    /// Projects every row of a T x D matrix.
    pub fn apply_mat(&self, frames: &Mat) -> Result<Mat> {
        let mut out = Mat::zeros(frames.rows(), self.output_dim());
        for t in 0..frames.rows() {
            let p = self.apply(frames.row(t))?;
            out.row_mut(t).copy_from_slice(&p);
        }
        Ok(out)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let header = PcaHeader {
            dim: self.input_dim(),
            k: self.output_dim(),
            eigenvalues: self.eigenvalues.clone(),
        };
        let mut payload: Vec<f32> = self.mean.iter().map(|&v| v as f32).collect();
        payload.extend(self.basis.to_f32());
        container::write(path, &header, &payload)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let (header, payload): (PcaHeader, Vec<f32>) = container::read(path)?;
        let (d, k) = (header.dim, header.k);
        if payload.len() != d + d * k {
            return Err(Error::data(format!(
                "{}: PCA payload length {} != {}",
                path.display(),
                payload.len(),
                d + d * k
            )));
        }
        let mean = payload[..d].iter().map(|&v| v as f64).collect();
        let basis = Mat::from_f32(d, k, &payload[d..])?;
        Ok(PcaModel {
            mean,
            basis,
            eigenvalues: header.eigenvalues,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct PcaHeader {
    dim: usize,
    k: usize,
    eigenvalues: Vec<f64>,
}

/// Fits a k-component PCA to an N x D data matrix. Requires N > k and k <= D.
pub fn pca_fit(data: &Mat, k: usize) -> Result<PcaModel> {
    let n = data.rows();
    let d = data.cols();
    if k == 0 || k > d {
        return Err(Error::data(format!("invalid dimension: k={k} with D={d}")));
    }
    if n <= k {
        return Err(Error::data(format!(
            "invalid dimension: need more than k={k} samples, got {n}"
        )));
    }

    let mut mean = vec![0.0f64; d];
    for t in 0..n {
        for (m, v) in mean.iter_mut().zip(data.row(t)) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n as f64;
    }
    let mut centered = Mat::zeros(n, d);
    for t in 0..n {
        let row = centered.row_mut(t);
        for (c, (v, m)) in data.row(t).iter().zip(&mean).enumerate() {
            row[c] = v - m;
        }
    }

    let (mut eigvals, mut basis) = if n <= d {
        gram_eigen(&centered, k)?
    } else {
        covariance_eigen(&centered, k)?
    };

    // sign convention: largest-magnitude entry positive (first index on ties)
    for c in 0..k {
        let mut best = 0usize;
        let mut best_abs = -1.0f64;
        for r in 0..d {
            let a = basis[(r, c)].abs();
            if a > best_abs {
                best_abs = a;
                best = r;
            }
        }
        if basis[(best, c)] < 0.0 {
            for r in 0..d {
                basis[(r, c)] = -basis[(r, c)];
            }
        }
    }
    for v in eigvals.iter_mut() {
        if *v < 0.0 {
            *v = 0.0; // round-off on rank-deficient data
        }
    }

    Ok(PcaModel {
        mean,
        basis,
        eigenvalues: eigvals,
    })
}

/// Direct eigendecomposition of the D x D covariance.
fn covariance_eigen(centered: &Mat, k: usize) -> Result<(Vec<f64>, Mat)> {
    let n = centered.rows();
    let d = centered.cols();
    let mut cov = DMatrix::<f64>::zeros(d, d);
    for t in 0..n {
        let row = centered.row(t);
        for i in 0..d {
            for j in i..d {
                cov[(i, j)] += row[i] * row[j];
            }
        }
    }
    let denom = (n - 1) as f64;
    for i in 0..d {
        for j in i..d {
            let v = cov[(i, j)] / denom;
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    let eig = cov.symmetric_eigen();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let mut basis = Mat::zeros(d, k);
    let mut vals = Vec::with_capacity(k);
    for (c, &idx) in order.iter().take(k).enumerate() {
        vals.push(eig.eigenvalues[idx]);
        for r in 0..d {
            basis[(r, c)] = eig.eigenvectors[(r, idx)];
        }
    }
    Ok((vals, basis))
}

/// Snapshot method: eigendecompose the N x N Gram matrix X X^T and map
/// eigenvectors back through X^T.
fn gram_eigen(centered: &Mat, k: usize) -> Result<(Vec<f64>, Mat)> {
    let n = centered.rows();
    let d = centered.cols();
    let mut gram = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let ri = centered.row(i);
        for j in i..n {
            let rj = centered.row(j);
            let mut acc = 0.0;
            for (a, b) in ri.iter().zip(rj) {
                acc += a * b;
            }
            gram[(i, j)] = acc;
            gram[(j, i)] = acc;
        }
    }
    let eig = gram.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));

    let denom = (n - 1) as f64;
    let mut basis = Mat::zeros(d, k);
    let mut vals = Vec::with_capacity(k);
    for (c, &idx) in order.iter().take(k).enumerate() {
        let mu = eig.eigenvalues[idx];
        // v = X^T u / |X^T u|
        let mut v = vec![0.0f64; d];
        for i in 0..n {
            let u_i = eig.eigenvectors[(i, idx)];
            for (vc, x) in v.iter_mut().zip(centered.row(i)) {
                *vc += u_i * x;
            }
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::numerical(format!(
                "data rank below requested {k} components"
            )));
        }
        for (r, vc) in v.iter().enumerate() {
            basis[(r, c)] = vc / norm;
        }
        vals.push(mu / denom);
    }
    Ok((vals, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    fn orthonormal_within(basis: &Mat, tol: f64) {
        let k = basis.cols();
        for a in 0..k {
            for b in 0..k {
                let mut dot = 0.0;
                for r in 0..basis.rows() {
                    dot += basis[(r, a)] * basis[(r, b)];
                }
                let target = if a == b { 1.0 } else { 0.0 };
                assert!((dot - target).abs() < tol, "col {a}.{b} dot {dot}");
            }
        }
    }

    #[test]
    fn data_in_k_dim_subspace_reconstructs_exactly() {
        // rank-2 data embedded in 5 dims
        let mut rng = rng::stream(1, "pca", 0);
        let dirs = [
            [1.0, 0.0, 2.0, 0.0, -1.0],
            [0.0, 3.0, 0.0, 1.0, 1.0],
        ];
        let mut rows = Vec::new();
        for _ in 0..30 {
            let (a, b): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            rows.push((0..5).map(|i| a * dirs[0][i] + b * dirs[1][i]).collect());
        }
        let data = Mat::from_rows(&rows).unwrap();
        let model = pca_fit(&data, 2).unwrap();
        orthonormal_within(&model.basis, 1e-9);
        for t in 0..data.rows() {
            let p = model.apply(data.row(t)).unwrap();
            // reconstruct and compare
            let recon = model.basis.matvec(&p);
            for (i, (r, x)) in recon.iter().zip(data.row(t)).enumerate() {
                assert!((r + model.mean[i] - x).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn diagonal_direction_recovered() {
        let rows: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, i as f64]).collect();
        let model = pca_fit(&Mat::from_rows(&rows).unwrap(), 1).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        assert!((model.basis[(0, 0)] - s).abs() < 1e-9);
        assert!((model.basis[(1, 0)] - s).abs() < 1e-9);
    }

    #[test]
    fn projection_variance_equals_eigenvalue_and_eigen_relation_holds() {
        // independent oracle: explicit covariance; check C v = lambda v and
        // that per-component projection variance (divisor N-1) matches
        let mut rng = rng::stream(2, "pca", 1);
        let (n, d, k) = (50usize, 10usize, 4usize);
        let mut rows = Vec::new();
        for _ in 0..n {
            rows.push((0..d).map(|j| rng::normal(&mut rng) * (1.0 + j as f64)).collect());
        }
        let data = Mat::from_rows(&rows).unwrap();
        let model = pca_fit(&data, k).unwrap();
        orthonormal_within(&model.basis, 1e-8);

        // explicit covariance
        let mut mean = vec![0.0; d];
        for r in &rows {
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v / n as f64;
            }
        }
        let mut cov = vec![vec![0.0; d]; d];
        for r in &rows {
            for i in 0..d {
                for j in 0..d {
                    cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]) / (n - 1) as f64;
                }
            }
        }
        for c in 0..k {
            let v: Vec<f64> = (0..d).map(|r| model.basis[(r, c)]).collect();
            let lambda = model.eigenvalues[c];
            for i in 0..d {
                let cv: f64 = (0..d).map(|j| cov[i][j] * v[j]).sum();
                assert!(
                    (cv - lambda * v[i]).abs() < 1e-8 * lambda.max(1.0),
                    "eigen relation residual at component {c}, row {i}"
                );
            }
            // projection variance
            let projs: Vec<f64> = (0..n)
                .map(|t| model.apply(data.row(t)).unwrap()[c])
                .collect();
            let pm: f64 = projs.iter().sum::<f64>() / n as f64;
            let var: f64 = projs.iter().map(|p| (p - pm) * (p - pm)).sum::<f64>() / (n - 1) as f64;
            assert!((var - lambda).abs() < 1e-8 * lambda.max(1.0), "component {c}");
        }
        // eigenvalues descending
        for c in 1..k {
            assert!(model.eigenvalues[c - 1] >= model.eigenvalues[c] - 1e-12);
        }
    }

    #[test]
    fn gram_and_covariance_routes_agree() {
        let mut rng = rng::stream(3, "pca", 2);
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..6).map(|_| rng::normal(&mut rng)).collect())
            .collect();
        let data = Mat::from_rows(&rows).unwrap();
        let gram = {
            let centered = center(&data);
            gram_eigen(&centered, 3).unwrap()
        };
        let cov = {
            let centered = center(&data);
            covariance_eigen(&centered, 3).unwrap()
        };
        for c in 0..3 {
            assert!((gram.0[c] - cov.0[c]).abs() < 1e-9);
            // columns agree up to sign
            let mut dot = 0.0;
            for r in 0..6 {
                dot += gram.1[(r, c)] * cov.1[(r, c)];
            }
            assert!((dot.abs() - 1.0).abs() < 1e-8, "component {c} dot {dot}");
        }
    }

    fn center(data: &Mat) -> Mat {
        let n = data.rows();
        let d = data.cols();
        let mut mean = vec![0.0; d];
        for t in 0..n {
            for (m, v) in mean.iter_mut().zip(data.row(t)) {
                *m += v / n as f64;
            }
        }
        let mut out = Mat::zeros(n, d);
        for t in 0..n {
            for c in 0..d {
                out[(t, c)] = data[(t, c)] - mean[c];
            }
        }
        out
    }

    #[test]
    fn zero_mean_projections_on_training_data() {
        let mut rng = rng::stream(4, "pca", 3);
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|_| (0..5).map(|_| rng::normal(&mut rng) + 3.0).collect())
            .collect();
        let data = Mat::from_rows(&rows).unwrap();
        let model = pca_fit(&data, 3).unwrap();
        let mut sums = vec![0.0; 3];
        for t in 0..data.rows() {
            for (s, p) in sums.iter_mut().zip(model.apply(data.row(t)).unwrap()) {
                *s += p;
            }
        }
        for s in sums {
            assert!((s / data.rows() as f64).abs() < 1e-8);
        }
    }

    #[test]
    fn invalid_dimensions_rejected() {
        let data = Mat::zeros(5, 3);
        let err = pca_fit(&data, 4).unwrap_err();
        assert!(err.to_string().contains("invalid dimension"), "{err}");
        assert!(pca_fit(&data, 0).is_err());
        let few = Mat::zeros(2, 5);
        assert!(pca_fit(&few, 3).is_err());
    }

    #[test]
    fn save_load_round_trip() {
        let rows: Vec<Vec<f64>> = (0..10)
            .map(|i| vec![i as f64, (i * i) as f64 % 7.0, 1.0])
            .collect();
        let model = pca_fit(&Mat::from_rows(&rows).unwrap(), 2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pca.bin");
        model.save(&path).unwrap();
        let loaded = PcaModel::load(&path).unwrap();
        assert_eq!(loaded.input_dim(), 3);
        assert_eq!(loaded.output_dim(), 2);
        for (a, b) in model.mean.iter().zip(&loaded.mean) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}
