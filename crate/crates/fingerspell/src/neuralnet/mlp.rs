use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::container;
use crate::error::{Error, Result};
use crate::frontend::{window_concat, WindowConfig};
use crate::mat::Mat;
use crate::rng;

/// Dense layer: `out = w * x + b`, row-major `out_dim x in_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub w: Mat,
    pub b: Vec<f64>,
}

impl Layer {
    pub fn in_dim(&self) -> usize {
        self.w.cols()
    }

    pub fn out_dim(&self) -> usize {
        self.w.rows()
    }

    pub fn zeros(out_dim: usize, in_dim: usize) -> Self {
        Layer {
            w: Mat::zeros(out_dim, in_dim),
            b: vec![0.0; out_dim],
        }
    }

    pub fn zeros_like(&self) -> Self {
        Layer::zeros(self.out_dim(), self.in_dim())
    }

    /// out[o] = b[o] + sum_i w[o,i] x[i]
    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        let mut out = self.w.matvec(x);
        for (o, b) in out.iter_mut().zip(&self.b) {
            *o += b;
        }
        out
    }

    fn glorot(out_dim: usize, in_dim: usize, rng: &mut impl Rng) -> Self {
        let bound = (6.0 / (in_dim + out_dim) as f64).sqrt();
        let mut w = Mat::zeros(out_dim, in_dim);
        for v in w.data_mut() {
            *v = rng.gen_range(-bound..=bound);
        }
        Layer {
            w,
            b: vec![0.0; out_dim],
        }
    }
}

/// Feedforward classifier over windowed static frame features.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    /// Hidden layers (ReLU) followed by the output layer (softmax).
    pub layers: Vec<Layer>,
    pub classes: Vec<String>,
    /// Per-frame feature dimension before windowing.
    pub static_dim: usize,
    pub window: WindowConfig,
}

/// Applies softmax with max subtraction; sums to 1 for any finite input.
pub fn softmax_in_place(logits: &mut [f64]) {
    let m = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for v in logits.iter_mut() {
        *v = (*v - m).exp();
        sum += *v;
    }
    for v in logits.iter_mut() {
        *v /= sum;
    }
}

impl MlpModel {
    /// Glorot-initialized model with the given hidden sizes.
    pub fn new(
        static_dim: usize,
        window: WindowConfig,
        hidden: &[usize],
        classes: Vec<String>,
        seed: u64,
    ) -> Result<Self> {
        window.validate()?;
        if static_dim == 0 || classes.len() < 2 {
            return Err(Error::config("need static_dim > 0 and >= 2 classes"));
        }
        let mut dims = vec![static_dim * window.width];
        dims.extend_from_slice(hidden);
        dims.push(classes.len());
        let mut rng = rng::stream(seed, "mlp-init", 0);
        let layers = dims
            .windows(2)
            .map(|d| Layer::glorot(d[1], d[0], &mut rng))
            .collect();
        Ok(MlpModel {
            layers,
            classes,
            static_dim,
            window,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].in_dim()
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class posteriors for one windowed input vector.
    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut logits = self.forward_logits(x)?;
        softmax_in_place(&mut logits);
        Ok(logits)
    }

    /// Pre-softmax output layer activations.
    pub fn forward_logits(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.input_dim() {
            return Err(Error::data(format!(
                "shape mismatch: input dim {} != {}",
                x.len(),
                self.input_dim()
            )));
        }
        let mut a = self.hidden_forward(x);
        a = self.layers[self.layers.len() - 1].forward(&a);
        Ok(a)
    }

    /// Runs all hidden layers (ReLU); returns the last hidden activation.
    pub(crate) fn hidden_forward(&self, x: &[f64]) -> Vec<f64> {
        let mut a = x.to_vec();
        for layer in &self.layers[..self.layers.len() - 1] {
            a = layer.forward(&a);
            for v in a.iter_mut() {
                if *v < 0.0 {
                    *v = 0.0;
                }
            }
        }
        a
    }

    /// T x C posteriors for a static frame sequence (windowing applied here).
    pub fn posteriorgram(&self, frames: &Mat) -> Result<Mat> {
        if frames.cols() != self.static_dim {
            return Err(Error::data(format!(
                "shape mismatch: {} feature dims, model expects {}",
                frames.cols(),
                self.static_dim
            )));
        }
        let windowed = window_concat(frames, &self.window)?;
        let mut out = Mat::zeros(frames.rows(), self.n_classes());
        for t in 0..frames.rows() {
            let p = self.forward(windowed.row(t))?;
            out.row_mut(t).copy_from_slice(&p);
        }
        Ok(out)
    }

    /// Flat parameter vector (layer order, weights then bias).
    pub fn params(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for l in &self.layers {
            out.extend_from_slice(l.w.data());
            out.extend_from_slice(&l.b);
        }
        out
    }

    pub fn set_params(&mut self, params: &[f64]) {
        let mut i = 0;
        for l in &mut self.layers {
            let nw = l.w.data().len();
            l.w.data_mut().copy_from_slice(&params[i..i + nw]);
            i += nw;
            l.b.copy_from_slice(&params[i..i + l.b.len()]);
            i += l.b.len();
        }
        assert_eq!(i, params.len(), "parameter count mismatch");
    }

    /// FNV-1a over the serialized weight payload; identifies the base model
    /// an adaptation attachment belongs to.
    pub fn weights_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for l in &self.layers {
            for &v in l.w.data().iter().chain(&l.b) {
                for b in (v as f32).to_le_bytes() {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        h
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let header = MlpHeader {
            classes: self.classes.clone(),
            static_dim: self.static_dim,
            window: self.window.width,
            layer_dims: self
                .layers
                .iter()
                .map(|l| (l.out_dim(), l.in_dim()))
                .collect(),
        };
        let mut payload = Vec::new();
        for l in &self.layers {
            payload.extend(l.w.data().iter().map(|&v| v as f32));
            payload.extend(l.b.iter().map(|&v| v as f32));
        }
        container::write(path, &header, &payload)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let (header, payload): (MlpHeader, Vec<f32>) = container::read(path)?;
        let mut layers = Vec::with_capacity(header.layer_dims.len());
        let mut i = 0usize;
        for &(out_dim, in_dim) in &header.layer_dims {
            let nw = out_dim * in_dim;
            if i + nw + out_dim > payload.len() {
                return Err(Error::data(format!(
                    "{}: model payload too short",
                    path.display()
                )));
            }
            let w = Mat::from_f32(out_dim, in_dim, &payload[i..i + nw])?;
            i += nw;
            let b = payload[i..i + out_dim].iter().map(|&v| v as f64).collect();
            i += out_dim;
            layers.push(Layer { w, b });
        }
        if i != payload.len() {
            return Err(Error::data(format!(
                "{}: trailing bytes in model payload",
                path.display()
            )));
        }
        let model = MlpModel {
            layers,
            classes: header.classes,
            static_dim: header.static_dim,
            window: WindowConfig {
                width: header.window,
            },
        };
        if model.layers.is_empty() || model.input_dim() != model.static_dim * model.window.width {
            return Err(Error::data(format!("{}: inconsistent header", path.display())));
        }
        Ok(model)
    }
}

#[derive(Serialize, Deserialize)]
struct MlpHeader {
    classes: Vec<String>,
    static_dim: usize,
    window: usize,
    layer_dims: Vec<(usize, usize)>,
}

/// A base or adapted classifier, used interchangeably downstream.
#[derive(Debug, Clone)]
pub enum Classifier {
    Base(MlpModel),
    Adapted(super::AdaptedModel),
}

impl Classifier {
    pub fn posteriorgram(&self, frames: &Mat) -> Result<Mat> {
        match self {
            Classifier::Base(m) => m.posteriorgram(frames),
            Classifier::Adapted(m) => m.posteriorgram(frames),
        }
    }

    pub fn n_classes(&self) -> usize {
        match self {
            Classifier::Base(m) => m.n_classes(),
            Classifier::Adapted(m) => m.n_classes(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(classes: usize, seed: u64) -> MlpModel {
        MlpModel::new(
            3,
            WindowConfig { width: 1 },
            &[4],
            (0..classes).map(|c| format!("c{c}")).collect(),
            seed,
        )
        .unwrap()
    }

    #[test]
    fn zero_weights_give_uniform_posteriors() {
        let mut m = toy(4, 0);
        for l in &mut m.layers {
            l.w.data_mut().fill(0.0);
            l.b.fill(0.0);
        }
        let p = m.forward(&[0.3, -1.0, 2.0]).unwrap();
        for v in &p {
            assert!((v - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn posteriors_sum_to_one_for_random_weights() {
        let m = toy(5, 7);
        for trial in 0..20 {
            let x = [trial as f64 * 0.37 - 2.0, -0.5, 1.5];
            let p = m.forward(&x).unwrap();
            let s: f64 = p.iter().sum();
            assert!((s - 1.0).abs() < 1e-6, "sum {s}");
            assert!(p.iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn single_hidden_unit_matches_hand_computation() {
        // input dim 1, one hidden relu unit, two outputs
        let mut m = MlpModel::new(
            1,
            WindowConfig { width: 1 },
            &[1],
            vec!["a".into(), "b".into()],
            0,
        )
        .unwrap();
        m.layers[0].w = Mat::from_vec(1, 1, vec![2.0]);
        m.layers[0].b = vec![-1.0];
        m.layers[1].w = Mat::from_vec(2, 1, vec![1.0, -1.0]);
        m.layers[1].b = vec![0.5, 0.0];
        // x=2: h = relu(2*2-1)=3; logits = [3.5, -3]; softmax by hand
        let p = m.forward(&[2.0]).unwrap();
        let e0 = (3.5f64).exp();
        let e1 = (-3.0f64).exp();
        assert!((p[0] - e0 / (e0 + e1)).abs() < 1e-12);
        assert!((p[1] - e1 / (e0 + e1)).abs() < 1e-12);
        // x=0: h = relu(-1)=0; logits = [0.5, 0]
        let p = m.forward(&[0.0]).unwrap();
        let e0 = (0.5f64).exp();
        assert!((p[0] - e0 / (e0 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn posteriorgram_rows_are_forward_outputs_over_windows() {
        let m = MlpModel::new(
            2,
            WindowConfig { width: 3 },
            &[4],
            vec!["a".into(), "b".into(), "c".into()],
            3,
        )
        .unwrap();
        let frames = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let pg = m.posteriorgram(&frames).unwrap();
        assert_eq!(pg.rows(), 3);
        assert_eq!(pg.cols(), 3);
        let w = window_concat(&frames, &m.window).unwrap();
        for t in 0..3 {
            let direct = m.forward(w.row(t)).unwrap();
            assert_eq!(pg.row(t), direct.as_slice());
            let s: f64 = pg.row(t).iter().sum();
            assert!((s - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let m = toy(3, 1);
        assert!(m.forward(&[1.0]).is_err());
        assert!(m.posteriorgram(&Mat::zeros(4, 7)).is_err());
    }

    #[test]
    fn save_load_round_trip_at_f32() {
        let m = toy(3, 9);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.net");
        m.save(&path).unwrap();
        let l = MlpModel::load(&path).unwrap();
        assert_eq!(l.classes, m.classes);
        assert_eq!(l.window, m.window);
        assert_eq!(l.weights_hash(), m.weights_hash());
        let p1 = m.forward(&[0.1, 0.2, 0.3]).unwrap();
        let p2 = l.forward(&[0.1, 0.2, 0.3]).unwrap();
        for (a, b) in p1.iter().zip(&p2) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}
