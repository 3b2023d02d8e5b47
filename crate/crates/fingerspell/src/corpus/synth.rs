//! Deterministic synthetic corpus generation.
//!
//! Models the three main axes of signer variation: per-signer speed (time
//! dilation of letter spans), hand appearance (per-signer affine on the
//! feature space), and non-signing motion (random walks flanking the word).
//! Letters render as fixed random prototype vectors shared across signers.
//!
//! Every random stream derives from `rng_seed` plus a role tag, so letter
//! prototypes and per-signer parameters are stable across configs that share
//! a seed (corpora with different noise settings stay comparable).

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::alphabet::{LabelAlphabet, BOS, EOS};
use crate::corpus::types::{FrameSequence, Peak};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::rng;

/// Per-signer affine jitter on raw features: a diagonal scale drawn from
/// `1 +/- scale_jitter` and an offset drawn from `+/- offset_jitter`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AppearanceShift {
    pub scale_jitter: f64,
    pub offset_jitter: f64,
}

impl Default for AppearanceShift {
    fn default() -> Self {
        AppearanceShift {
            scale_jitter: 0.4,
            offset_jitter: 1.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub n_signers: usize,
    pub words_per_signer: usize,
    /// Words cycle per signer; every signer signs the same token list.
    pub word_list: Vec<String>,
    /// Slowest/fastest duration multipliers; signers are spaced evenly.
    pub speed_range: (f64, f64),
    pub appearance_shift: AppearanceShift,
    /// Frame-count interval for the `<s>` / `</s>` runs.
    pub nonsigning_len_range: (usize, usize),
    /// Step size of the non-signing random walk.
    pub nonsigning_walk_sigma: f64,
    /// Isotropic observation noise added to every frame.
    pub noise_sigma: f64,
    pub feature_dim: usize,
    /// Letter span length before the signer speed multiplier.
    pub base_letter_len: usize,
    pub rng_seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_signers: 4,
            words_per_signer: 80,
            word_list: DEFAULT_WORDS.iter().map(|w| w.to_string()).collect(),
            speed_range: (1.0, 1.8),
            appearance_shift: AppearanceShift::default(),
            nonsigning_len_range: (4, 12),
            nonsigning_walk_sigma: 0.6,
            noise_sigma: 0.25,
            feature_dim: 16,
            base_letter_len: 10,
            rng_seed: 0,
        }
    }
}

/// Desk-scale word list used when a config omits one.
pub const DEFAULT_WORDS: [&str; 40] = [
    "TULIP", "QUEBEC", "MARY", "JAVA", "PYTHON", "ROBOT", "HAND", "SIGN", "VIDEO", "FRAME",
    "MODEL", "LETTER", "SPEECH", "CAMERA", "LIGHT", "DEPTH", "WORD", "TOKEN", "PEAK", "GRID",
    "NOISE", "SPEED", "SHAPE", "INDEX", "LAYER", "TRAIN", "ADAPT", "DECODE", "SCORE", "LABEL",
    "GRAPH", "BEAM", "PRUNE", "FOLD", "SPLIT", "MEAN", "SIGMA", "DELTA", "KAPPA", "OMEGA",
];

impl SynthConfig {
    fn validate(&self, alphabet: &LabelAlphabet) -> Result<()> {
        if self.n_signers == 0 || self.words_per_signer == 0 {
            return Err(Error::config("n_signers and words_per_signer must be > 0"));
        }
        if self.word_list.is_empty() {
            return Err(Error::config("word_list must not be empty"));
        }
        if !(self.speed_range.0 > 0.0 && self.speed_range.1 >= self.speed_range.0) {
            return Err(Error::config(format!(
                "speed_range {:?} not within (0, inf)",
                self.speed_range
            )));
        }
        if self.noise_sigma < 0.0 || self.nonsigning_walk_sigma < 0.0 {
            return Err(Error::config("noise sigmas must be >= 0"));
        }
        if self.nonsigning_len_range.0 > self.nonsigning_len_range.1
            || self.nonsigning_len_range.0 == 0
        {
            return Err(Error::config(format!(
                "bad nonsigning_len_range {:?}",
                self.nonsigning_len_range
            )));
        }
        if self.feature_dim == 0 || self.base_letter_len == 0 {
            return Err(Error::config("feature_dim and base_letter_len must be > 0"));
        }
        for w in &self.word_list {
            for ch in word_letters(w) {
                if alphabet.letter_index(&ch).is_none() {
                    return Err(Error::data(format!("letter not in alphabet: {ch}")));
                }
            }
        }
        Ok(())
    }

    /// Duration multiplier for signer `i`, spaced evenly over `speed_range`.
    pub fn signer_speed(&self, i: usize) -> f64 {
        let (lo, hi) = self.speed_range;
        if self.n_signers <= 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (self.n_signers - 1) as f64
        }
    }

    pub fn signer_name(i: usize) -> String {
        format!("signer{i:02}")
    }
}

/// Splits a word string into single-character letter symbols.
pub fn word_letters(word: &str) -> Vec<String> {
    word.chars().map(|c| c.to_string()).collect()
}

/// Letter prototype vector, fixed by `(seed, letter index, dim)` and shared
/// across signers and configs.
fn prototype(seed: u64, letter: usize, dim: usize) -> Vec<f64> {
    let mut r = rng::stream(seed, "letter-prototype", letter as u64);
    (0..dim).map(|_| rng::normal(&mut r)).collect()
}

struct SignerParams {
    speed: f64,
    scale: Vec<f64>,
    offset: Vec<f64>,
}

fn signer_params(cfg: &SynthConfig, i: usize) -> SignerParams {
    let mut r = rng::stream(cfg.rng_seed, "signer-appearance", i as u64);
    let sj = cfg.appearance_shift.scale_jitter;
    let oj = cfg.appearance_shift.offset_jitter;
    let scale = (0..cfg.feature_dim)
        .map(|_| 1.0 + r.gen_range(-sj..=sj))
        .collect();
    let offset = (0..cfg.feature_dim)
        .map(|_| r.gen_range(-oj..=oj))
        .collect();
    SignerParams {
        speed: cfg.signer_speed(i),
        scale,
        offset,
    }
}

/// Generates `n_signers * words_per_signer` labeled sequences; bit-identical
/// for identical configs.
pub fn generate_synthetic(
    cfg: &SynthConfig,
    alphabet: &LabelAlphabet,
) -> Result<Vec<FrameSequence>> {
    cfg.validate(alphabet)?;
    let dim = cfg.feature_dim;
    let protos: Vec<Vec<f64>> = (0..alphabet.n_letters())
        .map(|l| prototype(cfg.rng_seed, l, dim))
        .collect();

    let mut out = Vec::with_capacity(cfg.n_signers * cfg.words_per_signer);
    for si in 0..cfg.n_signers {
        let sp = signer_params(cfg, si);
        let signer = SynthConfig::signer_name(si);
        for wi in 0..cfg.words_per_signer {
            let word_str = &cfg.word_list[wi % cfg.word_list.len()];
            let word = word_letters(word_str);
            let utt_index = ((si as u64) << 32) | wi as u64;
            let mut r = rng::stream(cfg.rng_seed, "utterance", utt_index);

            let (lo, hi) = cfg.nonsigning_len_range;
            let len_bos = r.gen_range(lo..=hi);
            let len_eos = r.gen_range(lo..=hi);
            let letter_len = ((cfg.base_letter_len as f64 * sp.speed).round() as usize).max(3);

            let t = len_bos + letter_len * word.len() + len_eos;
            let mut frames = Mat::zeros(t, dim);
            let mut labels = Vec::with_capacity(t);
            let mut frame = 0usize;

            // leading non-signing random walk from the origin
            let mut walk = vec![0.0f64; dim];
            for _ in 0..len_bos {
                for w in walk.iter_mut() {
                    *w += cfg.nonsigning_walk_sigma * rng::normal(&mut r);
                }
                frames.row_mut(frame).copy_from_slice(&walk);
                labels.push(BOS.to_string());
                frame += 1;
            }

            let mut peaks = Vec::with_capacity(word.len());
            for (li, letter) in word.iter().enumerate() {
                let proto = &protos[alphabet.letter_index(letter).expect("validated")];
                let start = frame;
                for _ in 0..letter_len {
                    frames.row_mut(frame).copy_from_slice(proto);
                    labels.push(letter.clone());
                    frame += 1;
                }
                peaks.push(Peak {
                    letter: li,
                    frame: (start + frame - 1) / 2,
                });
            }
            let span = (len_bos, frame - 1);

            walk.iter_mut().for_each(|w| *w = 0.0);
            for _ in 0..len_eos {
                for w in walk.iter_mut() {
                    *w += cfg.nonsigning_walk_sigma * rng::normal(&mut r);
                }
                frames.row_mut(frame).copy_from_slice(&walk);
                labels.push(EOS.to_string());
                frame += 1;
            }
            debug_assert_eq!(frame, t);

            // signer appearance affine, then observation noise
            for fi in 0..t {
                let row = frames.row_mut(fi);
                for c in 0..dim {
                    row[c] = sp.scale[c] * row[c] + sp.offset[c];
                }
            }
            if cfg.noise_sigma > 0.0 {
                for v in frames.data_mut() {
                    *v += cfg.noise_sigma * rng::normal(&mut r);
                }
            }

            out.push(FrameSequence {
                id: format!("{signer}_u{wi:04}"),
                signer_id: signer.clone(),
                word,
                frames,
                frame_labels: Some(labels),
                peaks: Some(peaks),
                signing_span: Some(span),
            });
        }
    }
    Ok(out)
}
