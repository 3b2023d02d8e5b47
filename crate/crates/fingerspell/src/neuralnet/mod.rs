//! Feedforward frame classifiers and signer adaptation.
//!
//! Seven classifiers share one architecture: windowed static features in,
//! ReLU hidden layers, softmax over the task's class set (letters or one of
//! six phonological features, each plus the two non-signing classes).
//!
//! Adaptation modes:
//! - LIN+UP: a per-frame input affine is learned jointly with the softmax
//!   layer (warm-started from the signer-independent weights); hidden layers
//!   stay frozen.
//! - LIN+LON: the input affine plus a new output layer stacked on the
//!   de-activated logits; the original network stays frozen.
//! - fine-tuning: all weights continue training on adaptation data.

mod adapt;
mod mlp;
mod train;

pub use adapt::{adapt, AdaptConfig, AdaptMode, AdaptedModel, LabelSource, LinearInput, OutputAdapt};
pub use mlp::{softmax_in_place, Classifier, Layer, MlpModel};
pub use train::{task_frame_classes, train, windowed_dataset, TrainConfig};
