//! Signer-independent fingerspelling letter-sequence recognition.
//!
//! The pipeline converts per-frame hand appearance features into letter
//! sequences:
//!
//! 1. [`frontend`] — multi-grid HoG features on 128x128 hand images, PCA
//!    dimensionality reduction, multi-frame window concatenation.
//! 2. [`neuralnet`] — feedforward frame classifiers for letters and six
//!    handshape phonological features, with signer adaptation (LIN+UP,
//!    LIN+LON, fine-tuning).
//! 3. [`tandem`] — GMM-HMM recognizer over tandem features (classifier
//!    posteriors concatenated with base features), Viterbi decoding, forced
//!    alignment, and lattice generation.
//! 4. [`scrf`] — semi-Markov CRF decoders: lattice rescoring and first-pass
//!    segmental decoding, trained by conditional maximum likelihood.
//! 5. [`eval`] — letter accuracy, confusion matrices, and the 8-fold
//!    tune/test protocol.
//!
//! [`corpus`] holds the data model, a deterministic synthetic corpus
//! generator covering the main axes of signer variation (speed, appearance,
//! non-signing motion), and the on-disk container formats.

pub mod container;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod frontend;
pub mod mat;
pub mod neuralnet;
pub mod rng;
pub mod scrf;
pub mod tandem;

pub use error::{Error, Result};
pub use mat::Mat;
