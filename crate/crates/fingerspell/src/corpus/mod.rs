//! Data model, label conversion, speed resampling, synthetic corpus
//! generation, dataset splits, and persistence.

mod alphabet;
mod io;
mod labels;
mod resample;
mod split;
mod synth;
mod types;

pub use alphabet::{LabelAlphabet, PhonoTable, Task, BOS, EOS};
pub use io::{load_corpus, save_corpus};
pub use labels::{peaks_to_frame_labels, peaks_to_segmentation};
pub use resample::resample_speed;
pub use split::{split_corpus, SplitIndices};
pub use synth::{generate_synthetic, AppearanceShift, SynthConfig, DEFAULT_WORDS};
pub use types::{FrameSequence, Peak, Segment, Segmentation};
