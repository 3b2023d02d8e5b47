use serde::{Deserialize, Serialize};

use crate::corpus::alphabet::LabelAlphabet;
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Manually annotated frame of maximal articulation for one word letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peak {
    /// Index into the word's letter sequence.
    pub letter: usize,
    pub frame: usize,
}

/// Per-video time series of feature vectors with signer id, word label, and
/// optional frame labels and peak annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSequence {
    pub id: String,
    pub signer_id: String,
    /// Letter symbols; never contains boundary symbols.
    pub word: Vec<String>,
    /// T x D feature matrix.
    pub frames: Mat,
    /// Length-T symbols over the class set, when annotated.
    pub frame_labels: Option<Vec<String>>,
    /// Strictly increasing in frame, one per word letter, when annotated.
    pub peaks: Option<Vec<Peak>>,
    /// First and last frame of the signing portion, when annotated.
    pub signing_span: Option<(usize, usize)>,
}

impl FrameSequence {
    pub fn len(&self) -> usize {
        self.frames.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.rows() == 0
    }

    pub fn dim(&self) -> usize {
        self.frames.cols()
    }

    /// Checks the structural invariants against an alphabet.
    pub fn validate(&self, alphabet: &LabelAlphabet) -> Result<()> {
        let t = self.len();
        if t == 0 {
            return Err(Error::data(format!("{}: empty sequence", self.id)));
        }
        for l in &self.word {
            if alphabet.letter_index(l).is_none() {
                return Err(Error::data(format!("letter not in alphabet: {l}")));
            }
        }
        if let Some(peaks) = &self.peaks {
            if peaks.len() != self.word.len() {
                return Err(Error::data(format!(
                    "{}: invalid annotation: {} peaks for {} letters",
                    self.id,
                    peaks.len(),
                    self.word.len()
                )));
            }
            for (i, p) in peaks.iter().enumerate() {
                if p.letter != i || p.frame >= t {
                    return Err(Error::data(format!("{}: invalid annotation", self.id)));
                }
                if i > 0 && peaks[i - 1].frame >= p.frame {
                    return Err(Error::data(format!("{}: invalid annotation", self.id)));
                }
            }
        }
        if let Some(labels) = &self.frame_labels {
            if labels.len() != t {
                return Err(Error::data(format!(
                    "{}: {} frame labels for {} frames",
                    self.id,
                    labels.len(),
                    t
                )));
            }
            for l in labels {
                if alphabet.class_index(l).is_none() {
                    return Err(Error::data(format!("letter not in alphabet: {l}")));
                }
            }
            let first_letter = labels.iter().position(|l| l != super::BOS);
            let last_letter = labels.iter().rposition(|l| l != super::EOS);
            if let (Some(a), Some(b)) = (first_letter, last_letter) {
                if a > b
                    || labels[a..=b]
                        .iter()
                        .any(|l| l == super::BOS || l == super::EOS)
                {
                    return Err(Error::data(format!(
                        "{}: boundary labels inside the word",
                        self.id
                    )));
                }
            }
        }
        if let Some((s, e)) = self.signing_span {
            if s > e || e >= t {
                return Err(Error::data(format!("{}: invalid annotation", self.id)));
            }
        }
        Ok(())
    }
}

/// One labeled span of a segmentation; `end` is inclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub label: String,
}

/// Contiguous non-overlapping labeled spans tiling `[0, T-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segmentation {
    pub segments: Vec<Segment>,
}

impl Segmentation {
    /// Total frame count covered.
    pub fn frames(&self) -> usize {
        self.segments.last().map_or(0, |s| s.end + 1)
    }

    /// Checks the tiling invariant and label membership.
    pub fn validate(&self, alphabet: &LabelAlphabet, t: usize) -> Result<()> {
        if self.segments.is_empty() {
            return Err(Error::data("empty segmentation"));
        }
        let mut next = 0usize;
        for s in &self.segments {
            if s.start != next || s.end < s.start {
                return Err(Error::data(format!(
                    "segmentation does not tile: segment [{}, {}] after frame {}",
                    s.start, s.end, next
                )));
            }
            if alphabet.class_index(&s.label).is_none() {
                return Err(Error::data(format!("letter not in alphabet: {}", s.label)));
            }
            next = s.end + 1;
        }
        if next != t {
            return Err(Error::data(format!(
                "segmentation covers {next} of {t} frames"
            )));
        }
        Ok(())
    }

    /// Length-T frame label symbols.
    pub fn to_frame_labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.frames());
        for s in &self.segments {
            for _ in s.start..=s.end {
                out.push(s.label.clone());
            }
        }
        out
    }

    /// The letter sequence: segment labels with boundary classes dropped.
    pub fn word(&self) -> Vec<String> {
        self.segments
            .iter()
            .filter(|s| s.label != super::BOS && s.label != super::EOS)
            .map(|s| s.label.clone())
            .collect()
    }
}
