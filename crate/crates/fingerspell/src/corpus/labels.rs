//! Peak annotations to ground-truth frame labels.
//!
//! Letter boundaries are placed mid-way between consecutive peaks: the
//! boundary between letters with peaks `p` and `q` is frame
//! `floor((p + q) / 2)`, the last frame of the left letter.

use crate::corpus::alphabet::{LabelAlphabet, BOS, EOS};
use crate::corpus::types::{FrameSequence, Segment, Segmentation};
use crate::error::{Error, Result};

/// Converts peak annotations to a segmentation over `[0, T-1]`.
///
/// The signing span comes from the sequence's annotation when present.
/// Otherwise the span edges default to midpoints between the sequence edge
/// and the outermost peak, symmetric with the internal boundary rule.
pub fn peaks_to_segmentation(
    seq: &FrameSequence,
    alphabet: &LabelAlphabet,
) -> Result<Segmentation> {
    let t = seq.len();
    let peaks = seq
        .peaks
        .as_ref()
        .ok_or_else(|| Error::data(format!("{}: annotation required", seq.id)))?;
    if peaks.len() != seq.word.len() || peaks.is_empty() {
        return Err(Error::data(format!("{}: invalid annotation", seq.id)));
    }
    for (i, p) in peaks.iter().enumerate() {
        if p.letter != i || p.frame >= t || (i > 0 && peaks[i - 1].frame >= p.frame) {
            return Err(Error::data(format!("{}: invalid annotation", seq.id)));
        }
    }
    for l in &seq.word {
        if alphabet.letter_index(l).is_none() {
            return Err(Error::data(format!("letter not in alphabet: {l}")));
        }
    }

    let first_peak = peaks[0].frame;
    let last_peak = peaks[peaks.len() - 1].frame;
    let (span_start, span_end) = match seq.signing_span {
        Some((s, e)) => {
            if s > first_peak || e < last_peak || e >= t {
                return Err(Error::data(format!("{}: invalid annotation", seq.id)));
            }
            (s, e)
        }
        None => {
            let s = if first_peak == 0 { 0 } else { first_peak / 2 };
            let e = ((last_peak + t - 1) / 2).max(last_peak);
            (s, e)
        }
    };

    let mut segments = Vec::with_capacity(seq.word.len() + 2);
    if span_start > 0 {
        segments.push(Segment {
            start: 0,
            end: span_start - 1,
            label: BOS.to_string(),
        });
    }
    let mut start = span_start;
    for i in 0..seq.word.len() {
        let end = if i + 1 < seq.word.len() {
            (peaks[i].frame + peaks[i + 1].frame) / 2
        } else {
            span_end
        };
        segments.push(Segment {
            start,
            end,
            label: seq.word[i].clone(),
        });
        start = end + 1;
    }
    if span_end + 1 < t {
        segments.push(Segment {
            start: span_end + 1,
            end: t - 1,
            label: EOS.to_string(),
        });
    }

    let seg = Segmentation { segments };
    seg.validate(alphabet, t)?;
    Ok(seg)
}

/// Converts peak annotations to a length-T frame label sequence.
pub fn peaks_to_frame_labels(seq: &FrameSequence, alphabet: &LabelAlphabet) -> Result<Vec<String>> {
    Ok(peaks_to_segmentation(seq, alphabet)?.to_frame_labels())
}
