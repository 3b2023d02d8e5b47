//! Frame-rate resampling for speed normalization and augmentation.

use crate::corpus::types::{FrameSequence, Peak};
use crate::error::{Error, Result};
use crate::mat::Mat;

/// Resamples a sequence to `max(1, round(rate * T))` frames.
///
/// Frames are linearly interpolated; frame labels transfer from the nearest
/// input position. Peak and span annotations map through the same position
/// transform; peaks are dropped if downsampling collapses two onto one frame.
pub fn resample_speed(seq: &FrameSequence, rate: f64) -> Result<FrameSequence> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::data(format!("invalid rate: {rate}")));
    }
    let t = seq.len();
    if t == 0 {
        return Err(Error::data(format!("{}: empty sequence", seq.id)));
    }
    let d = seq.dim();
    let t_out = ((rate * t as f64).round() as usize).max(1);

    // input position of output frame i; both endpoints map to endpoints
    let pos = |i: usize| -> f64 {
        if t_out == 1 || t == 1 {
            0.0
        } else {
            i as f64 * (t - 1) as f64 / (t_out - 1) as f64
        }
    };

    let mut frames = Mat::zeros(t_out, d);
    for i in 0..t_out {
        let p = pos(i);
        let i0 = p.floor() as usize;
        let i1 = (i0 + 1).min(t - 1);
        let frac = p - i0 as f64;
        let r0 = seq.frames.row(i0);
        let r1 = seq.frames.row(i1);
        let out = frames.row_mut(i);
        for c in 0..d {
            out[c] = r0[c] + frac * (r1[c] - r0[c]);
        }
    }

    let frame_labels = seq.frame_labels.as_ref().map(|labels| {
        (0..t_out)
            .map(|i| labels[(pos(i).round() as usize).min(t - 1)].clone())
            .collect()
    });

    // map an input frame index to the nearest output frame index
    let fwd = |f: usize| -> usize {
        if t == 1 {
            0
        } else {
            ((f as f64 * (t_out - 1) as f64 / (t - 1) as f64).round() as usize).min(t_out - 1)
        }
    };
    let peaks = seq.peaks.as_ref().and_then(|peaks| {
        let mapped: Vec<Peak> = peaks
            .iter()
            .map(|p| Peak {
                letter: p.letter,
                frame: fwd(p.frame),
            })
            .collect();
        let monotone = mapped.windows(2).all(|w| w[0].frame < w[1].frame);
        monotone.then_some(mapped)
    });
    let signing_span = seq.signing_span.map(|(s, e)| (fwd(s), fwd(e)));

    Ok(FrameSequence {
        id: seq.id.clone(),
        signer_id: seq.signer_id.clone(),
        word: seq.word.clone(),
        frames,
        frame_labels,
        peaks,
        signing_span,
    })
}
