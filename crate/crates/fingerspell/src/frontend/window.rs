//! Multi-frame window concatenation with edge replication.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct WindowConfig {
    /// Odd number of frames concatenated per output row.
    pub width: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig { width: 21 }
    }
}

impl WindowConfig {
    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.width % 2 == 0 {
            return Err(Error::config(format!(
                "window width must be odd and >= 1, got {}",
                self.width
            )));
        }
        Ok(())
    }
}

/// Row `t` of the output is the concatenation of rows `t-w ..= t+w`
/// (w = (width-1)/2) with out-of-range rows replaced by the nearest edge row.
pub fn window_concat(frames: &Mat, cfg: &WindowConfig) -> Result<Mat> {
    cfg.validate()?;
    let t_len = frames.rows();
    let k = frames.cols();
    if t_len == 0 {
        return Err(Error::data("empty sequence"));
    }
    let w = (cfg.width - 1) / 2;
    let mut out = Mat::zeros(t_len, k * cfg.width);
    for t in 0..t_len {
        let row = out.row_mut(t);
        for (slot, off) in (-(w as isize)..=w as isize).enumerate() {
            let src = (t as isize + off).clamp(0, t_len as isize - 1) as usize;
            row[slot * k..(slot + 1) * k].copy_from_slice(frames.row(src));
        }
    }
    Ok(out)
}
