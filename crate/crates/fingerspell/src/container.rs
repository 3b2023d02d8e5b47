//! Shared on-disk container: one JSON header line followed by a raw
//! little-endian `f32` payload.
//!
//! Corpus utterances, PCA models, neural network weights, and HMM parameter
//! blocks all use this container with different header types. The header is
//! a single line of JSON terminated by `\n`; the payload length is implied by
//! the header (callers validate element counts).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Writes `header` as one JSON line followed by `payload` as little-endian f32.
pub fn write<H: Serialize>(path: &Path, header: &H, payload: &[f32]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let line = serde_json::to_string(header).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    w.write_all(line.as_bytes())
        .and_then(|_| w.write_all(b"\n"))
        .map_err(|e| Error::io(path, e))?;
    let mut bytes = Vec::with_capacity(payload.len() * 4);
    for v in payload {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&bytes).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a container written by [`write`].
pub fn read<H: DeserializeOwned>(path: &Path) -> Result<(H, Vec<f32>)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = BufReader::new(file);
    let mut all = Vec::new();
    r.read_to_end(&mut all).map_err(|e| Error::io(path, e))?;
    let nl = all
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::data(format!("{}: missing header line", path.display())))?;
    let header: H = serde_json::from_slice(&all[..nl]).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        source: e,
    })?;
    let body = &all[nl + 1..];
    if body.len() % 4 != 0 {
        return Err(Error::data(format!(
            "{}: payload length {} not a multiple of 4",
            path.display(),
            body.len()
        )));
    }
    let payload = body
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect();
    Ok((header, payload))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Hdr {
        rows: usize,
        cols: usize,
        name: String,
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.bin");
        let hdr = Hdr {
            rows: 2,
            cols: 3,
            name: "utt\nwith newline".into(),
        };
        let payload = [1.0f32, -2.5, 0.0, 3.25, f32::MIN_POSITIVE, 1e20];
        write(&path, &hdr, &payload).unwrap();
        let (h2, p2): (Hdr, Vec<f32>) = read(&path).unwrap();
        assert_eq!(h2, hdr);
        assert_eq!(p2, payload);
    }

    #[test]
    fn empty_payload_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.bin");
        write(&path, &serde_json::json!({"k": 1}), &[]).unwrap();
        let (_, p): (serde_json::Value, Vec<f32>) = read(&path).unwrap();
        assert!(p.is_empty());
    }
}
