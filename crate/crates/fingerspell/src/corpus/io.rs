//! Corpus persistence.
//!
//! Layout: one directory per signer, one container file per utterance
//! (JSON header + little-endian f32 row-major frames), `alphabet.json`,
//! and `manifest.json` listing utterances in order.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::container;
use crate::corpus::alphabet::LabelAlphabet;
use crate::corpus::types::{FrameSequence, Peak};
use crate::error::{Error, Result};
use crate::mat::Mat;

#[derive(Debug, Serialize, Deserialize)]
struct UtteranceHeader {
    id: String,
    signer: String,
    word: Vec<String>,
    frames: usize,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    peaks: Option<Vec<Peak>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    span: Option<(usize, usize)>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestEntry {
    id: String,
    signer: String,
    path: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    alphabet: String,
    utterances: Vec<ManifestEntry>,
}

/// Writes a corpus directory; overwrites existing files.
pub fn save_corpus(dir: &Path, alphabet: &LabelAlphabet, corpus: &[FrameSequence]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let alphabet_path = dir.join("alphabet.json");
    let json = serde_json::to_string_pretty(alphabet).expect("alphabet serializes");
    fs::write(&alphabet_path, json.as_bytes()).map_err(|e| Error::io(&alphabet_path, e))?;

    let mut entries = Vec::with_capacity(corpus.len());
    for seq in corpus {
        let rel = format!("{}/{}.fsq", seq.signer_id, seq.id);
        let path = dir.join(&rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        let header = UtteranceHeader {
            id: seq.id.clone(),
            signer: seq.signer_id.clone(),
            word: seq.word.clone(),
            frames: seq.len(),
            dim: seq.dim(),
            labels: seq.frame_labels.clone(),
            peaks: seq.peaks.clone(),
            span: seq.signing_span,
        };
        container::write(&path, &header, &seq.frames.to_f32())?;
        entries.push(ManifestEntry {
            id: seq.id.clone(),
            signer: seq.signer_id.clone(),
            path: rel,
        });
    }
    let manifest = Manifest {
        alphabet: "alphabet.json".into(),
        utterances: entries,
    };
    let manifest_path = dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&manifest_path, json.as_bytes()).map_err(|e| Error::io(&manifest_path, e))
}

/// Loads a corpus directory written by [`save_corpus`], in manifest order.
pub fn load_corpus(dir: &Path) -> Result<(LabelAlphabet, Vec<FrameSequence>)> {
    let manifest_path = dir.join("manifest.json");
    let manifest: Manifest = read_json(&manifest_path)?;
    let alphabet: LabelAlphabet = read_json(&dir.join(&manifest.alphabet))?;

    let mut corpus = Vec::with_capacity(manifest.utterances.len());
    for entry in &manifest.utterances {
        let path = dir.join(&entry.path);
        let (header, payload): (UtteranceHeader, Vec<f32>) = container::read(&path)?;
        let frames = Mat::from_f32(header.frames, header.dim, &payload)?;
        let seq = FrameSequence {
            id: header.id,
            signer_id: header.signer,
            word: header.word,
            frames,
            frame_labels: header.labels,
            peaks: header.peaks,
            signing_span: header.span,
        };
        seq.validate(&alphabet)?;
        corpus.push(seq);
    }
    Ok((alphabet, corpus))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| Error::Json {
        path: PathBuf::from(path),
        source: e,
    })
}
