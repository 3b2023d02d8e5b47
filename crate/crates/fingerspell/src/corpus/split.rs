//! Adaptation/tune/test splits following the 8-fold protocol.
//!
//! The adaptation set is the first `adapt_fraction` of the test signer's
//! words in id order; the last 80% is carved into eight equal blocks, and
//! fold `f` pairs block `f` (test) with block `f+1 mod 8` (tune). The fold
//! universe is fixed at the last 80% regardless of `adapt_fraction`, so arms
//! with different adaptation amounts are evaluated on identical folds.

use crate::corpus::types::FrameSequence;
use crate::error::{Error, Result};

pub const N_FOLDS: usize = 8;
const ALLOWED_FRACTIONS: [f64; 4] = [0.0, 0.05, 0.10, 0.20];

/// Index lists into the corpus slice passed to [`split_corpus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndices {
    /// All utterances of non-test signers.
    pub train: Vec<usize>,
    pub adapt: Vec<usize>,
    pub tune: Vec<usize>,
    pub test: Vec<usize>,
}

pub fn split_corpus(
    corpus: &[FrameSequence],
    test_signer: &str,
    adapt_fraction: f64,
    fold_index: usize,
) -> Result<SplitIndices> {
    if !ALLOWED_FRACTIONS
        .iter()
        .any(|&f| (f - adapt_fraction).abs() < 1e-9)
    {
        return Err(Error::config(format!(
            "adapt_fraction {adapt_fraction} not in {ALLOWED_FRACTIONS:?}"
        )));
    }
    if fold_index >= N_FOLDS {
        return Err(Error::config(format!(
            "fold {fold_index} out of range 0..{N_FOLDS}"
        )));
    }

    let train: Vec<usize> = corpus
        .iter()
        .enumerate()
        .filter(|(_, s)| s.signer_id != test_signer)
        .map(|(i, _)| i)
        .collect();
    let mut held: Vec<usize> = corpus
        .iter()
        .enumerate()
        .filter(|(_, s)| s.signer_id == test_signer)
        .map(|(i, _)| i)
        .collect();
    if held.is_empty() {
        return Err(Error::data(format!("unknown signer: {test_signer}")));
    }
    held.sort_by(|&a, &b| corpus[a].id.cmp(&corpus[b].id));

    let n = held.len();
    let n_adapt = (adapt_fraction * n as f64).round() as usize;
    let fold_start = (0.2 * n as f64).round() as usize;
    let adapt = held[..n_adapt].to_vec();
    let universe = &held[fold_start..];
    let m = universe.len();

    let block = |b: usize| -> &[usize] { &universe[b * m / N_FOLDS..(b + 1) * m / N_FOLDS] };
    let test = block(fold_index).to_vec();
    let tune = block((fold_index + 1) % N_FOLDS).to_vec();

    Ok(SplitIndices {
        train,
        adapt,
        tune,
        test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::Mat;

    fn corpus(signers: &[(&str, usize)]) -> Vec<FrameSequence> {
        let mut out = Vec::new();
        for (signer, n) in signers {
            for i in 0..*n {
                out.push(FrameSequence {
                    id: format!("{signer}_u{i:04}"),
                    signer_id: signer.to_string(),
                    word: vec!["A".into()],
                    frames: Mat::zeros(1, 1),
                    frame_labels: None,
                    peaks: None,
                    signing_span: None,
                });
            }
        }
        out
    }

    #[test]
    fn six_hundred_words_fold_geometry() {
        let c = corpus(&[("a", 600), ("b", 600)]);
        let mut seen = std::collections::BTreeSet::new();
        for fold in 0..8 {
            let s = split_corpus(&c, "b", 0.20, fold).unwrap();
            assert_eq!(s.adapt.len(), 120);
            assert_eq!(s.tune.len(), 60);
            assert_eq!(s.test.len(), 60);
            assert_eq!(s.train.len(), 600);
            for i in &s.test {
                assert!(seen.insert(*i), "test sets overlap at {i}");
            }
        }
        assert_eq!(seen.len(), 480);
    }

    #[test]
    fn zero_fraction_gives_empty_adapt() {
        let c = corpus(&[("a", 40), ("b", 40)]);
        let s = split_corpus(&c, "b", 0.0, 0).unwrap();
        assert!(s.adapt.is_empty());
    }

    #[test]
    fn union_of_test_folds_is_the_non_adapt_eighty_percent() {
        let c = corpus(&[("a", 10), ("b", 40)]);
        let mut union = std::collections::BTreeSet::new();
        for fold in 0..8 {
            let s = split_corpus(&c, "b", 0.20, fold).unwrap();
            union.extend(s.test.iter().copied());
            // folds never touch the adapt set
            for i in &s.test {
                assert!(!s.adapt.contains(i));
            }
            for i in &s.tune {
                assert!(!s.adapt.contains(i));
            }
        }
        let s = split_corpus(&c, "b", 0.20, 0).unwrap();
        let expected: std::collections::BTreeSet<usize> = (0..c.len())
            .filter(|i| c[*i].signer_id == "b" && !s.adapt.contains(i))
            .collect();
        assert_eq!(union, expected);
    }

    #[test]
    fn fold_universe_is_identical_across_fractions() {
        let c = corpus(&[("a", 10), ("b", 60)]);
        for fold in 0..8 {
            let s0 = split_corpus(&c, "b", 0.0, fold).unwrap();
            let s20 = split_corpus(&c, "b", 0.20, fold).unwrap();
            assert_eq!(s0.test, s20.test);
            assert_eq!(s0.tune, s20.tune);
        }
    }

    #[test]
    fn errors() {
        let c = corpus(&[("a", 10)]);
        assert!(split_corpus(&c, "nobody", 0.0, 0).is_err());
        assert!(split_corpus(&c, "a", 0.0, 8).is_err());
        assert!(split_corpus(&c, "a", 0.15, 0).is_err());
    }
}
