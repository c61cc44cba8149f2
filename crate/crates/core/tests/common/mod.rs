//! Seeded random dataset corpus shared by the integration suites.
//!
//! Sizes stay small on purpose: up to 4 training points on up to 2
//! data qubits, up to 2 swap copies and a label width of 1 or 2, so
//! every entry can be simulated exactly in well under a millisecond.

// Each test binary uses a different subset of these helpers.
#![allow(dead_code)]

use kernelshot::dataset::{ClassifierSpec, LabeledDataset};
use kernelshot::qstate::{amplitude_encode, QState};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct CorpusEntry {
    pub data: LabeledDataset,
    pub spec: ClassifierSpec,
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        if v.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-3 {
            return v;
        }
    }
}

/// Random dataset with every state on the same number of data qubits.
pub fn random_dataset(rng: &mut ChaCha8Rng) -> LabeledDataset {
    let points = rng.random_range(1..=4);
    let len = rng.random_range(2..=4_usize);
    let training: Vec<QState> = (0..points)
        .map(|_| QState::Pure(amplitude_encode(&random_vector(rng, len), "data").unwrap()))
        .collect();
    let labels: Vec<u8> = (0..points).map(|_| u8::from(rng.random_bool(0.5))).collect();
    let raw: Vec<f64> = (0..points).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let test = QState::Pure(amplitude_encode(&random_vector(rng, len), "data").unwrap());
    LabeledDataset::new(training, labels, weights, test).unwrap()
}

/// Random classifier settings compatible with `data`: swap-test specs
/// draw up to 2 copies, Hadamard-test specs always use one.
pub fn random_spec(rng: &mut ChaCha8Rng) -> ClassifierSpec {
    let label_width = rng.random_range(1..=2);
    if rng.random_bool(0.5) {
        ClassifierSpec::htc().with_label_width(label_width)
    } else {
        ClassifierSpec::stc(rng.random_range(1..=2)).with_label_width(label_width)
    }
}

pub fn corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| CorpusEntry {
            data: random_dataset(&mut rng),
            spec: random_spec(&mut rng),
        })
        .collect()
}
