use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitword::BitWord;
use crate::codec::CodecConfig;
use crate::error::{param, Error, Result};
use crate::mask_set::StuckPattern;

/// How random errors are drawn after writing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorModel {
    /// Exactly `weight` distinct positions flipped, uniformly chosen.
    ExactWeight { weight: usize },
    /// Each position flipped independently with probability `p`.
    Bsc { p: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimStats {
    pub trials: u64,
    /// Trials whose decoded message differs from the one written, including
    /// decoder failures.
    pub frame_errors: u64,
    pub uncorrectable: u64,
    pub label_misses: u64,
    /// Decoder returned a message, but the wrong one.
    pub miscorrections: u64,
    /// Uniformly placed stuck cells per trial, with uniform stuck values.
    pub stuck_count: usize,
    pub error_model: ErrorModel,
    pub seed: u64,
}

#[derive(Default)]
struct Tally {
    frame_errors: u64,
    uncorrectable: u64,
    label_misses: u64,
    miscorrections: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            frame_errors: self.frame_errors + o.frame_errors,
            uncorrectable: self.uncorrectable + o.uncorrectable,
            label_misses: self.label_misses + o.label_misses,
            miscorrections: self.miscorrections + o.miscorrections,
        }
    }
}

/// Monte Carlo run of write-with-defects, random errors, read-and-decode.
///
/// Trial `i` draws from its own ChaCha stream `(seed, i)`, so results do not
/// depend on scheduling or thread count.
pub fn simulate(
    cfg: &CodecConfig,
    trials: u64,
    stuck_count: usize,
    error_model: ErrorModel,
    seed: u64,
) -> Result<SimStats> {
    let n = cfg.n();
    if stuck_count > cfg.s() {
        return Err(Error::Capacity {
            count: stuck_count,
            max: cfg.s(),
        });
    }
    match error_model {
        ErrorModel::ExactWeight { weight } if weight > n => {
            return param(format!("error weight {weight} exceeds length {n}"));
        }
        ErrorModel::Bsc { p } if !(0.0..=1.0).contains(&p) => {
            return param(format!("flip probability {p} outside [0, 1]"));
        }
        _ => {}
    }

    let tally = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<Tally> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let message: Vec<bool> = (0..cfg.k_user()).map(|_| rng.random()).collect();
            let stuck = StuckPattern::new(
                sample(&mut rng, n, stuck_count)
                    .into_iter()
                    .map(|p| (p, rng.random()))
                    .collect(),
            )?;
            let mut stored = cfg.encode(&message, &stuck)?;
            // the medium forces stuck cells regardless of what was written
            for &(p, v) in stuck.entries() {
                stored.set(p, v);
            }
            let mut read = stored;
            read ^= &error_vector(&mut rng, n, error_model);

            let mut t = Tally::default();
            match cfg.decode(&read) {
                Ok(decoded) if decoded == message => {}
                Ok(_) => {
                    t.frame_errors = 1;
                    t.miscorrections = 1;
                }
                Err(Error::Uncorrectable) => {
                    t.frame_errors = 1;
                    t.uncorrectable = 1;
                }
                Err(Error::LabelMiss(_)) => {
                    t.frame_errors = 1;
                    t.label_misses = 1;
                }
                Err(e) => return Err(e),
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;

    Ok(SimStats {
        trials,
        frame_errors: tally.frame_errors,
        uncorrectable: tally.uncorrectable,
        label_misses: tally.label_misses,
        miscorrections: tally.miscorrections,
        stuck_count,
        error_model,
        seed,
    })
}

fn error_vector(rng: &mut ChaCha8Rng, n: usize, model: ErrorModel) -> BitWord {
    let mut e = BitWord::zeros(n);
    match model {
        ErrorModel::ExactWeight { weight } => {
            for p in sample(rng, n, weight) {
                e.set(p, true);
            }
        }
        ErrorModel::Bsc { p } => {
            for i in 0..n {
                if rng.random_bool(p) {
                    e.set(i, true);
                }
            }
        }
    }
    e
}
