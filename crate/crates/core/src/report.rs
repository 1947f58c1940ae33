//! JSON verification reports and deterministic sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::field::{Field, FieldSpec};
use crate::graphs::AffineVertex;

/// Witnesses kept per report; further violations are only counted.
pub const MAX_WITNESSES: usize = 16;

/// Samples handled by one RNG stream.
pub const SAMPLE_BLOCK: u64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// Settings shared by all checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    /// Largest lifted component or enumerated graph to build.
    pub cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            mode: Mode::Sample,
            samples: 100_000,
            seed: 1,
            cap: crate::voltage::DEFAULT_LIFT_CAP,
        }
    }
}

impl CheckConfig {
    pub fn exhaustive() -> Self {
        CheckConfig {
            mode: Mode::Exhaustive,
            ..Self::default()
        }
    }

    pub fn sampled(samples: u64, seed: u64) -> Self {
        CheckConfig {
            mode: Mode::Sample,
            samples,
            seed,
            ..Self::default()
        }
    }
}

/// A vertex `v⊗h` as coordinate bit values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexLabel {
    pub v: [u8; 4],
    pub h: [u8; 4],
}

impl<F: Field> From<&AffineVertex<F>> for VertexLabel {
    fn from(a: &AffineVertex<F>) -> Self {
        VertexLabel {
            v: a.v.bits(),
            h: a.h.bits(),
        }
    }
}

/// The offending (or illustrating) walk and its voltage coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<VertexLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voltage: Option<Vec<u8>>,
}

impl Witness {
    pub fn new(description: impl Into<String>) -> Self {
        Witness {
            description: description.into(),
            vertices: Vec::new(),
            voltage: None,
        }
    }

    pub fn walk<F: Field>(mut self, walk: &[AffineVertex<F>]) -> Self {
        self.vertices = walk.iter().map(VertexLabel::from).collect();
        self
    }

    pub fn voltage(mut self, bits: Vec<u8>) -> Self {
        self.voltage = Some(bits);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub field: String,
    pub mode: Mode,
    pub samples: u64,
    pub violations: u64,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub details: serde_json::Map<String, Value>,
}

impl Report {
    pub fn new(check: impl Into<String>, field: FieldSpec, mode: Mode) -> Self {
        Report {
            check: check.into(),
            field: field.to_string(),
            mode,
            samples: 0,
            violations: 0,
            status: Status::Pass,
            witnesses: Vec::new(),
            details: serde_json::Map::new(),
        }
    }

    pub fn not_applicable(
        check: impl Into<String>,
        field: FieldSpec,
        mode: Mode,
        reason: &str,
    ) -> Self {
        let mut r = Self::new(check, field, mode);
        r.status = Status::NotApplicable;
        r.detail("reason", reason);
        r
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Counts a violation and keeps its witness if there is room.
    pub fn violation(&mut self, w: Witness) {
        self.violations += 1;
        self.status = Status::Fail;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    /// Records a failed sub-condition that has no natural witness.
    pub fn fail(&mut self, description: impl Into<String>) {
        self.violation(Witness::new(description));
    }

    /// Adds an illustrating witness without counting it as a violation.
    pub fn example(&mut self, w: Witness) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable detail");
        self.details.insert(key.to_string(), v);
    }

    /// Folds a sub-check into this report: counts, witnesses and status.
    pub fn absorb(&mut self, sub: Report) {
        self.samples += sub.samples;
        if sub.status == Status::Fail {
            self.status = Status::Fail;
            self.violations += sub.violations.max(1);
            for w in &sub.witnesses {
                if self.witnesses.len() < MAX_WITNESSES {
                    let description = format!("{}: {}", sub.check, w.description);
                    self.witnesses.push(Witness {
                        description,
                        ..w.clone()
                    });
                }
            }
        }
        let key = sub.check.clone();
        self.detail(&key, sub);
    }

    /// Merges violations found by [`sample_violations`].
    pub fn record_samples(&mut self, samples: u64, violations: Vec<Witness>) {
        self.samples += samples;
        for w in violations {
            self.violation(w);
        }
    }

    pub fn one_line(&self) -> String {
        format!(
            "{:<14} {:<8} {:?}: {} samples, {} violations -> {:?}",
            self.check, self.field, self.mode, self.samples, self.violations, self.status
        )
    }
}

/// RNG for block `block` of a run with seed `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs `trial` `samples` times in parallel and collects the returned
/// violations. Every block of [`SAMPLE_BLOCK`] trials has its own RNG
/// stream and results are concatenated in block order, so the output does
/// not depend on scheduling.
pub fn sample_violations<T, C>(samples: u64, seed: u64, trial: C) -> Vec<T>
where
    T: Send,
    C: Fn(&mut ChaCha8Rng) -> Option<T> + Sync,
{
    let blocks = samples.div_ceil(SAMPLE_BLOCK);
    let per_block: Vec<Vec<T>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let n = SAMPLE_BLOCK.min(samples - b * SAMPLE_BLOCK);
            (0..n).filter_map(|_| trial(&mut rng)).collect()
        })
        .collect();
    per_block.into_iter().flatten().collect()
}
