//! Law reports, quantification modes and resource guards shared by every
//! checker.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monad::TElement;

/// Limits on what may be enumerated exhaustively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Largest instance space quantified exhaustively.
    pub max_instances: u128,
    /// Largest base over which `exp` carriers are listed.
    pub max_exp_base: usize,
    /// Largest base over which `lambda` and `incl` carriers are listed.
    pub max_lattice_base: usize,
    /// Seed and sample count used when an exhaustive request falls back.
    pub fallback_seed: u64,
    pub fallback_samples: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_instances: 1_000_000,
            max_exp_base: 7,
            max_lattice_base: 4,
            fallback_seed: 42,
            fallback_samples: 10_000,
        }
    }
}

impl Guards {
    pub fn check_count(&self, count: u128, what: &str) -> Result<()> {
        if count > self.max_instances {
            Err(Error::Resource(format!(
                "{what}: {count} instances exceed the limit of {}",
                self.max_instances
            )))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    pub mode: Mode,
    pub guards: Guards,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions::exhaustive()
    }
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        CheckOptions {
            mode: Mode::Exhaustive,
            guards: Guards::default(),
        }
    }

    pub fn sampled(seed: u64, samples: usize) -> Self {
        CheckOptions {
            mode: Mode::Sampled { seed, samples },
            guards: Guards::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The law was not run because its hypothesis did not hold.
    PreconditionFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    pub fn new(inputs: &[&TElement], lhs: &TElement, rhs: &TElement) -> Self {
        Counterexample {
            inputs: inputs.iter().map(|e| e.render()).collect(),
            lhs: lhs.render(),
            rhs: rhs.render(),
        }
    }
}

/// How the instances of a law were produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "regime")]
pub enum Regime {
    Exhaustive,
    Sampled {
        seed: u64,
        samples: usize,
        /// Set when exhaustive quantification was requested but refused.
        #[serde(skip_serializing_if = "Option::is_none")]
        fallback: Option<String>,
    },
}

impl Regime {
    pub fn is_exhaustive(&self) -> bool {
        matches!(self, Regime::Exhaustive)
    }

    pub fn fell_back(&self) -> bool {
        matches!(
            self,
            Regime::Sampled {
                fallback: Some(_),
                ..
            }
        )
    }
}

/// Outcome of one law check. A failing report always carries a
/// counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub status: Status,
    pub instances: u64,
    pub regime: Regime,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<LawReport>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn precondition_failed(law: impl Into<String>, why: impl Into<String>) -> Self {
        LawReport {
            law: law.into(),
            status: Status::PreconditionFailed,
            instances: 0,
            regime: Regime::Exhaustive,
            counterexample: None,
            note: Some(why.into()),
            parts: Vec::new(),
        }
    }

    /// Conjunction of sub-reports; the first failing part supplies the
    /// counterexample.
    pub fn conjunction(law: impl Into<String>, parts: Vec<LawReport>) -> Self {
        let status = if parts.iter().any(|p| p.status == Status::Fail) {
            Status::Fail
        } else if parts.iter().any(|p| p.status == Status::PreconditionFailed) {
            Status::PreconditionFailed
        } else {
            Status::Pass
        };
        let counterexample = parts
            .iter()
            .find(|p| p.status == Status::Fail)
            .and_then(|p| p.counterexample.clone());
        let regime = parts
            .iter()
            .map(|p| p.regime.clone())
            .find(|r| !r.is_exhaustive())
            .unwrap_or(Regime::Exhaustive);
        LawReport {
            law: law.into(),
            status,
            instances: parts.iter().map(|p| p.instances).sum(),
            regime,
            counterexample,
            note: None,
            parts,
        }
    }

    /// Every leaf (or this report itself when it has no parts).
    pub fn leaves(&self) -> Vec<&LawReport> {
        if self.parts.is_empty() {
            vec![self]
        } else {
            self.parts.iter().flat_map(|p| p.leaves()).collect()
        }
    }

    pub fn part(&self, law: &str) -> Option<&LawReport> {
        self.parts.iter().find(|p| p.law == law)
    }
}

/// Runs `check` over an instance space: the list produced by `exhaustive`
/// when the options ask for it and the guards allow it, otherwise `samples`
/// draws from `sample`. Stops at the first counterexample.
pub(crate) fn quantify<I>(
    law: &str,
    opts: &CheckOptions,
    exhaustive: impl FnOnce() -> Result<Vec<I>>,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> Result<I>,
    mut check: impl FnMut(&I) -> Result<Option<Counterexample>>,
) -> Result<LawReport> {
    let (seed, samples, fallback) = match opts.mode {
        Mode::Exhaustive => match exhaustive() {
            Ok(space) => {
                let mut instances = 0;
                for inst in &space {
                    instances += 1;
                    if let Some(ce) = check(inst)? {
                        return Ok(finish(law, instances, Regime::Exhaustive, Some(ce)));
                    }
                }
                return Ok(finish(law, instances, Regime::Exhaustive, None));
            }
            Err(Error::Resource(why)) | Err(Error::Capability(why)) => (
                opts.guards.fallback_seed,
                opts.guards.fallback_samples,
                Some(format!("exhaustive quantification refused ({why})")),
            ),
            Err(e) => return Err(e),
        },
        Mode::Sampled { seed, samples } => (seed, samples, None),
    };
    let regime = Regime::Sampled {
        seed,
        samples,
        fallback,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = 0;
    for _ in 0..samples {
        let inst = sample(&mut rng)?;
        instances += 1;
        if let Some(ce) = check(&inst)? {
            return Ok(finish(law, instances, regime, Some(ce)));
        }
    }
    Ok(finish(law, instances, regime, None))
}

fn finish(law: &str, instances: u64, regime: Regime, ce: Option<Counterexample>) -> LawReport {
    LawReport {
        law: law.to_string(),
        status: if ce.is_some() {
            Status::Fail
        } else {
            Status::Pass
        },
        instances,
        regime,
        counterexample: ce,
        note: None,
        parts: Vec::new(),
    }
}

/// `None` when both sides agree, otherwise a counterexample.
pub(crate) fn compare(
    inputs: &[&TElement],
    lhs: &TElement,
    rhs: &TElement,
) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample::new(inputs, lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(law: &str, status: Status, n: u64) -> LawReport {
        LawReport {
            law: law.into(),
            status,
            instances: n,
            regime: Regime::Exhaustive,
            counterexample: (status == Status::Fail).then(|| Counterexample {
                inputs: vec![law.into()],
                lhs: "l".into(),
                rhs: "r".into(),
            }),
            note: None,
            parts: vec![],
        }
    }

    #[test]
    fn conjunction_keeps_first_counterexample() {
        let r = LawReport::conjunction(
            "all",
            vec![
                leaf("a", Status::Pass, 3),
                leaf("b", Status::Fail, 1),
                leaf("c", Status::Fail, 2),
            ],
        );
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.instances, 6);
        assert_eq!(r.counterexample.unwrap().inputs, vec!["b"]);
    }

    #[test]
    fn exhaustive_refusal_falls_back_with_annotation() {
        let r = quantify(
            "x",
            &CheckOptions::exhaustive(),
            || -> Result<Vec<u8>> { Err(Error::Resource("too big".into())) },
            |_| Ok(0u8),
            |_| Ok(None),
        )
        .unwrap();
        assert!(r.passed());
        assert!(r.regime.fell_back());
        assert_eq!(r.instances, 10_000);
    }
}
