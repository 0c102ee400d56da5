//! Flat `key = value` model configuration.
//!
//! ```text
//! # Brownian motion with drift
//! model.type = brownian
//! model.drift = -1
//! model.sigma = 1
//! ```
//!
//! Recognised keys:
//!
//! | key | applies to | default |
//! |-----|-----------|---------|
//! | `model.type` | all: `brownian`, `cramer_lundberg`, `jump_diffusion` | required |
//! | `model.id` | all | the model type |
//! | `model.drift` | brownian, jump_diffusion | required |
//! | `model.sigma` | brownian (required), jump_diffusion | 0 for jump_diffusion |
//! | `model.lambda` | cramer_lundberg, jump_diffusion | required |
//! | `model.claim_rate`, `model.premium` | cramer_lundberg | required |
//! | `model.jumps` | jump_diffusion: `weight:rate:sign, ...` with sign `+`/`-` | required |
//! | `sim.paths`, `sim.seed`, `sim.step` | all | 100000, 0, 0.01 |
//! | `sim.bridge` | all: `true`/`false` | true |

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{JumpComponent, JumpSign, JumpSpec, LevyModel};

const KNOWN_KEYS: &[&str] = &[
    "model.type",
    "model.id",
    "model.drift",
    "model.sigma",
    "model.lambda",
    "model.claim_rate",
    "model.premium",
    "model.jumps",
    "sim.paths",
    "sim.seed",
    "sim.step",
    "sim.bridge",
];

/// Run settings that may be given in the configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunDefaults {
    pub model_id: String,
    pub paths: u64,
    pub seed: u64,
    pub step: f64,
    pub barrier_correction: bool,
}

impl RunDefaults {
    fn with_id(model_id: String) -> Self {
        Self { model_id, paths: 100_000, seed: 0, step: 0.01, barrier_correction: true }
    }
}

struct Entries {
    map: BTreeMap<String, (String, usize)>,
}

impl Entries {
    fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.map.get(key).map(|(v, l)| (v.as_str(), *l))
    }

    fn number(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some((raw, line)) => raw
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Some)
                .ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("{key}: expected a finite number, got {raw:?}"),
                }),
        }
    }

    fn required(&self, key: &str, kind: &str) -> Result<f64> {
        self.number(key)?.ok_or_else(|| {
            Error::Validation(format!("missing required key {key} for model.type={kind}"))
        })
    }

    fn integer(&self, key: &str) -> Result<Option<u64>> {
        match self.get(key) {
            None => Ok(None),
            Some((raw, line)) => raw.parse::<u64>().map(Some).map_err(|_| Error::Parse {
                line,
                msg: format!("{key}: expected a non-negative integer, got {raw:?}"),
            }),
        }
    }

    fn only(&self, allowed: &[&str], kind: &str) -> Result<()> {
        for (key, (_, line)) in &self.map {
            if key.starts_with("model.") && !allowed.contains(&key.as_str()) {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("key {key} does not apply to model.type={kind}"),
                });
            }
        }
        Ok(())
    }
}

fn tokenize(text: &str) -> Result<Entries> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected key=value, got {content:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(Error::Parse { line, msg: format!("unknown key {key:?}") });
        }
        if value.is_empty() {
            return Err(Error::Parse { line, msg: format!("empty value for {key}") });
        }
        if map.insert(key.to_string(), (value.to_string(), line)).is_some() {
            return Err(Error::Parse { line, msg: format!("duplicate key {key}") });
        }
    }
    Ok(Entries { map })
}

fn parse_jumps(raw: &str, line: usize) -> Result<Vec<JumpComponent>> {
    raw.split(',')
        .map(|item| {
            let parts: Vec<&str> = item.trim().split(':').map(str::trim).collect();
            let bad = || Error::Parse {
                line,
                msg: format!("model.jumps: expected weight:rate:sign, got {:?}", item.trim()),
            };
            let [weight, rate, sign] = parts.as_slice() else {
                return Err(bad());
            };
            let weight = weight.parse::<f64>().map_err(|_| bad())?;
            let rate = rate.parse::<f64>().map_err(|_| bad())?;
            let sign = match *sign {
                "+" | "up" => JumpSign::Up,
                "-" | "down" => JumpSign::Down,
                _ => return Err(bad()),
            };
            Ok(JumpComponent::new(weight, rate, sign))
        })
        .collect()
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<(LevyModel, RunDefaults)> {
    let entries = tokenize(text)?;
    let (kind, kind_line) = entries
        .get("model.type")
        .ok_or_else(|| Error::Validation("missing required key model.type".into()))?;

    let model = match kind {
        "brownian" => {
            entries.only(&["model.type", "model.id", "model.drift", "model.sigma"], kind)?;
            LevyModel::brownian(
                entries.required("model.drift", kind)?,
                entries.required("model.sigma", kind)?,
            )?
        }
        "cramer_lundberg" => {
            entries.only(
                &["model.type", "model.id", "model.lambda", "model.claim_rate", "model.premium"],
                kind,
            )?;
            LevyModel::cramer_lundberg(
                entries.required("model.lambda", kind)?,
                entries.required("model.claim_rate", kind)?,
                entries.required("model.premium", kind)?,
            )?
        }
        "jump_diffusion" => {
            entries.only(
                &[
                    "model.type",
                    "model.id",
                    "model.drift",
                    "model.sigma",
                    "model.lambda",
                    "model.jumps",
                ],
                kind,
            )?;
            let (raw, line) = entries.get("model.jumps").ok_or_else(|| {
                Error::Validation("missing required key model.jumps for model.type=jump_diffusion".into())
            })?;
            let jumps = JumpSpec::new(entries.required("model.lambda", kind)?, parse_jumps(raw, line)?);
            LevyModel::jump_diffusion(
                entries.required("model.drift", kind)?,
                entries.number("model.sigma")?.unwrap_or(0.0),
                jumps,
            )?
        }
        other => {
            return Err(Error::Parse {
                line: kind_line,
                msg: format!(
                    "model.type must be brownian, cramer_lundberg or jump_diffusion, got {other:?}"
                ),
            })
        }
    };

    let model_id = match entries.get("model.id") {
        Some((id, line)) => {
            if !id.chars().all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c)) {
                return Err(Error::Parse {
                    line,
                    msg: format!("model.id may only contain [A-Za-z0-9_.-], got {id:?}"),
                });
            }
            id.to_string()
        }
        None => kind.to_string(),
    };
    let mut defaults = RunDefaults::with_id(model_id);
    if let Some(p) = entries.integer("sim.paths")? {
        defaults.paths = p;
    }
    if let Some(s) = entries.integer("sim.seed")? {
        defaults.seed = s;
    }
    if let Some(step) = entries.number("sim.step")? {
        defaults.step = step;
    }
    if let Some((raw, line)) = entries.get("sim.bridge") {
        defaults.barrier_correction = match raw {
            "true" => true,
            "false" => false,
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("sim.bridge: expected true or false, got {raw:?}"),
                })
            }
        };
    }
    Ok((model, defaults))
}
