//! Run configuration from a flat key-value file with command-line overrides.
//!
//! Keys use dotted names (`noise.p`, `run.mode`, ...). A TOML file may spell
//! them either flat or as tables; both flatten to the same map. Overrides are
//! inserted into the same map before parsing, so every value goes through one
//! validator and errors always name the offending key.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use colorswitch_core::protocol::Readout;
use colorswitch_core::{Mode, NoiseModel, TieBreak};
use serde::{Deserialize, Serialize};
use toml::Value;

use crate::error::CliError;

pub const KEYS: [&str; 14] = [
    "noise.kind",
    "noise.p",
    "noise.p_i",
    "noise.p_m",
    "noise.p_1",
    "noise.p_2",
    "run.mode",
    "run.shots",
    "run.seed",
    "run.readout",
    "sweep.p_values",
    "output.path",
    "reduction.tiebreak",
    "run.chunk",
];

/// Flat `key → value` map.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FlatConfig(pub BTreeMap<String, Value>);

impl FlatConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config {
            key: String::from("<file>"),
            message: e.message().to_string(),
        })?;
        let mut out = BTreeMap::new();
        flatten("", &Value::Table(table), &mut out);
        Ok(Self(out))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_string(), value.into());
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut BTreeMap<String, Value>) {
    match v {
        Value::Table(t) => {
            for (k, v) in t {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        other => {
            out.insert(prefix.to_string(), other.clone());
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NoiseSpec {
    Uniform { p: f64 },
    Multiparameter { p_i: f64, p_m: f64, p_1: f64, p_2: f64 },
}

impl NoiseSpec {
    pub fn model(&self) -> NoiseModel {
        match *self {
            NoiseSpec::Uniform { p } => NoiseModel::uniform(p),
            NoiseSpec::Multiparameter { p_i, p_m, p_1, p_2 } => {
                NoiseModel::multiparameter(p_i, p_m, p_1, p_2)
            }
        }
        .expect("validated at parse time")
    }

    /// The CSV `p` field: a number, or `p_i;p_m;p_1;p_2`.
    pub fn label(&self) -> String {
        match *self {
            NoiseSpec::Uniform { p } => format!("{p}"),
            NoiseSpec::Multiparameter { p_i, p_m, p_1, p_2 } => format!("{p_i};{p_m};{p_1};{p_2}"),
        }
    }

    pub fn parse_label(s: &str) -> Option<Self> {
        let parts: Vec<f64> = s.split(';').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
        match parts[..] {
            [p] => Some(NoiseSpec::Uniform { p }),
            [p_i, p_m, p_1, p_2] => Some(NoiseSpec::Multiparameter { p_i, p_m, p_1, p_2 }),
            _ => None,
        }
    }

    pub fn uniform_p(&self) -> Option<f64> {
        match *self {
            NoiseSpec::Uniform { p } => Some(p),
            NoiseSpec::Multiparameter { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// One entry per sweep point.
    pub points: Vec<NoiseSpec>,
    pub mode: String,
    pub shots: u64,
    pub seed: u64,
    pub readout: String,
    pub tiebreak: String,
    pub output: PathBuf,
    /// Shots per parallel work item; does not affect results.
    pub chunk: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            points: vec![NoiseSpec::Uniform { p: 1e-3 }],
            mode: "ec".into(),
            shots: 100_000,
            seed: 0,
            readout: "expectation".into(),
            tiebreak: "lexmin".into(),
            output: PathBuf::from("results.csv"),
            chunk: 1 << 14,
        }
    }
}

fn bad(key: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        key: key.to_string(),
        message: message.into(),
    }
}

fn float(map: &BTreeMap<String, Value>, key: &str) -> Result<Option<f64>, CliError> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => {
            let x = match v {
                Value::Float(f) => *f,
                Value::Integer(i) => *i as f64,
                Value::String(s) => s.parse().map_err(|_| bad(key, format!("not a number: {s}")))?,
                _ => return Err(bad(key, "expected a number")),
            };
            probability(key, x).map(Some)
        }
    }
}

fn probability(key: &str, x: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(bad(key, format!("probability {x} outside [0, 1]")))
    }
}

fn unsigned(map: &BTreeMap<String, Value>, key: &str) -> Result<Option<u64>, CliError> {
    match map.get(key) {
        None => Ok(None),
        Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
        Some(Value::String(s)) => s.parse().map(Some).map_err(|_| bad(key, format!("not a nonnegative integer: {s}"))),
        Some(_) => Err(bad(key, "expected a nonnegative integer")),
    }
}

fn string(map: &BTreeMap<String, Value>, key: &str) -> Result<Option<String>, CliError> {
    match map.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(bad(key, "expected a string")),
    }
}

impl RunConfig {
    pub fn from_flat(flat: &FlatConfig) -> Result<Self, CliError> {
        let map = &flat.0;
        if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(bad(k, "unknown key"));
        }
        let mut c = RunConfig::default();

        let kind = string(map, "noise.kind")?.unwrap_or_else(|| "uniform".into());
        c.points = match kind.as_str() {
            "uniform" => {
                let list = match map.get("sweep.p_values") {
                    None => None,
                    Some(Value::Array(a)) => Some(
                        a.iter()
                            .map(|v| match v {
                                Value::Float(f) => probability("sweep.p_values", *f),
                                Value::Integer(i) => probability("sweep.p_values", *i as f64),
                                _ => Err(bad("sweep.p_values", "expected numbers")),
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    Some(Value::String(s)) => Some(
                        s.split(',')
                            .map(|t| {
                                t.trim()
                                    .parse::<f64>()
                                    .map_err(|_| bad("sweep.p_values", format!("not a number: {t}")))
                                    .and_then(|x| probability("sweep.p_values", x))
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                    ),
                    Some(_) => Err(bad("sweep.p_values", "expected a list of numbers"))?,
                };
                match (list, float(map, "noise.p")?) {
                    (Some(l), _) if l.is_empty() => return Err(bad("sweep.p_values", "empty list")),
                    (Some(l), _) => l.into_iter().map(|p| NoiseSpec::Uniform { p }).collect(),
                    (None, Some(p)) => vec![NoiseSpec::Uniform { p }],
                    (None, None) => c.points,
                }
            }
            "multiparameter" => {
                let get = |k: &str| float(map, k)?.ok_or_else(|| bad(k, "required for multiparameter noise"));
                vec![NoiseSpec::Multiparameter {
                    p_i: get("noise.p_i")?,
                    p_m: get("noise.p_m")?,
                    p_1: get("noise.p_1")?,
                    p_2: get("noise.p_2")?,
                }]
            }
            other => return Err(bad("noise.kind", format!("unknown noise kind `{other}`"))),
        };

        if let Some(m) = string(map, "run.mode")? {
            let mode = Mode::parse(&m).ok_or_else(|| bad("run.mode", format!("unknown mode `{m}`")))?;
            c.mode = mode.as_str().into();
        }
        if let Some(s) = unsigned(map, "run.shots")? {
            if s == 0 {
                return Err(bad("run.shots", "need at least one shot"));
            }
            c.shots = s;
        }
        if let Some(s) = unsigned(map, "run.seed")? {
            c.seed = s;
        }
        if let Some(s) = unsigned(map, "run.chunk")? {
            if s == 0 {
                return Err(bad("run.chunk", "must be positive"));
            }
            c.chunk = s;
        }
        if let Some(r) = string(map, "run.readout")? {
            parse_readout(&r).ok_or_else(|| bad("run.readout", format!("unknown readout `{r}`")))?;
            c.readout = r;
        }
        if let Some(t) = string(map, "reduction.tiebreak")? {
            parse_tiebreak(&t).ok_or_else(|| bad("reduction.tiebreak", format!("unknown tie-break `{t}`")))?;
            c.tiebreak = t;
        }
        if let Some(p) = string(map, "output.path")? {
            c.output = PathBuf::from(p);
        }
        Ok(c)
    }

    pub fn mode(&self) -> Mode {
        Mode::parse(&self.mode).expect("validated")
    }

    pub fn readout(&self) -> Readout {
        parse_readout(&self.readout).expect("validated")
    }

    pub fn tie_break(&self) -> TieBreak {
        parse_tiebreak(&self.tiebreak).expect("validated")
    }
}

pub fn parse_readout(s: &str) -> Option<Readout> {
    match s {
        "expectation" => Some(Readout::Expectation),
        "sample" => Some(Readout::Sample),
        _ => None,
    }
}

pub fn parse_tiebreak(s: &str) -> Option<TieBreak> {
    match s {
        "lexmin" => Some(TieBreak::LexMin),
        "lexmax" => Some(TieBreak::LexMax),
        "disabled" | "off" => Some(TieBreak::Disabled),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_and_flat_spellings_agree() {
        let a = FlatConfig::parse("\"noise.p\" = 0.002\n\"run.mode\" = \"ps\"\n").unwrap();
        let b = FlatConfig::parse("[noise]\np = 0.002\n[run]\nmode = \"ps\"\n").unwrap();
        assert_eq!(a, b);
        let c = RunConfig::from_flat(&a).unwrap();
        assert_eq!(c.points, [NoiseSpec::Uniform { p: 0.002 }]);
        assert_eq!(c.mode(), Mode::PostSelect);
    }

    #[test]
    fn overrides_replace_file_values() {
        let mut f = FlatConfig::parse("[run]\nshots = 10\nseed = 4\n").unwrap();
        f.set("run.shots", 99i64);
        let c = RunConfig::from_flat(&f).unwrap();
        assert_eq!((c.shots, c.seed), (99, 4));
    }

    #[test]
    fn errors_name_the_key() {
        for (text, key) in [
            ("[run]\nmode = \"xx\"", "run.mode"),
            ("[noise]\np = 1.5", "noise.p"),
            ("[run]\nshots = 0", "run.shots"),
            ("[bogus]\nk = 1", "bogus.k"),
            ("[noise]\nkind = \"multiparameter\"\np_i = 0.1", "noise.p_m"),
        ] {
            match RunConfig::from_flat(&FlatConfig::parse(text).unwrap()) {
                Err(CliError::Config { key: k, .. }) => assert_eq!(k, key),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn noise_labels_round_trip() {
        for n in [
            NoiseSpec::Uniform { p: 0.001 },
            NoiseSpec::Multiparameter { p_i: 1e-3, p_m: 1e-3, p_1: 1e-3, p_2: 3e-3 },
        ] {
            assert_eq!(NoiseSpec::parse_label(&n.label()), Some(n));
        }
        assert_eq!(NoiseSpec::parse_label("1;2"), None);
    }
}
