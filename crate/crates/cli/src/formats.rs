//! JSON documents read and written by the command line.
//!
//! Files are compact JSON followed by a newline. Packing files store cycles
//! in canonical form, sorted, and the leave as one `[u, w]` pair per edge
//! copy, so equal packings give byte-identical files.

use std::fmt;
use std::path::Path;

use cyclepack::{Cycle, FeasibilityVerdict, Instance, Packing};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum FormatError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Model(cyclepack::Error),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "{e}"),
            FormatError::Json(e) => write!(f, "malformed JSON: {e}"),
            FormatError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError::Io(e)
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<cyclepack::Error> for FormatError {
    fn from(e: cyclepack::Error) -> Self {
        FormatError::Model(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub lambda: u32,
    pub v: usize,
    pub lengths: Vec<usize>,
}

impl InstanceFile {
    pub fn from_instance(i: &Instance) -> Self {
        InstanceFile {
            lambda: i.lambda(),
            v: i.v(),
            lengths: i.lengths().to_vec(),
        }
    }

    /// Lengths need not be sorted in the file.
    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        Ok(Instance::from_unsorted(self.lambda, self.v, self.lengths.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PackingFile {
    pub lambda: u32,
    pub v: usize,
    pub cycles: Vec<Vec<usize>>,
    pub leave: Vec<[usize; 2]>,
}

impl PackingFile {
    pub fn from_packing(p: &Packing) -> Self {
        let sorted = p.sorted();
        PackingFile {
            lambda: p.lambda(),
            v: p.v(),
            cycles: sorted.cycles().iter().map(|c| c.vertices().to_vec()).collect(),
            leave: p.leave().edge_list().into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }

    /// The cycles as written, without checking them against any host.
    pub fn parse_cycles(&self) -> Result<Vec<Cycle>, FormatError> {
        Ok(self
            .cycles
            .iter()
            .map(|c| Cycle::new(c.clone()))
            .collect::<Result<_, _>>()?)
    }

    /// Rebuilds the packing; the recorded leave must match the cycles.
    pub fn to_packing(&self) -> Result<Packing, FormatError> {
        let p = Packing::new(self.lambda, self.v, self.parse_cycles()?)?;
        if !self.leave_matches(&p) {
            return Err(FormatError::Model(cyclepack::Error::PreconditionViolated(
                "recorded leave does not match the cycles".into(),
            )));
        }
        Ok(p)
    }

    pub fn leave_matches(&self, p: &Packing) -> bool {
        let mut recorded: Vec<(usize, usize)> = self
            .leave
            .iter()
            .map(|&[x, y]| (x.min(y), x.max(y)))
            .collect();
        recorded.sort_unstable();
        recorded == p.leave().edge_list()
    }
}

/// Verdict document printed by `check`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub lambda: u32,
    pub v: usize,
    pub lengths: Vec<usize>,
    pub delta: i64,
    pub epsilon: Option<i64>,
    pub feasible: bool,
    pub failed: Vec<String>,
}

impl VerdictDoc {
    pub fn new(i: &Instance, verdict: &FeasibilityVerdict) -> Self {
        VerdictDoc {
            lambda: i.lambda(),
            v: i.v(),
            lengths: i.lengths().to_vec(),
            delta: verdict.delta,
            epsilon: verdict.epsilon,
            feasible: verdict.feasible(),
            failed: verdict
                .failed_conditions
                .iter()
                .map(|c| c.roman().to_string())
                .collect(),
        }
    }
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    Ok(std::fs::write(path, text)?)
}

/// Parses `3,4,5`; the empty string is the empty list.
pub fn parse_lengths(s: &str) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad length {x:?} in {s:?}"))
        })
        .collect()
}

/// Parses `1,2,5..7` into a sorted, duplicate-free list.
pub fn parse_set(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let bad = || format!("bad value {item:?} in {s:?}");
        match item.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.parse().map_err(|_| bad())?;
                let b: usize = b.parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
