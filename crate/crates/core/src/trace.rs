//! Replayable record of a construction.
//!
//! Text form, one step per line, each prefixed by its index:
//!
//! ```text
//! 0 instance 3 4 2,2,2,2,3,3
//! 1 note lambda odd, case 2b, m = v - 1 = 3, chord route
//! 2 base one-factor 0-1-2-3;0-1-3-2;0-2;0-3;1-2;1-3
//! 3 remove 0-1-2-3
//! 4 note chorded 4-cycle, chord at x_2
//! 5 switch 2 1 3 3
//! 6 note lasso (3-0-1)[1-2]
//! 7 add 0-1-3
//! ```
//!
//! Line 0 holds `lambda v lengths`; cycles are written `0-1-2` and joined by
//! `;`; an empty list is `-`. A switch line reads `alpha beta origin terminus`.

use std::fmt;
use std::str::FromStr;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::packing::Packing;
use crate::switching::{perform_switch, AppliedSwitch, SwitchRequest};
use crate::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// The provider's decomposition, of `lambda K_v - I` when `one_factor`.
    Base { one_factor: bool, cycles: Vec<Cycle> },
    Remove(Cycle),
    Add(Cycle),
    Switch(AppliedSwitch),
    Note(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildTrace {
    pub lambda: u32,
    pub v: usize,
    pub lengths: Vec<usize>,
    pub steps: Vec<TraceStep>,
}

impl BuildTrace {
    pub fn new(lambda: u32, v: usize, lengths: Vec<usize>) -> BuildTrace {
        BuildTrace {
            lambda,
            v,
            lengths,
            steps: Vec::new(),
        }
    }

    pub fn switch_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, TraceStep::Switch(_))).count()
    }

    /// Re-executes the steps from the recorded base decomposition.
    pub fn replay(&self) -> Result<Packing> {
        let mut steps = self.steps.iter().filter(|s| !matches!(s, TraceStep::Note(_)));
        let mut packing = match steps.next() {
            Some(TraceStep::Base { cycles, .. }) => Packing::new(self.lambda, self.v, cycles.clone())
                .map_err(|e| Error::Replay(format!("base decomposition: {e}")))?,
            None if self.lengths.is_empty() => Packing::empty(self.lambda, self.v),
            _ => return Err(Error::Replay("trace must start with a base step".into())),
        };
        for step in steps {
            match step {
                TraceStep::Base { .. } => {
                    return Err(Error::Replay("second base step".into()));
                }
                TraceStep::Remove(c) => packing.remove_cycle(c)?,
                TraceStep::Add(c) => packing.add_cycle(c.clone())?,
                TraceStep::Switch(s) => {
                    let r = perform_switch(&packing, s.request)?;
                    if r.terminus != s.terminus {
                        return Err(Error::Replay(format!(
                            "switch {:?} ended at {} instead of {}",
                            s.request, r.terminus, s.terminus
                        )));
                    }
                    packing = r.packing;
                }
                TraceStep::Note(_) => {}
            }
        }
        Ok(packing)
    }
}

fn write_cycles(f: &mut fmt::Formatter<'_>, cycles: &[Cycle]) -> fmt::Result {
    if cycles.is_empty() {
        return f.write_str("-");
    }
    for (i, c) in cycles.iter().enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Base { one_factor, cycles } => {
                let host = if *one_factor { "one-factor" } else { "plain" };
                write!(f, "base {host} ")?;
                write_cycles(f, cycles)
            }
            TraceStep::Remove(c) => write!(f, "remove {c}"),
            TraceStep::Add(c) => write!(f, "add {c}"),
            TraceStep::Switch(s) => write!(
                f,
                "switch {} {} {} {}",
                s.request.alpha, s.request.beta, s.request.origin, s.terminus
            ),
            TraceStep::Note(text) => write!(f, "note {text}"),
        }
    }
}

impl fmt::Display for BuildTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0 instance {} {} ", self.lambda, self.v)?;
        if self.lengths.is_empty() {
            f.write_str("-")?;
        } else {
            let ls: Vec<String> = self.lengths.iter().map(usize::to_string).collect();
            f.write_str(&ls.join(","))?;
        }
        writeln!(f)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{} {s}", i + 1)?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::TraceParse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, format!("bad number {s:?}")))
}

fn parse_cycle(line: usize, s: &str) -> Result<Cycle> {
    let vs = s
        .split('-')
        .map(|x| parse_num::<Vertex>(line, x))
        .collect::<Result<Vec<_>>>()?;
    Cycle::new(vs).map_err(|e| parse_err(line, e.to_string()))
}

fn parse_cycles(line: usize, s: &str) -> Result<Vec<Cycle>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(';').map(|c| parse_cycle(line, c)).collect()
}

impl FromStr for BuildTrace {
    type Err = Error;

    fn from_str(text: &str) -> Result<BuildTrace> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(0, "empty trace"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 5 || h[0] != "0" || h[1] != "instance" {
            return Err(parse_err(0, "expected `0 instance lambda v lengths`"));
        }
        let lengths = if h[4] == "-" {
            Vec::new()
        } else {
            h[4].split(',').map(|x| parse_num(0, x)).collect::<Result<Vec<usize>>>()?
        };
        let mut trace = BuildTrace::new(parse_num(0, h[2])?, parse_num(0, h[3])?, lengths);
        for (n, line) in lines {
            let (idx, rest) = line
                .split_once(' ')
                .ok_or_else(|| parse_err(n, "missing operation"))?;
            if parse_num::<usize>(n, idx)? != trace.steps.len() + 1 {
                return Err(parse_err(n, "step indices must increase by one"));
            }
            let (op, args) = rest.split_once(' ').unwrap_or((rest, ""));
            let step = match op {
                "base" => {
                    let (host, cycles) = args
                        .split_once(' ')
                        .ok_or_else(|| parse_err(n, "base needs host and cycles"))?;
                    let one_factor = match host {
                        "plain" => false,
                        "one-factor" => true,
                        _ => return Err(parse_err(n, format!("unknown host {host:?}"))),
                    };
                    TraceStep::Base {
                        one_factor,
                        cycles: parse_cycles(n, cycles.trim())?,
                    }
                }
                "remove" => TraceStep::Remove(parse_cycle(n, args.trim())?),
                "add" => TraceStep::Add(parse_cycle(n, args.trim())?),
                "switch" => {
                    let xs = args
                        .split_whitespace()
                        .map(|x| parse_num::<Vertex>(n, x))
                        .collect::<Result<Vec<_>>>()?;
                    let [alpha, beta, origin, terminus] = xs[..] else {
                        return Err(parse_err(n, "switch needs four vertices"));
                    };
                    TraceStep::Switch(AppliedSwitch {
                        request: SwitchRequest {
                            alpha,
                            beta,
                            origin,
                        },
                        terminus,
                    })
                }
                "note" => TraceStep::Note(args.to_string()),
                _ => return Err(parse_err(n, format!("unknown operation {op:?}"))),
            };
            trace.steps.push(step);
        }
        Ok(trace)
    }
}
