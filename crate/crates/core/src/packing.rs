use std::fmt;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::multigraph::Multigraph;
use crate::Vertex;

/// `lambda K_v` minus the edges of `cycles`.
pub fn leave_of(lambda: u32, v: usize, cycles: &[Cycle]) -> Result<Multigraph> {
    let mut leave = Multigraph::complete(lambda, v);
    for c in cycles {
        if let Some(&bad) = c.vertices().iter().find(|&&x| x >= v) {
            return Err(Error::VertexOutOfRange { vertex: bad, v });
        }
        for (x, y) in c.edges() {
            if !leave.remove_edge(x, y, 1) {
                return Err(Error::OverusedEdge { x, y });
            }
        }
    }
    Ok(leave)
}

/// A cycle packing of `lambda K_v` together with its leave.
///
/// Packings built by the constructor pass through intermediate length lists,
/// so the list is not pinned to an [`Instance`]; see [`Packing::lengths`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Packing {
    lambda: u32,
    v: usize,
    cycles: Vec<Cycle>,
    leave: Multigraph,
}

impl Packing {
    pub fn new(lambda: u32, v: usize, cycles: Vec<Cycle>) -> Result<Packing> {
        let leave = leave_of(lambda, v, &cycles)?;
        Ok(Packing {
            lambda,
            v,
            cycles,
            leave,
        })
    }

    pub fn empty(lambda: u32, v: usize) -> Packing {
        Packing {
            lambda,
            v,
            cycles: Vec::new(),
            leave: Multigraph::complete(lambda, v),
        }
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn leave(&self) -> &Multigraph {
        &self.leave
    }

    /// Sorted multiset of cycle lengths.
    pub fn lengths(&self) -> Vec<usize> {
        let mut ls: Vec<usize> = self.cycles.iter().map(Cycle::len).collect();
        ls.sort_unstable();
        ls
    }

    /// Adds a cycle whose edges must all be in the leave.
    pub fn add_cycle(&mut self, c: Cycle) -> Result<()> {
        if let Some(&bad) = c.vertices().iter().find(|&&x| x >= self.v) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                v: self.v,
            });
        }
        let mut leave = self.leave.clone();
        for (x, y) in c.edges() {
            if !leave.remove_edge(x, y, 1) {
                return Err(Error::OverusedEdge { x, y });
            }
        }
        self.leave = leave;
        self.cycles.push(c);
        Ok(())
    }

    /// Removes the first occurrence of `c`, returning its edges to the leave.
    pub fn remove_cycle(&mut self, c: &Cycle) -> Result<()> {
        let i = self
            .cycles
            .iter()
            .position(|d| d == c)
            .ok_or_else(|| Error::MissingCycle(c.vertices().to_vec()))?;
        self.cycles.remove(i);
        for (x, y) in c.edges() {
            self.leave.add_edge(x, y, 1);
        }
        Ok(())
    }

    /// Canonically smallest cycle of the given length, if present.
    pub fn smallest_cycle_of_length(&self, len: usize) -> Option<Cycle> {
        self.cycles.iter().filter(|c| c.len() == len).min().cloned()
    }

    /// Cycles sorted canonically; used for file output and comparisons.
    pub fn sorted(&self) -> Packing {
        let mut p = self.clone();
        p.cycles.sort();
        p
    }

    pub(crate) fn replace_cycles(&mut self, cycles: Vec<Cycle>, leave: Multigraph) {
        self.cycles = cycles;
        self.leave = leave;
    }
}

/// First violation found by [`validate_packing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { cycle: usize, vertex: Vertex },
    BadLength { cycle: usize, length: usize },
    OverusedEdge { x: Vertex, y: Vertex },
    LengthMismatch { expected: Vec<usize>, found: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { cycle, vertex } => {
                write!(f, "cycle {cycle} uses out-of-range vertex {vertex}")
            }
            Violation::BadLength { cycle, length } => {
                write!(f, "cycle {cycle} has length {length} outside [2, v]")
            }
            Violation::OverusedEdge { x, y } => {
                write!(f, "OverusedEdge {{{x},{y}}}")
            }
            Violation::LengthMismatch { expected, found } => {
                write!(f, "length multiset {found:?} differs from {expected:?}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks ranges, then edge usage, then (when `strict`) the length multiset.
pub fn validate_packing(instance: &Instance, cycles: &[Cycle], strict: bool) -> Verdict {
    let v = instance.v();
    for (i, c) in cycles.iter().enumerate() {
        if let Some(&vertex) = c.vertices().iter().find(|&&x| x >= v) {
            return Verdict::Invalid(Violation::VertexOutOfRange { cycle: i, vertex });
        }
        if c.len() < 2 || c.len() > v {
            return Verdict::Invalid(Violation::BadLength {
                cycle: i,
                length: c.len(),
            });
        }
    }
    match leave_of(instance.lambda(), v, cycles) {
        Ok(_) => {}
        Err(Error::OverusedEdge { x, y }) => {
            return Verdict::Invalid(Violation::OverusedEdge { x, y })
        }
        Err(e) => unreachable!("ranges were checked: {e}"),
    }
    if strict {
        let mut found: Vec<usize> = cycles.iter().map(Cycle::len).collect();
        found.sort_unstable();
        if found != instance.lengths() {
            return Verdict::Invalid(Violation::LengthMismatch {
                expected: instance.lengths().to_vec(),
                found,
            });
        }
    }
    Verdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(vs: &[Vertex]) -> Cycle {
        Cycle::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn leave_examples() {
        assert!(leave_of(1, 3, &[cyc(&[0, 1, 2])]).unwrap().is_empty());

        let l = leave_of(2, 3, &[cyc(&[0, 1])]).unwrap();
        assert_eq!(l.multiplicity(0, 2), 2);
        assert_eq!(l.multiplicity(1, 2), 2);
        assert_eq!(l.multiplicity(0, 1), 0);

        let star = leave_of(1, 4, &[cyc(&[0, 1, 2])]).unwrap();
        assert_eq!(star.edge_list(), vec![(0, 3), (1, 3), (2, 3)]);

        assert_eq!(leave_of(2, 5, &[]).unwrap(), Multigraph::complete(2, 5));
        assert_eq!(
            leave_of(1, 4, &[cyc(&[0, 1, 2, 3]), cyc(&[0, 1, 2])]),
            Err(Error::OverusedEdge { x: 0, y: 1 })
        );
    }

    #[test]
    fn validate_examples() {
        let inst = Instance::new(1, 5, vec![3, 3]).unwrap();
        assert!(validate_packing(&inst, &[cyc(&[0, 1, 2]), cyc(&[0, 3, 4])], true).is_valid());

        let k3 = Instance::new(1, 3, vec![2]).unwrap();
        assert_eq!(
            validate_packing(&k3, &[cyc(&[0, 1])], true),
            Verdict::Invalid(Violation::OverusedEdge { x: 0, y: 1 })
        );

        let k4 = Instance::new(1, 4, vec![3, 4]).unwrap();
        assert_eq!(
            validate_packing(&k4, &[cyc(&[0, 1, 2, 3]), cyc(&[0, 1, 2])], true),
            Verdict::Invalid(Violation::OverusedEdge { x: 0, y: 1 })
        );

        let wrong = Instance::new(1, 5, vec![3, 4]).unwrap();
        assert!(matches!(
            validate_packing(&wrong, &[cyc(&[0, 1, 2]), cyc(&[0, 3, 4])], true),
            Verdict::Invalid(Violation::LengthMismatch { .. })
        ));
        assert!(validate_packing(&wrong, &[cyc(&[0, 1, 2]), cyc(&[0, 3, 4])], false).is_valid());

        assert_eq!(
            validate_packing(&k3, &[cyc(&[0, 1, 7])], false),
            Verdict::Invalid(Violation::VertexOutOfRange { cycle: 0, vertex: 7 })
        );
    }

    #[test]
    fn add_and_remove_cycles() {
        let mut p = Packing::empty(1, 4);
        p.add_cycle(cyc(&[0, 1, 2])).unwrap();
        assert_eq!(p.leave().edge_count(), 3);
        assert_eq!(p.add_cycle(cyc(&[0, 1, 3])), Err(Error::OverusedEdge { x: 0, y: 1 }));
        assert_eq!(p.cycles().len(), 1);
        p.remove_cycle(&cyc(&[2, 1, 0])).unwrap();
        assert_eq!(p.leave(), &Multigraph::complete(1, 4));
    }
}
