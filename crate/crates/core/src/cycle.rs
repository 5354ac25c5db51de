use std::fmt;

use crate::error::{Error, Result};
use crate::multigraph::{pair, Multigraph};
use crate::Vertex;

fn all_distinct(vs: &[Vertex]) -> bool {
    let mut sorted = vs.to_vec();
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// A cycle in canonical form: rotated so the smallest vertex comes first and
/// oriented so that the second vertex is smaller than the last. A 2-cycle is
/// `[x, y]` with `x < y` and stands for a pair of parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    pub fn new(vertices: Vec<Vertex>) -> Result<Cycle> {
        if vertices.len() < 2 || !all_distinct(&vertices) {
            return Err(Error::MalformedCycle(vertices));
        }
        Ok(Cycle(canonical(vertices)))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0.contains(&x)
    }

    /// The edges of the cycle as normalized pairs. A 2-cycle yields its pair twice.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.0.len();
        (0..n).map(|i| pair(self.0[i], self.0[(i + 1) % n])).collect()
    }

    /// Applies a vertex map (assumed injective on the cycle).
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Cycle {
        Cycle(canonical(self.0.iter().map(|&x| f(x)).collect()))
    }

    /// Whether every edge of the cycle is present in `g` (with multiplicity).
    pub fn is_in(&self, g: &Multigraph) -> bool {
        if self.0.len() == 2 {
            return g.multiplicity(self.0[0], self.0[1]) >= 2;
        }
        self.edges().iter().all(|&(a, b)| g.multiplicity(a, b) >= 1)
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

pub(crate) fn write_joined(f: &mut fmt::Formatter<'_>, vs: &[Vertex]) -> fmt::Result {
    for (i, x) in vs.iter().enumerate() {
        if i > 0 {
            f.write_str("-")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Canonical rotation/orientation of a vertex sequence describing a cycle.
pub fn canonical(mut seq: Vec<Vertex>) -> Vec<Vertex> {
    let n = seq.len();
    if n == 0 {
        return seq;
    }
    let start = (0..n).min_by_key(|&i| seq[i]).unwrap();
    seq.rotate_left(start);
    if n > 2 && seq[n - 1] < seq[1] {
        seq[1..].reverse();
    }
    seq
}

/// A path `[y_0, y_1, ..., y_n]` on distinct vertices, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Result<Path> {
        if vertices.len() < 2 || !all_distinct(&vertices) {
            return Err(Error::MalformedPath(vertices));
        }
        Ok(Path(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.0.windows(2).map(|w| pair(w[0], w[1])).collect()
    }
}

/// A `(p, q)`-lasso `(x_1, ..., x_p)[x_p, y_1, ..., y_q]`.
///
/// The cycle is kept in walking order with the attachment vertex `x_p` last,
/// and the path starts at the attachment vertex. The proof procedures in
/// [`crate::switching`] index into both by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lasso {
    cycle: Vec<Vertex>,
    path: Vec<Vertex>,
}

impl Lasso {
    pub fn new(cycle: Vec<Vertex>, path: Vec<Vertex>) -> Result<Lasso> {
        if cycle.len() < 2 || path.len() < 2 {
            return Err(Error::MalformedLasso("cycle needs p >= 2 and path q >= 1".into()));
        }
        if cycle.last() != path.first() {
            return Err(Error::MalformedLasso(
                "path must start at the last cycle vertex".into(),
            ));
        }
        let mut all = cycle.clone();
        all.extend_from_slice(&path[1..]);
        if !all_distinct(&all) {
            return Err(Error::MalformedLasso(
                "cycle and path may share only the attachment vertex".into(),
            ));
        }
        Ok(Lasso { cycle, path })
    }

    /// `x_1, ..., x_p` with `x_p` the attachment vertex.
    pub fn cycle_walk(&self) -> &[Vertex] {
        &self.cycle
    }

    /// `x_p, y_1, ..., y_q`.
    pub fn path_walk(&self) -> &[Vertex] {
        &self.path
    }

    pub fn cycle_part(&self) -> Cycle {
        Cycle(canonical(self.cycle.clone()))
    }

    pub fn path_part(&self) -> Path {
        Path(self.path.clone())
    }

    pub fn attachment(&self) -> Vertex {
        self.path[0]
    }

    pub fn p(&self) -> usize {
        self.cycle.len()
    }

    pub fn q(&self) -> usize {
        self.path.len() - 1
    }

    pub fn order(&self) -> usize {
        self.p() + self.q()
    }

    /// 1-based cycle vertex `x_i`.
    pub fn x(&self, i: usize) -> Vertex {
        self.cycle[i - 1]
    }

    /// 1-based path vertex `y_j`; `y(0)` is the attachment vertex.
    pub fn y(&self, j: usize) -> Vertex {
        self.path[j]
    }

    /// Shortens the path to `q` edges.
    pub fn truncated(&self, q: usize) -> Lasso {
        assert!(q >= 1 && q <= self.q());
        Lasso {
            cycle: self.cycle.clone(),
            path: self.path[..=q].to_vec(),
        }
    }

    /// Whether the lasso is a submultigraph of `g`.
    pub fn is_in(&self, g: &Multigraph) -> bool {
        self.cycle_part().is_in(g)
            && self
                .path_part()
                .edges()
                .iter()
                .all(|&(a, b)| g.multiplicity(a, b) >= 1)
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_joined(f, &self.cycle)?;
        f.write_str(")[")?;
        write_joined(f, &self.path)?;
        f.write_str("]")
    }
}
