use crate::error::{Error, Result};

/// A packing problem: pack `lambda K_v` with cycles whose lengths are `lengths`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    lambda: u32,
    v: usize,
    lengths: Vec<usize>,
}

impl Instance {
    pub fn new(lambda: u32, v: usize, lengths: Vec<usize>) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::ZeroLambda);
        }
        if v == 0 {
            return Err(Error::ZeroOrder);
        }
        if lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotNondecreasing);
        }
        Ok(Instance { lambda, v, lengths })
    }

    /// Like [`Instance::new`] but sorts the lengths first.
    pub fn from_unsorted(lambda: u32, v: usize, mut lengths: Vec<usize>) -> Result<Self> {
        lengths.sort_unstable();
        Self::new(lambda, v, lengths)
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn tau(&self) -> usize {
        self.lengths.len()
    }

    /// Largest entry, if any.
    pub fn max_length(&self) -> Option<usize> {
        self.lengths.last().copied()
    }

    pub fn length_sum(&self) -> u64 {
        self.lengths.iter().map(|&m| m as u64).sum()
    }

    /// Number of vertex pairs, `C(v, 2)`.
    pub fn pairs(&self) -> u64 {
        binom2(self.v)
    }

    /// Number of edges of `lambda K_v`.
    pub fn edge_count(&self) -> u64 {
        self.lambda as u64 * self.pairs()
    }

    /// Whether `lambda (v - 1)` is odd, i.e. every vertex of the host has odd degree.
    pub fn odd_host(&self) -> bool {
        (self.lambda as u64 * (self.v as u64 - 1)) % 2 == 1
    }

    /// The same host graph with a different length list.
    pub fn with_lengths(&self, mut lengths: Vec<usize>) -> Instance {
        lengths.sort_unstable();
        Instance {
            lambda: self.lambda,
            v: self.v,
            lengths,
        }
    }
}

pub fn binom2(v: usize) -> u64 {
    let v = v as u64;
    v * v.saturating_sub(1) / 2
}
