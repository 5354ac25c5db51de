use std::collections::{BTreeMap, BTreeSet};

use crate::Vertex;

/// Loopless multigraph on vertices `0..v`, stored as a sparse map from
/// unordered pairs to multiplicities. Pairs of multiplicity zero are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Multigraph {
    v: usize,
    mult: BTreeMap<(Vertex, Vertex), u32>,
}

#[inline]
pub(crate) fn pair(x: Vertex, y: Vertex) -> (Vertex, Vertex) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

impl Multigraph {
    pub fn empty(v: usize) -> Self {
        Multigraph {
            v,
            mult: BTreeMap::new(),
        }
    }

    /// `lambda K_v`.
    pub fn complete(lambda: u32, v: usize) -> Self {
        let mut g = Multigraph::empty(v);
        if lambda > 0 {
            for x in 0..v {
                for y in x + 1..v {
                    g.mult.insert((x, y), lambda);
                }
            }
        }
        g
    }

    pub fn from_edges(v: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Multigraph::empty(v);
        for (x, y) in edges {
            g.add_edge(x, y, 1);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn multiplicity(&self, x: Vertex, y: Vertex) -> u32 {
        if x == y {
            return 0;
        }
        self.mult.get(&pair(x, y)).copied().unwrap_or(0)
    }

    pub fn add_edge(&mut self, x: Vertex, y: Vertex, k: u32) {
        assert!(x != y, "loops are not allowed");
        assert!(x < self.v && y < self.v, "vertex out of range");
        if k > 0 {
            *self.mult.entry(pair(x, y)).or_insert(0) += k;
        }
    }

    /// Removes `k` copies of `xy`. Returns false (and leaves the graph
    /// untouched) if fewer than `k` copies are present.
    pub fn remove_edge(&mut self, x: Vertex, y: Vertex, k: u32) -> bool {
        if k == 0 {
            return true;
        }
        let key = pair(x, y);
        match self.mult.get_mut(&key) {
            Some(m) if *m >= k => {
                *m -= k;
                if *m == 0 {
                    self.mult.remove(&key);
                }
                true
            }
            _ => false,
        }
    }

    /// Total number of edges, counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.mult.values().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Sum of multiplicities of pairs containing `x`.
    pub fn degree(&self, x: Vertex) -> u64 {
        self.mult
            .iter()
            .filter(|((a, b), _)| *a == x || *b == x)
            .map(|(_, &m)| m as u64)
            .sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.v];
        for (&(a, b), &m) in &self.mult {
            d[a] += m as u64;
            d[b] += m as u64;
        }
        d
    }

    /// Pairs with positive multiplicity, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = ((Vertex, Vertex), u32)> + '_ {
        self.mult.iter().map(|(&k, &m)| (k, m))
    }

    /// Every edge once per copy, lexicographically sorted.
    pub fn edge_list(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for (&(a, b), &m) in &self.mult {
            for _ in 0..m {
                out.push((a, b));
            }
        }
        out
    }

    /// Neighbours of `x` in increasing order, with multiplicities.
    pub fn neighbors(&self, x: Vertex) -> Vec<(Vertex, u32)> {
        let mut out: Vec<(Vertex, u32)> = self
            .mult
            .iter()
            .filter_map(|(&(a, b), &m)| {
                if a == x {
                    Some((b, m))
                } else if b == x {
                    Some((a, m))
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Dense adjacency matrix of multiplicities.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0u32; self.v]; self.v];
        for (&(a, b), &k) in &self.mult {
            m[a][b] = k;
            m[b][a] = k;
        }
        m
    }

    /// Connected components, restricted to non-isolated vertices, each sorted,
    /// ordered by smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut parent: Vec<Vertex> = (0..self.v).collect();
        fn find(p: &mut [Vertex], mut x: Vertex) -> Vertex {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut touched = vec![false; self.v];
        for &(a, b) in self.mult.keys() {
            touched[a] = true;
            touched[b] = true;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for x in 0..self.v {
            if touched[x] {
                let r = find(&mut parent, x);
                groups.entry(r).or_default().insert(x);
            }
        }
        groups.into_values().collect()
    }

    /// The subgraph formed by the edges with both ends in `vertices`.
    pub fn induced(&self, vertices: &BTreeSet<Vertex>) -> Multigraph {
        let mut g = Multigraph::empty(self.v);
        for (&(a, b), &m) in &self.mult {
            if vertices.contains(&a) && vertices.contains(&b) {
                g.mult.insert((a, b), m);
            }
        }
        g
    }

    /// Whether some edge joins `vertices` to the rest of the graph.
    pub fn has_edge_leaving(&self, vertices: &BTreeSet<Vertex>) -> bool {
        self.mult
            .keys()
            .any(|(a, b)| vertices.contains(a) != vertices.contains(b))
    }
}
