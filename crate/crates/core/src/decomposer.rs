//! Exhaustive backtracking search for cycle packings and decompositions of
//! `lambda K_v` (optionally minus the canonical 1-factor).
//!
//! The search is edge-driven. Vertex pairs are resolved in lexicographic
//! order; at the first pair `{x, y}` with copies left, it decides how many
//! copies stay in the leave and covers the rest with cycles whose smallest
//! vertex is `x`. Such a cycle reads `x, y, ..., z` with `z > y`, because
//! every earlier pair is already exhausted. Cycles placed through the same
//! pair are taken in nondecreasing order of (length descending, vertices),
//! so each packing is generated once per leave assignment.
//!
//! `NotFound` is a proof of nonexistence. `BudgetExceeded` proves nothing.

use std::collections::HashSet;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::multigraph::Multigraph;
use crate::packing::Packing;
use crate::Vertex;

/// Failed states remembered per search; beyond this the memo stops growing.
const MEMO_CAPACITY: usize = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap on search nodes; `None` is unbounded.
    pub node_budget: Option<u64>,
    /// Fix the first long cycle through `{0, 1}` to `(0, 1, ..., l-1)`.
    /// Only used when the host is the full `lambda K_v`.
    pub symmetry_reduction: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: None,
            symmetry_reduction: true,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: Option<u64>) -> Self {
        SearchConfig {
            node_budget,
            ..SearchConfig::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::NotFound => SearchOutcome::NotFound,
            SearchOutcome::BudgetExceeded => SearchOutcome::BudgetExceeded,
        }
    }
}

/// Cycles and (optionally) a 1-factor partitioning the edges of `lambda K_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub cycles: Vec<Cycle>,
    pub one_factor: Option<Vec<(Vertex, Vertex)>>,
}

/// The canonical perfect matching `{0,1}, {2,3}, ..., {v-2,v-1}`.
pub fn one_factor(v: usize) -> Result<Vec<(Vertex, Vertex)>> {
    if v == 0 || v % 2 == 1 {
        return Err(Error::OddOrder(v));
    }
    Ok((0..v / 2).map(|i| (2 * i, 2 * i + 1)).collect())
}

/// Finds a decomposition of `lambda K_v` (or of `lambda K_v - I` with `I`
/// the canonical 1-factor) into cycles with the instance's lengths.
///
/// Requesting the 1-factor variant when `lambda (v-1)` is even is a
/// [`Error::ParityMismatch`].
pub fn decompose(
    instance: &Instance,
    remove_one_factor: bool,
    cfg: SearchConfig,
) -> Result<SearchOutcome<Decomposition>> {
    let mut host = Multigraph::complete(instance.lambda(), instance.v());
    let factor = if remove_one_factor {
        if !instance.odd_host() {
            return Err(Error::ParityMismatch);
        }
        let f = one_factor(instance.v())?;
        for &(x, y) in &f {
            host.remove_edge(x, y, 1);
        }
        Some(f)
    } else {
        None
    };
    if instance.length_sum() != host.edge_count() {
        return Ok(SearchOutcome::NotFound);
    }
    let symmetric = cfg.symmetry_reduction && !remove_one_factor;
    Ok(search(instance, &host, symmetric, cfg.node_budget).map(|cycles| Decomposition {
        cycles,
        one_factor: factor,
    }))
}

/// Finds any packing of `lambda K_v` with exactly the instance's lengths, or
/// proves that none exists.
pub fn brute_force_pack(instance: &Instance, cfg: SearchConfig) -> SearchOutcome<Packing> {
    let host = Multigraph::complete(instance.lambda(), instance.v());
    search(instance, &host, cfg.symmetry_reduction, cfg.node_budget).map(|cycles| {
        Packing::new(instance.lambda(), instance.v(), cycles).expect("search keeps edge budgets")
    })
}

fn search(
    instance: &Instance,
    host: &Multigraph,
    symmetric: bool,
    budget: Option<u64>,
) -> SearchOutcome<Vec<Cycle>> {
    let v = instance.v();
    let lengths = instance.lengths();
    if lengths.iter().any(|&m| m < 2 || m > v) || instance.length_sum() > host.edge_count() {
        return SearchOutcome::NotFound;
    }
    if lengths.is_empty() {
        return SearchOutcome::Found(Vec::new());
    }
    let mut engine = Engine::new(host, lengths, symmetric, budget);
    if !engine.feasible_state() {
        return SearchOutcome::NotFound;
    }
    match engine.next_pair(0) {
        Step::Done => SearchOutcome::Found(
            engine
                .placed
                .iter()
                .map(|c| Cycle::new(c.clone()).expect("search yields valid cycles"))
                .collect(),
        ),
        Step::Fail => SearchOutcome::NotFound,
        Step::Abort => SearchOutcome::BudgetExceeded,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Done,
    Fail,
    Abort,
}

struct Engine {
    v: usize,
    /// Residual multiplicities, row-major and symmetric.
    r: Vec<u32>,
    /// Pairs `(x, y)`, `x < y`, in lexicographic order.
    pair_list: Vec<(Vertex, Vertex)>,
    deg: Vec<u32>,
    /// Remaining cycles by length.
    counts: Vec<u32>,
    /// Leave edges still allowed.
    leave_budget: u64,
    /// Sum over pairs of `floor(r / 2)`.
    floor_sum: u64,
    odd_vertices: u32,
    /// Vertices with residual degree at least 2.
    deg2: u32,
    placed: Vec<Vec<Vertex>>,
    symmetric: bool,
    nodes: u64,
    budget: Option<u64>,
    memo: HashSet<Vec<u8>>,
}

impl Engine {
    fn new(host: &Multigraph, lengths: &[usize], symmetric: bool, budget: Option<u64>) -> Engine {
        let v = host.order();
        let mut r = vec![0u32; v * v];
        let mut pair_list = Vec::new();
        for x in 0..v {
            for y in x + 1..v {
                let m = host.multiplicity(x, y);
                r[x * v + y] = m;
                r[y * v + x] = m;
                pair_list.push((x, y));
            }
        }
        let deg: Vec<u32> = (0..v).map(|x| host.degree(x) as u32).collect();
        let mut counts = vec![0u32; v + 1];
        for &m in lengths {
            counts[m] += 1;
        }
        let sum: u64 = lengths.iter().map(|&m| m as u64).sum();
        Engine {
            v,
            floor_sum: pair_list.iter().map(|&(x, y)| u64::from(r[x * v + y] / 2)).sum(),
            odd_vertices: deg.iter().filter(|&&d| d % 2 == 1).count() as u32,
            deg2: deg.iter().filter(|&&d| d >= 2).count() as u32,
            r,
            pair_list,
            deg,
            counts,
            leave_budget: host.edge_count() - sum,
            placed: Vec::new(),
            symmetric,
            nodes: 0,
            budget,
            memo: HashSet::new(),
        }
    }

    fn mult(&self, x: Vertex, y: Vertex) -> u32 {
        self.r[x * self.v + y]
    }

    fn bump_vertex(&mut self, x: Vertex, delta: i32) {
        let before = self.deg[x];
        let after = (before as i64 + delta as i64) as u32;
        self.deg[x] = after;
        if before % 2 != after % 2 {
            if after % 2 == 1 {
                self.odd_vertices += 1;
            } else {
                self.odd_vertices -= 1;
            }
        }
        match (before >= 2, after >= 2) {
            (true, false) => self.deg2 -= 1,
            (false, true) => self.deg2 += 1,
            _ => {}
        }
    }

    /// Adds `delta` copies to pair `{x, y}`.
    fn bump(&mut self, x: Vertex, y: Vertex, delta: i32) {
        let before = self.r[x * self.v + y];
        let after = (before as i64 + delta as i64) as u32;
        self.r[x * self.v + y] = after;
        self.r[y * self.v + x] = after;
        self.floor_sum = self.floor_sum + u64::from(after / 2) - u64::from(before / 2);
        self.bump_vertex(x, delta);
        self.bump_vertex(y, delta);
    }

    fn apply_cycle(&mut self, seq: &[Vertex], sign: i32) {
        if seq.len() == 2 {
            self.bump(seq[0], seq[1], 2 * sign);
        } else {
            for i in 0..seq.len() {
                self.bump(seq[i], seq[(i + 1) % seq.len()], sign);
            }
        }
        let len = seq.len();
        if sign < 0 {
            self.counts[len] -= 1;
        } else {
            self.counts[len] += 1;
        }
    }

    fn cycles_left(&self) -> bool {
        self.counts.iter().any(|&c| c > 0)
    }

    fn longest_left(&self) -> usize {
        (2..self.counts.len()).rev().find(|&l| self.counts[l] > 0).unwrap_or(0)
    }

    /// Necessary conditions on the current residual state.
    fn feasible_state(&self) -> bool {
        let b = self.leave_budget;
        if u64::from(self.counts[2]) > self.floor_sum {
            return false;
        }
        // cycle placements keep every vertex's parity; the future leave must
        // have exactly the odd vertices as its odd-degree vertices
        let odd = u64::from(self.odd_vertices);
        if odd > 2 * b {
            return false;
        }
        if odd == 0 && (b == 1 || (b == 2 && self.floor_sum == 0)) {
            return false;
        }
        let longest = self.longest_left();
        longest <= self.deg2 as usize
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.budget.is_some_and(|b| self.nodes > b)
    }

    fn memo_key(&self, from: usize) -> Vec<u8> {
        let mut key = Vec::with_capacity(self.pair_list.len() + 2 * self.counts.len());
        for &(x, y) in &self.pair_list[from..] {
            push_varint(&mut key, self.mult(x, y));
        }
        key.push(0xff);
        for &c in &self.counts {
            push_varint(&mut key, c);
        }
        key
    }

    /// Resolves pairs starting from index `from` in `pair_list`.
    fn next_pair(&mut self, from: usize) -> Step {
        if !self.cycles_left() {
            return Step::Done;
        }
        let Some(idx) = (from..self.pair_list.len()).find(|&i| {
            let (x, y) = self.pair_list[i];
            self.mult(x, y) > 0
        }) else {
            return Step::Fail;
        };
        if self.tick() {
            return Step::Abort;
        }
        let key = self.memo_key(idx);
        if self.memo.contains(&key) {
            return Step::Fail;
        }
        let (x, y) = self.pair_list[idx];
        let r = self.mult(x, y);
        let max_leave = u64::from(r).min(self.leave_budget) as u32;
        for j in 0..=max_leave {
            if j > 0 {
                self.bump(x, y, -1);
                self.leave_budget -= 1;
            }
            if self.feasible_state() {
                match self.cover(idx, None) {
                    Step::Fail => {}
                    other => return other,
                }
            }
        }
        self.bump(x, y, max_leave as i32);
        self.leave_budget += u64::from(max_leave);
        if self.memo.len() < MEMO_CAPACITY {
            self.memo.insert(key);
        }
        Step::Fail
    }

    /// Covers the remaining copies of pair `idx` with cycles whose key is at
    /// least `min_key`.
    fn cover(&mut self, idx: usize, min_key: Option<&[Vertex]>) -> Step {
        let (x, y) = self.pair_list[idx];
        if self.mult(x, y) == 0 {
            return self.next_pair(idx + 1);
        }
        if self.tick() {
            return Step::Abort;
        }
        let max_len = min_key.map_or(self.v, |k| k.len());
        for len in (2..=max_len.min(self.longest_left())).rev() {
            if self.counts[len] == 0 {
                continue;
            }
            let floor = min_key.filter(|k| k.len() == len);
            let step = if len == 2 {
                if self.mult(x, y) >= 2 {
                    self.try_cycle(idx, &[x, y])
                } else {
                    Step::Fail
                }
            } else if self.symmetric && self.placed.is_empty() && (x, y) == (0, 1) {
                let seq: Vec<Vertex> = (0..len).collect();
                self.try_cycle(idx, &seq)
            } else {
                self.extend_path(idx, len, &mut vec![x, y], floor)
            };
            if step != Step::Fail {
                return step;
            }
        }
        Step::Fail
    }

    /// Enumerates cycles `x, y, ..., z` of length `len` extending `path`.
    fn extend_path(
        &mut self,
        idx: usize,
        len: usize,
        path: &mut Vec<Vertex>,
        floor: Option<&[Vertex]>,
    ) -> Step {
        let x = path[0];
        let y = path[1];
        let last = *path.last().unwrap();
        if path.len() == len {
            if last > y && self.mult(last, x) > 0 {
                if floor.is_some_and(|f| path.as_slice() < f) {
                    return Step::Fail;
                }
                let seq = path.clone();
                return self.try_cycle(idx, &seq);
            }
            return Step::Fail;
        }
        // with a floor, prefixes below the floor's prefix cannot reach it
        for w in x + 1..self.v {
            if path.contains(&w) || self.mult(last, w) == 0 || self.deg[w] < 2 {
                continue;
            }
            path.push(w);
            let below = floor.is_some_and(|f| path.as_slice() < &f[..path.len()]);
            let step = if below {
                Step::Fail
            } else {
                self.extend_path(idx, len, path, floor)
            };
            path.pop();
            if step != Step::Fail {
                return step;
            }
        }
        Step::Fail
    }

    fn try_cycle(&mut self, idx: usize, seq: &[Vertex]) -> Step {
        if seq.len() > 2 && seq.windows(2).any(|w| self.mult(w[0], w[1]) == 0) {
            return Step::Fail;
        }
        self.apply_cycle(seq, -1);
        self.placed.push(seq.to_vec());
        let step = if self.feasible_state() {
            self.cover(idx, Some(seq))
        } else {
            Step::Fail
        };
        if step == Step::Done {
            return step;
        }
        self.placed.pop();
        self.apply_cycle(seq, 1);
        step
    }
}

fn push_varint(key: &mut Vec<u8>, mut x: u32) {
    loop {
        let byte = (x & 0x7f) as u8;
        x >>= 7;
        if x == 0 {
            key.push(byte);
            return;
        }
        key.push(byte | 0x80);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::validate_packing;

    fn inst(lambda: u32, v: usize, lengths: &[usize]) -> Instance {
        Instance::from_unsorted(lambda, v, lengths.to_vec()).unwrap()
    }

    fn pack(lambda: u32, v: usize, lengths: &[usize]) -> SearchOutcome<Packing> {
        brute_force_pack(&inst(lambda, v, lengths), SearchConfig::default())
    }

    #[test]
    fn one_factor_examples() {
        assert_eq!(one_factor(2), Ok(vec![(0, 1)]));
        assert_eq!(one_factor(6), Ok(vec![(0, 1), (2, 3), (4, 5)]));
        assert_eq!(one_factor(5), Err(Error::OddOrder(5)));
    }

    #[test]
    fn brute_force_examples() {
        let p = pack(1, 3, &[3]).found().unwrap();
        assert_eq!(p.cycles(), &[Cycle::new(vec![0, 1, 2]).unwrap()]);
        assert_eq!(pack(1, 4, &[4, 2]), SearchOutcome::NotFound);
        assert_eq!(pack(2, 4, &[2, 2, 2, 2, 4]), SearchOutcome::NotFound);
        assert_eq!(pack(1, 5, &[4, 5]), SearchOutcome::NotFound);
        assert_eq!(pack(1, 5, &[3, 5]), SearchOutcome::NotFound);
        assert_eq!(pack(1, 6, &[4, 5, 5]), SearchOutcome::NotFound);
        assert!(pack(1, 5, &[3, 3]).is_found());
        assert!(pack(1, 1, &[]).is_found());
    }

    #[test]
    fn found_packings_are_valid() {
        for (lambda, v, m) in [
            (1u32, 5usize, vec![3, 3]),
            (2, 5, vec![2, 3, 5, 5]),
            (3, 5, vec![2, 2, 3, 4, 5]),
            (1, 7, vec![3, 4, 5, 6]),
        ] {
            let i = inst(lambda, v, &m);
            assert!(crate::feasibility::check_packing_feasibility(&i).feasible());
            let p = brute_force_pack(&i, SearchConfig::default()).found().unwrap();
            assert!(validate_packing(&i, p.cycles(), true).is_valid());
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(&inst(1, 5, &[5, 5]), false, SearchConfig::default())
            .unwrap()
            .found()
            .unwrap();
        assert!(Packing::new(1, 5, d.cycles).unwrap().leave().is_empty());

        let d = decompose(&inst(2, 3, &[2, 2, 2]), false, SearchConfig::default())
            .unwrap()
            .found()
            .unwrap();
        let mut cs = d.cycles;
        cs.sort();
        let want: Vec<Cycle> = [[0, 1], [0, 2], [1, 2]]
            .iter()
            .map(|c| Cycle::new(c.to_vec()).unwrap())
            .collect();
        assert_eq!(cs, want);

        let d = decompose(&inst(1, 6, &[3, 3, 3, 3]), true, SearchConfig::default())
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(d.one_factor, Some(vec![(0, 1), (2, 3), (4, 5)]));
        let p = Packing::new(1, 6, d.cycles).unwrap();
        assert_eq!(p.leave().edge_list(), vec![(0, 1), (2, 3), (4, 5)]);

        assert_eq!(
            decompose(&inst(1, 5, &[5, 5]), true, SearchConfig::default()),
            Err(Error::ParityMismatch)
        );
        assert_eq!(
            decompose(&inst(2, 4, &[2, 2, 2, 2, 4]), false, SearchConfig::default()),
            Ok(SearchOutcome::NotFound)
        );
    }

    #[test]
    fn budget_is_not_infeasibility() {
        let cfg = SearchConfig::with_budget(Some(3));
        assert_eq!(
            brute_force_pack(&inst(1, 7, &[3, 3, 3, 3, 3, 3, 3]), cfg),
            SearchOutcome::BudgetExceeded
        );
    }

    #[test]
    fn symmetry_reduction_does_not_change_existence() {
        for v in 3..=5usize {
            for lambda in 1..=2u32 {
                let budget = lambda as usize * v * (v - 1) / 2;
                for a in 0..=3usize {
                    for b in 0..=3usize {
                        let mut m = vec![v; a];
                        m.extend(vec![3; b]);
                        if m.iter().sum::<usize>() > budget {
                            continue;
                        }
                        let i = inst(lambda, v, &m);
                        let on = brute_force_pack(&i, SearchConfig::default()).is_found();
                        let off = brute_force_pack(
                            &i,
                            SearchConfig {
                                node_budget: None,
                                symmetry_reduction: false,
                            },
                        )
                        .is_found();
                        assert_eq!(on, off, "{i:?}");
                    }
                }
            }
        }
    }
}
