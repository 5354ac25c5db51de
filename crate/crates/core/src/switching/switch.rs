use std::collections::HashSet;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::multigraph::Multigraph;
use crate::packing::{leave_of, Packing};
use crate::Vertex;

/// Total node allowance for one switch; only reached on a bug.
const SEARCH_NODE_LIMIT: u64 = 5_000_000;

/// An `(alpha, beta)`-switch with a given origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwitchRequest {
    pub alpha: Vertex,
    pub beta: Vertex,
    pub origin: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchResult {
    pub packing: Packing,
    pub terminus: Vertex,
    /// The two leave edges given up; `pi` of each was gained.
    pub removed: [(Vertex, Vertex); 2],
}

/// `mu_L(x alpha) - mu_L(x beta)` for every vertex (zero at `alpha`, `beta`).
///
/// The surplus set holds `max(0, s)` copies of `x alpha` and `max(0, -s)`
/// copies of `x beta` at each `x`.
pub fn surplus(leave: &Multigraph, alpha: Vertex, beta: Vertex) -> Vec<i64> {
    (0..leave.order())
        .map(|x| {
            if x == alpha || x == beta {
                0
            } else {
                leave.multiplicity(x, alpha) as i64 - leave.multiplicity(x, beta) as i64
            }
        })
        .collect()
}

/// One way of rewriting a cycle: its effect on the uses of `x alpha` (the
/// uses of `x beta` move the opposite way) and the rewritten cycle.
#[derive(Clone, Debug)]
struct Rewrite {
    delta: Vec<(Vertex, i32)>,
    cycle: Cycle,
}

fn transpose(alpha: Vertex, beta: Vertex) -> impl Fn(Vertex) -> Vertex {
    move |x| {
        if x == alpha {
            beta
        } else if x == beta {
            alpha
        } else {
            x
        }
    }
}

fn add_delta(delta: &mut Vec<(Vertex, i32)>, x: Vertex, d: i32) {
    match delta.iter_mut().find(|(y, _)| *y == x) {
        Some((_, e)) => *e += d,
        None => delta.push((x, d)),
    }
    delta.retain(|&(_, e)| e != 0);
}

/// Non-identity rewrites permitted for a cycle: `pi(C)` when the cycle meets
/// exactly one of `alpha`, `beta`; independent `pi` on each `alpha`-`beta`
/// path when it meets both.
fn rewrites(c: &Cycle, alpha: Vertex, beta: Vertex) -> Vec<Rewrite> {
    let seq = c.vertices();
    let n = seq.len();
    let ia = seq.iter().position(|&x| x == alpha);
    let ib = seq.iter().position(|&x| x == beta);
    match (ia, ib) {
        (None, None) => vec![],
        (Some(i), None) | (None, Some(i)) => {
            let sign = if ia.is_some() { -1 } else { 1 };
            let mut delta = Vec::new();
            add_delta(&mut delta, seq[(i + 1) % n], sign);
            add_delta(&mut delta, seq[(i + n - 1) % n], sign);
            vec![Rewrite {
                delta,
                cycle: c.map(transpose(alpha, beta)),
            }]
        }
        (Some(ia), Some(ib)) => {
            // interiors of the two alpha-beta paths, each listed from the alpha side
            let mut fwd = Vec::new();
            let mut k = (ia + 1) % n;
            while k != ib {
                fwd.push(seq[k]);
                k = (k + 1) % n;
            }
            let mut bwd = Vec::new();
            let mut k = (ia + n - 1) % n;
            while k != ib {
                bwd.push(seq[k]);
                k = (k + n - 1) % n;
            }
            let swappable = |int: &Vec<Vertex>| int.len() >= 2;
            let mut out = Vec::new();
            for (swap_p, swap_q) in [(true, false), (false, true), (true, true)] {
                if (swap_p && !swappable(&fwd)) || (swap_q && !swappable(&bwd)) {
                    continue;
                }
                let mut delta = Vec::new();
                if swap_p {
                    add_delta(&mut delta, fwd[0], -1);
                    add_delta(&mut delta, *fwd.last().unwrap(), 1);
                }
                if swap_q {
                    add_delta(&mut delta, bwd[0], -1);
                    add_delta(&mut delta, *bwd.last().unwrap(), 1);
                }
                let (q_start, q_end) = if swap_p { (beta, alpha) } else { (alpha, beta) };
                let qs_start = if swap_q { beta } else { alpha };
                let mut walk = vec![q_start];
                walk.extend_from_slice(&fwd);
                walk.push(q_end);
                if qs_start == q_end {
                    walk.extend(bwd.iter().copied());
                } else {
                    walk.extend(bwd.iter().rev().copied());
                }
                let cycle = Cycle::new(walk).expect("path swap keeps vertices distinct");
                out.push(Rewrite { delta, cycle });
            }
            out
        }
    }
}

struct Search<'a> {
    rewrites: &'a [(usize, Vec<Rewrite>)],
    /// For each vertex, the (affected cycle, rewrite, delta at vertex) touching it.
    by_vertex: Vec<Vec<(usize, usize, i32)>>,
    residual: Vec<i32>,
    choice: Vec<Option<usize>>,
    dead: HashSet<(Vec<u64>, Vec<i32>)>,
    nodes: u64,
}

impl Search<'_> {
    fn key(&self) -> (Vec<u64>, Vec<i32>) {
        let mut bits = vec![0u64; self.choice.len().div_ceil(64)];
        for (i, c) in self.choice.iter().enumerate() {
            if c.is_some() {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        (bits, self.residual.clone())
    }

    fn apply(&mut self, a: usize, r: usize, sign: i32) {
        for &(x, d) in &self.rewrites[a].1[r].delta {
            self.residual[x] += sign * d;
        }
    }

    fn dfs(&mut self) -> bool {
        let Some(z) = self.residual.iter().position(|&r| r != 0) else {
            return true;
        };
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_LIMIT {
            return false;
        }
        let key = self.key();
        if self.dead.contains(&key) {
            return false;
        }
        let want = -self.residual[z].signum();
        for k in 0..self.by_vertex[z].len() {
            let (a, r, d) = self.by_vertex[z][k];
            if self.choice[a].is_some() || d.signum() != want {
                continue;
            }
            self.choice[a] = Some(r);
            self.apply(a, r, 1);
            if self.dfs() {
                return true;
            }
            self.apply(a, r, -1);
            self.choice[a] = None;
        }
        self.dead.insert(key);
        false
    }
}

/// Performs the `(alpha, beta)`-switch with the given origin.
///
/// The leave loses one surplus edge at the origin and one further surplus
/// edge at the terminus, and gains their images under the transposition
/// `(alpha beta)`. Cycles not meeting `alpha` or `beta` are untouched; the
/// others are rewritten as described in [`rewrites`]. The partner edge and
/// the rewrites are found by a complete search: partners in order of
/// terminus, then side; rewrites in cycle order. The first realization found
/// is returned, so the result is a deterministic function of the input
/// (including the order of the packing's cycles).
pub fn perform_switch(p: &Packing, req: SwitchRequest) -> Result<SwitchResult> {
    let SwitchRequest {
        alpha,
        beta,
        origin,
    } = req;
    let v = p.v();
    if alpha >= v || beta >= v || origin >= v {
        return Err(Error::InvalidSwitch(format!("vertex out of range in {req:?}")));
    }
    if alpha == beta {
        return Err(Error::InvalidSwitch("alpha and beta must differ".into()));
    }
    if origin == alpha || origin == beta {
        return Err(Error::InvalidSwitch("origin must differ from alpha and beta".into()));
    }
    let leave = p.leave();
    let sur = surplus(leave, alpha, beta);
    if sur[origin] == 0 {
        return Err(Error::NoSurplusAtOrigin(origin));
    }
    // +1 at x stands for an edge x-alpha, -1 for an edge x-beta
    let first = sur[origin].signum() as i32;

    let affected: Vec<(usize, Vec<Rewrite>)> = p
        .cycles()
        .iter()
        .enumerate()
        .map(|(i, c)| (i, rewrites(c, alpha, beta)))
        .filter(|(_, r)| !r.is_empty())
        .collect();
    let mut by_vertex = vec![Vec::new(); v];
    for (a, (_, rs)) in affected.iter().enumerate() {
        for (r, rw) in rs.iter().enumerate() {
            for &(x, d) in &rw.delta {
                by_vertex[x].push((a, r, d));
            }
        }
    }

    let mut nodes = 0u64;
    for y in 0..v {
        if y == alpha || y == beta || sur[y] == 0 {
            continue;
        }
        let side = sur[y].signum() as i32;
        let available = sur[y].unsigned_abs() - u64::from(y == origin && side == first);
        if available == 0 {
            continue;
        }
        let mut residual = vec![0i32; v];
        residual[origin] -= first;
        residual[y] -= side;
        let mut search = Search {
            rewrites: &affected,
            by_vertex: by_vertex.clone(),
            residual,
            choice: vec![None; affected.len()],
            dead: HashSet::new(),
            nodes,
        };
        let found = search.dfs();
        nodes = search.nodes;
        if found {
            let mut cycles = p.cycles().to_vec();
            for (a, c) in search.choice.iter().enumerate() {
                if let Some(r) = c {
                    cycles[affected[a].0] = affected[a].1[*r].cycle.clone();
                }
            }
            let end = |x: Vertex, s: i32| (x, if s > 0 { alpha } else { beta });
            let removed = [end(origin, first), end(y, side)];
            let new_leave = leave_of(p.lambda(), v, &cycles)?;
            let mut expected = leave.clone();
            let pi = transpose(alpha, beta);
            for &(a, b) in &removed {
                if !expected.remove_edge(a, b, 1) {
                    return Err(Error::Logic("surplus edge missing from leave".into()));
                }
                expected.add_edge(pi(a), pi(b), 1);
            }
            if new_leave != expected {
                return Err(Error::Logic("switch broke the leave relation".into()));
            }
            let mut packing = p.clone();
            packing.replace_cycles(cycles, new_leave);
            return Ok(SwitchResult {
                packing,
                terminus: y,
                removed,
            });
        }
        if nodes > SEARCH_NODE_LIMIT {
            break;
        }
    }
    Err(Error::InternalExhaustion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(vs: &[Vertex]) -> Cycle {
        Cycle::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn single_four_cycle_in_k4() {
        let p = Packing::new(1, 4, vec![cyc(&[0, 1, 2, 3])]).unwrap();
        assert_eq!(p.leave().edge_list(), vec![(0, 2), (1, 3)]);
        let r = perform_switch(
            &p,
            SwitchRequest {
                alpha: 0,
                beta: 1,
                origin: 2,
            },
        )
        .unwrap();
        assert_eq!(r.terminus, 3);
        assert_eq!(r.packing.leave().edge_list(), vec![(0, 3), (1, 2)]);
        assert_eq!(r.packing.cycles(), &[cyc(&[0, 1, 3, 2])]);
    }

    #[test]
    fn balanced_leave_has_no_surplus() {
        let p = Packing::new(1, 4, vec![cyc(&[0, 1, 2])]).unwrap();
        for origin in [2, 3] {
            assert_eq!(
                perform_switch(&p, SwitchRequest { alpha: 0, beta: 1, origin }),
                Err(Error::NoSurplusAtOrigin(origin))
            );
        }
        let p = Packing::empty(2, 3);
        assert_eq!(
            perform_switch(&p, SwitchRequest { alpha: 0, beta: 1, origin: 2 }),
            Err(Error::NoSurplusAtOrigin(2))
        );
    }

    #[test]
    fn rejects_malformed_requests() {
        let p = Packing::empty(1, 4);
        assert!(matches!(
            perform_switch(&p, SwitchRequest { alpha: 0, beta: 0, origin: 2 }),
            Err(Error::InvalidSwitch(_))
        ));
        assert!(matches!(
            perform_switch(&p, SwitchRequest { alpha: 0, beta: 1, origin: 1 }),
            Err(Error::InvalidSwitch(_))
        ));
        assert!(matches!(
            perform_switch(&p, SwitchRequest { alpha: 0, beta: 9, origin: 1 }),
            Err(Error::InvalidSwitch(_))
        ));
    }

    #[test]
    fn rewrite_options_for_cycle_through_both() {
        // (0,2,1,3) with alpha 0, beta 1: both paths have one interior vertex,
        // so swapping either is the identity
        assert!(rewrites(&cyc(&[0, 2, 1, 3]), 0, 1).is_empty());
        // (0,1,2,3): one path is the edge 01, the other 0-3-2-1
        let rs = rewrites(&cyc(&[0, 1, 2, 3]), 0, 1);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].cycle, cyc(&[0, 1, 3, 2]));
        assert_eq!(rs[0].delta, vec![(3, -1), (2, 1)]);
        // 2-cycle through alpha only
        let rs = rewrites(&cyc(&[0, 4]), 0, 1);
        assert_eq!(rs[0].delta, vec![(4, -2)]);
        assert_eq!(rs[0].cycle, cyc(&[1, 4]));
    }
}
