//! Exhaustive, deterministic searches for cycles, lassos and chorded cycles
//! inside small multigraphs (typically leaves). Every search walks candidates
//! in lexicographic order of their canonical encoding and returns the first
//! hit, so results are reproducible.

use std::ops::ControlFlow;

use crate::cycle::{Cycle, Lasso};
use crate::multigraph::Multigraph;
use crate::Vertex;

/// Calls `visit` on every cycle of `g` with length in `min_len..=max_len`,
/// as canonical vertex sequences in lexicographic order.
fn for_each_cycle(
    mat: &[Vec<u32>],
    min_len: usize,
    max_len: usize,
    visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn extend(
        mat: &[Vec<u32>],
        seq: &mut Vec<Vertex>,
        used: &mut [bool],
        min_len: usize,
        max_len: usize,
        visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let k = seq.len();
        let start = seq[0];
        let last = seq[k - 1];
        if k >= min_len.max(2) {
            let closes = if k == 2 {
                mat[start][last] >= 2
            } else {
                mat[last][start] >= 1 && seq[1] < last
            };
            if closes {
                visit(seq)?;
            }
        }
        if k < max_len {
            for w in start + 1..mat.len() {
                if !used[w] && mat[last][w] >= 1 {
                    used[w] = true;
                    seq.push(w);
                    let r = extend(mat, seq, used, min_len, max_len, visit);
                    seq.pop();
                    used[w] = false;
                    r?;
                }
            }
        }
        ControlFlow::Continue(())
    }

    let v = mat.len();
    let mut used = vec![false; v];
    let mut seq = Vec::with_capacity(max_len);
    for start in 0..v {
        used[start] = true;
        seq.push(start);
        let r = extend(mat, &mut seq, &mut used, min_len, max_len, visit);
        seq.pop();
        used[start] = false;
        r?;
    }
    ControlFlow::Continue(())
}

/// Lexicographically smallest path with exactly `q` edges starting at `from`
/// and avoiding the `blocked` vertices.
fn smallest_path(mat: &[Vec<u32>], from: Vertex, q: usize, blocked: &mut [bool]) -> Option<Vec<Vertex>> {
    fn go(mat: &[Vec<u32>], path: &mut Vec<Vertex>, q: usize, blocked: &mut [bool]) -> bool {
        if path.len() == q + 1 {
            return true;
        }
        let last = *path.last().unwrap();
        for w in 0..mat.len() {
            if !blocked[w] && mat[last][w] >= 1 {
                blocked[w] = true;
                path.push(w);
                if go(mat, path, q, blocked) {
                    blocked[w] = false;
                    return true;
                }
                path.pop();
                blocked[w] = false;
            }
        }
        false
    }
    let mut path = vec![from];
    if go(mat, &mut path, q, blocked) {
        Some(path)
    } else {
        None
    }
}

/// Lexicographically smallest canonical `s`-cycle of `g`. For `s = 2` this is
/// a pair of multiplicity at least 2.
pub fn find_cycle_of_length(g: &Multigraph, s: usize) -> Option<Cycle> {
    if s < 2 || s > g.order() {
        return None;
    }
    let mat = g.matrix();
    let mut found = None;
    let _ = for_each_cycle(&mat, s, s, &mut |seq| {
        found = Some(Cycle::new(seq.to_vec()).expect("search yields valid cycles"));
        ControlFlow::Break(())
    });
    found
}

/// All `s`-cycles of `g` in canonical order.
pub fn cycles_of_length(g: &Multigraph, s: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    if s < 2 || s > g.order() {
        return out;
    }
    let mat = g.matrix();
    let _ = for_each_cycle(&mat, s, s, &mut |seq| {
        out.push(Cycle::new(seq.to_vec()).expect("search yields valid cycles"));
        ControlFlow::Continue(())
    });
    out
}

fn search_lasso(g: &Multigraph, path_len_for: impl Fn(usize) -> Option<usize>) -> Option<Lasso> {
    let mat = g.matrix();
    let v = g.order();
    let mut found = None;
    let _ = for_each_cycle(&mat, 2, v, &mut |seq| {
        let p = seq.len();
        let Some(q) = path_len_for(p) else {
            return ControlFlow::Continue(());
        };
        if q == 0 || p + q > v {
            return ControlFlow::Continue(());
        }
        let mut blocked = vec![false; v];
        for &x in seq {
            blocked[x] = true;
        }
        let mut attachments: Vec<(usize, Vertex)> = seq.iter().copied().enumerate().collect();
        attachments.sort_unstable_by_key(|&(_, x)| x);
        for (i, a) in attachments {
            if let Some(path) = smallest_path(&mat, a, q, &mut blocked) {
                let mut walk = seq.to_vec();
                walk.rotate_left(i + 1);
                found = Some(Lasso::new(walk, path).expect("search yields valid lassos"));
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    found
}

/// Smallest lasso of order at least `min_order`, with an even cycle when
/// `even_cycle_required`. Among lassos with the same cycle the shortest
/// qualifying path is used (a prefix sorts before its extensions).
pub fn find_lasso(g: &Multigraph, min_order: usize, even_cycle_required: bool) -> Option<Lasso> {
    search_lasso(g, |p| {
        if even_cycle_required && p % 2 == 1 {
            None
        } else {
            Some(min_order.saturating_sub(p).max(1))
        }
    })
}

/// Smallest `(p, q)`-lasso of `g`.
pub fn find_lasso_exact(g: &Multigraph, p: usize, q: usize) -> Option<Lasso> {
    search_lasso(g, |len| (len == p).then_some(q))
}

/// An `(s+1)`-cycle `(x_1, ..., x_{s+1})` with chord `x_1 x_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordedCycle {
    /// `x_1, ..., x_{s+1}`.
    pub labels: Vec<Vertex>,
    /// Position of the chord's second end, `2 <= e <= (len + 2) / 2`.
    pub e: usize,
}

impl ChordedCycle {
    /// 1-based label.
    pub fn x(&self, i: usize) -> Vertex {
        self.labels[i - 1]
    }
}

/// Finds a `len`-cycle of `g` with a chord (an edge parallel to a cycle edge
/// counts), labelled so the chord is `x_1 x_e` with `e` as small as possible.
/// Among configurations with the smallest `e`, the first cycle in canonical
/// order wins; within a cycle, the chord with the smallest end positions.
pub fn find_chorded_cycle(g: &Multigraph, len: usize) -> Option<ChordedCycle> {
    if len < 4 || len > g.order() {
        return None;
    }
    let mat = g.matrix();
    let mut best: Option<ChordedCycle> = None;
    let _ = for_each_cycle(&mat, len, len, &mut |seq| {
        let n = seq.len();
        for i in 0..n {
            for j in i + 1..n {
                let d = j - i;
                let adjacent = d == 1 || d == n - 1;
                let needed = if adjacent { 2 } else { 1 };
                if mat[seq[i]][seq[j]] < needed {
                    continue;
                }
                // label x_1 at one chord end, walking the short way to the other
                let (from, dist) = if d <= n - d { (i, d) } else { (j, n - d) };
                let e = dist + 1;
                if best.as_ref().is_some_and(|b| b.e <= e) {
                    continue;
                }
                let labels: Vec<Vertex> = (0..n).map(|k| seq[(from + k) % n]).collect();
                best = Some(ChordedCycle { labels, e });
            }
        }
        if best.as_ref().is_some_and(|b| b.e == 2) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_examples() {
        let g = Multigraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]);
        assert_eq!(find_cycle_of_length(&g, 3).unwrap().vertices(), &[0, 1, 2]);

        let c4 = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(find_cycle_of_length(&c4, 3), None);
        assert_eq!(find_cycle_of_length(&c4, 4).unwrap().vertices(), &[0, 1, 2, 3]);

        let dbl = Multigraph::from_edges(3, [(0, 1), (0, 1)]);
        assert_eq!(find_cycle_of_length(&dbl, 2).unwrap().vertices(), &[0, 1]);
    }

    #[test]
    fn smallest_cycle_is_canonical_minimum() {
        let k5 = Multigraph::complete(1, 5);
        let all = cycles_of_length(&k5, 4);
        assert_eq!(all.len(), 15);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(find_cycle_of_length(&k5, 4).as_ref(), all.first());
    }

    #[test]
    fn lasso_examples() {
        let g = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)]);
        let l = find_lasso(&g, 4, false).unwrap();
        assert_eq!((l.p(), l.q()), (3, 1));
        assert_eq!(l.attachment(), 0);
        assert!(l.is_in(&g));

        let c5 = Multigraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(find_lasso(&c5, 4, false), None);

        let g = Multigraph::from_edges(
            6,
            [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)],
        );
        let l = find_lasso(&g, 6, true).unwrap();
        assert_eq!((l.p(), l.q()), (4, 2));
        assert_eq!(l.path_walk(), &[3, 4, 5]);
    }

    #[test]
    fn two_cycle_lasso() {
        let g = Multigraph::from_edges(5, [(0, 1), (0, 1), (1, 2), (2, 3), (3, 4)]);
        let l = find_lasso_exact(&g, 2, 3).unwrap();
        assert_eq!(l.cycle_walk(), &[0, 1]);
        assert_eq!(l.path_walk(), &[1, 2, 3, 4]);
    }

    #[test]
    fn chorded_cycle_labels() {
        let g = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        let cc = find_chorded_cycle(&g, 4).unwrap();
        assert_eq!(cc.e, 3);
        assert!(g.multiplicity(cc.x(1), cc.x(3)) >= 1);

        let par = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 1)]);
        let cc = find_chorded_cycle(&par, 4).unwrap();
        assert_eq!(cc.e, 2);
        assert_eq!(par.multiplicity(cc.x(1), cc.x(2)), 2);

        let c4 = Multigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(find_chorded_cycle(&c4, 4), None);
    }
}
