//! The sweep domain: every nondecreasing list with entries in `[2, v]` and
//! sum at most `lambda C(v, 2)`, and seeded samples of it.

use rand::seq::index;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// All nondecreasing lists with entries in `[2, v]` and sum `<= max_sum`,
/// in depth-first pre-order (each list before its extensions, extensions by
/// increasing next entry). The empty list comes first.
pub fn enumerate_lists(v: usize, max_sum: usize) -> Vec<Vec<usize>> {
    fn go(v: usize, room: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for m in min..=v.min(room) {
            cur.push(m);
            go(v, room - m, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(v, max_sum, 2, &mut Vec::new(), &mut out);
    out
}

/// Number of lists [`enumerate_lists`] returns, by counting partitions of
/// every total up to `max_sum` into parts from `[2, v]`.
pub fn count_lists(v: usize, max_sum: usize) -> u64 {
    let mut ways = vec![0u64; max_sum + 1];
    ways[0] = 1;
    for part in 2..=v {
        for total in part..=max_sum {
            ways[total] += ways[total - part];
        }
    }
    ways.iter().sum()
}

/// Sorted positions of `n` distinct items out of `len`, or all of them when
/// `n >= len`.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`, and the
/// positions are drawn with `rand::seq::index::sample`, so a seed picks the
/// same positions on every platform.
pub fn sample_indices(len: usize, n: usize, seed: u64) -> Vec<usize> {
    if n >= len {
        return (0..len).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, len, n).into_vec();
    picked.sort_unstable();
    picked
}

/// The whole domain for `(lambda, v)`, or a seeded sample of `n` lists kept
/// in enumeration order.
pub fn domain(lambda: u32, v: usize, sample: Option<(usize, u64)>) -> Vec<Vec<usize>> {
    let max_sum = lambda as usize * v * v.saturating_sub(1) / 2;
    let all = enumerate_lists(v, max_sum);
    match sample {
        None => all,
        Some((n, seed)) => sample_indices(all.len(), n, seed)
            .into_iter()
            .map(|i| all[i].clone())
            .collect(),
    }
}
