//! Surplus lists: extra cycle lengths appended to a list so that a full
//! decomposition exists, then removed again to leave the required leave.

use crate::error::{Error, Result};

/// The list `N` together with the total it sums to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurplusList {
    /// Entries in construction order, each in `[2, v]`.
    pub entries: Vec<usize>,
    pub total: usize,
}

impl SurplusList {
    fn new(entries: Vec<usize>) -> SurplusList {
        debug_assert!(entries.iter().all(|&n| n >= 2));
        let total = entries.iter().sum();
        SurplusList { entries, total }
    }

    /// Sum of the entries equal to 2.
    pub fn two_sum(&self) -> usize {
        self.entries.iter().filter(|&&n| n == 2).sum()
    }
}

/// Surplus list for odd `lambda` with `eps = delta` (`v` odd) or
/// `delta - v/2` (`v` even), `eps >= 1`, `v >= 3`.
///
/// Errors with [`Error::CaseMismatch`] when `v` is even and `eps` is 1 or 2,
/// where no surplus list is used.
pub fn compute_surplus_list_odd(v: usize, eps: usize) -> Result<SurplusList> {
    if eps == 0 || v < 3 || (v % 2 == 0 && eps <= 2) {
        return Err(Error::CaseMismatch);
    }
    if eps == 1 {
        return Err(Error::PreconditionViolated("eps = 1 with v odd".into()));
    }
    let mut entries = Vec::new();
    if v == 3 {
        if eps % 2 == 0 {
            entries.resize(eps / 2, 2);
        } else {
            entries.resize((eps - 3) / 2, 2);
            entries.push(3);
        }
        return Ok(SurplusList::new(entries));
    }
    let (q, r) = (eps / v, eps % v);
    if q == 0 || !(1..=2).contains(&r) {
        if r > 0 {
            entries.push(r);
        }
        entries.resize(entries.len() + q, v);
    } else {
        entries.extend([3, v - 3 + r]);
        entries.resize(entries.len() + q - 1, v);
    }
    Ok(SurplusList::new(entries))
}

/// Surplus list for even `lambda` with leave size `delta >= 2` and longest
/// length `m_tau >= 2` (`delta` even when `m_tau = 2`).
pub fn compute_surplus_list_even(delta: usize, m_tau: usize) -> SurplusList {
    let entries = if delta < m_tau {
        vec![delta]
    } else if (delta - m_tau) % 2 == 0 {
        let mut e = vec![2; (delta - m_tau) / 2];
        e.push(m_tau);
        e
    } else {
        let mut e = vec![2; (delta - m_tau + 1) / 2];
        e.push(m_tau - 1);
        e
    };
    SurplusList::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_examples() {
        assert_eq!(compute_surplus_list_odd(3, 4).unwrap().entries, vec![2, 2]);
        assert_eq!(compute_surplus_list_odd(5, 7).unwrap().entries, vec![3, 4]);
        assert_eq!(compute_surplus_list_odd(5, 3).unwrap().entries, vec![3]);
        assert_eq!(compute_surplus_list_odd(4, 9).unwrap().entries, vec![3, 2, 4]);
        assert_eq!(compute_surplus_list_odd(3, 5).unwrap().entries, vec![2, 3]);
        assert_eq!(compute_surplus_list_odd(5, 10).unwrap().entries, vec![5, 5]);
        assert_eq!(compute_surplus_list_odd(6, 2), Err(Error::CaseMismatch));
        assert_eq!(compute_surplus_list_odd(6, 1), Err(Error::CaseMismatch));
    }

    #[test]
    fn even_examples() {
        assert_eq!(compute_surplus_list_even(3, 5).entries, vec![3]);
        assert_eq!(compute_surplus_list_even(9, 5).entries, vec![2, 2, 5]);
        assert_eq!(compute_surplus_list_even(8, 5).entries, vec![2, 2, 4]);
    }

    #[test]
    fn odd_lists_sum_to_eps_and_stay_in_range() {
        for v in 3..=12 {
            for eps in 1..=120 {
                let Ok(n) = compute_surplus_list_odd(v, eps) else {
                    assert!(eps == 1 || (v % 2 == 0 && eps == 2));
                    continue;
                };
                assert_eq!(n.total, eps);
                assert!(n.entries.iter().all(|&x| (2..=v).contains(&x)), "{v} {eps} {n:?}");
                // at most one 2 unless v = 3
                if v > 3 {
                    assert!(n.two_sum() <= 2);
                }
            }
        }
    }

    #[test]
    fn even_lists_sum_to_delta() {
        for m_tau in 2..=10 {
            for delta in 2..=60 {
                // all 2-cycles with even lambda forces an even delta
                if m_tau == 2 && delta % 2 == 1 {
                    continue;
                }
                let n = compute_surplus_list_even(delta, m_tau);
                assert_eq!(n.total, delta);
                assert!(n.entries.iter().all(|&x| (2..=m_tau).contains(&x)));
            }
        }
    }
}
