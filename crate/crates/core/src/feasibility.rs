//! Exact existence predicates for cycle packings and cycle decompositions of
//! `lambda K_v`.
//!
//! All arithmetic is done in `i128`, which is exact for `lambda, v <= 2^16`
//! and any length list that fits in memory.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::instance::Instance;

/// One of the four packing conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Every length lies in `[2, v]`.
    LengthRange,
    /// Leave size `delta` is a nonnegative integer with the parity/size restrictions.
    LeaveSize,
    /// Bound on the total length of 2-cycles (odd `lambda`).
    TwoCycleBudget,
    /// Bound on the longest cycle (even `lambda`).
    LongestCycle,
}

impl Condition {
    pub fn roman(self) -> &'static str {
        match self {
            Condition::LengthRange => "i",
            Condition::LeaveSize => "ii",
            Condition::TwoCycleBudget => "iii",
            Condition::LongestCycle => "iv",
        }
    }

    pub fn from_roman(s: &str) -> Option<Condition> {
        match s {
            "i" => Some(Condition::LengthRange),
            "ii" => Some(Condition::LeaveSize),
            "iii" => Some(Condition::TwoCycleBudget),
            "iv" => Some(Condition::LongestCycle),
            _ => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    /// `lambda C(v,2) - sum(lengths)`; negative when the lengths overshoot.
    pub delta: i64,
    /// For odd `lambda`: `delta` if `v` is odd, `delta - v/2` if `v` is even.
    pub epsilon: Option<i64>,
    pub failed_conditions: BTreeSet<Condition>,
}

impl FeasibilityVerdict {
    pub fn feasible(&self) -> bool {
        self.failed_conditions.is_empty()
    }

    pub fn failed(&self, c: Condition) -> bool {
        self.failed_conditions.contains(&c)
    }
}

fn pairs(v: usize) -> i128 {
    let v = v as i128;
    v * (v - 1) / 2
}

fn sum_i128(lengths: &[usize]) -> i128 {
    lengths.iter().map(|&m| m as i128).sum()
}

fn two_sum(lengths: &[usize]) -> i128 {
    lengths.iter().filter(|&&m| m == 2).map(|&m| m as i128).sum()
}

fn clamp_i64(x: i128) -> i64 {
    x.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

fn delta_i128(instance: &Instance) -> i128 {
    instance.lambda() as i128 * pairs(instance.v()) - sum_i128(instance.lengths())
}

/// `lambda C(v,2) - sum(lengths)`.
pub fn delta_of(instance: &Instance) -> i64 {
    clamp_i64(delta_i128(instance))
}

fn lengths_in_range(instance: &Instance) -> bool {
    match (instance.lengths().first(), instance.lengths().last()) {
        (Some(&lo), Some(&hi)) => lo >= 2 && hi <= instance.v(),
        _ => true,
    }
}

/// Evaluates all four packing conditions and reports every one that fails.
pub fn check_packing_feasibility(instance: &Instance) -> FeasibilityVerdict {
    let lambda = instance.lambda() as i128;
    let v = instance.v() as i128;
    let c2 = pairs(instance.v());
    let delta = delta_i128(instance);
    let tau = instance.tau() as i128;
    let odd_host = (lambda * (v - 1)) % 2 == 1;
    let mut failed = BTreeSet::new();

    if !lengths_in_range(instance) {
        failed.insert(Condition::LengthRange);
    }

    // delta = 2 with lambda = 1 is excluded only for an even host: K_4 minus
    // a 4-cycle leaves a perfect matching, a valid odd leave with delta = 2
    let leave_ok = delta >= 0
        && !(!odd_host && delta == 1)
        && !(lambda == 1 && !odd_host && delta == 2)
        && !(odd_host && 2 * delta < v);
    if !leave_ok {
        failed.insert(Condition::LeaveSize);
    }

    if lambda % 2 == 1 {
        let bound = if v % 2 == 1 && delta == 2 {
            (lambda - 1) * c2 - 2
        } else {
            (lambda - 1) * c2
        };
        if two_sum(instance.lengths()) > bound {
            failed.insert(Condition::TwoCycleBudget);
        }
    }

    if lambda % 2 == 0 {
        if let Some(m_tau) = instance.max_length() {
            let m_tau = m_tau as i128;
            let half = lambda / 2 * c2;
            let bound = if delta == 0 {
                Some(half - tau + 2)
            } else if delta >= 2 && delta < m_tau {
                Some(half - tau + 1)
            } else {
                None
            };
            if bound.is_some_and(|b| m_tau > b) {
                failed.insert(Condition::LongestCycle);
            }
        }
    }

    let epsilon = (lambda % 2 == 1).then(|| {
        if v % 2 == 1 {
            clamp_i64(delta)
        } else {
            clamp_i64(delta - v / 2)
        }
    });

    FeasibilityVerdict {
        delta: clamp_i64(delta),
        epsilon,
        failed_conditions: failed,
    }
}

/// Whether the lengths decompose `lambda K_v` exactly (`with_one_factor =
/// false`) or `lambda K_v - I` for a 1-factor `I` (`with_one_factor = true`).
///
/// Asking for the 1-factor variant when `lambda (v-1)` is even is an error;
/// asking for the plain variant when it is odd simply yields `false`.
pub fn check_decomposition_feasibility(instance: &Instance, with_one_factor: bool) -> Result<bool> {
    let lambda = instance.lambda() as i128;
    let v = instance.v() as i128;
    let c2 = pairs(instance.v());
    let odd_host = (lambda * (v - 1)) % 2 == 1;
    let sum = sum_i128(instance.lengths());
    let tau = instance.tau() as i128;

    if with_one_factor {
        if !odd_host {
            return Err(Error::ParityMismatch);
        }
        return Ok(lengths_in_range(instance)
            && sum == lambda * c2 - v / 2
            && two_sum(instance.lengths()) <= (lambda - 1) * c2);
    }

    if odd_host || !lengths_in_range(instance) || sum != lambda * c2 {
        return Ok(false);
    }
    if lambda % 2 == 0 {
        if let Some(m_tau) = instance.max_length() {
            if m_tau as i128 + tau - 2 > lambda / 2 * c2 {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        Ok(two_sum(instance.lengths()) <= (lambda - 1) * c2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(lambda: u32, v: usize, lengths: &[usize]) -> Instance {
        Instance::from_unsorted(lambda, v, lengths.to_vec()).unwrap()
    }

    fn failed(lambda: u32, v: usize, lengths: &[usize]) -> Vec<&'static str> {
        check_packing_feasibility(&inst(lambda, v, lengths))
            .failed_conditions
            .iter()
            .map(|c| c.roman())
            .collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_of(&inst(1, 5, &[3, 3])), 4);
        assert_eq!(delta_of(&inst(2, 3, &[2, 2, 2])), 0);
        let mut m = vec![2; 10];
        m.extend([4, 4]);
        assert_eq!(delta_of(&inst(3, 5, &m)), 2);
        assert_eq!(delta_of(&inst(1, 3, &[3, 3])), -3);
    }

    #[test]
    fn packing_examples() {
        assert_eq!(failed(1, 5, &[4, 5]), vec!["ii"]);
        // with lambda = 1 the (iii) bound is negative when delta = 2, so it fails too
        assert_eq!(failed(1, 5, &[3, 5]), vec!["ii", "iii"]);
        assert_eq!(failed(1, 6, &[4, 5, 5]), vec!["ii"]);
        assert_eq!(failed(2, 4, &[2, 2, 2, 2, 4]), vec!["iv"]);
        let mut m = vec![2; 10];
        m.extend([4, 4]);
        assert_eq!(failed(3, 5, &m), vec!["iii"]);
        assert!(failed(1, 5, &[3, 3]).is_empty());
        assert!(failed(1, 4, &[4]).is_empty());
        assert!(failed(3, 7, &[]).is_empty());
        assert!(failed(1, 1, &[]).is_empty());
    }

    #[test]
    fn reports_every_failed_condition() {
        // lengths out of range, overshoot, and too many 2-cycles at once
        assert_eq!(failed(1, 3, &[2, 2, 4]), vec!["i", "ii", "iii"]);
        let v = check_packing_feasibility(&inst(1, 4, &[5]));
        assert!(v.failed(Condition::LengthRange));
        assert!(!v.feasible());
    }

    #[test]
    fn epsilon_follows_parity_of_v() {
        assert_eq!(check_packing_feasibility(&inst(1, 6, &[3, 3, 3, 3])).epsilon, Some(0));
        assert_eq!(check_packing_feasibility(&inst(3, 5, &[2, 2, 3])).epsilon, Some(23));
        assert_eq!(check_packing_feasibility(&inst(2, 5, &[3])).epsilon, None);
    }

    #[test]
    fn even_lambda_longest_cycle_branches() {
        // delta = 3 < m_tau = 5, bound = 10 - 1 + 1 = 10: fine
        assert!(failed(2, 5, &[2, 5, 5, 5]).is_empty());
        // delta >= m_tau: no constraint from (iv)
        assert!(failed(2, 4, &[4]).is_empty());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(check_decomposition_feasibility(&inst(1, 5, &[5, 5]), false), Ok(true));
        assert_eq!(check_decomposition_feasibility(&inst(1, 6, &[3, 3, 3, 3]), true), Ok(true));
        assert_eq!(
            check_decomposition_feasibility(&inst(2, 4, &[2, 2, 2, 2, 4]), false),
            Ok(false)
        );
        assert_eq!(
            check_decomposition_feasibility(&inst(1, 5, &[5, 5]), true),
            Err(Error::ParityMismatch)
        );
        assert_eq!(check_decomposition_feasibility(&inst(1, 6, &[5, 5, 5]), false), Ok(false));
        assert_eq!(check_decomposition_feasibility(&inst(4, 1, &[]), false), Ok(true));
    }

    #[test]
    fn packing_with_zero_leave_matches_decomposition() {
        for lambda in 1..=4u32 {
            for v in 2..=7usize {
                let budget = lambda as usize * v * (v - 1) / 2;
                for a in 0..=budget / 2 {
                    for b in 0..=budget / v {
                        let rest = budget as i64 - 2 * a as i64 - (v * b) as i64;
                        if rest < 0 || rest % 3 != 0 || v < 3 {
                            continue;
                        }
                        let mut m = vec![2; a];
                        m.extend(std::iter::repeat_n(3, rest as usize / 3));
                        m.extend(std::iter::repeat_n(v, b));
                        let i = inst(lambda, v, &m);
                        if i.odd_host() {
                            continue;
                        }
                        assert_eq!(
                            check_packing_feasibility(&i).feasible(),
                            check_decomposition_feasibility(&i, false).unwrap(),
                            "{i:?}"
                        );
                    }
                }
            }
        }
    }
}
