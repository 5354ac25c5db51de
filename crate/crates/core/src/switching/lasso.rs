use crate::cycle::{Cycle, Lasso};
use crate::error::{Error, Result};
use crate::packing::Packing;
use crate::structure::{find_cycle_of_length, find_lasso};
use crate::Vertex;

use super::{apply_switch, AppliedSwitch};

/// Result of [`lasso_to_cycle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoToCycle {
    /// The input packing with `cycle` appended (after the switches).
    pub packing: Packing,
    pub cycle: Cycle,
    pub switches: Vec<AppliedSwitch>,
    /// The lasso the procedure started from, before truncation; `None` when
    /// the leave already had an `s`-cycle.
    pub initial: Option<Lasso>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Case {
    /// `p == 2` or `p = s (mod 2)`, first switch.
    OneA,
    /// Second switch of case 1, on the `(q, p)`-lasso.
    OneB,
    /// `p != s (mod 2)`, `p >= 4`.
    Two,
    /// `p > s`.
    Three,
}

fn lasso_from(cycle: Vec<Vertex>, path: Vec<Vertex>) -> Result<Lasso> {
    Lasso::new(cycle, path).map_err(|e| Error::Logic(format!("lasso bookkeeping: {e}")))
}

/// Lasso expected after a case 1B or case 2 switch: the switch at
/// `(x_2, y_q)` with origin `x_3` turns a `(p, q)`-lasso into a
/// `(q + 2, p - 2)`-lasso.
fn fold_path_into_cycle(l: &Lasso) -> Result<Lasso> {
    let (p, q) = (l.p(), l.q());
    let mut cycle = vec![l.x(1), l.x(2)];
    cycle.extend((1..q).rev().map(|j| l.y(j)));
    cycle.push(l.x(p));
    let mut path: Vec<Vertex> = (3..=p).rev().map(|i| l.x(i)).collect();
    path.push(l.y(q));
    lasso_from(cycle, path)
}

fn expected_after(case: Case, l: &Lasso, s: usize) -> Result<Lasso> {
    let (p, q) = (l.p(), l.q());
    match case {
        Case::OneA => {
            let mut cycle: Vec<Vertex> = (1..=q - 2).map(|j| l.y(j)).collect();
            cycle.extend([l.x(1), l.x(p)]);
            let mut path: Vec<Vertex> = (2..=p).rev().map(|i| l.x(i)).collect();
            path.extend([l.y(q - 1), l.y(q)]);
            lasso_from(cycle, path)
        }
        Case::OneB | Case::Two => fold_path_into_cycle(l),
        Case::Three => {
            let mut cycle: Vec<Vertex> = (1..=p - s + 1).map(|i| l.x(i)).collect();
            cycle.push(l.x(p));
            let mut path: Vec<Vertex> = (p - s + 2..=p).rev().map(|i| l.x(i)).collect();
            path.extend((1..=q).map(|j| l.y(j)));
            lasso_from(cycle, path)
        }
    }
}

fn finish(
    mut packing: Packing,
    s: usize,
    switches: Vec<AppliedSwitch>,
    initial: Option<Lasso>,
) -> Result<LassoToCycle> {
    let cycle = find_cycle_of_length(packing.leave(), s).expect("caller saw an s-cycle");
    packing.add_cycle(cycle.clone())?;
    Ok(LassoToCycle {
        packing,
        cycle,
        switches,
        initial,
    })
}

fn request_for(case: Case, l: &Lasso, s: usize) -> (Vertex, Vertex, Vertex) {
    let (p, q) = (l.p(), l.q());
    match case {
        Case::OneA => (l.x(1), l.y(q - 1), l.x(2)),
        Case::OneB | Case::Two => (l.x(2), l.y(q), l.x(3)),
        Case::Three => (l.x(p - s + 1), l.y(1), l.x(p - s + 2)),
    }
}

/// Turns a long enough lasso in the leave into an `s`-cycle of the packing.
///
/// Requires `s >= 3` and a `(p, q)`-lasso in the leave with `p + q >= s + 2`,
/// `p` even when `s` is even (the smallest such lasso is used). If the leave
/// already has an `s`-cycle, the smallest one is added directly. Otherwise
/// the lasso is reshaped by switches until the leave contains an `s`-cycle,
/// which is then added. The leave loses exactly `s` edges.
pub fn lasso_to_cycle(p: &Packing, s: usize) -> Result<LassoToCycle> {
    if s < 3 {
        return Err(Error::PreconditionViolated(format!("s = {s} < 3")));
    }
    if find_cycle_of_length(p.leave(), s).is_some() {
        return finish(p.clone(), s, Vec::new(), None);
    }
    let Some(initial) = find_lasso(p.leave(), s + 2, s % 2 == 0) else {
        let parity = if s % 2 == 0 { " with an even cycle" } else { "" };
        return Err(Error::PreconditionViolated(format!(
            "leave has no lasso of order >= {}{parity}",
            s + 2
        )));
    };

    let budget = initial.order();
    let mut packing = p.clone();
    let mut lasso = initial.clone();
    let mut switches = Vec::new();
    let mut pending: Option<Case> = None;
    loop {
        let case = match pending.take() {
            Some(c) => c,
            None => {
                let lp = lasso.p();
                if lp == s {
                    return Err(Error::Logic("s-cycle in leave went undetected".into()));
                }
                if lp > s {
                    Case::Three
                } else {
                    lasso = lasso.truncated(s + 2 - lp);
                    if lp == 2 || lp % 2 == s % 2 {
                        Case::OneA
                    } else {
                        Case::Two
                    }
                }
            }
        };
        if case == Case::OneB && lasso.p() < 3 {
            return Err(Error::Logic("case 1 second switch on a 2-cycle lasso".into()));
        }
        if switches.len() >= budget {
            return Err(Error::Logic("lasso_to_cycle exceeded its iteration bound".into()));
        }
        let (alpha, beta, origin) = request_for(case, &lasso, s);
        debug_assert_eq!(
            packing.leave().multiplicity(origin, beta),
            0,
            "otherwise the leave has an s-cycle"
        );
        let expected = expected_after(case, &lasso, s)?;
        let step = apply_switch(&packing, alpha, beta, origin)?;
        packing = step.0;
        switches.push(step.1);
        if find_cycle_of_length(packing.leave(), s).is_some() {
            return finish(packing, s, switches, Some(initial));
        }
        if !expected.is_in(packing.leave()) {
            return Err(Error::Logic(format!(
                "after {case:?} switch the leave lacks {expected}"
            )));
        }
        lasso = expected;
        pending = (case == Case::OneA).then_some(Case::OneB);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Multigraph;

    fn cyc(vs: &[Vertex]) -> Cycle {
        Cycle::new(vs.to_vec()).unwrap()
    }

    /// A packing of `lambda K_v` whose leave is exactly `leave`, built by
    /// greedily peeling 2-cycles and then short cycles off the complement.
    fn packing_with_leave(lambda: u32, v: usize, leave: &Multigraph) -> Packing {
        let mut rest = Multigraph::complete(lambda, v);
        for (x, y) in leave.edge_list() {
            assert!(rest.remove_edge(x, y, 1));
        }
        let mut cycles = Vec::new();
        for ((x, y), _) in rest.pairs().collect::<Vec<_>>() {
            while rest.multiplicity(x, y) >= 2 {
                rest.remove_edge(x, y, 2);
                cycles.push(cyc(&[x, y]));
            }
        }
        loop {
            let Some(c) = (3..=v).find_map(|s| find_cycle_of_length(&rest, s)) else {
                break;
            };
            for (x, y) in c.edges() {
                rest.remove_edge(x, y, 1);
            }
            cycles.push(c);
        }
        assert!(rest.is_empty(), "test fixture complement is not cycle-decomposable");
        Packing::new(lambda, v, cycles).unwrap()
    }

    #[test]
    fn adds_existing_cycle() {
        let leave = Multigraph::from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]);
        let p = packing_with_leave(1, 7, &leave);
        let r = lasso_to_cycle(&p, 3).unwrap();
        assert_eq!(r.cycle, cyc(&[0, 1, 2]));
        assert!(r.switches.is_empty());
        assert_eq!(r.initial, None);
        assert_eq!(r.packing.leave().edge_count(), 4);
    }

    #[test]
    fn two_cycle_lasso_without_triangle() {
        let leave = Multigraph::from_edges(5, [(0, 1), (0, 1), (1, 2), (2, 3), (3, 4), (1, 4)]);
        let p = packing_with_leave(2, 5, &leave);
        assert!(find_cycle_of_length(p.leave(), 3).is_none());
        let r = lasso_to_cycle(&p, 3).unwrap();
        assert_eq!(r.initial.as_ref().map(Lasso::p), Some(2));
        assert!(!r.switches.is_empty());
        assert_eq!(r.packing.leave().edge_count(), 3);
        assert!(r.packing.leave().degrees().iter().all(|d| d % 2 == 0));
    }

    #[test]
    fn random_leaves_cover_all_cases() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};

        let mut rng = StdRng::seed_from_u64(11);
        let (mut long_cycle, mut digon, mut runs) = (0, 0, 0);
        for _ in 0..3000 {
            let lambda = rng.gen_range(1..=3u32);
            let v = rng.gen_range(5..=8usize);
            let target = rng.gen_range(4..=14);
            let p = super::super::testkit::sparse_packing(&mut rng, lambda, v, target);
            let s = rng.gen_range(3..=v - 2);
            if find_cycle_of_length(p.leave(), s).is_some()
                || find_lasso(p.leave(), s + 2, s % 2 == 0).is_none()
            {
                continue;
            }
            let r = lasso_to_cycle(&p, s).unwrap();
            runs += 1;
            let init = r.initial.as_ref().unwrap();
            long_cycle += usize::from(init.p() > s);
            digon += usize::from(init.p() == 2);
            assert!(r.switches.len() <= init.order());
            assert_eq!(r.cycle.len(), s);
            assert_eq!(r.packing.leave().edge_count() + s as u64, p.leave().edge_count());
            let mut expect = p.lengths();
            expect.push(s);
            expect.sort_unstable();
            assert_eq!(r.packing.lengths(), expect);
            assert_eq!(
                r.packing.leave(),
                &crate::packing::leave_of(lambda, v, r.packing.cycles()).unwrap()
            );
        }
        assert!(runs > 100, "only {runs} qualifying instances");
        assert!(long_cycle > 0 && digon > 0, "{long_cycle} {digon}");
    }

    #[test]
    fn rejects_missing_lasso() {
        let p = Packing::new(1, 4, vec![cyc(&[0, 1, 2, 3])]).unwrap();
        assert!(matches!(lasso_to_cycle(&p, 3), Err(Error::PreconditionViolated(_))));
        assert!(matches!(lasso_to_cycle(&p, 2), Err(Error::PreconditionViolated(_))));
    }
}
