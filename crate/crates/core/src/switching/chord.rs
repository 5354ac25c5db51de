use std::collections::BTreeSet;

use crate::cycle::{Cycle, Lasso};
use crate::error::{Error, Result};
use crate::packing::Packing;
use crate::structure::{find_chorded_cycle, find_lasso_exact};
use crate::Vertex;

use super::{apply_switch, AppliedSwitch};

/// Result of [`chord_to_lasso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordToLasso {
    pub packing: Packing,
    /// An `(s, 1)`-lasso inside the component in the new leave.
    pub lasso: Lasso,
    pub switches: Vec<AppliedSwitch>,
    /// Chord position `e` of the chorded cycle initially used; `None` when
    /// the component already had an `(s, 1)`-lasso.
    pub initial_e: Option<usize>,
}

fn lasso_in(p: &Packing, component: &BTreeSet<Vertex>, s: usize) -> Option<Lasso> {
    find_lasso_exact(&p.leave().induced(component), s, 1)
}

fn logic(msg: impl Into<String>) -> Error {
    Error::Logic(msg.into())
}

/// Reshapes the leave component on `component` so that it contains an
/// `(s, 1)`-lasso, given that it contains an `(s + 1)`-cycle with a chord.
///
/// Only edges inside the component change; its vertex set and edge count are
/// kept, and no vertex on the lasso's `s`-cycle loses degree. Uses at most
/// `max(1, e - 3)` switches, where the chord is `x_1 x_e`.
pub fn chord_to_lasso(p: &Packing, component: &BTreeSet<Vertex>, s: usize) -> Result<ChordToLasso> {
    if s < 3 {
        return Err(Error::PreconditionViolated(format!("s = {s} < 3")));
    }
    if component.iter().any(|&x| x >= p.v()) {
        return Err(Error::PreconditionViolated("component vertex out of range".into()));
    }
    if p.leave().has_edge_leaving(component) {
        return Err(Error::PreconditionViolated(
            "vertex set is not a union of leave components".into(),
        ));
    }
    if let Some(lasso) = lasso_in(p, component, s) {
        return Ok(ChordToLasso {
            packing: p.clone(),
            lasso,
            switches: Vec::new(),
            initial_e: None,
        });
    }
    let Some(cc) = find_chorded_cycle(&p.leave().induced(component), s + 1) else {
        return Err(Error::PreconditionViolated(format!(
            "component has no chorded {}-cycle",
            s + 1
        )));
    };
    let initial_e = cc.e;
    let mut labels = cc.labels;
    let mut e = cc.e;
    let mut packing = p.clone();
    let mut switches = Vec::new();
    let x = |labels: &[Vertex], i: usize| labels[i - 1];

    loop {
        if !switches.is_empty() {
            if let Some(lasso) = lasso_in(&packing, component, s) {
                return Ok(ChordToLasso {
                    packing,
                    lasso,
                    switches,
                    initial_e: Some(initial_e),
                });
            }
        }
        let lasso = match e {
            2 => {
                let (alpha, beta, origin) = (x(&labels, 3), x(&labels, 2), x(&labels, 4));
                debug_assert_eq!(packing.leave().multiplicity(origin, beta), 0);
                let (next, step) = apply_switch(&packing, alpha, beta, origin)?;
                packing = next;
                switches.push(step);
                let mut cycle: Vec<Vertex> = (4..=s + 1).map(|i| x(&labels, i)).collect();
                cycle.extend([x(&labels, 1), x(&labels, 2)]);
                Lasso::new(cycle, vec![x(&labels, 2), x(&labels, 3)])?
            }
            3 => {
                let mut cycle: Vec<Vertex> = (3..=s + 1).map(|i| x(&labels, i)).collect();
                cycle.push(x(&labels, 1));
                Lasso::new(cycle, vec![x(&labels, 1), x(&labels, 2)])?
            }
            _ => {
                let (alpha, beta, origin) = (x(&labels, e - 1), x(&labels, e), x(&labels, e - 2));
                debug_assert_eq!(packing.leave().multiplicity(origin, beta), 0);
                let (next, step) = apply_switch(&packing, alpha, beta, origin)?;
                packing = next;
                let terminus = step.terminus;
                switches.push(step);
                if terminus == x(&labels, e + 1) {
                    labels.swap(e - 2, e - 1);
                    e -= 1;
                    if packing.leave().multiplicity(labels[0], labels[e - 1]) == 0
                        || !Cycle::new(labels.clone())?.is_in(packing.leave())
                    {
                        return Err(logic("chorded cycle lost after a switch"));
                    }
                    continue;
                }
                let mut cycle: Vec<Vertex> = (e + 1..=s + 1).map(|i| x(&labels, i)).collect();
                cycle.extend((1..=e - 2).map(|i| x(&labels, i)));
                cycle.push(x(&labels, e));
                Lasso::new(cycle, vec![x(&labels, e), x(&labels, e - 1)])?
            }
        };
        if !lasso.is_in(&packing.leave().induced(component)) {
            return Err(logic(format!("expected lasso {lasso} missing from the leave")));
        }
        return Ok(ChordToLasso {
            packing,
            lasso,
            switches,
            initial_e: Some(initial_e),
        });
    }
}
