//! Builds a packing for every feasible instance.
//!
//! A base decomposition of `lambda K_v` (or `lambda K_v - I`) with extra
//! cycles is requested from a [`DecompositionProvider`]; the extra cycles are
//! removed, and for an even `v` with odd `lambda` and a leave one or two
//! edges larger than the 1-factor, the leave is reshaped by switches until
//! the missing cycle can be added back.

use std::collections::BTreeSet;

use crate::cycle::Cycle;
use crate::decomposer::{decompose, one_factor, Decomposition, SearchConfig, SearchOutcome};
use crate::error::{Error, Result};
use crate::feasibility::{check_decomposition_feasibility, check_packing_feasibility};
use crate::instance::Instance;
use crate::multigraph::Multigraph;
use crate::packing::{validate_packing, Packing, Verdict};
use crate::structure::find_lasso_exact;
use crate::surplus::{compute_surplus_list_even, compute_surplus_list_odd};
use crate::switching::{chord_to_lasso, lasso_to_cycle, AppliedSwitch};
use crate::trace::{BuildTrace, TraceStep};
use crate::Vertex;

/// Source of exact decompositions; `one_factor` asks for `lambda K_v - I`
/// with `I` the canonical 1-factor.
pub trait DecompositionProvider {
    fn decompose(&self, instance: &Instance, one_factor: bool) -> Result<SearchOutcome<Decomposition>>;
}

/// Provider backed by the exhaustive search of [`crate::decomposer`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchProvider {
    pub cfg: SearchConfig,
}

impl DecompositionProvider for SearchProvider {
    fn decompose(&self, instance: &Instance, one_factor: bool) -> Result<SearchOutcome<Decomposition>> {
        decompose(instance, one_factor, self.cfg)
    }
}

/// The entry `m` around which an odd-`lambda`, even-`v` instance with a leave
/// one or two edges above a 1-factor is built: the least odd entry, else the
/// least entry `>= 4`.
pub fn select_m(lengths: &[usize]) -> Result<usize> {
    lengths
        .iter()
        .copied()
        .filter(|m| m % 2 == 1)
        .min()
        .or_else(|| lengths.iter().copied().filter(|&m| m >= 4).min())
        .ok_or_else(|| Error::NoQualifyingEntry(lengths.to_vec()))
}

/// [`build_packing_with`] using the search provider with no node budget.
pub fn build_packing(instance: &Instance) -> Result<(Packing, BuildTrace)> {
    build_packing_with(instance, &SearchProvider::default())
}

/// Returns a packing with exactly the instance's lengths and a trace that
/// replays to it, or [`Error::InfeasibleInstance`].
pub fn build_packing_with(
    instance: &Instance,
    provider: &dyn DecompositionProvider,
) -> Result<(Packing, BuildTrace)> {
    let verdict = check_packing_feasibility(instance);
    if !verdict.feasible() {
        return Err(Error::InfeasibleInstance);
    }
    let mut b = Builder {
        instance,
        provider,
        packing: Packing::empty(instance.lambda(), instance.v()),
        trace: BuildTrace::new(instance.lambda(), instance.v(), instance.lengths().to_vec()),
    };
    let delta = verdict.delta as usize;
    if instance.tau() > 0 && instance.v() > 1 {
        match verdict.epsilon {
            None => b.build_even(delta)?,
            Some(eps) => b.build_odd(eps as usize)?,
        }
    }
    b.finish(delta)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

struct Builder<'a> {
    instance: &'a Instance,
    provider: &'a dyn DecompositionProvider,
    packing: Packing,
    trace: BuildTrace,
}

impl Builder<'_> {
    fn note(&mut self, text: impl Into<String>) {
        self.trace.steps.push(TraceStep::Note(text.into()));
    }

    /// Requests a decomposition with `lengths` and makes it the working packing.
    fn base(&mut self, lengths: Vec<usize>, with_one_factor: bool) -> Result<()> {
        let target = self.instance.with_lengths(lengths);
        if !check_decomposition_feasibility(&target, with_one_factor)? {
            return Err(Error::Logic(format!(
                "decomposition of {:?} (1-factor: {with_one_factor}) fails its predicate",
                target.lengths()
            )));
        }
        let d = match self.provider.decompose(&target, with_one_factor)? {
            SearchOutcome::Found(d) => d,
            SearchOutcome::NotFound => {
                return Err(Error::Logic(format!(
                    "no decomposition into {:?} although the predicate holds",
                    target.lengths()
                )))
            }
            SearchOutcome::BudgetExceeded => {
                return Err(Error::ProviderFailure(format!(
                    "node budget exceeded decomposing into {:?}",
                    target.lengths()
                )))
            }
        };
        let (lambda, v) = (target.lambda(), target.v());
        let packing = Packing::new(lambda, v, d.cycles.clone())
            .map_err(|e| Error::ProviderFailure(format!("invalid decomposition: {e}")))?;
        if packing.lengths() != target.lengths() {
            return Err(Error::ProviderFailure("decomposition has the wrong lengths".into()));
        }
        let expected_leave = if with_one_factor {
            Multigraph::from_edges(v, one_factor(v)?)
        } else {
            Multigraph::empty(v)
        };
        if packing.leave() != &expected_leave {
            return Err(Error::ProviderFailure(
                "decomposition does not cover the requested host".into(),
            ));
        }
        self.trace.steps.push(TraceStep::Base {
            one_factor: with_one_factor,
            cycles: d.cycles,
        });
        self.packing = packing;
        Ok(())
    }

    fn remove_smallest(&mut self, len: usize) -> Result<Cycle> {
        let c = self
            .packing
            .smallest_cycle_of_length(len)
            .ok_or_else(|| Error::Logic(format!("no {len}-cycle left to remove")))?;
        self.packing.remove_cycle(&c)?;
        self.trace.steps.push(TraceStep::Remove(c.clone()));
        Ok(c)
    }

    fn add(&mut self, c: Cycle) -> Result<()> {
        self.packing.add_cycle(c.clone())?;
        self.trace.steps.push(TraceStep::Add(c));
        Ok(())
    }

    fn record_switches(&mut self, switches: &[AppliedSwitch]) {
        self.trace
            .steps
            .extend(switches.iter().copied().map(TraceStep::Switch));
    }

    /// Runs `chord_to_lasso` on the leave component holding `anchor` and
    /// adds the lasso's `s`-cycle.
    fn chord_then_add(&mut self, anchor: Vertex, s: usize) -> Result<()> {
        let component = self.component_of(anchor)?;
        let r = chord_to_lasso(&self.packing, &component, s)?;
        match r.initial_e {
            Some(e) => self.note(format!("chorded {}-cycle, chord at x_{e}", s + 1)),
            None => self.note(format!("({s},1)-lasso already present")),
        }
        self.record_switches(&r.switches);
        self.packing = r.packing;
        self.note(format!("lasso {}", r.lasso));
        self.add(r.lasso.cycle_part())
    }

    /// Runs `chord_to_lasso` without adding anything; the component keeps its
    /// vertex set, so a later call may reuse `anchor`.
    fn chord_only(&mut self, anchor: Vertex, s: usize) -> Result<()> {
        let component = self.component_of(anchor)?;
        let r = chord_to_lasso(&self.packing, &component, s)?;
        match r.initial_e {
            Some(e) => self.note(format!("chorded {}-cycle, chord at x_{e}", s + 1)),
            None => self.note(format!("({s},1)-lasso already present")),
        }
        self.record_switches(&r.switches);
        self.packing = r.packing;
        self.note(format!("lasso {}", r.lasso));
        Ok(())
    }

    fn component_of(&self, x: Vertex) -> Result<BTreeSet<Vertex>> {
        self.packing
            .leave()
            .components()
            .into_iter()
            .find(|c| c.contains(&x))
            .ok_or_else(|| Error::Logic(format!("vertex {x} is isolated in the leave")))
    }

    fn build_even(&mut self, delta: usize) -> Result<()> {
        let lengths = self.instance.lengths().to_vec();
        if delta == 0 {
            self.note("lambda even, delta = 0");
            return self.base(lengths, false);
        }
        let m_tau = self.instance.max_length().expect("tau > 0");
        let n = compute_surplus_list_even(delta, m_tau);
        self.note(format!("lambda even, N = {}", join(&n.entries)));
        self.base([lengths, n.entries.clone()].concat(), false)?;
        for &len in &n.entries {
            self.remove_smallest(len)?;
        }
        Ok(())
    }

    fn build_odd(&mut self, eps: usize) -> Result<()> {
        let v = self.instance.v();
        let lengths = self.instance.lengths().to_vec();
        let with_factor = v % 2 == 0;
        if eps == 0 {
            self.note("lambda odd, eps = 0");
            return self.base(lengths, with_factor);
        }
        if v == 2 {
            // lambda K_2 - I is (lambda - 1) / 2 parallel 2-cycles
            self.note(format!("lambda odd, v = 2, eps = {eps}"));
            let base = (self.instance.lambda() as usize - 1) / 2;
            return self.base(vec![2; base], true).and_then(|()| {
                (0..eps / 2).try_for_each(|_| self.remove_smallest(2).map(drop))
            });
        }
        if v % 2 == 1 || eps >= 3 {
            let n = compute_surplus_list_odd(v, eps)?;
            self.note(format!("lambda odd, case 1, eps = {eps}, N = {}", join(&n.entries)));
            self.base([lengths, n.entries.clone()].concat(), with_factor)?;
            for &len in &n.entries {
                self.remove_smallest(len)?;
            }
            return Ok(());
        }
        self.build_near_factor(eps)
    }

    /// `v` even, leave is a 1-factor plus `eps` in {1, 2} edges.
    fn build_near_factor(&mut self, eps: usize) -> Result<()> {
        let v = self.instance.v();
        let lengths = self.instance.lengths().to_vec();
        let m = select_m(&lengths)?;
        let mut rest = lengths.clone();
        rest.remove(rest.iter().position(|&x| x == m).expect("m is an entry"));

        if m + eps <= v {
            self.note(format!("lambda odd, case 2a, m = {m}, eps = {eps}"));
            debug_assert!(m % 2 == 1 || eps == 2, "even m forces eps = 2");
            let big = m + eps;
            self.base([rest, vec![big]].concat(), true)?;
            let c = self.remove_smallest(big)?;
            if let Some(lasso) = find_lasso_exact(self.packing.leave(), big, 1) {
                self.note(format!("lasso {lasso}"));
                let r = lasso_to_cycle(&self.packing, m)?;
                self.record_switches(&r.switches);
                self.trace.steps.push(TraceStep::Add(r.cycle));
                self.packing = r.packing;
                return Ok(());
            }
            // without a lasso, the 1-factor pairs up the cycle's own vertices
            let anchor = c.vertices()[0];
            let span: BTreeSet<Vertex> = c.vertices().iter().copied().collect();
            if big % 2 == 1 || self.component_of(anchor)? != span {
                return Err(Error::Logic(format!(
                    "removed {big}-cycle {c} left no ({big},1)-lasso"
                )));
            }
            self.note(format!("no ({big},1)-lasso, chord route"));
            if eps == 1 {
                return self.chord_then_add(anchor, big - 1);
            }
            self.chord_only(anchor, big - 1)?;
            return self.chord_then_add(anchor, m);
        }

        if eps != 2 {
            return Err(Error::Logic(format!("m + eps > v with eps = {eps}")));
        }
        if m == v {
            self.note(format!("lambda odd, case 2b, m = v = {v}"));
            self.base([lengths, vec![2]].concat(), true)?;
            self.remove_smallest(2)?;
            return Ok(());
        }
        if m != v - 1 {
            return Err(Error::Logic(format!("m = {m} with m + 2 > v = {v}")));
        }
        self.note(format!("lambda odd, case 2b, m = v - 1 = {m}, chord route"));
        let mut rest = lengths;
        for _ in 0..2 {
            let i = rest
                .iter()
                .position(|&x| x == v - 1)
                .ok_or_else(|| Error::Logic(format!("fewer than two entries equal {}", v - 1)))?;
            rest.remove(i);
        }
        self.base([rest, vec![v, v]].concat(), true)?;
        // each leave below contains a v-cycle, so it is connected on all vertices
        self.remove_smallest(v)?;
        self.chord_then_add(0, v - 1)?;
        self.remove_smallest(v)?;
        self.chord_then_add(0, v - 1)
    }

    fn finish(self, delta: usize) -> Result<(Packing, BuildTrace)> {
        if let Verdict::Invalid(why) = validate_packing(self.instance, self.packing.cycles(), true) {
            return Err(Error::Logic(format!("constructed packing is invalid: {why:?}")));
        }
        if self.packing.leave().edge_count() != delta as u64 {
            return Err(Error::Logic("leave size differs from delta".into()));
        }
        Ok((self.packing, self.trace))
    }
}
