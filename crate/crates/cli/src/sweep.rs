//! Cross-validation of the predicate, the exhaustive search and the
//! constructor over a domain of instances.

use std::io;

use cyclepack::{
    brute_force_pack, build_packing_with, check_packing_feasibility, validate_packing, Error,
    Instance, SearchConfig, SearchOutcome, SearchProvider, Verdict,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::domain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleResult {
    Found,
    NotFound,
    Budget,
    Skipped,
}

/// Outcome of one constructor-side check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    True,
    False,
    Budget,
    Skipped,
}

impl From<bool> for Check {
    fn from(b: bool) -> Self {
        if b {
            Check::True
        } else {
            Check::False
        }
    }
}

/// One CSV row; field order is the column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub lambda: u32,
    pub v: usize,
    /// Entries joined by `+`; empty for the empty list.
    pub lengths: String,
    pub delta: i64,
    pub predicate_feasible: bool,
    pub oracle_result: OracleResult,
    pub constructed: Check,
    pub valid: Check,
    /// Every check that ran without hitting the budget matched the predicate.
    pub agree: bool,
}

impl Row {
    pub fn budget_hit(&self) -> bool {
        self.oracle_result == OracleResult::Budget || self.constructed == Check::Budget
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepConfig {
    pub oracle: bool,
    pub construct: bool,
    pub node_budget: Option<u64>,
}

pub fn encode_lengths(lengths: &[usize]) -> String {
    lengths.iter().map(usize::to_string).collect::<Vec<_>>().join("+")
}

pub fn evaluate(instance: &Instance, cfg: SweepConfig) -> Row {
    let verdict = check_packing_feasibility(instance);
    let feasible = verdict.feasible();
    let search = SearchConfig::with_budget(cfg.node_budget);

    let oracle_result = if !cfg.oracle {
        OracleResult::Skipped
    } else {
        match brute_force_pack(instance, search) {
            SearchOutcome::Found(_) => OracleResult::Found,
            SearchOutcome::NotFound => OracleResult::NotFound,
            SearchOutcome::BudgetExceeded => OracleResult::Budget,
        }
    };

    let (constructed, valid) = if !cfg.construct || !feasible {
        (Check::Skipped, Check::Skipped)
    } else {
        match build_packing_with(instance, &SearchProvider { cfg: search }) {
            Ok((p, _)) => {
                let ok = validate_packing(instance, p.cycles(), true) == Verdict::Valid;
                (Check::True, Check::from(ok))
            }
            Err(Error::ProviderFailure(_)) => (Check::Budget, Check::Skipped),
            Err(_) => (Check::False, Check::False),
        }
    };

    let oracle_agrees = match oracle_result {
        OracleResult::Found => feasible,
        OracleResult::NotFound => !feasible,
        OracleResult::Budget | OracleResult::Skipped => true,
    };
    let construct_agrees = matches!(constructed, Check::Skipped | Check::Budget)
        || (constructed == Check::True && valid == Check::True);

    Row {
        lambda: instance.lambda(),
        v: instance.v(),
        lengths: encode_lengths(instance.lengths()),
        delta: verdict.delta,
        predicate_feasible: feasible,
        oracle_result,
        constructed,
        valid,
        agree: oracle_agrees && construct_agrees,
    }
}

/// Rows for every `(lambda, v)` pair in order, each over its whole domain or
/// a sample of `n` lists. Rows are evaluated in parallel but returned in
/// enumeration order.
pub fn sweep(
    lambdas: &[u32],
    vs: &[usize],
    sample: Option<(usize, u64)>,
    cfg: SweepConfig,
) -> Vec<Row> {
    let instances: Vec<Instance> = lambdas
        .iter()
        .flat_map(|&lambda| vs.iter().map(move |&v| (lambda, v)))
        .flat_map(|(lambda, v)| {
            domain(lambda, v, sample)
                .into_iter()
                .map(move |l| Instance::new(lambda, v, l).expect("lambda, v >= 1 and sorted"))
        })
        .collect();
    instances.par_iter().map(|i| evaluate(i, cfg)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub rows: usize,
    pub feasible: usize,
    pub disagreements: usize,
    pub budget_rows: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Summary {
        Summary {
            rows: rows.len(),
            feasible: rows.iter().filter(|r| r.predicate_feasible).count(),
            disagreements: rows.iter().filter(|r| !r.agree).count(),
            budget_rows: rows.iter().filter(|r| r.budget_hit()).count(),
        }
    }

    /// 0 when everything agrees, 1 on any disagreement, else 4 when some
    /// row hit the node budget.
    pub fn exit_code(&self) -> i32 {
        if self.disagreements > 0 {
            1
        } else if self.budget_rows > 0 {
            4
        } else {
            0
        }
    }
}

pub fn write_csv(rows: &[Row], out: impl io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(input: impl io::Read) -> csv::Result<Vec<Row>> {
    csv::Reader::from_reader(input).deserialize().collect()
}
