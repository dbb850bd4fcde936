//! Canonical scenarios for the worked examples, written as reports without
//! timing so re-runs are byte-identical.

use std::fs;
use std::path::{Path, PathBuf};

use negdep::{rat, Rational};

use crate::scenario::{
    AggregatePayload, AuctionPayload, CheckPayload, Scenario, SharePayload, VectorDoc, Q,
};
use crate::{run_scenario, Budgets, CliError};

fn qs(v: impl IntoIterator<Item = Rational>) -> Vec<Q> {
    v.into_iter().map(Q).collect()
}

fn uniform(k: i64) -> Vec<Q> {
    qs((0..k).map(|_| rat(1, k)))
}

/// Three lottery tickets on three equally likely outcomes.
fn lottery() -> Scenario {
    let rows = (0..3)
        .map(|i| qs((0..3).map(|a| rat((a == i) as i64, 1))))
        .collect();
    Scenario::Check(CheckPayload {
        vector: VectorDoc {
            space: uniform(3),
            components: rows,
        },
    })
}

fn bernoulli_worst() -> Scenario {
    Scenario::Aggregate(AggregatePayload {
        n: 3,
        epsilon: Q(rat(1, 10)),
        alpha: Q(rat(1, 4)),
        exhaustive: true,
    })
}

/// `X_i = S 1_{A_i}` with the `A_i` independent of `S`, uniform on ten
/// values: each value of `S` appears on three atoms, one per agent.
fn counterexample() -> Scenario {
    let k = 10;
    let s: Vec<Rational> = (0..3 * k).map(|a| rat(a / 3 + 1, k)).collect();
    let parts = (0..3)
        .map(|i| {
            qs(s.iter().enumerate().map(|(a, v)| {
                if a as i64 % 3 == i {
                    v.clone()
                } else {
                    rat(0, 1)
                }
            }))
        })
        .collect();
    Scenario::Share(SharePayload {
        space: uniform(3 * k),
        total: qs(s),
        levels: qs(vec![rat(1, 10); 3]),
        allocation: Some(parts),
    })
}

/// The two largest tenths go to agents 1 and 2, the rest to agent 3.
fn optimal_example() -> Scenario {
    let s: Vec<Rational> = (1..=10).map(|k| rat(k, 10)).collect();
    let pick = |atoms: &[usize]| {
        qs(s.iter().enumerate().map(|(a, v)| {
            if atoms.contains(&a) {
                v.clone()
            } else {
                rat(0, 1)
            }
        }))
    };
    Scenario::Share(SharePayload {
        space: uniform(10),
        total: qs(s.clone()),
        levels: qs(vec![rat(1, 10); 3]),
        allocation: Some(vec![
            pick(&[9]),
            pick(&[8]),
            pick(&[0, 1, 2, 3, 4, 5, 6, 7]),
        ]),
    })
}

fn auction() -> Scenario {
    Scenario::Auction(AuctionPayload {
        n: 3,
        alpha: Q(rat(5, 2)),
        space: qs(vec![rat(1, 2), rat(1, 3), rat(1, 6)]),
        grid: qs((0..=4).map(|k| rat(k, 4))),
    })
}

pub fn manifest() -> Vec<(&'static str, Scenario)> {
    vec![
        ("bernoulli_var_worst.json", bernoulli_worst()),
        ("lottery_na.json", lottery()),
        ("counterexample_ex1.json", counterexample()),
        ("optimal_example.json", optimal_example()),
        ("auction.json", auction()),
    ]
}

/// Writes every golden report into `dir`, creating it if needed.
pub fn emit(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |p: &Path, e: std::io::Error| CliError::Io(format!("{}: {e}", p.display()));
    fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let mut written = Vec::new();
    for (name, scenario) in manifest() {
        let (report, err) = run_scenario(scenario, Budgets::new(None), false);
        if let Some(e) = err {
            return Err(e);
        }
        let path = dir.join(name);
        fs::write(&path, report.to_json()).map_err(|e| io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
