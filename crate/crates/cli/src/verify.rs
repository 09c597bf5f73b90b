//! Named sweeps for `hardpart verify <suite>`.

use crate::acceptance::{self, Outcome};
use crate::compute::{homology_cell, Budgets, CellStatus};
use crate::reproduce::{reproduce_h, reproduce_z};
use crate::tables::{h_table, z_table};
use hardpart::genfun::recursion_checks;
use hardpart::intervals::pattern_scan;
use hardpart::morse::{morse_consistency, tree_generators, TreeFamily};
use hardpart::transfer::{odd_cylinder_prediction, z_cylinder};
use hardpart::Family;
use rayon::prelude::*;
use serde::Serialize;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "&'static str")]
pub enum Suite {
    OddCylinders,
    Transposed,
    PatternSums,
    Morse,
    Genfun,
    Tables,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::OddCylinders, Suite::Transposed, Suite::PatternSums, Suite::Morse, Suite::Genfun, Suite::Tables];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OddCylinders => "conjecture1",
            Suite::Transposed => "conjecture2",
            Suite::PatternSums => "conjecture5",
            Suite::Morse => "morse",
            Suite::Genfun => "genfun",
            Suite::Tables => "tables",
        }
    }
}

impl From<Suite> for &'static str {
    fn from(s: Suite) -> Self {
        s.name()
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checked: usize,
    /// One witness per failed check.
    pub failures: Vec<String>,
    /// Notable findings that are not failures.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn from_outcomes(suite: Suite, outcomes: &[Outcome]) -> Self {
        let failures = outcomes.iter().flat_map(|o| o.failures.iter().map(move |f| format!("criterion {}: {f}", o.id))).collect();
        SuiteReport { suite, checked: outcomes.len(), failures, notes: outcomes.iter().map(|o| o.detail.clone()).collect() }
    }
}

pub fn run(suite: Suite, b: &Budgets) -> SuiteReport {
    match suite {
        Suite::OddCylinders => odd_cylinders(1..=12, (1..=13).step_by(2)),
        Suite::Transposed => transposed_homology(12, b),
        Suite::PatternSums => pattern_sums(5, 12),
        Suite::Morse => morse(),
        Suite::Genfun => genfun(),
        Suite::Tables => tables(b),
    }
}

/// Z(C_{m,n}) for odd `n` against -2 when 3 divides gcd(m-1, n), else 1.
pub fn odd_cylinders(ms: impl IntoIterator<Item = usize>, ns: impl IntoIterator<Item = usize> + Clone) -> SuiteReport {
    let cells: Vec<(usize, usize)> = ms.into_iter().flat_map(|m| ns.clone().into_iter().filter(|n| n % 2 == 1).map(move |n| (m, n))).collect();
    let failures = cells
        .par_iter()
        .filter_map(|&(m, n)| {
            let expected = odd_cylinder_prediction(m, n);
            match z_cylinder(m, n) {
                Ok(z) if z == expected => None,
                Ok(z) => Some(format!("C_{{{m},{n}}}: Z = {z}, predicted {expected}")),
                Err(e) => Some(format!("C_{{{m},{n}}}: {e}")),
            }
        })
        .collect();
    SuiteReport { suite: Suite::OddCylinders, checked: cells.len(), failures, notes: Vec::new() }
}

/// Homology of I(C_{j,2k+1}) against I(C_{k,2j+1}) for `j < k <= max`
/// whenever both complexes fit the face budget.
pub fn transposed_homology(max: usize, b: &Budgets) -> SuiteReport {
    let pairs: Vec<(usize, usize)> = (1..=max).flat_map(|j| (j + 1..=max).map(move |k| (j, k))).collect();
    let results: Vec<Option<Result<String, String>>> = pairs
        .par_iter()
        .map(|&(j, k)| {
            let left = homology_cell(Family::SquareCyl, j, 2 * k + 1, b);
            if left.status == CellStatus::OutOfBudget {
                return None;
            }
            let right = homology_cell(Family::SquareCyl, k, 2 * j + 1, b);
            if right.status == CellStatus::OutOfBudget {
                return None;
            }
            let name = format!("C_{{{j},{}}} vs C_{{{k},{}}}", 2 * k + 1, 2 * j + 1);
            Some(match (&left.profile, &right.profile) {
                (Some(l), Some(r)) if left.status == CellStatus::Ok && right.status == CellStatus::Ok => {
                    if l.nonzero() == r.nonzero() && !l.has_torsion() && !r.has_torsion() {
                        Ok(format!("{name}: {}", l.table_entry()))
                    } else {
                        Err(format!("{name}: {} vs {}", l.table_entry(), r.table_entry()))
                    }
                }
                _ => Err(format!("{name}: {:?} / {:?}", left.status, right.status)),
            })
        })
        .collect();
    let checked = results.iter().flatten().count();
    let (notes, failures): (Vec<_>, Vec<_>) = results.into_iter().flatten().partition(Result::is_ok);
    SuiteReport {
        suite: Suite::Transposed,
        checked,
        failures: failures.into_iter().map(Result::unwrap_err).collect(),
        notes: notes.into_iter().map(Result::unwrap).collect(),
    }
}

/// Top-row pattern sums on C_{m,n}. For odd `n` every singleton-class sum
/// must vanish; for even `n` the nonzero sums are reported, and the sweep
/// must find the pattern {3,8} on C_{3,8} with sum 1.
pub fn pattern_sums(max_m: usize, max_n: usize) -> SuiteReport {
    let cells: Vec<(usize, usize)> = (1..=max_m).flat_map(|m| (3..=max_n).map(move |n| (m, n))).collect();
    let scans: Vec<(usize, usize, Result<Vec<hardpart::intervals::PatternSum>, String>)> =
        cells.par_iter().map(|&(m, n)| (m, n, pattern_scan(m, n).map_err(|e| e.to_string()))).collect();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut checked = 0;
    let mut found = false;
    for (m, n, r) in scans {
        let ps = match r {
            Ok(ps) => ps,
            Err(e) => {
                failures.push(format!("C_{{{m},{n}}}: {e}"));
                continue;
            }
        };
        checked += ps.len();
        for p in ps.iter().filter(|p| p.singleton_sum != 0 || p.sum != 0) {
            if n % 2 == 1 && p.singleton_sum != 0 {
                failures.push(format!("C_{{{m},{n}}} pattern {:?}: sum {}", p.pi, p.singleton_sum));
            } else if n % 2 == 0 && p.sum != 0 {
                notes.push(format!("C_{{{m},{n}}} pattern {:?} (lengths {:?}): sum {}", p.pi, p.lengths, p.sum));
                found |= m == 3 && n == 8 && p.pi == [3, 8] && p.sum == 1;
            }
        }
    }
    if max_m >= 3 && max_n >= 8 && !found {
        failures.push("pattern {3,8} on C_{3,8} does not have sum 1".into());
    }
    SuiteReport { suite: Suite::PatternSums, checked, failures, notes }
}

/// The matching-tree criterion plus the Morse inequalities for every tree
/// family with at most four rows.
pub fn morse() -> SuiteReport {
    let mut r = SuiteReport::from_outcomes(Suite::Morse, &[acceptance::criterion_4()]);
    for f in TreeFamily::ALL {
        for m in 1..=4 {
            r.checked += 1;
            let res = tree_generators(f, m).map_err(|e| e.to_string()).and_then(|gen| {
                let ev = hardpart::evaluate_tree(&gen.graph, &gen.tree, b_faces()).map_err(|e| e.to_string())?;
                morse_consistency(&ev.complex, &ev.matching).map_err(|e| e.to_string())
            });
            if let Err(e) = res {
                r.failures.push(format!("{} m={m}: {e}", f.name()));
            }
        }
    }
    r
}

fn b_faces() -> u64 {
    Budgets::default().faces
}

pub fn genfun() -> SuiteReport {
    let mut r = SuiteReport::from_outcomes(Suite::Genfun, &[acceptance::criterion_6()]);
    for m in [4, 6] {
        match recursion_checks(m, 40) {
            Ok(checks) => {
                r.checked += checks.len();
                r.failures.extend(checks.iter().filter(|c| !c.holds()).map(|c| format!("{}: fails at j = {:?}", c.name, c.failures)));
            }
            Err(e) => r.failures.push(e.to_string()),
        }
    }
    r
}

/// Every reference table; homology cells beyond the face budget are skipped
/// and counted in the notes.
pub fn tables(b: &Budgets) -> SuiteReport {
    let mut r = SuiteReport { suite: Suite::Tables, checked: 0, failures: Vec::new(), notes: Vec::new() };
    for id in 1..=9 {
        if let Some(t) = z_table(id) {
            let rep = reproduce_z(&t, b, 12);
            r.checked += rep.cells.len();
            r.failures.extend(rep.mismatches.iter().map(|(m, n, e, g)| format!("table {id} m={m} n={n}: expected {e}, got {g:?}")));
            r.failures.extend(rep.cells.iter().filter(|c| c.status != CellStatus::Ok).map(|c| format!("table {id} m={} n={}: {:?}", c.m, c.n, c.status)));
        }
        if let Some(t) = h_table(id) {
            let rep = reproduce_h(&t, b, |_, _| true);
            r.checked += rep.computed();
            r.notes.push(format!("table {id}: {} cells computed, {} out of budget", rep.computed(), rep.out_of_budget));
            r.failures.extend(rep.mismatches.iter().map(|(m, n, e, g)| format!("table {id} m={m} n={n}: expected {e}, got {g}")));
        }
    }
    r
}
