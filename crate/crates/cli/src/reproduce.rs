//! Recompute a reference table cell by cell and compare.

use crate::compute::{homology_cell, z_cell, Budgets, CellStatus, HCell, ZCell};
use crate::render::{groups_text, h_cell_text, tsv_grid};
use crate::tables::{HTable, ZTable};
use hardpart::intervals::{pattern_scan, q2_deviation};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Debug, Serialize)]
pub struct ZReproduction {
    pub table: u8,
    pub cells: Vec<ZCell>,
    /// `(m, n, expected, computed)` for every disagreeing cell.
    pub mismatches: Vec<(usize, usize, i128, Option<i128>)>,
    pub tsv: String,
    pub expected_tsv: String,
}

impl ZReproduction {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.tsv == self.expected_tsv && self.cells.iter().all(|c| c.status == CellStatus::Ok)
    }
}

fn ns_of<T>(rows: &[(usize, T)]) -> Vec<usize> {
    rows.iter().map(|r| r.0).collect()
}

/// Tables of alternating sums. The residual table (id 9) holds the deviation of Z(C_{m,n})
/// from the residual-free class recursion; for `n <= pattern_n` it is also
/// rebuilt from the top-row pattern sums of every C_{k,n} with `k <= m`.
pub fn reproduce_z(table: &ZTable, b: &Budgets, pattern_n: usize) -> ZReproduction {
    let jobs: Vec<(usize, usize, i128)> = table.cells().collect();
    let cells: Vec<ZCell> = if table.id == 9 {
        deviation_cells(&jobs, pattern_n)
    } else {
        jobs.par_iter().map(|&(m, n, _)| z_cell(table.family, m, n, b)).collect()
    };
    let mismatches = jobs
        .iter()
        .zip(&cells)
        .filter(|((_, _, e), c)| c.z != Some(*e))
        .map(|(&(m, n, e), c)| (m, n, e, c.z))
        .collect();
    let lookup = |m: usize, n: usize| cells.iter().find(|c| c.m == m && c.n == n);
    let ns = ns_of(&table.rows);
    let tsv = tsv_grid(&table.ms, &ns, |m, n| lookup(m, n).map(|c| c.z.map_or("err".into(), |z| z.to_string())));
    let expected_tsv = tsv_grid(&table.ms, &ns, |m, n| table.get(m, n).map(|z| z.to_string()));
    ZReproduction { table: table.id, cells, mismatches, tsv, expected_tsv }
}

fn deviation_cells(jobs: &[(usize, usize, i128)], pattern_n: usize) -> Vec<ZCell> {
    let scans: Vec<(usize, usize)> = jobs
        .iter()
        .filter(|j| j.1 <= pattern_n)
        .flat_map(|&(m, n, _)| (1..=m).map(move |k| (k, n)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let pattern: HashMap<(usize, usize), Result<i128, String>> = scans
        .par_iter()
        .map(|&(k, n)| ((k, n), pattern_scan(k, n).map(|ps| ps.iter().map(|p| p.singleton_sum).sum()).map_err(|e| e.to_string())))
        .collect();
    jobs.par_iter().map(|&(m, n, _)| deviation_cell(m, n, pattern_n, &pattern)).collect()
}

fn deviation_cell(m: usize, n: usize, pattern_n: usize, pattern: &HashMap<(usize, usize), Result<i128, String>>) -> ZCell {
    let mut cell = ZCell {
        family: hardpart::Family::SquareCyl,
        m,
        n,
        z: None,
        method: Some(hardpart::ZMethod::Transfer),
        confirmed_by: Vec::new(),
        status: CellStatus::Ok,
    };
    match q2_deviation(m, n) {
        Ok(r) => cell.z = Some(r),
        Err(e) => {
            cell.status = CellStatus::Error(e.to_string());
            return cell;
        }
    }
    if n <= pattern_n {
        let folded = (1..=m).try_fold(0i128, |acc, k| pattern[&(k, n)].clone().map(|s| s - acc));
        match folded {
            Ok(s) if Some(s) == cell.z => cell.confirmed_by.push("pattern-sums".into()),
            Ok(s) => cell.status = CellStatus::Mismatch(format!("deviation {:?}, pattern sums {s}", cell.z)),
            Err(e) => cell.status = CellStatus::Error(e),
        }
    }
    cell
}

#[derive(Clone, Debug, Serialize)]
pub struct HReproduction {
    pub table: u8,
    pub cells: Vec<HCell>,
    pub mismatches: Vec<(usize, usize, String, String)>,
    pub out_of_budget: usize,
    pub tsv: String,
}

impl HReproduction {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn computed(&self) -> usize {
        self.cells.iter().filter(|c| c.profile.is_some()).count()
    }
}

/// Homology tables; cells whose complex exceeds the face budget are marked
/// `oob` and not compared. `filter(m, n)` selects the cells to attempt.
pub fn reproduce_h(table: &HTable, b: &Budgets, filter: impl Fn(usize, usize) -> bool + Sync) -> HReproduction {
    let jobs: Vec<(usize, usize, Vec<(isize, u64)>)> = table.cells().filter(|&(m, n, _)| filter(m, n)).map(|(m, n, g)| (m, n, g.to_vec())).collect();
    let cells: Vec<HCell> = jobs.par_iter().map(|&(m, n, _)| homology_cell(table.family, m, n, b)).collect();
    let mut mismatches = Vec::new();
    for ((m, n, expected), c) in jobs.iter().zip(&cells) {
        match (&c.status, c.groups()) {
            (CellStatus::Ok, Some(g)) if g == *expected && !c.profile.as_ref().unwrap().has_torsion() => {}
            (CellStatus::OutOfBudget, _) => {}
            (st, g) => mismatches.push((*m, *n, groups_text(expected), format!("{:?} {st:?}", g.map(|g| groups_text(&g))))),
        }
    }
    let out_of_budget = cells.iter().filter(|c| c.status == CellStatus::OutOfBudget).count();
    let lookup = |m: usize, n: usize| cells.iter().find(|c| c.m == m && c.n == n);
    let tsv = tsv_grid(&table.ms, &ns_of(&table.rows), |m, n| lookup(m, n).map(h_cell_text));
    HReproduction { table: table.id, cells, mismatches, out_of_budget, tsv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{table2, table8};

    #[test]
    fn torus_table_matches() {
        let r = reproduce_z(&table8(), &Budgets::default(), 0);
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn residual_table_small_n() {
        let mut t = crate::tables::table9();
        t.rows.retain(|r| r.0 <= 10);
        let r = reproduce_z(&t, &Budgets::default(), 10);
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(r.cells.iter().all(|c| c.confirmed_by == ["pattern-sums"]));
    }

    #[test]
    fn small_homology_cells() {
        let r = reproduce_h(&table2(), &Budgets::default(), |m, n| m * n <= 15);
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(r.computed() >= 10);
    }
}
