//! TSV grids (rows `n`, columns `m`) and JSON lines.

use crate::compute::{CellStatus, HCell};
use serde::Serialize;
use std::fmt::Write;

/// Homology groups as `(k,d)` separated by single spaces; `0` when acyclic.
pub fn groups_text(groups: &[(isize, u64)]) -> String {
    if groups.is_empty() {
        return "0".into();
    }
    groups.iter().map(|(k, d)| format!("({k},{d})")).collect::<Vec<_>>().join(" ")
}

/// A grid with a header `n\m` followed by the `m` values, then one line per
/// `n`. `cell(m, n)` returns `None` for cells outside the layout, rendered
/// empty. Trailing empty cells are dropped.
pub fn tsv_grid(ms: &[usize], ns: &[usize], mut cell: impl FnMut(usize, usize) -> Option<String>) -> String {
    let mut out = String::from("n\\m");
    for m in ms {
        write!(out, "\t{m}").unwrap();
    }
    out.push('\n');
    for &n in ns {
        let mut fields: Vec<String> = ms.iter().map(|&m| cell(m, n).unwrap_or_default()).collect();
        while fields.last().is_some_and(String::is_empty) {
            fields.pop();
        }
        write!(out, "{n}").unwrap();
        for f in fields {
            write!(out, "\t{f}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// One homology cell for a TSV grid: `oob` beyond the face budget, `err`
/// on failure, torsion appended in brackets.
pub fn h_cell_text(c: &HCell) -> String {
    match (&c.status, &c.profile) {
        (CellStatus::OutOfBudget, _) => "oob".into(),
        (_, Some(p)) if p.has_torsion() => {
            let tors: Vec<String> = p.dims.iter().filter(|d| !d.torsion.is_empty()).map(|d| format!("T{}:{}", d.i, d.torsion.join("+"))).collect();
            format!("{} [{}]", groups_text(&p.nonzero()), tors.join(" "))
        }
        (_, Some(p)) => groups_text(&p.nonzero()),
        _ => "err".into(),
    }
}

pub fn json_lines<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for it in items {
        out.push_str(&serde_json::to_string(it).expect("serializable"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let s = tsv_grid(&[1, 2, 3], &[2, 4], |m, n| (m + n < 6).then(|| (m * n).to_string()));
        assert_eq!(s, "n\\m\t1\t2\t3\n2\t2\t4\t6\n4\t4\n");
        assert_eq!(groups_text(&[(7, 1), (8, 2)]), "(7,1) (8,2)");
        assert_eq!(groups_text(&[]), "0");
    }
}
