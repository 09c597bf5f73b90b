//! Per-cell computations with budgets and cross-checks.

use hardpart::complex::{alternating_sum, alternating_sum_enumerated, count_independent_sets, independence_complex};
use hardpart::transfer::{partition_function, ZMethod};
use hardpart::{homology_profile, Family, HomologyProfile};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest graph checked by plain enumeration.
    pub brute_vertices: usize,
    /// Largest complex that gets materialized.
    pub faces: u64,
    /// Largest transfer matrix.
    pub transfer_dim: usize,
    /// Longest generating-function series.
    pub series: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { brute_vertices: 26, faces: 2_000_000, transfer_dim: 5000, series: 40 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Ok,
    OutOfBudget,
    /// Two routes disagreed; the message names both values.
    Mismatch(String),
    Error(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZCell {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub z: Option<i128>,
    pub method: Option<ZMethod>,
    /// Independent routes that agreed with `z`.
    pub confirmed_by: Vec<String>,
    pub status: CellStatus,
}

/// Z of one cell by transfer matrix when one exists within the budget,
/// otherwise by the frontier program, then confirmed by the frontier program
/// and by enumeration where they apply.
pub fn z_cell(family: Family, m: usize, n: usize, b: &Budgets) -> ZCell {
    let mut cell = ZCell { family, m, n, z: None, method: None, confirmed_by: Vec::new(), status: CellStatus::Ok };
    let (z, method) = match partition_function(family, m, n, b.transfer_dim) {
        Ok(v) => v,
        Err(e) => {
            cell.status = CellStatus::Error(e.to_string());
            return cell;
        }
    };
    cell.z = Some(z);
    cell.method = Some(method);
    let g = match family.build(m, n) {
        Ok(g) => g,
        Err(e) => {
            cell.status = CellStatus::Error(e.to_string());
            return cell;
        }
    };
    if method == ZMethod::Transfer {
        match alternating_sum(&g) {
            Ok(w) if w == z => cell.confirmed_by.push("frontier-dp".into()),
            Ok(w) => cell.status = CellStatus::Mismatch(format!("transfer {z}, frontier-dp {w}")),
            Err(_) => {}
        }
    }
    if g.occupiable().len() <= b.brute_vertices {
        match alternating_sum_enumerated(&g) {
            Ok(w) if w == z => cell.confirmed_by.push("enumeration".into()),
            Ok(w) => cell.status = CellStatus::Mismatch(format!("{z} vs enumeration {w}")),
            Err(e) => cell.status = CellStatus::Error(e.to_string()),
        }
    }
    cell
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HCell {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub faces: Option<u128>,
    pub profile: Option<HomologyProfile>,
    pub status: CellStatus,
}

impl HCell {
    pub fn groups(&self) -> Option<Vec<(isize, u64)>> {
        self.profile.as_ref().map(HomologyProfile::nonzero)
    }
}

/// Reduced homology of I(G) when the complex fits the face budget. The
/// Euler characteristic is checked against the alternating sum.
pub fn homology_cell(family: Family, m: usize, n: usize, b: &Budgets) -> HCell {
    let mut cell = HCell { family, m, n, faces: None, profile: None, status: CellStatus::Ok };
    let g = match family.build(m, n) {
        Ok(g) => g,
        Err(e) => {
            cell.status = CellStatus::Error(e.to_string());
            return cell;
        }
    };
    // Complexes are stored as 64-bit vertex masks.
    if g.occupiable().len() > 64 {
        cell.status = CellStatus::OutOfBudget;
        return cell;
    }
    match count_independent_sets(&g) {
        Ok(c) => cell.faces = Some(c),
        Err(e) => {
            cell.status = CellStatus::Error(e.to_string());
            return cell;
        }
    }
    if cell.faces.unwrap() > b.faces as u128 {
        cell.status = CellStatus::OutOfBudget;
        return cell;
    }
    let c = match independence_complex(&g, b.faces) {
        Ok(c) => c,
        Err(e) => {
            cell.status = CellStatus::Error(e.to_string());
            return cell;
        }
    };
    let h = homology_profile(&c);
    match alternating_sum(&g) {
        Ok(z) if z == -h.euler() => {}
        Ok(z) => cell.status = CellStatus::Mismatch(format!("Z = {z}, homology Euler characteristic {}", h.euler())),
        Err(e) => cell.status = CellStatus::Error(e.to_string()),
    }
    cell.profile = Some(h);
    cell
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cells() {
        let b = Budgets::default();
        let z = z_cell(Family::SquareCyl, 4, 9, &b);
        assert_eq!(z.z, Some(-2));
        assert_eq!(z.status, CellStatus::Ok);
        assert!(z.confirmed_by.contains(&"frontier-dp".to_string()));
        let h = homology_cell(Family::SquareCyl, 3, 4, &b);
        assert_eq!(h.groups(), Some(vec![(2, 3)]));
        let tight = Budgets { faces: 10, ..b };
        assert_eq!(homology_cell(Family::SquareCyl, 3, 4, &tight).status, CellStatus::OutOfBudget);
    }
}
