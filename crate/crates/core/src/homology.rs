//! Reduced integer homology of simplicial complexes.
//!
//! Ranks and torsion come from a sparse lowest-row column reduction over Z in
//! which colliding pivots are merged by extended-gcd column operations, so the
//! reduced matrix differs from the boundary map by a unimodular factor. Columns
//! whose pivot is not a unit are cleaned against the unit pivots and passed to
//! a dense Smith normal form. The reduction runs in checked `i64` first and is
//! repeated over `BigInt` on overflow.

use crate::complex::{bits, FaceMask, SimplicialComplex};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("dimension {k} out of range -1..={dim}")]
    DimOutOfRange { k: isize, dim: isize },
}

/// Sparse integer matrix in deduplicated triplet form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl IntegerMatrix {
    /// Repeated positions are summed; zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, t: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut map: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, c, v) in t {
            assert!(r < rows && c < cols, "triplet ({r},{c}) outside {rows}x{cols}");
            *map.entry((r, c)).or_insert_with(BigInt::zero) += v;
        }
        let entries = map.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        IntegerMatrix { rows, cols, entries }
    }

    pub fn from_dense(v: &[Vec<i64>]) -> Self {
        let cols = v.first().map_or(0, Vec::len);
        Self::from_triplets(
            v.len(),
            cols,
            v.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &x)| (i, j, BigInt::from(x)))),
        )
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.iter().find(|e| e.0 == r && e.1 == c).map_or_else(BigInt::zero, |e| e.2.clone())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    pub fn mul(&self, o: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, o.rows);
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); o.rows];
        for (r, c, v) in &o.entries {
            by_row[*r].push((*c, v));
        }
        let t = self.entries.iter().flat_map(|(r, k, a)| by_row[*k].iter().map(move |(c, b)| (*r, *c, a * *b)));
        IntegerMatrix::from_triplets(self.rows, o.cols, t.collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn columns(&self) -> Vec<Vec<(u32, BigInt)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, c, v) in &self.entries {
            cols[*c].push((*r as u32, v.clone()));
        }
        for c in &mut cols {
            c.sort_by_key(|e| e.0);
        }
        cols
    }
}

/// Boundary map from faces of dimension `k` to faces of dimension `k - 1`,
/// the vertex at sorted position `i` removed with sign (-1)^i. The map from
/// vertices to the empty face is included.
pub fn boundary_matrix(c: &SimplicialComplex, k: isize) -> Result<IntegerMatrix, HomologyError> {
    let dim = c.dim().unwrap_or(-2);
    if k < -1 || k > dim {
        return Err(HomologyError::DimOutOfRange { k, dim });
    }
    let cols = boundary_columns::<i64>(c, (k + 1) as usize);
    let rows = if k >= 0 { c.faces_of_dim(k - 1).len() } else { 0 };
    Ok(IntegerMatrix::from_triplets(
        rows,
        cols.len(),
        cols.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&(r, v)| (r as usize, j, BigInt::from(v)))),
    ))
}

fn boundary_columns<C: Coef>(c: &SimplicialComplex, size: usize) -> Vec<Vec<(u32, C)>> {
    if size == 0 {
        return vec![Vec::new(); c.faces_of_size(0).len()];
    }
    let lower = c.faces_of_size(size - 1);
    c.faces_of_size(size)
        .par_iter()
        .map(|&f| {
            let mut col: Vec<(u32, C)> = bits(f)
                .enumerate()
                .map(|(i, b)| {
                    let sub: FaceMask = f & !(1 << b);
                    let r = lower.binary_search(&sub).expect("complex is downward closed");
                    (r as u32, C::from_i64(if i % 2 == 0 { 1 } else { -1 }))
                })
                .collect();
            col.sort_by_key(|e| e.0);
            col
        })
        .collect()
}

trait Coef: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn from_i64(x: i64) -> Self;
    fn nil(&self) -> bool;
    fn unit(&self) -> bool;
    fn to_big(&self) -> BigInt;
    /// `a*x + b*y`.
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    /// `(g, x, y, a/g, b/g)` with `g = gcd(a, b) = a*x + b*y`.
    fn egcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)>;
    fn div_if_exact(a: &Self, b: &Self) -> Option<Self>;
    fn cneg(&self) -> Option<Self>;
}

impl Coef for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn nil(&self) -> bool {
        *self == 0
    }
    fn unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_add(b.checked_mul(*y)?)
    }
    fn egcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)> {
        let e = (*a as i128).extended_gcd(&(*b as i128));
        let g = i64::try_from(e.gcd).ok()?;
        Some((g, i64::try_from(e.x).ok()?, i64::try_from(e.y).ok()?, a / g, b / g))
    }
    fn div_if_exact(a: &Self, b: &Self) -> Option<Self> {
        (a % b == 0).then(|| a / b)
    }
    fn cneg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Coef for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit(&self) -> bool {
        self.abs().is_one()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x + b * y)
    }
    fn egcd(a: &Self, b: &Self) -> Option<(Self, Self, Self, Self, Self)> {
        let e = a.extended_gcd(b);
        let (qa, qb) = (a / &e.gcd, b / &e.gcd);
        Some((e.gcd, e.x, e.y, qa, qb))
    }
    fn div_if_exact(a: &Self, b: &Self) -> Option<Self> {
        let (q, r) = a.div_rem(b);
        Zero::is_zero(&r).then_some(q)
    }
    fn cneg(&self) -> Option<Self> {
        Some(-self)
    }
}

type Col<C> = Vec<(u32, C)>;

/// `a*x + b*y` for sorted sparse columns.
fn combine<C: Coef>(a: &C, x: &Col<C>, b: &C, y: &Col<C>) -> Option<Col<C>> {
    let zero = C::from_i64(0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (r, v) = if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            i += 1;
            (x[i - 1].0, C::lin(a, &x[i - 1].1, b, &zero)?)
        } else if i >= x.len() || y[j].0 < x[i].0 {
            j += 1;
            (y[j - 1].0, C::lin(a, &zero, b, &y[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, C::lin(a, &x[i - 1].1, b, &y[j - 1].1)?)
        };
        if !v.nil() {
            out.push((r, v));
        }
    }
    Some(out)
}

/// Rank and invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTorsion {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

fn reduce<C: Coef>(mut input: Vec<Col<C>>, nrows: usize) -> Option<RankTorsion> {
    let one = C::from_i64(1);
    let mut reducer: Vec<u32> = vec![u32::MAX; nrows];
    let mut store: Vec<Col<C>> = Vec::new();
    for col in input.iter_mut() {
        let mut col = std::mem::take(col);
        while let Some((p, a)) = col.last().cloned() {
            let r = reducer[p as usize];
            if r == u32::MAX {
                reducer[p as usize] = store.len() as u32;
                store.push(col);
                break;
            }
            let red = &store[r as usize];
            let b = red.last().expect("stored columns are nonzero").1.clone();
            if let Some(q) = C::div_if_exact(&a, &b) {
                col = combine(&one, &col, &q.cneg()?, red)?;
            } else {
                // x*b + y*a = g; the pair (x*R + y*J, (a/g)*R - (b/g)*J) is unimodular.
                let (_, x, y, b_g, a_g) = C::egcd(&b, &a)?;
                let merged = combine(&x, red, &y, &col)?;
                col = combine(&a_g, red, &b_g.cneg()?, &col)?;
                store[r as usize] = merged;
            }
        }
    }
    let rank = store.len();
    let unit_row: Vec<Option<usize>> = reducer
        .iter()
        .map(|&r| (r != u32::MAX && store[r as usize].last().unwrap().1.unit()).then_some(r as usize))
        .collect();
    let mut leftovers: Vec<Col<C>> = Vec::new();
    for col in store.iter().filter(|c| !c.last().unwrap().1.unit()) {
        let mut col = col.clone();
        while let Some(&(q, _)) = col.iter().rev().find(|e| unit_row[e.0 as usize].is_some()) {
            let u = &store[unit_row[q as usize].unwrap()];
            let a = col.iter().find(|e| e.0 == q).unwrap().1.clone();
            let b = u.last().unwrap().1.clone();
            let f = C::div_if_exact(&a, &b)?;
            col = combine(&one, &col, &f.cneg()?, u)?;
        }
        leftovers.push(col);
    }
    let torsion = if leftovers.is_empty() {
        Vec::new()
    } else {
        let mut rows: Vec<u32> = leftovers.iter().flatten().map(|e| e.0).collect();
        rows.sort_unstable();
        rows.dedup();
        let mut dense = vec![vec![BigInt::zero(); leftovers.len()]; rows.len()];
        for (j, col) in leftovers.iter().enumerate() {
            for (r, v) in col {
                dense[rows.binary_search(r).unwrap()][j] = v.to_big();
            }
        }
        let f = dense_snf(dense);
        debug_assert_eq!(f.len(), leftovers.len());
        f.into_iter().filter(|d| !d.is_one()).collect()
    };
    Some(RankTorsion { rank, torsion })
}

fn rank_torsion_of_columns(cols_i64: impl Fn() -> Vec<Col<i64>>, cols_big: impl Fn() -> Vec<Col<BigInt>>, nrows: usize) -> RankTorsion {
    reduce(cols_i64(), nrows).unwrap_or_else(|| reduce(cols_big(), nrows).expect("BigInt reduction cannot overflow"))
}

/// Invariant factors of a dense matrix, `d_1 | d_2 | ... | d_r`.
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
            else {
                return finish_factors(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    for j in t..cols {
                        let v = &a[i][j] - &q * &a[t][j];
                        a[i][j] = v;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for i in t..rows {
                        let v = &a[i][j] - &q * &a[i][t];
                        a[i][j] = v;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero())) {
                for j in t..cols {
                    let v = &a[t][j] + &a[i][j];
                    a[t][j] = v;
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    finish_factors(diag)
}

fn finish_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    // Restore the divisibility chain by gcd/lcm exchange.
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Invariant factors (nonzero diagonal of the Smith normal form).
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let cols = m.columns();
    let small: Option<Vec<Col<i64>>> =
        cols.iter().map(|c| c.iter().map(|(r, v)| v.to_i64().map(|x| (*r, x))).collect()).collect();
    let rt = small
        .and_then(|s| reduce(s, m.rows))
        .unwrap_or_else(|| reduce(cols, m.rows).expect("BigInt reduction cannot overflow"));
    let mut out = vec![BigInt::one(); rt.rank - rt.torsion.len()];
    out.extend(rt.torsion);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimHomology {
    pub i: isize,
    pub betti: u64,
    pub torsion: Vec<String>,
}

/// Reduced homology in dimensions -1 ..= dim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub dims: Vec<DimHomology>,
}

impl HomologyProfile {
    pub fn betti(&self, i: isize) -> u64 {
        self.dims.iter().find(|d| d.i == i).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, i: isize) -> &[String] {
        self.dims.iter().find(|d| d.i == i).map_or(&[], |d| d.torsion.as_slice())
    }

    pub fn has_torsion(&self) -> bool {
        self.dims.iter().any(|d| !d.torsion.is_empty())
    }

    /// `(k, betti_k)` for every nonzero Betti number.
    pub fn nonzero(&self) -> Vec<(isize, u64)> {
        self.dims.iter().filter(|d| d.betti > 0).map(|d| (d.i, d.betti)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|d| d.betti == 0 && d.torsion.is_empty())
    }

    /// Sum of (-1)^i betti_i.
    pub fn euler(&self) -> i128 {
        self.dims.iter().map(|d| if d.i.rem_euclid(2) == 0 { d.betti as i128 } else { -(d.betti as i128) }).sum()
    }

    /// Shift every dimension by `s`.
    pub fn shifted(&self, s: isize) -> HomologyProfile {
        HomologyProfile { dims: self.dims.iter().map(|d| DimHomology { i: d.i + s, ..d.clone() }).collect() }
    }

    /// Table notation: `(k,d)`, several groups in brackets, `0` when acyclic.
    pub fn table_entry(&self) -> String {
        let nz = self.nonzero();
        let parts: Vec<String> = nz.iter().map(|(k, d)| format!("({k},{d})")).collect();
        match parts.len() {
            0 => "0".into(),
            1 => parts[0].clone(),
            _ => format!("[{}]", parts.join(",")),
        }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.table_entry())?;
        for d in self.dims.iter().filter(|d| !d.torsion.is_empty()) {
            write!(f, " torsion H_{}: {}", d.i, d.torsion.join(","))?;
        }
        Ok(())
    }
}

/// Rank and torsion of the boundary from faces with `size` vertices.
pub fn boundary_rank(c: &SimplicialComplex, size: usize) -> RankTorsion {
    let nrows = if size == 0 { 0 } else { c.faces_of_size(size - 1).len() };
    rank_torsion_of_columns(|| boundary_columns::<i64>(c, size), || boundary_columns::<BigInt>(c, size), nrows)
}

pub fn homology_profile(c: &SimplicialComplex) -> HomologyProfile {
    let levels = c.size_levels();
    let ranks: Vec<RankTorsion> = (0..=levels).into_par_iter().map(|s| boundary_rank(c, s)).collect();
    let top = c.dim().map_or(-1, |d| d);
    let dims = (-1..=top)
        .map(|i| {
            let s = (i + 1) as usize;
            let faces = c.faces_of_size(s).len();
            let betti = faces - ranks[s].rank - ranks[s + 1].rank;
            DimHomology { i, betti: betti as u64, torsion: ranks[s + 1].torsion.iter().map(ToString::to_string).collect() }
        })
        .collect();
    HomologyProfile { dims }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{independence_complex, DEFAULT_FACE_BUDGET};
    use crate::grid::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Invariant factors from determinantal divisors.
    fn snf_by_minors(a: &[Vec<i64>]) -> Vec<BigInt> {
        fn det(m: &[Vec<i64>]) -> BigInt {
            if m.is_empty() {
                return BigInt::one();
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                    let s = if j % 2 == 0 { BigInt::from(m[0][j]) } else { -BigInt::from(m[0][j]) };
                    s * det(&minor)
                })
                .sum()
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect()).collect()
        }
        let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
        let mut divisors = vec![BigInt::one()];
        for k in 1..=r.min(c) {
            let mut g = BigInt::zero();
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let m: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                    g = g.gcd(&det(&m));
                }
            }
            if g.is_zero() {
                break;
            }
            divisors.push(g);
        }
        divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntegerMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])), big(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]])), big(&[1, 6]));
        assert_eq!(smith_normal_form(&IntegerMatrix::from_dense(&[vec![2, 4], vec![6, 8]])), big(&[2, 4]));
    }

    #[test]
    fn single_edge_orientation() {
        let c = SimplicialComplex::from_faces(vec![0, 1], [0, 1, 2, 3]);
        let d = boundary_matrix(&c, 1).unwrap();
        assert_eq!(d.to_dense(), vec![vec![BigInt::from(-1)], vec![BigInt::from(1)]]);
        assert!(boundary_matrix(&c, 2).is_err());
    }

    #[test]
    fn four_cycle_complex() {
        let c = independence_complex(&build_square_cyl(1, 4).unwrap(), 100).unwrap();
        for k in -1..1 {
            let prod = boundary_matrix(&c, k).unwrap().mul(&boundary_matrix(&c, k + 1).unwrap());
            assert!(prod.is_zero());
        }
        assert_eq!(smith_normal_form(&boundary_matrix(&c, 1).unwrap()), big(&[1, 1]));
        assert_eq!(homology_profile(&c).nonzero(), vec![(0, 1)]);
    }

    #[test]
    fn table_examples() {
        let prof = |m, n| homology_profile(&independence_complex(&build_square_cyl(m, n).unwrap(), DEFAULT_FACE_BUDGET).unwrap());
        assert_eq!(prof(3, 4).nonzero(), vec![(2, 3)]);
        assert_eq!(prof(2, 6).nonzero(), vec![(2, 1)]);
        assert_eq!(prof(1, 9).nonzero(), vec![(2, 2)]);
        let h = homology_profile(&independence_complex(&build_hex_cyl(2, 2).unwrap(), DEFAULT_FACE_BUDGET).unwrap());
        assert_eq!(h.nonzero(), vec![(2, 3)]);
        assert_eq!(prof(3, 1).nonzero(), vec![(-1, 1)]);
    }

    #[test]
    fn projective_plane_torsion() {
        // Six-vertex triangulation of RP^2.
        let tri = [[0, 1, 3], [1, 3, 4], [1, 2, 4], [2, 4, 0], [2, 0, 3], [3, 4, 5], [3, 5, 2], [2, 5, 1], [4, 5, 0], [5, 0, 1]];
        let faces = tri.iter().map(|t| t.iter().fold(0u64, |a, &v| a | 1 << v));
        let c = SimplicialComplex::generated_by((0..6).collect(), faces);
        let h = homology_profile(&c);
        assert!(h.nonzero().is_empty());
        assert_eq!(h.torsion(1), &["2".to_string()]);
    }

    #[test]
    fn table_rendering() {
        let p = HomologyProfile {
            dims: vec![
                DimHomology { i: 7, betti: 1, torsion: vec![] },
                DimHomology { i: 8, betti: 2, torsion: vec![] },
            ],
        };
        assert_eq!(p.table_entry(), "[(7,1),(8,2)]");
    }

    proptest! {
        #[test]
        fn snf_matches_minors(r in 1usize..4, c in 1usize..4, v in prop::collection::vec(-6i64..7, 9)) {
            let a: Vec<Vec<i64>> = (0..r).map(|i| (0..c).map(|j| v[i * 3 + j]).collect()).collect();
            prop_assert_eq!(smith_normal_form(&IntegerMatrix::from_dense(&a)), snf_by_minors(&a));
        }

        #[test]
        fn euler_poincare_and_suspension(fi in 0usize..7, m in 1usize..4, n in 1usize..4) {
            let g = Family::ALL[fi].build(m, n).unwrap();
            let c = independence_complex(&g, DEFAULT_FACE_BUDGET).unwrap();
            let h = homology_profile(&c);
            prop_assert_eq!(h.euler(), c.reduced_euler());
            let hs = homology_profile(&c.susp());
            prop_assert_eq!(hs.nonzero(), h.shifted(1).nonzero());
            prop_assert!(homology_profile(&c.cone()).is_acyclic());
        }
    }
}
