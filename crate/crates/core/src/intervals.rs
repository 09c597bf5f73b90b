//! Top-row intervals of square cylinder configurations, the closure operator,
//! the resulting equivalence classes and their alternating sums.
//!
//! Configurations are bitmasks over the graph ids of `C_{m,n}` (row 1 is the
//! top row, id `(r - 1) * n + (c - 1)`), so the exhaustive routines need
//! `mn <= 64`.

use crate::complex::{self, alternating_sum, independent_sets, ComplexError, LocalGraph};
use crate::grid::{build_square_cyl, induced_delete, Family, Graph, GridError};
use crate::transfer::{partition_function, TransferError, DEFAULT_STATE_CAP};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("{0} vertices exceed the 64-bit configuration mask")]
    TooLarge(usize),
    #[error("a class check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
}

/// Intervals of a nonempty top row: `pi` are the occupied columns in
/// increasing order and `lengths[i]` is the size of the cyclic interval
/// `(pi[i-1], pi[i]]`, so each interval ends at its particle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalDecomposition {
    pub n: usize,
    pub pi: Vec<usize>,
    pub lengths: Vec<usize>,
}

impl IntervalDecomposition {
    /// From 1-based top-row columns.
    pub fn from_columns(mut pi: Vec<usize>, n: usize) -> Self {
        pi.sort_unstable();
        pi.dedup();
        let k = pi.len();
        let lengths = (0..k)
            .map(|i| {
                let prev = pi[(i + k - 1) % k];
                let l = (pi[i] + n - prev) % n;
                if l == 0 {
                    n
                } else {
                    l
                }
            })
            .collect();
        IntervalDecomposition { n, pi, lengths }
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// Columns of interval `i`, first to last; the last is `pi[i]`.
    pub fn positions(&self, i: usize) -> Vec<usize> {
        let l = self.lengths[i];
        (0..l).map(|t| (self.pi[i] + 2 * self.n - l + t) % self.n + 1).collect()
    }

    /// 1-based index of column `c` inside its interval.
    pub fn index_of(&self, c: usize) -> Option<usize> {
        (0..self.pi.len()).find_map(|i| self.positions(i).iter().position(|&x| x == c).map(|t| t + 1))
    }

    /// Even positions: even index within their interval.
    pub fn even_positions(&self) -> Vec<usize> {
        (0..self.pi.len())
            .flat_map(|i| self.positions(i).into_iter().enumerate().filter(|(t, _)| (t + 1) % 2 == 0).map(|(_, c)| c))
            .collect()
    }

    /// Particles closing an odd interval.
    pub fn pi_odd(&self) -> Vec<usize> {
        self.pi.iter().zip(&self.lengths).filter(|(_, l)| *l % 2 == 1).map(|(&x, _)| x).collect()
    }

    /// Particles closing an even interval.
    pub fn pi_even(&self) -> Vec<usize> {
        self.pi.iter().zip(&self.lengths).filter(|(_, l)| *l % 2 == 0).map(|(&x, _)| x).collect()
    }

    /// Interval lengths up to rotation, as the lexicographically least
    /// rotation.
    pub fn signature(&self) -> Vec<usize> {
        canonical_rotation(&self.lengths)
    }
}

pub fn canonical_rotation(v: &[usize]) -> Vec<usize> {
    (0..v.len().max(1)).map(|s| v.iter().cycle().skip(s).take(v.len()).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

/// Configuration helpers on a square cylinder with at most 64 vertices.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub m: usize,
    pub n: usize,
    pub graph: Graph,
    nbr: Vec<u64>,
}

impl Cylinder {
    pub fn new(m: usize, n: usize) -> Result<Self, IntervalError> {
        let graph = build_square_cyl(m, n)?;
        if graph.vertex_count() > 64 {
            return Err(IntervalError::TooLarge(graph.vertex_count()));
        }
        let nbr = (0..graph.vertex_count()).map(|v| graph.neighbors(v).iter().fold(0u64, |a, &u| a | 1 << u)).collect();
        Ok(Cylinder { m, n, graph, nbr })
    }

    pub fn top(&self, c: usize) -> usize {
        c - 1
    }

    pub fn cell(&self, r: usize, c: usize) -> usize {
        (r - 1) * self.n + (c - 1)
    }

    pub fn top_columns(&self, s: u64) -> Vec<usize> {
        (1..=self.n).filter(|&c| s >> self.top(c) & 1 == 1).collect()
    }

    pub fn is_free(&self, s: u64, v: usize) -> bool {
        s >> v & 1 == 0 && !self.graph.is_blocked(v) && self.nbr[v] & s == 0
    }

    pub fn decompose(&self, s: u64) -> IntervalDecomposition {
        IntervalDecomposition::from_columns(self.top_columns(s), self.n)
    }

    /// Add every even top-row position that is free.
    pub fn closure(&self, s: u64) -> u64 {
        let d = self.decompose(s);
        if d.is_empty() {
            return s;
        }
        d.even_positions().into_iter().map(|c| self.top(c)).filter(|&v| self.is_free(s, v)).fold(s, |a, v| a | 1 << v)
    }

    /// The class of `s`: the closure with any set of even-interval particles
    /// removed, as long as the top row stays nonempty.
    pub fn equivalence_class(&self, s: u64) -> Vec<u64> {
        let hat = self.closure(s);
        let d = self.decompose(hat);
        if d.is_empty() {
            return vec![s];
        }
        let ev: Vec<usize> = d.pi_even().into_iter().map(|c| self.top(c)).collect();
        let all_top: u64 = d.pi.iter().fold(0, |a, &c| a | 1 << self.top(c));
        let mut out: Vec<u64> = (0u64..1 << ev.len())
            .map(|sub| ev.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).fold(hat, |a, (_, &v)| a & !(1 << v)))
            .filter(|&t| t & all_top != 0)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn classify(&self, s: u64) -> ClassLabel {
        let d = self.decompose(self.closure(s));
        if d.is_empty() {
            return ClassLabel::Q3;
        }
        let class_size = self.equivalence_class(s).len();
        let all_even = d.lengths.iter().all(|l| l % 2 == 0);
        let any_odd = d.lengths.iter().any(|l| l % 2 == 1);
        if class_size > 1 {
            if any_odd {
                ClassLabel::P1
            } else {
                ClassLabel::P2
            }
        } else if all_even {
            ClassLabel::P2
        } else if d.lengths.iter().all(|&l| l == 3) {
            ClassLabel::Q1
        } else {
            ClassLabel::Q2
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    P1,
    P2,
    Q1,
    Q2,
    Q3,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 5] = [ClassLabel::P1, ClassLabel::P2, ClassLabel::Q1, ClassLabel::Q2, ClassLabel::Q3];
}

/// Closed form for the classes whose intervals are all even.
pub fn even_class_sum(m: usize, n: usize, z_below: i128) -> i128 {
    if n % 2 == 1 {
        return 0;
    }
    let mut s = -2 * z_below;
    if m % 2 == 0 {
        s += if (m * n / 4) % 2 == 0 { 2 } else { -2 };
    }
    s
}

/// Closed form for the singleton classes with all intervals of length three.
pub fn three_class_sum(m: usize, n: usize) -> i128 {
    if n % 3 != 0 {
        return 0;
    }
    match m % 3 {
        0 => 0,
        1 => {
            if (n / 3) % 2 == 0 {
                3
            } else {
                -3
            }
        }
        _ => 3,
    }
}

/// Z(C_{m,n}) with the convention Z(C_{0,n}) = 1. Tall thin cylinders whose
/// transfer matrix is over the cap go through the frontier program.
pub fn z_cyl_or_one(m: usize, n: usize) -> Result<i128, IntervalError> {
    if m == 0 {
        Ok(1)
    } else {
        Ok(partition_function(Family::SquareCyl, m, n, DEFAULT_STATE_CAP)?.0)
    }
}

/// What is left for the odd-interval singleton classes once the other
/// classes are accounted for by their closed forms.
pub fn q2_residual(m: usize, n: usize) -> Result<i128, IntervalError> {
    let z = z_cyl_or_one(m, n)?;
    let below = z_cyl_or_one(m - 1, n)?;
    Ok(z - even_class_sum(m, n, below) - three_class_sum(m, n) - below)
}

/// Z(C_{m,n}) as predicted by the class recursion
/// `Z(C_{k,n}) = -Z(C_{k-1,n}) + closed forms` with every residual set to 0,
/// started from Z(C_{0,n}) = 1.
pub fn recursion_prediction(m: usize, n: usize) -> i128 {
    (1..=m).fold(1, |z, k| even_class_sum(k, n, z) + three_class_sum(k, n) + z)
}

/// How far Z(C_{m,n}) is from the residual-free recursion. Each residual
/// propagates upward with alternating sign, so this is
/// `sum_k (-1)^(m-k) q2_residual(k, n)`.
pub fn q2_deviation(m: usize, n: usize) -> Result<i128, IntervalError> {
    Ok(z_cyl_or_one(m, n)? - recursion_prediction(m, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSums {
    pub m: usize,
    pub n: usize,
    pub z: i128,
    pub sums: BTreeMap<ClassLabel, i128>,
    pub counts: BTreeMap<ClassLabel, u64>,
    pub even_closed_form: i128,
    pub three_closed_form: i128,
    pub z_below: i128,
    pub residual: i128,
    /// Number of faces whose closure-group disagrees with the class formula.
    pub class_mismatches: u64,
}

impl ClassSums {
    pub fn sum(&self, l: ClassLabel) -> i128 {
        self.sums.get(&l).copied().unwrap_or(0)
    }

    /// All closed forms hold and the classes add up to Z.
    pub fn consistent(&self) -> bool {
        self.sum(ClassLabel::P1) == 0
            && self.sum(ClassLabel::P2) == self.even_closed_form
            && self.sum(ClassLabel::Q1) == self.three_closed_form
            && self.sum(ClassLabel::Q3) == self.z_below
            && self.sum(ClassLabel::Q2) == self.residual
            && self.sums.values().sum::<i128>() == self.z
            && self.class_mismatches == 0
    }
}

/// Exhaustive class sums over I(C_{m,n}), grouping faces by closure and
/// comparing each group with the class formula.
pub fn class_sums(m: usize, n: usize) -> Result<ClassSums, IntervalError> {
    let cyl = Cylinder::new(m, n)?;
    let lg = LocalGraph::new(&cyl.graph)?;
    let to_ids = |f: u64| complex::bits(f).fold(0u64, |a, b| a | 1 << lg.labels[b]);
    let faces: Vec<u64> = independent_sets(&lg).map(to_ids).collect();
    let mut groups: HashMap<u64, Vec<u64>> = HashMap::new();
    for &f in &faces {
        groups.entry(cyl.closure(f)).or_default().push(f);
    }
    let mut sums = BTreeMap::new();
    let mut counts = BTreeMap::new();
    let mut mismatches = 0;
    for &f in &faces {
        let label = cyl.classify(f);
        *sums.entry(label).or_insert(0) += if f.count_ones() % 2 == 0 { 1 } else { -1 };
        *counts.entry(label).or_insert(0) += 1;
        let mut grp = groups[&cyl.closure(f)].clone();
        grp.sort_unstable();
        if label != ClassLabel::Q3 && grp != cyl.equivalence_class(f) {
            mismatches += 1;
        }
    }
    let z: i128 = faces.iter().map(|f| if f.count_ones() % 2 == 0 { 1 } else { -1 }).sum();
    let z_below = z_cyl_or_one(m - 1, n)?;
    let even_closed_form = even_class_sum(m, n, z_below);
    let three_closed_form = three_class_sum(m, n);
    Ok(ClassSums {
        m,
        n,
        z,
        sums,
        counts,
        even_closed_form,
        three_closed_form,
        z_below,
        residual: z - even_closed_form - three_closed_form - z_below,
        class_mismatches: mismatches,
    })
}

/// Top-row patterns whose intervals are all odd and not all of length three.
pub fn odd_patterns(n: usize) -> Vec<Vec<usize>> {
    if n < 3 {
        // n = 1 is blocked and a lone particle on n = 2 has an even interval.
        return vec![];
    }
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        let cols: Vec<usize> = (1..=n).filter(|c| mask >> (c - 1) & 1 == 1).collect();
        let rotated = (mask << 1 | mask >> (n - 1)) & ((1 << n) - 1);
        if mask & rotated != 0 {
            continue;
        }
        let d = IntervalDecomposition::from_columns(cols.clone(), n);
        if d.lengths.iter().all(|l| l % 2 == 1) && !d.lengths.iter().all(|&l| l == 3) {
            out.push(cols);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSum {
    pub m: usize,
    pub n: usize,
    pub pi: Vec<usize>,
    pub lengths: Vec<usize>,
    /// Sum over all configurations with this top row.
    pub sum: i128,
    /// Sum over those that are odd-interval singleton classes: every even
    /// position not beside a particle is blocked from the second row.
    pub singleton_sum: i128,
}

/// Alternating sum over configurations of C_{m,n} whose top row is exactly
/// `pi`, with the cells `forced` occupied as well.
pub fn top_row_sum(g: &Graph, n: usize, pi: &[usize], forced: &[usize]) -> Result<i128, IntervalError> {
    let mut drop: Vec<usize> = (0..n).collect();
    let mut occupied: Vec<usize> = pi.iter().map(|c| c - 1).collect();
    occupied.extend_from_slice(forced);
    for &v in &occupied {
        if occupied.iter().any(|&u| g.has_edge(u, v)) {
            return Ok(0);
        }
        drop.push(v);
        drop.extend_from_slice(g.neighbors(v));
    }
    drop.sort_unstable();
    drop.dedup();
    let rest = induced_delete(g, &drop)?;
    let z = alternating_sum(&rest)?;
    Ok(if occupied.len() % 2 == 0 { z } else { -z })
}

/// For every odd-interval pattern, the sum over all configurations with that
/// top row and the sum restricted to singleton classes.
pub fn pattern_scan(m: usize, n: usize) -> Result<Vec<PatternSum>, IntervalError> {
    let g = build_square_cyl(m, n)?;
    odd_patterns(n)
        .into_par_iter()
        .map(|pi| {
            let d = IntervalDecomposition::from_columns(pi.clone(), n);
            let beside = |c: usize| pi.iter().any(|&x| x % n + 1 == c || c % n + 1 == x);
            let blocked: Vec<usize> = d.even_positions().into_iter().filter(|&c| !beside(c)).collect();
            let sum = top_row_sum(&g, n, &pi, &[])?;
            let singleton_sum = if m == 1 {
                if blocked.is_empty() {
                    sum
                } else {
                    0
                }
            } else {
                let forced: Vec<usize> = blocked.iter().map(|&c| n + c - 1).collect();
                top_row_sum(&g, n, &pi, &forced)?
            };
            Ok(PatternSum { m, n, lengths: d.lengths.clone(), pi, sum, singleton_sum })
        })
        .collect()
}

/// Z(C_{m,6}) for m = 1..=max_m.
pub fn z_c6_sequence(max_m: usize) -> Result<Vec<i128>, IntervalError> {
    (1..=max_m).map(|m| z_cyl_or_one(m, 6)).collect()
}
