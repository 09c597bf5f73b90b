//! Independent sets, independence complexes and alternating sums.
//!
//! Faces are bitmasks over a local vertex numbering (at most 64 vertices);
//! `labels` maps bit `i` back to a graph id. The frontier dynamic program in
//! [`alternating_sum`] has no such limit.

use crate::grid::Graph;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

pub type FaceMask = u64;

/// Default cap on materialized faces.
pub const DEFAULT_FACE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("{0} occupiable vertices exceed the 64-vertex face representation")]
    TooManyVertices(usize),
    #[error("complex has {faces} faces, budget is {budget}")]
    Budget { faces: u128, budget: u64 },
    #[error("set {0:?} is not independent")]
    NotIndependent(Vec<usize>),
    #[error("frontier width {0} exceeds 128")]
    FrontierTooWide(usize),
    #[error("arithmetic overflow in the frontier sum")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Occupiable vertices of a graph with neighbourhoods as local bitmasks.
#[derive(Clone, Debug)]
pub struct LocalGraph {
    pub labels: Vec<usize>,
    pub nbr: Vec<u64>,
}

impl LocalGraph {
    pub fn new(g: &Graph) -> Result<Self, ComplexError> {
        let labels = g.occupiable();
        if labels.len() > 64 {
            return Err(ComplexError::TooManyVertices(labels.len()));
        }
        let index: HashMap<usize, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let nbr = labels
            .iter()
            .map(|&v| g.neighbors(v).iter().filter_map(|u| index.get(u)).fold(0u64, |acc, &i| acc | 1 << i))
            .collect();
        Ok(LocalGraph { labels, nbr })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn bit_of(&self, v: usize) -> Option<usize> {
        self.labels.iter().position(|&x| x == v)
    }

    pub fn mask_of(&self, s: &[usize]) -> Option<u64> {
        s.iter().try_fold(0u64, |acc, &v| self.bit_of(v).map(|b| acc | 1 << b))
    }

    pub fn vertices(&self, mask: u64) -> Vec<usize> {
        bits(mask).map(|b| self.labels[b]).collect()
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        bits(mask).all(|b| self.nbr[b] & mask == 0)
    }

    /// `v` is free in `mask`: absent, and adding it keeps the set independent.
    pub fn is_free(&self, mask: u64, b: usize) -> bool {
        mask >> b & 1 == 0 && self.nbr[b] & mask == 0
    }
}

/// Iterate over set bit positions.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

/// Streaming enumeration of independent sets in lexicographic order, the
/// empty set first.
pub struct IndependentSets {
    nbr: Vec<u64>,
    stack: Vec<(u64, u64, usize)>,
}

impl Iterator for IndependentSets {
    type Item = FaceMask;

    fn next(&mut self) -> Option<FaceMask> {
        let (mask, forbidden, start) = self.stack.pop()?;
        for v in (start..self.nbr.len()).rev() {
            if forbidden >> v & 1 == 0 {
                self.stack.push((mask | 1 << v, forbidden | self.nbr[v] | 1 << v, v + 1));
            }
        }
        Some(mask)
    }
}

pub fn independent_sets(lg: &LocalGraph) -> IndependentSets {
    IndependentSets { nbr: lg.nbr.clone(), stack: vec![(0, 0, 0)] }
}

/// Every independent set of `g` as sorted graph ids. Requires at most 64
/// occupiable vertices; use [`alternating_sum`] beyond that.
pub fn enumerate_independent_sets(g: &Graph) -> Result<impl Iterator<Item = Vec<usize>>, ComplexError> {
    let lg = LocalGraph::new(g)?;
    let labels = lg.labels.clone();
    Ok(independent_sets(&lg).map(move |m| bits(m).map(|b| labels[b]).collect()))
}

/// Z(G) by direct enumeration.
pub fn alternating_sum_enumerated(g: &Graph) -> Result<i128, ComplexError> {
    let lg = LocalGraph::new(g)?;
    Ok(independent_sets(&lg).map(|m| if m.count_ones() % 2 == 0 { 1 } else { -1 }).sum())
}

/// Z(G) = sum over independent sets of (-1)^|sigma|, by a frontier dynamic
/// program over the cheaper of row-major and column-major vertex orders.
pub fn alternating_sum(g: &Graph) -> Result<i128, ComplexError> {
    frontier_sum(g, -1)
}

/// Number of independent sets, the empty set included.
pub fn count_independent_sets(g: &Graph) -> Result<u128, ComplexError> {
    frontier_sum(g, 1).map(|c| c as u128)
}

fn frontier_width(g: &Graph, order: &[usize]) -> usize {
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let last: Vec<usize> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&u| pos[u] != usize::MAX).map(|&u| pos[u]).max().unwrap_or(0))
        .collect();
    let mut width = 0;
    let mut open = 0usize;
    let mut closing = vec![0usize; order.len()];
    for i in 0..order.len() {
        if last[i] > i {
            open += 1;
            closing[last[i]] += 1;
        }
        width = width.max(open);
        open -= closing[i];
    }
    width
}

fn frontier_sum(g: &Graph, weight: i128) -> Result<i128, ComplexError> {
    let verts = g.occupiable();
    let mut col_major = verts.clone();
    col_major.sort_by_key(|&v| {
        let (r, c) = g.coords(v);
        (c, r)
    });
    let order = if frontier_width(g, &col_major) < frontier_width(g, &verts) { col_major } else { verts };
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let nb = |v: usize| g.neighbors(v).iter().copied().filter(|&u| pos[u] != usize::MAX);
    let last: Vec<usize> = order.iter().map(|&v| nb(v).map(|u| pos[u]).max().unwrap_or(0)).collect();
    let mut release: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    let mut slot = vec![usize::MAX; order.len()];
    let mut free_slots: Vec<usize> = (0..128).rev().collect();
    let mut states: HashMap<u128, i128> = HashMap::from([(0, 1)]);
    for (i, &v) in order.iter().enumerate() {
        let conflict = nb(v).filter(|&u| pos[u] < i).fold(0u128, |acc, u| acc | 1 << slot[pos[u]]);
        let own = if last[i] > i {
            let s = free_slots.pop().ok_or(ComplexError::FrontierTooWide(129))?;
            slot[i] = s;
            release[last[i]].push(i);
            1u128 << s
        } else {
            0
        };
        let mut next: HashMap<u128, i128> = HashMap::with_capacity(states.len() * 2);
        let mut clear = 0u128;
        for &j in &release[i] {
            clear |= 1 << slot[j];
        }
        for (&key, &val) in &states {
            let e = next.entry(key & !clear).or_insert(0);
            *e = e.checked_add(val).ok_or(ComplexError::Overflow)?;
            if key & conflict == 0 {
                let add = val.checked_mul(weight).ok_or(ComplexError::Overflow)?;
                let e = next.entry((key | own) & !clear).or_insert(0);
                *e = e.checked_add(add).ok_or(ComplexError::Overflow)?;
            }
        }
        for &j in &release[i] {
            free_slots.push(slot[j]);
        }
        next.retain(|_, v| *v != 0);
        states = next;
    }
    states.values().try_fold(0i128, |acc, &v| acc.checked_add(v).ok_or(ComplexError::Overflow))
}

/// Finite abstract simplicial complex on at most 64 vertices, faces graded by
/// cardinality: `faces[k]` holds the sorted masks with `k` vertices
/// (dimension `k - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<usize>,
    faces: Vec<Vec<FaceMask>>,
}

impl SimplicialComplex {
    /// Build from an arbitrary face list; duplicates are merged.
    pub fn from_faces(labels: Vec<usize>, faces: impl IntoIterator<Item = FaceMask>) -> Self {
        let mut graded: Vec<Vec<FaceMask>> = vec![Vec::new(); labels.len() + 1];
        for f in faces {
            graded[f.count_ones() as usize].push(f);
        }
        for level in &mut graded {
            level.sort_unstable();
            level.dedup();
        }
        while graded.len() > 1 && graded.last().is_some_and(Vec::is_empty) {
            graded.pop();
        }
        SimplicialComplex { labels, faces: graded }
    }

    /// Downward closure of the given faces.
    pub fn generated_by(labels: Vec<usize>, gens: impl IntoIterator<Item = FaceMask>) -> Self {
        let mut graded: Vec<HashSet<FaceMask>> = vec![HashSet::new(); labels.len() + 1];
        for f in gens {
            graded[f.count_ones() as usize].insert(f);
        }
        for k in (1..graded.len()).rev() {
            let lower: Vec<FaceMask> = graded[k].iter().flat_map(|&f| bits(f).map(move |b| f & !(1 << b))).collect();
            graded[k - 1].extend(lower);
        }
        Self::from_faces(labels, graded.into_iter().flatten())
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    /// Faces with exactly `k` vertices.
    pub fn faces_of_size(&self, k: usize) -> &[FaceMask] {
        self.faces.get(k).map_or(&[], Vec::as_slice)
    }

    /// Faces of dimension `d >= -1`.
    pub fn faces_of_dim(&self, d: isize) -> &[FaceMask] {
        if d < -1 {
            &[]
        } else {
            self.faces_of_size((d + 1) as usize)
        }
    }

    /// Largest face cardinality present plus one.
    pub fn size_levels(&self) -> usize {
        self.faces.len()
    }

    /// Dimension, `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        (0..self.faces.len()).rev().find(|&k| !self.faces[k].is_empty()).map(|k| k as isize - 1)
    }

    pub fn is_void(&self) -> bool {
        self.faces.iter().all(Vec::is_empty)
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, f: FaceMask) -> bool {
        self.faces_of_size(f.count_ones() as usize).binary_search(&f).is_ok()
    }

    pub fn index_of(&self, f: FaceMask) -> Option<usize> {
        self.faces_of_size(f.count_ones() as usize).binary_search(&f).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = FaceMask> + '_ {
        self.faces.iter().flatten().copied()
    }

    /// Sum over faces of (-1)^dim, the empty face counted in dimension -1.
    pub fn reduced_euler(&self) -> i128 {
        self.faces.iter().enumerate().map(|(k, l)| if k % 2 == 1 { l.len() as i128 } else { -(l.len() as i128) }).sum()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.iter().all(|f| bits(f).all(|b| self.contains(f & !(1 << b))))
    }

    /// Faces not contained in a larger face.
    pub fn maximal_faces(&self) -> Vec<FaceMask> {
        let mut covered: HashSet<FaceMask> = HashSet::new();
        for f in self.iter() {
            for b in bits(f) {
                covered.insert(f & !(1 << b));
            }
        }
        self.iter().filter(|f| !covered.contains(f)).collect()
    }

    /// Vertices appearing in some face.
    pub fn support(&self) -> FaceMask {
        self.faces_of_size(1).iter().fold(0, |a, &f| a | f)
    }

    /// True when the complex is the full simplex on its support.
    pub fn is_full_simplex(&self) -> bool {
        let k = self.support().count_ones();
        !self.is_void() && self.face_count() as u128 == 1u128 << k
    }

    pub fn vertices(&self, f: FaceMask) -> Vec<usize> {
        bits(f).map(|b| self.labels[b]).collect()
    }

    fn fresh_label(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Cone with apex a new vertex.
    pub fn cone(&self) -> SimplicialComplex {
        let a = self.ground_size();
        assert!(a < 64, "cone exceeds 64 vertices");
        let mut labels = self.labels.clone();
        labels.push(self.fresh_label());
        let faces: Vec<FaceMask> = self.iter().flat_map(|f| [f, f | 1 << a]).collect();
        SimplicialComplex::from_faces(labels, faces)
    }

    /// Suspension by two new vertices s0, s1.
    pub fn susp(&self) -> SimplicialComplex {
        let a = self.ground_size();
        assert!(a + 1 < 64, "suspension exceeds 64 vertices");
        let mut labels = self.labels.clone();
        let l = self.fresh_label();
        labels.extend([l, l + 1]);
        let faces: Vec<FaceMask> = self.iter().flat_map(|f| [f, f | 1 << a, f | 1 << (a + 1)]).collect();
        SimplicialComplex::from_faces(labels, faces)
    }

    /// One face per line as space-separated labels; the empty face is an
    /// empty line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# faces\n");
        for f in self.iter() {
            let v: Vec<String> = self.vertices(f).iter().map(ToString::to_string).collect();
            out.push_str(&v.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(s: &str) -> Result<SimplicialComplex, ComplexError> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for line in s.lines() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            let face = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| ComplexError::Parse(format!("{t}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(face);
        }
        let mut labels: Vec<usize> = rows.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() > 64 {
            return Err(ComplexError::TooManyVertices(labels.len()));
        }
        let faces = rows.iter().map(|r| r.iter().fold(0u64, |a, v| a | 1 << labels.binary_search(v).unwrap()));
        Ok(SimplicialComplex::from_faces(labels.clone(), faces.collect::<Vec<_>>()))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            labels: self.labels.clone(),
            faces_by_dim: self
                .faces
                .iter()
                .enumerate()
                .map(|(k, l)| FacesOfDim { dim: k as isize - 1, faces: l.iter().map(|&f| self.vertices(f)).collect() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacesOfDim {
    pub dim: isize,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub labels: Vec<usize>,
    pub faces_by_dim: Vec<FacesOfDim>,
}

/// The independence complex, materialized when its face count is within
/// `budget`.
pub fn independence_complex(g: &Graph, budget: u64) -> Result<SimplicialComplex, ComplexError> {
    let lg = LocalGraph::new(g)?;
    let total = count_independent_sets(g)?;
    if total > budget as u128 {
        return Err(ComplexError::Budget { faces: total, budget });
    }
    Ok(SimplicialComplex::from_faces(lg.labels.clone(), independent_sets(&lg).collect::<Vec<_>>()))
}

/// The set X of faces meeting every neighbourhood of `O`, its downward
/// closure Delta_O, and Gamma_O = Delta_O minus X.
#[derive(Clone, Debug)]
pub struct OComplexes {
    pub complex: SimplicialComplex,
    pub x: Vec<FaceMask>,
    pub delta: SimplicialComplex,
    pub gamma: SimplicialComplex,
}

pub fn x_set(lg: &LocalGraph, c: &SimplicialComplex, o: FaceMask) -> Vec<FaceMask> {
    c.iter().filter(|&f| bits(o).all(|u| lg.nbr[u] & f != 0)).collect()
}

pub fn gamma_delta_o(g: &Graph, o: &[usize], budget: u64) -> Result<OComplexes, ComplexError> {
    let lg = LocalGraph::new(g)?;
    let om = match lg.mask_of(o) {
        Some(m) if lg.is_independent(m) && m.count_ones() as usize == o.len() => m,
        _ => return Err(ComplexError::NotIndependent(o.to_vec())),
    };
    let complex = independence_complex(g, budget)?;
    let x = x_set(&lg, &complex, om);
    let delta = SimplicialComplex::generated_by(complex.labels().to_vec(), x.iter().copied());
    let xs: HashSet<FaceMask> = x.iter().copied().collect();
    let gamma = SimplicialComplex::from_faces(complex.labels().to_vec(), delta.iter().filter(|f| !xs.contains(f)).collect::<Vec<_>>());
    Ok(OComplexes { complex, x, delta, gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::*;
    use proptest::prelude::*;

    fn fib(n: usize) -> u128 {
        let (mut a, mut b) = (0u128, 1u128);
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    }

    #[test]
    fn small_enumerations() {
        let c = build_square_cyl(2, 3).unwrap();
        let sets: Vec<Vec<usize>> = enumerate_independent_sets(&c).unwrap().collect();
        assert_eq!(sets.len(), 13);
        assert_eq!(sets.iter().filter(|s| s.len() == 2).count(), 6);
        assert_eq!(enumerate_independent_sets(&build_square_cyl(1, 4).unwrap()).unwrap().count(), 7);
        let edgeless = build_parallelogram(5, 1).unwrap();
        assert_eq!(enumerate_independent_sets(&edgeless).unwrap().count(), 32);
    }

    #[test]
    fn enumeration_is_exhaustive_and_unique() {
        let g = build_hex_cyl(2, 2).unwrap();
        let lg = LocalGraph::new(&g).unwrap();
        let got: HashSet<u64> = independent_sets(&lg).collect();
        let want: HashSet<u64> = (0u64..1 << lg.len()).filter(|&m| lg.is_independent(m)).collect();
        assert_eq!(independent_sets(&lg).count(), got.len());
        assert_eq!(got, want);
    }

    #[test]
    fn known_sums() {
        assert_eq!(alternating_sum(&build_square_cyl(2, 3).unwrap()), Ok(1));
        assert_eq!(alternating_sum(&build_square_cyl(2, 4).unwrap()), Ok(3));
        assert_eq!(alternating_sum(&build_square_cyl(4, 9).unwrap()), Ok(-2));
        assert_eq!(alternating_sum(&build_square_cyl(5, 1).unwrap()), Ok(1));
    }

    #[test]
    fn path_counts_are_fibonacci() {
        for n in 1..30 {
            assert_eq!(count_independent_sets(&build_square_rect(1, n).unwrap()), Ok(fib(n + 2)));
        }
    }

    #[test]
    fn small_complexes() {
        let c = independence_complex(&build_square_cyl(3, 1).unwrap(), 10).unwrap();
        assert_eq!(c.face_count(), 1);
        assert_eq!(c.dim(), Some(-1));
        let c = independence_complex(&build_square_rect(1, 3).unwrap(), 10).unwrap();
        assert_eq!(c.face_count(), 5);
        assert!(c.contains(0b101));
        assert!(matches!(
            independence_complex(&build_square_cyl(4, 4).unwrap(), 10),
            Err(ComplexError::Budget { .. })
        ));
    }

    #[test]
    fn suspension_of_empty_face_is_two_points() {
        let s = SimplicialComplex::from_faces(vec![], [0]).susp();
        assert_eq!(s.faces_of_size(0), &[0]);
        assert_eq!(s.faces_of_size(1).len(), 2);
        assert_eq!(s.face_count(), 3);
    }

    #[test]
    fn checkerboard_gamma() {
        let g = build_square_cyl(3, 4).unwrap();
        let o: Vec<usize> = (0..12).filter(|&v| {
            let (r, c) = g.coords(v);
            (r + c) % 2 == 1
        }).collect();
        let oc = gamma_delta_o(&g, &o, DEFAULT_FACE_BUDGET).unwrap();
        assert!(oc.delta.is_full_simplex());
        assert_eq!(oc.gamma.maximal_faces().len(), 6);
        let z: i128 = oc.x.iter().map(|f| if f.count_ones() % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(z, -3);
    }

    #[test]
    fn empty_o_gives_everything() {
        let g = build_square_cyl(2, 4).unwrap();
        let oc = gamma_delta_o(&g, &[], DEFAULT_FACE_BUDGET).unwrap();
        assert_eq!(oc.x.len(), oc.complex.face_count());
        assert_eq!(oc.delta, oc.complex);
        assert!(oc.gamma.is_void());
        assert!(matches!(gamma_delta_o(&g, &[0, 1], 100), Err(ComplexError::NotIndependent(_))));
    }

    #[test]
    fn text_round_trip() {
        let c = independence_complex(&build_square_cyl(2, 3).unwrap(), 100).unwrap();
        let back = SimplicialComplex::from_text(&c.to_text()).unwrap();
        assert_eq!(back.face_count(), c.face_count());
        assert_eq!(back.reduced_euler(), c.reduced_euler());
    }

    proptest! {
        #[test]
        fn dp_matches_enumeration(fi in 0usize..7, m in 1usize..5, n in 1usize..5) {
            let g = Family::ALL[fi].build(m, n).unwrap();
            prop_assume!(g.occupiable().len() <= 22);
            prop_assert_eq!(alternating_sum(&g).unwrap(), alternating_sum_enumerated(&g).unwrap());
            let c = independence_complex(&g, DEFAULT_FACE_BUDGET).unwrap();
            prop_assert_eq!(c.face_count() as u128, count_independent_sets(&g).unwrap());
            prop_assert_eq!(alternating_sum(&g).unwrap(), -c.reduced_euler());
        }

        #[test]
        fn faces_are_downward_closed(m in 1usize..4, n in 2usize..6, pick in any::<u64>()) {
            let c = independence_complex(&build_square_cyl(m, n).unwrap(), DEFAULT_FACE_BUDGET).unwrap();
            let faces: Vec<u64> = c.iter().collect();
            let f = faces[(pick as usize) % faces.len()];
            let sub = f & pick;
            prop_assert!(c.contains(sub));
        }
    }
}
