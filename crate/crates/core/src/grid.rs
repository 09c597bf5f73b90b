//! Grid graphs on the square and hexagonal lattices.
//!
//! Vertices carry dense row-major ids `(row - 1) * cols + (col - 1)` over the
//! actual layout of the family:
//!
//! | family          | rows  | cols | identifications                         |
//! |-----------------|-------|------|-----------------------------------------|
//! | `SquareRect`    | m     | n    | none                                    |
//! | `SquareCyl`     | m     | n    | columns 1 and n adjacent                |
//! | `SquareTorus`   | m     | n    | both directions                         |
//! | `HexRect`       | m + 1 | 2n   | none                                    |
//! | `HexCyl`        | m + 1 | 2n   | columns 1 and 2n adjacent               |
//! | `HexTorus`      | m     | 2n   | columns cyclic, last row rungs shifted  |
//! | `Parallelogram` | m     | n    | cell `(a, k)` with `k = a + b - 1`      |
//!
//! Hexagonal graphs are brick walls: every row is a path (or cycle) and a rung
//! joins `(r, c)` to `(r + 1, c)` exactly when `r + c` is even. In the torus
//! the rung leaving the last row at column `c` lands on row 1 at column
//! `c + m (mod 2n)`.
//!
//! A wrap edge that would join a vertex to itself marks the vertex blocked
//! (it can never be occupied); a wrap edge duplicating an existing edge is
//! dropped.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SquareRect,
    SquareCyl,
    SquareTorus,
    HexRect,
    HexCyl,
    HexTorus,
    Parallelogram,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::SquareRect,
        Family::SquareCyl,
        Family::SquareTorus,
        Family::HexRect,
        Family::HexCyl,
        Family::HexTorus,
        Family::Parallelogram,
    ];

    /// Layout `(rows, cols)` for the given parameters.
    pub fn layout(self, m: usize, n: usize) -> (usize, usize) {
        match self {
            Family::HexRect | Family::HexCyl => (m + 1, 2 * n),
            Family::HexTorus => (m, 2 * n),
            _ => (m, n),
        }
    }

    pub fn build(self, m: usize, n: usize) -> Result<Graph, GridError> {
        match self {
            Family::SquareRect => build_square_rect(m, n),
            Family::SquareCyl => build_square_cyl(m, n),
            Family::SquareTorus => build_square_torus(m, n),
            Family::HexRect => build_hex_rect(m, n),
            Family::HexCyl => build_hex_cyl(m, n),
            Family::HexTorus => build_hex_torus(m, n),
            Family::Parallelogram => build_parallelogram(m, n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::SquareRect => "square-rect",
            Family::SquareCyl => "square-cyl",
            Family::SquareTorus => "square-torus",
            Family::HexRect => "hex-rect",
            Family::HexCyl => "hex-cyl",
            Family::HexTorus => "hex-torus",
            Family::Parallelogram => "parallelogram",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GridError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("grid dimensions must be positive, got m={m} n={n}")]
    ZeroSize { m: usize, n: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("vertex {0} is not a live vertex")]
    NotLive(usize),
    #[error("boundary row {row} outside 1..={m}")]
    BoundaryRow { row: usize, m: usize },
    #[error("both boundaries prescribed on a parallelogram of width {0} < 2")]
    BoundaryTooNarrow(usize),
    #[error("boundary fixing needs a parallelogram, got {0:?}")]
    NotParallelogram(Family),
    #[error("malformed graph: {0}")]
    Malformed(String),
}

/// Finite simple graph with grid metadata. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    family: Family,
    m: usize,
    n: usize,
    rows: usize,
    cols: usize,
    adj: Vec<Vec<usize>>,
    removed: Vec<bool>,
    blocked: Vec<bool>,
}

struct Builder {
    cols: usize,
    adj: Vec<BTreeSet<usize>>,
    blocked: Vec<bool>,
}

impl Builder {
    fn new(rows: usize, cols: usize) -> Self {
        Builder { cols, adj: vec![BTreeSet::new(); rows * cols], blocked: vec![false; rows * cols] }
    }

    fn id(&self, r: usize, c: usize) -> usize {
        (r - 1) * self.cols + (c - 1)
    }

    fn edge(&mut self, a: usize, b: usize) {
        if a == b {
            self.blocked[a] = true;
        } else {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    fn finish(self, family: Family, m: usize, n: usize, rows: usize) -> Graph {
        let size = self.adj.len();
        Graph {
            family,
            m,
            n,
            rows,
            cols: self.cols,
            adj: self.adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            removed: vec![false; size],
            blocked: self.blocked,
        }
    }
}

fn check(m: usize, n: usize) -> Result<(), GridError> {
    if m == 0 || n == 0 {
        Err(GridError::ZeroSize { m, n })
    } else {
        Ok(())
    }
}

/// Successor of column `c` on a cycle of length `len`.
fn next_col(c: usize, len: usize) -> usize {
    c % len + 1
}

fn square(family: Family, m: usize, n: usize, wrap_cols: bool, wrap_rows: bool) -> Result<Graph, GridError> {
    check(m, n)?;
    let mut b = Builder::new(m, n);
    for i in 1..=m {
        for j in 1..=n {
            if j < n {
                b.edge(b.id(i, j), b.id(i, j + 1));
            }
            if i < m {
                b.edge(b.id(i, j), b.id(i + 1, j));
            }
        }
        if wrap_cols {
            b.edge(b.id(i, n), b.id(i, 1));
        }
    }
    if wrap_rows {
        for j in 1..=n {
            b.edge(b.id(m, j), b.id(1, j));
        }
    }
    Ok(b.finish(family, m, n, m))
}

pub fn build_square_rect(m: usize, n: usize) -> Result<Graph, GridError> {
    square(Family::SquareRect, m, n, false, false)
}

pub fn build_square_cyl(m: usize, n: usize) -> Result<Graph, GridError> {
    square(Family::SquareCyl, m, n, true, false)
}

pub fn build_square_torus(m: usize, n: usize) -> Result<Graph, GridError> {
    square(Family::SquareTorus, m, n, true, true)
}

fn hex_brick(family: Family, m: usize, n: usize, wrap: bool) -> Result<Graph, GridError> {
    check(m, n)?;
    let (rows, cols) = (m + 1, 2 * n);
    let mut b = Builder::new(rows, cols);
    for r in 1..=rows {
        for c in 1..=cols {
            if c < cols {
                b.edge(b.id(r, c), b.id(r, c + 1));
            }
            if r < rows && (r + c) % 2 == 0 {
                b.edge(b.id(r, c), b.id(r + 1, c));
            }
        }
        if wrap {
            b.edge(b.id(r, cols), b.id(r, 1));
        }
    }
    Ok(b.finish(family, m, n, rows))
}

pub fn build_hex_rect(m: usize, n: usize) -> Result<Graph, GridError> {
    hex_brick(Family::HexRect, m, n, false)
}

pub fn build_hex_cyl(m: usize, n: usize) -> Result<Graph, GridError> {
    hex_brick(Family::HexCyl, m, n, true)
}

pub fn build_hex_torus(m: usize, n: usize) -> Result<Graph, GridError> {
    check(m, n)?;
    let (rows, cols) = (m, 2 * n);
    let mut b = Builder::new(rows, cols);
    for r in 1..=rows {
        for c in 1..=cols {
            b.edge(b.id(r, c), b.id(r, next_col(c, cols)));
            if (r + c) % 2 == 0 {
                if r < rows {
                    b.edge(b.id(r, c), b.id(r + 1, c));
                } else {
                    let target = (c - 1 + m) % cols + 1;
                    b.edge(b.id(r, c), b.id(1, target));
                }
            }
        }
    }
    Ok(b.finish(Family::HexTorus, m, n, rows))
}

pub fn build_parallelogram(m: usize, n: usize) -> Result<Graph, GridError> {
    check(m, n)?;
    let mut b = Builder::new(m, n);
    for a in 1..=m {
        for k in 1..=n {
            if k < n {
                b.edge(b.id(a, k), b.id(a, k + 1));
                if a < m {
                    b.edge(b.id(a, k), b.id(a + 1, k + 1));
                }
            }
        }
    }
    Ok(b.finish(Family::Parallelogram, m, n, m))
}

/// A parallelogram with prescribed boundary columns.
#[derive(Clone, Debug)]
pub struct FixedBoundary {
    /// The region left after removing forced cells, their neighbours and the
    /// forced-empty boundary cells.
    pub graph: Graph,
    /// Forced-occupied cells.
    pub forced: Vec<usize>,
    pub forced_count: usize,
}

/// Prescribe boundary particles on `P_{m,n}`: row `j` of `a` (resp. `b`) is
/// occupied on the left (resp. right) boundary, every other boundary cell is
/// empty. Rows are counted from the bottom, so `j` sits on layout row
/// `m + 1 - j`. Returns `None` when no configuration satisfies the
/// prescription.
pub fn fix_boundary(g: &Graph, a: &[usize], b: &[usize]) -> Result<Option<FixedBoundary>, GridError> {
    if g.family != Family::Parallelogram {
        return Err(GridError::NotParallelogram(g.family));
    }
    let (m, n) = (g.m, g.n);
    for &row in a.iter().chain(b) {
        if row == 0 || row > m {
            return Err(GridError::BoundaryRow { row, m });
        }
    }
    if n < 2 && !a.is_empty() && !b.is_empty() {
        return Err(GridError::BoundaryTooNarrow(n));
    }
    let cell = |j: usize, k: usize| (m - j) * n + (k - 1);
    let left: BTreeSet<usize> = a.iter().copied().collect();
    let right: BTreeSet<usize> = b.iter().copied().collect();
    let forced: Vec<usize> = left.iter().map(|&j| cell(j, 1)).chain(right.iter().map(|&j| cell(j, n))).collect();
    let mut empty = BTreeSet::new();
    for j in 1..=m {
        if !left.contains(&j) {
            empty.insert(cell(j, 1));
        }
        if !right.contains(&j) {
            empty.insert(cell(j, n));
        }
    }
    let forced_set: BTreeSet<usize> = forced.iter().copied().collect();
    if forced_set.len() < forced.len() || forced.iter().any(|f| empty.contains(f)) {
        return Ok(None);
    }
    if forced.iter().any(|&f| g.adj[f].iter().any(|u| forced_set.contains(u))) {
        return Ok(None);
    }
    let mut drop: BTreeSet<usize> = empty;
    for &f in &forced {
        drop.insert(f);
        drop.extend(g.adj[f].iter().copied());
    }
    let drop: Vec<usize> = drop.into_iter().filter(|&v| !g.removed[v]).collect();
    let graph = induced_delete(g, &drop)?;
    Ok(Some(FixedBoundary { graph, forced_count: forced.len(), forced }))
}

/// Remove the vertices `s` together with their incident edges.
pub fn induced_delete(g: &Graph, s: &[usize]) -> Result<Graph, GridError> {
    let mut out = g.clone();
    for &v in s {
        if v >= g.vertex_count() || out.removed[v] {
            return Err(GridError::NotLive(v));
        }
        out.removed[v] = true;
    }
    for v in 0..out.adj.len() {
        if out.removed[v] {
            out.adj[v].clear();
        } else {
            let removed = &out.removed;
            let kept: Vec<usize> = out.adj[v].iter().copied().filter(|&u| !removed[u]).collect();
            out.adj[v] = kept;
        }
    }
    Ok(out)
}

impl Graph {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Size of the id space, removed vertices included.
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn id(&self, row: usize, col: usize) -> usize {
        debug_assert!((1..=self.rows).contains(&row) && (1..=self.cols).contains(&col));
        (row - 1) * self.cols + (col - 1)
    }

    /// 1-based `(row, col)` in the layout.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.cols + 1, v % self.cols + 1)
    }

    pub fn is_live(&self, v: usize) -> bool {
        !self.removed[v]
    }

    pub fn is_removed(&self, v: usize) -> bool {
        self.removed[v]
    }

    pub fn is_blocked(&self, v: usize) -> bool {
        self.blocked[v]
    }

    /// Live vertices that may be occupied.
    pub fn occupiable(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.removed[v] && !self.blocked[v]).collect()
    }

    pub fn live_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| !self.removed[v]).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (v, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&u| u > v).map(|&u| (v, u)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Independent in the graph: live, unblocked, pairwise non-adjacent.
    pub fn is_independent(&self, s: &[usize]) -> bool {
        s.iter().all(|&v| v < self.vertex_count() && !self.removed[v] && !self.blocked[v])
            && s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| a != b && !self.has_edge(a, b)))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            family: self.family,
            m: self.m,
            n: self.n,
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            removed: (0..self.vertex_count()).filter(|&v| self.removed[v]).collect(),
            blocked: (0..self.vertex_count()).filter(|&v| self.blocked[v]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph, GridError> {
        check(j.m, j.n)?;
        let (rows, cols) = j.family.layout(j.m, j.n);
        let size = rows * cols;
        let mut adj = vec![BTreeSet::new(); size];
        let mut removed = vec![false; size];
        let mut blocked = vec![false; size];
        let bad = |msg: String| GridError::Malformed(msg);
        for &v in &j.removed {
            *removed.get_mut(v).ok_or_else(|| bad(format!("removed id {v}")))? = true;
        }
        for &v in &j.blocked {
            *blocked.get_mut(v).ok_or_else(|| bad(format!("blocked id {v}")))? = true;
        }
        for &[a, b] in &j.edges {
            if a >= size || b >= size || a == b {
                return Err(bad(format!("edge [{a},{b}]")));
            }
            if removed[a] || removed[b] {
                return Err(bad(format!("edge [{a},{b}] touches a removed vertex")));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Graph {
            family: j.family,
            m: j.m,
            n: j.n,
            rows,
            cols,
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
            removed,
            blocked,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub removed: Vec<usize>,
    pub blocked: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_counts() {
        let g = build_square_rect(1, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert_eq!(build_square_rect(3, 2).unwrap().edge_count(), 7);
        assert_eq!(build_square_rect(2, 3).unwrap().edge_count(), 7);
        assert_eq!(build_square_cyl(2, 3).unwrap().edge_count(), 9);
        assert!(build_square_rect(0, 3).is_err());
    }

    #[test]
    fn cylinder_degenerate_widths() {
        let g = build_square_cyl(3, 1).unwrap();
        assert!((0..3).all(|v| g.is_blocked(v)));
        assert!(g.occupiable().is_empty());
        // width 2 drops the duplicate wrap edge
        assert_eq!(build_square_cyl(4, 2).unwrap().edges(), build_square_rect(4, 2).unwrap().edges());
        let c = build_square_cyl(1, 4).unwrap();
        assert_eq!(c.edge_count(), 4);
        assert!((0..4).all(|v| c.degree(v) == 2));
    }

    #[test]
    fn torus_shapes() {
        let t = build_square_torus(3, 3).unwrap();
        assert_eq!(t.edge_count(), 18);
        assert!((0..9).all(|v| t.degree(v) == 4));
        let t = build_square_torus(2, 2).unwrap();
        assert_eq!(t.edge_count(), 4);
        let t = build_square_torus(1, 5).unwrap();
        assert!(t.occupiable().is_empty());
    }

    #[test]
    fn torus_is_vertex_transitive() {
        let (m, n) = (4, 5);
        let t = build_square_torus(m, n).unwrap();
        let shift = |v: usize, dr: usize, dc: usize| {
            let (r, c) = t.coords(v);
            t.id((r - 1 + dr) % m + 1, (c - 1 + dc) % n + 1)
        };
        let mut orbit = BTreeSet::new();
        for dr in 0..m {
            for dc in 0..n {
                for (a, b) in t.edges() {
                    assert!(t.has_edge(shift(a, dr, dc), shift(b, dr, dc)));
                }
                orbit.insert(shift(0, dr, dc));
            }
        }
        assert_eq!(orbit.len(), m * n);
    }

    #[test]
    fn hex_degrees() {
        let h = build_hex_rect(4, 4).unwrap();
        for v in 0..h.vertex_count() {
            let (r, c) = h.coords(v);
            if r > 1 && r < h.rows() && c > 1 && c < h.cols() {
                assert_eq!(h.degree(v), 3, "interior vertex ({r},{c})");
            }
            assert!(h.degree(v) <= 3);
        }
        let t = build_hex_torus(3, 3).unwrap();
        assert!((0..t.vertex_count()).all(|v| t.degree(v) == 3));
    }

    #[test]
    fn hex_cylinder_width_one_is_a_path() {
        for m in 1..6 {
            let g = build_hex_cyl(m, 1).unwrap();
            assert_eq!(g.vertex_count(), 2 * m + 2);
            assert_eq!(g.edge_count(), 2 * m + 1);
            assert_eq!((0..g.vertex_count()).filter(|&v| g.degree(v) == 1).count(), 2);
        }
    }

    #[test]
    fn parallelogram_shapes() {
        let p = build_parallelogram(1, 5).unwrap();
        assert_eq!(p.edge_count(), 4);
        let p = build_parallelogram(4, 1).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (4, 0));
        let p = build_parallelogram(5, 6).unwrap();
        assert_eq!(p.edge_count(), 5 * 5 + 4 * 5);
    }

    #[test]
    fn fix_boundary_removes_columns() {
        let p = build_parallelogram(4, 5).unwrap();
        let f = fix_boundary(&p, &[], &[]).unwrap().unwrap();
        assert_eq!(f.forced_count, 0);
        assert_eq!(f.graph.live_vertices().len(), 4 * 3);
        let f = fix_boundary(&p, &[4], &[4]).unwrap().unwrap();
        assert_eq!(f.forced_count, 2);
        // row 4 of the set is layout row 1
        assert_eq!(f.forced, vec![0, 4]);
        assert!(f.graph.is_removed(1) && f.graph.is_removed(5 + 1));
    }

    #[test]
    fn fix_boundary_rejects_bad_input() {
        let p = build_parallelogram(3, 1).unwrap();
        assert_eq!(fix_boundary(&p, &[1], &[2]).unwrap_err(), GridError::BoundaryTooNarrow(1));
        assert!(fix_boundary(&p, &[1], &[]).unwrap().is_none());
        assert!(matches!(fix_boundary(&p, &[4], &[]), Err(GridError::BoundaryRow { .. })));
        let c = build_square_cyl(3, 3).unwrap();
        assert!(matches!(fix_boundary(&c, &[], &[]), Err(GridError::NotParallelogram(_))));
    }

    #[test]
    fn induced_delete_counts() {
        let c = build_square_cyl(3, 3).unwrap();
        let d = induced_delete(&c, &[0]).unwrap();
        assert_eq!(d.live_vertices().len(), 8);
        assert!(d.edges().iter().all(|&(a, b)| a != 0 && b != 0));
        assert_eq!(induced_delete(&d, &[0]).unwrap_err(), GridError::NotLive(0));
        let all: Vec<usize> = (0..9).collect();
        assert!(induced_delete(&c, &all).unwrap().live_vertices().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let g = induced_delete(&build_hex_torus(2, 3).unwrap(), &[3]).unwrap();
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back = Graph::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    proptest! {
        #[test]
        fn adjacency_is_simple(fi in 0usize..7, m in 1usize..6, n in 1usize..6) {
            let g = Family::ALL[fi].build(m, n).unwrap();
            for v in 0..g.vertex_count() {
                let nb = g.neighbors(v);
                prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(!nb.contains(&v));
                for &u in nb {
                    prop_assert!(g.has_edge(u, v));
                }
            }
        }

        #[test]
        fn cylinder_is_wrapped_rectangle(m in 1usize..6, n in 3usize..8) {
            let rect = build_square_rect(m, n).unwrap();
            let mut want: BTreeSet<(usize, usize)> = rect.edges().into_iter().collect();
            for i in 1..=m {
                let (a, b) = (rect.id(i, 1), rect.id(i, n));
                want.insert((a.min(b), a.max(b)));
            }
            let got: BTreeSet<(usize, usize)> = build_square_cyl(m, n).unwrap().edges().into_iter().collect();
            prop_assert_eq!(got, want);
        }
    }
}
