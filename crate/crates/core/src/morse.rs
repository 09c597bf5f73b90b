//! Matching trees, the matching induced by an independent set O, acyclicity
//! checks and critical-cell bookkeeping.

use crate::complex::{bits, independence_complex, x_set, ComplexError, FaceMask, LocalGraph, SimplicialComplex};
use crate::grid::{build_hex_cyl, build_square_cyl, Graph, GridError};
use crate::homology::homology_profile;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorseError {
    #[error("pivot {0} is not an occupiable vertex")]
    NotLive(usize),
    #[error("pivot {pivot} repeated on the path {path:?}")]
    RepeatedPivot { path: Vec<usize>, pivot: usize },
    #[error("match pivots {a} and {b} adjacent on the path {path:?}")]
    AdjacentMatchPivots { path: Vec<usize>, a: usize, b: usize },
    #[error("free-position property fails at pivot {pivot} for face {face:?}")]
    FreePosition { pivot: usize, face: Vec<usize> },
    #[error("face {0:?} appears in two pairs")]
    DuplicateFace(Vec<usize>),
    #[error("pair {0:?} / {1:?} is not a cover relation of the complex")]
    NotCover(Vec<usize>, Vec<usize>),
    #[error("matching has a directed cycle through {0:?}")]
    Cycle(Vec<Vec<usize>>),
    #[error("Morse inequality fails in dimension {dim}: betti {betti} > critical {critical}")]
    Inequality { dim: isize, betti: u64, critical: u64 },
    #[error("critical cells give Euler characteristic {critical}, complex has {complex}")]
    Euler { critical: i128, complex: i128 },
    #[error("set {0:?} is not independent")]
    NotIndependent(Vec<usize>),
    #[error("malformed tree: {0}")]
    Malformed(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Rooted tree of pivots. A split separates faces without the pivot (`absent`)
/// from faces containing it (`present`); a match pairs faces containing the
/// pivot with the face obtained by removing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingTree {
    Leaf,
    Split { pivot: usize, absent: Box<MatchingTree>, present: Box<MatchingTree> },
    Match { pivot: usize, child: Box<MatchingTree> },
}

/// Serialized node: `kind` is `leaf`, `split` or `match`; split children are
/// `[absent, present]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pivot: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<TreeJson>,
}

impl MatchingTree {
    pub fn split(pivot: usize, absent: MatchingTree, present: MatchingTree) -> Self {
        MatchingTree::Split { pivot, absent: Box::new(absent), present: Box::new(present) }
    }

    pub fn matched(pivot: usize, child: MatchingTree) -> Self {
        MatchingTree::Match { pivot, child: Box::new(child) }
    }

    pub fn node_count(&self) -> usize {
        match self {
            MatchingTree::Leaf => 1,
            MatchingTree::Split { absent, present, .. } => 1 + absent.node_count() + present.node_count(),
            MatchingTree::Match { child, .. } => 1 + child.node_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            MatchingTree::Leaf => 1,
            MatchingTree::Split { absent, present, .. } => absent.leaf_count() + present.leaf_count(),
            MatchingTree::Match { child, .. } => child.leaf_count(),
        }
    }

    pub fn to_json(&self) -> TreeJson {
        match self {
            MatchingTree::Leaf => TreeJson { kind: "leaf".into(), pivot: None, children: vec![] },
            MatchingTree::Split { pivot, absent, present } => {
                TreeJson { kind: "split".into(), pivot: Some(*pivot), children: vec![absent.to_json(), present.to_json()] }
            }
            MatchingTree::Match { pivot, child } => {
                TreeJson { kind: "match".into(), pivot: Some(*pivot), children: vec![child.to_json()] }
            }
        }
    }

    pub fn from_json(j: &TreeJson) -> Result<Self, MorseError> {
        let bad = |s: &str| MorseError::Malformed(s.to_string());
        match (j.kind.as_str(), j.pivot, j.children.as_slice()) {
            ("leaf", None, []) => Ok(MatchingTree::Leaf),
            ("split", Some(p), [a, b]) => Ok(MatchingTree::split(p, Self::from_json(a)?, Self::from_json(b)?)),
            ("match", Some(p), [c]) => Ok(MatchingTree::matched(p, Self::from_json(c)?)),
            _ => Err(bad(&format!("node kind {} with {} children", j.kind, j.children.len()))),
        }
    }
}

/// Check that pivots are distinct along every path and that the match
/// pivots on every path are independent.
pub fn validate_tree(g: &Graph, t: &MatchingTree) -> Result<(), MorseError> {
    fn walk(g: &Graph, t: &MatchingTree, path: &mut Vec<usize>, matched: &mut Vec<usize>) -> Result<(), MorseError> {
        let (pivot, is_match) = match t {
            MatchingTree::Leaf => return Ok(()),
            MatchingTree::Split { pivot, .. } => (*pivot, false),
            MatchingTree::Match { pivot, .. } => (*pivot, true),
        };
        if pivot >= g.vertex_count() || g.is_removed(pivot) || g.is_blocked(pivot) {
            return Err(MorseError::NotLive(pivot));
        }
        path.push(pivot);
        if path[..path.len() - 1].contains(&pivot) {
            return Err(MorseError::RepeatedPivot { path: path.clone(), pivot });
        }
        if is_match {
            if let Some(&a) = matched.iter().find(|&&a| g.has_edge(a, pivot)) {
                return Err(MorseError::AdjacentMatchPivots { path: path.clone(), a, b: pivot });
            }
            matched.push(pivot);
        }
        match t {
            MatchingTree::Split { absent, present, .. } => {
                walk(g, absent, path, matched)?;
                walk(g, present, path, matched)?;
            }
            MatchingTree::Match { child, .. } => walk(g, child, path, matched)?,
            MatchingTree::Leaf => {}
        }
        if is_match {
            matched.pop();
        }
        path.pop();
        Ok(())
    }
    walk(g, t, &mut Vec::new(), &mut Vec::new())
}

/// Pairs `(lower, upper)` of faces with `upper = lower + v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceMatching {
    pub pairs: Vec<(FaceMask, FaceMask)>,
}

impl FaceMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct TreeEvaluation {
    pub complex: SimplicialComplex,
    pub matching: FaceMatching,
    pub critical: Vec<FaceMask>,
}

impl TreeEvaluation {
    /// Number of critical cells per dimension.
    pub fn critical_by_dim(&self) -> BTreeMap<isize, u64> {
        count_by_dim(&self.critical)
    }
}

pub fn count_by_dim(faces: &[FaceMask]) -> BTreeMap<isize, u64> {
    let mut out = BTreeMap::new();
    for f in faces {
        *out.entry(f.count_ones() as isize - 1).or_insert(0) += 1;
    }
    out
}

/// Materialize contents top-down and collect the matching and the leaf
/// contents. The free-position property is checked at every match node.
pub fn evaluate_tree(g: &Graph, t: &MatchingTree, budget: u64) -> Result<TreeEvaluation, MorseError> {
    validate_tree(g, t)?;
    let lg = LocalGraph::new(g)?;
    let complex = independence_complex(g, budget)?;
    let mut matching = FaceMatching::default();
    let mut critical = Vec::new();
    let root: Vec<FaceMask> = complex.iter().collect();
    let mut stack: Vec<(&MatchingTree, Vec<FaceMask>)> = vec![(t, root)];
    while let Some((node, mut content)) = stack.pop() {
        content.sort_unstable();
        match node {
            MatchingTree::Leaf => critical.extend(content),
            MatchingTree::Split { pivot, absent, present } => {
                let b = lg.bit_of(*pivot).ok_or(MorseError::NotLive(*pivot))?;
                let (with, without): (Vec<FaceMask>, Vec<FaceMask>) = content.into_iter().partition(|f| f >> b & 1 == 1);
                stack.push((absent, without));
                stack.push((present, with));
            }
            MatchingTree::Match { pivot, child } => {
                let b = lg.bit_of(*pivot).ok_or(MorseError::NotLive(*pivot))?;
                let mut rest = Vec::new();
                for &f in &content {
                    let partner = if f >> b & 1 == 1 {
                        Some(f & !(1 << b))
                    } else if lg.is_free(f, b) {
                        Some(f | 1 << b)
                    } else {
                        None
                    };
                    match partner {
                        Some(q) if content.binary_search(&q).is_err() => {
                            return Err(MorseError::FreePosition { pivot: *pivot, face: lg.vertices(f) });
                        }
                        Some(q) if f >> b & 1 == 1 => matching.pairs.push((q, f)),
                        Some(_) => {}
                        None => rest.push(f),
                    }
                }
                stack.push((child, rest));
            }
        }
    }
    critical.sort_unstable();
    debug_assert_eq!(2 * matching.len() + critical.len(), complex.face_count());
    Ok(TreeEvaluation { complex, matching, critical })
}

/// The matching induced by an independent set O: a face is paired with its
/// symmetric difference with the smallest o in O whose neighbourhood it
/// avoids. Returns the matching and the unmatched set X.
pub fn mo_matching(g: &Graph, o: &[usize], budget: u64) -> Result<(SimplicialComplex, FaceMatching, Vec<FaceMask>), MorseError> {
    let lg = LocalGraph::new(g)?;
    let om = match lg.mask_of(o) {
        Some(m) if lg.is_independent(m) && m.count_ones() as usize == o.len() => m,
        _ => return Err(MorseError::NotIndependent(o.to_vec())),
    };
    let complex = independence_complex(g, budget)?;
    let mut matching = FaceMatching::default();
    let mut unmatched = Vec::new();
    for f in complex.iter() {
        match bits(om).find(|&u| lg.nbr[u] & f == 0) {
            Some(u) if f >> u & 1 == 1 => matching.pairs.push((f & !(1 << u), f)),
            Some(_) => {}
            None => unmatched.push(f),
        }
    }
    unmatched.sort_unstable();
    let mut x = x_set(&lg, &complex, om);
    x.sort_unstable();
    debug_assert_eq!(x, unmatched);
    Ok((complex, matching, unmatched))
}

fn up_mates(c: &SimplicialComplex, m: &FaceMatching) -> Result<HashMap<FaceMask, FaceMask>, MorseError> {
    let mut used: HashMap<FaceMask, ()> = HashMap::with_capacity(2 * m.len());
    let mut up = HashMap::with_capacity(m.len());
    for &(lo, hi) in &m.pairs {
        let cover = lo & !hi == 0 && (hi & !lo).count_ones() == 1;
        if !cover || !c.contains(lo) || !c.contains(hi) {
            return Err(MorseError::NotCover(c.vertices(lo), c.vertices(hi)));
        }
        for f in [lo, hi] {
            if used.insert(f, ()).is_some() {
                return Err(MorseError::DuplicateFace(c.vertices(f)));
            }
        }
        up.insert(lo, hi);
    }
    Ok(up)
}

/// Search for a directed cycle in the Hasse diagram with matched edges
/// reversed. Cycles stay within one pair of adjacent levels, so each level is
/// searched on its own: from a face matched upward, step to its mate and down
/// to any other facet that is itself matched upward.
pub fn check_acyclic(c: &SimplicialComplex, m: &FaceMatching) -> Result<(), MorseError> {
    let up = up_mates(c, m)?;
    let mut state: HashMap<FaceMask, u8> = HashMap::with_capacity(up.len());
    for &start in up.keys() {
        if state.contains_key(&start) {
            continue;
        }
        // Iterative DFS; the stack holds a face and the facets of its mate.
        let mut stack: Vec<(FaceMask, Vec<FaceMask>)> = Vec::new();
        let succ = |f: FaceMask| -> Vec<FaceMask> {
            let hi = up[&f];
            bits(hi).map(|b| hi & !(1 << b)).filter(|&s| s != f && up.contains_key(&s)).collect()
        };
        state.insert(start, 1);
        stack.push((start, succ(start)));
        while let Some((f, next)) = stack.last_mut() {
            let f = *f;
            match next.pop() {
                Some(s) => match state.get(&s) {
                    None => {
                        state.insert(s, 1);
                        let nx = succ(s);
                        stack.push((s, nx));
                    }
                    Some(1) => {
                        let pos = stack.iter().position(|e| e.0 == s).unwrap();
                        let mut cyc = Vec::new();
                        for (g, _) in &stack[pos..] {
                            cyc.push(c.vertices(*g));
                            cyc.push(c.vertices(up[g]));
                        }
                        return Err(MorseError::Cycle(cyc));
                    }
                    _ => {}
                },
                None => {
                    state.insert(f, 2);
                    stack.pop();
                }
            }
        }
    }
    Ok(())
}

/// Cycle search on the whole modified Hasse diagram. Quadratic in the face
/// count; meant for small complexes.
pub fn check_acyclic_global(c: &SimplicialComplex, m: &FaceMatching) -> Result<(), MorseError> {
    let up = up_mates(c, m)?;
    let down: HashMap<FaceMask, FaceMask> = up.iter().map(|(&a, &b)| (b, a)).collect();
    let faces: Vec<FaceMask> = c.iter().collect();
    let index: HashMap<FaceMask, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let succ = |f: FaceMask| -> Vec<usize> {
        let mut out: Vec<usize> = bits(f)
            .map(|b| f & !(1 << b))
            .filter(|s| down.get(&f) != Some(s))
            .map(|s| index[&s])
            .collect();
        if let Some(&hi) = up.get(&f) {
            out.push(index[&hi]);
        }
        out
    };
    let mut color = vec![0u8; faces.len()];
    for s in 0..faces.len() {
        if color[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, succ(faces[s]))];
        color[s] = 1;
        while let Some((v, next)) = stack.last_mut() {
            let v = *v;
            match next.pop() {
                Some(w) if color[w] == 0 => {
                    color[w] = 1;
                    stack.push((w, succ(faces[w])));
                }
                Some(w) if color[w] == 1 => {
                    let pos = stack.iter().position(|e| e.0 == w).unwrap();
                    return Err(MorseError::Cycle(stack[pos..].iter().map(|e| c.vertices(faces[e.0])).collect()));
                }
                Some(_) => {}
                None => {
                    color[v] = 2;
                    stack.pop();
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseReport {
    /// Critical cells per dimension, the empty face in dimension -1.
    pub critical: BTreeMap<isize, u64>,
    pub betti: BTreeMap<isize, u64>,
    pub euler: i128,
    /// `Some((p, u_p))` when every critical cell has dimension `p`: the
    /// complex is then a wedge of `u_p` spheres of dimension `p`.
    pub wedge: Option<(isize, u64)>,
}

/// Compare critical-cell counts with homology: weak Morse inequalities and
/// the Euler identity, both in reduced form.
pub fn morse_consistency(c: &SimplicialComplex, m: &FaceMatching) -> Result<MorseReport, MorseError> {
    let up = up_mates(c, m)?;
    let matched: std::collections::HashSet<FaceMask> = up.iter().flat_map(|(&a, &b)| [a, b]).collect();
    let crit: Vec<FaceMask> = c.iter().filter(|f| !matched.contains(f)).collect();
    let critical = count_by_dim(&crit);
    let h = homology_profile(c);
    let betti: BTreeMap<isize, u64> = h.nonzero().into_iter().collect();
    for (&dim, &b) in &betti {
        let u = critical.get(&dim).copied().unwrap_or(0);
        if b > u {
            return Err(MorseError::Inequality { dim, betti: b, critical: u });
        }
    }
    let euler: i128 = critical.iter().map(|(&d, &u)| if d.rem_euclid(2) == 0 { u as i128 } else { -(u as i128) }).sum();
    if euler != c.reduced_euler() {
        return Err(MorseError::Euler { critical: euler, complex: c.reduced_euler() });
    }
    let wedge = (critical.len() == 1).then(|| critical.iter().next().map(|(&d, &u)| (d, u)).unwrap());
    Ok(MorseReport { critical, betti, euler, wedge })
}

/// Families with generated matching trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeFamily {
    /// Square cylinder of circumference 2.
    Cyl2,
    Cyl3,
    Cyl4,
    Cyl5,
    /// Hexagonal cylinder of circumference 2.
    Hex2,
}

impl TreeFamily {
    pub const ALL: [TreeFamily; 5] = [TreeFamily::Cyl2, TreeFamily::Cyl3, TreeFamily::Cyl4, TreeFamily::Cyl5, TreeFamily::Hex2];

    pub fn graph(self, m: usize) -> Result<Graph, GridError> {
        match self {
            TreeFamily::Cyl2 => build_square_cyl(m, 2),
            TreeFamily::Cyl3 => build_square_cyl(m, 3),
            TreeFamily::Cyl4 => build_square_cyl(m, 4),
            TreeFamily::Cyl5 => build_square_cyl(m, 5),
            TreeFamily::Hex2 => build_hex_cyl(m, 2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TreeFamily::Cyl2 => "cyl2",
            TreeFamily::Cyl3 => "cyl3",
            TreeFamily::Cyl4 => "cyl4",
            TreeFamily::Cyl5 => "cyl5",
            TreeFamily::Hex2 => "hex2",
        }
    }

    /// `(number of critical cells, their dimension)` for the generated tree.
    pub fn predicted_critical(self, m: usize) -> (u64, isize) {
        let m_i = m as isize;
        match self {
            TreeFamily::Cyl2 => (1, (m_i + 1) / 2 - 1),
            TreeFamily::Cyl3 => match m % 3 {
                0 => (1, 2 * m_i / 3 - 1),
                1 => (2, 2 * (m_i - 1) / 3),
                _ => (1, 2 * (m_i - 2) / 3 + 1),
            },
            TreeFamily::Cyl4 => (2 * (m as u64 / 2) + 1, m_i - 1),
            TreeFamily::Cyl5 => (1, if m % 2 == 0 { m_i - 1 } else { m_i }),
            TreeFamily::Hex2 => {
                let (mut a, mut b) = (0u64, 1u64);
                for _ in 0..m + 2 {
                    (a, b) = (b, a + b);
                }
                (a, m_i)
            }
        }
    }
}

impl std::str::FromStr for TreeFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TreeFamily::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown tree family `{s}`"))
    }
}

/// A generated tree with the critical cells its construction predicts.
#[derive(Clone, Debug)]
pub struct GeneratedTree {
    pub graph: Graph,
    pub tree: MatchingTree,
    /// One entry per leaf reached with nothing left to decide.
    pub predicted: Vec<Vec<usize>>,
}

/// Unroll the recursive construction. The residual problem is a set of forced
/// vertices and a set of undecided ones; an undecided vertex with no
/// undecided neighbour matches everything, one with a single undecided
/// neighbour `u` matches all faces except those containing `u`, and otherwise
/// the family's chooser picks a split vertex.
pub fn tree_generators(family: TreeFamily, m: usize) -> Result<GeneratedTree, MorseError> {
    let g = family.graph(m)?;
    let chooser: Box<dyn Fn(&Graph, &[usize]) -> usize> = match family {
        TreeFamily::Cyl2 | TreeFamily::Hex2 => Box::new(|_, l: &[usize]| l[0]),
        TreeFamily::Cyl3 => Box::new(choose_three),
        TreeFamily::Cyl4 | TreeFamily::Cyl5 => Box::new(choose_top_max_degree),
    };
    let mut predicted = Vec::new();
    let live = g.occupiable();
    let tree = residual_tree(&g, &chooser, Vec::new(), live, &mut predicted);
    Ok(GeneratedTree { graph: g, tree, predicted })
}

fn live_degree(g: &Graph, v: usize, l: &[usize]) -> usize {
    g.neighbors(v).iter().filter(|u| l.binary_search(u).is_ok()).count()
}

fn residual_tree(
    g: &Graph,
    chooser: &dyn Fn(&Graph, &[usize]) -> usize,
    forced: Vec<usize>,
    live: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> MatchingTree {
    if live.is_empty() {
        let mut f = forced;
        f.sort_unstable();
        out.push(f);
        return MatchingTree::Leaf;
    }
    if let Some(&v) = live.iter().find(|&&v| live_degree(g, v, &live) == 0) {
        return MatchingTree::matched(v, MatchingTree::Leaf);
    }
    if let Some(&p) = live.iter().find(|&&v| live_degree(g, v, &live) == 1) {
        let u = *g.neighbors(p).iter().find(|u| live.binary_search(u).is_ok()).unwrap();
        let rest: Vec<usize> = live.iter().copied().filter(|&w| w != p && w != u && !g.has_edge(u, w)).collect();
        let mut f = forced;
        f.push(u);
        return MatchingTree::matched(p, residual_tree(g, chooser, f, rest, out));
    }
    let p = chooser(g, &live);
    let absent: Vec<usize> = live.iter().copied().filter(|&w| w != p).collect();
    let present: Vec<usize> = live.iter().copied().filter(|&w| w != p && !g.has_edge(p, w)).collect();
    let left = residual_tree(g, chooser, forced.clone(), absent, out);
    let mut f = forced;
    f.push(p);
    let right = residual_tree(g, chooser, f, present, out);
    MatchingTree::split(p, left, right)
}

/// Highest live row; the vertex of largest live degree there, smallest id on
/// ties.
fn choose_top_max_degree(g: &Graph, l: &[usize]) -> usize {
    let top = l.iter().map(|&v| g.coords(v).0).min().unwrap();
    let mut best = None;
    for &v in l.iter().filter(|&&v| g.coords(v).0 == top) {
        let d = live_degree(g, v, l);
        if best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, v));
        }
    }
    best.unwrap().1
}

/// Circumference three: split on the top row while it is full; when it has
/// lost one vertex, split on the vertex below and one column over.
fn choose_three(g: &Graph, l: &[usize]) -> usize {
    let top = l.iter().map(|&v| g.coords(v).0).min().unwrap();
    let row: Vec<usize> = l.iter().copied().filter(|&v| g.coords(v).0 == top).collect();
    match row.len() {
        3 => row[0],
        2 => {
            let missing = (1..=3).find(|&c| row.iter().all(|&v| g.coords(v).1 != c)).unwrap();
            if top < g.rows() && l.binary_search(&g.id(top + 1, missing % 3 + 1)).is_ok() {
                g.id(top + 1, missing % 3 + 1)
            } else {
                l[0]
            }
        }
        _ => l[0],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{alternating_sum, DEFAULT_FACE_BUDGET};
    use crate::grid::*;

    fn example_tree(g: &Graph) -> MatchingTree {
        let v = |r, c| g.id(r, c);
        MatchingTree::split(
            v(1, 1),
            MatchingTree::matched(v(1, 2), MatchingTree::matched(v(3, 1), MatchingTree::Leaf)),
            MatchingTree::matched(v(2, 2), MatchingTree::Leaf),
        )
    }

    #[test]
    fn small_rectangle_tree() {
        let g = build_square_rect(3, 2).unwrap();
        let t = example_tree(&g);
        validate_tree(&g, &t).unwrap();
        let ev = evaluate_tree(&g, &t, 1000).unwrap();
        assert_eq!(ev.critical.len(), 1);
        assert_eq!(ev.complex.vertices(ev.critical[0]), vec![g.id(1, 1), g.id(3, 2)]);
        check_acyclic(&ev.complex, &ev.matching).unwrap();
        check_acyclic_global(&ev.complex, &ev.matching).unwrap();
        let r = morse_consistency(&ev.complex, &ev.matching).unwrap();
        assert_eq!(r.wedge, Some((1, 1)));
    }

    #[test]
    fn invalid_trees() {
        let g = build_square_rect(3, 2).unwrap();
        let v = |r, c| g.id(r, c);
        let rep = MatchingTree::split(v(1, 1), MatchingTree::Leaf, MatchingTree::matched(v(1, 1), MatchingTree::Leaf));
        assert!(matches!(validate_tree(&g, &rep), Err(MorseError::RepeatedPivot { .. })));
        let adj = MatchingTree::matched(v(1, 1), MatchingTree::matched(v(1, 2), MatchingTree::Leaf));
        assert!(matches!(validate_tree(&g, &adj), Err(MorseError::AdjacentMatchPivots { .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = build_square_rect(3, 2).unwrap();
        let t = example_tree(&g);
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back: TreeJson = serde_json::from_str(&s).unwrap();
        assert_eq!(MatchingTree::from_json(&back).unwrap(), t);
    }

    #[test]
    fn triangle_cycle_detected() {
        let c = SimplicialComplex::generated_by(vec![0, 1, 2], [0b111]);
        let m = FaceMatching { pairs: vec![(0b001, 0b011), (0b010, 0b110), (0b100, 0b101)] };
        assert!(matches!(check_acyclic(&c, &m), Err(MorseError::Cycle(_))));
        assert!(matches!(check_acyclic_global(&c, &m), Err(MorseError::Cycle(_))));
        let dup = FaceMatching { pairs: vec![(0b001, 0b011), (0b001, 0b101)] };
        assert!(matches!(check_acyclic(&c, &dup), Err(MorseError::DuplicateFace(_))));
    }

    #[test]
    fn odd_set_matching() {
        let g = build_square_cyl(3, 4).unwrap();
        let o: Vec<usize> = (0..12).filter(|&v| {
            let (r, c) = g.coords(v);
            (r + c) % 2 == 1
        }).collect();
        let (c, m, x) = mo_matching(&g, &o, DEFAULT_FACE_BUDGET).unwrap();
        check_acyclic(&c, &m).unwrap();
        check_acyclic_global(&c, &m).unwrap();
        assert_eq!(2 * m.len() + x.len(), c.face_count());
        let z: i128 = x.iter().map(|f| if f.count_ones() % 2 == 0 { 1 } else { -1 }).sum();
        assert_eq!(z, -3);
        let (c, m, x) = mo_matching(&g, &[], DEFAULT_FACE_BUDGET).unwrap();
        assert!(m.is_empty());
        assert_eq!(x.len(), c.face_count());
    }

    #[test]
    fn generated_trees_small() {
        for fam in TreeFamily::ALL {
            for m in 1..=5 {
                let gt = tree_generators(fam, m).unwrap();
                validate_tree(&gt.graph, &gt.tree).unwrap();
                let ev = evaluate_tree(&gt.graph, &gt.tree, DEFAULT_FACE_BUDGET).unwrap();
                check_acyclic(&ev.complex, &ev.matching).unwrap();
                let mut pred: Vec<Vec<usize>> = gt.predicted.clone();
                pred.sort();
                let mut got: Vec<Vec<usize>> = ev.critical.iter().map(|&f| ev.complex.vertices(f)).collect();
                got.sort();
                assert_eq!(got, pred, "{} m={m}", fam.name());
                let (count, dim) = fam.predicted_critical(m);
                let by_dim = ev.critical_by_dim();
                assert_eq!(by_dim, BTreeMap::from([(dim, count)]), "{} m={m}", fam.name());
                let r = morse_consistency(&ev.complex, &ev.matching).unwrap();
                assert_eq!(-r.euler, alternating_sum(&gt.graph).unwrap());
            }
        }
    }

    #[test]
    fn generated_trees_global_acyclicity() {
        for fam in TreeFamily::ALL {
            for m in 1..=3 {
                let gt = tree_generators(fam, m).unwrap();
                let ev = evaluate_tree(&gt.graph, &gt.tree, DEFAULT_FACE_BUDGET).unwrap();
                check_acyclic_global(&ev.complex, &ev.matching).unwrap();
            }
        }
    }
}
