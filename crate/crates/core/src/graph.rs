//! Graphs, labelings and vertex weights.
//!
//! A [`Graph`] is a simple undirected graph on `0..n` with one bitset of
//! neighbours per vertex. A [`Labeling`] is a bijection from the vertices onto
//! `1..=n`. The weight of a vertex is the sum of the labels on its open
//! neighbourhood; [`classify`] sorts a weight vector into the labeling classes
//! this crate cares about.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Self {
        Graph {
            adj: (0..order)
                .map(|_| FixedBitSet::with_capacity(order))
                .collect(),
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(order);
        for (i, j) in edges {
            if i >= order || j >= order {
                return Err(Error::InvalidEdge(i, j, "endpoint out of range"));
            }
            if i == j {
                return Err(Error::InvalidEdge(i, j, "loop"));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j);
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.order() && j < self.order() && self.adj[i].contains(j)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbor_iter(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regularity(&self) -> Option<usize> {
        let mut degrees = (0..self.order()).map(|v| self.degree(v));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_regular(&self) -> bool {
        self.regularity().is_some()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// |N(u) ∩ N(v)|, computed word-parallel.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.adj[u].intersection_count(&self.adj[v])
    }

    /// Edge list with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.order() {
            out.extend(self.adj[i].ones().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges().into_iter().collect()
    }

    /// Subgraph induced on `vertices`; vertex `vertices[k]` becomes `k`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut g = Graph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.adj[u].contains(v) {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// The same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.order() {
            return Err(Error::LengthMismatch {
                expected: self.order(),
                got: perm.len(),
            });
        }
        let mut seen = FixedBitSet::with_capacity(self.order());
        for &p in perm {
            if p >= self.order() || seen.put(p) {
                return Err(Error::param("vertex map is not a permutation"));
            }
        }
        Graph::from_edges(
            self.order(),
            self.edges().into_iter().map(|(i, j)| (perm[i], perm[j])),
        )
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.order(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    /// Graphviz rendering. Vertices are labelled `v<i>`, plus `f=<label>`
    /// on a second line when a labeling is supplied.
    pub fn to_dot(&self, labeling: Option<&Labeling>) -> Result<String> {
        if let Some(f) = labeling {
            f.check_order(self.order())?;
        }
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            match labeling {
                Some(f) => writeln!(out, "  {v} [label=\"v{v}\\nf={}\"];", f.label(v)),
                None => writeln!(out, "  {v} [label=\"v{v}\"];"),
            }
            .expect("writing to a String");
        }
        for (i, j) in self.edges() {
            writeln!(out, "  {i} -- {j};").expect("writing to a String");
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// Wire format for graphs: `{"n": 5, "edges": [[0, 1], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Graph> {
        if raw.n == 0 {
            return Err(Error::param("graph must have at least one vertex"));
        }
        let mut g = Graph::empty(raw.n);
        for [i, j] in raw.edges {
            if i >= j {
                return Err(Error::InvalidEdge(i, j, "expected i < j"));
            }
            if j >= raw.n {
                return Err(Error::InvalidEdge(i, j, "endpoint out of range"));
            }
            if g.adj[i].contains(j) {
                return Err(Error::InvalidEdge(i, j, "duplicate edge"));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        g.to_json()
    }
}

impl Graph {
    pub fn from_json_str(s: &str) -> Result<Graph> {
        let raw: GraphJson = serde_json::from_str(s)?;
        Graph::try_from(raw)
    }
}

/// A bijection from the vertices onto `1..=n`; `labels[v]` is `f(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LabelingJson", into = "LabelingJson")]
pub struct Labeling {
    labels: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct LabelingJson {
    labels: Vec<usize>,
}

impl TryFrom<LabelingJson> for Labeling {
    type Error = Error;

    fn try_from(raw: LabelingJson) -> Result<Labeling> {
        Labeling::new(raw.labels)
    }
}

impl From<Labeling> for LabelingJson {
    fn from(f: Labeling) -> LabelingJson {
        LabelingJson { labels: f.labels }
    }
}

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        let mut seen = FixedBitSet::with_capacity(n + 1);
        for (v, &l) in labels.iter().enumerate() {
            if l == 0 || l > n {
                return Err(Error::NotBijection {
                    order: n,
                    detail: format!("f(v{v}) = {l} is outside 1..={n}"),
                });
            }
            if seen.put(l) {
                return Err(Error::NotBijection {
                    order: n,
                    detail: format!("label {l} is used twice"),
                });
            }
        }
        Ok(Labeling { labels })
    }

    /// The labeling `f(v) = v + 1`.
    pub fn identity(order: usize) -> Self {
        Labeling {
            labels: (1..=order).collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Labeling> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.labels
    }

    /// `inverse()[l - 1]` is the vertex carrying label `l`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (v, &l) in self.labels.iter().enumerate() {
            inv[l - 1] = v;
        }
        inv
    }

    /// The complementary labeling `v ↦ n + 1 - f(v)`.
    pub fn complement(&self) -> Labeling {
        let n = self.len();
        Labeling {
            labels: self.labels.iter().map(|&l| n + 1 - l).collect(),
        }
    }

    pub(crate) fn check_order(&self, order: usize) -> Result<()> {
        if self.len() == order {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: order,
                got: self.len(),
            })
        }
    }
}

/// Sum of the labels on the open neighbourhood of `v`.
pub fn vertex_weight(g: &Graph, f: &Labeling, v: usize) -> Result<u64> {
    f.check_order(g.order())?;
    g.check_vertex(v)?;
    Ok(g.neighbor_iter(v).map(|u| f.label(u) as u64).sum())
}

pub fn weights(g: &Graph, f: &Labeling) -> Result<Vec<u64>> {
    f.check_order(g.order())?;
    Ok((0..g.order())
        .map(|v| g.neighbor_iter(v).map(|u| f.label(u) as u64).sum())
        .collect())
}

/// Which labeling class a weight vector falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightKind {
    /// Every weight equals `c`.
    Magic {
        c: u64,
    },
    /// Weights are exactly `{a, a + d, ..., a + (n - 1)d}` with `d >= 1`.
    ArithmeticProgression {
        a: u64,
        d: u64,
    },
    /// Pairwise distinct, but not a progression.
    AllDistinct,
    Irregular,
}

impl WeightKind {
    pub fn is_magic(&self) -> bool {
        matches!(self, WeightKind::Magic { .. })
    }

    /// Progression view of the kind; a magic labeling is a progression with
    /// `d = 0`.
    pub fn as_progression(&self) -> Option<(u64, u64)> {
        match *self {
            WeightKind::Magic { c } => Some((c, 0)),
            WeightKind::ArithmeticProgression { a, d } => Some((a, d)),
            _ => None,
        }
    }

    pub fn is_distance_antimagic(&self) -> bool {
        matches!(
            self,
            WeightKind::ArithmeticProgression { .. } | WeightKind::AllDistinct
        )
    }
}

impl std::fmt::Display for WeightKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightKind::Magic { c } => write!(f, "Magic c={c}"),
            WeightKind::ArithmeticProgression { a, d } => write!(f, "Progression a={a} d={d}"),
            WeightKind::AllDistinct => f.write_str("AllDistinct"),
            WeightKind::Irregular => f.write_str("Irregular"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    pub weights: Vec<u64>,
    #[serde(flatten)]
    pub kind: WeightKind,
}

/// Classifies a weight vector. The common difference of a candidate
/// progression is forced by the extremes, `d = (max - min) / (n - 1)`.
pub fn classify_weights(weights: &[u64]) -> WeightKind {
    let n = weights.len();
    let Some(&min) = weights.iter().min() else {
        return WeightKind::Magic { c: 0 };
    };
    let max = *weights.iter().max().expect("non-empty");
    if min == max {
        return WeightKind::Magic { c: min };
    }
    let mut sorted = weights.to_vec();
    sorted.sort_unstable();
    let span = max - min;
    let steps = (n - 1) as u64;
    if span % steps == 0 {
        let d = span / steps;
        if sorted
            .iter()
            .enumerate()
            .all(|(k, &w)| w == min + k as u64 * d)
        {
            return WeightKind::ArithmeticProgression { a: min, d };
        }
    }
    if sorted.windows(2).all(|w| w[0] != w[1]) {
        WeightKind::AllDistinct
    } else {
        WeightKind::Irregular
    }
}

pub fn classify(g: &Graph, f: &Labeling) -> Result<WeightProfile> {
    let weights = weights(g, f)?;
    let kind = classify_weights(&weights);
    Ok(WeightProfile { weights, kind })
}

/// Vertex pairs with identical open neighbourhoods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPairing {
    pub pairs: Vec<(usize, usize)>,
}

/// All unordered pairs `u < v` with `N(u) = N(v)`.
pub fn find_twin_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.neighbors(u) == g.neighbors(v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Returns the twin pairing when `f` is a balanced distance magic labeling:
/// `g` regular, `f` magic, and every vertex pairs with the vertex labelled
/// `n + 1 - f(v)` through an identical open neighbourhood.
pub fn is_balanced_distance_magic(g: &Graph, f: &Labeling) -> Result<Option<TwinPairing>> {
    let profile = classify(g, f)?;
    let n = g.order();
    if !g.is_regular() || !profile.kind.is_magic() || n % 2 == 1 {
        return Ok(None);
    }
    let inv = f.inverse();
    let mut pairs = Vec::with_capacity(n / 2);
    for u in 0..n {
        let partner = inv[n - f.label(u)];
        if partner == u || g.neighbors(u) != g.neighbors(partner) {
            return Ok(None);
        }
        if u < partner {
            pairs.push((u, partner));
        }
    }
    Ok(Some(TwinPairing { pairs }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn lab(v: &[usize]) -> Labeling {
        Labeling::new(v.to_vec()).unwrap()
    }

    #[test]
    fn c4_weight_of_vertex_zero() {
        assert_eq!(vertex_weight(&cycle(4), &lab(&[1, 2, 3, 4]), 0).unwrap(), 6);
    }

    #[test]
    fn isolated_vertex_has_weight_zero() {
        let g = Graph::empty(1);
        assert_eq!(vertex_weight(&g, &lab(&[1]), 0).unwrap(), 0);
        assert_eq!(
            classify(&g, &lab(&[1])).unwrap().kind,
            WeightKind::Magic { c: 0 }
        );
    }

    #[test]
    fn weight_errors() {
        let g = cycle(4);
        assert!(matches!(
            vertex_weight(&g, &lab(&[1, 2, 3, 4]), 4),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            vertex_weight(&g, &lab(&[1, 2, 3]), 0),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn labeling_must_be_bijective() {
        assert!(Labeling::new(vec![1, 1, 3]).is_err());
        assert!(Labeling::new(vec![0, 1, 2]).is_err());
        assert!(Labeling::new(vec![1, 2, 4]).is_err());
        assert!(Labeling::new(vec![3, 1, 2]).is_ok());
    }

    #[test]
    fn classify_kinds() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            classify(&path, &lab(&[1, 3, 2])).unwrap().kind,
            WeightKind::Magic { c: 3 }
        );
        assert_eq!(
            classify(&cycle(5), &lab(&[5, 4, 3, 2, 1])).unwrap().kind,
            WeightKind::ArithmeticProgression { a: 4, d: 1 }
        );
        let p = classify(&cycle(4), &lab(&[1, 2, 4, 3])).unwrap();
        assert_eq!(p.weights, vec![5, 5, 5, 5]);
        assert_eq!(classify_weights(&[6, 5, 6, 5]), WeightKind::Irregular);
        assert_eq!(classify_weights(&[1, 2, 7]), WeightKind::AllDistinct);
        assert_eq!(
            classify_weights(&[1, 4, 7]),
            WeightKind::ArithmeticProgression { a: 1, d: 3 }
        );
        // equal extremes spacing but a repeated interior value
        assert_eq!(classify_weights(&[1, 2, 2, 4]), WeightKind::Irregular);
    }

    #[test]
    fn two_isolated_vertices_never_all_distinct() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let k = classify(&g, &lab(&[1, 2, 3, 4])).unwrap().kind;
        assert!(!k.is_distance_antimagic());
    }

    #[test]
    fn twins_and_balance() {
        // K4 minus the matching {0-2, 1-3}
        let g = Graph::from_edges(4, [(0, 1), (0, 3), (1, 2), (2, 3)]).unwrap();
        assert_eq!(find_twin_pairs(&g), vec![(0, 2), (1, 3)]);
        let pairing = is_balanced_distance_magic(&g, &lab(&[1, 2, 4, 3])).unwrap();
        assert_eq!(pairing.unwrap().pairs, vec![(0, 2), (1, 3)]);
        // magic but twin label sums are not n + 1
        assert!(is_balanced_distance_magic(&g, &lab(&[1, 2, 3, 4]))
            .unwrap()
            .is_none());
        assert!(find_twin_pairs(&cycle(5)).is_empty());
    }

    #[test]
    fn triangle_is_never_balanced() {
        let k3 = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        for f in [[1, 2, 3], [2, 3, 1], [3, 1, 2]] {
            assert!(is_balanced_distance_magic(&k3, &lab(&f)).unwrap().is_none());
        }
    }

    #[test]
    fn degree_helpers() {
        assert_eq!(Graph::empty(1).regularity(), Some(0));
        assert_eq!(cycle(7).regularity(), Some(2));
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree_sequence(), vec![1, 1, 1, 3]);
        assert_eq!(star.max_degree(), 3);
        assert_eq!(star.regularity(), None);
    }

    #[test]
    fn json_validation() {
        let g = Graph::from_json_str(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(g.size(), 2);
        for bad in [
            r#"{"n":3,"edges":[[1,0]]}"#,
            r#"{"n":3,"edges":[[0,3]]}"#,
            r#"{"n":3,"edges":[[0,1],[0,1]]}"#,
            r#"{"n":0,"edges":[]}"#,
        ] {
            assert!(Graph::from_json_str(bad).is_err(), "{bad}");
        }
        let f = Labeling::from_json_str(r#"{"labels":[2,1,3]}"#).unwrap();
        assert_eq!(f.label(0), 2);
        assert!(Labeling::from_json_str(r#"{"labels":[2,2,3]}"#).is_err());
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"labels":[2,1,3]}"#);
    }

    #[test]
    fn dot_output() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let dot = g.to_dot(Some(&lab(&[2, 1]))).unwrap();
        assert!(dot.contains("0 [label=\"v0\\nf=2\"];"));
        assert!(dot.contains("0 -- 1;"));
        assert!(g.to_dot(None).unwrap().contains("[label=\"v1\"]"));
    }
}
