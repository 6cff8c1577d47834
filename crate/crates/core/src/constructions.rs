//! Graph surgery that carries a labeling along: the replacement ("dagger")
//! construction, the `+K_1` extension of antimagic graphs, and export of a
//! regular magic labeling as an equalized incomplete tournament.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::empty_graph;
use crate::graph::{classify, find_twin_pairs, Graph, Labeling, WeightKind};
use crate::products::join;
use crate::recipes::{beta, label_h_even, label_h_odd, Recipe};

/// Removes every edge with both ends in `s` and appends `k` new, mutually
/// non-adjacent vertices joined to all of `s`.
pub fn replace_subgraph(g: &Graph, s: &[usize], k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::param("replacement needs at least one new vertex"));
    }
    let mut in_s = vec![false; g.order()];
    for &v in s {
        g.check_vertex(v)?;
        if std::mem::replace(&mut in_s[v], true) {
            return Err(Error::param(format!(
                "vertex {v} repeated in the replaced set"
            )));
        }
    }
    let m = g.order();
    let mut out = Graph::empty(m + k);
    for (i, j) in g.edges() {
        if !(in_s[i] && in_s[j]) {
            out.add_edge(i, j);
        }
    }
    for u in m..m + k {
        for &v in s {
            out.add_edge(u, v);
        }
    }
    Ok(out)
}

/// A validated replacement: `host` is `2n`-regular and magic under
/// `labeling`, `s` induces `K_{2n} - M`, and each missing-matching pair in
/// `s` has label sum `|V(host)| + 1`.
#[derive(Clone, Debug)]
pub struct ReplacementPlan<'a> {
    pub host: &'a Graph,
    pub labeling: &'a Labeling,
    pub s: Vec<usize>,
    /// Twin pairs of the subgraph induced on `s`, as host vertices.
    pub twins: Vec<(usize, usize)>,
    pub new_vertices: usize,
    half: usize,
}

impl<'a> ReplacementPlan<'a> {
    pub fn new(host: &'a Graph, labeling: &'a Labeling, s: &[usize]) -> Result<Self> {
        labeling.check_order(host.order())?;
        let m = host.order();
        if s.len() < 4 || s.len() % 2 == 1 {
            return Err(Error::precondition(format!(
                "replaced set must have even size 2n >= 4, got {}",
                s.len()
            )));
        }
        let half = s.len() / 2;
        for v in 0..m {
            if host.degree(v) != 2 * half {
                return Err(Error::precondition(format!(
                    "host is not {}-regular: v{v} has degree {}",
                    2 * half,
                    host.degree(v)
                )));
            }
        }
        if !classify(host, labeling)?.kind.is_magic() {
            return Err(Error::precondition("host labeling is not distance magic"));
        }
        let induced = host.induced(s)?;
        if let Some(k) = (0..s.len()).find(|&k| induced.degree(k) != s.len() - 2) {
            return Err(Error::precondition(format!(
                "subgraph on s is not K_{} - M: v{} has {} neighbours inside s",
                s.len(),
                s[k],
                induced.degree(k)
            )));
        }
        let twins: Vec<(usize, usize)> = find_twin_pairs(&induced)
            .into_iter()
            .map(|(a, b)| (s[a], s[b]))
            .collect();
        if twins.len() != half {
            return Err(Error::precondition(
                "twins in s do not form a perfect matching",
            ));
        }
        for &(u, v) in &twins {
            let sum = labeling.label(u) + labeling.label(v);
            if sum != m + 1 {
                return Err(Error::precondition(format!(
                    "twin pair (v{u}, v{v}) has label sum {sum}, expected {}",
                    m + 1
                )));
            }
        }
        Ok(ReplacementPlan {
            host,
            labeling,
            s: s.to_vec(),
            twins,
            new_vertices: 2 * half - 2,
            half,
        })
    }

    /// Magic constant of the result, `2n^2 + mn - n`.
    pub fn predicted_constant(&self) -> u64 {
        let (n, m) = (self.half as u64, self.host.order() as u64);
        2 * n * n + m * n - n
    }

    /// Builds `G†` with `f†(x) = n + f(x) - 1` on old vertices and
    /// `f†(u_j) = m·β_{n-2}(j) + j + 1` on the new ones.
    pub fn apply(&self) -> Result<(Graph, Labeling)> {
        let n = self.half;
        let m = self.host.order();
        let graph = replace_subgraph(self.host, &self.s, self.new_vertices)?;
        let mut labels: Vec<usize> = self
            .labeling
            .as_slice()
            .iter()
            .map(|&l| n + l - 1)
            .collect();
        labels.extend(
            (0..self.new_vertices).map(|j| m * beta(n as i64 - 2, j as i64) as usize + j + 1),
        );
        let labeling = Labeling::new(labels)?;
        let kind = classify(&graph, &labeling)?.kind;
        if kind
            != (WeightKind::Magic {
                c: self.predicted_constant(),
            })
            || graph.regularity() != Some(2 * n)
        {
            return Err(Error::precondition(format!(
                "replacement did not produce a {}-regular magic graph (got {kind})",
                2 * n
            )));
        }
        Ok((graph, labeling))
    }
}

/// Replacement construction on a `2n`-regular distance magic graph.
pub fn dagger_even(g: &Graph, f: &Labeling, s: &[usize]) -> Result<(Graph, Labeling)> {
    ReplacementPlan::new(g, f, s)?.apply()
}

/// `H†_{2n,2n+2}`: the replacement applied to [`label_h_even`] with
/// `s = V \ {v_0, v_{n+1}}`. Needs `n >= 2`.
pub fn dagger_even_from_h_even(n: usize) -> Result<Recipe> {
    if n < 2 {
        return Err(Error::param("H†_(2n,2n+2) needs n >= 2"));
    }
    let base = label_h_even(n)?;
    let s: Vec<usize> = (0..2 * n + 2).filter(|&v| v != 0 && v != n + 1).collect();
    let plan = ReplacementPlan::new(&base.graph, &base.labeling, &s)?;
    let c = plan.predicted_constant();
    let (graph, labeling) = plan.apply()?;
    Ok(Recipe {
        name: format!("dagger_even({n})"),
        graph,
        labeling,
        predicted: WeightKind::Magic { c },
    })
}

/// `H†_{2n+1,2n+3}`: replaces the `H_{2n,2n+2}` on `v_1..v_{2n+2}` of
/// [`label_h_odd`] by `2n` new vertices. The result is non-regular, of order
/// `4n + 3`, with magic constant `4n^2 + 7n + 3`.
pub fn dagger_odd(n: usize) -> Result<Recipe> {
    let base = label_h_odd(n)?;
    let f = &base.labeling;
    let s: Vec<usize> = (1..2 * n + 3).collect();
    let graph = replace_subgraph(&base.graph, &s, 2 * n)?;
    let mut labels: Vec<usize> = (0..2 * n + 3)
        .map(|i| 2 * n + f.label(i) - n * beta(0, i as i64) as usize)
        .collect();
    labels.extend(
        (0..2 * n).map(|j| (f.label(0) - 1) * beta(n as i64 - 1, j as i64) as usize + j + 1),
    );
    let c = (4 * n * n + 7 * n + 3) as u64;
    Recipe::new(
        format!("dagger_odd({n})"),
        graph,
        labels,
        WeightKind::Magic { c },
    )
}

/// Joins a new vertex labelled `n + 1` to an `(n-k)`-regular
/// `(a, k-2)`-distance antimagic graph with
/// `2 <= k <= (1 + sqrt(8n - 7)) / 2`; the result is
/// `(a + n + 1, k - 2)`-distance antimagic.
pub fn plus_k1_extension(g: &Graph, f: &Labeling) -> Result<(Graph, Labeling)> {
    let n = g.order();
    let r = g
        .regularity()
        .ok_or_else(|| Error::precondition("graph is not regular"))?;
    let k = n - r;
    // (2k - 1)^2 <= 8n - 7  <=>  k(k - 1) <= 2n - 2
    if k < 2 || k * (k - 1) > 2 * n - 2 {
        return Err(Error::precondition(format!(
            "regularity n - k with k = {k} is outside 2 <= k <= (1 + sqrt(8n - 7))/2"
        )));
    }
    let d = (k - 2) as u64;
    let (a, got_d) = classify(g, f)?
        .kind
        .as_progression()
        .ok_or_else(|| Error::precondition("labeling is not an arithmetic progression"))?;
    if got_d != d {
        return Err(Error::precondition(format!(
            "common difference is {got_d}, expected k - 2 = {d}"
        )));
    }
    let (ni, ki) = (n as i64, k as i64);
    let twice_a = ni * ni - 2 * ki * ni + 3 * ni - 2;
    if 2 * a as i64 != twice_a {
        return Err(Error::precondition(format!(
            "a = {a} differs from (n^2 - 2kn + 3n - 2)/2 = {}/2",
            twice_a
        )));
    }
    let graph = join(g, &empty_graph(1)?);
    let mut labels = f.as_slice().to_vec();
    labels.push(n + 1);
    let labeling = Labeling::new(labels)?;
    let expected = a + n as u64 + 1;
    let kind = classify(&graph, &labeling)?.kind;
    if kind.as_progression() != Some((expected, d)) {
        return Err(Error::precondition(format!(
            "extension produced {kind}, expected a' = {expected}, d = {d}"
        )));
    }
    Ok((graph, labeling))
}

pub(crate) fn plus_k1_recipe(base: &Recipe) -> Result<Recipe> {
    let (graph, labeling) = plus_k1_extension(&base.graph, &base.labeling)?;
    let predicted = classify(&graph, &labeling)?.kind;
    Ok(Recipe {
        name: format!("k1({})", base.name),
        graph,
        labeling,
        predicted,
    })
}

/// An equalized incomplete tournament: each team (named by its label) plays
/// `rounds` opponents whose labels sum to `strength`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EitSchedule {
    pub teams: usize,
    pub rounds: usize,
    pub strength: u64,
    pub opponents: BTreeMap<usize, Vec<usize>>,
}

pub fn eit_export(g: &Graph, f: &Labeling) -> Result<EitSchedule> {
    let rounds = g
        .regularity()
        .ok_or_else(|| Error::precondition("EIT needs a regular graph"))?;
    let WeightKind::Magic { c } = classify(g, f)?.kind else {
        return Err(Error::precondition("EIT needs a distance magic labeling"));
    };
    let opponents = (0..g.order())
        .map(|v| {
            let mut opp: Vec<usize> = g.neighbor_iter(v).map(|u| f.label(u)).collect();
            opp.sort_unstable();
            (f.label(v), opp)
        })
        .collect();
    Ok(EitSchedule {
        teams: g.order(),
        rounds,
        strength: c,
        opponents,
    })
}
