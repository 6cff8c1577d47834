//! Exact backtracking search for labelings with a prescribed weight pattern.
//!
//! Vertices are labeled in order of decreasing degree (ties by index), labels
//! are tried in ascending order. Two prunes keep the tree small:
//!
//! * a vertex whose neighbourhood has just been completed must have an
//!   admissible weight (equal to `c`, a free progression slot, or a weight not
//!   yet seen);
//! * every vertex with unlabeled neighbours must still be able to reach an
//!   admissible weight using the smallest or largest labels left.
//!
//! The search is split into independent tasks, one per (weight rule, label of
//! the first vertex). With the `parallel` feature the tasks run on rayon;
//! results are merged in task order, so `FindOne` returns the same labeling
//! regardless of scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{classify, Graph, Labeling, WeightKind, WeightProfile};

/// Largest order the engine accepts (label sets are `u128` masks).
pub const MAX_ORDER: usize = 128;
pub const DECIDE_CEILING: usize = 16;
pub const COUNT_CEILING: usize = 12;
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "target", rename_all = "snake_case")]
pub enum Target {
    /// Constant weight, optionally fixed.
    Magic { c: Option<u64> },
    /// Weights `{a, a+d, .., a+(n-1)d}`. `d = None` means any `d >= 1`;
    /// `Some(0)` is the magic case.
    Progression { d: Option<u64> },
    /// Pairwise distinct weights.
    AllDistinct,
}

impl Target {
    /// Whether a weight classification meets the target.
    pub fn accepts(&self, kind: &WeightKind) -> bool {
        match *self {
            Target::Magic { c } => match kind {
                WeightKind::Magic { c: got } => c.is_none_or(|c| c == *got),
                _ => false,
            },
            Target::Progression { d: Some(d) } => {
                kind.as_progression().is_some_and(|(_, got)| got == d)
            }
            Target::Progression { d: None } => {
                matches!(kind, WeightKind::ArithmeticProgression { .. })
            }
            Target::AllDistinct => kind.is_distance_antimagic(),
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Magic { c: None } => f.write_str("magic"),
            Target::Magic { c: Some(c) } => write!(f, "magic c={c}"),
            Target::Progression { d: None } => f.write_str("progression d>=1"),
            Target::Progression { d: Some(d) } => write!(f, "progression d={d}"),
            Target::AllDistinct => f.write_str("all distinct"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    FindOne,
    CountAll,
    Decide,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub target: Target,
    pub mode: Mode,
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    /// Overrides the default order ceiling of the mode.
    pub ceiling: Option<usize>,
    /// `0`: rayon's default pool, `1`: sequential, `k`: a dedicated pool of
    /// `k` threads. Ignored without the `parallel` feature.
    pub threads: usize,
}

impl SearchSpec {
    pub fn new(target: Target, mode: Mode) -> Self {
        SearchSpec {
            target,
            mode,
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
            ceiling: None,
            threads: 0,
        }
    }

    pub fn find(target: Target) -> Self {
        Self::new(target, Mode::FindOne)
    }

    pub fn decide(target: Target) -> Self {
        Self::new(target, Mode::Decide)
    }

    pub fn count(target: Target) -> Self {
        Self::new(target, Mode::CountAll)
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn with_time_budget(mut self, limit: Duration) -> Self {
        self.time_budget = Some(limit);
        self
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = Some(ceiling);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn sequential(self) -> Self {
        self.with_threads(1)
    }

    fn effective_ceiling(&self) -> usize {
        let default = match self.mode {
            Mode::Decide => DECIDE_CEILING,
            Mode::CountAll => COUNT_CEILING,
            Mode::FindOne => MAX_ORDER,
        };
        self.ceiling.unwrap_or(default).min(MAX_ORDER)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Found(Labeling),
    ExhaustedNone,
    BudgetExceeded,
    Counted(u64),
}

impl Outcome {
    /// `Some(true)` for a labeling, `Some(false)` for a full exhaustion or a
    /// zero count, `None` when the budget ran out.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Outcome::Found(_) => Some(true),
            Outcome::ExhaustedNone => Some(false),
            Outcome::Counted(k) => Some(*k > 0),
            Outcome::BudgetExceeded => None,
        }
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        match self {
            Outcome::Found(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned_weight: u64,
    pub pruned_bound: u64,
    pub rules: usize,
    pub tasks: usize,
    pub symmetry_broken: bool,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.pruned_weight += other.pruned_weight;
        self.pruned_bound += other.pruned_bound;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub profile: Option<WeightProfile>,
    pub stats: SearchStats,
}

/// One concrete weight pattern explored by a task.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Constant(u64),
    Progression { a: u64, d: u64 },
    Distinct,
}

fn min_sum(k: usize) -> u64 {
    (k * (k + 1) / 2) as u64
}

fn max_sum(n: usize, k: usize) -> u64 {
    (k * (2 * n - k + 1) / 2) as u64
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Weight rules compatible with the degree sequence. Uses
/// `Σ w(v) = Σ f(v) d(v)`, bounded by pairing sorted degrees with sorted
/// labels, together with the per-vertex weight ranges.
fn rules_for(g: &Graph, target: Target) -> Vec<Rule> {
    let n = g.order();
    let mut desc = g.degrees();
    desc.sort_unstable_by(|a, b| b.cmp(a));
    let s_min: u64 = desc
        .iter()
        .enumerate()
        .map(|(i, &d)| d as u64 * (i as u64 + 1))
        .sum();
    let s_max: u64 = desc
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &d)| d as u64 * (i as u64 + 1))
        .sum();
    let lowest = g.degrees().iter().map(|&d| min_sum(d)).min().unwrap_or(0);
    let highest = g
        .degrees()
        .iter()
        .map(|&d| max_sum(n, d))
        .max()
        .unwrap_or(0);
    let floor_all = g.degrees().iter().map(|&d| min_sum(d)).max().unwrap_or(0);
    let ceil_all = g
        .degrees()
        .iter()
        .map(|&d| max_sum(n, d))
        .min()
        .unwrap_or(0);
    let nn = n as i128;

    let constants = || -> Vec<Rule> {
        let lo = ceil_div(s_min as i128, nn).max(floor_all as i128);
        let hi = (s_max as i128 / nn).min(ceil_all as i128);
        (lo..=hi).map(|c| Rule::Constant(c as u64)).collect()
    };
    let progressions = |d: u64| -> Vec<Rule> {
        if n < 2 {
            return Vec::new();
        }
        let spread = d as i128 * nn * (nn - 1) / 2;
        let lo = ceil_div(s_min as i128 - spread, nn)
            .max(lowest as i128)
            .max(0);
        let top = highest as i128 - (nn - 1) * d as i128;
        let hi = ((s_max as i128 - spread).div_euclid(nn)).min(top);
        (lo..=hi)
            .map(|a| Rule::Progression { a: a as u64, d })
            .collect()
    };

    match target {
        Target::Magic { c: Some(c) } => vec![Rule::Constant(c)],
        Target::Magic { c: None } | Target::Progression { d: Some(0) } => constants(),
        Target::Progression { d: Some(d) } => progressions(d),
        Target::Progression { d: None } => {
            if n < 2 {
                return Vec::new();
            }
            let d_max = highest.saturating_sub(lowest) / (n as u64 - 1);
            (1..=d_max).flat_map(progressions).collect()
        }
        Target::AllDistinct if n < 2 => Vec::new(),
        Target::AllDistinct => vec![Rule::Distinct],
    }
}

/// Read-only data shared by every task.
struct Prepared {
    n: usize,
    order: Vec<usize>,
    nbrs: Vec<Vec<usize>>,
    isolated: Vec<usize>,
    max_weight: usize,
}

impl Prepared {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let nbrs = (0..n).map(|v| g.neighbor_iter(v).collect()).collect();
        let isolated = (0..n).filter(|&v| g.degree(v) == 0).collect();
        Prepared {
            n,
            order,
            nbrs,
            isolated,
            max_weight: max_sum(n, g.max_degree()) as usize,
        }
    }
}

struct Shared {
    node_budget: u64,
    batch: u64,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    abort: AtomicBool,
    best: AtomicUsize,
    decided: AtomicBool,
}

enum Stop {
    Found,
    Aborted,
    Cancelled,
}

#[derive(Default)]
struct TaskOutcome {
    found: Option<Vec<usize>>,
    count: u64,
    aborted: bool,
    stats: SearchStats,
}

struct Engine<'a> {
    p: &'a Prepared,
    shared: &'a Shared,
    rule: Rule,
    mode: Mode,
    task: usize,
    labels: Vec<usize>,
    avail: u128,
    partial: Vec<u64>,
    pending: Vec<usize>,
    used_slots: u128,
    used_weights: Vec<bool>,
    trail: Vec<u64>,
    prefix: Vec<u64>,
    unflushed: u64,
    found: Option<Vec<usize>>,
    count: u64,
    stats: SearchStats,
}

impl<'a> Engine<'a> {
    fn new(p: &'a Prepared, shared: &'a Shared, rule: Rule, mode: Mode, task: usize) -> Self {
        let n = p.n;
        Engine {
            p,
            shared,
            rule,
            mode,
            task,
            labels: vec![0; n],
            avail: if n == 128 {
                u128::MAX
            } else {
                (1u128 << n) - 1
            },
            partial: vec![0; n],
            pending: p.nbrs.iter().map(Vec::len).collect(),
            used_slots: 0,
            used_weights: match rule {
                Rule::Distinct => vec![false; p.max_weight + 1],
                _ => Vec::new(),
            },
            trail: Vec::new(),
            prefix: Vec::with_capacity(n + 1),
            unflushed: 0,
            found: None,
            count: 0,
            stats: SearchStats::default(),
        }
    }

    fn accept_final(&mut self, w: u64) -> bool {
        match self.rule {
            Rule::Constant(c) => w == c,
            Rule::Progression { a, d } => {
                if w < a || (w - a) % d != 0 {
                    return false;
                }
                let k = (w - a) / d;
                if k >= self.p.n as u64 || self.used_slots >> k & 1 == 1 {
                    return false;
                }
                self.used_slots |= 1 << k;
                self.trail.push(k);
                true
            }
            Rule::Distinct => {
                let w = w as usize;
                if self.used_weights[w] {
                    return false;
                }
                self.used_weights[w] = true;
                self.trail.push(w as u64);
                true
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let t = self.trail.pop().expect("non-empty trail");
            match self.rule {
                Rule::Progression { .. } => self.used_slots &= !(1u128 << t),
                Rule::Distinct => self.used_weights[t as usize] = false,
                Rule::Constant(_) => unreachable!("constant rules leave no trail"),
            }
        }
    }

    /// Every partially labeled neighbourhood can still hit an admissible
    /// weight.
    fn bounds_hold(&mut self) -> bool {
        if matches!(self.rule, Rule::Distinct) {
            return true;
        }
        self.prefix.clear();
        self.prefix.push(0);
        let mut bits = self.avail;
        let mut acc = 0;
        while bits != 0 {
            acc += bits.trailing_zeros() as u64 + 1;
            self.prefix.push(acc);
            bits &= bits - 1;
        }
        let m = self.prefix.len() - 1;
        for v in 0..self.p.n {
            let k = self.pending[v];
            if k == 0 {
                continue;
            }
            let lo = self.partial[v] + self.prefix[k];
            let hi = self.partial[v] + self.prefix[m] - self.prefix[m - k];
            let ok = match self.rule {
                Rule::Constant(c) => lo <= c && c <= hi,
                Rule::Progression { a, d } => {
                    if hi < a {
                        false
                    } else {
                        let k_lo = if lo <= a { 0 } else { (lo - a).div_ceil(d) };
                        let k_hi = ((hi - a) / d).min(self.p.n as u64 - 1);
                        k_lo <= k_hi && {
                            let width = k_hi - k_lo + 1;
                            let range = if width >= 128 {
                                u128::MAX
                            } else {
                                ((1u128 << width) - 1) << k_lo
                            };
                            range & !self.used_slots != 0
                        }
                    }
                }
                Rule::Distinct => true,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn place(&mut self, x: usize, l: usize) -> (bool, usize) {
        self.labels[x] = l;
        self.avail &= !(1u128 << (l - 1));
        let p = self.p;
        for &y in &p.nbrs[x] {
            self.partial[y] += l as u64;
            self.pending[y] -= 1;
        }
        let mark = self.trail.len();
        for &y in &p.nbrs[x] {
            if self.pending[y] == 0 && !self.accept_final(self.partial[y]) {
                self.stats.pruned_weight += 1;
                return (false, mark);
            }
        }
        if !self.bounds_hold() {
            self.stats.pruned_bound += 1;
            return (false, mark);
        }
        (true, mark)
    }

    fn unplace(&mut self, x: usize, l: usize, mark: usize) {
        self.undo_to(mark);
        for &y in &self.p.nbrs[x] {
            self.partial[y] -= l as u64;
            self.pending[y] += 1;
        }
        self.avail |= 1u128 << (l - 1);
        self.labels[x] = 0;
    }

    fn flush(&mut self) {
        let total = self
            .shared
            .nodes
            .fetch_add(self.unflushed, Ordering::Relaxed)
            + self.unflushed;
        self.unflushed = 0;
        if total > self.shared.node_budget
            || self.shared.deadline.is_some_and(|d| Instant::now() >= d)
        {
            self.shared.abort.store(true, Ordering::Relaxed);
        }
    }

    fn tick(&mut self) -> Result<(), Stop> {
        self.stats.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= self.shared.batch {
            self.flush();
            if self.shared.abort.load(Ordering::Relaxed) {
                return Err(Stop::Aborted);
            }
            let cancelled = match self.mode {
                Mode::FindOne => self.shared.best.load(Ordering::Relaxed) < self.task,
                Mode::Decide => self.shared.decided.load(Ordering::Relaxed),
                Mode::CountAll => false,
            };
            if cancelled {
                return Err(Stop::Cancelled);
            }
        }
        Ok(())
    }

    fn dfs(&mut self, depth: usize) -> Result<(), Stop> {
        if depth == self.p.n {
            if self.mode == Mode::CountAll {
                self.count += 1;
                return Ok(());
            }
            self.found = Some(self.labels.clone());
            return Err(Stop::Found);
        }
        let x = self.p.order[depth];
        let mut bits = self.avail;
        while bits != 0 {
            let l = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            self.tick()?;
            let (ok, mark) = self.place(x, l);
            let r = if ok { self.dfs(depth + 1) } else { Ok(()) };
            self.unplace(x, l, mark);
            r?;
        }
        Ok(())
    }

    fn run(mut self, first_label: usize) -> TaskOutcome {
        let p = self.p;
        let mut stop = None;
        let isolated_ok = p.isolated.iter().all(|_| self.accept_final(0));
        if isolated_ok {
            let x = p.order[0];
            stop = self.tick().err();
            if stop.is_none() {
                let (ok, mark) = self.place(x, first_label);
                if ok {
                    stop = self.dfs(1).err();
                }
                self.unplace(x, first_label, mark);
            }
        }
        self.flush();
        if matches!(stop, Some(Stop::Found)) {
            match self.mode {
                Mode::FindOne => {
                    self.shared.best.fetch_min(self.task, Ordering::Relaxed);
                }
                Mode::Decide => self.shared.decided.store(true, Ordering::Relaxed),
                Mode::CountAll => {}
            }
        }
        TaskOutcome {
            found: self.found,
            count: self.count,
            aborted: matches!(stop, Some(Stop::Aborted)),
            stats: self.stats,
        }
    }
}

fn run_tasks(
    tasks: &[(Rule, usize)],
    p: &Prepared,
    shared: &Shared,
    mode: Mode,
    threads: usize,
) -> Vec<TaskOutcome> {
    let run_one =
        |i: usize, &(rule, l): &(Rule, usize)| Engine::new(p, shared, rule, mode, i).run(l);

    #[cfg(feature = "parallel")]
    if threads != 1 {
        use rayon::prelude::*;
        let go = || {
            tasks
                .par_iter()
                .enumerate()
                .map(|(i, t)| run_one(i, t))
                .collect::<Vec<_>>()
        };
        if threads == 0 {
            return go();
        }
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(go);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;

    let mut out = Vec::with_capacity(tasks.len());
    for (i, t) in tasks.iter().enumerate() {
        let r = run_one(i, t);
        let done = r.found.is_some() && mode != Mode::CountAll;
        out.push(r);
        if done {
            break;
        }
    }
    out
}

/// Searches `g` for a labeling meeting `spec.target`.
pub fn search(g: &Graph, spec: &SearchSpec) -> Result<SearchResult> {
    let n = g.order();
    let ceiling = spec.effective_ceiling();
    if n > ceiling {
        return Err(Error::CeilingExceeded { order: n, ceiling });
    }
    if spec.node_budget == 0 {
        return Err(Error::param("node budget must be positive"));
    }
    let p = Prepared::new(g);
    let rules = rules_for(g, spec.target);
    let magic_rules = rules.iter().all(|r| matches!(r, Rule::Constant(_)));
    let symmetric = magic_rules
        && g.is_regular()
        && spec.mode != Mode::CountAll
        && matches!(
            spec.target,
            Target::Magic { .. } | Target::Progression { d: Some(0) }
        );
    let first_max = if symmetric { n.div_ceil(2).max(1) } else { n };
    let tasks: Vec<(Rule, usize)> = rules
        .iter()
        .flat_map(|&r| (1..=first_max).map(move |l| (r, l)))
        .collect();

    let shared = Shared {
        node_budget: spec.node_budget,
        batch: spec.node_budget.min(1024),
        deadline: spec.time_budget.map(|t| Instant::now() + t),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        best: AtomicUsize::new(usize::MAX),
        decided: AtomicBool::new(false),
    };
    let results = run_tasks(&tasks, &p, &shared, spec.mode, spec.threads);

    let mut stats = SearchStats {
        rules: rules.len(),
        tasks: tasks.len(),
        symmetry_broken: symmetric,
        ..SearchStats::default()
    };
    for r in &results {
        stats.absorb(&r.stats);
    }
    let aborted = results.iter().any(|r| r.aborted);

    let outcome = match spec.mode {
        Mode::CountAll if aborted => Outcome::BudgetExceeded,
        Mode::CountAll => Outcome::Counted(results.iter().map(|r| r.count).sum()),
        _ => match results.iter().find_map(|r| r.found.clone()) {
            Some(labels) => Outcome::Found(Labeling::new(labels)?),
            None if aborted => Outcome::BudgetExceeded,
            None => Outcome::ExhaustedNone,
        },
    };

    let profile = match &outcome {
        Outcome::Found(f) => {
            let profile = classify(g, f)?;
            assert!(
                spec.target.accepts(&profile.kind),
                "search returned a labeling classified as {} for target {:?}",
                profile.kind,
                spec.target
            );
            Some(profile)
        }
        _ => None,
    };
    Ok(SearchResult {
        outcome,
        profile,
        stats,
    })
}

/// Decides whether `g` is `(a, d)`-distance antimagic (`d = 0`: distance
/// magic). On regular graphs the rule set collapses to the single forced `a`.
pub fn search_progression(g: &Graph, d: u64) -> Result<SearchResult> {
    search(g, &SearchSpec::decide(Target::Progression { d: Some(d) }))
}

/// Number of labelings of `g` meeting `target`, counting every bijection.
pub fn count_labelings(g: &Graph, target: Target) -> Result<u64> {
    match search(g, &SearchSpec::count(target))?.outcome {
        Outcome::Counted(k) => Ok(k),
        _ => Err(Error::precondition("count search ran out of budget")),
    }
}
