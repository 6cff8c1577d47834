//! Cross-checks of the known results on Harary graphs, one row per claim.
//!
//! Every row gathers evidence from closed-form recipes, analytic criteria and
//! the search oracle, then derives a status. Rows whose stated wording is
//! contradicted by an explicit witness are evaluated under a corrected
//! reading; the witness is kept alongside the row.

use std::fmt;

use serde::Serialize;

use crate::constructions::plus_k1_extension;
use crate::criteria::{
    check_ad_regular_bounds, check_cpow, check_delta_full, check_nminus3_regular,
    check_odd_regular, check_shared_neighborhood, check_twin_antimagic, Verdict, Witness,
};
use crate::error::Result;
use crate::families::{complete, cycle, empty_graph, harary};
use crate::graph::{classify, Graph, Labeling, WeightKind};
use crate::products::join;
use crate::recipes::{
    label_antimagic_2n_2n3, label_antimagic_4n1_4n4, label_antimagic_h4, label_h_even, label_h_odd,
    Recipe,
};
use crate::search::{search, Mode, Outcome, SearchSpec, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Column {
    DistanceMagic,
    Antimagic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Recipe,
    Oracle,
    Criterion,
    Construction,
    Derivation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Check {
    Agrees,
    Disagrees,
    NotCheckable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub instance: String,
    pub method: Method,
    pub expected: String,
    pub observed: String,
    pub check: Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    /// Every evidence item agrees and covers the claim.
    Confirmed,
    /// Evidence agrees, but part of the claim lies beyond reach.
    ConfirmedAtSmallScale,
    /// Only analytic criteria were available, and they agree.
    ConfirmedAnalytically,
    /// The stated wording fails on a witness; the corrected reading holds.
    ConfirmedUnderReading,
    NotCheckable,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub family: String,
    pub column: Column,
    pub claim: String,
    /// The reading that was checked, when it differs from `claim`.
    pub reading: Option<String>,
    pub status: RowStatus,
    pub evidence: Vec<Evidence>,
    /// Witnesses against the stated wording.
    pub counterexamples: Vec<Evidence>,
}

/// Which family the `+K_1` extension result applies to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamingProbe {
    pub stated: String,
    pub resolved: String,
    pub evidence: Vec<Evidence>,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub rows: Vec<Row>,
    pub naming_probe: NamingProbe,
}

impl Table1Report {
    pub fn refuted_rows(&self) -> Vec<&Row> {
        self.rows
            .iter()
            .filter(|r| r.status == RowStatus::Refuted)
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Table1Options {
    /// Node budget for each oracle call.
    pub node_budget: u64,
    pub threads: usize,
}

impl Default for Table1Options {
    fn default() -> Self {
        Table1Options {
            node_budget: 10_000_000,
            threads: 0,
        }
    }
}

const COUNTEREXAMPLE_BUDGET: u64 = 50_000_000;

fn h(m: usize, n: usize) -> String {
    format!("H_{{{m},{n}}}")
}

struct RowBuilder<'o> {
    row: Row,
    small_scale: bool,
    opts: &'o Table1Options,
}

impl<'o> RowBuilder<'o> {
    fn new(family: &str, column: Column, claim: &str, opts: &'o Table1Options) -> Self {
        RowBuilder {
            row: Row {
                family: family.into(),
                column,
                claim: claim.into(),
                reading: None,
                status: RowStatus::NotCheckable,
                evidence: Vec::new(),
                counterexamples: Vec::new(),
            },
            small_scale: false,
            opts,
        }
    }

    fn reading(mut self, reading: &str) -> Self {
        self.row.reading = Some(reading.into());
        self
    }

    fn small_scale(&mut self) {
        self.small_scale = true;
    }

    fn item(
        &mut self,
        instance: impl Into<String>,
        method: Method,
        expected: impl Into<String>,
        observed: impl Into<String>,
        check: Check,
    ) {
        self.row.evidence.push(Evidence {
            instance: instance.into(),
            method,
            expected: expected.into(),
            observed: observed.into(),
            check,
        });
    }

    /// One evidence item summarizing many instances; `outcomes` yields an
    /// instance description and whether it agreed.
    fn sweep<I>(&mut self, instance: &str, method: Method, expected: &str, outcomes: I)
    where
        I: IntoIterator<Item = (String, bool)>,
    {
        let mut total = 0;
        let mut failures = Vec::new();
        for (what, ok) in outcomes {
            total += 1;
            if !ok {
                failures.push(what);
            }
        }
        let (observed, check) = if total == 0 {
            ("no instances".to_string(), Check::NotCheckable)
        } else if failures.is_empty() {
            (format!("{total}/{total} instances agree"), Check::Agrees)
        } else {
            (
                format!(
                    "{}/{total} agree; first mismatch: {}",
                    total - failures.len(),
                    failures[0]
                ),
                Check::Disagrees,
            )
        };
        self.item(instance, method, expected, observed, check);
    }

    fn run_oracle(&self, g: &Graph, target: Target, expect_found: bool) -> Option<Outcome> {
        self.run_oracle_with(g, target, expect_found, self.opts.node_budget)
    }

    fn run_oracle_with(
        &self,
        g: &Graph,
        target: Target,
        expect_found: bool,
        budget: u64,
    ) -> Option<Outcome> {
        let mode = if expect_found {
            Mode::FindOne
        } else {
            Mode::Decide
        };
        let spec = SearchSpec::new(target, mode)
            .with_budget(budget)
            .with_threads(self.opts.threads);
        search(g, &spec).ok().map(|r| r.outcome)
    }

    /// Oracle evidence on one instance; out of budget or above the ceiling
    /// counts as not checkable.
    fn oracle(&mut self, name: String, g: &Graph, target: Target, expect_found: bool) {
        let expected = if expect_found {
            "labeling exists"
        } else {
            "no labeling"
        };
        let (observed, check) = match self.run_oracle(g, target, expect_found) {
            Some(Outcome::Found(f)) => {
                let kind = classify(g, &f)
                    .map(|p| p.kind.to_string())
                    .unwrap_or_default();
                (format!("found ({kind})"), agree(expect_found))
            }
            Some(Outcome::ExhaustedNone) => ("exhausted, none".into(), agree(!expect_found)),
            Some(_) | None => ("beyond budget or ceiling".into(), Check::NotCheckable),
        };
        self.item(name, Method::Oracle, expected, observed, check);
    }

    /// Oracle sweep summarized into one item; instances beyond reach are
    /// listed as not checkable.
    fn oracle_sweep<I>(&mut self, instance: &str, target: Target, cases: I)
    where
        I: IntoIterator<Item = (String, Graph, bool)>,
    {
        let mut outcomes = Vec::new();
        let mut unreachable = Vec::new();
        for (name, g, expect) in cases {
            match self.run_oracle(&g, target, expect) {
                Some(Outcome::Found(_)) => outcomes.push((format!("{name}: found"), expect)),
                Some(Outcome::ExhaustedNone) => outcomes.push((format!("{name}: none"), !expect)),
                _ => unreachable.push(name),
            }
        }
        self.sweep(
            instance,
            Method::Oracle,
            &format!("{target} as claimed"),
            outcomes,
        );
        if !unreachable.is_empty() {
            self.item(
                unreachable.join(", "),
                Method::Oracle,
                format!("{target} as claimed"),
                "beyond budget or ceiling",
                Check::NotCheckable,
            );
        }
    }

    /// Oracle search for a labeling that contradicts the stated wording.
    fn counterexample(&mut self, name: String, g: &Graph, target: Target) {
        let budget = self.opts.node_budget.max(COUNTEREXAMPLE_BUDGET);
        let (observed, check) = match self.run_oracle_with(g, target, true, budget) {
            Some(Outcome::Found(f)) => (
                format!(
                    "found {:?} ({})",
                    f.as_slice(),
                    classify(g, &f)
                        .map(|p| p.kind.to_string())
                        .unwrap_or_default()
                ),
                Check::Agrees,
            ),
            Some(Outcome::ExhaustedNone) => ("exhausted, none".into(), Check::Disagrees),
            _ => ("not found within budget".into(), Check::NotCheckable),
        };
        self.row.counterexamples.push(Evidence {
            instance: name,
            method: Method::Oracle,
            expected: format!("a labeling with target {target}"),
            observed,
            check,
        });
    }

    fn finish(mut self) -> Row {
        let ev = &self.row.evidence;
        let any = |c: Check| ev.iter().any(|e| e.check == c);
        self.row.status = if any(Check::Disagrees) {
            RowStatus::Refuted
        } else if !any(Check::Agrees) {
            RowStatus::NotCheckable
        } else if self.row.reading.is_some() {
            RowStatus::ConfirmedUnderReading
        } else if self.small_scale || any(Check::NotCheckable) {
            RowStatus::ConfirmedAtSmallScale
        } else if ev
            .iter()
            .filter(|e| e.check == Check::Agrees)
            .all(|e| e.method == Method::Criterion)
        {
            RowStatus::ConfirmedAnalytically
        } else {
            RowStatus::Confirmed
        };
        self.row
    }
}

fn agree(ok: bool) -> Check {
    if ok {
        Check::Agrees
    } else {
        Check::Disagrees
    }
}

fn magic() -> Target {
    Target::Magic { c: None }
}

fn prog(d: u64) -> Target {
    Target::Progression { d: Some(d) }
}

/// Recipe output checked against an independently built graph and an
/// explicit expected classification.
fn recipe_matches(r: Result<Recipe>, graph: Result<Graph>, expected: WeightKind) -> (String, bool) {
    match (r, graph) {
        (Ok(r), Ok(g)) => {
            let kind = classify(&r.graph, &r.labeling).map(|p| p.kind);
            let ok = r.graph == g && kind.as_ref().is_ok_and(|k| *k == expected);
            (format!("{}: {:?}", r.name, kind.ok()), ok)
        }
        (Err(e), _) | (_, Err(e)) => (format!("error: {e}"), false),
    }
}

fn verdict_is(v: Result<crate::criteria::CriterionVerdict>, want: Verdict) -> bool {
    v.is_ok_and(|v| v.verdict == want)
}

fn odd_regular_graph(m: usize, n: usize) -> bool {
    harary(m, n).is_ok_and(|g| check_odd_regular(&g).verdict == Verdict::Infeasible)
}

/// Whether `C_n^m` meets condition (i) with the divisibility `2m(m+1) ≡ 0`.
fn condition_i(m: usize, n: usize) -> bool {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    m % 2 == 1 && (2 * m * (m + 1)) % n == 0 && n >= 2 * m + 2 && (n / gcd(n, m + 1)) % 2 == 0
}

fn rows_two(opts: &Table1Options) -> Vec<Row> {
    let mut dm = RowBuilder::new(
        "H_{2,n}",
        Column::DistanceMagic,
        "Yes (only if n = 4)",
        opts,
    );
    dm.sweep(
        "C_n, n = 3..=200",
        Method::Criterion,
        "cycle-power characterization: yes iff n = 4",
        (3..=200).map(|n| {
            let yes = verdict_is(check_cpow(n, 1), Verdict::CharacterizedYes);
            (format!("C_{n}"), yes == (n == 4))
        }),
    );
    dm.oracle_sweep(
        "C_n, n = 3..=12",
        magic(),
        (3..=12).map(|n| (format!("C_{n}"), cycle(n).unwrap(), n == 4)),
    );

    let mut am = RowBuilder::new(
        "H_{2,n}",
        Column::Antimagic,
        "Yes (only if n odd, d = 1)",
        opts,
    );
    for d in 1..=3u64 {
        am.oracle_sweep(
            &format!("C_n, n = 3..=12, d = {d}"),
            prog(d),
            (3..=12).map(move |n| (format!("C_{n}"), cycle(n).unwrap(), n % 2 == 1 && d == 1)),
        );
    }
    am.sweep(
        "C_n, n = 3..=200, d = 1 (n even) and d = 2..=5",
        Method::Criterion,
        "regular progression bounds rule these out",
        (3..=200usize).flat_map(|n| {
            let ds: Vec<usize> = if n % 2 == 0 {
                vec![1, 2, 3, 4, 5]
            } else {
                vec![2, 3, 4, 5]
            };
            ds.into_iter().map(move |d| {
                (
                    format!("C_{n}, d = {d}"),
                    verdict_is(check_ad_regular_bounds(2, n, d), Verdict::Infeasible),
                )
            })
        }),
    );
    // existence for odd n rests on the oracle range above
    am.small_scale();
    vec![dm.finish(), am.finish()]
}

fn rows_three(opts: &Table1Options) -> Vec<Row> {
    let mut b = RowBuilder::new(
        "H_{3,n}",
        Column::DistanceMagic,
        "Yes (only if n = 5)",
        opts,
    );
    let (what, ok) = recipe_matches(label_h_odd(1), harary(3, 5), WeightKind::Magic { c: 10 });
    b.item(h(3, 5), Method::Recipe, "Magic c=10", what, agree(ok));
    b.sweep(
        "H_{3,n}, n even, 4..=200",
        Method::Criterion,
        "odd-regular criterion",
        (4..=200)
            .step_by(2)
            .map(|n| (h(3, n), odd_regular_graph(3, n))),
    );
    b.sweep(
        "H_{3,n}, n odd, 7..=201",
        Method::Criterion,
        "shared neighbourhood at (v_{(n-3)/2}, v_{n-2})",
        (7..=201).step_by(2).map(|n| {
            let g = harary(3, n).unwrap();
            let ok = match check_shared_neighborhood(&g).witness {
                Witness::SharedNeighborhood { all_pairs, .. } => {
                    all_pairs.contains(&((n - 3) / 2, n - 2))
                }
                _ => false,
            };
            (h(3, n), ok)
        }),
    );
    b.oracle_sweep(
        "H_{3,n}, n = 4..=13",
        magic(),
        (4..=13).map(|n| (h(3, n), harary(3, n).unwrap(), n == 5)),
    );
    vec![b.finish()]
}

fn rows_four(opts: &Table1Options) -> Vec<Row> {
    let mut dm = RowBuilder::new(
        "H_{4,n}",
        Column::DistanceMagic,
        "Yes (only if n = 6)",
        opts,
    );
    dm.sweep(
        "C_n^2, n = 5..=200",
        Method::Criterion,
        "cycle-square characterization: yes iff n = 6",
        (5..=200).map(|n| {
            let yes = verdict_is(check_cpow(n, 2), Verdict::CharacterizedYes);
            (h(4, n), yes == (n == 6))
        }),
    );
    dm.oracle_sweep(
        "H_{4,n}, n = 5..=16",
        magic(),
        (5..=16).map(|n| (h(4, n), harary(4, n).unwrap(), n == 6)),
    );

    let mut yes = RowBuilder::new(
        "H_{4,n}",
        Column::Antimagic,
        "Yes (if n ≡ 3 mod 4, d = 1)",
        opts,
    );
    yes.sweep(
        "H_{4,n}, n = 7, 11, ..., 199",
        Method::Recipe,
        "Progression a=(3n+5)/2 d=1",
        (7..=199).step_by(4).map(|n| {
            let a = (3 * n as u64 + 5) / 2;
            recipe_matches(
                label_antimagic_h4(n),
                harary(4, n),
                WeightKind::ArithmeticProgression { a, d: 1 },
            )
        }),
    );
    for n in [7, 11, 15] {
        yes.oracle(h(4, n), &harary(4, n).unwrap(), prog(1), true);
    }

    let mut no = RowBuilder::new("H_{4,n}", Column::Antimagic, "No (if n is even)", opts)
        .reading("no (a, d)-distance antimagic labeling with d odd when n is even");
    no.sweep(
        "H_{4,n}, n even 6..=200, d odd 1..=7",
        Method::Criterion,
        "parity: r, n even and d odd",
        (6..=200usize).step_by(2).flat_map(|n| {
            (1..=7usize).step_by(2).map(move |d| {
                (
                    format!("{}, d = {d}", h(4, n)),
                    verdict_is(check_ad_regular_bounds(4, n, d), Verdict::Infeasible),
                )
            })
        }),
    );
    no.oracle_sweep(
        "H_{4,n}, n even 6..=16, d = 1",
        prog(1),
        (6..=16)
            .step_by(2)
            .map(|n| (h(4, n), harary(4, n).unwrap(), false)),
    );
    no.counterexample(h(4, 12), &harary(4, 12).unwrap(), prog(2));

    vec![dm.finish(), yes.finish(), no.finish()]
}

fn rows_cpow_fixed(m: usize, yes_at: &[usize], top: usize, opts: &Table1Options) -> Vec<Row> {
    let family = format!("H_{{{},n}}", 2 * m);
    let claim = format!(
        "Yes (only if n = {})",
        yes_at
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let mut dm = RowBuilder::new(&family, Column::DistanceMagic, &claim, opts);
    dm.sweep(
        &format!("C_n^{m}, n = {}..={top}", 2 * m + 1),
        Method::Criterion,
        "odd-power characterization",
        (2 * m + 1..=top).map(|n| {
            let yes = verdict_is(check_cpow(n, m), Verdict::CharacterizedYes);
            (h(2 * m, n), yes == yes_at.contains(&n))
        }),
    );
    let (what, ok) = recipe_matches(
        label_h_even(m),
        harary(2 * m, 2 * m + 2),
        WeightKind::Magic {
            c: (2 * m * m + 3 * m) as u64,
        },
    );
    dm.item(
        h(2 * m, 2 * m + 2),
        Method::Recipe,
        "distance magic",
        what,
        agree(ok),
    );
    dm.oracle_sweep(
        &format!("H_{{{},n}}, n = {}..=14", 2 * m, 2 * m + 2),
        magic(),
        (2 * m + 2..=14).map(|n| (h(2 * m, n), harary(2 * m, n).unwrap(), yes_at.contains(&n))),
    );
    for &n in yes_at.iter().filter(|&&n| n > 14) {
        dm.oracle(h(2 * m, n), &harary(2 * m, n).unwrap(), magic(), true);
    }

    let mut am = RowBuilder::new(&family, Column::Antimagic, "No (if n even, d odd)", opts);
    am.sweep(
        &format!(
            "H_{{{},n}}, n even {}..={top}, d odd 1..=9",
            2 * m,
            2 * m + 2
        ),
        Method::Criterion,
        "parity: r, n even and d odd",
        (2 * m + 2..=top).step_by(2).flat_map(|n| {
            (1..=9usize).step_by(2).map(move |d| {
                (
                    format!("{}, d = {d}", h(2 * m, n)),
                    verdict_is(check_ad_regular_bounds(2 * m, n, d), Verdict::Infeasible),
                )
            })
        }),
    );
    for d in [1, 3] {
        am.oracle_sweep(
            &format!("H_{{{},n}}, n even ..=14, d = {d}", 2 * m),
            prog(d),
            (2 * m + 2..=14)
                .step_by(2)
                .map(|n| (h(2 * m, n), harary(2 * m, n).unwrap(), false)),
        );
    }
    vec![dm.finish(), am.finish()]
}

fn rows_closed_families(opts: &Table1Options) -> Vec<Row> {
    let mut out = Vec::new();

    let mut b = RowBuilder::new("H_{2n,2n+2}", Column::DistanceMagic, "Yes", opts);
    b.sweep(
        "n = 1..=50",
        Method::Recipe,
        "Magic c=2n^2+3n",
        (1..=50usize).map(|n| {
            let c = (2 * n * n + 3 * n) as u64;
            recipe_matches(
                label_h_even(n),
                harary(2 * n, 2 * n + 2),
                WeightKind::Magic { c },
            )
        }),
    );
    out.push(b.finish());

    let mut b = RowBuilder::new("H_{2n,2n+2}", Column::Antimagic, "No (if d odd)", opts);
    b.sweep(
        "n = 1..=100, d odd 1..=9",
        Method::Criterion,
        "parity: r, n even and d odd",
        (1..=100usize).flat_map(|n| {
            (1..=9usize).step_by(2).map(move |d| {
                (
                    format!("{}, d = {d}", h(2 * n, 2 * n + 2)),
                    verdict_is(
                        check_ad_regular_bounds(2 * n, 2 * n + 2, d),
                        Verdict::Infeasible,
                    ),
                )
            })
        }),
    );
    b.oracle_sweep(
        "n = 1..=3, d = 1",
        prog(1),
        (1..=3).map(|n| {
            (
                h(2 * n, 2 * n + 2),
                harary(2 * n, 2 * n + 2).unwrap(),
                false,
            )
        }),
    );
    out.push(b.finish());

    let mut b = RowBuilder::new("H_{2n+1,2n+3}", Column::DistanceMagic, "Yes", opts);
    b.sweep(
        "n = 1..=50",
        Method::Recipe,
        "Magic c=2n^2+5n+3",
        (1..=50usize).map(|n| {
            let c = (2 * n * n + 5 * n + 3) as u64;
            recipe_matches(
                label_h_odd(n),
                harary(2 * n + 1, 2 * n + 3),
                WeightKind::Magic { c },
            )
        }),
    );
    out.push(b.finish());

    let mut b = RowBuilder::new("H_{2n+1,2n+3}", Column::Antimagic, "No", opts);
    b.sweep(
        "n = 1..=60",
        Method::Criterion,
        "twin vertices force equal weights",
        (1..=60usize).map(|n| {
            let g = harary(2 * n + 1, 2 * n + 3).unwrap();
            (
                h(2 * n + 1, 2 * n + 3),
                check_twin_antimagic(&g).verdict == Verdict::Infeasible,
            )
        }),
    );
    b.oracle_sweep(
        "n = 1..=3, any d >= 1",
        Target::Progression { d: None },
        (1..=3).map(|n| {
            (
                h(2 * n + 1, 2 * n + 3),
                harary(2 * n + 1, 2 * n + 3).unwrap(),
                false,
            )
        }),
    );
    b.oracle(h(3, 5), &harary(3, 5).unwrap(), Target::AllDistinct, false);
    out.push(b.finish());

    let mut b = RowBuilder::new("H_{2n,2n+3}", Column::Antimagic, "Yes (d = 1)", opts);
    b.sweep(
        "n = 1..=50",
        Method::Recipe,
        "Progression a=2n^2+3n-1 d=1",
        (1..=50usize).map(|n| {
            let a = (2 * n * n + 3 * n - 1) as u64;
            recipe_matches(
                label_antimagic_2n_2n3(n),
                harary(2 * n, 2 * n + 3),
                WeightKind::ArithmeticProgression { a, d: 1 },
            )
        }),
    );
    for n in 1..=2 {
        b.oracle(
            h(2 * n, 2 * n + 3),
            &harary(2 * n, 2 * n + 3).unwrap(),
            prog(1),
            true,
        );
    }
    out.push(b.finish());

    let mut b = RowBuilder::new("H_{n,n+1}", Column::DistanceMagic, "No", opts);
    b.sweep(
        "n = 2..=60",
        Method::Criterion,
        "shared neighbourhood and maximum-degree characterization",
        (2..=60usize).map(|n| {
            let g = harary(n, n + 1).unwrap();
            let shared = check_shared_neighborhood(&g).verdict == Verdict::Infeasible;
            let full = verdict_is(check_delta_full(&g), Verdict::CharacterizedNo);
            (h(n, n + 1), shared && full && g == complete(n + 1).unwrap())
        }),
    );
    b.oracle_sweep(
        "n = 2..=7",
        magic(),
        (2..=7).map(|n| (h(n, n + 1), harary(n, n + 1).unwrap(), false)),
    );
    out.push(b.finish());

    let mut b = RowBuilder::new("H_{n,n+1}", Column::Antimagic, "Yes (only if d = 1)", opts);
    b.sweep(
        "n = 2..=60, identity labeling",
        Method::Construction,
        "Progression d=1",
        (2..=60usize).map(|n| {
            let g = harary(n, n + 1).unwrap();
            let kind = classify(&g, &Labeling::identity(n + 1)).map(|p| p.kind);
            let ok = kind
                .as_ref()
                .is_ok_and(|k| k.as_progression().is_some_and(|(_, d)| d == 1));
            (format!("{}: {:?}", h(n, n + 1), kind.ok()), ok)
        }),
    );
    b.sweep(
        "n = 2..=60, d = 2..=5",
        Method::Criterion,
        "bound d <= r(n-r)/(n-1) = 1",
        (2..=60usize).flat_map(|n| {
            (2..=5usize).map(move |d| {
                (
                    format!("{}, d = {d}", h(n, n + 1)),
                    verdict_is(check_ad_regular_bounds(n, n + 1, d), Verdict::Infeasible),
                )
            })
        }),
    );
    out.push(b.finish());

    let mut b = RowBuilder::new(
        "H_{4n+1,4n+4}",
        Column::Antimagic,
        "Yes (only if d = 1)",
        opts,
    );
    b.sweep(
        "n = 1..=30",
        Method::Recipe,
        "Progression a=8n^2+10n+1 d=1",
        (1..=30usize).map(|n| {
            let a = (8 * n * n + 10 * n + 1) as u64;
            recipe_matches(
                label_antimagic_4n1_4n4(n),
                harary(4 * n + 1, 4 * n + 4),
                WeightKind::ArithmeticProgression { a, d: 1 },
            )
        }),
    );
    b.sweep(
        "n = 1..=30, d in {0, 2, 3, 4, 5}",
        Method::Criterion,
        "(n-3)-regular on an even order forces d = 1",
        (1..=30usize).flat_map(|n| {
            [0usize, 2, 3, 4, 5].into_iter().map(move |d| {
                (
                    format!("{}, d = {d}", h(4 * n + 1, 4 * n + 4)),
                    verdict_is(
                        check_nminus3_regular(4 * n + 4, d),
                        Verdict::CharacterizedNo,
                    ),
                )
            })
        }),
    );
    b.oracle(h(5, 8), &harary(5, 8).unwrap(), prog(1), true);
    out.push(b.finish());

    out
}

fn rows_odd_even(opts: &Table1Options) -> Vec<Row> {
    let family = "H_{m,n} (m odd, n even)";
    let mut dm = RowBuilder::new(family, Column::DistanceMagic, "No", opts);
    dm.sweep(
        "m odd 3..=15, n even m < n <= 40",
        Method::Criterion,
        "odd-regular criterion",
        (3..=15usize).step_by(2).flat_map(|m| {
            (m + 1..=40)
                .filter(|n| n % 2 == 0)
                .map(move |n| (h(m, n), odd_regular_graph(m, n)))
        }),
    );
    dm.oracle_sweep(
        "m in {3, 5}, n in {6, 8, 10}",
        magic(),
        [3, 5].into_iter().flat_map(|m| {
            [6, 8, 10]
                .into_iter()
                .map(move |n| (h(m, n), harary(m, n).unwrap(), false))
        }),
    );

    let mut am = RowBuilder::new(family, Column::Antimagic, "No (if d even)", opts);
    am.sweep(
        "m odd 3..=15, n even m < n <= 40, d even 0..=8",
        Method::Criterion,
        "parity: r odd and d even",
        (3..=15usize).step_by(2).flat_map(|m| {
            (m + 1..=40).filter(|n| n % 2 == 0).flat_map(move |n| {
                (0..=8usize).step_by(2).map(move |d| {
                    (
                        format!("{}, d = {d}", h(m, n)),
                        verdict_is(check_ad_regular_bounds(m, n, d), Verdict::Infeasible),
                    )
                })
            })
        }),
    );
    am.oracle_sweep(
        "(m, n) in {(3, 6), (3, 8), (5, 8)}, d = 2",
        prog(2),
        [(3, 6), (3, 8), (5, 8)].map(|(m, n)| (h(m, n), harary(m, n).unwrap(), false)),
    );
    vec![dm.finish(), am.finish()]
}

fn rows_cycle_powers(opts: &Table1Options) -> Vec<Row> {
    let family = "H_{2m,n}";
    let reading_i = "m odd, 2m(m+1) ≡ 0 (mod n), n/gcd(n, m+1) even, n >= 2m+2";
    let in_reach = |max_n: usize| {
        (1..=7usize).step_by(2).flat_map(move |m| {
            (2 * m + 2..=max_n)
                .filter(move |&n| condition_i(m, n))
                .map(move |n| (m, n))
        })
    };

    let mut yes = RowBuilder::new(family, Column::DistanceMagic, "(i) Yes", opts)
        .reading(&format!("(i) {reading_i}: Yes"));
    yes.item(
        "m odd",
        Method::Derivation,
        "stated divisor 2m^2+m",
        "2m^2+m = m(2m+1) is odd for odd m, so n is odd and n/gcd(n, m+1) is odd: the stated condition never holds",
        Check::Agrees,
    );
    yes.sweep(
        "m odd 1..=7, n <= 400 meeting (i)",
        Method::Criterion,
        "odd-power characterization: yes",
        in_reach(400).map(|(m, n)| {
            (
                h(2 * m, n),
                verdict_is(check_cpow(n, m), Verdict::CharacterizedYes),
            )
        }),
    );
    for (m, n) in in_reach(24) {
        yes.oracle(h(2 * m, n), &harary(2 * m, n).unwrap(), magic(), true);
    }

    let mut no_even = RowBuilder::new(family, Column::Antimagic, "(i) No (if d even)", opts)
        .reading("(i): no (a, d)-distance antimagic labeling with d odd");
    no_even.sweep(
        "m odd 1..=7, n <= 400 meeting (i), d odd 1..=9",
        Method::Criterion,
        "parity: r = 2m and n even, d odd",
        in_reach(400).flat_map(|(m, n)| {
            (1..=9usize).step_by(2).map(move |d| {
                (
                    format!("{}, d = {d}", h(2 * m, n)),
                    verdict_is(check_ad_regular_bounds(2 * m, n, d), Verdict::Infeasible),
                )
            })
        }),
    );
    for d in [1, 3] {
        no_even.oracle_sweep(
            &format!("instances of (i) up to 12 vertices, d = {d}"),
            prog(d),
            in_reach(12).map(|(m, n)| (h(2 * m, n), harary(2 * m, n).unwrap(), false)),
        );
    }
    no_even.counterexample(h(6, 24), &harary(6, 24).unwrap(), prog(2));

    let mut ii = RowBuilder::new(
        family,
        Column::DistanceMagic,
        "(ii) n/gcd(n, m+1) odd: No",
        opts,
    );
    ii.sweep(
        "m odd 1..=9, 2m+1 <= n <= 300",
        Method::Criterion,
        "odd-power characterization: no",
        (1..=9usize).step_by(2).flat_map(|m| {
            (2 * m + 1..=300)
                .filter(move |&n| (n / gcd(n, m + 1)) % 2 == 1)
                .map(move |n| {
                    (
                        h(2 * m, n),
                        verdict_is(check_cpow(n, m), Verdict::CharacterizedNo),
                    )
                })
        }),
    );
    ii.sweep(
        "m = 2, 5 <= n <= 300",
        Method::Criterion,
        "cycle-square characterization: no",
        (5..=300usize)
            .filter(|&n| (n / gcd(n, 3)) % 2 == 1)
            .map(|n| {
                (
                    h(4, n),
                    verdict_is(check_cpow(n, 2), Verdict::CharacterizedNo),
                )
            }),
    );
    ii.oracle_sweep(
        "m even 2..=6, n <= 13",
        magic(),
        [2usize, 4, 6].into_iter().flat_map(|m| {
            (2 * m + 2..=13)
                .filter(move |&n| (n / gcd(n, m + 1)) % 2 == 1)
                .map(move |n| (h(2 * m, n), harary(2 * m, n).unwrap(), false))
        }),
    );
    // even m beyond m = 2 rests on the oracle range
    ii.small_scale();

    let mut iii = RowBuilder::new(
        family,
        Column::DistanceMagic,
        "(iii) m odd, 2m^2+m ≢ 0 (mod n): No",
        opts,
    )
    .reading("(iii) m odd, 2m(m+1) ≢ 0 (mod n): No");
    iii.sweep(
        "m odd 1..=9, 2m+1 <= n <= 300",
        Method::Criterion,
        "odd-power characterization: no",
        (1..=9usize).step_by(2).flat_map(|m| {
            (2 * m + 1..=300)
                .filter(move |&n| (2 * m * (m + 1)) % n != 0)
                .map(move |n| {
                    (
                        h(2 * m, n),
                        verdict_is(check_cpow(n, m), Verdict::CharacterizedNo),
                    )
                })
        }),
    );
    iii.oracle_sweep(
        "m odd 1..=3, n <= 13",
        magic(),
        [1usize, 3].into_iter().flat_map(|m| {
            (2 * m + 1..=13)
                .filter(move |&n| (2 * m * (m + 1)) % n != 0)
                .map(move |n| (h(2 * m, n), harary(2 * m, n).unwrap(), false))
        }),
    );
    let c4 = label_h_even(1);
    let observed = match &c4 {
        Ok(r) => format!(
            "{} on C_4 classifies as {}",
            r.name,
            classify(&r.graph, &r.labeling)
                .map(|p| p.kind.to_string())
                .unwrap_or_default()
        ),
        Err(e) => format!("error: {e}"),
    };
    let check = if c4.is_ok_and(|r| r.verify().unwrap_or(false)) {
        Check::Agrees
    } else {
        Check::NotCheckable
    };
    iii.row.counterexamples.push(Evidence {
        instance: "H_{2,4} = C_4 (m = 1, 2m^2+m = 3 ≢ 0 mod 4)".into(),
        method: Method::Recipe,
        expected: "distance magic".into(),
        observed,
        check,
    });

    vec![yes.finish(), no_even.finish(), ii.finish(), iii.finish()]
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn naming_probe(opts: &Table1Options) -> NamingProbe {
    let mut evidence = Vec::new();
    let resolved_ok = (1..=20usize).all(|n| {
        label_antimagic_4n1_4n4(n)
            .and_then(|r| plus_k1_extension(&r.graph, &r.labeling))
            .and_then(|(g, f)| classify(&g, &f))
            .is_ok_and(|p| {
                p.kind
                    == WeightKind::ArithmeticProgression {
                        a: (8 * n * n + 14 * n + 6) as u64,
                        d: 1,
                    }
            })
    });
    evidence.push(Evidence {
        instance: "H_{4n+1,4n+4}+K_1, n = 1..=20".into(),
        method: Method::Construction,
        expected: "Progression a=8n^2+14n+6 d=1".into(),
        observed: if resolved_ok {
            "all 20 agree".into()
        } else {
            "mismatch".into()
        },
        check: agree(resolved_ok),
    });
    let mut stated_fails = true;
    for n in 1..=2usize {
        let g = join(&harary(4 * n, 4 * n + 4).unwrap(), &empty_graph(1).unwrap());
        let spec = SearchSpec::decide(prog(1))
            .with_budget(opts.node_budget)
            .with_threads(opts.threads);
        let (observed, check) = match search(&g, &spec).map(|r| r.outcome) {
            Ok(Outcome::ExhaustedNone) => ("exhausted, none".to_string(), Check::Agrees),
            Ok(Outcome::Found(f)) => {
                stated_fails = false;
                (format!("found {:?}", f.as_slice()), Check::Disagrees)
            }
            _ => ("beyond budget".to_string(), Check::NotCheckable),
        };
        evidence.push(Evidence {
            instance: format!("{}+K_1", h(4 * n, 4 * n + 4)),
            method: Method::Oracle,
            expected: "no (a, 1) labeling".into(),
            observed,
            check,
        });
    }
    let conclusion = if resolved_ok && stated_fails {
        "the (a,1) labeling with a' = 8n^2+14n+6 exists on H_{4n+1,4n+4}+K_1; H_{4n,4n+4}+K_1 has none at the checked orders"
    } else if resolved_ok {
        "H_{4n+1,4n+4}+K_1 carries the labeling; H_{4n,4n+4}+K_1 also admits an (a,1) labeling"
    } else {
        "the extension of H_{4n+1,4n+4} did not reproduce a' = 8n^2+14n+6"
    };
    NamingProbe {
        stated: "H_{4n,4n+4}+K_1".into(),
        resolved: "H_{4n+1,4n+4}+K_1".into(),
        evidence,
        conclusion: conclusion.into(),
    }
}

/// Evaluates every row of the table.
pub fn run_table1(opts: &Table1Options) -> Table1Report {
    let mut rows = Vec::new();
    rows.extend(rows_two(opts));
    rows.extend(rows_three(opts));
    rows.extend(rows_four(opts));
    rows.extend(rows_cpow_fixed(3, &[8, 24], 300, opts));
    rows.extend(rows_cpow_fixed(5, &[12, 20, 60], 400, opts));
    rows.extend(rows_closed_families(opts));
    rows.extend(rows_odd_even(opts));
    rows.extend(rows_cycle_powers(opts));
    Table1Report {
        rows,
        naming_probe: naming_probe(opts),
    }
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RowStatus::Confirmed => "Confirmed",
            RowStatus::ConfirmedAtSmallScale => "ConfirmedAtSmallScale",
            RowStatus::ConfirmedAnalytically => "ConfirmedAnalytically",
            RowStatus::ConfirmedUnderReading => "ConfirmedUnderReading",
            RowStatus::NotCheckable => "NotCheckable",
            RowStatus::Refuted => "Refuted",
        };
        f.write_str(s)
    }
}

fn write_evidence(f: &mut fmt::Formatter<'_>, e: &Evidence, marker: &str) -> fmt::Result {
    writeln!(
        f,
        "    {marker} [{:?}] {}: expected {}; {} ({:?})",
        e.method, e.instance, e.expected, e.observed, e.check
    )
}

impl fmt::Display for Table1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let column = match row.column {
                Column::DistanceMagic => "distance magic",
                Column::Antimagic => "(a,d)-antimagic",
            };
            writeln!(
                f,
                "{:<22} {} | {} | {}",
                row.status, row.family, column, row.claim
            )?;
            if let Some(reading) = &row.reading {
                writeln!(f, "    checked as: {reading}")?;
            }
            for e in &row.evidence {
                write_evidence(f, e, "-")?;
            }
            for e in &row.counterexamples {
                write_evidence(f, e, "! against stated wording:")?;
            }
        }
        let p = &self.naming_probe;
        writeln!(
            f,
            "+K_1 naming: stated {}, resolved {}",
            p.stated, p.resolved
        )?;
        for e in &p.evidence {
            write_evidence(f, e, "-")?;
        }
        writeln!(f, "    {}", p.conclusion)
    }
}
