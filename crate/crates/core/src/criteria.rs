//! Analytic feasibility checks.
//!
//! Each check returns a [`CriterionVerdict`]. Negative verdicts
//! (`Infeasible`, `CharacterizedNo`) always carry a [`Witness`] that can be
//! re-checked mechanically: a vertex pair, a parity fact, a non-integral
//! quotient.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The labeling class is ruled out.
    Infeasible,
    /// The criterion is necessary only and does not fire.
    FeasibleUnknown,
    /// A characterization applies and says yes.
    CharacterizedYes,
    /// A characterization applies and says no.
    CharacterizedNo,
}

impl Verdict {
    pub fn is_negative(&self) -> bool {
        matches!(self, Verdict::Infeasible | Verdict::CharacterizedNo)
    }
}

/// Rule of the cycle-power characterization that decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclePowerRule {
    /// `n = 2m + 2`.
    HalfPlusOne,
    /// `m` odd: `2m(m+1) ≡ 0 (mod n)`, `n >= 2m + 2`, `n / gcd(n, m+1)` even.
    OddPower {
        divides: bool,
        long_enough: bool,
        even_quotient: bool,
    },
    /// `m = 2`: only `n = 6`.
    Square,
    /// `m >= floor(n/2)` gives `K_n`.
    Complete,
    NotCovered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    None,
    OddRegular {
        r: usize,
    },
    SharedNeighborhood {
        u: usize,
        v: usize,
        common: usize,
        degree: usize,
        /// Every qualifying pair, lexicographically.
        all_pairs: Vec<(usize, usize)>,
    },
    Twins {
        u: usize,
        v: usize,
    },
    RegularProgression {
        r: usize,
        n: usize,
        d: usize,
        /// `r(n+1) - d(n-1)`, i.e. twice the forced `a`.
        twice_a: i64,
        /// `d(n-1) <= r(n-r)`.
        within_bound: bool,
        forced_a: Option<i64>,
    },
    CyclePower {
        n: usize,
        m: usize,
        rule: CyclePowerRule,
    },
    /// Derivation for `𝒢 ∘ C_4`: the magic condition forces `a = 3b` and
    /// `a = 3n(4n+1)/(n+2)`, which exceeds the largest pair sum `8n - 1`.
    LexC4 {
        n: usize,
        a_numerator: u64,
        a_denominator: u64,
        a_max: u64,
        trace: Vec<String>,
    },
    /// Derivation for `𝒢 × C_4`: `a_0 = 2n(4n+1)/(n+1)` must be integral.
    DirectC4 {
        n: usize,
        a0_numerator: u64,
        a0_denominator: u64,
        integral: bool,
        trace: Vec<String>,
    },
    DeltaFull {
        universal: Option<usize>,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub criterion: &'static str,
    pub verdict: Verdict,
    pub witness: Witness,
}

impl CriterionVerdict {
    fn new(criterion: &'static str, verdict: Verdict, witness: Witness) -> Self {
        CriterionVerdict {
            criterion,
            verdict,
            witness,
        }
    }
}

/// An `r`-regular graph with `r` odd is not distance magic.
pub fn check_odd_regular(g: &Graph) -> CriterionVerdict {
    match g.regularity() {
        Some(r) if r % 2 == 1 => CriterionVerdict::new(
            "odd-regular",
            Verdict::Infeasible,
            Witness::OddRegular { r },
        ),
        _ => CriterionVerdict::new("odd-regular", Verdict::FeasibleUnknown, Witness::None),
    }
}

/// Pairs `u < v` with `|N(u) ∩ N(v)| = d(u) - 1 = d(v) - 1`.
pub fn shared_neighborhood_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut out = Vec::new();
    for u in 0..n {
        let du = g.degree(u);
        if du == 0 {
            continue;
        }
        for v in u + 1..n {
            if g.degree(v) == du && g.common_neighbors(u, v) == du - 1 {
                out.push((u, v));
            }
        }
    }
    out
}

/// Two vertices whose neighbourhoods differ in exactly one vertex each have
/// different weights under every labeling, so the graph is not distance magic.
pub fn check_shared_neighborhood(g: &Graph) -> CriterionVerdict {
    let pairs = shared_neighborhood_pairs(g);
    match pairs.first() {
        Some(&(u, v)) => CriterionVerdict::new(
            "shared-neighborhood",
            Verdict::Infeasible,
            Witness::SharedNeighborhood {
                u,
                v,
                common: g.common_neighbors(u, v),
                degree: g.degree(u),
                all_pairs: pairs,
            },
        ),
        None => CriterionVerdict::new(
            "shared-neighborhood",
            Verdict::FeasibleUnknown,
            Witness::None,
        ),
    }
}

/// Twin vertices (equal open neighbourhoods) always have equal weights, so a
/// graph with twins is not distance antimagic for any `d >= 1`.
pub fn check_twin_antimagic(g: &Graph) -> CriterionVerdict {
    let n = g.order();
    for u in 0..n {
        for v in u + 1..n {
            if g.neighbors(u) == g.neighbors(v) {
                return CriterionVerdict::new(
                    "twin-vertices",
                    Verdict::Infeasible,
                    Witness::Twins { u, v },
                );
            }
        }
    }
    CriterionVerdict::new("twin-vertices", Verdict::FeasibleUnknown, Witness::None)
}

/// Necessary conditions for an `r`-regular `(a, d)`-distance antimagic graph
/// on `n` vertices: `d <= r(n-r)/(n-1)` and `a = (r(n+1) - d(n-1))/2`
/// integral.
pub fn check_ad_regular_bounds(r: usize, n: usize, d: usize) -> Result<CriterionVerdict> {
    if r >= n || n < 2 {
        return Err(Error::param(format!(
            "regular progression bound needs r < n and n >= 2 (r={r}, n={n})"
        )));
    }
    let (ri, ni, di) = (r as i64, n as i64, d as i64);
    let twice_a = ri * (ni + 1) - di * (ni - 1);
    let within_bound = di * (ni - 1) <= ri * (ni - ri);
    let integral = twice_a.rem_euclid(2) == 0;
    let feasible = within_bound && integral && twice_a >= 0;
    let witness = Witness::RegularProgression {
        r,
        n,
        d,
        twice_a,
        within_bound,
        forced_a: feasible.then_some(twice_a / 2),
    };
    let verdict = if feasible {
        Verdict::FeasibleUnknown
    } else {
        Verdict::Infeasible
    };
    Ok(CriterionVerdict::new("ad-regular-bounds", verdict, witness))
}

/// `(n-3)`-regular graphs on an even number `n >= 4` of vertices can only be
/// `(a, 1)`-distance antimagic.
pub fn check_nminus3_regular(n: usize, d: usize) -> Result<CriterionVerdict> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::param(format!(
            "the (n-3)-regular criterion needs even n >= 4, got {n}"
        )));
    }
    let inner = check_ad_regular_bounds(n - 3, n, d)?;
    let verdict = if d == 1 {
        Verdict::FeasibleUnknown
    } else {
        debug_assert!(inner.verdict == Verdict::Infeasible);
        Verdict::CharacterizedNo
    };
    Ok(CriterionVerdict::new(
        "n-minus-3-regular",
        verdict,
        inner.witness,
    ))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Known characterizations of distance magic cycle powers `C_n^m`.
pub fn check_cpow(n: usize, m: usize) -> Result<CriterionVerdict> {
    if n < 3 || m < 1 || m > n / 2 {
        return Err(Error::param(format!(
            "cycle power check needs n >= 3 and 1 <= m <= n/2 (n={n}, m={m})"
        )));
    }
    let (verdict, rule) = if n == 2 * m + 2 {
        (Verdict::CharacterizedYes, CyclePowerRule::HalfPlusOne)
    } else if m % 2 == 1 {
        let divides = (2 * m * (m + 1)) % n == 0;
        let long_enough = n >= 2 * m + 2;
        let even_quotient = (n / gcd(n, m + 1)) % 2 == 0;
        let yes = divides && long_enough && even_quotient;
        (
            if yes {
                Verdict::CharacterizedYes
            } else {
                Verdict::CharacterizedNo
            },
            CyclePowerRule::OddPower {
                divides,
                long_enough,
                even_quotient,
            },
        )
    } else if m == 2 {
        let v = if n == 6 {
            Verdict::CharacterizedYes
        } else {
            Verdict::CharacterizedNo
        };
        (v, CyclePowerRule::Square)
    } else if m >= n / 2 {
        (Verdict::CharacterizedNo, CyclePowerRule::Complete)
    } else {
        (Verdict::FeasibleUnknown, CyclePowerRule::NotCovered)
    };
    Ok(CriterionVerdict::new(
        "cycle-power",
        verdict,
        Witness::CyclePower { n, m, rule },
    ))
}

fn odd_at_least_three(n: usize, what: &str) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        Err(Error::param(format!("{what} needs odd n >= 3, got {n}")))
    } else {
        Ok(())
    }
}

/// `𝒢 ∘ C_4` is never distance magic.
pub fn check_lex_c4(n: usize) -> Result<CriterionVerdict> {
    odd_at_least_three(n, "lexicographic C_4 criterion")?;
    let nn = n as u64;
    let a_numerator = 3 * nn * (4 * nn + 1);
    let a_denominator = nn + 2;
    let a_max = 8 * nn - 1;
    let mut trace = vec![
        "antipodal pairs of each C_4 copy share a sum: a on A_0, b_j on A_j".to_string(),
        "w(v_0^i) = a + 2·Σ b_j and w(v_k^i) = 2a + b_k + 2·Σ_{j ≁ k} b_j".to_string(),
        "comparing weights inside 𝒢 - v_0 forces b_j = b for every j".to_string(),
        format!("a + 2(n-1)b = 2a + (2n-5)b gives a = 3b"),
        format!(
            "1 + ... + 4n = 2a + 2b(n-1) gives a = 3n(4n+1)/(n+2) = {a_numerator}/{a_denominator}"
        ),
    ];
    let verdict = if a_numerator > a_max * a_denominator {
        trace.push(format!(
            "3n(4n+1) = {a_numerator} > (8n-1)(n+2) = {}: a exceeds the largest pair sum {a_max}",
            a_max * a_denominator
        ));
        Verdict::CharacterizedNo
    } else if a_numerator % a_denominator != 0 {
        trace.push("a is not an integer".into());
        Verdict::CharacterizedNo
    } else {
        Verdict::FeasibleUnknown
    };
    Ok(CriterionVerdict::new(
        "lex-c4",
        verdict,
        Witness::LexC4 {
            n,
            a_numerator,
            a_denominator,
            a_max,
            trace,
        },
    ))
}

/// `𝒢 × C_4` is distance magic iff `n = 5`.
pub fn check_direct_c4(n: usize) -> Result<CriterionVerdict> {
    odd_at_least_three(n, "direct C_4 criterion")?;
    let nn = n as u64;
    let a0_numerator = 2 * nn * (4 * nn + 1);
    let a0_denominator = nn + 1;
    let integral = a0_numerator % a0_denominator == 0;
    let mut trace = vec![
        "s1, s2 on A_0 and a_j, b_j on A_j are the antipodal pair sums".to_string(),
        "w(v_0^0) = Σ b_j, w(v_0^1) = Σ a_j; opposite pairs of 𝒢 - v_0 sum to a and b".into(),
        "c = (n-1)/2 · a = (n-1)/2 · b, so a = b = a_0 and s1 = s2 = s".into(),
        "2s + (n-1)a_0 = 2n(4n+1) and c = s + (n-3)/2 · a_0".into(),
        format!("a_0 = 2n(4n+1)/(n+1) = 8n - 6 + 6/(n+1) = {a0_numerator}/{a0_denominator}"),
    ];
    let verdict = if integral {
        trace.push(format!(
            "a_0 = {} is integral; the order-5 table realizes it",
            a0_numerator / a0_denominator
        ));
        Verdict::CharacterizedYes
    } else {
        trace.push("a_0 is not an integer".into());
        Verdict::CharacterizedNo
    };
    Ok(CriterionVerdict::new(
        "direct-c4",
        verdict,
        Witness::DirectC4 {
            n,
            a0_numerator,
            a0_denominator,
            integral,
            trace,
        },
    ))
}

/// For `Δ(G) = n - 1`: distance magic iff `n` is odd and
/// `G ≅ (K_{n-1} - M) + K_1`.
pub fn check_delta_full(g: &Graph) -> Result<CriterionVerdict> {
    let n = g.order();
    if g.max_degree() + 1 != n {
        return Err(Error::precondition(format!(
            "maximum degree {} is not n - 1 = {}",
            g.max_degree(),
            n - 1
        )));
    }
    let no = |universal, reason: String| {
        Ok(CriterionVerdict::new(
            "delta-full",
            Verdict::CharacterizedNo,
            Witness::DeltaFull { universal, reason },
        ))
    };
    let universal = (0..n).find(|&v| g.degree(v) + 1 == n);
    if n % 2 == 0 {
        return no(universal, format!("order {n} is even"));
    }
    for v in 0..n {
        if Some(v) != universal && g.degree(v) + 2 != n {
            return no(
                universal,
                format!(
                    "v{v} has degree {}; every non-universal vertex needs degree n - 2 = {}",
                    g.degree(v),
                    n.saturating_sub(2)
                ),
            );
        }
    }
    Ok(CriterionVerdict::new(
        "delta-full",
        Verdict::CharacterizedYes,
        Witness::DeltaFull {
            universal,
            reason: "universal vertex joined to K_{n-1} minus a perfect matching".into(),
        },
    ))
}

/// Every graph-level magic criterion that applies to `g`.
pub fn magic_criteria(g: &Graph) -> Vec<CriterionVerdict> {
    let mut out = vec![check_odd_regular(g), check_shared_neighborhood(g)];
    if let Ok(v) = check_delta_full(g) {
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cal_g, complete, cycle, harary};

    #[test]
    fn odd_regular() {
        assert_eq!(
            check_odd_regular(&harary(3, 6).unwrap()).verdict,
            Verdict::Infeasible
        );
        assert_eq!(
            check_odd_regular(&cycle(4).unwrap()).verdict,
            Verdict::FeasibleUnknown
        );
        assert_eq!(
            check_odd_regular(&Graph::empty(1)).verdict,
            Verdict::FeasibleUnknown
        );
    }

    #[test]
    fn shared_neighborhood() {
        let v = check_shared_neighborhood(&harary(3, 7).unwrap());
        assert_eq!(v.verdict, Verdict::Infeasible);
        let Witness::SharedNeighborhood { all_pairs, .. } = v.witness else {
            panic!("wrong witness")
        };
        assert!(all_pairs.contains(&(2, 5)));
        assert_eq!(
            check_shared_neighborhood(&complete(3).unwrap()).verdict,
            Verdict::Infeasible
        );
        assert_eq!(
            check_shared_neighborhood(&cycle(5).unwrap()).verdict,
            Verdict::Infeasible
        );
        assert_eq!(
            check_shared_neighborhood(&cycle(4).unwrap()).verdict,
            Verdict::FeasibleUnknown
        );
    }

    #[test]
    fn shared_neighborhood_pairs_match_set_scan() {
        // independent scan with explicit neighbour lists
        for g in [
            cycle(5).unwrap(),
            cycle(4).unwrap(),
            harary(3, 9).unwrap(),
            harary(4, 9).unwrap(),
        ] {
            let n = g.order();
            let nb: Vec<Vec<usize>> = (0..n).map(|v| g.neighbor_iter(v).collect()).collect();
            let mut expected = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let common = nb[u].iter().filter(|x| nb[v].contains(x)).count();
                    if !nb[u].is_empty() && nb[u].len() == nb[v].len() && common + 1 == nb[u].len()
                    {
                        expected.push((u, v));
                    }
                }
            }
            assert_eq!(shared_neighborhood_pairs(&g), expected);
        }
    }

    #[test]
    fn twin_antimagic() {
        assert_eq!(
            check_twin_antimagic(&cal_g(5).unwrap()).verdict,
            Verdict::Infeasible
        );
        assert_eq!(
            check_twin_antimagic(&cycle(5).unwrap()).verdict,
            Verdict::FeasibleUnknown
        );
    }

    #[test]
    fn regular_progression_bounds() {
        assert_eq!(
            check_ad_regular_bounds(3, 6, 2).unwrap().verdict,
            Verdict::Infeasible
        );
        assert_eq!(
            check_ad_regular_bounds(4, 8, 1).unwrap().verdict,
            Verdict::Infeasible
        );
        let v = check_ad_regular_bounds(2, 5, 1).unwrap();
        assert_eq!(v.verdict, Verdict::FeasibleUnknown);
        assert!(matches!(
            v.witness,
            Witness::RegularProgression {
                forced_a: Some(4),
                ..
            }
        ));
        // bound: C_5 cannot have d = 2
        assert_eq!(
            check_ad_regular_bounds(2, 5, 2).unwrap().verdict,
            Verdict::Infeasible
        );
        assert!(check_ad_regular_bounds(5, 5, 1).is_err());
    }

    #[test]
    fn nminus3() {
        assert_eq!(
            check_nminus3_regular(8, 2).unwrap().verdict,
            Verdict::CharacterizedNo
        );
        assert_eq!(
            check_nminus3_regular(8, 1).unwrap().verdict,
            Verdict::FeasibleUnknown
        );
        assert_eq!(
            check_nminus3_regular(8, 3).unwrap().verdict,
            Verdict::CharacterizedNo
        );
        assert_eq!(
            check_nminus3_regular(8, 0).unwrap().verdict,
            Verdict::CharacterizedNo
        );
        assert!(check_nminus3_regular(7, 1).is_err());
    }

    #[test]
    fn cycle_powers() {
        assert_eq!(check_cpow(6, 2).unwrap().verdict, Verdict::CharacterizedYes);
        assert_eq!(check_cpow(8, 3).unwrap().verdict, Verdict::CharacterizedYes);
        assert_eq!(check_cpow(10, 3).unwrap().verdict, Verdict::CharacterizedNo);
        assert_eq!(check_cpow(4, 1).unwrap().verdict, Verdict::CharacterizedYes);
        assert_eq!(check_cpow(7, 1).unwrap().verdict, Verdict::CharacterizedNo);
        assert_eq!(
            check_cpow(24, 3).unwrap().verdict,
            Verdict::CharacterizedYes
        );
        assert_eq!(check_cpow(12, 3).unwrap().verdict, Verdict::CharacterizedNo);
        assert_eq!(check_cpow(20, 4).unwrap().verdict, Verdict::FeasibleUnknown);
        assert!(check_cpow(6, 4).is_err());
    }

    #[test]
    fn lex_c4() {
        let v = check_lex_c4(5).unwrap();
        assert_eq!(v.verdict, Verdict::CharacterizedNo);
        let Witness::LexC4 {
            a_numerator,
            a_denominator,
            a_max,
            ..
        } = v.witness
        else {
            panic!()
        };
        assert_eq!((a_numerator, a_denominator, a_max), (315, 7, 39));
        assert_eq!(check_lex_c4(3).unwrap().verdict, Verdict::CharacterizedNo);
        for n in (3..=99).step_by(2) {
            assert!(3 * n * (4 * n + 1) > (8 * n - 1) * (n + 2));
            assert_eq!(check_lex_c4(n).unwrap().verdict, Verdict::CharacterizedNo);
        }
        assert!(check_lex_c4(4).is_err());
    }

    #[test]
    fn direct_c4() {
        let v = check_direct_c4(5).unwrap();
        assert_eq!(v.verdict, Verdict::CharacterizedYes);
        assert!(matches!(
            v.witness,
            Witness::DirectC4 {
                a0_numerator: 210,
                a0_denominator: 6,
                ..
            }
        ));
        let v = check_direct_c4(7).unwrap();
        assert_eq!(v.verdict, Verdict::CharacterizedNo);
        // 8·7 - 6 + 6/8
        assert!(matches!(
            v.witness,
            Witness::DirectC4 {
                a0_numerator: 406,
                a0_denominator: 8,
                ..
            }
        ));
        assert_eq!(
            check_direct_c4(3).unwrap().verdict,
            Verdict::CharacterizedNo
        );
        for n in (3..=99).step_by(2) {
            let yes = check_direct_c4(n).unwrap().verdict == Verdict::CharacterizedYes;
            assert_eq!(yes, n == 5);
        }
    }

    #[test]
    fn delta_full() {
        assert_eq!(
            check_delta_full(&cal_g(5).unwrap()).unwrap().verdict,
            Verdict::CharacterizedYes
        );
        assert_eq!(
            check_delta_full(&complete(4).unwrap()).unwrap().verdict,
            Verdict::CharacterizedNo
        );
        let mut edges = cal_g(5).unwrap().edges();
        edges.push((1, 3));
        let g = Graph::from_edges(5, edges).unwrap();
        assert_eq!(
            check_delta_full(&g).unwrap().verdict,
            Verdict::CharacterizedNo
        );
        assert!(check_delta_full(&cycle(5).unwrap()).is_err());
        assert_eq!(
            check_delta_full(&Graph::empty(1)).unwrap().verdict,
            Verdict::CharacterizedYes
        );
    }

    #[test]
    fn negative_verdicts_carry_witnesses() {
        let graphs = [
            harary(3, 6).unwrap(),
            harary(3, 7).unwrap(),
            complete(5).unwrap(),
        ];
        for g in &graphs {
            for v in magic_criteria(g) {
                if v.verdict.is_negative() {
                    assert_ne!(v.witness, Witness::None, "{}", v.criterion);
                }
            }
        }
    }
}
