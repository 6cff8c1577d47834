//! Named graph families, all built on vertices `v_0..v_{n-1}` in the
//! canonical order used by the labeling recipes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Adds every edge `{i, i + k}` (indices mod `n`) for `1 <= k <= reach`.
fn circulant_into(g: &mut Graph, reach: usize) {
    let n = g.order();
    for i in 0..n {
        for k in 1..=reach {
            let j = (i + k) % n;
            if j != i {
                g.add_edge(i, j);
            }
        }
    }
}

/// The Harary graph `H_{m,n}`: m-connected on `n` vertices with
/// `ceil(mn/2)` edges.
///
/// * `m` even: `i ~ j` iff their cyclic distance is at most `m/2`.
/// * `m` odd, `n` even: `H_{m-1,n}` plus the diameters `{i, i + n/2}`.
/// * `m`, `n` odd: `H_{m-1,n}` plus `{0, (n-1)/2}`, `{0, (n+1)/2}` and
///   `{i, i + (n+1)/2}` for `1 <= i < (n-1)/2`.
pub fn harary(m: usize, n: usize) -> Result<Graph> {
    if m < 2 || m >= n {
        return Err(Error::param(format!("harary({m},{n}) needs 2 <= m < n")));
    }
    let mut g = Graph::empty(n);
    circulant_into(&mut g, m / 2);
    if m % 2 == 1 {
        if n % 2 == 0 {
            for i in 1..=n / 2 {
                g.add_edge(i, (i + n / 2) % n);
            }
        } else {
            g.add_edge(0, (n - 1) / 2);
            g.add_edge(0, (n + 1) / 2);
            for i in 1..(n - 1) / 2 {
                g.add_edge(i, (i + (n + 1) / 2) % n);
            }
        }
    }
    Ok(g)
}

/// `C_n^m`: cycle vertices joined when their cyclic distance is at most `m`.
pub fn cycle_power(n: usize, m: usize) -> Result<Graph> {
    if n < 3 || m < 1 {
        return Err(Error::param(format!(
            "cycle_power({n},{m}) needs n >= 3 and m >= 1"
        )));
    }
    let mut g = Graph::empty(n);
    circulant_into(&mut g, m.min(n / 2));
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    cycle_power(n, 1)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("complete graph needs n >= 1"));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, j);
        }
    }
    Ok(g)
}

/// `K_n - M` with the fixed perfect matching `{i, i + n/2}`.
pub fn complete_minus_matching(n: usize) -> Result<Graph> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::param(format!(
            "complete_minus_matching({n}) needs a positive even order"
        )));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if j != i + n / 2 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

pub fn empty_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("empty graph needs n >= 1"));
    }
    Ok(Graph::empty(n))
}

/// `(K_{n-1} - M) + K_1` for odd `n`: `v_0` is universal and `v_i`, `v_j`
/// (`1 <= i, j <= n-1`) are adjacent unless `j ≡ i + (n-1)/2 (mod n-1)`.
pub fn cal_g(n: usize) -> Result<Graph> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::param(format!("cal_g({n}) needs odd n >= 3")));
    }
    let mut g = Graph::empty(n);
    let half = (n - 1) / 2;
    for i in 1..n {
        g.add_edge(0, i);
        for j in i + 1..n {
            if (j - i) % (n - 1) != half {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// A named, parameterised family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    Harary { m: usize, n: usize },
    CyclePower { n: usize, m: usize },
    Complete(usize),
    CompleteMinusMatching(usize),
    Empty(usize),
    CalG(usize),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            FamilySpec::Harary { m, n } => harary(m, n),
            FamilySpec::CyclePower { n, m } => cycle_power(n, m),
            FamilySpec::Complete(n) => complete(n),
            FamilySpec::CompleteMinusMatching(n) => complete_minus_matching(n),
            FamilySpec::Empty(n) => empty_graph(n),
            FamilySpec::CalG(n) => cal_g(n),
        }
    }

    /// Short prefix and parameter count of each family in the string syntax.
    pub(crate) fn keyword_arity(keyword: &str) -> Option<usize> {
        match keyword {
            "harary" | "cpow" => Some(2),
            "kn" | "knm" | "empty" | "calg" => Some(1),
            _ => None,
        }
    }

    pub(crate) fn from_parts(keyword: &str, params: &[usize]) -> Option<FamilySpec> {
        Some(match (keyword, params) {
            ("harary", &[m, n]) => FamilySpec::Harary { m, n },
            ("cpow", &[n, m]) => FamilySpec::CyclePower { n, m },
            ("kn", &[n]) => FamilySpec::Complete(n),
            ("knm", &[n]) => FamilySpec::CompleteMinusMatching(n),
            ("empty", &[n]) => FamilySpec::Empty(n),
            ("calg", &[n]) => FamilySpec::CalG(n),
            _ => return None,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Harary { m, n } => write!(f, "harary:{m},{n}"),
            FamilySpec::CyclePower { n, m } => write!(f, "cpow:{n},{m}"),
            FamilySpec::Complete(n) => write!(f, "kn:{n}"),
            FamilySpec::CompleteMinusMatching(n) => write!(f, "knm:{n}"),
            FamilySpec::Empty(n) => write!(f, "empty:{n}"),
            FamilySpec::CalG(n) => write!(f, "calg:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<crate::products::GraphSpec>()? {
            crate::products::GraphSpec::Family(f) => Ok(f),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected a plain family, not a product".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harary_case_two() {
        let g = harary(3, 6).unwrap();
        assert_eq!(g.size(), 9);
        for (i, j) in [(1, 4), (2, 5), (0, 3)] {
            assert!(g.has_edge(i, j));
        }
        assert_eq!(g.regularity(), Some(3));
    }

    #[test]
    fn harary_case_three() {
        let g = harary(3, 5).unwrap();
        assert_eq!(g.size(), 8);
        assert_eq!(g.degrees(), vec![4, 3, 3, 3, 3]);
        assert_eq!(g.degree(0), 4);
    }

    #[test]
    fn harary_complete_when_m_is_n_minus_one() {
        assert_eq!(harary(4, 5).unwrap(), complete(5).unwrap());
        assert_eq!(harary(3, 4).unwrap(), complete(4).unwrap());
        assert_eq!(harary(2, 3).unwrap(), complete(3).unwrap());
    }

    #[test]
    fn harary_parameter_errors() {
        assert!(harary(1, 5).is_err());
        assert!(harary(5, 5).is_err());
        assert!(cycle_power(2, 1).is_err());
        assert!(cycle_power(5, 0).is_err());
        assert!(complete_minus_matching(5).is_err());
        assert!(cal_g(6).is_err());
        assert!(cal_g(1).is_err());
    }

    #[test]
    fn cycle_power_identities() {
        assert_eq!(cycle_power(6, 2).unwrap(), harary(4, 6).unwrap());
        assert_eq!(
            cycle_power(5, 1).unwrap().edges(),
            vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(cycle_power(4, 2).unwrap(), complete(4).unwrap());
        assert_eq!(cycle_power(7, 9).unwrap(), complete(7).unwrap());
    }

    #[test]
    fn small_matching_graphs() {
        assert_eq!(
            complete_minus_matching(4).unwrap().edges(),
            vec![(0, 1), (0, 3), (1, 2), (2, 3)]
        );
        assert_eq!(complete_minus_matching(6).unwrap(), harary(4, 6).unwrap());
        assert_eq!(empty_graph(2).unwrap().size(), 0);
    }

    #[test]
    fn cal_g_shapes() {
        assert_eq!(cal_g(5).unwrap(), harary(3, 5).unwrap());
        assert_eq!(cal_g(3).unwrap().edges(), vec![(0, 1), (0, 2)]);
        let g7 = cal_g(7).unwrap();
        assert!(!g7.has_edge(1, 4));
        assert_eq!(g7.degree(0), 6);
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "harary:3,5",
            "cpow:8,2",
            "kn:4",
            "knm:6",
            "empty:2",
            "calg:7",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("harary:3".parse::<FamilySpec>().is_err());
        assert!("petersen:10".parse::<FamilySpec>().is_err());
    }
}
