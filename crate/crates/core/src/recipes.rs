//! Closed-form labelings of Harary graphs and of `𝒢 × C_4` at order 5.
//!
//! Every recipe returns the graph together with the labeling and the weight
//! class it is expected to produce, so callers can re-run [`classify`] and
//! compare.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::constructions;
use crate::error::{Error, Result};
use crate::families::{cal_g, cycle, harary};
use crate::graph::{classify, Graph, Labeling, WeightKind};
use crate::products::{direct_product, ProductIndexing};

/// 0 for even `i`, 1 for odd `i`.
pub fn alpha(i: i64) -> i64 {
    i.rem_euclid(2)
}

/// 0 for `i <= n`, 1 above.
pub fn beta(n: i64, i: i64) -> i64 {
    i64::from(i > n)
}

#[derive(Clone, Debug, Serialize)]
pub struct Recipe {
    pub name: String,
    pub graph: Graph,
    pub labeling: Labeling,
    pub predicted: WeightKind,
}

impl Recipe {
    pub(crate) fn new(
        name: impl Into<String>,
        graph: Graph,
        labels: Vec<usize>,
        predicted: WeightKind,
    ) -> Result<Self> {
        let labeling = Labeling::new(labels)?;
        labeling.check_order(graph.order())?;
        Ok(Recipe {
            name: name.into(),
            graph,
            labeling,
            predicted,
        })
    }

    /// Classifies the labeling and reports whether it matches `predicted`.
    pub fn verify(&self) -> Result<bool> {
        Ok(classify(&self.graph, &self.labeling)?.kind == self.predicted)
    }
}

fn need_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::param(format!("{what} needs n >= 1")))
    } else {
        Ok(())
    }
}

fn uz(x: u64) -> usize {
    usize::try_from(x).expect("value fits in usize")
}

/// `H_{2n,2n+2}` with `f(v_i) = 2n+2-i` for `i <= n` and `i-n` above; magic
/// constant `2n^2 + 3n`.
pub fn label_h_even(n: usize) -> Result<Recipe> {
    need_positive(n, "label_h_even")?;
    let order = 2 * n + 2;
    let labels = (0..order)
        .map(|i| if i <= n { 2 * n + 2 - i } else { i - n })
        .collect();
    let c = (2 * n * n + 3 * n) as u64;
    Recipe::new(
        format!("h_even({n})"),
        harary(2 * n, order)?,
        labels,
        WeightKind::Magic { c },
    )
}

/// `H_{2n+1,2n+3}` with `f(v_i) = 2n+3-i` for `i <= n+1` and `i-(n+1)`
/// above; magic constant `2n^2 + 5n + 3`.
pub fn label_h_odd(n: usize) -> Result<Recipe> {
    need_positive(n, "label_h_odd")?;
    let order = 2 * n + 3;
    let labels = (0..order)
        .map(|i| {
            if i <= n + 1 {
                2 * n + 3 - i
            } else {
                i - (n + 1)
            }
        })
        .collect();
    let c = (2 * n * n + 5 * n + 3) as u64;
    Recipe::new(
        format!("h_odd({n})"),
        harary(2 * n + 1, order)?,
        labels,
        WeightKind::Magic { c },
    )
}

/// `H_{2n,2n+3}` as a `(2n^2+3n-1, 1)`-distance antimagic graph.
pub fn label_antimagic_2n_2n3(n: usize) -> Result<Recipe> {
    need_positive(n, "label_antimagic_2n_2n3")?;
    let order = 2 * n + 3;
    let labels = (0..order)
        .map(|i| {
            if i <= n + 1 || i == 2 * n + 2 {
                2 * n + 3 - i
            } else {
                i - n
            }
        })
        .collect();
    let a = (2 * n * n + 3 * n - 1) as u64;
    Recipe::new(
        format!("am_2n_2n3({n})"),
        harary(2 * n, order)?,
        labels,
        WeightKind::ArithmeticProgression { a, d: 1 },
    )
}

/// Per-vertex weight of [`label_antimagic_2n_2n3`] as a case split on `i`.
pub fn antimagic_2n_2n3_weight(n: usize, i: usize) -> Option<u64> {
    let (n, i) = (n as i64, i as i64);
    let w = if (n + 2..=2 * n + 1).contains(&i) {
        2 * n * n + 2 * n - 3 + i
    } else if i == 0 || i == n + 1 {
        2 * n * n + 4 * n - 1 + beta(0, i)
    } else if (1..=n - 1).contains(&i) {
        2 * n * n + 5 * n - i
    } else if i == 2 * n + 2 || i == n {
        2 * n * n + 5 * n + 1 - beta(n, i)
    } else {
        return None;
    };
    Some(w as u64)
}

/// `H_{4n+1,4n+4}` as an `(8n^2+10n+1, 1)`-distance antimagic graph.
pub fn label_antimagic_4n1_4n4(n: usize) -> Result<Recipe> {
    need_positive(n, "label_antimagic_4n1_4n4")?;
    let order = 4 * n + 4;
    let labels = (0..order)
        .map(|i| {
            if i <= 2 * n + 1 {
                order - i
            } else {
                uz((i as i64 - 2 * n as i64 - 2 * alpha(i as i64)) as u64)
            }
        })
        .collect();
    let a = (8 * n * n + 10 * n + 1) as u64;
    Recipe::new(
        format!("am_4n1_4n4({n})"),
        harary(4 * n + 1, order)?,
        labels,
        WeightKind::ArithmeticProgression { a, d: 1 },
    )
}

/// First phase of [`label_antimagic_h4`]: `f(v_{n-4}) = n` and
/// `f(v_i) = (k i + 1) mod n` elsewhere, `k = (n+1)/4`. The residue 0 only
/// occurs at `i = n - 4`, so every other value lies in `1..n`.
pub fn h4_temporary_labels(n: usize) -> Result<Vec<usize>> {
    if n < 7 || n % 4 != 3 {
        return Err(Error::param(format!(
            "H_(4,n) labeling needs n ≡ 3 (mod 4) and n >= 7, got {n}"
        )));
    }
    let k = (n + 1) / 4;
    Ok((0..n)
        .map(|i| if i == n - 4 { n } else { (k * i) % n + 1 })
        .collect())
}

/// `H_{4,n}`, `n ≡ 3 (mod 4)`, as an `((3n+5)/2, 1)`-distance antimagic
/// graph. The temporary labels are complemented (`n - f`) on
/// `i ≡ 0, 3 (mod 4)` with `i <= n - 7`, and on `i = n - 1`.
pub fn label_antimagic_h4(n: usize) -> Result<Recipe> {
    let temp = h4_temporary_labels(n)?;
    let labels = temp
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let flip = (i % 4 == 0 || i % 4 == 3) && i + 7 <= n || i == n - 1;
            if flip {
                n - l
            } else {
                l
            }
        })
        .collect();
    let a = ((3 * n + 5) / 2) as u64;
    Recipe::new(
        format!("am_h4({n})"),
        harary(4, n)?,
        labels,
        WeightKind::ArithmeticProgression { a, d: 1 },
    )
}

/// Rows `j = 0..4` of the `𝒢 × C_4` (order 5) table, columns `i = 0..3`.
/// Row 1 carries the repaired cells `f(v_1^2) = 1`, `f(v_1^3) = 7`.
pub const DIRECT_C4_TABLE: [[usize; 4]; 5] = [
    [16, 15, 19, 20],
    [18, 6, 1, 7],
    [11, 2, 9, 17],
    [3, 14, 13, 8],
    [10, 12, 5, 4],
];

/// Magic constant of [`label_direct_c4_5`].
pub const DIRECT_C4_MAGIC: u64 = 70;

fn direct_c4_graph() -> Result<Graph> {
    Ok(direct_product(&cal_g(5)?, &cycle(4)?))
}

fn table_labels(table: &[[usize; 4]; 5]) -> Vec<usize> {
    let idx = ProductIndexing::new(4);
    let mut labels = vec![0; 20];
    for (j, row) in table.iter().enumerate() {
        for (i, &l) in row.iter().enumerate() {
            labels[idx.index(j, i)] = l;
        }
    }
    labels
}

/// The 20-vertex distance magic labeling of `𝒢 × C_4` for `𝒢` of order 5.
pub fn label_direct_c4_5() -> Result<Recipe> {
    Recipe::new(
        "direct_c4(5)",
        direct_c4_graph()?,
        table_labels(&DIRECT_C4_TABLE),
        WeightKind::Magic { c: DIRECT_C4_MAGIC },
    )
}

/// Every value pair for the two repaired cells `(v_1^2, v_1^3)` that makes
/// the table a bijection with magic constant 70.
pub fn direct_c4_repairs() -> Result<Vec<(usize, usize)>> {
    let g = direct_c4_graph()?;
    let mut found = Vec::new();
    for x in 1..=20 {
        for y in 1..=20 {
            let mut table = DIRECT_C4_TABLE;
            table[1][2] = x;
            table[1][3] = y;
            let Ok(f) = Labeling::new(table_labels(&table)) else {
                continue;
            };
            if classify(&g, &f)?.kind == (WeightKind::Magic { c: DIRECT_C4_MAGIC }) {
                found.push((x, y));
            }
        }
    }
    Ok(found)
}

/// Recipe names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecipeName {
    HEven,
    HOdd,
    Antimagic2n2n3,
    Antimagic4n14n4,
    AntimagicH4,
    DirectC4,
    DaggerEven,
    DaggerOdd,
    PlusK1From2n2n3,
    PlusK1From4n14n4,
}

impl RecipeName {
    pub const ALL: [RecipeName; 10] = [
        RecipeName::HEven,
        RecipeName::HOdd,
        RecipeName::Antimagic2n2n3,
        RecipeName::Antimagic4n14n4,
        RecipeName::AntimagicH4,
        RecipeName::DirectC4,
        RecipeName::DaggerEven,
        RecipeName::DaggerOdd,
        RecipeName::PlusK1From2n2n3,
        RecipeName::PlusK1From4n14n4,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RecipeName::HEven => "h_even",
            RecipeName::HOdd => "h_odd",
            RecipeName::Antimagic2n2n3 => "am_2n_2n3",
            RecipeName::Antimagic4n14n4 => "am_4n1_4n4",
            RecipeName::AntimagicH4 => "am_h4",
            RecipeName::DirectC4 => "direct_c4",
            RecipeName::DaggerEven => "dagger_even",
            RecipeName::DaggerOdd => "dagger_odd",
            RecipeName::PlusK1From2n2n3 => "k1_2n_2n3",
            RecipeName::PlusK1From4n14n4 => "k1_4n1_4n4",
        }
    }

    pub fn build(&self, n: usize) -> Result<Recipe> {
        match self {
            RecipeName::HEven => label_h_even(n),
            RecipeName::HOdd => label_h_odd(n),
            RecipeName::Antimagic2n2n3 => label_antimagic_2n_2n3(n),
            RecipeName::Antimagic4n14n4 => label_antimagic_4n1_4n4(n),
            RecipeName::AntimagicH4 => label_antimagic_h4(n),
            RecipeName::DirectC4 => {
                if n != 5 {
                    return Err(Error::param(
                        "direct_c4 only exists at n = 5 (distance magic iff n = 5)",
                    ));
                }
                label_direct_c4_5()
            }
            RecipeName::DaggerEven => constructions::dagger_even_from_h_even(n),
            RecipeName::DaggerOdd => constructions::dagger_odd(n),
            RecipeName::PlusK1From2n2n3 => {
                constructions::plus_k1_recipe(&label_antimagic_2n_2n3(n)?)
            }
            RecipeName::PlusK1From4n14n4 => {
                constructions::plus_k1_recipe(&label_antimagic_4n1_4n4(n)?)
            }
        }
    }
}

impl fmt::Display for RecipeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RecipeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RecipeName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: format!(
                    "unknown recipe; expected one of {}",
                    RecipeName::ALL.map(|r| r.as_str()).join(", ")
                ),
            })
    }
}
