//! Join, lexicographic and direct products.
//!
//! Product vertices `(j, i)` (j from the first factor, i from the second)
//! are numbered `j * h + i` where `h` is the order of the second factor, so
//! for `G x C_4` the block `A_j = {v_j^0, .., v_j^3}` occupies `4j..4j+3`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductIndexing {
    pub block: usize,
}

impl ProductIndexing {
    pub fn new(block: usize) -> Self {
        ProductIndexing { block }
    }

    pub fn index(&self, j: usize, i: usize) -> usize {
        debug_assert!(i < self.block);
        j * self.block + i
    }

    pub fn pair(&self, v: usize) -> (usize, usize) {
        (v / self.block, v % self.block)
    }
}

/// `g + h`: disjoint union (g first) plus every edge between the parts.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let (a, b) = (g.order(), h.order());
    let mut out = Graph::empty(a + b);
    for (i, j) in g.edges() {
        out.add_edge(i, j);
    }
    for (i, j) in h.edges() {
        out.add_edge(a + i, a + j);
    }
    for i in 0..a {
        for j in 0..b {
            out.add_edge(i, a + j);
        }
    }
    out
}

/// `g ∘ h`: `(j,i) ~ (k,l)` iff `j ~ k`, or `j = k` and `i ~ l`.
pub fn lexicographic(g: &Graph, h: &Graph) -> Graph {
    let idx = ProductIndexing::new(h.order());
    let mut out = Graph::empty(g.order() * h.order());
    for (j, k) in g.edges() {
        for i in 0..h.order() {
            for l in 0..h.order() {
                out.add_edge(idx.index(j, i), idx.index(k, l));
            }
        }
    }
    for j in 0..g.order() {
        for (i, l) in h.edges() {
            out.add_edge(idx.index(j, i), idx.index(j, l));
        }
    }
    out
}

/// `g × h`: `(j,i) ~ (k,l)` iff `j ~ k` and `i ~ l`.
pub fn direct_product(g: &Graph, h: &Graph) -> Graph {
    let idx = ProductIndexing::new(h.order());
    let mut out = Graph::empty(g.order() * h.order());
    for (j, k) in g.edges() {
        for (i, l) in h.edges() {
            out.add_edge(idx.index(j, i), idx.index(k, l));
            out.add_edge(idx.index(j, l), idx.index(k, i));
        }
    }
    out
}

/// A family or a product expression such as `dir(calg:5,cpow:4,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphSpec {
    Family(FamilySpec),
    Lex(Box<GraphSpec>, Box<GraphSpec>),
    Direct(Box<GraphSpec>, Box<GraphSpec>),
    Join(Box<GraphSpec>, Box<GraphSpec>),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        Ok(match self {
            GraphSpec::Family(f) => f.build()?,
            GraphSpec::Lex(a, b) => lexicographic(&a.build()?, &b.build()?),
            GraphSpec::Direct(a, b) => direct_product(&a.build()?, &b.build()?),
            GraphSpec::Join(a, b) => join(&a.build()?, &b.build()?),
        })
    }
}

impl From<FamilySpec> for GraphSpec {
    fn from(f: FamilySpec) -> Self {
        GraphSpec::Family(f)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Family(s) => s.fmt(f),
            GraphSpec::Lex(a, b) => write!(f, "lex({a},{b})"),
            GraphSpec::Direct(a, b) => write!(f, "dir({a},{b})"),
            GraphSpec::Join(a, b) => write!(f, "join({a},{b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            input: self.src.to_string(),
            reason: format!("{} (at byte {})", reason.into(), self.pos),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn number(&mut self) -> Result<usize> {
        let w = self.word();
        w.parse()
            .map_err(|_| self.err(format!("expected an integer, found `{w}`")))
    }

    fn spec(&mut self) -> Result<GraphSpec> {
        let keyword = self.word();
        match keyword {
            "lex" | "dir" | "join" => {
                self.eat('(')?;
                let a = Box::new(self.spec()?);
                self.eat(',')?;
                let b = Box::new(self.spec()?);
                self.eat(')')?;
                Ok(match keyword {
                    "lex" => GraphSpec::Lex(a, b),
                    "dir" => GraphSpec::Direct(a, b),
                    _ => GraphSpec::Join(a, b),
                })
            }
            _ => {
                let arity = FamilySpec::keyword_arity(keyword)
                    .ok_or_else(|| self.err(format!("unknown family `{keyword}`")))?;
                self.eat(':')?;
                let mut params = vec![self.number()?];
                for _ in 1..arity {
                    self.eat(',')?;
                    params.push(self.number()?);
                }
                let spec = FamilySpec::from_parts(keyword, &params).expect("arity checked");
                Ok(GraphSpec::Family(spec))
            }
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if !p.rest().is_empty() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cal_g, complete, complete_minus_matching, cycle, empty_graph, harary};

    /// Maps `g`'s vertices through `perm` and compares edge sets with `h`.
    fn same_under(g: &Graph, perm: &[usize], h: &Graph) -> bool {
        g.relabel(perm).unwrap() == *h
    }

    #[test]
    fn join_examples() {
        // the universal K_1 lands last; rotating it to v_0 gives cal_g(5)
        let g = join(
            &complete_minus_matching(4).unwrap(),
            &empty_graph(1).unwrap(),
        );
        assert_eq!(g.degree(4), 4);
        assert!(same_under(&g, &[1, 2, 3, 4, 0], &cal_g(5).unwrap()));

        let g = join(&empty_graph(2).unwrap(), &empty_graph(2).unwrap());
        assert!(same_under(&g, &[0, 2, 1, 3], &cycle(4).unwrap()));

        // H_{2,4} + K_2^c: interleave so that twins land at distance 3
        let g = join(&harary(2, 4).unwrap(), &empty_graph(2).unwrap());
        assert!(same_under(&g, &[0, 1, 3, 4, 2, 5], &harary(4, 6).unwrap()));
    }

    #[test]
    fn lexicographic_examples() {
        let g = lexicographic(&complete(2).unwrap(), &empty_graph(2).unwrap());
        assert_eq!(g.size(), 4);
        assert_eq!(g.regularity(), Some(2));
        assert!(same_under(&g, &[0, 2, 1, 3], &cycle(4).unwrap()));

        let g = lexicographic(&cal_g(5).unwrap(), &cycle(4).unwrap());
        assert_eq!(g.degree(0), 4 * 4 + 2);

        assert_eq!(
            lexicographic(&empty_graph(1).unwrap(), &cycle(4).unwrap()),
            cycle(4).unwrap()
        );
    }

    #[test]
    fn direct_examples() {
        let g = direct_product(&complete(2).unwrap(), &complete(2).unwrap());
        assert_eq!(g.edges(), vec![(0, 3), (1, 2)]);

        let g = direct_product(&cal_g(5).unwrap(), &cycle(4).unwrap());
        let idx = ProductIndexing::new(4);
        let mut expected: Vec<usize> = (1..5)
            .flat_map(|j| [idx.index(j, 1), idx.index(j, 3)])
            .collect();
        expected.sort_unstable();
        assert_eq!(g.neighbor_iter(0).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn product_sizes() {
        let g = cal_g(5).unwrap();
        let h = cycle(4).unwrap();
        let lex = lexicographic(&g, &h);
        assert_eq!(lex.order(), 20);
        assert_eq!(lex.size(), g.size() * 16 + 5 * h.size());
        assert_eq!(direct_product(&g, &h).size(), 2 * g.size() * h.size());
    }

    #[test]
    fn indexing_is_bijective() {
        let idx = ProductIndexing::new(4);
        for v in 0..20 {
            let (j, i) = idx.pair(v);
            assert_eq!(idx.index(j, i), v);
        }
    }

    #[test]
    fn parse_products() {
        let s = "dir(calg:5,cpow:4,1)";
        let spec: GraphSpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
        assert_eq!(spec.build().unwrap().order(), 20);
        let nested: GraphSpec = "join( lex(kn:2, empty:2), kn:1 )".parse().unwrap();
        assert_eq!(nested.to_string(), "join(lex(kn:2,empty:2),kn:1)");
        assert_eq!(nested.build().unwrap().order(), 5);
        for bad in [
            "lex(kn:2)",
            "dir(kn:2,kn:2",
            "kn:2 extra",
            "cpow:4",
            "harary:x,5",
        ] {
            assert!(bad.parse::<GraphSpec>().is_err(), "{bad}");
        }
    }
}
