//! Positive-root combinatorics of a semisimple Lie algebra, generated from its
//! Cartan type by root-string closure.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Cartan–Killing family letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            other => Err(Error::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A Cartan type such as `A2` or `G2`. Construction validates the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct CartanSpec {
    family: Family,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    family: String,
    rank: usize,
}

impl TryFrom<RawSpec> for CartanSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self, Error> {
        CartanSpec::new(raw.family.parse()?, raw.rank)
    }
}

impl From<CartanSpec> for RawSpec {
    fn from(spec: CartanSpec) -> Self {
        RawSpec {
            family: spec.family.to_string(),
            rank: spec.rank,
        }
    }
}

impl CartanSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self, Error> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanSpec { family, rank })
        } else {
            Err(Error::InvalidSpec(format!(
                "rank {rank} is not admissible for family {family}"
            )))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots, from the closed-form count for each family.
    pub fn expected_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Symmetric Gram matrix of the simple roots (Bourbaki numbering), scaled
    /// to integers. Short roots have squared length 2 except in G2 where the
    /// long root has squared length 6.
    fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let mut link = |i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n - 1 {
                    link(i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    link(i, i + 1, -2);
                }
            }
            Family::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 3, n - 1, -1);
            }
            Family::E => {
                // 1-3-4-5-6(-7-8), with 2 attached to 4.
                link(0, 2, -1);
                link(1, 3, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1);
                }
            }
            Family::F => {
                link(0, 1, -2);
                link(1, 2, -2);
                link(2, 3, -1);
            }
            Family::G => link(0, 1, -3),
        }
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = match self.family {
                Family::A | Family::D | Family::E => 2,
                Family::B => {
                    if i + 1 < n {
                        4
                    } else {
                        2
                    }
                }
                Family::C => {
                    if i + 1 < n {
                        2
                    } else {
                        4
                    }
                }
                Family::F => {
                    if i < 2 {
                        4
                    } else {
                        2
                    }
                }
                Family::G => {
                    if i == 0 {
                        2
                    } else {
                        6
                    }
                }
            };
        }
        g
    }
}

impl FromStr for CartanSpec {
    type Err = Error;

    /// Parses `A2`, `b3`, `E8`, ...
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::InvalidSpec("empty Cartan type".into()))?;
        let family: Family = letter.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad rank in {s:?}")))?;
        CartanSpec::new(family, rank)
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root given by its coordinates in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Root(coeffs)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i32) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Root {
    type Err = Error;

    /// Parses the canonical name `[c1,...,cn]`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::UnknownRoot(s.to_string()))?;
        if inner.is_empty() {
            return Err(Error::UnknownRoot(s.to_string()));
        }
        inner
            .split(',')
            .map(|c| c.parse::<i32>())
            .collect::<Result<Vec<_>, _>>()
            .map(Root)
            .map_err(|_| Error::UnknownRoot(s.to_string()))
    }
}

/// A triple of positive root indices `(alpha, beta, alpha + beta)` with
/// `alpha` before `beta` in the root-system order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SumTriple {
    pub alpha: usize,
    pub beta: usize,
    pub sum: usize,
}

/// The positive system of a semisimple Lie algebra. Immutable once built.
#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: CartanSpec,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
    cartan: Vec<Vec<i32>>,
    gram: Vec<Vec<i64>>,
    sums: Vec<Vec<Option<usize>>>,
}

impl RootSystem {
    /// Generates the positive roots from the simple roots by root strings:
    /// for a positive root `g` and simple root `a_i`, with `p` the number of
    /// times `a_i` can be subtracted, `g + a_i` is a root iff `p - <g, a_i^v> > 0`.
    ///
    /// Roots are ordered by height, then by descending coefficient vector,
    /// so the simple roots appear as `a_1, ..., a_n`.
    pub fn build(spec: CartanSpec) -> RootSystem {
        let n = spec.rank();
        let gram = spec.gram_matrix();
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (2 * gram[i][j] / gram[j][j]) as i32)
                    .collect()
            })
            .collect();

        let mut layers: Vec<Vec<Root>> = vec![(0..n).map(|i| Root::simple(n, i)).collect()];
        let mut known: std::collections::HashSet<Root> = layers[0].iter().cloned().collect();
        loop {
            let mut next: Vec<Root> = Vec::new();
            for g in layers.last().unwrap() {
                for i in 0..n {
                    let a = Root::simple(n, i);
                    let mut p = 0;
                    let mut cur = g.sub(&a);
                    while known.contains(&cur) {
                        p += 1;
                        cur = cur.sub(&a);
                    }
                    let pairing: i32 = (0..n).map(|j| g.0[j] * cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let up = g.add(&a);
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            known.extend(next.iter().cloned());
            layers.push(next);
        }

        let mut positive: Vec<Root> = layers.into_iter().flatten().collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        let index: HashMap<Root, usize> = positive
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let sums = positive
            .iter()
            .map(|a| {
                positive
                    .iter()
                    .map(|b| index.get(&a.add(b)).copied())
                    .collect()
            })
            .collect();
        RootSystem {
            spec,
            positive,
            index,
            cartan,
            gram,
            sums,
        }
    }

    pub fn spec(&self) -> CartanSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    /// Number of positive roots, `l`.
    pub fn len(&self) -> usize {
        self.positive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Height of a positive root of this system.
    pub fn height(&self, r: &Root) -> Result<u32, Error> {
        self.index_of(r)
            .map(|i| self.height_of(i))
            .ok_or_else(|| Error::UnknownRoot(r.to_string()))
    }

    pub fn height_of(&self, i: usize) -> u32 {
        self.positive[i].height() as u32
    }

    /// Index of `roots[i] + roots[j]` when it is a positive root.
    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sums[i][j]
    }

    /// Every unordered pair of distinct positive roots whose sum is a root,
    /// once, with the earlier root first.
    pub fn sum_triples(&self) -> Vec<SumTriple> {
        let l = self.len();
        let mut out = Vec::new();
        for alpha in 0..l {
            for beta in alpha + 1..l {
                if let Some(sum) = self.sums[alpha][beta] {
                    out.push(SumTriple { alpha, beta, sum });
                }
            }
        }
        out
    }

    /// `d_i` = number of positive roots of height `i`, for `i = 1..=max height`.
    pub fn height_histogram(&self) -> Vec<usize> {
        let max = self.positive.iter().map(Root::height).max().unwrap_or(0) as usize;
        let mut d = vec![0; max];
        for r in &self.positive {
            d[r.height() as usize - 1] += 1;
        }
        d
    }

    /// Invariant inner product of two weights given in simple-root coordinates,
    /// on the integer scale of [`CartanSpec`]'s Gram matrix.
    pub fn inner(&self, a: &Root, b: &Root) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a.0[i] as i64 * self.gram[i][j] * b.0[j] as i64;
            }
        }
        s
    }

    /// `<a, b^v> = 2 (a, b) / (b, b)`.
    pub fn coroot_pairing(&self, a: &Root, b: &Root) -> i64 {
        2 * self.inner(a, b) / self.inner(b, b)
    }

    /// Whether `r` (of either sign) is a root.
    pub fn is_root(&self, r: &Root) -> bool {
        self.index.contains_key(r) || self.index.contains_key(&r.neg())
    }
}
