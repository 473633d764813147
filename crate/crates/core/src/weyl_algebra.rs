//! Structure constants `m_{a,b}` of a Chevalley basis: `[X_a, X_b] = m_{a,b} X_{a+b}`.
//!
//! Magnitudes are `p + 1` where `p` is the largest integer with `b - p a` a
//! root. Signs are fixed on extraspecial pairs and propagated to every other
//! pair through the standard identities, so the whole table is determined by
//! one sign per non-simple positive root.

use std::fmt;

use num_rational::Ratio;

use crate::root_system::{Root, RootSystem};

/// A root of either sign: `index` refers to a positive root, `negative` flips it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub index: usize,
    pub negative: bool,
}

impl SignedRoot {
    pub fn pos(index: usize) -> Self {
        SignedRoot {
            index,
            negative: false,
        }
    }

    pub fn neg(index: usize) -> Self {
        SignedRoot {
            index,
            negative: true,
        }
    }

    pub fn opposite(self) -> Self {
        SignedRoot {
            index: self.index,
            negative: !self.negative,
        }
    }

    pub fn root(self, rs: &RootSystem) -> Root {
        let r = rs.root(self.index);
        if self.negative {
            r.neg()
        } else {
            r.clone()
        }
    }

    fn id(self, l: usize) -> usize {
        self.index + if self.negative { l } else { 0 }
    }

    fn from_id(id: usize, l: usize) -> Self {
        if id < l {
            SignedRoot::pos(id)
        } else {
            SignedRoot::neg(id - l)
        }
    }
}

/// Dense table over all ordered pairs of signed roots; `0` marks "no entry".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    l: usize,
    table: Vec<i64>,
}

/// Signed-root addition table; ids `0..l` are positive, `l..2l` their negatives.
struct SignedSums {
    l: usize,
    sums: Vec<Option<usize>>,
    roots: Vec<Root>,
    len2: Vec<i64>,
}

impl SignedSums {
    fn new(rs: &RootSystem) -> Self {
        let l = rs.len();
        let roots: Vec<Root> = (0..2 * l)
            .map(|id| SignedRoot::from_id(id, l).root(rs))
            .collect();
        let lookup = |r: &Root| -> Option<usize> {
            if r.is_positive() {
                rs.index_of(r)
            } else if r.is_negative() {
                rs.index_of(&r.neg()).map(|i| i + l)
            } else {
                None
            }
        };
        let mut sums = vec![None; 4 * l * l];
        for a in 0..2 * l {
            for b in 0..2 * l {
                sums[a * 2 * l + b] = lookup(&roots[a].add(&roots[b]));
            }
        }
        let len2 = roots.iter().map(|r| rs.inner(r, r)).collect();
        SignedSums {
            l,
            sums,
            roots,
            len2,
        }
    }

    fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sums[a * 2 * self.l + b]
    }

    fn neg(&self, a: usize) -> usize {
        if a < self.l {
            a + self.l
        } else {
            a - self.l
        }
    }

    /// Largest `p` with `b - p a` a root.
    fn string_below(&self, a: usize, b: usize) -> i64 {
        let na = self.neg(a);
        let mut p = 0;
        let mut cur = b;
        while let Some(next) = self.sum(cur, na) {
            p += 1;
            cur = next;
        }
        p
    }

    /// `num_len2 / den_len2 * n`, which is always integral here.
    fn scale(&self, n: i64, num: usize, den: usize) -> i64 {
        let v = Ratio::new(n * self.len2[num], self.len2[den]);
        assert!(v.is_integer(), "non-integral structure constant");
        v.to_integer()
    }
}

/// Chevalley structure constants with `+` on every extraspecial pair.
pub fn structure_constants(rs: &RootSystem) -> StructureConstants {
    StructureConstants::with_extraspecial_signs(rs, |_| 1)
}

impl StructureConstants {
    /// Builds the table from a sign choice `sign(xi)` for the extraspecial
    /// pair of each non-simple positive root `xi` (only the sign of the
    /// returned value is used).
    pub fn with_extraspecial_signs(rs: &RootSystem, sign: impl Fn(usize) -> i64) -> Self {
        let l = rs.len();
        let ss = SignedSums::new(rs);
        // positive-pair table, filled in order of the height of the sum
        let mut pos = vec![0i64; l * l];

        for xi in 0..l {
            let pairs: Vec<(usize, usize)> = (0..l)
                .flat_map(|a| (a + 1..l).map(move |b| (a, b)))
                .filter(|&(a, b)| rs.sum(a, b) == Some(xi))
                .collect();
            let Some(&(ea, eb)) = pairs.first() else {
                continue;
            };
            let s = if sign(xi) < 0 { -1 } else { 1 };
            let e_val = s * (ss.string_below(ea, eb) + 1);
            pos[ea * l + eb] = e_val;
            pos[eb * l + ea] = -e_val;

            for &(a, b) in &pairs[1..] {
                // four-term identity on (a, b, -ea, -eb)
                let nea = ss.neg(ea);
                let neb = ss.neg(eb);
                let mut acc = Ratio::from_integer(0i64);
                if let Some(s1) = ss.sum(b, nea) {
                    let t = general(&ss, &pos, b, nea) * general(&ss, &pos, a, neb);
                    acc += Ratio::new(t, ss.len2[s1]);
                }
                if let Some(s2) = ss.sum(a, nea) {
                    let t = general(&ss, &pos, nea, a) * general(&ss, &pos, b, neb);
                    acc += Ratio::new(t, ss.len2[s2]);
                }
                let v = acc * Ratio::new(ss.len2[xi], e_val);
                assert!(v.is_integer(), "non-integral structure constant");
                let v = v.to_integer();
                pos[a * l + b] = v;
                pos[b * l + a] = -v;
            }
        }

        let mut table = vec![0i64; 4 * l * l];
        for a in 0..2 * l {
            for b in 0..2 * l {
                if ss.sum(a, b).is_some() {
                    table[a * 2 * l + b] = general(&ss, &pos, a, b);
                }
            }
        }
        StructureConstants { l, table }
    }

    /// Entry for signed roots, `None` when there is no entry (`a + b` not a root).
    pub fn get(&self, a: SignedRoot, b: SignedRoot) -> Option<i64> {
        let v = self.raw(a.id(self.l), b.id(self.l));
        (v != 0).then_some(v)
    }

    /// `m_{a,b}` for positive root indices; `0` when `a + b` is not a root.
    pub fn m(&self, a: usize, b: usize) -> i64 {
        self.raw(a, b)
    }

    /// Overwrites one entry. Used to build counterexamples.
    pub fn set(&mut self, a: SignedRoot, b: SignedRoot, value: i64) {
        let idx = a.id(self.l) * 2 * self.l + b.id(self.l);
        self.table[idx] = value;
    }

    /// The table for the rescaled basis `X_a -> -X_a`, which negates every entry.
    pub fn negated(&self) -> Self {
        StructureConstants {
            l: self.l,
            table: self.table.iter().map(|v| -v).collect(),
        }
    }

    fn raw(&self, a: usize, b: usize) -> i64 {
        self.table[a * 2 * self.l + b]
    }
}

/// `N_{a,b}` for arbitrary signed ids, reduced to the positive-pair table.
fn general(ss: &SignedSums, pos: &[i64], a: usize, b: usize) -> i64 {
    let l = ss.l;
    let Some(s) = ss.sum(a, b) else {
        return 0;
    };
    match (a < l, b < l) {
        (true, true) => pos[a * l + b],
        (false, false) => -general(ss, pos, ss.neg(a), ss.neg(b)),
        (false, true) => -general(ss, pos, b, a),
        (true, false) => {
            // a + b + g = 0 gives N_{a,b}/(g,g) = N_{b,g}/(a,a) = N_{g,a}/(b,b)
            let g = ss.neg(s);
            if s < l {
                // b, g negative; N_{b,g} = -N_{-b,-g}
                let n_bg = -general(ss, pos, ss.neg(b), ss.neg(g));
                ss.scale(n_bg, g, a)
            } else {
                let n_ga = general(ss, pos, g, a);
                ss.scale(n_ga, g, b)
            }
        }
    }
}

/// One failed identity, reported with root coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `a + b` is a root but the entry is zero.
    Missing { a: Root, b: Root },
    /// An entry is present although `a + b` is not a root.
    Spurious { a: Root, b: Root },
    /// `|m_{a,b}| != p + 1`.
    Magnitude {
        a: Root,
        b: Root,
        expected: i64,
        found: i64,
    },
    /// `m_{b,a} != -m_{a,b}`.
    Antisymmetry { a: Root, b: Root },
    /// `m_{-a,-b} != -m_{a,b}`.
    Negation { a: Root, b: Root },
    /// The Jacobi identity projected on `X_{a+b+c}` does not vanish.
    Cocycle {
        a: Root,
        b: Root,
        c: Root,
        value: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Missing { a, b } => write!(f, "missing m({a},{b})"),
            Violation::Spurious { a, b } => write!(f, "spurious m({a},{b})"),
            Violation::Magnitude {
                a,
                b,
                expected,
                found,
            } => write!(f, "|m({a},{b})| = {found}, expected {expected}"),
            Violation::Antisymmetry { a, b } => write!(f, "m({b},{a}) != -m({a},{b})"),
            Violation::Negation { a, b } => write!(f, "m(-{a},-{b}) != -m({a},{b})"),
            Violation::Cocycle { a, b, c, value } => {
                write!(f, "Jacobi on ({a},{b},{c}) leaves {value}")
            }
        }
    }
}

/// Checks antisymmetry, the negation rule, the `p + 1` magnitudes and the
/// Jacobi-derived cocycle relation
/// `m_{a,b} m_{a+b,c} + m_{b,c} m_{b+c,a} + m_{c,a} m_{c+a,b} = 0`
/// on every signed triple with `a + b + c != 0`. When one pairwise sum
/// vanishes (`b = -a`) the bracket `[X_a, X_{-a}] = H_a` contributes the
/// Cartan integer `<c, a^v>` in place of the first product.
pub fn check_structure_identities(sc: &StructureConstants, rs: &RootSystem) -> Vec<Violation> {
    let ss = SignedSums::new(rs);
    let l = ss.l;
    let n = 2 * l;
    let root = |id: usize| ss.roots[id].clone();
    let m = |a: usize, b: usize| sc.raw(a, b);
    let mut out = Vec::new();

    for a in 0..n {
        for b in 0..n {
            let v = m(a, b);
            match ss.sum(a, b) {
                None => {
                    if v != 0 {
                        out.push(Violation::Spurious {
                            a: root(a),
                            b: root(b),
                        });
                    }
                }
                Some(_) => {
                    if v == 0 {
                        out.push(Violation::Missing {
                            a: root(a),
                            b: root(b),
                        });
                        continue;
                    }
                    let expected = ss.string_below(a, b) + 1;
                    if v.abs() != expected {
                        out.push(Violation::Magnitude {
                            a: root(a),
                            b: root(b),
                            expected,
                            found: v,
                        });
                    }
                    if m(b, a) != -v {
                        out.push(Violation::Antisymmetry {
                            a: root(a),
                            b: root(b),
                        });
                    }
                    if m(ss.neg(a), ss.neg(b)) != -v {
                        out.push(Violation::Negation {
                            a: root(a),
                            b: root(b),
                        });
                    }
                }
            }
        }
    }

    // m(x, y) * m(x + y, z), zero when x + y is not a root
    let chain = |x: usize, y: usize, z: usize| -> i64 {
        match ss.sum(x, y) {
            Some(s) => m(x, y) * m(s, z),
            None => 0,
        }
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let total = ss.roots[a].add(&ss.roots[b]).add(&ss.roots[c]);
                if total.is_zero() || !rs.is_root(&total) {
                    continue;
                }
                let opposite = |x: usize, y: usize| ss.neg(x) == y;
                let value = if opposite(b, c) || opposite(c, a) {
                    // covered by the rotated triple with the opposite pair first
                    continue;
                } else if opposite(a, b) {
                    rs.coroot_pairing(&ss.roots[c], &ss.roots[a]) + chain(b, c, a) + chain(c, a, b)
                } else {
                    chain(a, b, c) + chain(b, c, a) + chain(c, a, b)
                };
                if value != 0 {
                    out.push(Violation::Cocycle {
                        a: root(a),
                        b: root(b),
                        c: root(c),
                        value,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::CartanSpec;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse::<CartanSpec>().unwrap())
    }

    #[test]
    fn a2_unique_constant_has_magnitude_one() {
        let a2 = rs("A2");
        let sc = structure_constants(&a2);
        assert_eq!(sc.m(0, 1).abs(), 1);
        assert_eq!(sc.m(1, 0), -sc.m(0, 1));
        assert_eq!(sc.m(0, 2), 0);
        assert!(check_structure_identities(&sc, &a2).is_empty());
    }

    #[test]
    fn b2_short_pair_has_magnitude_two() {
        let b2 = rs("B2");
        let sc = structure_constants(&b2);
        // beta = [0,1], alpha + beta = [1,1]
        assert_eq!(sc.m(1, 2).abs(), 2);
        assert_eq!(sc.m(0, 1).abs(), 1);
    }

    #[test]
    fn injected_antisymmetry_break_is_reported() {
        let a2 = rs("A2");
        let mut sc = structure_constants(&a2);
        let v = sc.m(0, 1);
        sc.set(SignedRoot::pos(1), SignedRoot::pos(0), v);
        let report = check_structure_identities(&sc, &a2);
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::Antisymmetry { .. })));
    }

    #[test]
    fn injected_zero_is_reported_missing() {
        let a2 = rs("A2");
        let mut sc = structure_constants(&a2);
        sc.set(SignedRoot::neg(0), SignedRoot::neg(1), 0);
        let report = check_structure_identities(&sc, &a2);
        assert!(report
            .iter()
            .any(|v| matches!(v, Violation::Missing { .. })));
    }

    #[test]
    fn lone_sign_flip_breaks_jacobi() {
        // flipping one entry together with its antisymmetric/negated partners
        // keeps the pairwise identities but not the cocycle relation
        let a3 = rs("A3");
        let mut sc = structure_constants(&a3);
        let v = sc.m(0, 1);
        sc.set(SignedRoot::pos(0), SignedRoot::pos(1), -v);
        sc.set(SignedRoot::pos(1), SignedRoot::pos(0), v);
        sc.set(SignedRoot::neg(0), SignedRoot::neg(1), v);
        sc.set(SignedRoot::neg(1), SignedRoot::neg(0), -v);
        let report = check_structure_identities(&sc, &a3);
        assert!(!report.is_empty());
        assert!(report
            .iter()
            .all(|v| matches!(v, Violation::Cocycle { .. })));
    }

    #[test]
    fn identities_hold_for_small_types() {
        for s in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(s);
            let sc = structure_constants(&r);
            let report = check_structure_identities(&sc, &r);
            assert!(
                report.is_empty(),
                "{s}: {:?}",
                &report[..report.len().min(3)]
            );
        }
    }

    #[test]
    fn negated_table_still_consistent() {
        let g2 = rs("G2");
        let sc = structure_constants(&g2).negated();
        assert!(check_structure_identities(&sc, &g2).is_empty());
    }

    #[test]
    fn flipped_extraspecial_signs_stay_consistent() {
        for s in ["A3", "B3", "G2"] {
            let r = rs(s);
            let sc =
                StructureConstants::with_extraspecial_signs(
                    &r,
                    |xi| {
                        if xi % 2 == 0 {
                            -1
                        } else {
                            1
                        }
                    },
                );
            assert!(check_structure_identities(&sc, &r).is_empty(), "{s}");
        }
    }
}
