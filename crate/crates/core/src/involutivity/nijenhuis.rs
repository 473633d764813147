//! The Nijenhuis trilinear form on invariant planes.
//!
//! On a root triple `(α, β, α+β)` the form is nonzero on exactly twelve basis
//! patterns, all with magnitude `|m_{α,β}|`. It is extended trilinearly and
//! totally antisymmetrically; every basis triple whose roots do not form
//! such a triple evaluates to zero.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::dirac_model::{Basis, Block, DiracStructure, GeneralizedVector};
use crate::root_system::{RootSystem, SumTriple};
use crate::weyl_algebra::StructureConstants;

/// Nonzero basis patterns in slot order `(α, β, α+β)`, with their sign
/// relative to `m_{α,β}`.
pub const NONZERO_PATTERNS: [([Basis; 3], i64); 12] = {
    use Basis::*;
    [
        ([A, S, AStar], 1),
        ([A, A, SStar], -1),
        ([S, S, SStar], 1),
        ([S, A, AStar], 1),
        ([A, SStar, A], -1),
        ([A, AStar, S], 1),
        ([S, SStar, S], -1),
        ([S, AStar, A], -1),
        ([AStar, S, A], -1),
        ([AStar, A, S], 1),
        ([SStar, S, S], -1),
        ([SStar, A, A], -1),
    ]
};

/// Argument permutations with their signs; `PERMS[k].0[s]` is the argument
/// that lands in slot `s`.
const PERMS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 0, 2], -1),
    ([0, 2, 1], -1),
    ([2, 0, 1], 1),
    ([1, 2, 0], 1),
    ([2, 1, 0], -1),
];

fn pattern_sign(p: [Basis; 3]) -> i64 {
    NONZERO_PATTERNS
        .iter()
        .find(|(q, _)| *q == p)
        .map_or(0, |(_, s)| *s)
}

/// Pattern values on stored coordinates (`-S*` in slot 2).
fn coordinate_patterns() -> [[[i64; 4]; 4]; 4] {
    let mut out = [[[0; 4]; 4]; 4];
    let basis = [Basis::A, Basis::S, Basis::SStar, Basis::AStar];
    let flip = |k: usize| if k == 2 { -1 } else { 1 };
    for p in 0..4 {
        for q in 0..4 {
            for r in 0..4 {
                out[p][q][r] =
                    flip(p) * flip(q) * flip(r) * pattern_sign([basis[p], basis[q], basis[r]]);
            }
        }
    }
    out
}

pub struct NijenhuisForm<'a> {
    rs: &'a RootSystem,
    sc: &'a StructureConstants,
    coords: [[[i64; 4]; 4]; 4],
}

impl<'a> NijenhuisForm<'a> {
    pub fn new(rs: &'a RootSystem, sc: &'a StructureConstants) -> Self {
        NijenhuisForm {
            rs,
            sc,
            coords: coordinate_patterns(),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    /// Finds how to order three root indices as `(α, β, α+β)`: returns the
    /// permutation, its sign and `m_{α,β}`.
    fn orient(&self, roots: [usize; 3]) -> Option<([usize; 3], i64, i64)> {
        PERMS.iter().find_map(|&(perm, sign)| {
            let (a, b, c) = (roots[perm[0]], roots[perm[1]], roots[perm[2]]);
            (self.rs.sum(a, b) == Some(c)).then(|| (perm, sign, self.sc.m(a, b)))
        })
    }

    /// Value on three basis vectors, exact.
    pub fn basis_value(&self, args: [(usize, Basis); 3]) -> i64 {
        let roots = args.map(|(r, _)| r);
        let Some((perm, sign, m)) = self.orient(roots) else {
            return 0;
        };
        let slots = [args[perm[0]].1, args[perm[1]].1, args[perm[2]].1];
        sign * m * pattern_sign(slots)
    }

    fn block_value(&self, roots: [usize; 3], blocks: [&Block; 3]) -> Complex64 {
        let Some((perm, sign, m)) = self.orient(roots) else {
            return Complex64::new(0.0, 0.0);
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..4 {
            for q in 0..4 {
                for r in 0..4 {
                    let idx = [p, q, r];
                    let s = self.coords[idx[perm[0]]][idx[perm[1]]][idx[perm[2]]];
                    if s != 0 {
                        acc += blocks[0][p] * blocks[1][q] * blocks[2][r] * s as f64;
                    }
                }
            }
        }
        acc * (sign * m) as f64
    }

    pub fn eval(
        &self,
        u: &GeneralizedVector,
        v: &GeneralizedVector,
        w: &GeneralizedVector,
    ) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, bu) in u.blocks() {
            for (j, bv) in v.blocks() {
                for (k, bw) in w.blocks() {
                    acc += self.block_value([i, j, k], [bu, bv, bw]);
                }
            }
        }
        acc
    }
}

pub fn nijenhuis(
    form: &NijenhuisForm,
    u: &GeneralizedVector,
    v: &GeneralizedVector,
    w: &GeneralizedVector,
) -> Complex64 {
    form.eval(u, v, w)
}

/// A generator combination on which the form does not vanish.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub triple: SumTriple,
    /// generator (0 or 1) taken from the planes at `α`, `β`, `α+β`
    pub generators: [usize; 3],
    /// argument order, as positions into `(α, β, α+β)`
    pub order: [usize; 3],
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl Witness {
    pub fn describe(&self, rs: &RootSystem) -> String {
        let roots = [self.triple.alpha, self.triple.beta, self.triple.sum];
        let args: Vec<String> = self
            .order
            .iter()
            .map(|&slot| format!("g{}{}", self.generators[slot] + 1, rs.root(roots[slot])))
            .collect();
        format!("Nij({}) = {}", args.join(", "), ComplexText(self.value))
    }
}

struct ComplexText(Complex64);

impl fmt::Display for ComplexText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        if z.im == 0.0 {
            write!(f, "{}", z.re)
        } else {
            write!(f, "{}{:+}i", z.re, z.im)
        }
    }
}

/// Searches all generator combinations and argument orders on one triple.
pub fn triple_witness(
    form: &NijenhuisForm,
    triple: SumTriple,
    planes: [&[Block; 2]; 3],
    tol: f64,
) -> Option<Witness> {
    let roots = [triple.alpha, triple.beta, triple.sum];
    for g0 in 0..2 {
        for g1 in 0..2 {
            for g2 in 0..2 {
                let gens = [g0, g1, g2];
                let vecs: Vec<GeneralizedVector> = (0..3)
                    .map(|s| GeneralizedVector::from_block(roots[s], planes[s][gens[s]]))
                    .collect();
                for (order, _) in PERMS {
                    let value = form.eval(&vecs[order[0]], &vecs[order[1]], &vecs[order[2]]);
                    if value.norm() > tol {
                        return Some(Witness {
                            triple,
                            generators: gens,
                            order,
                            value,
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleVerdict {
    pub involutive: bool,
    /// per sum triple, in root-system order
    pub per_triple: Vec<Option<Witness>>,
}

impl OracleVerdict {
    pub fn witness(&self) -> Option<&Witness> {
        self.per_triple.iter().flatten().next()
    }
}

pub fn is_involutive_oracle(
    l: &DiracStructure,
    sc: &StructureConstants,
    tol: f64,
) -> OracleVerdict {
    let rs = l.root_system();
    let form = NijenhuisForm::new(rs, sc);
    oracle_with_form(l, &form, tol)
}

pub fn oracle_with_form(l: &DiracStructure, form: &NijenhuisForm, tol: f64) -> OracleVerdict {
    let planes = l.planes();
    let per_triple: Vec<Option<Witness>> = form
        .root_system()
        .sum_triples()
        .into_iter()
        .map(|t| {
            triple_witness(
                form,
                t,
                [&planes[t.alpha], &planes[t.beta], &planes[t.sum]],
                tol,
            )
        })
        .collect();
    OracleVerdict {
        involutive: per_triple.iter().all(Option::is_none),
        per_triple,
    }
}
