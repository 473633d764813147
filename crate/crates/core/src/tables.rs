//! Printable condition tables: the stored integrability and involutivity
//! tables, the per-real-index rule rows, and the rank-one and `A2` listings
//! regenerated by enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use itertools::iproduct;
use serde::Serialize;

use crate::classification::{enumerate_assignments, EnumerationFilter, Grid};
use crate::dirac_model::CaseTag;
use crate::involutivity::{triple_predicate, RULES};
use crate::root_system::{CartanSpec, Family, RootSystem};

/// Generalized complex structures `J_α, J_β, J_{α+β}` on a triple whose
/// brackets are integrable.
pub static INTEGRABILITY: [[&str; 3]; 5] = [
    ["complex", "complex", "complex"],
    ["symplectic", "complex (±J₀)", "complex (±J₀)"],
    ["complex (±J₀)", "symplectic", "complex (±J₀)"],
    ["complex (±J₀)", "complex (∓J₀)", "symplectic"],
    ["symplectic", "symplectic", "symplectic"],
];

/// Sign patterns allowed in the all-complex row.
pub static INTEGRABILITY_SIGNS: [[i64; 3]; 3] = [[1, 1, 1], [1, -1, 1], [1, -1, -1]];

/// Extra equations in the all-symplectic row.
pub static INTEGRABILITY_EXTRA: [&str; 2] = [
    "a_{α+β} x_α x_β - a_β x_α x_{α+β} - a_α x_β x_{α+β} = 0",
    "x_α x_β - x_α x_{α+β} - x_β x_{α+β} = 0",
];

/// Involutivity conditions for pairs of generalized complex structures,
/// columns `α, β, α+β, condition`. Case 4 is not split by `b/a` here.
pub static INVOLUTIVITY: [[&str; 4]; 10] = [
    ["1", "3", "4", "ε_β = ε_{α+β}"],
    ["1", "4", "4", "a₁/b₁ = a₂/b₂"],
    ["2", "3", "4", "ε_β = ε_{α+β}"],
    ["3", "3", "1", "ε_α = -ε_β"],
    ["3", "3", "2", "ε_α = -ε_β"],
    ["3", "3", "3", "ε_{α+β} - ε_α - ε_β + ε_α ε_β ε_{α+β} = 0"],
    ["3", "3", "4", "ε_α = -ε_β"],
    ["3", "4", "3", "ε_α = ε_{α+β}"],
    ["4", "4", "1", "a₁/b₁ = -a₂/b₂"],
    ["4", "4", "4", "a₁a₂b₃ - a₁b₂a₃ - b₁a₂a₃ = 0"],
];

/// Every accepted sign pattern, `±` expanded, in `(ε_α, ε_β, ε_{α+β})` order.
pub fn integrability_sign_patterns() -> BTreeSet<[i64; 3]> {
    INTEGRABILITY_SIGNS
        .iter()
        .flat_map(|p| [*p, p.map(|s| -s)])
        .collect()
}

pub fn render_integrability() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<15} {:<15} J_{{α+β}}", "J_α", "J_β");
    for row in &INTEGRABILITY {
        let _ = writeln!(out, "{:<15} {:<15} {}", row[0], row[1], row[2]);
    }
    let _ = writeln!(
        out,
        "signs in the first row: (±, ±, ±), (±, ∓, ±), (±, ∓, ∓)"
    );
    let _ = writeln!(out, "the last row additionally requires:");
    for eq in &INTEGRABILITY_EXTRA {
        let _ = writeln!(out, "  {eq}");
    }
    out
}

pub fn render_involutivity() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "α  β  α+β  condition");
    for row in &INVOLUTIVITY {
        let _ = writeln!(out, "{:<2} {:<2} {:<4} {}", row[0], row[1], row[2], row[3]);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleRow {
    pub alpha: CaseTag,
    pub beta: CaseTag,
    pub sum: CaseTag,
    pub condition: &'static str,
}

/// Rule-table rows whose tags add up to real index `k` (one of 0, 2, 4, 6).
pub fn real_index_rows(k: usize) -> Vec<RuleRow> {
    RULES
        .iter()
        .filter(|r| r.real_index() == k)
        .map(|r| RuleRow {
            alpha: r.tags[0],
            beta: r.tags[1],
            sum: r.tags[2],
            condition: r.text,
        })
        .collect()
}

pub fn render_real_index(k: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "real index {k}");
    let _ = writeln!(out, "α    β    α+β  condition");
    for r in real_index_rows(k) {
        let _ = writeln!(
            out,
            "{:<4} {:<4} {:<4} {}",
            r.alpha.as_str(),
            r.beta.as_str(),
            r.sum.as_str(),
            r.condition
        );
    }
    out
}

/// A row of alternatives per slot, e.g. `(2, 2, 3∨4.2)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroupedRow(pub Vec<BTreeSet<CaseTag>>);

impl GroupedRow {
    /// Every concrete tag tuple the row stands for.
    pub fn expand(&self) -> Vec<Vec<CaseTag>> {
        self.0.iter().fold(vec![Vec::new()], |acc, slot| {
            acc.into_iter()
                .flat_map(|prefix| {
                    slot.iter().map(move |t| {
                        let mut v = prefix.clone();
                        v.push(*t);
                        v
                    })
                })
                .collect()
        })
    }
}

impl fmt::Display for GroupedRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> = self
            .0
            .iter()
            .map(|s| s.iter().map(|t| t.as_str()).collect::<Vec<_>>().join("∨"))
            .collect();
        write!(f, "({})", slots.join(", "))
    }
}

/// Generated listing keyed by real index.
pub type GeneratedTable = BTreeMap<usize, Vec<GroupedRow>>;

// Ordering used to pick one of `(a, b, c)` and `(b, a, c)`.
fn swap_rank(t: CaseTag) -> u8 {
    match t {
        CaseTag::Two => 0,
        CaseTag::One => 1,
        CaseTag::FourOne => 2,
        CaseTag::Three => 3,
        CaseTag::FourTwo => 4,
    }
}

/// Representative of a triple up to exchanging the `α` and `β` slots.
pub fn swap_canonical(t: [CaseTag; 3]) -> [CaseTag; 3] {
    let s = [t[1], t[0], t[2]];
    if s.map(swap_rank) < t.map(swap_rank) {
        s
    } else {
        t
    }
}

/// Merges rows that differ in a single slot, taking slots in `order`.
pub fn group_rows(tuples: &BTreeSet<Vec<CaseTag>>, order: &[usize]) -> Vec<GroupedRow> {
    let mut rows: Vec<GroupedRow> = tuples
        .iter()
        .map(|t| GroupedRow(t.iter().map(|&x| BTreeSet::from([x])).collect()))
        .collect();
    for &slot in order {
        let mut merged: BTreeMap<Vec<BTreeSet<CaseTag>>, BTreeSet<CaseTag>> = BTreeMap::new();
        for row in rows {
            let mut key = row.0.clone();
            let own = key.remove(slot);
            merged.entry(key).or_default().extend(own);
        }
        rows = merged
            .into_iter()
            .map(|(mut key, own)| {
                key.insert(slot, own);
                GroupedRow(key)
            })
            .collect();
    }
    rows.sort_by_key(|r| {
        r.0.iter()
            .map(|s| s.iter().map(|&t| swap_rank(t)).min().unwrap_or(0))
            .collect::<Vec<_>>()
    });
    rows
}

/// Single-root assignments over the standard grid that pass both
/// deciders, grouped by real index.
pub fn sl2_table() -> GeneratedTable {
    let rs = Arc::new(RootSystem::build(
        CartanSpec::new(Family::A, 1).expect("A1"),
    ));
    let en = enumerate_assignments(rs, Grid::standard(), EnumerationFilter::default())
        .expect("small grid");
    let mut by_index: BTreeMap<usize, BTreeSet<CaseTag>> = BTreeMap::new();
    for e in en.iter() {
        if e.oracle.involutive && e.table_involutive() {
            by_index
                .entry(e.real_index)
                .or_default()
                .insert(e.structure.case(0).tag());
        }
    }
    by_index
        .into_iter()
        .map(|(k, tags)| (k, vec![GroupedRow(vec![tags])]))
        .collect()
}

/// Tag triples `(α, β, α+β)` realised by at least one involutive choice of
/// parameters from `grid`, up to exchanging `α` and `β`.
pub fn sl3_triples(grid: &Grid) -> BTreeMap<usize, BTreeSet<[CaseTag; 3]>> {
    let opts = grid.options();
    let mut out: BTreeMap<usize, BTreeSet<[CaseTag; 3]>> = BTreeMap::new();
    for (ca, cb, cs) in iproduct!(opts, opts, opts) {
        if triple_predicate(ca, cb, cs) {
            let tags = [ca.tag(), cb.tag(), cs.tag()];
            let k = tags.iter().map(|t| t.real_index()).sum();
            out.entry(k).or_default().insert(swap_canonical(tags));
        }
    }
    out
}

/// The `A2` listing from the standard grid, with `∨` grouping.
pub fn sl3_table() -> GeneratedTable {
    sl3_triples(&Grid::standard())
        .into_iter()
        .map(|(k, set)| {
            let tuples = set.into_iter().map(|t| t.to_vec()).collect();
            (k, group_rows(&tuples, &[2, 0, 1]))
        })
        .collect()
}

pub fn render_generated(title: &str, table: &GeneratedTable, only: Option<usize>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    for (k, rows) in table {
        if only.is_some_and(|o| o != *k) {
            continue;
        }
        let _ = writeln!(out, "real index {k}:");
        for r in rows {
            let _ = writeln!(out, "  {r}");
        }
    }
    out
}
