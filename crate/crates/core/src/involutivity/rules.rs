//! Per-triple involutivity rules, stored as data.
//!
//! A rule is keyed by the case tags at `(α, β, α+β)`. Lookup also tries the
//! `α ↔ β` swap of the triple, so each unordered shape is stored once.
//! Tag triples with no rule are never involutive.

use std::fmt;

use serde::Serialize;

use crate::dirac_model::{CaseTag, PerRootCase};
use crate::param::Param;
use crate::DEFAULT_TOL;

/// Algebraic condition on the parameters of a tag triple. Slot numbers are
/// positions in `(α, β, α+β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Always,
    /// `ε_i = ε_j`
    EpsEqual(usize, usize),
    /// `ε_i = -ε_j`
    EpsOpposite(usize, usize),
    /// `ε_γ - ε_α - ε_β + ε_α ε_β ε_γ = 0`
    SignCubic,
    /// `a_γ x_α x_β - a_β x_α x_γ - a_α x_β x_γ = 0` and
    /// `x_α x_β - x_α x_γ - x_β x_γ = 0`
    SymplecticTriple,
    /// `x_i = x_j` and `a_i = a_j`
    SymplecticEqual(usize, usize),
    /// `x_i = -x_j` and `a_i = a_j`
    SymplecticOpposite(usize, usize),
    /// `x_β = x_γ` and `r_α = a_γ/x_γ - a_β/x_β`
    RatioDifference,
    /// `x_α = -x_β` and `r_γ = a_α/x_α + a_β/x_β`
    RatioSum,
    /// `r_γ = r_α + r_β`
    RatioAdditive,
    /// `r_i = r_j`
    RatioEqual(usize, usize),
    /// `r_i = -r_j`
    RatioOpposite(usize, usize),
}

#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub tags: [CaseTag; 3],
    pub condition: Condition,
    pub text: &'static str,
}

impl Rule {
    pub fn real_index(&self) -> usize {
        self.tags.iter().map(|t| t.real_index()).sum()
    }
}

macro_rules! rule {
    ($a:ident, $b:ident, $c:ident, $cond:expr, $text:expr) => {
        Rule {
            tags: [CaseTag::$a, CaseTag::$b, CaseTag::$c],
            condition: $cond,
            text: $text,
        }
    };
}

const ALWAYS: &str = "always";
const EPS_AB_OPP: &str = "ε_α = -ε_β";
const EPS_B_AB: &str = "ε_β = ε_{α+β}";

pub static RULES: &[Rule] = &[
    // real index 0
    rule!(Three, Three, Three, Condition::SignCubic,
        "ε_{α+β} - ε_α - ε_β + ε_α ε_β ε_{α+β} = 0"),
    rule!(Three, Three, FourTwo, Condition::EpsOpposite(0, 1), EPS_AB_OPP),
    rule!(Three, FourTwo, Three, Condition::EpsEqual(0, 2), "ε_α = ε_{α+β}"),
    rule!(FourTwo, FourTwo, FourTwo, Condition::SymplecticTriple,
        "a_{α+β} x_α x_β - a_β x_α x_{α+β} - a_α x_β x_{α+β} = 0 and x_α x_β - x_α x_{α+β} - x_β x_{α+β} = 0"),
    // real index 2
    rule!(Three, Three, One, Condition::EpsOpposite(0, 1), EPS_AB_OPP),
    rule!(Three, Three, Two, Condition::EpsOpposite(0, 1), EPS_AB_OPP),
    rule!(Three, Three, FourOne, Condition::EpsOpposite(0, 1), EPS_AB_OPP),
    rule!(One, Three, Three, Condition::EpsEqual(1, 2), EPS_B_AB),
    rule!(Two, Three, Three, Condition::EpsEqual(1, 2), EPS_B_AB),
    rule!(FourOne, Three, Three, Condition::EpsEqual(1, 2), EPS_B_AB),
    rule!(One, FourTwo, FourTwo, Condition::SymplecticEqual(1, 2),
        "x_β = x_{α+β} and a_β = a_{α+β}"),
    rule!(FourTwo, FourTwo, One, Condition::SymplecticOpposite(0, 1),
        "x_α = -x_β and a_α = a_β"),
    rule!(FourOne, FourTwo, FourTwo, Condition::RatioDifference,
        "x_β = x_{α+β} and b_α/a_α = a_{α+β}/x_{α+β} - a_β/x_β"),
    rule!(FourTwo, FourTwo, FourOne, Condition::RatioSum,
        "x_α = -x_β and b_{α+β}/a_{α+β} = a_β/x_β + a_α/x_α"),
    // real index 4
    rule!(Two, Two, Three, Condition::Always, ALWAYS),
    rule!(Two, Two, FourTwo, Condition::Always, ALWAYS),
    rule!(Two, Three, Two, Condition::Always, ALWAYS),
    rule!(Two, FourTwo, Two, Condition::Always, ALWAYS),
    // real index 6
    rule!(One, One, One, Condition::Always, ALWAYS),
    rule!(Two, One, Two, Condition::Always, ALWAYS),
    rule!(Two, Two, One, Condition::Always, ALWAYS),
    rule!(Two, Two, Two, Condition::Always, ALWAYS),
    rule!(Two, Two, FourOne, Condition::Always, ALWAYS),
    rule!(Two, FourOne, Two, Condition::Always, ALWAYS),
    rule!(FourOne, FourOne, FourOne, Condition::RatioAdditive,
        "b_{α+β}/a_{α+β} = b_β/a_β + b_α/a_α"),
    rule!(One, FourOne, FourOne, Condition::RatioEqual(1, 2),
        "b_β/a_β = b_{α+β}/a_{α+β}"),
    rule!(FourOne, FourOne, One, Condition::RatioOpposite(0, 1),
        "b_α/a_α = -b_β/a_β"),
];

/// Which rule decided a triple, and whether it matched after swapping `α, β`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleRef {
    pub row: [CaseTag; 3],
    pub swapped: bool,
}

impl fmt::Display for RuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.row[0], self.row[1], self.row[2])?;
        if self.swapped {
            write!(f, " (α↔β)")?;
        }
        Ok(())
    }
}

pub fn find_rule(tags: [CaseTag; 3]) -> Option<(&'static Rule, bool)> {
    let swapped = [tags[1], tags[0], tags[2]];
    RULES
        .iter()
        .find(|r| r.tags == tags)
        .map(|r| (r, false))
        .or_else(|| RULES.iter().find(|r| r.tags == swapped).map(|r| (r, true)))
}

fn eps(c: &PerRootCase) -> i64 {
    match c {
        PerRootCase::Case3 { eps } => eps.value(),
        _ => unreachable!("rule slot expects case 3"),
    }
}

fn ratio(c: &PerRootCase) -> &Param {
    match c {
        PerRootCase::Case41 { ratio } => ratio,
        _ => unreachable!("rule slot expects case 4.1"),
    }
}

fn symplectic(c: &PerRootCase) -> (&Param, &Param) {
    match c {
        PerRootCase::Case42 { x, a } => (x, a),
        _ => unreachable!("rule slot expects case 4.2"),
    }
}

impl Condition {
    /// Evaluates on cases already matching the rule's tags.
    pub fn holds(&self, cases: [&PerRootCase; 3], tol: f64) -> bool {
        let eq = |p: &Param, q: &Param| p.approx_eq(q, tol);
        match *self {
            Condition::Always => true,
            Condition::EpsEqual(i, j) => eps(cases[i]) == eps(cases[j]),
            Condition::EpsOpposite(i, j) => eps(cases[i]) == -eps(cases[j]),
            Condition::SignCubic => {
                let (a, b, g) = (eps(cases[0]), eps(cases[1]), eps(cases[2]));
                g - a - b + a * b * g == 0
            }
            Condition::SymplecticTriple => {
                let (xa, aa) = symplectic(cases[0]);
                let (xb, ab) = symplectic(cases[1]);
                let (xg, ag) = symplectic(cases[2]);
                let first = &(&(ag * &(xa * xb)) - &(ab * &(xa * xg))) - &(aa * &(xb * xg));
                let second = &(&(xa * xb) - &(xa * xg)) - &(xb * xg);
                first.is_zero(tol) && second.is_zero(tol)
            }
            Condition::SymplecticEqual(i, j) => {
                let (xi, ai) = symplectic(cases[i]);
                let (xj, aj) = symplectic(cases[j]);
                eq(xi, xj) && eq(ai, aj)
            }
            Condition::SymplecticOpposite(i, j) => {
                let (xi, ai) = symplectic(cases[i]);
                let (xj, aj) = symplectic(cases[j]);
                eq(xi, &-xj) && eq(ai, aj)
            }
            Condition::RatioDifference => {
                let r = ratio(cases[0]);
                let (xb, ab) = symplectic(cases[1]);
                let (xg, ag) = symplectic(cases[2]);
                eq(xb, xg) && eq(r, &(&(ag / xg) - &(ab / xb)))
            }
            Condition::RatioSum => {
                let (xa, aa) = symplectic(cases[0]);
                let (xb, ab) = symplectic(cases[1]);
                let r = ratio(cases[2]);
                eq(xa, &-xb) && eq(r, &(&(aa / xa) + &(ab / xb)))
            }
            Condition::RatioAdditive => {
                let sum = ratio(cases[0]) + ratio(cases[1]);
                eq(ratio(cases[2]), &sum)
            }
            Condition::RatioEqual(i, j) => eq(ratio(cases[i]), ratio(cases[j])),
            Condition::RatioOpposite(i, j) => eq(ratio(cases[i]), &-ratio(cases[j])),
        }
    }
}

/// Verdict of the rule table on one case triple, with the deciding row.
pub fn decide(
    alpha: &PerRootCase,
    beta: &PerRootCase,
    sum: &PerRootCase,
    tol: f64,
) -> (bool, Option<RuleRef>) {
    let tags = [alpha.tag(), beta.tag(), sum.tag()];
    match find_rule(tags) {
        None => (false, None),
        Some((rule, swapped)) => {
            let cases = if swapped {
                [beta, alpha, sum]
            } else {
                [alpha, beta, sum]
            };
            let row = RuleRef {
                row: rule.tags,
                swapped,
            };
            (rule.condition.holds(cases, tol), Some(row))
        }
    }
}

pub fn triple_predicate(alpha: &PerRootCase, beta: &PerRootCase, sum: &PerRootCase) -> bool {
    decide(alpha, beta, sum, DEFAULT_TOL).0
}
