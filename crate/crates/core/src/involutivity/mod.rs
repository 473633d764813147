//! Courant involutivity of invariant structures, decided two ways: by
//! evaluating the Nijenhuis form on generators, and by the per-triple rule
//! table. The two never share code paths beyond the plane generators.

mod nijenhuis;
mod rules;

use serde::Serialize;

pub use nijenhuis::{
    is_involutive_oracle, nijenhuis, oracle_with_form, triple_witness, NijenhuisForm,
    OracleVerdict, Witness, NONZERO_PATTERNS,
};
pub use rules::{decide, find_rule, triple_predicate, Condition, Rule, RuleRef, RULES};

use crate::dirac_model::{DiracStructure, PerRootCase};
use crate::root_system::SumTriple;
use crate::weyl_algebra::{structure_constants, StructureConstants};
use crate::DEFAULT_TOL;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleVerdict {
    pub triple: SumTriple,
    #[serde(skip)]
    pub cases: [PerRootCase; 3],
    pub involutive: bool,
    /// `None` means no row of the table matches the tag triple
    pub condition: Option<RuleRef>,
    pub witness: Option<Witness>,
}

impl TripleVerdict {
    pub fn condition_id(&self) -> String {
        self.condition
            .map_or_else(|| "no matching row".to_string(), |r| r.to_string())
    }
}

/// Table verdict per sum triple. Rejected triples get a witness from the
/// Nijenhuis form when `sc` is given.
pub fn table_verdicts(
    l: &DiracStructure,
    sc: Option<&StructureConstants>,
    tol: f64,
) -> Vec<TripleVerdict> {
    let rs = l.root_system();
    let form = sc.map(|sc| NijenhuisForm::new(rs, sc));
    let planes = form.as_ref().map(|_| l.planes());
    rs.sum_triples()
        .into_iter()
        .map(|t| {
            let cases = [
                l.case(t.alpha).clone(),
                l.case(t.beta).clone(),
                l.case(t.sum).clone(),
            ];
            let (involutive, condition) = decide(&cases[0], &cases[1], &cases[2], tol);
            let witness = match (&form, &planes) {
                (Some(form), Some(p)) if !involutive => {
                    triple_witness(form, t, [&p[t.alpha], &p[t.beta], &p[t.sum]], tol)
                }
                _ => None,
            };
            TripleVerdict {
                triple: t,
                cases,
                involutive,
                condition,
                witness,
            }
        })
        .collect()
}

/// Conjunction of the rule table over all sum triples, with witnesses for
/// the rejected ones.
pub fn is_involutive_table(l: &DiracStructure) -> (bool, Vec<TripleVerdict>) {
    let quick = table_verdicts(l, None, DEFAULT_TOL);
    if quick.iter().all(|v| v.involutive) {
        return (true, quick);
    }
    let sc = structure_constants(l.root_system());
    (false, table_verdicts(l, Some(&sc), DEFAULT_TOL))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dirac_model::{Basis, CaseTag, GeneralizedVector};
    use crate::param::Param;
    use crate::root_system::{CartanSpec, RootSystem};

    fn rs(s: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::build(s.parse::<CartanSpec>().unwrap()))
    }

    fn c3(e: i64) -> PerRootCase {
        PerRootCase::case3(e).unwrap()
    }

    fn c41(n: i64) -> PerRootCase {
        PerRootCase::case41(Param::int(n)).unwrap()
    }

    fn c42(x: i64, a: i64) -> PerRootCase {
        PerRootCase::case42(Param::int(x), Param::int(a)).unwrap()
    }

    #[test]
    fn listed_pattern_heads_the_list() {
        let a2 = rs("A2");
        let sc = structure_constants(&a2);
        let form = NijenhuisForm::new(&a2, &sc);
        let m = sc.m(0, 1);
        let v = |r, b| GeneralizedVector::basis(r, b);
        let val = nijenhuis(&form, &v(0, Basis::A), &v(1, Basis::S), &v(2, Basis::AStar));
        assert_eq!(val.re, m as f64);
        let swapped = nijenhuis(&form, &v(1, Basis::S), &v(0, Basis::A), &v(2, Basis::AStar));
        assert_eq!(swapped.re, -m as f64);
        let zero = nijenhuis(&form, &v(0, Basis::A), &v(1, Basis::A), &v(2, Basis::AStar));
        assert_eq!(zero.norm(), 0.0);
        // repeated root
        assert_eq!(
            form.basis_value([(0, Basis::A), (0, Basis::S), (2, Basis::AStar)]),
            0
        );
    }

    #[test]
    fn oracle_examples() {
        let a2 = rs("A2");
        let sc = structure_constants(&a2);
        let all1 = DiracStructure::new(a2.clone(), vec![PerRootCase::Case1; 3]).unwrap();
        assert!(is_involutive_oracle(&all1, &sc, 1e-9).involutive);
        let bad = DiracStructure::new(a2.clone(), vec![c3(1), c3(1), PerRootCase::Case1]).unwrap();
        let v = is_involutive_oracle(&bad, &sc, 1e-9);
        assert!(!v.involutive);
        assert!(v.witness().is_some());
        let a1 = rs("A1");
        let sc1 = structure_constants(&a1);
        let lone = DiracStructure::new(a1, vec![c42(3, 1)]).unwrap();
        assert!(is_involutive_oracle(&lone, &sc1, 1e-9).involutive);
    }

    #[test]
    fn predicate_examples() {
        assert!(triple_predicate(&c3(1), &c3(-1), &PerRootCase::Case1));
        assert!(!triple_predicate(
            &c42(1, 0),
            &c42(1, 0),
            &PerRootCase::Case1
        ));
        assert!(triple_predicate(
            &c42(1, 0),
            &c42(-1, 0),
            &PerRootCase::Case1
        ));
        assert!(triple_predicate(&c41(1), &c41(2), &c41(3)));
        assert!(!triple_predicate(&c41(1), &c41(2), &c41(4)));
        assert!(triple_predicate(
            &PerRootCase::Case2,
            &c42(5, 2),
            &PerRootCase::Case2
        ));
        assert!(triple_predicate(
            &c42(5, 2),
            &PerRootCase::Case2,
            &PerRootCase::Case2
        ));
        assert!(!triple_predicate(
            &PerRootCase::Case1,
            &PerRootCase::Case1,
            &PerRootCase::Case2
        ));
    }

    #[test]
    fn sign_cubic_accepts_six_patterns() {
        let mut accepted = Vec::new();
        for a in [1, -1] {
            for b in [1, -1] {
                for g in [1, -1] {
                    if triple_predicate(&c3(a), &c3(b), &c3(g)) {
                        accepted.push((a, b, g));
                    }
                }
            }
        }
        assert_eq!(accepted.len(), 6);
        assert!(!accepted.contains(&(1, 1, -1)));
        assert!(!accepted.contains(&(-1, -1, 1)));
    }

    #[test]
    fn table_examples() {
        let a2 = rs("A2");
        let all2 = DiracStructure::new(a2.clone(), vec![PerRootCase::Case2; 3]).unwrap();
        let (ok, verdicts) = is_involutive_table(&all2);
        assert!(ok);
        assert_eq!(verdicts.len(), 1);
        assert_eq!(verdicts[0].condition_id(), "2,2,2");
        let l = DiracStructure::new(a2.clone(), vec![PerRootCase::Case1, c3(1), c3(1)]).unwrap();
        assert!(is_involutive_table(&l).0);
        let l = DiracStructure::new(a2, vec![c3(1), c3(1), PerRootCase::Case1]).unwrap();
        let (ok, verdicts) = is_involutive_table(&l);
        assert!(!ok);
        assert!(verdicts[0].witness.is_some());
    }

    #[test]
    fn swapped_rows_resolve() {
        let (rule, swapped) =
            find_rule([CaseTag::FourTwo, CaseTag::One, CaseTag::FourTwo]).unwrap();
        assert!(swapped);
        assert_eq!(rule.text, "x_β = x_{α+β} and a_β = a_{α+β}");
        assert!(find_rule([CaseTag::One, CaseTag::One, CaseTag::Two]).is_none());
    }

    #[test]
    fn rules_are_not_stored_twice() {
        for (i, r) in RULES.iter().enumerate() {
            for s in &RULES[i + 1..] {
                assert_ne!(r.tags, s.tags);
                assert_ne!([r.tags[1], r.tags[0], r.tags[2]], s.tags);
            }
        }
    }
}
