//! JSON structure files: an algebra plus one case per named positive root.

use std::collections::BTreeMap;
use std::sync::Arc;

use flagdirac::{CartanSpec, DiracStructure, Error, Param, PerRootCase, Root, RootSystem};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub algebra: CartanSpec,
    /// keyed by simple-root coefficients, e.g. `"[1,1]"`
    pub assignment: BTreeMap<String, CaseEntry>,
}

/// A real coefficient, or a complex one written `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Real(Param),
    Complex([f64; 2]),
}

impl Coefficient {
    fn to_complex(&self) -> Complex64 {
        match self {
            Coefficient::Real(p) => Complex64::new(p.to_f64(), 0.0),
            Coefficient::Complex([re, im]) => Complex64::new(*re, *im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", deny_unknown_fields)]
pub enum CaseEntry {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three { epsilon: i64 },
    #[serde(rename = "4.1")]
    FourOne { a1: Coefficient, b1: Coefficient },
    #[serde(rename = "4.2")]
    FourTwo { x: Param, a: Param },
}

impl CaseEntry {
    pub fn to_case(&self) -> Result<PerRootCase, Error> {
        match self {
            CaseEntry::One => Ok(PerRootCase::Case1),
            CaseEntry::Two => Ok(PerRootCase::Case2),
            CaseEntry::Three { epsilon } => PerRootCase::case3(*epsilon),
            CaseEntry::FourOne {
                a1: Coefficient::Real(a1),
                b1: Coefficient::Real(b1),
            } => PerRootCase::case41_from_pair(a1, b1),
            CaseEntry::FourOne { a1, b1 } => PerRootCase::case41_from_complex(
                a1.to_complex(),
                b1.to_complex(),
                flagdirac::DEFAULT_TOL,
            ),
            CaseEntry::FourTwo { x, a } => PerRootCase::case42(x.clone(), a.clone()),
        }
    }

    /// Case 4.1 is written with `a1 = 1`.
    pub fn from_case(c: &PerRootCase) -> CaseEntry {
        match c {
            PerRootCase::Case1 => CaseEntry::One,
            PerRootCase::Case2 => CaseEntry::Two,
            PerRootCase::Case3 { eps } => CaseEntry::Three {
                epsilon: eps.value(),
            },
            PerRootCase::Case41 { ratio } => CaseEntry::FourOne {
                a1: Coefficient::Real(Param::int(1)),
                b1: Coefficient::Real(ratio.clone()),
            },
            PerRootCase::Case42 { x, a } => CaseEntry::FourTwo {
                x: x.clone(),
                a: a.clone(),
            },
        }
    }
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<StructureFile, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_structure(&self) -> Result<DiracStructure, Error> {
        let rs = Arc::new(RootSystem::build(self.algebra));
        let mut pairs = Vec::with_capacity(self.assignment.len());
        for (name, entry) in &self.assignment {
            let root: Root = name.parse()?;
            let case = entry
                .to_case()
                .map_err(|e| Error::InvalidParameter(format!("root {name}: {e}")))?;
            pairs.push((root, case));
        }
        DiracStructure::from_assignment(rs, pairs)
    }

    pub fn from_structure(l: &DiracStructure) -> StructureFile {
        let rs = l.root_system();
        StructureFile {
            algebra: rs.spec(),
            assignment: l
                .cases()
                .iter()
                .enumerate()
                .map(|(i, c)| (rs.root(i).to_string(), CaseEntry::from_case(c)))
                .collect(),
        }
    }
}
