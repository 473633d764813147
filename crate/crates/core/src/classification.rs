//! Existence by root height, B-field action, normal forms up to B-fields,
//! and exhaustive enumeration over a finite case grid.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::dirac_model::{
    block_pairing, classify_blocks, report_for_planes, Block, DiracStructure, PerRootCase, Sign,
    SubspaceReport,
};
use crate::involutivity::{
    oracle_with_form, table_verdicts, NijenhuisForm, OracleVerdict, TripleVerdict,
};
use crate::param::Param;
use crate::root_system::RootSystem;
use crate::weyl_algebra::{structure_constants, StructureConstants};
use crate::{Error, DEFAULT_TOL};

/// Structure of real index `2k`: the `k` lowest roots (by height, then the
/// root-system order) get `Case2`, every other root `Case3` with one sign.
pub fn construct_with_real_index(rs: Arc<RootSystem>, k: usize) -> Result<DiracStructure, Error> {
    let l = rs.len();
    if k > l {
        return Err(Error::RealIndexOutOfRange { k, max: l });
    }
    let cases = (0..l)
        .map(|i| {
            if i < k {
                PerRootCase::Case2
            } else {
                PerRootCase::Case3 { eps: Sign::Plus }
            }
        })
        .collect();
    DiracStructure::new(rs, cases)
}

/// One real coefficient per positive root: `B = b (-S*) ∧ A*` on each block,
/// acting by `X + ξ -> X + ξ + i_X B`.
#[derive(Debug, Clone, PartialEq)]
pub struct BField {
    coeffs: Vec<Param>,
}

impl BField {
    pub fn new(coeffs: Vec<Param>) -> Self {
        BField { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        BField {
            coeffs: vec![Param::int(0); len],
        }
    }

    pub fn coeffs(&self) -> &[Param] {
        &self.coeffs
    }

    /// Shears one block vector.
    pub fn shear_block(b: &Param, v: &Block) -> Block {
        let b = b.to_f64();
        [v[0], v[1], v[2] - v[1] * b, v[3] + v[0] * b]
    }
}

/// Image planes of a B-transform, plus their reading as normalized cases
/// where they are one.
#[derive(Debug, Clone)]
pub struct BFieldImage {
    pub planes: Vec<[Block; 2]>,
    pub cases: Vec<Option<PerRootCase>>,
}

impl BFieldImage {
    pub fn report(&self) -> SubspaceReport {
        report_for_planes(&self.planes, DEFAULT_TOL)
    }

    /// Every image block is isotropic.
    pub fn is_isotropic(&self, tol: f64) -> bool {
        self.planes.iter().all(|[u, v]| {
            [
                block_pairing(u, u),
                block_pairing(u, v),
                block_pairing(v, v),
            ]
            .iter()
            .all(|z| z.norm() <= tol)
        })
    }

    /// The image as a structure, when every block is a normalized case.
    pub fn to_structure(&self, rs: Arc<RootSystem>) -> Option<DiracStructure> {
        let cases: Option<Vec<PerRootCase>> = self.cases.iter().cloned().collect();
        DiracStructure::new(rs, cases?).ok()
    }
}

pub fn apply_b_field(l: &DiracStructure, b: &BField) -> Result<BFieldImage, Error> {
    if b.coeffs.len() != l.cases().len() {
        return Err(Error::InvalidParameter(format!(
            "B-field has {} coefficients for {} roots",
            b.coeffs.len(),
            l.cases().len()
        )));
    }
    let planes: Vec<[Block; 2]> = l
        .planes()
        .iter()
        .zip(&b.coeffs)
        .map(|(p, coef)| p.map(|v| BField::shear_block(coef, &v)))
        .collect();
    let cases = planes
        .iter()
        .map(|[u, v]| {
            classify_blocks(u, v, DEFAULT_TOL)
                .ok()
                .and_then(|f| f.as_case(DEFAULT_TOL))
        })
        .collect();
    Ok(BFieldImage { planes, cases })
}

/// Exact image of one case under the shear with coefficient `b`.
pub fn shift_case(c: &PerRootCase, b: &Param) -> PerRootCase {
    match c {
        PerRootCase::Case1 if b.is_zero(DEFAULT_TOL) => PerRootCase::Case1,
        PerRootCase::Case1 => PerRootCase::Case41 { ratio: b.clone() },
        PerRootCase::Case41 { ratio } => {
            let r = ratio + b;
            if r.is_zero(DEFAULT_TOL) {
                PerRootCase::Case1
            } else {
                PerRootCase::Case41 { ratio: r }
            }
        }
        PerRootCase::Case42 { x, a } => PerRootCase::Case42 {
            x: x.clone(),
            a: a + &(b * x),
        },
        PerRootCase::Case2 | PerRootCase::Case3 { .. } => c.clone(),
    }
}

/// Classes of invariant planes up to B-transformation.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class")]
pub enum NormalForm {
    #[serde(rename = "a")]
    Tangent,
    #[serde(rename = "b")]
    Cotangent,
    #[serde(rename = "c")]
    Complex { epsilon: i64 },
    #[serde(rename = "d")]
    Symplectic {
        #[serde(serialize_with = "ser_param")]
        x: Param,
    },
}

fn ser_param<S: serde::Serializer>(p: &Param, s: S) -> Result<S::Ok, S::Error> {
    p.serialize(s)
}

impl NormalForm {
    pub fn label(&self) -> &'static str {
        match self {
            NormalForm::Tangent => "a",
            NormalForm::Cotangent => "b",
            NormalForm::Complex { .. } => "c",
            NormalForm::Symplectic { .. } => "d",
        }
    }

    /// The normalized case representing this class. The symplectic class
    /// is `Case42` with `a = 0`.
    pub fn representative(&self) -> PerRootCase {
        match self {
            NormalForm::Tangent => PerRootCase::Case1,
            NormalForm::Cotangent => PerRootCase::Case2,
            NormalForm::Complex { epsilon } => PerRootCase::Case3 {
                eps: if *epsilon > 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                },
            },
            NormalForm::Symplectic { x } => PerRootCase::Case42 {
                x: x.clone(),
                a: Param::int(0),
            },
        }
    }
}

pub fn b_normal_form(c: &PerRootCase) -> NormalForm {
    match c {
        PerRootCase::Case1 | PerRootCase::Case41 { .. } => NormalForm::Tangent,
        PerRootCase::Case2 => NormalForm::Cotangent,
        PerRootCase::Case3 { eps } => NormalForm::Complex {
            epsilon: eps.value(),
        },
        PerRootCase::Case42 { x, .. } => NormalForm::Symplectic { x: x.clone() },
    }
}

/// The coefficient whose shear carries `c` onto its normal form representative.
pub fn trivializing_b(c: &PerRootCase) -> Param {
    match c {
        PerRootCase::Case41 { ratio } => -ratio,
        PerRootCase::Case42 { x, a } => -&(a / x),
        _ => Param::int(0),
    }
}

/// Options offered at every root during enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    options: Vec<PerRootCase>,
}

impl Grid {
    pub fn new(options: Vec<PerRootCase>) -> Result<Self, Error> {
        if options.is_empty() {
            return Err(Error::InvalidParameter("empty grid".into()));
        }
        for o in &options {
            o.validate()?;
        }
        Ok(Grid { options })
    }

    /// `Case1`, `Case2`, `Case3(±1)`, `Case41` with `b/a ∈ {-2,-1,1,2}` and
    /// `Case42` with `x ∈ {-1,1,2}`, `a ∈ {-1,0,1}`.
    pub fn standard() -> Self {
        Grid::from_values(&[1, -1], &[-2, -1, 1, 2], &[-1, 1, 2], &[-1, 0, 1])
    }

    pub fn from_values(eps: &[i64], ratios: &[i64], xs: &[i64], a_values: &[i64]) -> Self {
        let mut options = vec![PerRootCase::Case1, PerRootCase::Case2];
        options.extend(eps.iter().map(|&e| PerRootCase::case3(e).expect("sign")));
        options.extend(
            ratios
                .iter()
                .filter(|&&r| r != 0)
                .map(|&r| PerRootCase::Case41 {
                    ratio: Param::int(r),
                }),
        );
        for &x in xs.iter().filter(|&&x| x != 0) {
            for &a in a_values {
                options.push(PerRootCase::Case42 {
                    x: Param::int(x),
                    a: Param::int(a),
                });
            }
        }
        Grid { options }
    }

    pub fn options(&self) -> &[PerRootCase] {
        &self.options
    }

    pub fn count(&self, roots: usize) -> u128 {
        (self.options.len() as u128).saturating_pow(roots as u32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
}

#[derive(Debug, Clone, Default)]
pub struct EnumerationFilter {
    pub real_index: Option<usize>,
    pub agreement: Option<Agreement>,
    /// refuse grids with more assignments than this
    pub cap: Option<u128>,
}

pub const DEFAULT_CAP: u128 = 2_000_000;

#[derive(Debug, Clone)]
pub struct Enumerated {
    /// mixed-radix position in the grid
    pub index: u128,
    pub structure: DiracStructure,
    pub real_index: usize,
    pub oracle: OracleVerdict,
    pub table: Vec<TripleVerdict>,
}

impl Enumerated {
    pub fn table_involutive(&self) -> bool {
        self.table.iter().all(|v| v.involutive)
    }

    pub fn agree(&self) -> bool {
        self.oracle.involutive == self.table_involutive()
    }
}

/// Shared data for evaluating many structures over one root system.
pub struct Enumerator {
    rs: Arc<RootSystem>,
    sc: StructureConstants,
    grid: Grid,
    total: u128,
    filter: EnumerationFilter,
}

impl Enumerator {
    pub fn total(&self) -> u128 {
        self.total
    }

    fn assignment(&self, mut index: u128) -> Vec<PerRootCase> {
        let n = self.grid.options.len() as u128;
        let l = self.rs.len();
        let mut digits = vec![0usize; l];
        // the last root varies fastest
        for d in digits.iter_mut().rev() {
            *d = (index % n) as usize;
            index /= n;
        }
        digits
            .into_iter()
            .map(|d| self.grid.options[d].clone())
            .collect()
    }

    /// Evaluates one grid position; `None` when the filter rejects it.
    pub fn evaluate(&self, index: u128) -> Option<Enumerated> {
        let structure = DiracStructure::new(Arc::clone(&self.rs), self.assignment(index)).ok()?;
        let real_index = structure.cases().iter().map(|c| c.tag().real_index()).sum();
        if self.filter.real_index.is_some_and(|k| k != real_index) {
            return None;
        }
        let form = NijenhuisForm::new(&self.rs, &self.sc);
        let oracle = oracle_with_form(&structure, &form, DEFAULT_TOL);
        let table = table_verdicts(&structure, Some(&self.sc), DEFAULT_TOL);
        let item = Enumerated {
            index,
            structure,
            real_index,
            oracle,
            table,
        };
        match self.filter.agreement {
            Some(Agreement::Agree) if !item.agree() => None,
            Some(Agreement::Disagree) if item.agree() => None,
            _ => Some(item),
        }
    }

    /// Lazy stream in grid order.
    pub fn iter(&self) -> impl Iterator<Item = Enumerated> + '_ {
        (0..self.total).filter_map(move |i| self.evaluate(i))
    }

    /// Every surviving item, evaluated in parallel and returned in grid order.
    pub fn collect_parallel(&self) -> Vec<Enumerated> {
        let total = u64::try_from(self.total).expect("grid size checked against cap");
        let mut out: Vec<Enumerated> = (0..total)
            .into_par_iter()
            .filter_map(|i| self.evaluate(i as u128))
            .collect();
        out.sort_by_key(|e| e.index);
        out
    }
}

/// Prepares enumeration of every assignment drawn from `grid`, refusing
/// grids above the cap.
pub fn enumerate_assignments(
    rs: Arc<RootSystem>,
    grid: Grid,
    filter: EnumerationFilter,
) -> Result<Enumerator, Error> {
    let total = grid.count(rs.len());
    let cap = filter.cap.unwrap_or(DEFAULT_CAP);
    if total > cap {
        return Err(Error::GridTooLarge { count: total, cap });
    }
    let sc = structure_constants(&rs);
    Ok(Enumerator {
        rs,
        sc,
        grid,
        total,
        filter,
    })
}
