//! The complexified space `(m ⊕ m*) ⊗ C` root block by root block.
//!
//! Each positive root carries a 4-dimensional block with ordered basis
//! `A, S, -S*, A*`. Vectors store coordinates in exactly that basis, so a
//! coefficient `c` in slot 2 means `-c S*`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg;
use crate::param::Param;
use crate::root_system::{Root, RootSystem};
use crate::{Error, DEFAULT_TOL};

/// Coordinates in one root block.
pub type Block = [Complex64; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Named basis vectors of a root block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    A,
    S,
    SStar,
    AStar,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::A, Basis::S, Basis::SStar, Basis::AStar];

    pub fn coords(self) -> Block {
        match self {
            Basis::A => [ONE, ZERO, ZERO, ZERO],
            Basis::S => [ZERO, ONE, ZERO, ZERO],
            Basis::SStar => [ZERO, ZERO, -ONE, ZERO],
            Basis::AStar => [ZERO, ZERO, ZERO, ONE],
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::A => "A",
            Basis::S => "S",
            Basis::SStar => "S*",
            Basis::AStar => "A*",
        })
    }
}

/// Finitely supported vector, keyed by positive-root index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GeneralizedVector {
    blocks: BTreeMap<usize, Block>,
}

impl GeneralizedVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_block(root: usize, block: Block) -> Self {
        let mut blocks = BTreeMap::new();
        blocks.insert(root, block);
        GeneralizedVector { blocks }
    }

    pub fn basis(root: usize, b: Basis) -> Self {
        Self::from_block(root, b.coords())
    }

    /// Coordinates at `root`, zero when unsupported.
    pub fn block(&self, root: usize) -> Block {
        self.blocks.get(&root).copied().unwrap_or([ZERO; 4])
    }

    pub fn blocks(&self) -> impl Iterator<Item = (usize, &Block)> {
        self.blocks.iter().map(|(k, v)| (*k, v))
    }

    pub fn support(&self) -> Vec<usize> {
        self.blocks.keys().copied().collect()
    }

    pub fn add(&self, other: &GeneralizedVector) -> GeneralizedVector {
        let mut out = self.clone();
        for (&k, b) in &other.blocks {
            let e = out.blocks.entry(k).or_insert([ZERO; 4]);
            for i in 0..4 {
                e[i] += b[i];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> GeneralizedVector {
        GeneralizedVector {
            blocks: self
                .blocks
                .iter()
                .map(|(&k, b)| (k, b.map(|z| z * s)))
                .collect(),
        }
    }

    pub fn conj(&self) -> GeneralizedVector {
        GeneralizedVector {
            blocks: self
                .blocks
                .iter()
                .map(|(&k, b)| (k, b.map(|z| z.conj())))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Result<Sign, Error> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidParameter(format!(
                "epsilon must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// The five normalized invariant planes of a root block.
#[derive(Debug, Clone, PartialEq)]
pub enum PerRootCase {
    /// `span{A, S}`
    Case1,
    /// `span{-S*, A*}`
    Case2,
    /// `span{A + iεS, A* + iεS*}`
    Case3 { eps: Sign },
    /// `span{A + rA*, S + rS*}` with real `r = b₁/a₁ != 0`
    Case41 { ratio: Param },
    /// `span{xA + (a - i)A*, xS + (a - i)S*}` with real `x != 0`
    Case42 { x: Param, a: Param },
}

impl PerRootCase {
    pub fn case3(eps: i64) -> Result<Self, Error> {
        Ok(PerRootCase::Case3 {
            eps: Sign::from_int(eps)?,
        })
    }

    pub fn case41(ratio: Param) -> Result<Self, Error> {
        let c = PerRootCase::Case41 { ratio };
        c.validate()?;
        Ok(c)
    }

    /// Canonicalizes `(a₁, b₁)` to the ratio `b₁/a₁`, keeping exact inputs exact.
    pub fn case41_from_pair(a1: &Param, b1: &Param) -> Result<Self, Error> {
        if a1.is_zero(DEFAULT_TOL) || b1.is_zero(DEFAULT_TOL) {
            return Err(Error::InvalidParameter(
                "case 4.1 needs nonzero a1 and b1".into(),
            ));
        }
        Self::case41(b1 / a1)
    }

    /// Complex `(a₁, b₁)`; the ratio must be real within `tol`.
    pub fn case41_from_complex(a1: Complex64, b1: Complex64, tol: f64) -> Result<Self, Error> {
        if a1.norm() <= tol || b1.norm() <= tol {
            return Err(Error::InvalidParameter(
                "case 4.1 needs nonzero a1 and b1".into(),
            ));
        }
        let r = b1 / a1;
        if r.im.abs() > tol {
            return Err(Error::InvalidParameter(format!(
                "case 4.1 needs b1/a1 real, got {r}"
            )));
        }
        Self::case41(Param::Float(r.re))
    }

    pub fn case42(x: Param, a: Param) -> Result<Self, Error> {
        let c = PerRootCase::Case42 { x, a };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            PerRootCase::Case41 { ratio } if ratio.is_zero(DEFAULT_TOL) => {
                Err(Error::InvalidParameter("case 4.1 needs b1/a1 != 0".into()))
            }
            PerRootCase::Case42 { x, .. } if x.is_zero(DEFAULT_TOL) => {
                Err(Error::InvalidParameter("case 4.2 needs x != 0".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn tag(&self) -> CaseTag {
        match self {
            PerRootCase::Case1 => CaseTag::One,
            PerRootCase::Case2 => CaseTag::Two,
            PerRootCase::Case3 { .. } => CaseTag::Three,
            PerRootCase::Case41 { .. } => CaseTag::FourOne,
            PerRootCase::Case42 { .. } => CaseTag::FourTwo,
        }
    }

    /// Generator coordinates in one block.
    pub fn blocks(&self) -> [Block; 2] {
        match self {
            PerRootCase::Case1 => [Basis::A.coords(), Basis::S.coords()],
            PerRootCase::Case2 => [[ZERO, ZERO, ONE, ZERO], Basis::AStar.coords()],
            PerRootCase::Case3 { eps } => {
                let ie = I * eps.value() as f64;
                [[ONE, ie, ZERO, ZERO], [ZERO, ZERO, -ie, ONE]]
            }
            PerRootCase::Case41 { ratio } => {
                let r = Complex64::new(ratio.to_f64(), 0.0);
                [[ONE, ZERO, ZERO, r], [ZERO, ONE, -r, ZERO]]
            }
            PerRootCase::Case42 { x, a } => {
                let x = Complex64::new(x.to_f64(), 0.0);
                let d = Complex64::new(a.to_f64(), -1.0);
                [[x, ZERO, ZERO, d], [ZERO, x, -d, ZERO]]
            }
        }
    }
}

impl fmt::Display for PerRootCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerRootCase::Case1 => write!(f, "1"),
            PerRootCase::Case2 => write!(f, "2"),
            PerRootCase::Case3 { eps } => {
                write!(f, "3(ε={})", if *eps == Sign::Plus { "+1" } else { "-1" })
            }
            PerRootCase::Case41 { ratio } => write!(f, "4.1(b/a={ratio})"),
            PerRootCase::Case42 { x, a } => write!(f, "4.2(x={x}, a={a})"),
        }
    }
}

/// Case label without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4.1")]
    FourOne,
    #[serde(rename = "4.2")]
    FourTwo,
}

impl CaseTag {
    pub const ALL: [CaseTag; 5] = [
        CaseTag::One,
        CaseTag::Two,
        CaseTag::Three,
        CaseTag::FourOne,
        CaseTag::FourTwo,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::One => "1",
            CaseTag::Two => "2",
            CaseTag::Three => "3",
            CaseTag::FourOne => "4.1",
            CaseTag::FourTwo => "4.2",
        }
    }

    /// Real index of any plane carrying this tag.
    pub fn real_index(self) -> usize {
        match self {
            CaseTag::Three | CaseTag::FourTwo => 0,
            _ => 2,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown case {s:?}")))
    }
}

/// One plane per positive root, in root-system order.
#[derive(Debug, Clone)]
pub struct DiracStructure {
    rs: Arc<RootSystem>,
    cases: Vec<PerRootCase>,
}

impl DiracStructure {
    pub fn new(rs: Arc<RootSystem>, cases: Vec<PerRootCase>) -> Result<Self, Error> {
        if cases.len() != rs.len() {
            return Err(Error::IncompleteAssignment(format!(
                "{} cases for {} positive roots",
                cases.len(),
                rs.len()
            )));
        }
        for c in &cases {
            c.validate()?;
        }
        Ok(DiracStructure { rs, cases })
    }

    /// Builds from named roots; every positive root must appear exactly once.
    pub fn from_assignment(
        rs: Arc<RootSystem>,
        assignment: impl IntoIterator<Item = (Root, PerRootCase)>,
    ) -> Result<Self, Error> {
        let mut slots: Vec<Option<PerRootCase>> = vec![None; rs.len()];
        for (root, case) in assignment {
            let i = rs
                .index_of(&root)
                .ok_or_else(|| Error::UnknownRoot(root.to_string()))?;
            if slots[i].is_some() {
                return Err(Error::IncompleteAssignment(format!(
                    "root {root} assigned twice"
                )));
            }
            case.validate()
                .map_err(|e| Error::InvalidParameter(format!("root {root}: {e}")))?;
            slots[i] = Some(case);
        }
        let missing: Vec<String> = slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(i, _)| rs.root(i).to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteAssignment(format!(
                "missing {}",
                missing.join(", ")
            )));
        }
        let cases = slots.into_iter().map(Option::unwrap).collect();
        Ok(DiracStructure { rs, cases })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn shared_root_system(&self) -> Arc<RootSystem> {
        Arc::clone(&self.rs)
    }

    pub fn cases(&self) -> &[PerRootCase] {
        &self.cases
    }

    pub fn case(&self, root: usize) -> &PerRootCase {
        &self.cases[root]
    }

    pub fn tags(&self) -> Vec<CaseTag> {
        self.cases.iter().map(PerRootCase::tag).collect()
    }

    pub fn planes(&self) -> Vec<[Block; 2]> {
        self.cases.iter().map(PerRootCase::blocks).collect()
    }
}

pub fn generators(c: &PerRootCase, root: usize) -> (GeneralizedVector, GeneralizedVector) {
    let [g1, g2] = c.blocks();
    (
        GeneralizedVector::from_block(root, g1),
        GeneralizedVector::from_block(root, g2),
    )
}

/// Gram form of one block: `<A,S*> = 1`, `<S,A*> = -1`, with `-S*` stored.
pub fn block_pairing(u: &Block, v: &Block) -> Complex64 {
    -(u[0] * v[2] + u[2] * v[0]) - (u[1] * v[3] + u[3] * v[1])
}

pub fn pairing(v: &GeneralizedVector, w: &GeneralizedVector) -> Complex64 {
    v.blocks().map(|(k, b)| block_pairing(b, &w.block(k))).sum()
}

pub fn is_isotropic(vs: &[GeneralizedVector], tol: f64) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, v)| vs[i..].iter().all(|w| pairing(v, w).norm() <= tol))
}

/// Families of isotropic planes in one block. Ratios are `b/a` for the
/// one-parameter families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneFamily {
    /// `span{A, S}`
    A,
    /// `span{S*, A*}`
    B,
    /// `span{A, A*}`
    C,
    /// `span{S, S*}`
    D,
    /// `span{aA + bS, aA* + bS*}`, `a, b != 0`
    E {
        ratio: Complex64,
    },
    /// `span{aA + bA*, aS + bS*}`, `a, b != 0`
    F {
        ratio: Complex64,
    },
    NotMaximalIsotropic,
}

impl PlaneFamily {
    pub fn label(&self) -> &'static str {
        match self {
            PlaneFamily::A => "a",
            PlaneFamily::B => "b",
            PlaneFamily::C => "c",
            PlaneFamily::D => "d",
            PlaneFamily::E { .. } => "e",
            PlaneFamily::F { .. } => "f",
            PlaneFamily::NotMaximalIsotropic => "not maximal isotropic",
        }
    }

    /// The normalized case this plane is, if it is one of the five.
    pub fn as_case(&self, tol: f64) -> Option<PerRootCase> {
        match *self {
            PlaneFamily::A => Some(PerRootCase::Case1),
            PlaneFamily::B => Some(PerRootCase::Case2),
            PlaneFamily::E { ratio } => {
                if (ratio - I).norm() <= tol {
                    Some(PerRootCase::Case3 { eps: Sign::Plus })
                } else if (ratio + I).norm() <= tol {
                    Some(PerRootCase::Case3 { eps: Sign::Minus })
                } else {
                    None
                }
            }
            PlaneFamily::F { ratio } if ratio.im.abs() <= tol => Some(PerRootCase::Case41 {
                ratio: Param::Float(ratio.re),
            }),
            PlaneFamily::F { ratio } => {
                // (a - i)/x = ratio
                let x = -1.0 / ratio.im;
                Some(PerRootCase::Case42 {
                    x: Param::Float(x),
                    a: Param::Float(ratio.re * x),
                })
            }
            _ => None,
        }
    }
}

fn single_root_block(v: &GeneralizedVector) -> Result<(Option<usize>, Block), Error> {
    let live: Vec<(usize, &Block)> = v
        .blocks()
        .filter(|(_, b)| b.iter().any(|z| z.norm() > 0.0))
        .collect();
    match live.as_slice() {
        [] => Ok((None, [ZERO; 4])),
        [(k, b)] => Ok((Some(*k), **b)),
        _ => Err(Error::InvalidParameter(
            "plane generators must live on a single root".into(),
        )),
    }
}

fn plane_blocks(g1: &GeneralizedVector, g2: &GeneralizedVector) -> Result<[Block; 2], Error> {
    let (r1, b1) = single_root_block(g1)?;
    let (r2, b2) = single_root_block(g2)?;
    if let (Some(r1), Some(r2)) = (r1, r2) {
        if r1 != r2 {
            return Err(Error::InvalidParameter(
                "plane generators must live on a single root".into(),
            ));
        }
    }
    Ok([b1, b2])
}

pub fn classify_plane(
    g1: &GeneralizedVector,
    g2: &GeneralizedVector,
    tol: f64,
) -> Result<PlaneFamily, Error> {
    let [b1, b2] = plane_blocks(g1, g2)?;
    classify_blocks(&b1, &b2, tol)
}

/// Classification by Plücker coordinates `p_ij = u_i v_j - u_j v_i`.
pub fn classify_blocks(u: &Block, v: &Block, tol: f64) -> Result<PlaneFamily, Error> {
    let rows = vec![u.to_vec(), v.to_vec()];
    if linalg::rank(&rows, tol) < 2 {
        return Err(Error::DependentGenerators);
    }
    let nu = linalg::max_norm(u);
    let nv = linalg::max_norm(v);
    let u = u.map(|z| z / nu);
    let v = v.map(|z| z / nv);
    let iso = [
        block_pairing(&u, &u),
        block_pairing(&u, &v),
        block_pairing(&v, &v),
    ];
    if iso.iter().any(|z| z.norm() > tol) {
        return Ok(PlaneFamily::NotMaximalIsotropic);
    }

    let p = |i: usize, j: usize| u[i] * v[j] - u[j] * v[i];
    let (p01, p02, p03, p12, p13, p23) = (p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(1, 3), p(2, 3));
    let scale = [p01, p02, p03, p12, p13, p23]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let small = |z: Complex64| z.norm() <= tol * scale;

    if small(p01) && small(p23) {
        // span{aA + bS, aA* + bS*}: a² = p03, ab = p13, b² = -p12
        let (aa, bb, ab) = (p03, -p12, p13);
        if small(bb) {
            return Ok(PlaneFamily::C);
        }
        if small(aa) {
            return Ok(PlaneFamily::D);
        }
        let ratio = if aa.norm() >= bb.norm() {
            ab / aa
        } else {
            bb / ab
        };
        return Ok(PlaneFamily::E { ratio });
    }
    if small(p03) && small(p12) {
        // span{aA + bA*, aS + bS*}: a² = p01, ab = -p02, b² = p23
        let (aa, bb, ab) = (p01, p23, -p02);
        if small(bb) {
            return Ok(PlaneFamily::A);
        }
        if small(aa) {
            return Ok(PlaneFamily::B);
        }
        let ratio = if aa.norm() >= bb.norm() {
            ab / aa
        } else {
            bb / ab
        };
        return Ok(PlaneFamily::F { ratio });
    }
    Ok(PlaneFamily::NotMaximalIsotropic)
}

/// Infinitesimal rotation of the block: `A -> S`, `S -> -A`, `-S* -> A*`, `A* -> S*`.
pub fn rotate(b: &Block) -> Block {
    [-b[1], b[0], -b[3], b[2]]
}

pub fn is_invariant(g1: &GeneralizedVector, g2: &GeneralizedVector, tol: f64) -> bool {
    match plane_blocks(g1, g2) {
        Ok([b1, b2]) => is_invariant_blocks(&b1, &b2, tol),
        Err(_) => false,
    }
}

pub fn is_invariant_blocks(u: &Block, v: &Block, tol: f64) -> bool {
    let base = vec![u.to_vec(), v.to_vec()];
    let r = linalg::rank(&base, tol);
    [u, v].iter().all(|g| {
        let mut rows = base.clone();
        rows.push(rotate(g).to_vec());
        linalg::rank(&rows, tol) == r
    })
}

/// `dim_C(L ∩ conj L)` of one plane.
pub fn plane_real_index(plane: &[Block; 2], tol: f64) -> usize {
    let mut rows: Vec<Vec<Complex64>> = plane.iter().map(|b| b.to_vec()).collect();
    rows.extend(plane.iter().map(|b| linalg::conj(b)));
    4 - linalg::rank(&rows, tol)
}

pub fn per_root_real_index(c: &PerRootCase) -> usize {
    plane_real_index(&c.blocks(), DEFAULT_TOL)
}

pub fn real_index(l: &DiracStructure) -> usize {
    l.planes()
        .iter()
        .map(|p| plane_real_index(p, DEFAULT_TOL))
        .sum()
}

/// Dimensions of the tangent projection `E` and related spaces, summed
/// over roots. `omega_delta[i]` is `Im ε(A_i, S_i)` on roots where
/// `E ∩ conj E` is the whole tangent block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceReport {
    pub real_index: usize,
    pub order: usize,
    pub r#type: usize,
    pub dim_e: usize,
    pub dim_e_cap_ebar: usize,
    pub dim_e_plus_ebar: usize,
    pub dim_k: usize,
    pub omega_delta: Vec<Option<f64>>,
}

pub fn subspace_report(l: &DiracStructure) -> SubspaceReport {
    report_for_planes(&l.planes(), DEFAULT_TOL)
}

pub fn report_for_planes(planes: &[[Block; 2]], tol: f64) -> SubspaceReport {
    let mut rep = SubspaceReport {
        real_index: 0,
        order: 0,
        r#type: 0,
        dim_e: 0,
        dim_e_cap_ebar: 0,
        dim_e_plus_ebar: 0,
        dim_k: 0,
        omega_delta: Vec::with_capacity(planes.len()),
    };
    for plane in planes {
        let tangents: Vec<Vec<Complex64>> = plane.iter().map(|b| vec![b[0], b[1]]).collect();
        let dim_e = linalg::rank(&tangents, tol);
        let mut both = tangents.clone();
        both.extend(tangents.iter().map(|t| linalg::conj(t)));
        let dim_sum = linalg::rank(&both, tol);
        let k = plane_real_index(plane, tol);

        rep.dim_e += dim_e;
        rep.dim_e_plus_ebar += dim_sum;
        rep.dim_e_cap_ebar += 2 * dim_e - dim_sum;
        rep.dim_k += k;
        rep.real_index += k;
        rep.order += 2 - dim_sum;
        rep.r#type += dim_sum - dim_e;
        rep.omega_delta
            .push(omega_on_block(plane, &tangents, dim_e, tol));
    }
    rep
}

fn omega_on_block(
    plane: &[Block; 2],
    tangents: &[Vec<Complex64>],
    dim_e: usize,
    tol: f64,
) -> Option<f64> {
    if dim_e < 2 {
        return None;
    }
    let coeffs = linalg::solve_in_span(tangents, &[ONE, ZERO], tol)?;
    // the A* coefficient of the element of L lying over A
    let e = coeffs[0] * plane[0][3] + coeffs[1] * plane[1][3];
    Some(e.im)
}
