//! Trisection diagrams at the level of homology, singular bridge-trisection
//! bookkeeping, and pullbacks of diagrams along branched covers.
//!
//! A cut system is recorded by the classes of its curves in `H₁(Σ) = ℤ^{2g}`
//! with the standard symplectic form. Sector `λ` is bounded by the systems
//! `λ` and `λ + 1` (indices mod 3, `1 = α`, `2 = β`, `3 = γ`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Permutation, Word};
use crate::braid::{closure_component_count, identify_closure, BraidError, BraidLetter, BraidWord, ClosureTag};
use crate::cover::{build_cover, BranchedCoverSpec, CoverError};
use crate::lattice::{
    lattice_intersection, lattice_sum, quotient_invariants, LatticeError, QuotientInvariants, Sublattice,
};
use crate::surface::{abelianize, intersection_number, CurveClass, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrisectError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("inconsistent genus: diagram has genus {genus} but {system} curve {index} has {len} coordinates")]
    GenusMismatch { genus: usize, system: CutSystem, index: usize, len: usize },
    #[error("invalid diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),
    #[error("sector {lambda}: not a #^k(S1xS2) splitting homologically (quotient {quotient})")]
    NotSplitting { lambda: usize, quotient: String },
    #[error("sector index must be 1, 2 or 3, got {0}")]
    BadSector(usize),
    #[error("unknown region tag `{0}`")]
    UnknownRegion(String),
    #[error("unsupported local model `{0}`")]
    UnsupportedTag(String),
    #[error("invalid bridge data: {}", .0.join("; "))]
    BridgeData(Vec<String>),
    #[error("incompatible pullback input: {0}")]
    Incompatible(String),
    #[error("cover is disconnected; component genera {0:?}")]
    Disconnected(Vec<usize>),
    #[error("lift is not a homological cut system: {0}")]
    NotCutSystem(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutSystem {
    Alpha,
    Beta,
    Gamma,
}

impl CutSystem {
    pub const ALL: [CutSystem; 3] = [CutSystem::Alpha, CutSystem::Beta, CutSystem::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            CutSystem::Alpha => "alpha",
            CutSystem::Beta => "beta",
            CutSystem::Gamma => "gamma",
        }
    }

    /// System number `λ ∈ {1, 2, 3}`.
    pub fn from_index(lambda: usize) -> Result<Self, TrisectError> {
        match lambda {
            1 => Ok(CutSystem::Alpha),
            2 => Ok(CutSystem::Beta),
            3 => Ok(CutSystem::Gamma),
            _ => Err(TrisectError::BadSector(lambda)),
        }
    }

    pub fn next(self) -> Self {
        match self {
            CutSystem::Alpha => CutSystem::Beta,
            CutSystem::Beta => CutSystem::Gamma,
            CutSystem::Gamma => CutSystem::Alpha,
        }
    }
}

impl fmt::Display for CutSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Curve words on the punctured base surface, one per cut curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveWords {
    pub alpha: Vec<Word>,
    pub beta: Vec<Word>,
    pub gamma: Vec<Word>,
}

impl CurveWords {
    pub fn system(&self, s: CutSystem) -> &[Word] {
        match s {
            CutSystem::Alpha => &self.alpha,
            CutSystem::Beta => &self.beta,
            CutSystem::Gamma => &self.gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrisectionDiagram {
    pub genus: usize,
    pub alpha: Vec<CurveClass>,
    pub beta: Vec<CurveClass>,
    pub gamma: Vec<CurveClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<CurveWords>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TrisectionDiagram {
    pub fn new(genus: usize, alpha: Vec<CurveClass>, beta: Vec<CurveClass>, gamma: Vec<CurveClass>) -> Self {
        TrisectionDiagram { genus, alpha, beta, gamma, words: None, label: None }
    }

    /// Builds a diagram from small integer coordinates.
    pub fn from_i64(genus: usize, alpha: &[&[i64]], beta: &[&[i64]], gamma: &[&[i64]]) -> Self {
        let conv = |xs: &[&[i64]]| xs.iter().map(|c| CurveClass::from_i64(c)).collect();
        Self::new(genus, conv(alpha), conv(beta), conv(gamma))
    }

    pub fn system(&self, s: CutSystem) -> &[CurveClass] {
        match s {
            CutSystem::Alpha => &self.alpha,
            CutSystem::Beta => &self.beta,
            CutSystem::Gamma => &self.gamma,
        }
    }

    fn system_mut(&mut self, s: CutSystem) -> &mut Vec<CurveClass> {
        match s {
            CutSystem::Alpha => &mut self.alpha,
            CutSystem::Beta => &mut self.beta,
            CutSystem::Gamma => &mut self.gamma,
        }
    }

    /// The same classes with words and label dropped.
    pub fn classes_only(&self) -> TrisectionDiagram {
        Self::new(self.genus, self.alpha.clone(), self.beta.clone(), self.gamma.clone())
    }

    fn check_coordinates(&self) -> Result<(), TrisectError> {
        for s in CutSystem::ALL {
            for (index, c) in self.system(s).iter().enumerate() {
                if c.coords().len() != 2 * self.genus {
                    return Err(TrisectError::GenusMismatch {
                        genus: self.genus,
                        system: s,
                        index: index + 1,
                        len: c.coords().len(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The sublattice `L_λ` spanned by a cut system.
    pub fn lattice(&self, s: CutSystem) -> Result<Sublattice, TrisectError> {
        self.check_coordinates()?;
        let vs: Vec<Vec<BigInt>> = self.system(s).iter().map(|c| c.coords().to_vec()).collect();
        Ok(Sublattice::from_vectors(2 * self.genus, &vs)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub system: CutSystem,
    pub problem: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.system, self.problem)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramValidation {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

/// Checks that each cut system has `g` classes spanning a primitive,
/// isotropic sublattice of rank `g`.
pub fn validate_diagram(d: &TrisectionDiagram) -> Result<DiagramValidation, TrisectError> {
    d.check_coordinates()?;
    let mut violations = Vec::new();
    for s in CutSystem::ALL {
        let mut problem = |p: String| violations.push(Violation { system: s, problem: p });
        let curves = d.system(s);
        if curves.len() != d.genus {
            problem(format!("has {} curves, expected {}", curves.len(), d.genus));
        }
        let l = d.lattice(s)?;
        if l.rank() != d.genus {
            problem(format!("spans a lattice of rank {}, expected {}", l.rank(), d.genus));
        }
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let w = intersection_number(&curves[i], &curves[j])?;
                if !w.is_zero() {
                    problem(format!("curves {} and {} have algebraic intersection {w}", i + 1, j + 1));
                }
            }
        }
        let q = quotient_invariants(&l);
        if !q.torsion.is_empty() {
            problem(format!("span is not primitive (quotient {q})"));
        }
    }
    Ok(DiagramValidation { passed: violations.is_empty(), violations })
}

fn require_valid(d: &TrisectionDiagram) -> Result<(), TrisectError> {
    let v = validate_diagram(d)?;
    if !v.passed {
        return Err(TrisectError::InvalidDiagram(v.violations.iter().map(ToString::to_string).collect()));
    }
    Ok(())
}

/// `k_λ = 2g - rank(L_λ + L_{λ+1})`, provided the quotient by the sum is
/// torsion free.
pub fn sector_k(d: &TrisectionDiagram, lambda: usize) -> Result<usize, TrisectError> {
    let s = CutSystem::from_index(lambda)?;
    let sum = lattice_sum(&d.lattice(s)?, &d.lattice(s.next())?)?;
    let q = quotient_invariants(&sum);
    if !q.torsion.is_empty() {
        return Err(TrisectError::NotSplitting { lambda, quotient: q.to_string() });
    }
    Ok(q.free_rank)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrisectionParameters {
    pub g: usize,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl TrisectionParameters {
    pub fn ks(&self) -> [usize; 3] {
        [self.k1, self.k2, self.k3]
    }
}

impl fmt::Display for TrisectionParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {},{},{})", self.g, self.k1, self.k2, self.k3)
    }
}

pub fn parameters(d: &TrisectionDiagram) -> Result<TrisectionParameters, TrisectError> {
    Ok(TrisectionParameters { g: d.genus, k1: sector_k(d, 1)?, k2: sector_k(d, 2)?, k3: sector_k(d, 3)? })
}

/// `χ = 2 + g - k₁ - k₂ - k₃`.
pub fn parameters_chi(p: &TrisectionParameters) -> i64 {
    2 + p.g as i64 - (p.k1 + p.k2 + p.k3) as i64
}

pub fn euler_characteristic(d: &TrisectionDiagram) -> Result<i64, TrisectError> {
    Ok(parameters_chi(&parameters(d)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    /// `ℤ^{2g} / (L_α + L_β + L_γ)`.
    pub h1: QuotientInvariants,
    /// Free rank of `H₂`.
    pub h2_rank: usize,
    /// Rank of `L_γ ∩ (L_α + L_β)`.
    pub gamma_meet_rank: usize,
    /// Rank of `L_γ ∩ L_α + L_γ ∩ L_β`, the part of the meet that does not
    /// contribute to `H₂`.
    pub gamma_overlap_rank: usize,
}

impl HomologySummary {
    /// `χ = 2 - 2b₁ + b₂`, using `b₃ = b₁`.
    pub fn betti_chi(&self) -> i64 {
        2 - 2 * self.h1.free_rank as i64 + self.h2_rank as i64
    }
}

/// `H₁` as the quotient by all three systems and the rank of
/// `H₂ ≅ (L_γ ∩ (L_α + L_β)) / (L_γ ∩ L_α + L_γ ∩ L_β)`.
pub fn homology_summary(d: &TrisectionDiagram) -> Result<HomologySummary, TrisectError> {
    require_valid(d)?;
    let (la, lb, lg) = (d.lattice(CutSystem::Alpha)?, d.lattice(CutSystem::Beta)?, d.lattice(CutSystem::Gamma)?);
    let ab = lattice_sum(&la, &lb)?;
    let h1 = quotient_invariants(&lattice_sum(&ab, &lg)?);
    let meet = lattice_intersection(&lg, &ab)?;
    let overlap = lattice_sum(&lattice_intersection(&lg, &la)?, &lattice_intersection(&lg, &lb)?)?;
    Ok(HomologySummary {
        h1,
        h2_rank: meet.rank() - overlap.rank(),
        gamma_meet_rank: meet.rank(),
        gamma_overlap_rank: overlap.rank(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramInvariants {
    pub parameters: TrisectionParameters,
    pub homology: HomologySummary,
    pub chi: i64,
    pub chi_from_betti: i64,
}

/// Parameters, homology and both Euler characteristic computations of a
/// valid diagram.
pub fn invariants(d: &TrisectionDiagram) -> Result<DiagramInvariants, TrisectError> {
    let homology = homology_summary(d)?;
    let parameters = parameters(d)?;
    Ok(DiagramInvariants {
        chi: parameters_chi(&parameters),
        chi_from_betti: homology.betti_chi(),
        parameters,
        homology,
    })
}

/// Stabilizes sector `λ`: appends a hyperbolic pair `(e, f)` and gives `f`
/// to both systems bounding the sector and `e` to the third, so `k_λ` grows
/// by one and the other two are unchanged. Curve words are dropped.
pub fn stabilize(d: &TrisectionDiagram, lambda: usize) -> Result<TrisectionDiagram, TrisectError> {
    let s = CutSystem::from_index(lambda)?;
    d.check_coordinates()?;
    let g = d.genus + 1;
    let extend = |c: &CurveClass| {
        let mut v = c.coords().to_vec();
        v.extend([BigInt::zero(), BigInt::zero()]);
        CurveClass::new(v)
    };
    let mut e = vec![BigInt::zero(); 2 * g];
    e[2 * g - 2] = BigInt::from(1);
    let mut f = vec![BigInt::zero(); 2 * g];
    f[2 * g - 1] = BigInt::from(1);
    let mut out = TrisectionDiagram::new(
        g,
        d.alpha.iter().map(extend).collect(),
        d.beta.iter().map(extend).collect(),
        d.gamma.iter().map(extend).collect(),
    );
    out.label = d.label.clone();
    out.system_mut(s).push(CurveClass::new(f.clone()));
    out.system_mut(s.next()).push(CurveClass::new(f));
    out.system_mut(s.next().next()).push(CurveClass::new(e));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgePoint {
    pub sign: Sign,
    pub region: String,
}

/// Patch data of one disk-tangle component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Patch {
    TrivialDisk,
    ConeOn(BraidWord),
}

impl Patch {
    pub fn boundary_components(&self) -> usize {
        match self {
            Patch::TrivialDisk => 1,
            Patch::ConeOn(b) => closure_component_count(b),
        }
    }
}

/// Bridge points on the core surface with their seams (arcs pairing the
/// points, 1-based, one matching per system) and patches (per sector).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgeData {
    pub regions: Vec<String>,
    pub points: Vec<BridgePoint>,
    pub seams: [Vec<[usize; 2]>; 3],
    pub patches: [Vec<Patch>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub bridge_points: usize,
    /// Components of the unknotted link `seam_λ ∪ seam_{λ+1}` per sector.
    pub seam_link_components: [usize; 3],
    pub patch_boundary_components: [usize; 3],
    pub patch_links: [Vec<String>; 3],
}

/// Checks that each seam is a perfect matching of the bridge points and
/// that each sector's patches have as many boundary components as the link
/// formed by its two seams.
pub fn validate_bridge_data(b: &BridgeData) -> Result<BridgeReport, TrisectError> {
    let n = b.points.len();
    let mut problems = Vec::new();
    for (i, p) in b.points.iter().enumerate() {
        if !b.regions.contains(&p.region) {
            problems.push(format!("point {} has unknown region `{}`", i + 1, p.region));
        }
    }
    let mut partner: Vec<Vec<usize>> = Vec::new();
    for (lambda, seam) in b.seams.iter().enumerate() {
        let mut m = vec![usize::MAX; n];
        for &[p, q] in seam {
            if p == 0 || q == 0 || p > n || q > n || p == q {
                problems.push(format!("seam {} has bad arc ({p}, {q})", lambda + 1));
                continue;
            }
            for (x, y) in [(p - 1, q - 1), (q - 1, p - 1)] {
                if m[x] != usize::MAX {
                    problems.push(format!("seam {} uses point {} twice", lambda + 1, x + 1));
                }
                m[x] = y;
            }
        }
        if m.contains(&usize::MAX) {
            problems.push(format!("seam {} is not a perfect matching", lambda + 1));
        }
        partner.push(m);
    }
    if !problems.is_empty() {
        return Err(TrisectError::BridgeData(problems));
    }
    let mut seam_link_components = [0; 3];
    let mut patch_boundary_components = [0; 3];
    let mut patch_links: [Vec<String>; 3] = Default::default();
    for lambda in 0..3 {
        let (m1, m2) = (&partner[lambda], &partner[(lambda + 1) % 3]);
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seam_link_components[lambda] += 1;
            let mut x = start;
            loop {
                seen[x] = true;
                let y = m1[x];
                seen[y] = true;
                x = m2[y];
                if x == start {
                    break;
                }
            }
        }
        for p in &b.patches[lambda] {
            patch_boundary_components[lambda] += p.boundary_components();
            patch_links[lambda].push(match p {
                Patch::TrivialDisk => "trivial_disk".to_string(),
                Patch::ConeOn(w) => format!("cone_on({})", identify_closure(w)?),
            });
        }
        if patch_boundary_components[lambda] != seam_link_components[lambda] {
            problems.push(format!(
                "sector {}: patches have {} boundary components but the seams form a {}-component link",
                lambda + 1,
                patch_boundary_components[lambda],
                seam_link_components[lambda]
            ));
        }
    }
    if !problems.is_empty() {
        return Err(TrisectError::BridgeData(problems));
    }
    Ok(BridgeReport { bridge_points: n, seam_link_components, patch_boundary_components, patch_links })
}

/// Signed count of bridge points in a region.
pub fn algebraic_degree(b: &BridgeData, region: &str) -> Result<i64, TrisectError> {
    if !b.regions.iter().any(|r| r == region) {
        return Err(TrisectError::UnknownRegion(region.to_string()));
    }
    Ok(b.points
        .iter()
        .filter(|p| p.region == region)
        .map(|p| match p.sign {
            Sign::Positive => 1,
            Sign::Negative => -1,
        })
        .sum())
}

/// Local models of branch points: `cyclic_d(d)` is `z ↦ z^d` along a
/// smooth branch curve, `cusp` the 3-fold model over a simple cusp and the
/// node models the disconnected 4-fold model over a transverse double point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingularModel {
    CyclicD(usize),
    Cusp,
    NodePositive,
    NodeNegative,
}

impl SingularModel {
    /// Braid whose closure is the link of the branch locus at the point.
    pub fn link_braid(&self) -> BraidWord {
        let power = |p| BraidWord::generator_power(2, 1, p).expect("one generator on two strands");
        match self {
            SingularModel::CyclicD(_) => BraidWord::identity(1).expect("one strand"),
            SingularModel::Cusp => power(3),
            SingularModel::NodePositive => power(2),
            SingularModel::NodeNegative => power(-2),
        }
    }

    pub fn expected_link(&self) -> ClosureTag {
        match self {
            SingularModel::CyclicD(_) => ClosureTag::Unknot,
            SingularModel::Cusp => ClosureTag::TrefoilRight,
            SingularModel::NodePositive => ClosureTag::HopfLinkPositive,
            SingularModel::NodeNegative => ClosureTag::HopfLinkNegative,
        }
    }

    /// Degree of the local branched cover.
    pub fn local_degree(&self) -> usize {
        match self {
            SingularModel::CyclicD(d) => *d,
            SingularModel::Cusp => 3,
            SingularModel::NodePositive | SingularModel::NodeNegative => 4,
        }
    }

    /// Meridian images of the local cover, one per link component strand.
    pub fn meridian_images(&self) -> Vec<Permutation> {
        let n = self.local_degree();
        let cyc = |c: &[usize]| Permutation::from_cycles(n, &[c.to_vec()]).expect("valid cycle");
        match self {
            SingularModel::CyclicD(d) => vec![cyc(&(1..=*d).collect::<Vec<_>>())],
            SingularModel::Cusp => vec![cyc(&[1, 2]), cyc(&[2, 3])],
            SingularModel::NodePositive | SingularModel::NodeNegative => vec![cyc(&[1, 2]), cyc(&[3, 4])],
        }
    }

    /// Points over the singular point in the local cover: the orbit count
    /// of the meridian images.
    pub fn preimage_points(&self) -> usize {
        crate::algebra::orbits(&self.meridian_images(), self.local_degree()).expect("degrees agree").len()
    }

    /// Points of the normalized branch surface over the point; zero for a
    /// smooth point.
    pub fn normalization_points(&self) -> usize {
        match self {
            SingularModel::CyclicD(_) => 0,
            SingularModel::Cusp => 1,
            SingularModel::NodePositive | SingularModel::NodeNegative => 2,
        }
    }
}

impl fmt::Display for SingularModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularModel::CyclicD(d) => write!(f, "cyclic_d({d})"),
            SingularModel::Cusp => f.write_str("cusp"),
            SingularModel::NodePositive => f.write_str("node_positive"),
            SingularModel::NodeNegative => f.write_str("node_negative"),
        }
    }
}

impl FromStr for SingularModel {
    type Err = TrisectError;

    fn from_str(s: &str) -> Result<Self, TrisectError> {
        let t = s.trim();
        match t {
            "cusp" => return Ok(SingularModel::Cusp),
            "node_positive" => return Ok(SingularModel::NodePositive),
            "node_negative" => return Ok(SingularModel::NodeNegative),
            _ => {}
        }
        t.strip_prefix("cyclic_d(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|d| d.trim().parse::<usize>().ok())
            .filter(|&d| d >= 2)
            .map(SingularModel::CyclicD)
            .ok_or_else(|| TrisectError::UnsupportedTag(s.to_string()))
    }
}

impl Serialize for SingularModel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SingularModel {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub model: SingularModel,
    pub link_braid: String,
    pub link: String,
    pub matches_expected: bool,
    pub local_degree: usize,
    pub preimage_points: usize,
    pub meridian_images: Vec<String>,
}

/// Recomputes the link of a local model from its braid and compares it with
/// the expected tag.
pub fn check_model(m: SingularModel) -> Result<ModelReport, TrisectError> {
    let braid = m.link_braid();
    let link = identify_closure(&braid)?;
    Ok(ModelReport {
        model: m,
        link_braid: braid.to_string(),
        matches_expected: link == m.expected_link(),
        link: link.name().to_string(),
        local_degree: m.local_degree(),
        preimage_points: m.preimage_points(),
        meridian_images: m.meridian_images().iter().map(ToString::to_string).collect(),
    })
}

/// Local events along a seam link: crossings and tangencies contribute an
/// unknotted component, singular points the link of their model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeamEvent {
    Crossing,
    Tangency,
    Model(SingularModel),
}

impl fmt::Display for SeamEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeamEvent::Crossing => f.write_str("crossing"),
            SeamEvent::Tangency => f.write_str("tangency"),
            SeamEvent::Model(m) => m.fmt(f),
        }
    }
}

impl FromStr for SeamEvent {
    type Err = TrisectError;

    fn from_str(s: &str) -> Result<Self, TrisectError> {
        match s.trim() {
            "crossing" => Ok(SeamEvent::Crossing),
            "tangency" => Ok(SeamEvent::Tangency),
            _ => s.parse().map(SeamEvent::Model),
        }
    }
}

impl Serialize for SeamEvent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SeamEvent {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalLink {
    pub event: SeamEvent,
    pub braid: String,
    pub link: String,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeamLinkReport {
    pub pieces: Vec<LocalLink>,
    /// The split union as one braid on disjoint blocks of strands.
    pub braid: BraidWord,
    pub components: usize,
}

pub fn seam_link(events: &[SeamEvent]) -> Result<SeamLinkReport, TrisectError> {
    let mut pieces = Vec::new();
    let mut letters = Vec::new();
    let mut offset = 0;
    for &e in events {
        let b = match e {
            SeamEvent::Crossing | SeamEvent::Tangency => BraidWord::generator_power(2, 1, 1)?,
            SeamEvent::Model(m) => m.link_braid(),
        };
        letters.extend(b.letters().iter().map(|l| BraidLetter { index: l.index + offset, positive: l.positive }));
        offset += b.strands();
        pieces.push(LocalLink {
            event: e,
            braid: b.to_string(),
            link: identify_closure(&b)?.name().to_string(),
            components: closure_component_count(&b),
        });
    }
    let braid = BraidWord::new(offset.max(1), letters)?;
    let components = if events.is_empty() { 0 } else { closure_component_count(&braid) };
    Ok(SeamLinkReport { pieces, braid, components })
}

/// A stratum of the branch locus: its Euler characteristic and the number
/// of points of the cover over each of its points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub chi: i64,
    pub sheets_over: usize,
}

/// `χ̃ = n·χ - Σ (n - sheets_over)·χ_stratum`.
pub fn chi_branched_cover_4d(n: usize, chi_base: i64, strata: &[Stratum]) -> i64 {
    let n_i = n as i64;
    n_i * chi_base - strata.iter().map(|s| n.saturating_sub(s.sheets_over) as i64 * s.chi).sum::<i64>()
}

/// The branch locus of a pullback: its singular points and, optionally,
/// the Euler characteristic of its normalization.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchLocus {
    pub models: Vec<SingularModel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface_chi: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftRow {
    /// 1-based index of the base curve.
    pub curve: usize,
    pub sheets: Vec<usize>,
    pub degree: usize,
    pub class: CurveClass,
    pub kept: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dropped_because: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemLift {
    pub system: CutSystem,
    pub rows: Vec<LiftRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackReport {
    pub cover_degree: usize,
    pub connected: bool,
    pub cover_genus: usize,
    pub cover_chi: i64,
    pub systems: Vec<SystemLift>,
    pub deleted_curves: usize,
    pub models: Vec<ModelReport>,
    pub seam_link: SeamLinkReport,
    pub homology: HomologySummary,
    pub chi: i64,
    pub chi_from_betti: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<Stratum>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_branched_cover: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pullback {
    pub diagram: TrisectionDiagram,
    pub parameters: TrisectionParameters,
    pub report: PullbackReport,
}

fn check_compatibility(d: &TrisectionDiagram, s: &BranchedCoverSpec, locus: &BranchLocus) -> Result<(), TrisectError> {
    let base = s.base();
    if base.genus() != d.genus {
        return Err(TrisectError::Incompatible(format!(
            "diagram has genus {} but the cover base has genus {}",
            d.genus,
            base.genus()
        )));
    }
    let words = d.words.as_ref().ok_or_else(|| TrisectError::Incompatible("diagram carries no curve words".into()))?;
    for sys in CutSystem::ALL {
        let (ws, cs) = (words.system(sys), d.system(sys));
        if ws.len() != cs.len() {
            return Err(TrisectError::Incompatible(format!("{sys} has {} words for {} curves", ws.len(), cs.len())));
        }
        for (i, (w, c)) in ws.iter().zip(cs).enumerate() {
            if &abelianize(base, w)? != c {
                return Err(TrisectError::Incompatible(format!(
                    "{sys} curve {}: word `{w}` does not represent its class",
                    i + 1
                )));
            }
        }
    }
    let n = s.degree();
    for m in &locus.models {
        if m.local_degree() > n {
            return Err(TrisectError::Incompatible(format!("{m} needs degree at least {}", m.local_degree())));
        }
        for x in base.meridian_names() {
            let p = s.rep().image(x)?;
            let shape = p.cycle_structure();
            let ok = match m {
                SingularModel::CyclicD(k) => shape[0] == *k && shape[1..].iter().all(|&c| c == 1),
                _ => p.is_transposition(),
            };
            if !ok {
                return Err(TrisectError::Incompatible(format!("meridian {x} acts by {p}, incompatible with {m}")));
            }
        }
    }
    Ok(())
}

/// Strata of the branch locus for the four-dimensional Riemann–Hurwitz
/// count: the smooth part, over which each sheet count is the cycle count
/// of a meridian, and one point stratum per singular model.
fn branch_strata(s: &BranchedCoverSpec, locus: &BranchLocus, surface_chi: i64) -> Result<Vec<Stratum>, TrisectError> {
    let n = s.degree();
    let mut counts = Vec::new();
    for x in s.base().meridian_names() {
        counts.push(s.rep().image(x)?.cycle_count());
    }
    counts.dedup();
    if counts.is_empty() {
        return Ok(Vec::new());
    }
    if counts.len() > 1 {
        return Err(TrisectError::Incompatible(format!(
            "meridians have different sheet counts {counts:?}; the smooth stratum is not determined"
        )));
    }
    let singular: usize = locus.models.iter().map(SingularModel::normalization_points).sum();
    let mut strata = vec![Stratum { chi: surface_chi - singular as i64, sheets_over: counts[0] }];
    for m in &locus.models {
        if m.normalization_points() > 0 {
            strata.push(Stratum { chi: 1, sheets_over: m.preimage_points() + n - m.local_degree() });
        }
    }
    Ok(strata)
}

/// Lifts a diagram along a branched cover of its core surface.
///
/// Every curve word is lifted; the lifts are taken in curve order and then
/// sheet order, and a lift is dropped when its class is zero or agrees up
/// to sign with one already kept. Exactly `g̃` classes must survive in each
/// system and the result must be a valid diagram.
pub fn pullback_trisection(
    d: &TrisectionDiagram,
    s: &BranchedCoverSpec,
    locus: &BranchLocus,
) -> Result<Pullback, TrisectError> {
    require_valid(d)?;
    check_compatibility(d, s, locus)?;
    let cover = build_cover(s)?;
    if !cover.is_connected() {
        return Err(TrisectError::Disconnected(cover.components().iter().map(|c| c.genus()).collect()));
    }
    let genus = cover.components()[0].genus();
    let words = d.words.as_ref().expect("checked for words");
    let mut out = TrisectionDiagram::new(genus, Vec::new(), Vec::new(), Vec::new());
    let mut systems = Vec::new();
    let mut deleted = 0;
    for sys in CutSystem::ALL {
        let mut rows = Vec::new();
        let mut kept: Vec<CurveClass> = Vec::new();
        for (i, w) in words.system(sys).iter().enumerate() {
            for lifted in cover.lift_classes(w, true)? {
                let class = lifted.class;
                let reason = if class.is_zero() {
                    Some("null-homologous".to_string())
                } else {
                    kept.iter()
                        .position(|k| *k == class || *k == class.neg())
                        .map(|j| format!("parallel to kept curve {}", j + 1))
                };
                if reason.is_none() {
                    kept.push(class.clone());
                } else {
                    deleted += 1;
                }
                rows.push(LiftRow {
                    curve: i + 1,
                    sheets: lifted.lift.sheets,
                    degree: lifted.lift.degree,
                    class,
                    kept: reason.is_none(),
                    dropped_because: reason,
                });
            }
        }
        if kept.len() != genus {
            return Err(TrisectError::NotCutSystem(format!(
                "{sys} keeps {} classes after removing redundant lifts, expected {genus}",
                kept.len()
            )));
        }
        *out.system_mut(sys) = kept;
        systems.push(SystemLift { system: sys, rows });
    }
    let validation = validate_diagram(&out)?;
    if !validation.passed {
        let v: Vec<String> = validation.violations.iter().map(ToString::to_string).collect();
        return Err(TrisectError::NotCutSystem(v.join("; ")));
    }
    out.label = d.label.as_ref().map(|l| format!("pullback of {l}"));
    let params = parameters(&out)?;
    let homology = homology_summary(&out)?;
    let models = locus.models.iter().map(|&m| check_model(m)).collect::<Result<Vec<_>, _>>()?;
    let events: Vec<SeamEvent> = locus.models.iter().map(|&m| SeamEvent::Model(m)).collect();
    let strata = locus.surface_chi.map(|chi| branch_strata(s, locus, chi)).transpose()?;
    let chi_branched_cover =
        strata.as_ref().map(|st| chi_branched_cover_4d(s.degree(), euler_characteristic(d).expect("valid"), st));
    let report = PullbackReport {
        cover_degree: s.degree(),
        connected: true,
        cover_genus: genus,
        cover_chi: cover.euler_characteristic(),
        systems,
        deleted_curves: deleted,
        models,
        seam_link: seam_link(&events)?,
        chi: parameters_chi(&params),
        chi_from_betti: homology.betti_chi(),
        homology,
        strata,
        chi_branched_cover,
    };
    Ok(Pullback { diagram: out, parameters: params, report })
}
