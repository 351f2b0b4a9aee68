//! Branched covers of punctured surfaces given by permutation
//! representations of the surface group.
//!
//! The base surface is modelled as a one-vertex ribbon graph: one loop per
//! generator and one face per relator (the surface relator plus a one-letter
//! face per meridian, which caps the puncture). The cover has one vertex per
//! sheet and one edge per (generator, sheet); its faces are traced from the
//! lifted rotation system, so a puncture whose meridian acts by a `k`-cycle
//! is filled by a single face with a branch point of order `k`.
//!
//! Sheets are 0-based internally; report structs carry 1-based labels.
//! Sheet `i` lifts generator `g` to an edge ending at `ρ(g)⁻¹(i)`, so lifting
//! a word `w` from sheet `i` ends on `evaluate(w)⁻¹(i)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{evaluate, AlgebraError, Permutation, Representation, Word};
use crate::lattice::{row_hermite_form, smith_normal_form, IntMatrix};
use crate::surface::{
    standard_form, surface_relator, symplectic_basis, CurveClass, RelatorConvention, SurfaceError, SurfaceModel,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("representation generators {rep:?} do not match surface generators {base:?}")]
    GeneratorMismatch { base: Vec<String>, rep: Vec<String> },
    #[error("declared degree {declared} but representation has degree {actual}")]
    DegreeMismatch { declared: usize, actual: usize },
    #[error("invalid cover data: surface relator maps to {0}, not the identity")]
    RelatorNotTrivial(String),
    #[error("surface relator does not close up around the base point")]
    BadRotation,
    #[error("cover homology has torsion")]
    Torsion,
    #[error("curve passes through a branch point: meridian letter `{0}` is not allowed here")]
    MeridianLetter(String),
    #[error("intersection form check failed: {0}")]
    Form(String),
    #[error("invalid cover description: {0}")]
    Json(String),
}

/// A base surface together with a permutation representation of its
/// generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoverSpecJson", into = "CoverSpecJson")]
pub struct BranchedCoverSpec {
    base: SurfaceModel,
    rep: Representation,
}

impl BranchedCoverSpec {
    /// The representation must assign exactly the generators of `base`.
    pub fn new(base: SurfaceModel, rep: Representation) -> Result<Self, CoverError> {
        let want: BTreeSet<String> = base.generators().into_iter().collect();
        let have: BTreeSet<String> = rep.images().keys().cloned().collect();
        if want != have {
            return Err(CoverError::GeneratorMismatch { base: base.generators(), rep: have.into_iter().collect() });
        }
        Ok(BranchedCoverSpec { base, rep })
    }

    pub fn base(&self) -> &SurfaceModel {
        &self.base
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn degree(&self) -> usize {
        self.rep.degree()
    }

    fn perms(&self) -> Vec<Permutation> {
        self.base.generators().iter().map(|g| self.rep.images()[g].clone()).collect()
    }
}

/// Serialized form of a cover description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpecJson {
    pub base: BaseJson,
    pub degree: usize,
    /// Generator name to cycle notation, e.g. `"(1 2)(3 4)"`.
    pub rep: BTreeMap<String, String>,
    #[serde(default)]
    pub relator_convention: RelatorConvention,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseJson {
    pub genus: usize,
    pub punctures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub handles: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meridians: Option<Vec<String>>,
}

impl TryFrom<CoverSpecJson> for BranchedCoverSpec {
    type Error = CoverError;

    fn try_from(j: CoverSpecJson) -> Result<Self, CoverError> {
        let default = SurfaceModel::new(j.base.genus, j.base.punctures);
        let handles = match j.base.handles {
            Some(h) => h.into_iter().map(|[a, b]| (a, b)).collect(),
            None => default.handle_names().to_vec(),
        };
        let meridians = j.base.meridians.unwrap_or_else(|| default.meridian_names().to_vec());
        if handles.len() != j.base.genus {
            return Err(SurfaceError::NameCount { what: "handle", expected: j.base.genus, got: handles.len() }.into());
        }
        if meridians.len() != j.base.punctures {
            return Err(
                SurfaceError::NameCount { what: "meridian", expected: j.base.punctures, got: meridians.len() }.into()
            );
        }
        let base = SurfaceModel::with_names(handles, meridians)?.with_convention(j.relator_convention);
        let rep = Representation::from_cycle_strings(j.degree, j.rep.iter().map(|(g, p)| (g.as_str(), p.as_str())))?;
        if rep.degree() != j.degree {
            return Err(CoverError::DegreeMismatch { declared: j.degree, actual: rep.degree() });
        }
        BranchedCoverSpec::new(base, rep)
    }
}

impl From<BranchedCoverSpec> for CoverSpecJson {
    fn from(s: BranchedCoverSpec) -> Self {
        let default = SurfaceModel::new(s.base.genus(), s.base.punctures());
        let renamed =
            default.handle_names() != s.base.handle_names() || default.meridian_names() != s.base.meridian_names();
        CoverSpecJson {
            base: BaseJson {
                genus: s.base.genus(),
                punctures: s.base.punctures(),
                handles: renamed.then(|| s.base.handle_names().iter().map(|(a, b)| [a.clone(), b.clone()]).collect()),
                meridians: renamed.then(|| s.base.meridian_names().to_vec()),
            },
            degree: s.degree(),
            rep: s.rep.images().iter().map(|(g, p)| (g.clone(), p.to_string())).collect(),
            relator_convention: s.base.convention(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchCycles {
    pub meridian: String,
    /// Cycle lengths of the meridian image, descending.
    pub cycle_structure: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverValidation {
    pub passed: bool,
    pub relator: String,
    pub relator_image: String,
    pub transitive: bool,
    pub orbit_count: usize,
    pub branch_cycles: Vec<BranchCycles>,
}

/// Checks that the surface relator maps to the identity and reports the
/// orbit structure and the branching over each puncture.
pub fn validate_spec(s: &BranchedCoverSpec) -> Result<CoverValidation, CoverError> {
    let relator = surface_relator(&s.base);
    let image = evaluate(&relator, &s.rep)?;
    let orbit_count = s.rep.orbits().len();
    let branch_cycles = s
        .base
        .meridian_names()
        .iter()
        .map(|m| BranchCycles { meridian: m.clone(), cycle_structure: s.rep.images()[m].cycle_structure() })
        .collect();
    Ok(CoverValidation {
        passed: image.is_identity(),
        relator: relator.to_string(),
        relator_image: image.to_string(),
        transitive: orbit_count == 1,
        orbit_count,
        branch_cycles,
    })
}

fn require_valid(s: &BranchedCoverSpec) -> Result<(), CoverError> {
    let v = validate_spec(s)?;
    if !v.passed {
        return Err(CoverError::RelatorNotTrivial(v.relator_image));
    }
    Ok(())
}

/// Euler characteristic of the closed cover by Riemann–Hurwitz:
/// `n(2 - 2g) - Σ (n - #cycles of ρ(x_j))`.
pub fn euler_char_cover(s: &BranchedCoverSpec) -> Result<i64, CoverError> {
    require_valid(s)?;
    Ok(riemann_hurwitz(s, &(0..s.degree()).collect::<Vec<_>>()))
}

/// Riemann–Hurwitz restricted to an invariant set of sheets.
fn riemann_hurwitz(s: &BranchedCoverSpec, sheets: &[usize]) -> i64 {
    let n = sheets.len() as i64;
    let mut chi = n * (2 - 2 * s.base.genus() as i64);
    for m in s.base.meridian_names() {
        let p = &s.rep.images()[m];
        let cycles = p.cycles().into_iter().filter(|c| sheets.contains(&c[0])).count() as i64;
        chi -= n - cycles;
    }
    chi
}

// Half-edge `2k` is the tail end of edge `k`, `2k + 1` its head end.
fn flip(h: usize) -> usize {
    h ^ 1
}

/// Rotation at the single vertex of the base: `succ[h]` is the half-edge
/// following `h` around the vertex.
fn base_rotation(model: &SurfaceModel) -> Result<Vec<usize>, CoverError> {
    let gens = model.generators();
    let index: BTreeMap<&str, usize> = gens.iter().enumerate().map(|(i, g)| (g.as_str(), i)).collect();
    let relator = surface_relator(model);
    let mut faces: Vec<Vec<(usize, bool)>> =
        vec![relator.letters().iter().map(|l| (index[l.generator.as_str()], l.inverse)).collect()];
    for m in model.meridian_names() {
        let appears_inverted = relator.letters().iter().find(|l| &l.generator == m).map(|l| l.inverse);
        let Some(inv) = appears_inverted else {
            return Err(CoverError::BadRotation);
        };
        faces.push(vec![(index[m.as_str()], !inv)]);
    }
    let start = |(e, inv): (usize, bool)| if inv { 2 * e + 1 } else { 2 * e };
    let end = |l: (usize, bool)| flip(start(l));
    let mut succ = vec![usize::MAX; 2 * gens.len()];
    for f in &faces {
        for i in 0..f.len() {
            let h = end(f[i]);
            if succ[h] != usize::MAX {
                return Err(CoverError::BadRotation);
            }
            succ[h] = start(f[(i + 1) % f.len()]);
        }
    }
    if succ.contains(&usize::MAX) {
        return Err(CoverError::BadRotation);
    }
    // A disk neighbourhood of the vertex needs a single rotation cycle.
    if !succ.is_empty() {
        let mut len = 1;
        let mut h = succ[0];
        while h != 0 {
            h = succ[h];
            len += 1;
        }
        if len != succ.len() {
            return Err(CoverError::BadRotation);
        }
    }
    Ok(succ)
}

/// One connected component of the cover, with an exact model of its first
/// homology and intersection form.
#[derive(Debug, Clone)]
pub struct CoverComponent {
    sheets: Vec<usize>,
    vertices: usize,
    edges: usize,
    faces: usize,
    genus: usize,
    /// Edges outside the spanning tree, ascending; these index cycle space.
    nontree: Vec<usize>,
    nontree_pos: BTreeMap<usize, usize>,
    /// Cycle-space coordinates to symplectic homology coordinates.
    coordinate_map: IntMatrix,
    /// Intersection form in the canonical (Hermite) coordinates.
    raw_form: IntMatrix,
    /// Change of basis from canonical to symplectic coordinates.
    symplectic_basis: IntMatrix,
}

impl CoverComponent {
    /// 0-based sheets of this component.
    pub fn sheets(&self) -> &[usize] {
        &self.sheets
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    pub fn cell_counts(&self) -> (usize, usize, usize) {
        (self.vertices, self.edges, self.faces)
    }

    /// Intersection form in the reported basis; always the standard form.
    pub fn intersection_form(&self) -> IntMatrix {
        standard_form(self.genus)
    }

    /// Intersection form in the canonical coordinates before symplectic
    /// normalization.
    pub fn raw_intersection_form(&self) -> &IntMatrix {
        &self.raw_form
    }

    /// Columns are the symplectic basis written in canonical coordinates.
    pub fn symplectic_change(&self) -> &IntMatrix {
        &self.symplectic_basis
    }

    fn class_of_chain(&self, chain: &BTreeMap<usize, i64>) -> CurveClass {
        let mut v = vec![BigInt::zero(); self.nontree.len()];
        for (e, c) in chain {
            if let Some(&p) = self.nontree_pos.get(e) {
                v[p] += *c;
            }
        }
        if self.genus == 0 {
            return CurveClass::zero(0);
        }
        CurveClass::new(self.coordinate_map.mul_vec(&v).expect("dimension"))
    }
}

/// The closed branched cover as a cell complex.
#[derive(Debug, Clone)]
pub struct CoverSurface {
    spec: BranchedCoverSpec,
    perms: Vec<Permutation>,
    succ: Vec<usize>,
    component_of: Vec<usize>,
    components: Vec<CoverComponent>,
}

// Orientation constant fixing `a · b = +1` on the base.
const PUSHOFF_SIGN: i64 = -1;

impl CoverSurface {
    pub fn spec(&self) -> &BranchedCoverSpec {
        &self.spec
    }

    pub fn components(&self) -> &[CoverComponent] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(CoverComponent::euler_characteristic).sum()
    }

    /// Component index of a 0-based sheet.
    pub fn component_of_sheet(&self, sheet: usize) -> usize {
        self.component_of[sheet]
    }

    fn n(&self) -> usize {
        self.spec.degree()
    }

    fn tail(&self, e: usize) -> usize {
        e % self.n()
    }

    fn head(&self, e: usize) -> usize {
        self.perms[e / self.n()].inverse().apply(e % self.n())
    }

    fn vertex(&self, h: usize) -> usize {
        if h.is_multiple_of(2) {
            self.tail(h / 2)
        } else {
            self.head(h / 2)
        }
    }

    /// Signed chain of a walk given by its outgoing half-edges.
    fn walk_chain(walk: &[usize]) -> BTreeMap<usize, i64> {
        let mut chain = BTreeMap::new();
        for &h in walk {
            *chain.entry(h / 2).or_insert(0) += if h % 2 == 0 { 1 } else { -1 };
        }
        chain.retain(|_, c| *c != 0);
        chain
    }

    /// Algebraic intersection of the cycle `chain` with a closed walk,
    /// computed by pushing the walk off every vertex to one side.
    fn pushoff_pairing(&self, chain: &BTreeMap<usize, i64>, walk: &[usize]) -> i64 {
        let mut total = 0;
        for i in 0..walk.len() {
            let h_in = flip(walk[i]);
            let h_out = walk[(i + 1) % walk.len()];
            let mut x = self.succ[h_in];
            while x != h_out {
                let c = chain.get(&(x / 2)).copied().unwrap_or(0);
                total += if x.is_multiple_of(2) { c } else { -c };
                x = self.succ[x];
            }
        }
        PUSHOFF_SIGN * total
    }

    /// Lifts `w` from a 0-based sheet until it closes up; returns the walk
    /// as outgoing half-edges and the sheets visited at the start of each
    /// pass through `w`.
    fn lift_walk(&self, w: &[(usize, bool)], start: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.n();
        let mut walk = Vec::new();
        let mut passes = Vec::new();
        let mut i = start;
        loop {
            passes.push(i);
            for &(g, inv) in w {
                if inv {
                    let u = self.perms[g].apply(i);
                    walk.push(2 * (g * n + u) + 1);
                    i = u;
                } else {
                    walk.push(2 * (g * n + i));
                    i = self.perms[g].inverse().apply(i);
                }
            }
            if i == start {
                break;
            }
        }
        (walk, passes)
    }

    fn word_letters(&self, w: &Word, allow_meridians: bool) -> Result<Vec<(usize, bool)>, CoverError> {
        let gens = self.spec.base.generators();
        self.spec.base.check_word(w)?;
        w.letters()
            .iter()
            .map(|l| {
                if !allow_meridians && self.spec.base.is_meridian(&l.generator) {
                    return Err(CoverError::MeridianLetter(l.generator.clone()));
                }
                Ok((gens.iter().position(|g| *g == l.generator).expect("checked"), l.inverse))
            })
            .collect()
    }

    /// Homology classes of the components of the preimage of `w`, one per
    /// cycle of `evaluate(w)`, ordered by least sheet.
    pub fn lift_classes(&self, w: &Word, allow_meridians: bool) -> Result<Vec<LiftedClass>, CoverError> {
        let letters = self.word_letters(w, allow_meridians)?;
        let mut out = Vec::new();
        for lift in lift_cycles(&self.spec, w)? {
            let start = lift.sheets[0] - 1;
            let (walk, _) = self.lift_walk(&letters, start);
            let component = self.component_of[start];
            let class = self.components[component].class_of_chain(&Self::walk_chain(&walk));
            out.push(LiftedClass { lift, class });
        }
        Ok(out)
    }

    fn build_component(&self, sheets: Vec<usize>) -> Result<CoverComponent, CoverError> {
        let n = self.n();
        let in_comp: BTreeSet<usize> = sheets.iter().copied().collect();
        let edges: Vec<usize> = (0..self.perms.len() * n).filter(|&e| in_comp.contains(&self.tail(e))).collect();

        // Faces are orbits of h ↦ succ(flip(h)) on outgoing half-edges.
        let mut seen = BTreeSet::new();
        let mut face_chains = Vec::new();
        for &e in &edges {
            for h in [2 * e, 2 * e + 1] {
                if seen.contains(&h) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut x = h;
                while seen.insert(x) {
                    walk.push(x);
                    x = self.succ[flip(x)];
                }
                face_chains.push(Self::walk_chain(&walk));
            }
        }
        let faces = if edges.is_empty() { sheets.len() } else { face_chains.len() };
        let chi = sheets.len() as i64 - edges.len() as i64 + faces as i64;
        if chi > 2 || chi % 2 != 0 {
            return Err(CoverError::Form(format!("component has Euler characteristic {chi}")));
        }
        let genus = ((2 - chi) / 2) as usize;

        // Breadth-first spanning tree from the least sheet.
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &e in &edges {
            adjacency.entry(self.tail(e)).or_default().push(2 * e);
            adjacency.entry(self.head(e)).or_default().push(2 * e + 1);
        }
        for hs in adjacency.values_mut() {
            hs.sort_unstable();
        }
        let root = sheets[0];
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([root]);
        let mut visited = BTreeSet::from([root]);
        while let Some(v) = queue.pop_front() {
            for &h in adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                let w = self.vertex(flip(h));
                if visited.insert(w) {
                    parent.insert(w, h);
                    tree.insert(h / 2);
                    queue.push_back(w);
                }
            }
        }
        let nontree: Vec<usize> = edges.iter().copied().filter(|e| !tree.contains(e)).collect();
        let nontree_pos: BTreeMap<usize, usize> = nontree.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = nontree.len();

        let mut comp = CoverComponent {
            sheets,
            vertices: in_comp.len(),
            edges: edges.len(),
            faces,
            genus,
            nontree,
            nontree_pos,
            coordinate_map: IntMatrix::zeros(0, m),
            raw_form: IntMatrix::zeros(0, 0),
            symplectic_basis: IntMatrix::zeros(0, 0),
        };
        if genus == 0 {
            return Ok(comp);
        }

        let path_from_root = |mut v: usize| {
            let mut path = Vec::new();
            while let Some(&h) = parent.get(&v) {
                path.push(h);
                v = self.vertex(h);
            }
            path.reverse();
            path
        };
        let fundamental: Vec<Vec<usize>> = comp
            .nontree
            .iter()
            .map(|&e| {
                let mut walk = path_from_root(self.tail(e));
                walk.push(2 * e);
                walk.extend(path_from_root(self.head(e)).iter().rev().map(|&h| flip(h)));
                walk
            })
            .collect();
        let fundamental_chains: Vec<_> = fundamental.iter().map(|w| Self::walk_chain(w)).collect();

        let restrict = |chain: &BTreeMap<usize, i64>| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); m];
            for (e, c) in chain {
                if let Some(&p) = comp.nontree_pos.get(e) {
                    v[p] += *c;
                }
            }
            v
        };
        let boundary_cols: Vec<Vec<BigInt>> = face_chains.iter().map(restrict).collect();
        let boundaries = IntMatrix::from_columns(m, &boundary_cols).expect("height");
        let snf = smith_normal_form(&boundaries);
        let r = snf.rank();
        if snf.diagonal()[..r].iter().any(|d| !d.is_one()) {
            return Err(CoverError::Torsion);
        }
        if m - r != 2 * genus {
            return Err(CoverError::Form(format!("cycle rank {} but genus {genus}", m - r)));
        }
        let canonical = row_hermite_form(&snf.u.row_slice(r, m));

        // Right inverse: cycle representatives of the canonical basis.
        let hs = smith_normal_form(&canonical);
        let reps = hs.v.column_slice(0, 2 * genus).mul(&hs.u).expect("dimension");

        let mut omega = IntMatrix::zeros(m, m);
        for j in 0..m {
            for k in 0..m {
                omega[(j, k)] = BigInt::from(self.pushoff_pairing(&fundamental_chains[j], &fundamental[k]));
            }
        }
        if !boundaries.transpose().mul(&omega).expect("dimension").is_zero() {
            return Err(CoverError::Form("boundaries pair nontrivially".into()));
        }
        let raw = reps.transpose().mul(&omega).expect("dimension").mul(&reps).expect("dimension");
        let p = symplectic_basis(&raw).map_err(|e| CoverError::Form(e.to_string()))?;
        let p_inv = p.unimodular_inverse().map_err(|e| CoverError::Form(e.to_string()))?;
        comp.coordinate_map = p_inv.mul(&canonical).expect("dimension");
        comp.raw_form = raw;
        comp.symplectic_basis = p;
        Ok(comp)
    }
}

/// Builds the closed cover with exact homology of each component.
pub fn build_cover(s: &BranchedCoverSpec) -> Result<CoverSurface, CoverError> {
    require_valid(s)?;
    let n = s.degree();
    let base_succ = base_rotation(&s.base)?;
    let perms = s.perms();
    // Lift the rotation: the tail end of `g` at sheet `v` is edge `(g, v)`;
    // the head end of `g` at `v` belongs to edge `(g, ρ(g)(v))`.
    let lift = |h: usize, v: usize| -> usize {
        let g = h / 2;
        if h.is_multiple_of(2) {
            2 * (g * n + v)
        } else {
            2 * (g * n + perms[g].apply(v)) + 1
        }
    };
    let mut succ = vec![0; 2 * perms.len() * n];
    for g in 0..perms.len() {
        for v in 0..n {
            succ[lift(2 * g, v)] = lift(base_succ[2 * g], v);
            succ[lift(2 * g + 1, v)] = lift(base_succ[2 * g + 1], v);
        }
    }
    let orbits = s.rep.orbits();
    let mut component_of = vec![0; n];
    for (c, o) in orbits.iter().enumerate() {
        for &v in o {
            component_of[v] = c;
        }
    }
    let mut cover = CoverSurface { spec: s.clone(), perms, succ, component_of, components: Vec::new() };
    for o in orbits {
        let comp = cover.build_component(o)?;
        cover.components.push(comp);
    }
    Ok(cover)
}

/// One component of the preimage of a closed curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveLift {
    /// Index of the cover component containing it.
    pub component: usize,
    /// Degree of the restricted covering map.
    pub degree: usize,
    /// 1-based sheets where the lift starts a pass through the word.
    pub sheets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedClass {
    #[serde(flatten)]
    pub lift: CurveLift,
    pub class: CurveClass,
}

/// Components of the preimage of a based curve `w`: one per cycle of
/// `evaluate(w)`, ordered by least sheet.
pub fn lift_cycles(s: &BranchedCoverSpec, w: &Word) -> Result<Vec<CurveLift>, CoverError> {
    s.base.check_word(w)?;
    let p = evaluate(w, &s.rep)?;
    let orbits = s.rep.orbits();
    let q = p.inverse();
    let mut out = Vec::new();
    for cycle in p.cycles() {
        let start = *cycle.iter().min().expect("nonempty cycle");
        let mut sheets = vec![start + 1];
        let mut i = q.apply(start);
        while i != start {
            sheets.push(i + 1);
            i = q.apply(i);
        }
        let component = orbits.iter().position(|o| o.contains(&start)).expect("orbits cover");
        out.push(CurveLift { component, degree: sheets.len(), sheets });
    }
    out.sort_by_key(|l| l.sheets[0]);
    Ok(out)
}

/// Lifts of a curve that avoids the branch points. Meridian letters are
/// rejected unless `allow_meridians` is set.
pub fn lift_curve(s: &BranchedCoverSpec, w: &Word, allow_meridians: bool) -> Result<Vec<CurveLift>, CoverError> {
    if !allow_meridians {
        if let Some(m) = w.generators().into_iter().find(|g| s.base.is_meridian(g)) {
            return Err(CoverError::MeridianLetter(m.to_string()));
        }
    }
    lift_cycles(s, w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftedClasses {
    pub lifts: Vec<LiftedClass>,
    /// Intersection form of each cover component in its symplectic basis.
    pub forms: Vec<IntMatrix>,
}

pub fn lift_curve_class(s: &BranchedCoverSpec, w: &Word, allow_meridians: bool) -> Result<LiftedClasses, CoverError> {
    let cover = build_cover(s)?;
    Ok(LiftedClasses {
        lifts: cover.lift_classes(w, allow_meridians)?,
        forms: cover.components.iter().map(CoverComponent::intersection_form).collect(),
    })
}

/// Index pairs `(i, j)`, `i < j`, of nonzero classes that agree up to sign.
pub fn parallel_pairs(classes: &[CurveClass]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 0..classes.len() {
        for i in 0..j {
            let (a, b) = (&classes[i], &classes[j]);
            if !a.is_zero() && (a == b || *a == b.neg()) {
                out.push((i, j));
            }
        }
    }
    out
}
