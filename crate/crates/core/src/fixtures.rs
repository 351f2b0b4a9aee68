//! Built-in diagrams, covers and bridge data.
//!
//! Registry names: `cp2_standard`, `cp2_tricuspidal_quartic` and
//! `cyclic_Sd(d)` for `d ≥ 2`.

use serde::Serialize;

use crate::algebra::{Permutation, Representation, Word};
use crate::braid::BraidWord;
use crate::cover::BranchedCoverSpec;
use crate::surface::{RelatorConvention, SurfaceModel};
use crate::trisect::{
    BranchLocus, BridgeData, BridgePoint, CurveWords, Patch, Sign, SingularModel, TrisectError, TrisectionDiagram,
};

/// A diagram together with the optional data needed to lift it.
#[derive(Debug, Clone, Serialize)]
pub struct Fixture {
    pub name: String,
    pub diagram: TrisectionDiagram,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover: Option<BranchedCoverSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<BranchLocus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbed_bridge: Option<BridgeData>,
}

pub const FIXTURE_NAMES: [&str; 3] = ["cp2_standard", "cp2_tricuspidal_quartic", "cyclic_Sd(d)"];

pub fn fixture(name: &str) -> Result<Fixture, TrisectError> {
    let name = name.trim();
    let base = Fixture {
        name: name.to_string(),
        diagram: cp2_standard(),
        cover: None,
        locus: None,
        bridge: None,
        perturbed_bridge: None,
    };
    match name {
        "cp2_standard" => Ok(base),
        "cp2_tricuspidal_quartic" => Ok(Fixture {
            diagram: quartic_diagram(),
            cover: Some(quartic_cover()),
            locus: Some(quartic_locus()),
            bridge: Some(quartic_bridge()),
            perturbed_bridge: Some(quartic_bridge_perturbed()),
            ..base
        }),
        _ => {
            let d = name
                .strip_prefix("cyclic_Sd(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|d| d.trim().parse::<usize>().ok())
                .filter(|&d| d >= 2)
                .ok_or_else(|| TrisectError::UnknownFixture(name.to_string()))?;
            Ok(Fixture {
                cover: Some(cyclic_cover(d)),
                locus: Some(cyclic_locus(d)),
                bridge: Some(unknotted_bridge()),
                ..base
            })
        }
    }
}

fn words(alpha: &str, beta: &str, gamma: &str) -> CurveWords {
    let w = |s: &str| vec![Word::parse(s).expect("fixture word")];
    CurveWords { alpha: w(alpha), beta: w(beta), gamma: w(gamma) }
}

/// Genus-one diagram of `CP²` with `α = a`, `β = b`, `γ = -a - b`, carrying
/// words on the torus with two punctures named `a1, b1, x1, x2`.
pub fn cp2_standard() -> TrisectionDiagram {
    let mut d = TrisectionDiagram::from_i64(1, &[&[1, 0]], &[&[0, 1]], &[&[-1, -1]]);
    d.words = Some(words("a1", "b1", "b1^-1 a1^-1"));
    d.label = Some("cp2_standard".into());
    d
}

/// Doubly pointed genus-one diagram of `CP²` for the tricuspidal quartic.
/// Curve words use the corner base point with whiskers to the punctures
/// `x`, `y`.
pub fn quartic_diagram() -> TrisectionDiagram {
    let mut d = TrisectionDiagram::from_i64(1, &[&[1, 0]], &[&[0, 1]], &[&[-1, -1]]);
    d.words = Some(words("a", "y^-1 a^-1 b^-1 x^-1 b a y b", "y^-1 b^-1 y^-1 a^-1 b^-1 x^-1 b"));
    d.label = Some("cp2_tricuspidal_quartic".into());
    d
}

pub fn quartic_surface() -> SurfaceModel {
    SurfaceModel::with_names(vec![("a".into(), "b".into())], vec!["x".into(), "y".into()])
        .expect("distinct names")
        .with_convention(RelatorConvention::CornerWhiskers)
}

/// The irregular 3-fold cover: `a ↦ 1`, `b ↦ (2 3)`, `x, y ↦ (1 2)`.
pub fn quartic_cover() -> BranchedCoverSpec {
    let rep = Representation::from_cycle_strings(3, [("a", "()"), ("b", "(2 3)"), ("x", "(1 2)"), ("y", "(1 2)")])
        .expect("fixture representation");
    BranchedCoverSpec::new(quartic_surface(), rep).expect("generators match")
}

/// Three cusps on a rational curve.
pub fn quartic_locus() -> BranchLocus {
    BranchLocus { models: vec![SingularModel::Cusp; 3], surface_chi: Some(2) }
}

fn trefoil() -> BraidWord {
    BraidWord::generator_power(2, 1, 3).expect("two strands")
}

/// Two bridge points; every seam joins them and every patch is a cone on
/// the right trefoil.
pub fn quartic_bridge() -> BridgeData {
    BridgeData {
        regions: vec!["phi".into(), "complement".into()],
        points: vec![
            BridgePoint { sign: Sign::Positive, region: "phi".into() },
            BridgePoint { sign: Sign::Negative, region: "complement".into() },
        ],
        seams: [vec![[1, 2]], vec![[1, 2]], vec![[1, 2]]],
        patches: [vec![Patch::ConeOn(trefoil())], vec![Patch::ConeOn(trefoil())], vec![Patch::ConeOn(trefoil())]],
    }
}

/// The 4-bridge perturbation: four positive points in the triangular
/// region `phi`, four negative points outside it. Seam `λ` joins positive
/// point `i` to negative point `π_λ(i)` with `π₁ = 1`, `π₂ = (1 2 3)` and
/// `π₃ = (1 2)(3 4)`, so every sector sees a two-component seam link
/// capped by a trefoil cone and a trivial disk.
pub fn quartic_bridge_perturbed() -> BridgeData {
    let mut points = Vec::new();
    for _ in 0..4 {
        points.push(BridgePoint { sign: Sign::Positive, region: "phi".into() });
    }
    for _ in 0..4 {
        points.push(BridgePoint { sign: Sign::Negative, region: "complement".into() });
    }
    let seam = |p: &str| -> Vec<[usize; 2]> {
        let perm = Permutation::parse(p, 4).expect("fixture permutation");
        (0..4).map(|i| [i + 1, 5 + perm.apply(i)]).collect()
    };
    let sector = || vec![Patch::ConeOn(trefoil()), Patch::TrivialDisk];
    BridgeData {
        regions: vec!["phi".into(), "complement".into()],
        points,
        seams: [seam("()"), seam("(1 2 3)"), seam("(1 2)(3 4)")],
        patches: [sector(), sector(), sector()],
    }
}

/// Cyclic `d`-fold cover of the torus branched at two points, with the
/// meridians acting by a `d`-cycle and its inverse.
pub fn cyclic_cover(d: usize) -> BranchedCoverSpec {
    let cycle: Vec<usize> = (1..=d).collect();
    let c = Permutation::from_cycles(d, &[cycle]).expect("d-cycle");
    let images = [
        ("a1".to_string(), Permutation::identity(d)),
        ("b1".to_string(), Permutation::identity(d)),
        ("x1".to_string(), c.inverse()),
        ("x2".to_string(), c),
    ];
    let rep = Representation::new(d, images.into_iter().collect()).expect("degree d");
    BranchedCoverSpec::new(SurfaceModel::new(1, 2), rep).expect("generators match")
}

/// An unknotted sphere: smooth, so only its Euler characteristic enters.
pub fn cyclic_locus(d: usize) -> BranchLocus {
    BranchLocus { models: vec![SingularModel::CyclicD(d)], surface_chi: Some(2) }
}

/// One seam arc per system between two bridge points, trivial patches.
pub fn unknotted_bridge() -> BridgeData {
    BridgeData {
        regions: vec!["phi".into(), "complement".into()],
        points: vec![
            BridgePoint { sign: Sign::Positive, region: "phi".into() },
            BridgePoint { sign: Sign::Negative, region: "complement".into() },
        ],
        seams: [vec![[1, 2]], vec![[1, 2]], vec![[1, 2]]],
        patches: [vec![Patch::TrivialDisk], vec![Patch::TrivialDisk], vec![Patch::TrivialDisk]],
    }
}
