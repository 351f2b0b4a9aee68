//! Regression checks for the worked examples: the standard `CP²` diagram,
//! the local branch models and the tricuspidal quartic pipeline.
//!
//! Checks are keyed by a descriptive anchor. A check whose pipeline errors
//! fails with the error as its observed value.

use std::fmt::Display;

use serde::Serialize;

use trisect_core::algebra::{evaluate, orbits, Permutation, Presentation, Representation, Word};
use trisect_core::braid::{identify_closure, total_monodromy, BraidWord, BraidedSurfaceDescriptor};
use trisect_core::cover::{build_cover, euler_char_cover, lift_curve, parallel_pairs, BranchedCoverSpec};
use trisect_core::fixtures;
use trisect_core::surface::{abelianize, surface_relator, CurveClass};
use trisect_core::trisect::{
    algebraic_degree, invariants, pullback_trisection, seam_link, validate_diagram, BranchLocus, BridgeData, Pullback,
    SeamEvent, SingularModel, TrisectionDiagram,
};

/// The inputs the checks run on; tests substitute perturbed copies.
#[derive(Debug, Clone)]
pub struct ExampleSet {
    pub cp2: TrisectionDiagram,
    pub quartic_diagram: TrisectionDiagram,
    pub quartic_cover: BranchedCoverSpec,
    pub quartic_locus: BranchLocus,
    pub quartic_bridge_perturbed: BridgeData,
}

impl ExampleSet {
    pub fn builtin() -> Self {
        ExampleSet {
            cp2: fixtures::cp2_standard(),
            quartic_diagram: fixtures::quartic_diagram(),
            quartic_cover: fixtures::quartic_cover(),
            quartic_locus: fixtures::quartic_locus(),
            quartic_bridge_perturbed: fixtures::quartic_bridge_perturbed(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub anchor: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn check<T: Display, E: Display>(&mut self, anchor: &str, expected: impl Display, actual: Result<T, E>) {
        let expected = expected.to_string();
        let (actual, passed) = match actual {
            Ok(v) => {
                let v = v.to_string();
                let ok = v == expected;
                (v, ok)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.0.push(CheckResult { anchor: anchor.to_string(), expected, actual, passed });
    }
}

fn word(s: &str) -> Word {
    Word::parse(s).expect("built-in word")
}

pub fn run(set: &ExampleSet) -> Vec<CheckResult> {
    let mut c = Checks(Vec::new());
    cp2_checks(&mut c, &set.cp2);
    local_model_checks(&mut c);
    quartic_checks(&mut c, set);
    c.0
}

fn cp2_checks(c: &mut Checks, d: &TrisectionDiagram) {
    let inv = invariants(d).map_err(|e| e.to_string());
    c.check("CP2 standard diagram: cut systems valid", true, validate_diagram(d).map(|v| v.passed));
    c.check("CP2 standard diagram: parameters", "(1; 0,0,0)", inv.as_ref().map(|i| i.parameters.to_string()));
    c.check("CP2 standard diagram: H1", "0", inv.as_ref().map(|i| i.homology.h1.to_string()));
    c.check("CP2 standard diagram: H2 rank", 1, inv.as_ref().map(|i| i.homology.h2_rank));
    c.check("CP2 standard diagram: Euler characteristic", 3, inv.as_ref().map(|i| i.chi));
    let relation = match (d.alpha.first(), d.beta.first(), d.gamma.first()) {
        (Some(a), Some(b), Some(g)) => {
            let sum: Vec<_> = a.coords().iter().zip(b.coords()).map(|(x, y)| -(x + y)).collect();
            Ok(CurveClass::new(sum) == *g)
        }
        _ => Err("missing curves"),
    };
    c.check("CP2 standard diagram: [gamma] = -[alpha] - [beta]", true, relation);
}

fn local_model_checks(c: &mut Checks) {
    for (w, tag) in [("s1", "unknot"), ("s1^2", "hopf_link_positive"), ("s1^3", "trefoil_right")] {
        let b = BraidWord::parse(w, Some(2)).expect("built-in braid");
        c.check(&format!("local models: closure of {w}"), tag, identify_closure(&b).map(|t| t.name()));
    }
    let t = |s: &str, n: usize| Permutation::parse(s, n).expect("built-in permutation");
    c.check("local models: node cover components", 2, orbits(&[t("(1 2)", 4), t("(3 4)", 4)], 4).map(|o| o.len()));
    c.check("local models: cusp cover connected", 1, orbits(&[t("(1 2)", 3), t("(2 3)", 3)], 3).map(|o| o.len()));
    let node: Result<BraidedSurfaceDescriptor, _> =
        serde_json::from_str(r#"{"strands":2,"sequence":[{"event":"positive_node","at":1}]}"#);
    c.check(
        "local models: positive node descriptor",
        "hopf_link_positive",
        node.map_err(|e| e.to_string())
            .and_then(|d| identify_closure(&total_monodromy(&d)).map_err(|e| e.to_string()))
            .map(|t| t.name()),
    );
    let link = |e: SeamEvent| seam_link(&[e]).map(|r| r.pieces[0].link.clone());
    c.check("local models: cusp link", "trefoil_right", link(SeamEvent::Model(SingularModel::Cusp)));
    c.check("local models: tangency link", "unknot", link(SeamEvent::Tangency));
}

fn quartic_checks(c: &mut Checks, set: &ExampleSet) {
    let spec = &set.quartic_cover;
    let images = |gens: &[&str]| -> Result<Representation, String> {
        let mut m = std::collections::BTreeMap::new();
        for g in gens {
            m.insert(g.to_string(), spec.rep().image(g).map_err(|e| e.to_string())?.clone());
        }
        Representation::new(spec.degree(), m).map_err(|e| e.to_string())
    };
    let presentation =
        Presentation::new(vec!["b".into(), "y".into()], vec![word("y b y b^-1 y^-1 b^-1"), word("y y b b")])
            .expect("built-in presentation");
    let group = images(&["b", "y"])
        .and_then(|rep| trisect_core::algebra::verify_representation(&presentation, &rep).map_err(|e| e.to_string()));
    c.check(
        "tricuspidal quartic: complement group representation",
        "relators hold, transitive, order 6",
        group.map(|r| {
            format!(
                "relators {}, {}, order {}",
                if r.passed { "hold" } else { "fail" },
                if r.transitive { "transitive" } else { "intransitive" },
                r.image_order.map_or("unknown".to_string(), |o| o.to_string())
            )
        }),
    );
    let raw = ["a", "y^-1 a^-1 b^-1 x^-1 b a y b", "y^-1 b^-1 y^-1 a^-1 b^-1 x^-1 b"]
        .into_iter()
        .map(word)
        .chain([surface_relator(spec.base())])
        .map(|w| evaluate(&w, spec.rep()).map(|p| p.is_identity()))
        .collect::<Result<Vec<_>, _>>()
        .map(|v| v.iter().all(|&b| b));
    c.check("tricuspidal quartic: raw relators map to the identity", true, raw);

    c.check("tricuspidal quartic: cover Euler characteristic", -2, euler_char_cover(spec));
    let cover = build_cover(spec);
    c.check(
        "tricuspidal quartic: cover genus",
        "1 component of genus 2",
        cover.as_ref().map(|k| {
            let g: Vec<String> = k.components().iter().map(|x| x.genus().to_string()).collect();
            format!("{} component of genus {}", g.len(), g.join(", "))
        }),
    );
    c.check(
        "tricuspidal quartic: lift degrees of b",
        "1, 2",
        lift_curve(spec, &word("b"), false)
            .map(|ls| ls.iter().map(|l| l.degree.to_string()).collect::<Vec<_>>().join(", ")),
    );
    let lifted = cover.as_ref().map_err(|e| e.to_string()).and_then(|k| {
        let words = set.quartic_diagram.words.as_ref().ok_or("no curve words")?;
        let mut shape = Vec::new();
        for ws in [&words.alpha, &words.beta, &words.gamma] {
            let w = ws.first().ok_or("empty cut system")?;
            let lifts = k.lift_classes(w, true).map_err(|e| e.to_string())?;
            let classes: Vec<CurveClass> = lifts.into_iter().map(|l| l.class).collect();
            shape.push(format!("{} curves/{} parallel", classes.len(), parallel_pairs(&classes).len()));
        }
        Ok::<_, String>(shape.join("; "))
    });
    c.check(
        "tricuspidal quartic: lifted cut curves",
        "3 curves/1 parallel; 3 curves/1 parallel; 3 curves/1 parallel",
        lifted,
    );
    let classes_match = set.quartic_diagram.words.as_ref().ok_or("no curve words".to_string()).and_then(|ws| {
        let pairs = [
            (&ws.alpha, &set.quartic_diagram.alpha),
            (&ws.beta, &set.quartic_diagram.beta),
            (&ws.gamma, &set.quartic_diagram.gamma),
        ];
        for (words, classes) in pairs {
            for (w, k) in words.iter().zip(classes.iter()) {
                if abelianize(spec.base(), w).map_err(|e| e.to_string())? != *k {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    c.check("tricuspidal quartic: curve words represent the diagram classes", true, classes_match);

    let pb: Result<Pullback, String> =
        pullback_trisection(&set.quartic_diagram, spec, &set.quartic_locus).map_err(|e| e.to_string());
    c.check("tricuspidal quartic: pullback parameters", "(2; 0,0,0)", pb.as_ref().map(|p| p.parameters.to_string()));
    c.check("tricuspidal quartic: pullback H1", "0", pb.as_ref().map(|p| p.report.homology.h1.to_string()));
    c.check("tricuspidal quartic: pullback H2 rank", 2, pb.as_ref().map(|p| p.report.homology.h2_rank));
    c.check("tricuspidal quartic: pullback Euler characteristic", 4, pb.as_ref().map(|p| p.report.chi));
    c.check(
        "tricuspidal quartic: Euler characteristic by branched-cover count",
        4,
        pb.as_ref().map_err(Clone::clone).and_then(|p| p.report.chi_branched_cover.ok_or("not computed".to_string())),
    );
    c.check(
        "tricuspidal quartic: Euler characteristic from Betti numbers",
        4,
        pb.as_ref().map(|p| p.report.chi_from_betti),
    );
    c.check(
        "tricuspidal quartic: algebraic degree after perturbation",
        4,
        algebraic_degree(&set.quartic_bridge_perturbed, "phi"),
    );
}
