//! Acceptance gate: runs each criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use trisect_cli::{cmd_pullback, Input};
use trisect_core::algebra::{evaluate, orbits, verify_representation, Permutation, Presentation, Representation, Word};
use trisect_core::braid::{identify_closure, BraidWord};
use trisect_core::cover::{build_cover, euler_char_cover, lift_curve, BranchedCoverSpec, CoverSpecJson};
use trisect_core::fixtures::{self, FIXTURE_NAMES};
use trisect_core::lattice::{
    lattice_intersection, lattice_sum, row_hermite_form, smith_normal_form, IntMatrix, Sublattice,
};
use trisect_core::surface::{intersection_number, surface_relator, CurveClass};
use trisect_core::trisect::{
    algebraic_degree, invariants, parameters, parameters_chi, pullback_trisection, stabilize, validate_diagram,
    TrisectionDiagram,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn fixture_input(name: &str) -> Input {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    let bytes = std::fs::read(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    Input::new(name, bytes)
}

fn quartic_spec() -> Result<BranchedCoverSpec, String> {
    let raw: CoverSpecJson =
        serde_json::from_slice(&fixture_input("quartic_cover.json").bytes).map_err(|e| e.to_string())?;
    BranchedCoverSpec::try_from(raw).map_err(|e| e.to_string())
}

fn word(s: &str) -> Word {
    Word::parse(s).expect("literal word")
}

fn quartic_pullback_end_to_end() -> Outcome {
    let spec = quartic_spec()?;
    for (g, image) in [("y", "(1 2)"), ("b", "(2 3)"), ("a", "()"), ("x", "(1 2)")] {
        let expected = Permutation::parse(image, 3).map_err(|e| e.to_string())?;
        let actual = spec.rep().image(g).map_err(|e| e.to_string())?;
        ensure(*actual == expected, || format!("stored image of {g} is {actual}, expected {expected}"))?;
    }
    let locus = fixture_input("quartic_locus.json");
    let models: Value = serde_json::from_slice(&locus.bytes).map_err(|e| e.to_string())?;
    ensure(models["models"] == serde_json::json!(["cusp", "cusp", "cusp"]), || "locus is not three cusps".into())?;
    let report =
        cmd_pullback(&fixture_input("quartic_diagram.json"), &fixture_input("quartic_cover.json"), Some(&locus));
    ensure(report.exit_code == 0, || format!("exit {} ({:?})", report.exit_code, report.error))?;
    let r = &report.results;
    ensure(r["diagram"]["genus"] == 2, || format!("genus {}", r["diagram"]["genus"]))?;
    ensure(r["parameters_text"] == "(2; 0,0,0)", || format!("parameters {}", r["parameters_text"]))?;
    ensure(r["h1"] == "0", || format!("H1 {}", r["h1"]))?;
    ensure(r["h2_rank"] == 2, || format!("H2 rank {}", r["h2_rank"]))?;
    ensure(r["chi"] == 4, || format!("chi {}", r["chi"]))
}

fn riemann_hurwitz() -> Outcome {
    let spec = quartic_spec()?;
    let chi = euler_char_cover(&spec).map_err(|e| e.to_string())?;
    ensure(chi == -2, || format!("Riemann-Hurwitz gives {chi}"))?;
    let cover = build_cover(&spec).map_err(|e| e.to_string())?;
    ensure(cover.euler_characteristic() == -2, || format!("cell count gives {}", cover.euler_characteristic()))?;
    let genera: Vec<usize> = cover.components().iter().map(|c| c.genus()).collect();
    ensure(genera == [2], || format!("component genera {genera:?}"))
}

fn curve_lifting() -> Outcome {
    let spec = quartic_spec()?;
    let mut degrees: Vec<usize> =
        lift_curve(&spec, &word("b"), false).map_err(|e| e.to_string())?.iter().map(|l| l.degree).collect();
    degrees.sort_unstable();
    ensure(degrees == [1, 2], || format!("lift degrees of b {degrees:?}"))?;
    let d = fixtures::quartic_diagram();
    let p = pullback_trisection(&d, &spec, &fixtures::quartic_locus()).map_err(|e| e.to_string())?;
    for sys in &p.report.systems {
        let dropped = sys.rows.iter().filter(|r| !r.kept).count();
        ensure(sys.rows.len() == 3 && dropped == 1, || {
            format!("{}: {} lifts, {dropped} redundant", sys.system, sys.rows.len())
        })?;
    }
    Ok(())
}

fn representation_check() -> Outcome {
    let spec = quartic_spec()?;
    let pres = Presentation::new(vec!["b".into(), "y".into()], vec![word("y b y b^-1 y^-1 b^-1"), word("y^2 b^2")])
        .map_err(|e| e.to_string())?;
    let images: BTreeMap<String, Permutation> =
        ["b", "y"].iter().map(|g| (g.to_string(), spec.rep().image(g).unwrap().clone())).collect();
    let rep = Representation::new(3, images).map_err(|e| e.to_string())?;
    let r = verify_representation(&pres, &rep).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("failing relators {:?}", r.failing_relators))?;
    ensure(r.transitive && r.image_order == Some(6), || {
        format!("transitive {}, order {:?}", r.transitive, r.image_order)
    })?;
    let raw = ["a", "y^-1 a^-1 b^-1 x^-1 b a y b", "y^-1 b^-1 y^-1 a^-1 b^-1 x^-1 b"]
        .into_iter()
        .map(word)
        .chain([surface_relator(spec.base())]);
    for w in raw {
        let p = evaluate(&w, spec.rep()).map_err(|e| e.to_string())?;
        ensure(p.is_identity(), || format!("relator {w} maps to {p}"))?;
    }
    Ok(())
}

fn local_models() -> Outcome {
    for (w, tag) in [("s1", "unknot"), ("s1^2", "hopf_link_positive"), ("s1^3", "trefoil_right")] {
        let b = BraidWord::parse(w, Some(2)).map_err(|e| e.to_string())?;
        let got = identify_closure(&b).map_err(|e| e.to_string())?.name();
        ensure(got == tag, || format!("closure of {w} is {got}"))?;
    }
    let t = |s: &str, n| Permutation::parse(s, n).unwrap();
    let node = orbits(&[t("(1 2)", 4), t("(3 4)", 4)], 4).map_err(|e| e.to_string())?;
    ensure(node.len() == 2, || format!("node cover has {} components", node.len()))?;
    let cusp = orbits(&[t("(1 2)", 3), t("(2 3)", 3)], 3).map_err(|e| e.to_string())?;
    ensure(cusp.len() == 1, || format!("cusp cover has {} components", cusp.len()))
}

fn degree() -> Outcome {
    let d = algebraic_degree(&fixtures::quartic_bridge_perturbed(), "phi").map_err(|e| e.to_string())?;
    ensure(d == 4, || format!("degree {d}"))
}

fn cp2_baseline() -> Outcome {
    let raw = fixture_input("cp2_standard.json");
    let d: TrisectionDiagram = serde_json::from_slice(&raw.bytes).map_err(|e| e.to_string())?;
    let inv = invariants(&d).map_err(|e| e.to_string())?;
    ensure(inv.parameters.to_string() == "(1; 0,0,0)", || format!("parameters {}", inv.parameters))?;
    ensure(inv.homology.h2_rank == 1, || format!("H2 rank {}", inv.homology.h2_rank))?;
    ensure(inv.homology.h1.is_trivial(), || format!("H1 {}", inv.homology.h1))?;
    ensure(inv.chi == 3, || format!("chi {}", inv.chi))
}

/// Genus-one blocks with split sectors.
const BLOCKS: [[[i64; 2]; 3]; 6] = [
    [[1, 0], [0, 1], [-1, -1]],
    [[1, 0], [0, 1], [1, -1]],
    [[1, 0], [0, 1], [1, 0]],
    [[1, 0], [0, 1], [0, 1]],
    [[1, 0], [1, 0], [0, 1]],
    [[1, 0], [1, 0], [1, 0]],
];

fn transvect(x: &CurveClass, v: &CurveClass, k: i64) -> CurveClass {
    let w = intersection_number(x, v).expect("same genus") * k;
    CurveClass::new(x.coords().iter().zip(v.coords()).map(|(a, b)| a + &w * b).collect())
}

/// A connected sum of genus-one blocks moved by random symplectic
/// transvections, with curves shuffled and re-signed.
fn random_diagram(rng: &mut ChaCha8Rng) -> TrisectionDiagram {
    let g = rng.gen_range(1..=4);
    let mut systems = [Vec::new(), Vec::new(), Vec::new()];
    for i in 0..g {
        let block = BLOCKS.choose(rng).unwrap();
        for (s, c) in systems.iter_mut().zip(block) {
            let mut v = vec![0i64; 2 * g];
            v[2 * i] = c[0];
            v[2 * i + 1] = c[1];
            s.push(CurveClass::from_i64(&v));
        }
    }
    for _ in 0..rng.gen_range(0..6) {
        let v: Vec<i64> = (0..2 * g).map(|_| rng.gen_range(-2..=2)).collect();
        let (v, k) = (CurveClass::from_i64(&v), if rng.gen_bool(0.5) { 1 } else { -1 });
        for s in &mut systems {
            for c in s.iter_mut() {
                *c = transvect(c, &v, k);
            }
        }
    }
    for s in &mut systems {
        s.shuffle(rng);
        for c in s.iter_mut() {
            if rng.gen_bool(0.5) {
                *c = c.neg();
            }
        }
    }
    let [alpha, beta, gamma] = systems;
    TrisectionDiagram::new(g, alpha, beta, gamma)
}

fn check_stabilization(name: &str, d: &TrisectionDiagram) -> Outcome {
    let before = invariants(d).map_err(|e| format!("{name}: {e}"))?;
    for lambda in 1..=3 {
        let s = stabilize(d, lambda).map_err(|e| format!("{name}: {e}"))?;
        ensure(validate_diagram(&s).map_err(|e| e.to_string())?.passed, || format!("{name}: λ={lambda} invalid"))?;
        let after = invariants(&s).map_err(|e| format!("{name} λ={lambda}: {e}"))?;
        let (p, q) = (before.parameters.ks(), after.parameters.ks());
        let mut want = p;
        want[lambda - 1] += 1;
        ensure(after.parameters.g == before.parameters.g + 1 && q == want, || {
            format!("{name} λ={lambda}: {} -> {}", before.parameters, after.parameters)
        })?;
        ensure(after.homology.h1 == before.homology.h1, || format!("{name} λ={lambda}: H1 changed"))?;
        ensure(after.homology.h2_rank == before.homology.h2_rank, || {
            format!("{name} λ={lambda}: H2 rank {} -> {}", before.homology.h2_rank, after.homology.h2_rank)
        })?;
        ensure(after.chi == before.chi, || format!("{name} λ={lambda}: chi {} -> {}", before.chi, after.chi))?;
    }
    Ok(())
}

fn stabilization() -> Outcome {
    let names = FIXTURE_NAMES.iter().flat_map(|n| {
        if n.ends_with("(d)") {
            (2..=5).map(|d| n.replace("(d)", &format!("({d})"))).collect()
        } else {
            vec![n.to_string()]
        }
    });
    for name in names {
        let f = fixtures::fixture(&name).map_err(|e| e.to_string())?;
        check_stabilization(&name, &f.diagram)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        ensure(attempts < 10_000, || "could not generate valid random diagrams".into())?;
        let d = random_diagram(&mut rng);
        let valid = validate_diagram(&d).map(|v| v.passed).unwrap_or(false);
        if !valid || parameters(&d).is_err() {
            continue;
        }
        check_stabilization(&format!("random diagram {done}"), &d)?;
        done += 1;
    }
    Ok(())
}

fn consistency_triangle() -> Outcome {
    let p = pullback_trisection(&fixtures::quartic_diagram(), &quartic_spec()?, &fixtures::quartic_locus())
        .map_err(|e| e.to_string())?;
    let from_parameters = parameters_chi(&p.parameters);
    let from_cover = p.report.chi_branched_cover;
    let from_betti = p.report.homology.betti_chi();
    ensure(from_parameters == 4 && from_cover == Some(4) && from_betti == 4, || {
        format!("parameters {from_parameters}, branched cover {from_cover:?}, Betti {from_betti}")
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_rows(
        (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect(),
    )
    .expect("rectangular")
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_matrix(&mut rng, r, c, 9);
        let f = smith_normal_form(&a);
        let fail = || format!("SNF case {case}");
        ensure(f.u.mul(&a).and_then(|m| m.mul(&f.v)).ok() == Some(f.s.clone()), fail)?;
        for m in [&f.u, &f.v] {
            ensure(m.determinant().map(|d| d.abs().is_one()).unwrap_or(false), fail)?;
        }
        for i in 0..r {
            for j in 0..c {
                ensure(i == j || f.s[(i, j)].is_zero(), fail)?;
            }
        }
        for w in f.diagonal().windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(!w[0].is_negative() && divides, fail)?;
        }
        let mut b = a.clone();
        let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if i != j {
            for k in 0..c {
                let v = &b[(i, k)] + &b[(j, k)] * 2;
                b[(i, k)] = v;
            }
        }
        ensure(row_hermite_form(&a) == row_hermite_form(&b), || format!("HNF case {case}"))?;
    }
    for case in 0..300 {
        let n = rng.gen_range(1..=5);
        let (k1, k2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let l1 =
            Sublattice::from_vectors(n, &random_matrix(&mut rng, k1, n, 4).to_rows()).map_err(|e| e.to_string())?;
        let l2 =
            Sublattice::from_vectors(n, &random_matrix(&mut rng, k2, n, 4).to_rows()).map_err(|e| e.to_string())?;
        let sum = lattice_sum(&l1, &l2).map_err(|e| e.to_string())?;
        let meet = lattice_intersection(&l1, &l2).map_err(|e| e.to_string())?;
        ensure(sum.rank() + meet.rank() == l1.rank() + l2.rank(), || format!("modularity case {case}"))?;
        ensure(meet.is_sublattice_of(&l1).unwrap() && meet.is_sublattice_of(&l2).unwrap(), || {
            format!("intersection containment case {case}")
        })?;
    }
    for case in 0..300 {
        let n = rng.gen_range(1..=6);
        let gens = ["a", "b", "c"];
        let rep = Representation::new(n, gens.iter().map(|g| (g.to_string(), random_perm(&mut rng, n))).collect())
            .map_err(|e| e.to_string())?;
        let mut random_word = |len: usize| {
            let text: Vec<String> = (0..len)
                .map(|_| {
                    let g = gens[rng.gen_range(0..3)];
                    if rng.gen_bool(0.5) {
                        format!("{g}^-1")
                    } else {
                        g.to_string()
                    }
                })
                .collect();
            word(&text.join(" "))
        };
        let (u, v) = (random_word(case % 7), random_word(case % 5));
        let uv = evaluate(&u.concat(&v), &rep).map_err(|e| e.to_string())?;
        let composed = evaluate(&u, &rep).unwrap().compose(&evaluate(&v, &rep).unwrap()).unwrap();
        ensure(uv == composed, || format!("homomorphism case {case}"))?;
        let images: Vec<Permutation> = rep.images().values().cloned().collect();
        let os = orbits(&images, n).map_err(|e| e.to_string())?;
        let mut all: Vec<usize> = os.iter().flatten().copied().collect();
        all.sort_unstable();
        ensure(all == (0..n).collect::<Vec<_>>(), || format!("orbit partition case {case}"))?;
        ensure(os.iter().all(|o| o.iter().all(|&x| images.iter().all(|p| o.contains(&p.apply(x))))), || {
            format!("orbit invariance case {case}")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("tricuspidal quartic pullback is (2; 0,0,0) with H1 = 0, H2 rank 2, chi = 4", quartic_pullback_end_to_end),
        ("Riemann-Hurwitz and cell count give chi = -2 for the quartic cover", riemann_hurwitz),
        ("b lifts with degrees 1 and 2; each cut curve lifts to 3 curves with one redundant", curve_lifting),
        ("quartic representation satisfies the group relators and the raw relators", representation_check),
        ("local model closures and branch cover components", local_models),
        ("algebraic degree of the perturbed quartic is 4", degree),
        ("standard CP2 diagram is (1; 0,0,0) with H1 = 0, H2 rank 1, chi = 3", cp2_baseline),
        ("stabilization raises g and k_lambda and preserves H1, H2, chi", stabilization),
        ("three Euler characteristic computations agree on the quartic pullback", consistency_triangle),
        ("SNF, HNF, modularity, homomorphism and orbit properties", property_suites),
    ];
    let mut failed = 0;
    for (i, (what, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {}: PASS: {what}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL: {what}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
