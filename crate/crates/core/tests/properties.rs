use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trisect_core::algebra::{evaluate, orbits, Permutation, Representation, Word};
use trisect_core::cover::{build_cover, euler_char_cover, lift_cycles, BranchedCoverSpec};
use trisect_core::lattice::{
    lattice_intersection, lattice_sum, row_hermite_form, smith_normal_form, IntMatrix, Sublattice,
};
use trisect_core::surface::{intersection_number, surface_relator, RelatorConvention, SurfaceModel};

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    let rs: Vec<Vec<BigInt>> =
        (0..rows).map(|i| (0..cols).map(|j| BigInt::from(entries[i * cols + j])).collect()).collect();
    IntMatrix::from_rows(rs).unwrap()
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| proptest::collection::vec(-9i64..=9, r * c).prop_map(move |e| matrix(r, c, &e)))
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// A random representation satisfying the surface relator: all generators
/// but the relator's last letter are random and that one is solved for.
fn random_cover(seed: u64, g: usize, p: usize, n: usize, convention: RelatorConvention) -> BranchedCoverSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = SurfaceModel::new(g, p).with_convention(convention);
    let relator = surface_relator(&base);
    let last = relator.letters().last().cloned();
    let mut images: std::collections::BTreeMap<String, Permutation> = base
        .generators()
        .into_iter()
        .map(|gname| {
            let perm = if rng.gen_bool(0.2) { Permutation::identity(n) } else { random_perm(&mut rng, n) };
            (gname, perm)
        })
        .collect();
    if let Some(l) = last {
        images.insert(l.generator.clone(), Permutation::identity(n));
        let prefix = Word::from_letters(relator.letters()[..relator.len() - 1].to_vec());
        let rest = evaluate(&prefix, &Representation::new(n, images.clone()).unwrap()).unwrap();
        let solved = if l.inverse { rest } else { rest.inverse() };
        images.insert(l.generator, solved);
    }
    BranchedCoverSpec::new(base, Representation::new(n, images).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_form_is_a_divisibility_chain(a in small_matrix()) {
        let f = smith_normal_form(&a);
        prop_assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.s.clone());
        prop_assert!(f.u.determinant().unwrap().magnitude().is_one());
        prop_assert!(f.v.determinant().unwrap().magnitude().is_one());
        let d = f.diagonal();
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    prop_assert!(f.s[(i, j)].is_zero());
                }
            }
        }
        for w in d.windows(2) {
            prop_assert!(w[0] >= BigInt::zero());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hermite_form_is_invariant_under_unimodular_row_operations(a in small_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = a.clone();
        for _ in 0..6 {
            let (i, j) = (rng.gen_range(0..b.rows()), rng.gen_range(0..b.rows()));
            if i != j {
                let k: i64 = rng.gen_range(-3..=3);
                for c in 0..b.cols() {
                    let v = &b[(i, c)] + &b[(j, c)] * k;
                    b[(i, c)] = v;
                }
            }
        }
        prop_assert_eq!(row_hermite_form(&a), row_hermite_form(&b));
    }

    #[test]
    fn modularity_rank_identity(
        n in 1usize..=5,
        xs in proptest::collection::vec(-4i64..=4, 0..=25),
        ys in proptest::collection::vec(-4i64..=4, 0..=25),
    ) {
        let lat = |v: &[i64]| {
            let cols: Vec<Vec<BigInt>> = v.chunks_exact(n).map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
            Sublattice::from_vectors(n, &cols).unwrap()
        };
        let (l1, l2) = (lat(&xs), lat(&ys));
        let sum = lattice_sum(&l1, &l2).unwrap();
        let meet = lattice_intersection(&l1, &l2).unwrap();
        prop_assert_eq!(sum.rank() + meet.rank(), l1.rank() + l2.rank());
        prop_assert!(meet.is_sublattice_of(&l1).unwrap());
        prop_assert!(meet.is_sublattice_of(&l2).unwrap());
        prop_assert!(l1.is_sublattice_of(&sum).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), n in 1usize..=6, len_u in 0usize..8, len_v in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = Representation::new(
            n,
            ["a", "b", "c"].iter().map(|g| (g.to_string(), random_perm(&mut rng, n))).collect(),
        )
        .unwrap();
        let mut word = |len: usize| {
            let text: Vec<String> = (0..len)
                .map(|_| {
                    let g = ["a", "b", "c"][rng.gen_range(0..3)];
                    if rng.gen_bool(0.5) { format!("{g}^-1") } else { g.to_string() }
                })
                .collect();
            Word::parse(&text.join(" ")).unwrap()
        };
        let (u, v) = (word(len_u), word(len_v));
        let uv = evaluate(&u.concat(&v), &rep).unwrap();
        prop_assert_eq!(uv, evaluate(&u, &rep).unwrap().compose(&evaluate(&v, &rep).unwrap()).unwrap());
        prop_assert!(evaluate(&u.concat(&u.inverse()), &rep).unwrap().is_identity());
    }

    #[test]
    fn orbits_partition_and_are_invariant(seed in any::<u64>(), n in 1usize..=8, k in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Permutation> = (0..k).map(|_| random_perm(&mut rng, n)).collect();
        let os = orbits(&gens, n).unwrap();
        let mut all: Vec<usize> = os.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
        for o in &os {
            for g in &gens {
                for &x in o {
                    prop_assert!(o.contains(&g.apply(x)));
                }
            }
        }
    }

    #[test]
    fn cover_cell_count_agrees_with_riemann_hurwitz(
        seed in any::<u64>(),
        g in 0usize..=2,
        p in 1usize..=4,
        n in 1usize..=5,
        whiskers in any::<bool>(),
    ) {
        let convention = if whiskers { RelatorConvention::CornerWhiskers } else { RelatorConvention::Standard };
        let spec = random_cover(seed, g, p, n, convention);
        let cover = build_cover(&spec).unwrap();
        prop_assert_eq!(cover.euler_characteristic(), euler_char_cover(&spec).unwrap());
        prop_assert_eq!(cover.components().len(), spec.rep().orbits().len());
        for c in cover.components() {
            let form = c.intersection_form();
            prop_assert_eq!(form.rows(), 2 * c.genus());
        }
        let word = Word::parse("a1 b1^-1").unwrap_or_else(|_| Word::empty());
        if g >= 1 {
            let lifts = lift_cycles(&spec, &word).unwrap();
            prop_assert_eq!(lifts.iter().map(|l| l.degree).sum::<usize>(), n);
            // Lifted classes pair like the base curves: the preimages of a1 and b1
            // meet once per sheet in total.
            let a = cover.lift_classes(&Word::parse("a1").unwrap(), false).unwrap();
            let b = cover.lift_classes(&Word::parse("b1").unwrap(), false).unwrap();
            let mut total = BigInt::zero();
            for x in &a {
                for y in &b {
                    if x.lift.component == y.lift.component {
                        total += intersection_number(&x.class, &y.class).unwrap();
                    }
                }
            }
            prop_assert_eq!(total, BigInt::from(n));
        }
    }
}
