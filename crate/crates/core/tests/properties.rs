mod common;

use charpair::cohomology::CohomologyRing;
use charpair::equivalence::{are_equivalent, fingerprint, verify_witness, Mode};
use charpair::random::{random_automorphism, random_permutation, random_signs, random_twist};
use charpair::{CharacteristicPair, RingClass};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{pair_corpus, polytopal_corpus, rank3_complexes};

fn random_class(ring: &CohomologyRing, degree: usize, coeffs: &[i64]) -> RingClass {
    let width = ring.piece(degree).unwrap().basis().len();
    let c: Vec<i64> = (0..width).map(|i| coeffs[i % coeffs.len()]).collect();
    ring.class(degree, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isomorphism_is_an_equivalence(index in 0usize..10, seed in any::<u64>()) {
        let (_, c) = &rank3_complexes()[index];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = c.relabeled(&random_permutation(c.facet_count(), &mut rng));
        let e = d.relabeled(&random_permutation(c.facet_count(), &mut rng));
        prop_assert_eq!(c.find_isomorphism(c), Some((0..c.facet_count()).collect()));
        let cd = c.find_isomorphism(&d).expect("relabeling is an isomorphism");
        let de = d.find_isomorphism(&e).expect("relabeling is an isomorphism");
        let mut inverse = vec![0; cd.len()];
        for (i, &g) in cd.iter().enumerate() {
            inverse[g] = i;
        }
        prop_assert!(d.is_isomorphism(c, &inverse));
        let composed: Vec<usize> = cd.iter().map(|&g| de[g]).collect();
        prop_assert!(c.is_isomorphism(&e, &composed));
    }

    #[test]
    fn f_and_h_vectors_ignore_labels(index in 0usize..10, seed in any::<u64>()) {
        let (_, c) = &rank3_complexes()[index];
        let d = c.relabeled(&random_permutation(c.facet_count(), &mut ChaCha8Rng::seed_from_u64(seed)));
        prop_assert_eq!(c.f_vector(), d.f_vector());
        prop_assert_eq!(c.h_vector().ok(), d.h_vector().ok());
    }

    #[test]
    fn validity_survives_automorphisms_and_signs(index in 0usize..30, seed in any::<u64>()) {
        let corpus = pair_corpus();
        let (_, p) = &corpus[index % corpus.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_automorphism(p.complex(), &mut rng);
        let q = p.relabeled(&phi).with_signs(&random_signs(p.facet_count(), &mut rng));
        prop_assert_eq!(q.complex().vertices().len(), p.complex().vertices().len());
        prop_assert!(q.is_valid());
    }

    #[test]
    fn families_validate(a in 0i64..100) {
        prop_assert!(CharacteristicPair::lens_family(a).is_valid());
        prop_assert!(CharacteristicPair::prism_family(a).is_valid());
    }

    #[test]
    fn fingerprint_and_witness_survive_twists(index in 0usize..30, seed in any::<u64>()) {
        let corpus = pair_corpus();
        let (_, p) = &corpus[index % corpus.len()];
        let q = random_twist(p, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(fingerprint(p), fingerprint(&q));
        let w = are_equivalent(p, &q, Mode::Weak).unwrap().expect("twists are equivalent");
        prop_assert!(verify_witness(p, &q, &w));
        prop_assert!(verify_witness(&q, p, &w.inverse().unwrap()));
    }

    #[test]
    fn multiplication_laws(index in 0usize..30, a in prop::collection::vec(-3i64..=3, 1..6), b in prop::collection::vec(-3i64..=3, 1..6), c in prop::collection::vec(-3i64..=3, 1..6)) {
        let corpus = polytopal_corpus();
        let (_, p) = &corpus[index % corpus.len()];
        let ring = CohomologyRing::new(p).unwrap();
        let n = p.rank();
        let (x, y, z) = (random_class(&ring, 2, &a), random_class(&ring, 2, &b), random_class(&ring, 2, &c));
        let mul = |u: &RingClass, v: &RingClass| ring.multiply(u, v).unwrap();
        if n >= 2 {
            prop_assert!(ring.equal(&mul(&x, &y), &mul(&y, &x)).unwrap());
            prop_assert!(ring.equal(&mul(&x.plus(&y), &z), &mul(&x, &z).plus(&mul(&y, &z))).unwrap());
            prop_assert!(ring.equal(&mul(&x.scaled(3), &y), &mul(&x, &y).scaled(3)).unwrap());
        }
        if n >= 3 {
            prop_assert!(ring.equal(&mul(&mul(&x, &y), &z), &mul(&x, &mul(&y, &z))).unwrap());
        }
    }

    #[test]
    fn restriction_is_a_ring_map(index in 0usize..30, facet in 0usize..16, a in prop::collection::vec(-2i64..=2, 1..6), b in prop::collection::vec(-2i64..=2, 1..6)) {
        let corpus: Vec<_> = polytopal_corpus().into_iter().filter(|(_, p)| p.rank() >= 2).collect();
        let (_, p) = &corpus[index % corpus.len()];
        let ring = CohomologyRing::new(p).unwrap();
        let f = facet % p.facet_count();
        let res = ring.restriction(f).unwrap();
        let (x, y) = (random_class(&ring, 2, &a), random_class(&ring, 2, &b));
        let image = |u: &RingClass| res.restrict(&ring, u).unwrap();
        if p.rank() >= 3 {
            let lhs = image(&ring.multiply(&x, &y).unwrap());
            let rhs = res.target.multiply(&image(&x), &image(&y)).unwrap();
            prop_assert!(res.target.equal(&lhs, &rhs).unwrap());
        }
        prop_assert!(res.target.equal(&image(&x.plus(&y)), &image(&x).plus(&image(&y))).unwrap());
    }
}

#[test]
fn betti_numbers_match_h_vectors() {
    for (name, p) in polytopal_corpus() {
        let ring = CohomologyRing::new(&p).unwrap();
        let h = p.complex().h_vector().unwrap();
        let even: Vec<i64> = ring.betti().iter().step_by(2).map(|&b| b as i64).collect();
        assert_eq!(even, h, "{name}");
        assert_eq!(ring.euler_char(), p.complex().vertex_count() as i64, "{name}");
        assert!(!ring.has_torsion(), "{name}");
        let betti = ring.betti();
        let reversed: Vec<usize> = betti.iter().rev().copied().collect();
        assert_eq!(betti, reversed, "Poincare duality of ranks for {name}");
        assert!(ring.generated_in_degree_two().unwrap(), "{name}");
    }
}

#[test]
fn h_vectors_are_symmetric() {
    for (name, p) in polytopal_corpus() {
        let h = p.complex().h_vector().unwrap();
        let reversed: Vec<i64> = h.iter().rev().copied().collect();
        assert_eq!(h, reversed, "{name}");
        assert_eq!(h.iter().sum::<i64>(), p.complex().vertex_count() as i64, "{name}");
    }
}

#[test]
fn facet_subpairs_are_valid() {
    for (name, p) in pair_corpus().into_iter().filter(|(_, p)| p.rank() >= 2) {
        for f in 0..p.facet_count() {
            let sub = p.facet_subpair(f).unwrap();
            assert!(sub.pair.is_valid(), "{name} facet {f}");
            assert_eq!(sub.pair.rank(), p.rank() - 1);
        }
    }
}

#[test]
fn subpairs_of_standard_examples() {
    let cp3 = CharacteristicPair::simplex(3);
    for f in 0..4 {
        let sub = cp3.facet_subpair(f).unwrap().pair;
        assert!(are_equivalent(&sub, &CharacteristicPair::simplex(2), Mode::Weak)
            .unwrap()
            .is_some());
    }
    for p in -3..=3 {
        let square = CharacteristicPair::square(charpair::SquareKind::A(p));
        let cube = square.product_with_s2().unwrap();
        let bottom = cube.facet_subpair(4).unwrap().pair;
        assert!(are_equivalent(&bottom, &square, Mode::Weak).unwrap().is_some());
    }
    let k1 = CharacteristicPair::polygon_sum(1);
    assert!(are_equivalent(&k1, &CharacteristicPair::simplex(2), Mode::Weak)
        .unwrap()
        .is_some());
    assert_eq!(
        CharacteristicPair::simplex(1)
            .product_with_s2()
            .unwrap()
            .complex()
            .vertex_count(),
        4
    );
    assert!(are_equivalent(
        &CharacteristicPair::simplex(1).product_with_s2().unwrap(),
        &CharacteristicPair::square(charpair::SquareKind::A(0)),
        Mode::Weak
    )
    .unwrap()
    .is_some());
}

#[test]
fn simplex_pairs_validate_up_to_rank_6() {
    for n in 1..=6 {
        assert!(CharacteristicPair::simplex(n).is_valid());
    }
}

#[test]
fn product_with_s2_shapes() {
    for (name, p) in pair_corpus().into_iter().filter(|(_, p)| p.rank() == 2) {
        let q = p.product_with_s2().unwrap();
        assert!(q.is_valid(), "{name}");
        assert_eq!(q.facet_count(), p.facet_count() + 2);
        assert_eq!(q.complex().vertex_count(), 2 * p.complex().vertex_count());
    }
}

#[test]
fn disc_orderings_of_rank3_complexes() {
    for (name, c) in rank3_complexes() {
        let ord = c.disc_ordering().unwrap();
        for k in 0..c.facet_count() {
            assert!(c.verify_disc_union(&ord, k), "{name} k={k}");
        }
    }
}
