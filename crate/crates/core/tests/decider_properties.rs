use locequiv::random::{random_connected_graph, random_labels, random_ops};
use locequiv::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(9)].prop_map(|q| Field::with_order(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sound_and_invariant(f in small_field(), n in 3usize..8, seed in any::<u64>(), len in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_connected_graph(&f, n, 0.3, &mut rng);
        let h = g.apply_sequence(&random_ops(&f, n, len, &mut rng)).unwrap();
        let d = decide(&g, &h).unwrap();
        let w = d.witness().expect("constructed pair is equivalent");
        prop_assert!(verify_witness(&g, &h, w));
        let ops = extract_ops(&g, &h, w).unwrap();
        prop_assert_eq!(g.apply_sequence(&ops).unwrap(), h.clone());

        // symmetric
        prop_assert!(decide(&h, &g).unwrap().is_equivalent());
        // verdicts do not change under further operators on either side
        let k = random_labels(&f, n, &mut rng);
        let base = decide_general(&g, &k).unwrap().is_equivalent();
        let g2 = g.apply_sequence(&random_ops(&f, n, 3, &mut rng)).unwrap();
        let k2 = k.apply_sequence(&random_ops(&f, n, 3, &mut rng)).unwrap();
        prop_assert_eq!(decide_general(&g2, &k).unwrap().is_equivalent(), base);
        prop_assert_eq!(decide_general(&g, &k2).unwrap().is_equivalent(), base);
    }

    #[test]
    fn transitive(f in small_field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 4;
        let g = random_labels(&f, n, &mut rng);
        let h = g.apply_sequence(&random_ops(&f, n, 5, &mut rng)).unwrap();
        let k = random_labels(&f, n, &mut rng);
        let gh = decide_general(&g, &h).unwrap().is_equivalent();
        let hk = decide_general(&h, &k).unwrap().is_equivalent();
        let gk = decide_general(&g, &k).unwrap().is_equivalent();
        prop_assert!(gh);
        prop_assert_eq!(hk, gk);
    }

    #[test]
    fn general_witnesses_extract(f in small_field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 7;
        let g = locequiv::random::random_graph(&f, n, 0.25, &mut rng);
        let h = g.apply_sequence(&random_ops(&f, n, 10, &mut rng)).unwrap();
        let d = decide_general(&g, &h).unwrap();
        let w = d.witness().expect("constructed pair is equivalent");
        let ops = extract_ops_general(&g, &h, w).unwrap();
        prop_assert_eq!(g.apply_sequence(&ops).unwrap(), h);
    }
}
