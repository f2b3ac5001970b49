use biphoton::fock::{evolve_two_photon, permanent, permanent_by_expansion, Interferometer};
use biphoton::herald::synthesize_herald;
use biphoton::linalg::{c64, numerical_rank, singular_values, symmetrize, takagi, unitarity_error, unitary_extension, RANK_TOL, UNITARY_TOL};
use biphoton::random::{random_complex, random_symmetric, random_symmetric_of_rank, random_unitary, seeded};
use biphoton::twophoton::{normalize, qudit_block, TwoPhotonState};
use biphoton::verify::{postselected_block_via_amplitudes, states_equal_up_to_phase, success_probability_postselect};
use biphoton::C64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn takagi_values_are_singular_values(seed in any::<u64>(), n in 1usize..=7) {
        let s = random_symmetric(&mut seeded(seed), n);
        let f = takagi(&s, UNITARY_TOL).unwrap();
        let d = f.diagonal();
        for (a, b) in d.iter().zip(singular_values(&s)) {
            prop_assert!((a - b).abs() < 1e-10 * (1.0 + b));
        }
        prop_assert!((f.reconstruct() - &s).norm() < 1e-9);
        prop_assert!(d.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn takagi_handles_rank_deficiency(seed in any::<u64>(), n in 1usize..=7, rank_frac in 0.0f64..1.0) {
        let mut rng = seeded(seed);
        let rank = (rank_frac * n as f64) as usize;
        let s = random_symmetric_of_rank(&mut rng, n, rank);
        let f = takagi(&s, UNITARY_TOL).unwrap();
        prop_assert!(unitarity_error(&f.v) < 1e-10);
        prop_assert!((f.reconstruct() - &s).norm() < 1e-9);
        prop_assert_eq!(f.diagonal().iter().filter(|&&x| x > 1e-10).count(), rank);
    }

    #[test]
    fn extension_embeds_the_scaled_block(seed in any::<u64>(), m1 in 1usize..=5, m2 in 1usize..=5, scale in 0.01f64..10.0) {
        let a = random_complex(&mut seeded(seed), m1, m2) * c64(scale, 0.0);
        let ext = unitary_extension(&a).unwrap();
        prop_assert!(unitarity_error(&ext.u) < 1e-10);
        prop_assert!(ext.dim <= m1 + m2);
        let block = ext.u.view((0, 0), (m1, m2)).clone_owned() * c64(ext.sigma1, 0.0);
        prop_assert!((block - &a).norm() < 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>(), n in 2usize..=6, scale in 1e-3f64..1e3) {
        let s = random_symmetric(&mut seeded(seed), n) * c64(scale, 0.0);
        let once = normalize(&s).unwrap();
        let twice = normalize(once.matrix()).unwrap();
        prop_assert!((once.matrix() - twice.matrix()).norm() < 1e-14);
        prop_assert!((once.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phase_equality_is_reflexive_and_symmetric(seed in any::<u64>(), n in 2usize..=5, theta in 0.0f64..6.3) {
        let mut rng = seeded(seed);
        let a = normalize(&random_symmetric(&mut rng, n)).unwrap().matrix().clone();
        let b = &a * C64::from_polar(1.0, theta);
        prop_assert!(states_equal_up_to_phase(&a, &a, 1e-12).0);
        prop_assert!(states_equal_up_to_phase(&a, &b, 1e-12).0);
        prop_assert!(states_equal_up_to_phase(&b, &a, 1e-12).0);
        let c = normalize(&random_symmetric(&mut rng, n)).unwrap().matrix().clone();
        prop_assert_eq!(states_equal_up_to_phase(&a, &c, 1e-6).0, states_equal_up_to_phase(&c, &a, 1e-6).0);
    }

    #[test]
    fn evolution_preserves_rank_and_norm(seed in any::<u64>(), n in 2usize..=6, rank_frac in 0.01f64..1.0) {
        let mut rng = seeded(seed);
        let rank = ((rank_frac * n as f64).ceil() as usize).clamp(1, n);
        let s = random_symmetric_of_rank(&mut rng, n, rank);
        let u = Interferometer::new(random_unitary(&mut rng, n)).unwrap();
        let out = evolve_two_photon(&u, &s).unwrap();
        prop_assert_eq!(numerical_rank(&out, RANK_TOL), rank);
        prop_assert!((2.0 * out.norm_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn both_postselection_routes_agree(seed in any::<u64>(), m in 2usize..=4, d1 in 1usize..=2, d2 in 1usize..=2) {
        let mut rng = seeded(seed);
        let modes = m.max(d1 + d2) + 1;
        let s_in = TwoPhotonState::new(random_symmetric_of_rank(&mut rng, m, m)).unwrap();
        let u = Interferometer::new(random_unitary(&mut rng, modes)).unwrap();
        let by_amplitudes = postselected_block_via_amplitudes(&u, &s_in, d1, d2).unwrap();
        let by_matrix = qudit_block(&evolve_two_photon(&u, s_in.padded(modes).matrix()).unwrap(), d1, d2);
        prop_assert!((by_amplitudes - by_matrix).norm() < 1e-10);
        let p = success_probability_postselect(&u, &s_in, d1, d2).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn ryser_matches_expansion(seed in any::<u64>(), n in 1usize..=6) {
        let m = random_complex(&mut seeded(seed), n, n);
        let fast = permanent(&m).unwrap();
        let slow = permanent_by_expansion(&m);
        prop_assert!((fast - slow).norm() <= 1e-10 * (1.0 + slow.norm()));
        let transposed = permanent(&m.transpose()).unwrap();
        prop_assert!((fast - transposed).norm() <= 1e-10 * (1.0 + slow.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn heralded_probability_is_a_probability(seed in any::<u64>(), m in 2usize..=4, extra in 0usize..=1) {
        let mut rng = seeded(seed);
        let rank = 2 + (seed as usize % (m - 1));
        let s = TwoPhotonState::new(symmetrize(&random_symmetric_of_rank(&mut rng, m, rank))).unwrap();
        let res = synthesize_herald(&s, rank + extra).unwrap();
        prop_assert!(res.success_probability > 0.0 && res.success_probability <= 1.0);
        prop_assert!(unitarity_error(res.unitary()) < 1e-10);
    }
}
