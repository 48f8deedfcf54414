use liecomm::algebra::{bracket, su, AlgebraElement};
use liecomm::group::{group_commutator, GroupElement};
use liecomm::numkit::{self, mexp, mlog_principal};
use liecomm::solver::{
    c_map, decompose_algebra, decompose_group, phi, phi_inverse_first, AlgebraConfig, GroupConfig,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(n: usize, norm: f64, seed: u64) -> AlgebraElement {
    AlgebraElement::random(&su(n), norm, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algebra_decomposition_is_small_and_exact(n in 2usize..=5, seed in any::<u64>(), log_eps in -8.0f64..-0.5) {
        let eps = 10f64.powf(log_eps);
        let a = su(n);
        let z = element(n, eps, seed);
        let d = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap();
        prop_assert!(d.residual <= 1e-9);
        prop_assert!((d.norm_x - eps.sqrt()).abs() <= 1e-12);
        prop_assert!(d.norm_y <= eps / d.gap * (1.0 + 1e-9));
        let direct = (bracket(&d.x, &d.y).unwrap() - &z).norm();
        prop_assert!(direct <= 1e-9);
    }

    #[test]
    fn phi_and_inverse(n in 2usize..=4, s1 in any::<u64>(), s2 in any::<u64>(), nx in 0.0f64..0.5, ny in 0.0f64..0.5) {
        let x = element(n, nx, s1);
        let y = element(n, ny, s2);
        let p = phi(&x, &y).unwrap();
        prop_assert!((bracket(&p, &y).unwrap() - c_map(&x, &y).unwrap()).norm() <= 1e-11);
        prop_assert!((phi_inverse_first(&p, &y).unwrap() - &x).norm() <= 1e-12);
    }

    #[test]
    fn log_inverts_exp(n in 2usize..=5, seed in any::<u64>(), norm in 0.0f64..2.0) {
        let x = element(n, norm, seed).to_matrix().unwrap();
        let back = mlog_principal(&mexp(&x), 1e-6).unwrap();
        prop_assert!(numkit::frob(&(back - x)) <= 1e-10);
    }

    #[test]
    fn group_decomposition_reproduces_target(n in 2usize..=3, seed in any::<u64>(), log_eps in -5.0f64..-1.5) {
        let a = su(n);
        let z = GroupElement::exp(&element(n, 10f64.powf(log_eps), seed)).unwrap();
        let d = decompose_group(&a, &z, &GroupConfig::default()).unwrap();
        let recomputed = numkit::frob(&(group_commutator(&d.a, &d.b).matrix() - z.matrix()));
        prop_assert!(recomputed <= 1e-8);
        prop_assert!((recomputed - d.residual).abs() <= 1e-12);
    }
}
