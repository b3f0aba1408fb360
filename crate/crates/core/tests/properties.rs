use proptest::prelude::*;

use ncpk::bijections::{enumerate_ideals, enumerate_parking, ideal_to_path, nc_to_nn, nn_to_nc, path_decompose, path_recombine, path_to_ideal, phi, phi_inverse, OrderIdeal};
use ncpk::counting::{multifold_convolution_check, raney_convolution_check};
use ncpk::hurwitz::enumerate_factorizations;
use ncpk::nc::{enumerate_nc, is_k_indivisible_iii, kreweras};
use ncpk::{KParams, Permutation};

fn params() -> impl Strategy<Value = KParams> {
    prop::sample::select(vec![(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2)])
        .prop_map(|(k, n)| KParams::new(k, n).unwrap())
}

fn of_degree(d: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=d).collect::<Vec<usize>>()).prop_shuffle().prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn permutation(max_degree: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_degree).prop_flat_map(of_degree)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cycle_notation_round_trips(w in permutation(12)) {
        prop_assert_eq!(Permutation::parse(&w.to_string(), w.degree()).unwrap(), w.clone());
        prop_assert!((&w * &w.inverse()).is_identity());
    }

    #[test]
    fn composition_is_associative((a, b, c) in (1usize..=9).prop_flat_map(|d| (of_degree(d), of_degree(d), of_degree(d)))) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn kreweras_squares_to_rotation(p in params(), pick in any::<prop::sample::Index>()) {
        let all = enumerate_nc(p).unwrap();
        let w = pick.get(&all);
        let c = p.long_cycle();
        prop_assert!(is_k_indivisible_iii(&kreweras(w.perm()), p));
        prop_assert_eq!(kreweras(&kreweras(w.perm())), w.perm().conjugate_by(&c));
    }

    #[test]
    fn nonnesting_round_trips(p in params(), pick in any::<prop::sample::Index>()) {
        let w = pick.get(&enumerate_nc(p).unwrap()).clone();
        let ideal = nc_to_nn(&w).unwrap();
        prop_assert_eq!(nn_to_nc(&ideal).unwrap(), w);
        let path = ideal_to_path(&ideal);
        prop_assert_eq!(path_to_ideal(&path), ideal);
        let (p1, p2) = path_decompose(&path);
        prop_assert_eq!(p1.height() + p2.height(), p.n);
        prop_assert_eq!(path_recombine(p, &p1, &p2).unwrap(), path);
    }

    #[test]
    fn ideals_rebuild_from_their_pairs(p in params(), pick in any::<prop::sample::Index>()) {
        let ideals = enumerate_ideals(p);
        let ideal = pick.get(&ideals);
        prop_assert_eq!(&OrderIdeal::from_pairs(p, &ideal.pairs()).unwrap(), ideal);
        prop_assert_eq!(&OrderIdeal::from_tops(p, ideal.tops().to_vec()).unwrap(), ideal);
    }

    #[test]
    fn parking_round_trips(p in params(), pick in any::<prop::sample::Index>()) {
        prop_assume!(p.big_n() <= 9);
        let pf = pick.get(&enumerate_parking(p, 1_000_000).unwrap()).clone();
        let f = phi_inverse(&pf).unwrap();
        prop_assert_eq!(f.product(), p.long_cycle());
        prop_assert_eq!(phi(&f), pf);
    }

    #[test]
    fn hurwitz_moves_keep_the_product(p in params(), pick in any::<prop::sample::Index>(), i in 1usize..8, inverse: bool) {
        prop_assume!(p.big_n() <= 9 && p.n >= 2);
        let f = pick.get(&enumerate_factorizations(p, 1_000_000).unwrap()).clone();
        let i = 1 + i % (p.n - 1);
        let g = f.sigma(i, inverse).unwrap();
        prop_assert_eq!(g.product(), f.product());
        prop_assert_eq!(g.sigma(i, !inverse).unwrap(), f);
    }

    #[test]
    fn raney_convolutions(n in 0u64..12, p in 0i64..6, r in 1i64..5, s in 1i64..5) {
        prop_assert!(raney_convolution_check(n, p, r, s).unwrap());
        prop_assert!(multifold_convolution_check(n, p, &[r, s, 1]).unwrap());
    }
}
