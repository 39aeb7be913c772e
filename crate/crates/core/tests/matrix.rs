mod common;

use common::props::*;
use common::rng;
use pebblelab::matrix::*;
use proptest::prelude::*;
use rand::Rng;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let (x, y) = (r(a, b), r(c, d));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) * &y.recip(), x.clone());
        }
        prop_assert!(x.denom() > 0.into());
        prop_assert_eq!(x.to_ratio_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn good_power_preserves_partition(seed in any::<u64>(), n in 1usize..9, p0 in 0.3f64..0.95) {
        let mut g = rng(seed);
        prop_assert_eq!(check_good_power(&random_symmetric::<Rational>(&mut g, n, p0)), Ok(()));
        prop_assert_eq!(check_good_power(&random_symmetric::<bool>(&mut g, n, p0)), Ok(()));
    }

    #[test]
    fn x_related_recovery(seed in any::<u64>(), m in 1usize..7, n in 1usize..7) {
        let mut g = rng(seed);
        let p0 = g.gen_range(0.4..0.9);
        prop_assert_eq!(check_x_related(&random_no_null_lines::<Rational>(&mut g, m, n, p0)), Ok(()));
        prop_assert_eq!(check_x_related(&random_no_null_lines::<bool>(&mut g, m, n, p0)), Ok(()));
    }

    #[test]
    fn stochastic_block_sizes(seed in any::<u64>(), n in 1usize..9) {
        let mut g = rng(seed);
        let x = random_doubly_stochastic(&mut g, n);
        prop_assert!(x.is_doubly_stochastic());
        prop_assert_eq!(check_stochastic_blocks(&x), Ok(()));
    }

    #[test]
    fn fixed_space_counts_blocks(seed in any::<u64>(), n in 1usize..9) {
        let mut g = rng(seed);
        prop_assert_eq!(check_fixed_space(&random_doubly_stochastic(&mut g, n)), Ok(()));
    }

    #[test]
    fn commuting_implies_stable(seed in any::<u64>(), n in 1usize..9) {
        let mut g = rng(seed);
        let w = random_witness::<Rational>(&mut g, n, |s| r(1, s as i64));
        prop_assert_eq!(check_commuting_stable(&w, Arithmetic::Rational), Ok(()));
        let w = random_witness::<bool>(&mut g, n, |_| true);
        prop_assert_eq!(check_commuting_stable(&w, Arithmetic::Boolean), Ok(()));
    }

    #[test]
    fn matrix_product_associates(seed in any::<u64>(), n in 1usize..5) {
        let mut g = rng(seed);
        let a = random_no_null_lines::<Rational>(&mut g, n, n + 1, 0.5);
        let b = random_no_null_lines::<Rational>(&mut g, n + 1, n, 0.5);
        let c = random_symmetric::<Rational>(&mut g, n, 0.5);
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().support(), a.support().mul(&b.support()).unwrap());
    }

    #[test]
    fn boolean_solver_is_maximal(seed in any::<u64>(), nv in 1usize..10) {
        let mut g = rng(seed);
        prop_assert_eq!(check_bool_maximal(&random_bool_system(&mut g, nv)), Ok(()));
    }
}

#[test]
fn stochastic_relatedness_fails_off_doubly_stochastic() {
    let x = RatMatrix::from_rows(vec![vec![r(1, 2), r(1, 2)], vec![r(1, 2), r(1, 3)]]).unwrap();
    assert_eq!(check_stochastic_relatedness(&x), Err(MatrixError::NotDoublyStochastic));
}

#[test]
fn stability_detects_unstable_partition() {
    let p4 = RatMatrix::from_ints(&[&[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]]).unwrap();
    let ends = Partition::new(4, vec![vec![0, 3], vec![1, 2]]).unwrap();
    assert!(stability(&p4, &ends, Arithmetic::Rational).unwrap().stable);
    let wrong = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
    assert!(!stability(&p4, &wrong, Arithmetic::Rational).unwrap().stable);
    // boolean stability is coarser: only existence of a neighbour matters
    let star = RatMatrix::from_ints(&[&[0, 1, 1], &[1, 0, 0], &[1, 0, 0]]).unwrap();
    let mixed = Partition::new(3, vec![vec![0, 1, 2]]).unwrap();
    assert!(!stability(&star, &mixed, Arithmetic::Rational).unwrap().stable);
    assert!(stability(&star.support(), &mixed, Arithmetic::Boolean).unwrap().stable);
}
