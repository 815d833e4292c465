mod common;

use common::*;
use proptest::prelude::*;

use c2sseq::abgroup::{smith_normal_form, IntMatrix};
use c2sseq::c2cohomology::cohomology_periodic;
use c2sseq::gradedring::Polynomial;
use c2sseq::scenarios::builtin;
use num_traits::Zero;

#[test]
fn d_squared_vanishes_on_builtins() {
    property_d_squared().unwrap();
}

#[test]
fn page_turns_divide_orders() {
    property_order_division().unwrap();
}

#[test]
fn cohomology_is_two_periodic() {
    property_periodicity(96).unwrap();
}

#[test]
fn ku_checkerboard() {
    property_checkerboard().unwrap();
}

#[test]
fn stem_zero_bound_is_monotone() {
    property_monotonicity(48).unwrap();
}

#[test]
fn reruns_are_byte_identical() {
    property_byte_identical().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_diagonal_divides(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..4)) {
        let a = IntMatrix::from_rows_with_cols(&rows, 3);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        let d = s.diagonal();
        for w in d.windows(2) {
            if !w[1].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero(), "{:?}", d);
            }
        }
    }

    #[test]
    fn h0_is_fixed_points_rank(ps in module_strategy()) {
        let m = module_of(&ps);
        let h0 = cohomology_periodic(&m, 0);
        let fixed_free: usize = ps
            .iter()
            .map(|p| match (p.order, p.action) {
                (0, 1) | (0, 0) => 1,
                _ => 0,
            })
            .sum();
        prop_assert_eq!(h0.free_rank(), fixed_free);
    }

    #[test]
    fn normal_form_is_idempotent(e in prop::collection::vec(0u32..5, 3)) {
        let ring = builtin("ko-endo").unwrap().presentation.unwrap();
        let text = format!("h1^{}*a^{}*z^{}", e[0], e[1], e[2]);
        let p: Polynomial = ring.parse(&text).unwrap();
        let once = ring.normalize(&p).unwrap();
        prop_assert_eq!(ring.normalize(&once).unwrap(), once.clone());
    }
}
