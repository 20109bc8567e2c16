//! Property tests for the exact solving kit: rank bookkeeping, kernel and
//! cokernel identities, and solvability of constructed-consistent systems.

use proptest::prelude::*;
use semicat::linalg::{cokernel, kernel, linear_kit, rank, solve, Mat};
use semicat::FieldSpec;

fn small_entries() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..=4, 1..=20)
}

fn mat_from(field: FieldSpec, rows: usize, cols: usize, data: &[i64]) -> Mat {
    Mat::from_fn(field, rows, cols, |i, j| field.from_i64(data[(i * cols + j) % data.len()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_and_cokernel_bookkeeping(
        data in small_entries(),
        rows in 1usize..5,
        cols in 1usize..5,
        prime in prop_oneof![Just(0u64), Just(2), Just(5)],
    ) {
        let field = if prime == 0 { FieldSpec::Q } else { FieldSpec::Fp(prime) };
        let a = mat_from(field, rows, cols, &data);
        let r = rank(&a);
        let k = kernel(&a);
        prop_assert_eq!(r + k.cols, cols);
        prop_assert!(a.mul(&k).is_zero());
        let (proj, sect) = cokernel(&a);
        prop_assert_eq!(proj.rows, rows - r);
        prop_assert!(proj.mul(&a).is_zero());
        prop_assert_eq!(proj.mul(&sect), Mat::identity(field, rows - r));
    }

    #[test]
    fn constructed_systems_are_solvable(
        data in small_entries(),
        xdata in small_entries(),
        rows in 1usize..5,
        cols in 1usize..5,
    ) {
        let field = FieldSpec::Q;
        let a = mat_from(field, rows, cols, &data);
        let x0 = mat_from(field, cols, 1, &xdata);
        let b = a.mul(&x0);
        let x = solve(&a, &b).expect("consistent by construction");
        prop_assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn kit_particular_solution_agrees(
        data in small_entries(),
        xdata in small_entries(),
        n in 1usize..4,
    ) {
        let field = FieldSpec::Q;
        let a = mat_from(field, n, n, &data);
        let x0 = mat_from(field, n, 1, &xdata);
        let b = a.mul(&x0);
        let kit = linear_kit(&a, Some(&b));
        let x = kit.particular.expect("consistent by construction");
        prop_assert_eq!(a.mul(&x), b);
        prop_assert_eq!(kit.rank + kit.kernel.cols, n);
    }
}
