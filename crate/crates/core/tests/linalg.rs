use braidforge::linalg::{
    c64, congruence, hermitian_inertia, identity, kernel_basis, matrix_power, max_principal_angle,
    principal_root, rank, relative_residual, subspace_sum, CMatrix, SubspaceBasis, Tolerances,
};
use braidforge::reps::random_unitary;
use braidforge::samples::{random_hermitian_with_inertia, rng};
use proptest::prelude::*;
use rand::Rng;

fn gaussian(seed: u64, rows: usize, cols: usize) -> CMatrix {
    let mut r = rng(seed);
    CMatrix::from_fn(rows, cols, |_, _| {
        c64(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
    })
}

fn tol() -> Tolerances {
    Tolerances::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn congruence_preserves_inertia(
        seed in 0u64..10_000,
        (dim, pos, neg) in (1usize..7)
            .prop_flat_map(|dim| (Just(dim), 0..=dim))
            .prop_flat_map(|(dim, pos)| (Just(dim), Just(pos), 0..=dim - pos)),
    ) {
        let mut r = rng(seed);
        let h = random_hermitian_with_inertia(&mut r, dim, pos, neg);
        let x = gaussian(seed + 1, dim, dim);
        prop_assume!(rank(&x, &tol()) == dim);
        let before = hermitian_inertia(&h, &tol()).unwrap();
        prop_assert_eq!((before.p, before.q, before.z), (pos, neg, dim - pos - neg));
        let after = hermitian_inertia(&congruence(&h, &x).unwrap(), &tol()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn subspace_sum_is_symmetric(seed in 0u64..10_000, dim in 2usize..7, a in 0usize..4, b in 0usize..4) {
        let span = |cols: usize, salt: u64| {
            if cols == 0 {
                SubspaceBasis::zero(dim)
            } else {
                SubspaceBasis::span_of(&gaussian(seed + salt, dim, cols), &tol()).unwrap()
            }
        };
        let (u, v) = (span(a, 1), span(b, 2));
        let uv = subspace_sum(&u, &v, &tol()).unwrap();
        let vu = subspace_sum(&v, &u, &tol()).unwrap();
        prop_assert_eq!(uv.dim(), (a + b).min(dim));
        prop_assert_eq!(uv.dim(), vu.dim());
        if uv.dim() > 0 {
            prop_assert!(max_principal_angle(&uv, &vu).unwrap() < 1e-8);
        }
    }

    #[test]
    fn kernel_is_annihilated_and_complementary_to_rank(seed in 0u64..10_000, rows in 1usize..6, cols in 1usize..6, r in 1usize..5) {
        let m = gaussian(seed, rows, r) * gaussian(seed + 7, r, cols);
        let ker = kernel_basis(&m, &tol()).unwrap();
        prop_assert_eq!(ker.dim() + rank(&m, &tol()), cols);
        prop_assert_eq!(rank(&m, &tol()), r.min(rows).min(cols));
        if ker.dim() > 0 {
            prop_assert!((&m * ker.basis()).norm() <= 1e-10 * m.norm().max(1.0));
            let gram = ker.basis().adjoint() * ker.basis();
            prop_assert!(relative_residual(&gram, &identity(ker.dim())) < 1e-12);
        }
    }

    #[test]
    fn principal_root_inverts_integer_power(seed in 0u64..10_000, dim in 1usize..6, k in prop_oneof![Just(-3i64), Just(-2), Just(2), Just(3), Just(4)]) {
        let mut r = rng(seed);
        let m = random_unitary(dim, &mut r) + gaussian(seed, dim, dim).scale(0.1);
        let root = principal_root(&m, k).unwrap();
        prop_assert!(relative_residual(&matrix_power(&root, k).unwrap(), &m) < 1e-10);
        let conj = gaussian(seed + 3, dim, dim) + identity(dim).scale(3.0);
        let inv = conj.clone().try_inverse().unwrap();
        let moved = principal_root(&(&conj * &m * &inv), k).unwrap();
        prop_assert!(relative_residual(&moved, &(&conj * &root * &inv)) < 1e-8);
    }
}
