use braidforge::convolutions::{dr_matrix, lm_sigma, twisted_lm, ConvolutionParams};
use braidforge::linalg::{c64, unit, CMatrix, C64};
use braidforge::reps::{random_unitary, random_unitary_free_rep, scalar_seed};
use braidforge::samples::rng;
use proptest::prelude::*;

fn det(m: &CMatrix) -> C64 {
    m.clone().lu().determinant()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_is_that_of_the_pivot_block(seed in 0u64..100_000, n in 2usize..5, dim in 1usize..4, angle in -3.0..3.0f64, modulus in 0.2..3.0f64) {
        let rep = random_unitary_free_rep(n, dim, seed).unwrap();
        let lambda = unit(angle) * modulus;
        for j in 1..=n {
            let m = dr_matrix(rep.g(), lambda, j).unwrap();
            let expected = lambda.powu(dim as u32) * det(&rep.g()[j - 1]);
            prop_assert!((det(&m) - expected).norm() <= 1e-10 * expected.norm().max(1.0));
        }
    }

    #[test]
    fn product_of_free_images_is_block_triangular_in_lambda(seed in 0u64..100_000, n in 2usize..5, angle in -3.0..3.0f64) {
        let mut r = rng(seed);
        let g: Vec<CMatrix> = (0..n).map(|_| random_unitary(2, &mut r)).collect();
        let lambda = unit(angle);
        let total = (1..=n).fold(CMatrix::identity(2 * n, 2 * n), |acc, j| acc * dr_matrix(&g, lambda, j).unwrap());
        let prod = g.iter().fold(CMatrix::identity(2, 2), |acc, m| acc * m);
        let expected = lambda.powu(2 * n as u32) * det(&prod);
        prop_assert!((det(&total) - expected).norm() < 1e-9);
    }
}

#[test]
fn braid_block_determinant() {
    for angle in [0.2, 1.4, -2.2] {
        let t = unit(angle);
        let rep = scalar_seed(3, t, &[c64(1.0, 0.0); 2], true).unwrap();
        for i in 1..3 {
            assert!((det(&lm_sigma(&rep, i).unwrap()) + t).norm() < 1e-14);
        }
        let lifted = twisted_lm(&rep, &ConvolutionParams::artin(unit(0.5)).unwrap()).unwrap();
        assert_eq!(lifted.dim(), 3);
    }
}
