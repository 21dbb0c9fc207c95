use braidforge::braidwords::{act_by_word, BraidWord, FreeWord, MixedWord, Token};
use braidforge::convolutions::{wada_lm, ConvolutionParams, WadaRowScaling};
use braidforge::linalg::{relative_residual, unit};
use braidforge::reps::{
    evaluate_anti, restrict_to_pure, scalar_seed, Convention, PureLetter, SemidirectRep,
};
use braidforge::samples::{rng, tower_case};
use proptest::prelude::*;
use std::f64::consts::TAU;

const N: usize = 3;

fn mixed_word() -> impl Strategy<Value = MixedWord> {
    prop::collection::vec(
        (any::<bool>(), 1..=N, prop_oneof![Just(-1i64), Just(1)]),
        0..8,
    )
    .prop_map(|letters| {
        let mut w = MixedWord::empty(N);
        for (free, index, exp) in letters {
            if free {
                w.free(index, exp).unwrap();
            } else if index < N {
                w.braid(index, exp).unwrap();
            }
        }
        w
    })
}

fn free_word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((1..=N, prop_oneof![Just(-1i64), Just(1)]), 0..6)
        .prop_map(|letters| FreeWord::new(N, letters).unwrap())
}

fn braid_word() -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..N, prop_oneof![Just(-1i64), Just(1)]), 0..4)
        .prop_map(|letters| BraidWord::new(N, letters).unwrap())
}

fn tower_rep(seed: u64) -> SemidirectRep {
    tower_case(&mut rng(seed), N).unwrap().rep
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn evaluation_is_multiplicative(seed in 0u64..1000, a in mixed_word(), b in mixed_word()) {
        let rep = tower_rep(seed);
        let ab = rep.evaluate(&a.concat(&b).unwrap()).unwrap();
        let product = rep.evaluate(&a).unwrap() * rep.evaluate(&b).unwrap();
        prop_assert!(relative_residual(&ab, &product) < 1e-10);
    }

    #[test]
    fn opposite_reverses_products(seed in 0u64..1000, a in mixed_word(), b in mixed_word()) {
        let op = tower_rep(seed).op_transform();
        prop_assert!(op.is_anti());
        let ab = op.evaluate(&a.concat(&b).unwrap()).unwrap();
        let reversed = op.evaluate(&b).unwrap() * op.evaluate(&a).unwrap();
        prop_assert!(relative_residual(&ab, &reversed) < 1e-10);
    }

    #[test]
    fn conjugation_realises_the_braid_action(seed in 0u64..1000, b in braid_word(), w in free_word()) {
        let rep = tower_rep(seed);
        let conj = b.to_mixed().concat(&w.to_mixed()).unwrap().concat(&b.inverse().to_mixed()).unwrap();
        let acted = act_by_word(1, &b, &w).unwrap();
        let lhs = rep.evaluate(&conj).unwrap();
        prop_assert!(relative_residual(&lhs, &rep.evaluate_free(&acted).unwrap()) < 1e-9);
    }

    #[test]
    fn exponent_construction_realises_its_action(
        angles in (0.0..TAU, 0.0..TAU, 0.0..TAU),
        k in prop_oneof![Just(-2i64), Just(2), Just(3)],
        b in braid_word(),
        w in free_word(),
    ) {
        let seed = scalar_seed(N, unit(angles.0), &[unit(angles.1); N - 1], true).unwrap();
        let out = wada_lm(&seed, &ConvolutionParams::new(unit(angles.2), k).unwrap(), WadaRowScaling::Lambda).unwrap();
        let conj = b.to_mixed().concat(&w.to_mixed()).unwrap().concat(&b.inverse().to_mixed()).unwrap();
        let acted = act_by_word(k, &b, &w).unwrap();
        let lhs = out.evaluate(&conj).unwrap();
        prop_assert!(relative_residual(&lhs, &out.evaluate_free(&acted).unwrap()) < 1e-8);
    }

    #[test]
    fn pure_restriction_is_an_anti_homomorphism(seed in 0u64..1000, i in 1..N, j in 2..=N, e in prop_oneof![Just(-1i64), Just(1)]) {
        prop_assume!(i < j);
        let rep = tower_rep(seed);
        let m = restrict_to_pure(&rep, Convention::InverseTilde).unwrap();
        let a = PureLetter::new(0, j, 1);
        let b = PureLetter::new(i, j, e);
        let ab = evaluate_anti(&m, &[a, b]).unwrap();
        let expected = evaluate_anti(&m, &[b]).unwrap() * evaluate_anti(&m, &[a]).unwrap();
        prop_assert!(relative_residual(&ab, &expected) < 1e-12);
    }
}

#[test]
fn tokens_of_a_mixed_word() {
    let w = MixedWord::parse(3, "s1 x2^-1 s2^2").unwrap();
    assert_eq!(w.tokens().len(), 3);
    assert!(matches!(w.tokens()[1], Token::Free(l) if l.index == 2 && l.exp == -1));
}
