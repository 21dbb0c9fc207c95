use braidforge::linalg::CMatrix;
use braidforge::repfile::{matrix_from_json, matrix_to_json, parse_complex, RepFile};
use braidforge::reps::{random_unitary_free_rep, restrict_to_pure, Convention};
use braidforge::samples::{rng, tower_case};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(1e300),
        Just(-1.0 / 3.0)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrices_survive_json_exactly(rows in 1usize..5, cols in 1usize..5, data in prop::collection::vec((finite(), finite()), 16)) {
        let m = CMatrix::from_fn(rows, cols, |r, c| {
            let (re, im) = data[r * cols + c];
            braidforge::linalg::c64(re, im)
        });
        let text = serde_json::to_string(&matrix_to_json(&m)).unwrap();
        let back = matrix_from_json(&serde_json::from_str(&text).unwrap(), "m").unwrap();
        prop_assert_eq!(back.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect::<Vec<_>>(),
                        m.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect::<Vec<_>>());
    }

    #[test]
    fn semidirect_files_round_trip_byte_for_byte(seed in 0u64..100_000, n in 2usize..4) {
        let rep = tower_case(&mut rng(seed), n).unwrap().rep;
        let text = RepFile::from_semidirect(&rep)
            .with_metadata("seed", serde_json::json!(seed))
            .to_json();
        let parsed = RepFile::parse(&text).unwrap();
        prop_assert_eq!(parsed.to_json(), text);
        prop_assert_eq!(parsed.to_semidirect().unwrap(), rep.clone());
        let pure = restrict_to_pure(&rep, Convention::InverseTilde).unwrap();
        let pure_text = RepFile::from_pure(&pure).to_json();
        prop_assert_eq!(RepFile::parse(&pure_text).unwrap().to_pure().unwrap(), pure);
    }

    #[test]
    fn complex_text_round_trips(re in finite(), im in finite()) {
        let z = parse_complex(&format!("{re},{im}")).unwrap();
        prop_assert_eq!((z.re, z.im), (re, im));
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let text = RepFile::from_semidirect(&random_unitary_free_rep(2, 1, 3).unwrap()).to_json();
    let tampered = text.replacen("\"kind\"", "\"extra\": 1,\n  \"kind\"", 1);
    assert!(matches!(
        RepFile::parse(&tampered),
        Err(braidforge::Error::Parse(_))
    ));
    let wrong_version = text.replace("\"schema_version\": \"1\"", "\"schema_version\": \"2\"");
    assert!(RepFile::parse(&wrong_version).is_err());
}
