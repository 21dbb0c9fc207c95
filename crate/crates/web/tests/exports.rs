use braidforge_web::{adjudication_json, signature_sweep_json, spectra_json};
use serde_json::Value;

#[test]
fn sweep_reports_a_full_signature_at_every_point() {
    let v: Value =
        serde_json::from_str(&signature_sweep_json(3, 0.8, 0.3, None, 12).unwrap()).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 12);
    for p in points {
        let total = p["p"].as_u64().unwrap() + p["q"].as_u64().unwrap() + p["z"].as_u64().unwrap();
        assert_eq!(total, 3);
    }
}

#[test]
fn spectra_lie_on_the_unit_circle_for_unitary_data() {
    let v: Value =
        serde_json::from_str(&spectra_json(3, 0.8, 0.3, Some(1.1), 2.0).unwrap()).unwrap();
    assert_eq!(v["lifted_dim"], 9);
    for g in v["generators"].as_array().unwrap() {
        for z in g["eigenvalues"].as_array().unwrap() {
            let (re, im) = (z[0].as_f64().unwrap(), z[1].as_f64().unwrap());
            assert!((re.hypot(im) - 1.0).abs() < 1e-6, "{}", g["name"]);
        }
    }
}

#[test]
fn adjudication_singles_out_one_reading() {
    let v: Value = serde_json::from_str(&adjudication_json(3, 5, 3).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);
    assert_eq!(v["verdict"]["kind"], "unique");
    assert_eq!(v["verdict"]["middle"], "conjugated");
}

#[test]
fn out_of_range_inputs_are_rejected() {
    assert!(signature_sweep_json(9, 0.0, 0.0, None, 10).is_err());
    assert!(adjudication_json(7, 0, 1).is_err());
}
