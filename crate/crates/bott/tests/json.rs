use bott::json;
use bott_core::classify::{classify, product_of_lines, RejectionCode, Witness};
use bott_core::{build_fan, chart, hk_support, sample, BinaryCode, CharacterBundle, CohomologyRing, Rejection};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn reparse(v: &Value) -> Value {
    serde_json::from_str(&json::emit(v)).unwrap()
}

#[test]
fn large_integers_become_strings() {
    let big = BigInt::from(1i64 << 53);
    assert_eq!(json::int(&big), json!("9007199254740992"));
    assert_eq!(json::int(&(&big - 1)), json!(9007199254740991i64));
    assert_eq!(json::int(&(1 - &big)), json!(-9007199254740991i64));
    assert_eq!(json::parse_int(&json!("9007199254740992"), "x").unwrap(), big);
    assert_eq!(json::parse_int(&json!(-7), "x").unwrap(), BigInt::from(-7));
    assert!(json::parse_int(&json!(1.5), "x").is_err());
    assert!(json::parse_int(&json!("12a"), "x").is_err());
}

#[test]
fn emitted_documents_have_sorted_keys_and_newline() {
    let text = json::emit(&json!({ "zeta": 1, "alpha": 2 }));
    assert!(text.ends_with("}\n"));
    assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
}

#[test]
fn sequence_schema_errors() {
    assert!(json::parse_sequence(&json!({ "n": 2, "c": [[1, 2]] })).is_err());
    assert!(json::parse_sequence(&json!({ "n": 2, "extra": 0 })).is_err());
    assert!(matches!(
        json::parse_sequence(&json!({ "n": 2, "c": [[2, 1, 4]] })),
        Err(json::FormatError::Invalid(_))
    ));
    let zero = json::parse_sequence(&json!({ "n": 3 })).unwrap();
    assert_eq!(zero.height(), 3);
}

#[test]
fn rejection_round_trip() {
    for (code, witness) in [
        (RejectionCode::RayCountOdd, Witness::RayCount(5)),
        (RejectionCode::NoValidPairing, Witness::Ray(0)),
        (RejectionCode::ConeSetNotFullBinaryCube, Witness::MissingCone(vec![0, 2])),
        (RejectionCode::NotSmooth, Witness::Cone(3)),
        (RejectionCode::NotComplete, Witness::None),
    ] {
        let r = Rejection { code, witness };
        assert_eq!(json::parse_rejection(&reparse(&json::rejection(&r))).unwrap(), r);
    }
    assert!(json::parse_rejection(&json!({ "reject": "bogus" })).is_err());
}

#[test]
fn classification_round_trip_and_schema() {
    let fan = product_of_lines(3).unwrap();
    let result = classify(&fan).unwrap();
    let v = reparse(&json::classification(&result));
    assert_eq!(json::parse_classification(&v).unwrap(), result);
    let mut bad = v.clone();
    bad["order"] = json!([0, 0, 1]);
    assert!(json::parse_classification(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sequences_and_fans_round_trip(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sample::sequence(&mut rng, n, -40, 40);
        prop_assert_eq!(&json::parse_sequence(&reparse(&json::sequence(&c))).unwrap(), &c);
        let fan = build_fan(&c, n).unwrap();
        let parsed = json::parse_general_fan(&reparse(&json::bott_fan(&fan))).unwrap();
        prop_assert_eq!(parsed, fan.to_general());
    }

    #[test]
    fn posets_round_trip(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = sample::poset(&mut rng, n, 0.4);
        prop_assert_eq!(json::parse_poset(&reparse(&json::poset(&p))).unwrap(), p);
    }

    #[test]
    fn charts_codes_and_bundles_round_trip(seed in any::<u64>(), k in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sample::sequence(&mut rng, k, -9, 9);
        let w = sample::code(&mut rng, k);
        prop_assert_eq!(&json::parse_code(&json::code(&w)).unwrap(), &w);
        let ch = chart(&c, k, &w).unwrap();
        prop_assert_eq!(json::parse_chart(&reparse(&json::chart(&ch))).unwrap(), ch);
        let b = CharacterBundle(c.column(k));
        prop_assert_eq!(json::parse_character(&json::character(&b)).unwrap(), b);
    }

    #[test]
    fn support_values_and_classes_round_trip(seed in any::<u64>(), k in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = sample::sequence(&mut rng, k + 1, -9, 9);
        let h = hk_support(&c, k).unwrap();
        let values = json::parse_support_values(&reparse(&json::support_function(&h))).unwrap();
        let rebuilt = bott_core::support_function(&build_fan(&c, k).unwrap(), values).unwrap();
        prop_assert_eq!(rebuilt, h);
        let ring = CohomologyRing::new(&c, k).unwrap();
        let total = ring.total_chern_class();
        prop_assert_eq!(json::parse_class(k, &reparse(&json::class(&total))).unwrap(), total);
    }
}

#[test]
fn codes_parse_strictly() {
    assert_eq!(json::parse_code(&json!("0110")).unwrap(), BinaryCode::new(vec![false, true, true, false]).unwrap());
    assert!(json::parse_code(&json!("01x")).is_err());
    assert!(json::parse_code(&json!(5)).is_err());
}
