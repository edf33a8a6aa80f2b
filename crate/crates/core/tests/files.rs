use edgewise::category::FinCategory;
use edgewise::generate::{random_category, random_coskeletal_sset, random_partial_monoid, CategorySpec, CoskeletalSpec};
use edgewise::groupoid::FinGroupoid;
use edgewise::io::{self, Document};
use edgewise::sgpd::s_construction;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sset_files_round_trip(seed in any::<u64>()) {
        let x = random_coskeletal_sset(&CoskeletalSpec::new(3, 2, 3), seed).unwrap();
        let text = io::sset_to_string(&x);
        let y = io::sset_from_str(&text).unwrap();
        prop_assert_eq!(&y, &x);
        prop_assert_eq!(io::sset_to_string(&y), text);
    }

    #[test]
    fn category_files_round_trip(seed in any::<u64>()) {
        let c = random_category(&CategorySpec::default(), seed).unwrap();
        let text = io::category_to_string(&c);
        let d = io::category_from_str(&text).unwrap();
        prop_assert_eq!(&d, &c);
        prop_assert_eq!(io::category_to_string(&d), text);
    }

    #[test]
    fn monoid_files_round_trip(size in 1usize..=5, seed in any::<u64>()) {
        let m = random_partial_monoid(size, seed).unwrap();
        let text = io::monoid_to_string(&m);
        prop_assert_eq!(io::monoid_to_string(&io::monoid_from_str(&text).unwrap()), text);
    }
}

#[test]
fn groupoid_and_sgpd_files_round_trip() {
    let g = FinGroupoid::product(&FinGroupoid::codiscrete(vec!["x".into(), "y".into()]), &FinGroupoid::discrete(vec!["p".into()]));
    let text = io::groupoid_to_string(&g);
    assert_eq!(io::groupoid_from_str(&text).unwrap(), g);
    let y = s_construction(3, 2).unwrap();
    let text = io::sgpd_to_string(&y);
    assert_eq!(io::sgpd_to_string(&io::sgpd_from_str(&text).unwrap()), text);
}

#[test]
fn malformed_files_are_rejected() {
    let c = FinCategory::chain(1);
    let text = io::category_to_string(&c);
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["compose"].as_object_mut().unwrap().insert("x,y".into(), "z".into());
    assert!(io::category_from_str(&v.to_string()).is_err());
    assert!(io::document_from_str("[1, 2]").is_err());
    assert!(io::document_from_str("{\"unknown\": 1}").is_err());
    assert!(io::sset_from_str("{\"truncation\": 1, \"levels\": [[\"a\"]], \"face\": {}, \"degeneracy\": {}}").is_err());
}

#[test]
fn atomic_writes_replace_whole_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    io::write_atomic(&path, "old\n").unwrap();
    let text = io::category_to_string(&FinCategory::chain(2));
    io::write_atomic(&path, &text).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    let names: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(names.len(), 1);
    assert!(matches!(io::document_from_str(&text).unwrap(), Document::Category(_)));
    assert!(io::write_atomic(&dir.path().join("missing/c.json"), &text).is_err());
}
