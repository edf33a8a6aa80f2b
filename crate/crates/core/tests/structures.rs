use edgewise::category::{nerve, twisted_arrow, validate_category, FinCategory};
use edgewise::generate::{random_category, random_coskeletal_sset, random_partial_monoid, CategorySpec, CoskeletalSpec};
use edgewise::monoid::{bar, bar_defects, span_category, validate_partial_monoid};
use edgewise::segal::{segal_check, segal_map, two_segal_check, two_segal_map, Mode};
use edgewise::sset::standard_simplex;
use edgewise::theorem::theorem_verify;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_categories_are_categories(seed in any::<u64>()) {
        let c = random_category(&CategorySpec::default(), seed).unwrap();
        prop_assert!(validate_category(&c).is_empty());
        prop_assert!(validate_category(&twisted_arrow(&c).unwrap()).is_empty());
        let x = nerve(&c, 4);
        prop_assert!(x.validate().is_empty());
        prop_assert!(x.esd().unwrap().validate().is_empty());
        prop_assert!(segal_check(&x, "N").passed());
    }

    #[test]
    fn bars_are_simplicial_and_two_segal(size in 1usize..=4, seed in any::<u64>()) {
        let m = random_partial_monoid(size, seed).unwrap();
        prop_assert!(validate_partial_monoid(&m).is_empty());
        prop_assert!(bar_defects(&m, 4).is_empty());
        let x = bar(&m, 5).unwrap();
        prop_assert!(x.validate().is_empty());
        prop_assert!(two_segal_check(&x, Mode::Full, "B").passed());
        prop_assert_eq!(segal_check(&x, "B").passed(), m.is_total());
        prop_assert!(validate_category(&span_category(&m).unwrap()).is_empty());
    }

    #[test]
    fn reversal_is_an_involution(seed in any::<u64>()) {
        let x = random_coskeletal_sset(&CoskeletalSpec::new(3, 3, 4), seed).unwrap();
        prop_assert!(x.validate().is_empty());
        let r = x.op_reverse();
        prop_assert!(r.validate().is_empty());
        prop_assert_eq!(r.op_reverse(), x);
    }

    #[test]
    fn witnesses_are_confirmed(seed in any::<u64>()) {
        let x = random_coskeletal_sset(&CoskeletalSpec::new(2, 3, 4), seed).unwrap();
        for e in segal_check(&x, "X").failures() {
            let map = segal_map(&x, e.indices[0], e.indices[1]).unwrap();
            prop_assert!(map.confirms(&x, e.witness.as_ref().unwrap()));
        }
        for e in two_segal_check(&x, Mode::Full, "X").failures() {
            let map = two_segal_map(&x, e.indices[0], e.indices[1], e.indices[2]).unwrap();
            prop_assert!(map.confirms(&x, e.witness.as_ref().unwrap()));
        }
    }

    #[test]
    fn reduced_and_full_agree(seed in any::<u64>(), v in 2usize..=3, e in 1usize..=3) {
        let x = random_coskeletal_sset(&CoskeletalSpec::new(v, e, 5), seed).unwrap();
        prop_assert_eq!(
            two_segal_check(&x, Mode::Full, "X").passed(),
            two_segal_check(&x, Mode::Reduced, "X").passed()
        );
    }

    #[test]
    fn theorem_is_consistent_on_coskeleta(seed in any::<u64>(), v in 2usize..=3, e in 1usize..=3) {
        let x = random_coskeletal_sset(&CoskeletalSpec::new(v, e, 5), seed).unwrap();
        let r = theorem_verify(&x, "X").unwrap();
        prop_assert!(r.is_consistent(), "{:?}", r.violations);
    }
}

#[test]
fn subdivision_of_a_simplex_is_the_product_poset_nerve_level_count() {
    // esd(Δ[k])_0 = Δ[k]_1 has (k+1)(k+2)/2 cells
    for k in 0..=4 {
        let sd = standard_simplex(k, 3).esd().unwrap();
        assert_eq!(sd.level_size(0), (k + 1) * (k + 2) / 2);
    }
}

#[test]
fn chain_nerves_are_simplices() {
    for n in 0..=3 {
        let x = nerve(&FinCategory::chain(n), 4);
        assert_eq!(x.level_sizes(), standard_simplex(n, 4).level_sizes());
    }
}
