use sp4_pingpong::identities::*;
use sp4_pingpong::monodromy::build_group;

#[test]
fn bank_holds_for_small_n() {
    for n in 4..=12u32 {
        let d = build_group(n).unwrap();
        for k in 1..i64::from(n) {
            let r = identity_bank(&d, k);
            assert!(
                r.passed,
                "N={n} k={k}: {:?}",
                r.failures().collect::<Vec<_>>()
            );
            let p = prop_formulas(&d, k);
            assert!(
                p.passed,
                "N={n} k={k}: {:?}",
                p.failures().collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn range_is_enforced() {
    assert!(check_identity_bank(5, 0).is_err());
    assert!(check_identity_bank(5, 5).is_err());
    assert!(check_identity_bank(3, 1).is_err());
    assert!(check_identity_bank(5, 4).unwrap().passed);
    assert!(check_prop_formulas(5, 0).unwrap().passed);
}
