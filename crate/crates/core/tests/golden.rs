use hankelfrac::hfrac::expand_prefix;
use hankelfrac::report::{ExpansionReport, HFractionDto};
use hankelfrac::reproduce::{reproduce, reproduce_all, REPRODUCE_IDS};
use hankelfrac::{Error, FieldSpec};
use proptest::prelude::*;

#[test]
fn every_id_reproduces() {
    for o in reproduce_all(&[]).unwrap() {
        let bad: Vec<_> = o.mismatches().map(|c| (&c.name, &c.expected, &c.got)).collect();
        assert!(o.passed && o.error.is_none(), "{}: {:?} {:?}", o.id, o.error, bad);
    }
    assert_eq!(reproduce_all(&[]).unwrap().len(), REPRODUCE_IDS.len());
    assert!(matches!(reproduce("no-such-id"), Err(Error::UnknownId(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// A fraction read back from its JSON form gives the same report.
    #[test]
    fn report_json_round_trips(coeffs in proptest::collection::vec(0i64..5, 1..40)) {
        let spec = FieldSpec::F5;
        let prefix: Vec<_> = coeffs.iter().map(|&c| spec.from_i64(c)).collect();
        let h = expand_prefix(spec, &prefix, 2, 1000).unwrap();
        let report = ExpansionReport::build("prefix".into(), &h, 30).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: ExpansionReport = serde_json::from_str(&json).unwrap();
        let h2 = back.fraction.to_fraction().unwrap();
        prop_assert_eq!(&h2, &h);
        prop_assert_eq!(ExpansionReport::build("prefix".into(), &h2, 30).unwrap(), report);
        prop_assert_eq!(HFractionDto::from(&h2), back.fraction);
    }
}
