use proptest::prelude::*;

use palwidth_core::finite_groups::is_isomorphic;
use palwidth_core::group_spec::GroupSpec;
use palwidth_core::{FiniteGroup, GroupOptions, MonoidWord};

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(7).unwrap(),
        FiniteGroup::dihedral(5).unwrap(),
        FiniteGroup::sym3_fink(),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(4).unwrap(), &FiniteGroup::dihedral(3).unwrap()).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn evaluation_is_a_homomorphism(which in 0usize..4, u in prop::collection::vec(any::<usize>(), 0..30), v in prop::collection::vec(any::<usize>(), 0..30)) {
        let g = &groups()[which];
        let k = g.alphabet().len();
        let u = MonoidWord::new(u.into_iter().map(|l| l % k).collect());
        let v = MonoidWord::new(v.into_iter().map(|l| l % k).collect());
        let uv = g.evaluate(&u.concat(&v)).unwrap();
        prop_assert_eq!(uv, g.mul(g.evaluate(&u).unwrap(), g.evaluate(&v).unwrap()));
        prop_assert_eq!(g.evaluate(&MonoidWord::empty()).unwrap(), g.identity());
        let name = g.element_name(uv).to_string();
        prop_assert_eq!(g.element_by_name(&name).unwrap(), uv);
    }
}

#[test]
fn constructed_tables_are_associative() {
    for g in groups() {
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn direct_product_is_symmetric_and_associative() {
    let (a, b, c) = (
        FiniteGroup::cyclic(2).unwrap(),
        FiniteGroup::dihedral(3).unwrap(),
        FiniteGroup::cyclic(3).unwrap(),
    );
    let ab = FiniteGroup::direct_product(&a, &b).unwrap();
    let ba = FiniteGroup::direct_product(&b, &a).unwrap();
    assert!(is_isomorphic(&ab, &ba));
    let left = FiniteGroup::direct_product(&ab, &c).unwrap();
    let right = FiniteGroup::direct_product(&a, &FiniteGroup::direct_product(&b, &c).unwrap()).unwrap();
    assert!(is_isomorphic(&left, &right));
    assert!(!is_isomorphic(&ab, &FiniteGroup::cyclic(12).unwrap()));
}

#[test]
fn commutator_data() {
    let s3 = FiniteGroup::sym3_fink();
    assert_eq!(s3.commutator_subgroup().len(), 3);
    assert_eq!(s3.commutator_width(), 1);
    assert_eq!(FiniteGroup::cyclic(6).unwrap().commutator_width(), 0);
}

#[test]
fn spec_round_trip() {
    let texts = [
        r#"{"kind":"cyclic","m":5}"#,
        r#"{"kind":"dihedral","m":4}"#,
        r#"{"kind":"sym3_fink"}"#,
        r#"{"kind":"direct_product","factors":[{"kind":"cyclic","m":4},{"kind":"cyclic","m":4}]}"#,
        r#"{"kind":"table","table":[[0,1,2],[1,2,0],[2,0,1]],"generators":[{"label":"t","element":1},{"label":"u","element":2}]}"#,
        r#"{"kind":"nilprod","factors":[{"moduli":[2]},{"moduli":[2]}]}"#,
    ];
    for text in texts {
        let spec = GroupSpec::from_json(text).unwrap();
        assert_eq!(spec.to_json(), text);
        assert_eq!(GroupSpec::from_json(&spec.to_json()).unwrap(), spec);
        spec.build(&GroupOptions::default()).unwrap();
    }
    assert!(GroupSpec::from_json(r#"{"kind":"cyclic","m":4,"extra":1}"#).is_err());
    assert!(
        GroupSpec::from_json(r#"{"kind":"table","table":[[0,1],[0,1]],"generators":[]}"#)
            .unwrap()
            .build(&GroupOptions::default())
            .is_err()
    );
}
