mod common;

use fg_core::automaton::{make_family, FamilySpec};
use fg_core::decompose::{classify, split_saturated, suffix_witnesses, witness_thick, Classification, ThickWitness};
use fg_core::freegroup::{Alphabet, Letter, Word};
use fg_core::measures::{cesaro_mu0, genfunc_algi, lambda_eval};
use fg_core::oracle::{Claim, Oracle};
use fg_core::scalar::Scalar;
use fg_core::Rational;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn right_cone_has_cone_density() {
    for m in [2u32, 3] {
        for word in ["x1", "x1 x2", "X2 x1 x1"] {
            let g = genfunc_algi::<Rational>(&make_family(&FamilySpec::RightCone(w(word)), m).unwrap()).unwrap();
            let r = w(word).len() as u32;
            let expected = Rational::from_ratio(1, 2 * m as i64 * (2 * m as i64 - 1).pow(r - 1));
            assert_eq!(cesaro_mu0(&g).unwrap(), expected, "rcone({word}) m={m}");
        }
    }
}

#[test]
fn generalized_cone_is_union_of_double_cones() {
    let m = 2;
    for x in Alphabet::new(m).unwrap().letters() {
        let gcone = make_family(&FamilySpec::GeneralizedCone(x), m).unwrap();
        let parts: Vec<_> = Alphabet::new(m)
            .unwrap()
            .letters()
            .filter(|&y| y != x.inverse())
            .map(|y| {
                make_family(&FamilySpec::DoubleCone(Word::new(vec![y]).unwrap(), Word::new(vec![x]).unwrap()), m)
                    .unwrap()
            })
            .collect();
        let report =
            Oracle::default().check(&Claim::UnionEquals { whole: &gcone, parts: parts.iter().collect() }, 8).unwrap();
        assert!(report.holds, "gcone({x}): {report}");
        let mu0 = cesaro_mu0(&genfunc_algi::<Rational>(&gcone).unwrap()).unwrap();
        assert_eq!(mu0, Rational::from_ratio(3, 16));
    }
}

#[test]
fn singleton_and_ball_complement_measures() {
    let single = make_family(&FamilySpec::Singleton(w("x1 X2 x1")), 2).unwrap();
    let lambda: Rational = lambda_eval(&genfunc_algi(&single).unwrap()).unwrap();
    assert_eq!(lambda, Rational::from_ratio(1, 36));
    let ball = make_family(&FamilySpec::BallComplement(3), 2).unwrap();
    assert_eq!(Oracle::default().counts(&ball, 4).unwrap(), vec![0, 0, 0, 36, 108]);
}

#[test]
fn worked_example_third_type_suffixes() {
    let split = split_saturated(&common::worked_example()).unwrap();
    let got = suffix_witnesses(split.a3.as_ref().unwrap()).unwrap();
    let expected = [w("1"), w("X2"), w("X2 x1"), w("X2 X1")].into_iter().collect();
    assert_eq!(got, expected);
}

#[test]
fn thick_monoid_is_its_own_witness() {
    let x = Letter::gen(2);
    let cone = make_family(&FamilySpec::Cone(w("x1 x2")), 2).unwrap();
    assert_eq!(classify(&cone).unwrap(), Classification::Thick(Rational::from_ratio(1, 12)));
    match witness_thick(&cone, 6).unwrap() {
        ThickWitness::Witness { w: prefix, t, .. } => {
            assert_eq!(prefix, w("x1 x2"));
            let m = make_family(&FamilySpec::ThickMonoidM(x), 2).unwrap();
            let same = Claim::UnionEquals { whole: &t, parts: vec![&m] };
            assert!(Oracle::default().check(&same, 7).unwrap().holds);
        }
        ThickWitness::NotThick => panic!("cone is thick"),
    }
}
