mod common;

use fg_core::automaton::{
    accepts, determinize, make_family, prepare, reduced_normalize, split_by_incoming_label, trim, Automaton,
    AutomatonError, FamilySpec,
};
use fg_core::decompose::{decompose, split_saturated, DecomposeError, PieceKind};
use fg_core::freegroup::{reduce, sphere_size, Alphabet, Letter, Word};
use fg_core::measures::{adjusted, cesaro_mu0, genfunc_algi, lambda_by_pieces, lambda_eval, FrequencySeries};
use fg_core::oracle::{Claim, Oracle};
use fg_core::scalar::Scalar;
use fg_core::{Poly, RatFunc, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn automaton(seed: u64) -> Automaton {
    common::random_automaton(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn letter(m: u32) -> impl Strategy<Value = Letter> {
    (1..=m, any::<bool>()).prop_map(|(i, inv)| if inv { Letter::inv(i) } else { Letter::gen(i) })
}

fn raw_word(m: u32, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(m), 0..=max)
}

fn reduced_word(m: u32, max: usize) -> impl Strategy<Value = Word> {
    raw_word(m, max).prop_map(reduce)
}

fn nonempty_word(m: u32, max: usize) -> impl Strategy<Value = Word> {
    reduced_word(m, max).prop_filter("nonempty", |w| !w.is_empty())
}

fn series(a: &Automaton) -> FrequencySeries<Rational> {
    match prepare(a) {
        Ok(p) => genfunc_algi(&p).unwrap(),
        Err(AutomatonError::EmptyLanguage) => FrequencySeries::zero(a.rank()),
        Err(e) => panic!("{e}"),
    }
}

fn poly(coeffs: Vec<i64>) -> Poly {
    Poly::from_ints(&coeffs)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-5i64..=5, 0..4), prop::collection::vec(-5i64..=5, 0..3)).prop_map(|(n, mut d)| {
        // constant term 1 keeps the denominator away from zero at t = 0
        d.insert(0, 1);
        RatFunc::new(poly(n), poly(d)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn reduce_is_idempotent_and_inverse_cancels(raw in raw_word(3, 12)) {
        let w = reduce(raw.clone());
        prop_assert_eq!(reduce(w.letters().to_vec()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[1] != p[0].inverse()));
        prop_assert_eq!(w.mul(&w.inverse()), Word::identity());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn circ_is_concatenation_without_cancellation(u in reduced_word(2, 6), v in reduced_word(2, 6)) {
        match u.circ(&v) {
            Ok(uv) => {
                prop_assert_eq!(uv.len(), u.len() + v.len());
                prop_assert_eq!(uv, u.mul(&v));
            }
            Err(_) => prop_assert!(u.mul(&v).len() < u.len() + v.len()),
        }
    }

    #[test]
    fn word_text_round_trip(w in reduced_word(3, 10)) {
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn ratfunc_field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
        let back: RatFunc = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn ratfunc_series_multiplies(a in ratfunc(), b in ratfunc()) {
        let depth = 8;
        let (sa, sb) = (a.series_coefficients(depth).unwrap(), b.series_coefficients(depth).unwrap());
        let prod = (&a * &b).series_coefficients(depth).unwrap();
        for k in 0..=depth {
            let conv = (0..=k).fold(Rational::zero(), |acc, i| acc + &sa[i] * &sb[k - i]);
            prop_assert_eq!(&prod[k], &conv);
        }
    }

    #[test]
    fn constructions_preserve_the_language(seed in any::<u64>()) {
        let a = automaton(seed);
        let oracle = Oracle::default();
        let words = oracle.language(&a, 8).unwrap();
        prop_assert_eq!(oracle.language(&determinize(&a), 8).unwrap(), words.clone());
        prop_assert_eq!(oracle.language(&reduced_normalize(&a), 8).unwrap(), words.clone());
        match prepare(&a) {
            Ok(p) => {
                prop_assert!(p.is_deterministic());
                prop_assert_eq!(oracle.language(&p, 8).unwrap(), words.clone());
                prop_assert_eq!(oracle.language(&trim(&p).unwrap(), 8).unwrap(), words.clone());
                let s = split_by_incoming_label(&p).unwrap();
                prop_assert_eq!(oracle.language(&s, 8).unwrap(), words.clone());
            }
            Err(AutomatonError::EmptyLanguage) => prop_assert!(words.is_empty()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn membership_agrees_with_enumeration(seed in any::<u64>()) {
        let a = automaton(seed);
        let words = Oracle::default().language(&a, 6).unwrap();
        for w in &words {
            prop_assert!(accepts(&a, w));
        }
        let count = (0..=6).map(|k| fg_core::freegroup::enumerate_sphere(2, k).filter(|w| accepts(&a, w)).count()).sum::<usize>();
        prop_assert_eq!(count, words.len());
    }

    #[test]
    fn coefficients_count_accepted_words(seed in any::<u64>()) {
        let a = automaton(seed);
        let depth = 9;
        let g = series(&a);
        let coeffs = g.coefficients(depth).unwrap();
        let counts = Oracle::default().counts(&a, depth).unwrap();
        for k in 0..=depth {
            let size = Rational::from_integer(sphere_size(2, k).into());
            prop_assert_eq!(&coeffs[k] * &size, Rational::from_integer(counts[k].into()));
            prop_assert!(coeffs[k] >= Rational::zero() && coeffs[k] <= Rational::one());
        }
        prop_assert!(g.g.pole_order_at_one() <= 1);
    }

    #[test]
    fn decomposition_pieces_are_disjoint_and_cover(seed in any::<u64>()) {
        let a = automaton(seed);
        let d = match decompose(&a) {
            Ok(d) => d,
            Err(DecomposeError::EmptyLanguage) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let parts: Vec<&Automaton> = d.pieces.iter().map(|p| &p.automaton).collect();
        let oracle = Oracle::default();
        prop_assert!(oracle.check(&Claim::Disjoint(parts.clone()), 7).unwrap().holds);
        let cover = Claim::UnionEquals { whole: &a, parts: parts.clone() };
        prop_assert!(oracle.check(&cover, 7).unwrap().holds);
        let sum = parts.iter().fold(RatFunc::zero(), |acc, p| &acc + &genfunc_algi::<Rational>(p).unwrap().g);
        prop_assert_eq!(sum, series(&a).g);
    }

    #[test]
    fn saturated_split_laws(seed in any::<u64>()) {
        let a = automaton(seed);
        let d = match decompose(&a) {
            Ok(d) => d,
            Err(DecomposeError::EmptyLanguage) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for piece in d.pieces.iter().filter(|p| p.kind == PieceKind::SpecialOverGroup) {
            let split = split_saturated(&piece.automaton).unwrap();
            let (Some(a2), Some(a3)) = (&split.a2, &split.a3) else { continue };
            let oracle = Oracle::default();
            let bij = Claim::CircBijection { left: &split.a1, right: a2, product: &piece.automaton };
            prop_assert!(oracle.check(&bij, 6).unwrap().holds);
            let g1 = genfunc_algi::<Rational>(&split.a1).unwrap();
            let g2 = genfunc_algi::<Rational>(a2).unwrap();
            let g3 = genfunc_algi::<Rational>(a3).unwrap();
            prop_assert_eq!(&g1.g * &adjusted(&g2), genfunc_algi::<Rational>(&piece.automaton).unwrap().g);
            prop_assert_eq!(adjusted(&g2), (&RatFunc::one() - &adjusted(&g3)).recip().unwrap());
        }
    }

    #[test]
    fn lambda_methods_agree(seed in any::<u64>()) {
        let a = automaton(seed);
        let g = series(&a);
        match lambda_eval::<Rational>(&g) {
            Ok(by_eval) => {
                prop_assert_eq!(cesaro_mu0(&g).unwrap(), Rational::zero());
                prop_assert_eq!(lambda_by_pieces::<Rational>(&a).unwrap(), by_eval);
            }
            Err(_) => {
                prop_assert!(cesaro_mu0(&g).unwrap() > Rational::zero());
                prop_assert!(lambda_by_pieces::<Rational>(&a).is_err());
            }
        }
    }

    #[test]
    fn double_cone_shift(u in nonempty_word(2, 3), v in nonempty_word(2, 3)) {
        let (a, b) = (u.last().unwrap(), v.first().unwrap());
        let s = u.len() - 1 + v.len() - 1;
        let long = Oracle::default().counts(&make_family(&FamilySpec::DoubleCone(u.clone(), v.clone()), 2).unwrap(), 9).unwrap();
        let base_handles = (Word::new(vec![a]).unwrap(), Word::new(vec![b]).unwrap());
        let short = Oracle::default()
            .counts(&make_family(&FamilySpec::DoubleCone(base_handles.0, base_handles.1), 2).unwrap(), 9)
            .unwrap();
        for k in 0..=9 {
            let expected = if k >= s { short[k - s] } else { 0 };
            prop_assert_eq!(long[k], expected, "k={}", k);
        }
    }

    #[test]
    fn cone_density(w in nonempty_word(3, 4)) {
        let g = series(&make_family(&FamilySpec::Cone(w.clone()), 3).unwrap());
        let expected = Rational::from_ratio(1, 6 * 5i64.pow(w.len() as u32 - 1));
        prop_assert_eq!(cesaro_mu0(&g).unwrap(), expected);
    }
}

#[test]
fn scalar_backends_agree_on_the_worked_example() {
    let ex = common::worked_example();
    let exact: Rational = lambda_eval(&genfunc_algi(&ex).unwrap()).unwrap();
    let small: num_rational::Rational64 = lambda_eval(&genfunc_algi(&ex).unwrap()).unwrap();
    let float: f64 = lambda_eval(&genfunc_algi(&ex).unwrap()).unwrap();
    assert_eq!(exact, Rational::from_ratio(3, 14));
    assert_eq!(small, num_rational::Rational64::new(3, 14));
    assert!((float - 3.0 / 14.0).abs() < 1e-12);
}

#[test]
fn every_letter_of_the_alphabet_is_a_cone_of_density_one_quarter() {
    for l in Alphabet::new(2).unwrap().letters() {
        let g = series(&make_family(&FamilySpec::Cone(Word::new(vec![l]).unwrap()), 2).unwrap());
        assert_eq!(cesaro_mu0(&g).unwrap(), Rational::from_ratio(1, 4));
    }
}
