//! Property tests of algebraic invariants across modules.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sflab::bigbracket::{taylor_m, SuperChart, SuperPoly};
use sflab::exactnum::{EpsSeries, FieldElement, FourierScalar};
use sflab::foliation::dirac::{gauge_transform_series, inverse_gauge_transform_series, small_series};
use sflab::foliation::random::{random_function, random_good, random_multivector, Shape};
use sflab::foliation::{schouten, shipped, Skew, SplittingPair};
use sflab::graded::{all_permutations, koszul_sign, koszul_sign_by_inversions};

fn field(c: &[i64; 4], d: i64) -> FieldElement {
    let q = |n: i64| FieldElement::from_rational(num_rational::BigRational::new(n.into(), d.into()));
    let i = FieldElement::i();
    let rt = FieldElement::sqrt(2).unwrap();
    &(&q(c[0]) + &(&q(c[1]) * &i)) + &(&(&q(c[2]) * &rt) + &(&(&q(c[3]) * &i) * &rt))
}

fn coeffs() -> impl Strategy<Value = ([i64; 4], i64)> {
    (prop::array::uniform4(-9i64..=9), 1i64..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_operations_obey_ring_laws(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (x, y, z) = (field(&a.0, a.1), field(&b.0, b.1), field(&c.0, c.1));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), FieldElement::one());
        }
    }

    #[test]
    fn permutation_signs_agree(n in 1usize..=5, degs in prop::collection::vec(-2i32..=3, 5)) {
        for sigma in all_permutations(n) {
            prop_assert_eq!(koszul_sign(&sigma, &degs[..n]).unwrap(), koszul_sign_by_inversions(&sigma, &degs[..n]).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partial_derivatives_obey_leibniz(seed in any::<u64>()) {
        let s = shipped::t4_nonintegrable().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_function(&mut rng, s.ring, Shape::default());
        let g = random_function(&mut rng, s.ring, Shape::default());
        for axis in 0..4 {
            let lhs = (&f * &g).partial(axis).unwrap();
            let rhs = &(&f.partial(axis).unwrap() * &g) + &(&f * &g.partial(axis).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn schouten_is_graded_antisymmetric(seed in any::<u64>()) {
        let s = shipped::t3_kronecker().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q) = (rng.gen_range(0..=3usize), rng.gen_range(0..=3usize));
        let a = random_multivector(&mut rng, s.ring, 3, p, Shape::default());
        let b = random_multivector(&mut rng, s.ring, 3, q, Shape::default());
        let ab = schouten(&a, &b).unwrap();
        let ba = schouten(&b, &a).unwrap();
        let sign_flip = ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 0;
        prop_assert_eq!(ab, if sign_flip { ba.neg() } else { ba });
    }

    #[test]
    fn sharp_round_trips_bivectors(seed in any::<u64>()) {
        let s = shipped::t4_nonintegrable().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_multivector(&mut rng, s.ring, 4, 2, Shape::default());
        prop_assert_eq!(Skew::from_sharp(&w.sharp(), 4).unwrap(), w);
    }

    #[test]
    fn gauge_transform_is_inverted(seed in any::<u64>()) {
        let s = shipped::t4_nonintegrable().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Shape { terms: 1, ..Shape::default() };
        let z = small_series(&s, (0..3).map(|_| random_good(&mut rng, &s, 2, shape)).collect());
        let zg = gauge_transform_series(&s, &z).unwrap();
        prop_assert_eq!(inverse_gauge_transform_series(&s, &zg).unwrap(), z);
    }

    /// `N₂` is the derived binary bracket of the super-bracket with the roles
    /// of `θ` and `ξ` exchanged: `ξ` plays the bivector, multivectors the forms.
    #[test]
    fn n2_is_a_derived_bracket_under_the_dictionary(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, h) = if seed % 2 == 0 {
            (shipped::t3_kronecker().unwrap(), shipped::t3_second_complement())
        } else {
            (shipped::t4_nonintegrable().unwrap(), shipped::t4_second_complement())
        };
        let pair = SplittingPair::new(&s, h).unwrap();
        let c = SuperChart::new(s.dim, s.dim);
        let (d1, d2) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
        let q1 = random_good(&mut rng, &s, d1, Shape::default());
        let q2 = random_good(&mut rng, &s, d2, Shape::default());
        let eta = SuperPoly::from_multivector(c, &pair.xi);
        let word = [SuperPoly::from_form(c, &q1), SuperPoly::from_form(c, &q2)];
        let derived = taylor_m(&eta, &word).unwrap().to_form(d1 + d2 - 2).unwrap();
        prop_assert_eq!(derived, pair.n2(&q1, &q2));
    }
}

#[test]
fn zero_series_is_fixed_by_the_gauge_transform() {
    let s = shipped::t3_kronecker().unwrap();
    let z = EpsSeries::new(vec![Skew::zero(s.ring, 3, 2); 3]);
    assert_eq!(gauge_transform_series(&s, &z).unwrap(), z);
    let one = FourierScalar::one(s.ring);
    assert!(schouten(&Skew::function(3, one.clone()), &Skew::function(3, one)).unwrap().is_zero());
}

#[test]
fn dictionary_check_sees_nonzero_brackets() {
    let s = shipped::t4_nonintegrable().unwrap();
    let pair = SplittingPair::new(&s, shipped::t4_second_complement()).unwrap();
    let c = SuperChart::new(4, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut nonzero = 0;
    for _ in 0..10 {
        let q1 = random_good(&mut rng, &s, 2, Shape::default());
        let q2 = random_good(&mut rng, &s, 1, Shape::default());
        let n2 = pair.n2(&q1, &q2);
        let eta = SuperPoly::from_multivector(c, &pair.xi);
        let derived = taylor_m(&eta, &[SuperPoly::from_form(c, &q1), SuperPoly::from_form(c, &q2)]).unwrap();
        assert_eq!(derived.to_form(1).unwrap(), n2);
        nonzero += usize::from(!n2.is_zero());
    }
    assert!(nonzero >= 5, "{nonzero}");
}
