//! Derived brackets on the super-cotangent chart: the closed form of M₂.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sflab::bigbracket::{m2_closed_form, m2_two_forms, super_bracket, taylor_m, SuperChart, SuperPoly};
use sflab::foliation::random::{random_multivector, Shape};

fn main() {
    let c = SuperChart::new(3, 3);
    let th = SuperPoly::theta(c, 0);
    let xi = SuperPoly::xi(c, 0);
    println!("{{θ1, ξ1}} = {}", super_bracket(&th, &xi).unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let eta = random_multivector(&mut rng, c.ring, 3, 2, Shape::default());
    let w1 = random_multivector(&mut rng, c.ring, 3, 2, Shape::default());
    let w2 = random_multivector(&mut rng, c.ring, 3, 1, Shape::default());
    let iterated = taylor_m(
        &SuperPoly::from_multivector(c, &eta),
        &[SuperPoly::from_form(c, &w1), SuperPoly::from_form(c, &w2)],
    )
    .unwrap()
    .to_form(1)
    .unwrap();
    let closed = m2_closed_form(&eta, &w1, &w2);
    println!("η = {eta}");
    println!("M2 iterated = {iterated}");
    println!("M2 closed   = {closed}");
    println!("equal: {}", iterated == closed);

    let w3 = random_multivector(&mut rng, c.ring, 3, 2, Shape::default());
    println!("two-form matrix version agrees: {}", m2_two_forms(&eta, &w1, &w3).unwrap() == m2_closed_form(&eta, &w1, &w3));
}
