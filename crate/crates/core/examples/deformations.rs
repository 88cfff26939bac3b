//! MC elements of the foliated algebra versus Poisson deformations.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sflab::exactnum::{EpsSeries, FourierScalar, TorusPoint};
use sflab::foliation::dirac::{dirac_log, exact_exp_rank_at, lie_series, main_theorem_check};
use sflab::foliation::random::{random_function, Shape};
use sflab::foliation::{shipped, Skew};

fn main() {
    let s = shipped::t4_nonintegrable().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = Skew::vector(4, &(0..4).map(|_| random_function(&mut rng, s.ring, Shape::default())).collect::<Vec<_>>());
    // Flowing Π along X gives Poisson bivectors; their preimage is MC.
    let z = dirac_log(&s, &lie_series(&s.pi, &x, 3)).unwrap();
    println!("Z₁ = {}", z.coeff(1));
    println!("check: {:?}", main_theorem_check(&s, &z).unwrap());
    let eps = BigRational::new(1.into(), 10.into());
    for p in [[0, 0, 0, 0], [1, 3, 5, 7]] {
        println!("rank of Π + Z^γ at {p:?}/8 turns, ε = 1/10: {}", exact_exp_rank_at(&s, &z, &TorusPoint::angles(p.to_vec()), &eps).unwrap());
    }

    let mut coeffs = z.coeffs().to_vec();
    coeffs[2] = coeffs[2].plus(&Skew::monomial(4, &[0, 2], FourierScalar::sin(s.ring, &[0, 1, 0, 0])));
    let zz = EpsSeries::new(coeffs);
    println!("perturbed at ε²: {:?}", main_theorem_check(&s, &zz).unwrap());
}
