//! Truncated cohomology of the Kronecker foliation and small-divisor growth.

use num_bigint::BigInt;
use sflab::kronecker::{divisor_profile, liouville_approximants, truncated_cohomology, Slope};

fn main() {
    for (name, slope) in [("√2", Slope::sqrt(2).unwrap()), ("1/2", Slope::rational(1, 2))] {
        for n in [5, 10, 20] {
            let r = truncated_cohomology(&slope, n).unwrap();
            println!("λ = {name}, N = {n}: H0 = {}, H1 = {}, H2_F = {}, obstructed modes {}", r.h0_leaf, r.h1_leaf, r.h2_poisson, r.obstructed.len());
        }
    }
    let cutoffs: Vec<BigInt> = [1u32, 10, 100, 1000].iter().map(|&c| BigInt::from(c)).collect();
    for row in divisor_profile(&Slope::sqrt(2).unwrap(), &cutoffs).unwrap() {
        println!("√2, N = {}: growth exponent {:?}", row.cutoff, row.growth_exponent());
    }
    let liouville = Slope::Approximants(liouville_approximants(6));
    let dens: Vec<BigInt> = liouville_approximants(5).iter().map(|x| x.denom().clone()).collect();
    for row in divisor_profile(&liouville, &dens).unwrap() {
        match row.growth_exponent() {
            Some(e) => println!("Liouville, N = 10^{}: growth exponent {e:.3}", row.cutoff.to_string().len() - 1),
            None => println!("Liouville, N = {}: no exponent", row.cutoff),
        }
    }
}
