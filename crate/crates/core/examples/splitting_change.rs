//! Changing the complement: the twisting form ξ and the morphism e^{−N}.

use sflab::foliation::{shipped, SplittingPair};

fn main() {
    let s = shipped::t4_nonintegrable().unwrap();
    let pair = SplittingPair::new(&s, shipped::t4_second_complement()).unwrap();
    println!("ξ = {}", pair.xi);
    let (y, z) = (s.g_vector(0), s.g_vector(1));
    println!("N₂(Y, Z) = {}", pair.n2(&y, &z));
    println!("Φ₂(Y, Z) = {}", pair.morphism_coefficient(&[y.clone(), z.clone()]).unwrap());
    let b = y.wedge(&z);
    for word in [vec![y.clone()], vec![y.clone(), z.clone()], vec![s.tf_vector(0), b]] {
        println!("intertwining residual on a word of length {}: zero = {}", word.len(), pair.intertwine(&word).unwrap().is_zero());
    }
}
