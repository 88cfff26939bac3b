//! The foliated L∞[1]-brackets on the two reference tori.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sflab::foliation::random::{random_multivector, Shape};
use sflab::foliation::{shipped, FoliationAlgebra, MultiVector, TernarySign};
use sflab::linfty::{jacobi_residual, GradedElements};

fn main() {
    for (name, s) in [("T3", shipped::t3_kronecker().unwrap()), ("T4", shipped::t4_nonintegrable().unwrap())] {
        println!("{name}: leaf rank {}, Π = {}", s.tf_frame.len(), s.pi);
        for sign in [TernarySign::Corrected, TernarySign::Uncorrected] {
            let alg = FoliationAlgebra::with_ternary(&s, sign);
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let mut bad = 0;
            for t in 0..20 {
                let args: Vec<MultiVector> =
                    (0..3).map(|k| random_multivector(&mut rng, s.ring, s.dim, 1 + (t + k) % 3, Shape::default())).collect();
                bad += usize::from(!alg.is_zero(&jacobi_residual(&alg, &args).unwrap()));
            }
            println!("  {sign:?} ternary sign: {bad}/20 nonzero Jacobi residuals");
        }
    }
}
