//! Gauge equivalence through the product M × [0,1] × R: squares of lifted bivectors.

use sflab::exactnum::{EpsSeries, FourierScalar};
use sflab::foliation::shipped;
use sflab::gaugeequiv::{hat_correspondence, lie_flow_family, lift, square_equivalence_residuals, ProductSetup};

fn main() {
    let s = shipped::t3_kronecker().unwrap();
    let ps = ProductSetup::new(&s, 8).unwrap();
    let y = s.g_vector(0).mul_fn(&FourierScalar::cos(s.ring, &[1, 0, 0]));
    let (w, x) = lie_flow_family(&ps, &y, 3).unwrap();
    println!("W_t at ε¹: {}", w.coeff(1));
    println!("X_t at ε¹: {}", x.coeff(1));
    let l = lift(&ps, &w, &x).unwrap();
    let r = square_equivalence_residuals(&ps, &l).unwrap();
    println!("MC holds: {}, flow holds: {}", r.mc_holds(), r.flow_holds());

    let mut xs = x.coeffs().to_vec();
    xs[2] = xs[2].plus(&ps.on_base(&y));
    let bad = EpsSeries::new(xs);
    let hc = hat_correspondence(&ps, &w, &bad).unwrap();
    println!(
        "perturbed X: l-side both zero = {}, Koszul side both zero = {}, consistent = {}",
        hc.l_side.both_zero(),
        hc.koszul_side.both_zero(),
        hc.consistent()
    );
}
