//! Exact arithmetic in Q(i, √d), Fourier polynomials and truncated ε-series.

use sflab::exactnum::{EpsSeries, FieldElement, FourierScalar, Ring, TorusPoint};

fn main() {
    let rt = FieldElement::sqrt(2).unwrap();
    let x = &FieldElement::from_int(3) + &rt;
    let y = x.inv().unwrap();
    println!("(3 + √2)^-1 = {y}");
    println!("check: {}", &x * &y);
    println!("|7 - 5√2| ≈ {:.6}", (&FieldElement::from_int(7) - &(&rt * &FieldElement::from_int(5))).abs_real().unwrap().approx_real());

    let r = Ring::torus(2);
    let f = FourierScalar::cos(r, &[1, 0]);
    let g = FourierScalar::sin(r, &[0, 1]);
    let fg = &f * &g;
    println!("cos θ1 · sin θ2 = {fg}");
    println!("∂1 of it        = {}", fg.partial(0).unwrap());
    println!("at θ = (π/4, π/2): {}", fg.eval(&TorusPoint::angles(vec![1, 2])).unwrap());

    // (1 - ε)^-1 truncated at ε^4
    let one_minus = EpsSeries::new(vec![FieldElement::one(), FieldElement::from_int(-1)]);
    let inv = EpsSeries::from_fn(4, |_| FieldElement::one());
    println!("(1 - ε)(1 + ε + … + ε⁴) coefficients: {:?}", product(&one_minus, &inv));
}

fn product(a: &EpsSeries<FieldElement>, b: &EpsSeries<FieldElement>) -> Vec<String> {
    (0..=b.order())
        .map(|k| {
            let mut acc = FieldElement::zero();
            for j in 0..=k.min(a.order()) {
                acc = &acc + &(a.coeff(j) * b.coeff(k - j));
            }
            acc.to_string()
        })
        .collect()
}
