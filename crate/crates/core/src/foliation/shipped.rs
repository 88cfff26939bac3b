//! The two reference setups: the Kronecker foliation times a circle on `T³`
//! and a foliation of `T⁴` by 2-tori with a non-involutive complement.

use super::multivector::Skew;
use super::setup::{const_vector, Setup, VectorField};
use crate::error::Result;
use crate::exactnum::{FieldElement, FourierScalar, Ring};

/// `Π = (∂₁ + λ∂₂)∧∂₃` with leaf frame `{∂₁ + λ∂₂, ∂₃}` and complement `∂₂`.
pub fn t3_with_slope(lambda: FieldElement) -> Result<Setup> {
    let r = Ring::torus(3);
    let one = FourierScalar::one(r);
    let l = FourierScalar::constant(r, lambda);
    let pi = Skew::monomial(3, &[0, 2], one.clone()).plus(&Skew::monomial(3, &[1, 2], l.clone()));
    let tf = vec![vec![one.clone(), l, FourierScalar::zero(r)], const_vector(r, &[0, 0, 1])];
    Setup::new(pi, tf, vec![const_vector(r, &[0, 1, 0])])
}

/// The `T³` setup with slope `√2`.
pub fn t3_kronecker() -> Result<Setup> {
    t3_with_slope(FieldElement::sqrt(2)?)
}

/// Complement `∂₂ + sin θ₁ ∂₃` for the `T³` setup.
pub fn t3_second_complement() -> Vec<VectorField> {
    let r = Ring::torus(3);
    vec![vec![FourierScalar::zero(r), FourierScalar::one(r), FourierScalar::sin(r, &[1, 0, 0])]]
}

/// `Π = ∂₁∧∂₂` with complement `{∂₃ + sin θ₄ ∂₁, ∂₄}`.
pub fn t4_nonintegrable() -> Result<Setup> {
    let r = Ring::torus(4);
    let pi = Skew::monomial(4, &[0, 1], FourierScalar::one(r));
    let tf = vec![const_vector(r, &[1, 0, 0, 0]), const_vector(r, &[0, 1, 0, 0])];
    let g = vec![
        vec![FourierScalar::sin(r, &[0, 0, 0, 1]), FourierScalar::zero(r), FourierScalar::one(r), FourierScalar::zero(r)],
        const_vector(r, &[0, 0, 0, 1]),
    ];
    Setup::new(pi, tf, g)
}

/// Complement `{∂₃, ∂₄ + cos θ₃ ∂₂}` for the `T⁴` setup.
pub fn t4_second_complement() -> Vec<VectorField> {
    let r = Ring::torus(4);
    vec![
        const_vector(r, &[0, 0, 1, 0]),
        vec![FourierScalar::zero(r), FourierScalar::cos(r, &[0, 0, 1, 0]), FourierScalar::zero(r), FourierScalar::one(r)],
    ]
}
