//! Higher Jacobi and Maurer–Cartan residuals on small tabulated algebras.

use sflab::exactnum::FieldElement;
use sflab::linfty::toy::{matrix_dgla, so3, DegreeConvention};
use sflab::linfty::{jacobi_residual, mc_residual, Expandable, GradedElements};

fn main() {
    let l = so3().decalage(DegreeConvention::Unshifted);
    let mut zero = 0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let r = jacobi_residual(&l, &[l.basis(&a), l.basis(&b), l.basis(&c)]).unwrap();
                zero += usize::from(l.is_zero(&r));
            }
        }
    }
    println!("so(3) after décalage: {zero}/27 ternary Jacobi residuals vanish");

    let m = matrix_dgla().decalage(DegreeConvention::Unshifted);
    let degrees = &m.space.degrees;
    println!("endomorphism dgla, shifted degrees {degrees:?}");
    // Degree-zero elements are MC candidates.
    for a in (0..m.dim()).filter(|&a| degrees[a] == 0) {
        let v = m.basis(&a).clone();
        let res = mc_residual(&m, &v).unwrap();
        println!("basis {a}: MC residual zero = {}", m.is_zero(&res));
    }
    let sum = m.add(&m.basis(&3), &m.scale(&m.basis(&6), &FieldElement::ratio(1, 2)));
    println!("e3 + 1/2 e6 MC residual zero = {}", m.is_zero(&mc_residual(&m, &sum).unwrap()));
}
