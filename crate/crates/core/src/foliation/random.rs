//! Seeded generators of small real trigonometric polynomials and multivectors.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::multivector::{MultiVector, Skew};
use super::setup::Setup;
use crate::exactnum::{FieldElement, FourierScalar, Ring};

/// Size limits for generated functions.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub terms: usize,
    pub max_freq: i32,
    pub max_coeff: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { terms: 2, max_freq: 1, max_coeff: 3 }
    }
}

/// A real function `Σ c cos(k·θ)` / `c sin(k·θ)` plus possibly a constant.
pub fn random_function(rng: &mut ChaCha8Rng, ring: Ring, shape: Shape) -> FourierScalar {
    let mut acc = FourierScalar::zero(ring);
    for _ in 0..shape.terms {
        let c = FieldElement::ratio(rng.gen_range(-shape.max_coeff..=shape.max_coeff), rng.gen_range(1..=2));
        if c.is_zero() {
            continue;
        }
        let k: Vec<i32> = (0..ring.periodic).map(|_| rng.gen_range(-shape.max_freq..=shape.max_freq)).collect();
        let basis = match rng.gen_range(0..3) {
            0 => FourierScalar::one(ring),
            1 => FourierScalar::cos(ring, &k),
            _ => FourierScalar::sin(ring, &k),
        };
        acc = &acc + &basis.scale(&c);
    }
    acc
}

/// A nonzero random function.
pub fn random_nonzero_function(rng: &mut ChaCha8Rng, ring: Ring, shape: Shape) -> FourierScalar {
    loop {
        let f = random_function(rng, ring, shape);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random multivector of the given degree in coordinate frames.
pub fn random_multivector(rng: &mut ChaCha8Rng, ring: Ring, dim: usize, degree: usize, shape: Shape) -> MultiVector {
    let mut acc = Skew::zero(ring, dim, degree);
    if degree > dim {
        return acc;
    }
    let terms = rng.gen_range(1..=2);
    for _ in 0..terms {
        let mut idx = sample(rng, dim, degree).into_vec();
        idx.sort_unstable();
        let f = random_function(rng, ring, shape);
        acc.add_term(&idx, &f);
    }
    acc
}

/// A random good multivector: functions times wedges of leaf frame fields
/// with at most one complement field.
pub fn random_good(rng: &mut ChaCha8Rng, s: &Setup, degree: usize, shape: Shape) -> MultiVector {
    let mut acc = Skew::zero(s.ring, s.dim, degree);
    let r = s.tf_frame.len();
    let g = s.g_frame.len();
    let terms = rng.gen_range(1..=2);
    for _ in 0..terms {
        let use_g = degree >= 1 && g > 0 && rng.gen_bool(0.5);
        let n_tf = if use_g { degree - 1 } else { degree };
        if n_tf > r {
            continue;
        }
        let mut w = Skew::function(s.dim, random_function(rng, s.ring, shape));
        for a in sample(rng, r, n_tf).into_vec() {
            w = w.wedge(&s.tf_vector(a));
        }
        if use_g {
            w = w.wedge(&s.g_vector(rng.gen_range(0..g)));
        }
        acc = acc.plus(&w);
    }
    acc
}
