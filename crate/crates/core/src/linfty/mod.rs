//! Generic L∞[1]-algebras: multibracket evaluators, higher Jacobi / Maurer–Cartan /
//! gauge residuals, and the symmetric-coalgebra picture (coderivations and
//! morphisms reconstructed from Taylor coefficients).

pub mod coalgebra;
pub mod series;
pub mod toy;

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::exactnum::{factorial, FieldElement};
use crate::graded::{koszul_sign, unshuffles};

pub use series::SeriesInstance;
pub use coalgebra::{
    coderivation_apply, coproduct, exp_coderivation, intertwine_residual, morphism_apply, SymVec, TaylorTable,
    TensorVec,
};

/// Highest arity accepted by [`jacobi_residual`].
pub const MAX_JACOBI_ARITY: usize = 6;

/// A graded vector space whose elements can be added and scaled.
/// Degrees are in the shifted (L∞[1]) convention.
pub trait GradedElements {
    type Elem: Clone + Debug;

    fn degree(&self, e: &Self::Elem) -> i32;
    fn zero(&self, degree: i32) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &FieldElement) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &FieldElement::from_int(-1)))
    }
}

/// Elements that expand in a (possibly infinite) graded basis.
pub trait Expandable: GradedElements {
    type Key: Ord + Clone + Debug + Hash;

    fn key_degree(&self, k: &Self::Key) -> i32;
    fn expand(&self, e: &Self::Elem) -> Vec<(Self::Key, FieldElement)>;
    fn basis(&self, k: &Self::Key) -> Self::Elem;
}

/// Degree-one graded-symmetric multibrackets `m_1, …, m_kmax`.
pub trait LInfty: GradedElements {
    fn max_arity(&self) -> usize;

    /// `m_k(args)` with `k = args.len()`; zero for `k > max_arity`.
    fn bracket(&self, args: &[&Self::Elem]) -> Self::Elem;
}

fn sum_into<S: GradedElements + ?Sized>(s: &S, acc: &mut Option<S::Elem>, x: S::Elem) {
    *acc = Some(match acc.take() {
        None => x,
        Some(a) => s.add(&a, &x),
    });
}

/// `Σ_{i+j=n+1} Σ_{σ ∈ Sh(i,n−i)} ε(σ;v) m_j(m_i(v_σ(1..i)), v_σ(i+1..n))`.
pub fn jacobi_residual<L: LInfty + ?Sized>(inst: &L, inputs: &[L::Elem]) -> Result<L::Elem> {
    let n = inputs.len();
    if n == 0 || n > MAX_JACOBI_ARITY {
        return Err(Error::ArityUnsupported(n));
    }
    let degs: Vec<i32> = inputs.iter().map(|v| inst.degree(v)).collect();
    let total: i32 = degs.iter().sum::<i32>() + 2;
    let mut acc = None;
    for i in 1..=n {
        let j = n + 1 - i;
        if i > inst.max_arity() || j > inst.max_arity() {
            continue;
        }
        for sigma in unshuffles(i, n)? {
            let sign = koszul_sign(&sigma, &degs)?;
            let idx = sigma.images();
            let inner_args: Vec<&L::Elem> = idx[..i].iter().map(|&k| &inputs[k]).collect();
            let inner = inst.bracket(&inner_args);
            if inst.is_zero(&inner) {
                continue;
            }
            let mut outer_args: Vec<&L::Elem> = vec![&inner];
            outer_args.extend(idx[i..].iter().map(|&k| &inputs[k]));
            let term = inst.bracket(&outer_args);
            let term = if sign < 0 { inst.scale(&term, &FieldElement::from_int(-1)) } else { term };
            sum_into(inst, &mut acc, term);
        }
    }
    Ok(acc.unwrap_or_else(|| inst.zero(total)))
}

/// `Σ_k (1/k!) m_k(v, …, v)` for a degree-zero `v`.
pub fn mc_residual<L: LInfty + ?Sized>(inst: &L, v: &L::Elem) -> Result<L::Elem> {
    if inst.degree(v) != 0 {
        return Err(Error::DegreeError(format!("MC element must have degree 0, got {}", inst.degree(v))));
    }
    let mut acc = None;
    for k in 1..=inst.max_arity() {
        let args: Vec<&L::Elem> = vec![v; k];
        let term = inst.bracket(&args);
        let c = FieldElement::from_rational(factorial(k).recip());
        sum_into(inst, &mut acc, inst.scale(&term, &c));
    }
    Ok(acc.unwrap_or_else(|| inst.zero(1)))
}

/// A polynomial path `v_t = Σ v_j t^j` (degree 0) driven by `w_t = Σ w_j t^j`
/// (degree −1).
#[derive(Clone, Debug)]
pub struct GaugePath<E> {
    pub v: Vec<E>,
    pub w: Vec<E>,
}

/// Multilinear evaluation on t-polynomial arguments; returns t-coefficients.
pub fn bracket_on_polynomials<L: LInfty + ?Sized>(inst: &L, args: &[&Vec<L::Elem>], out_degree: i32) -> Vec<L::Elem> {
    let len: usize = args.iter().map(|a| a.len() - 1).sum::<usize>() + 1;
    let mut out: Vec<Option<L::Elem>> = vec![None; len];
    let mut idx = vec![0usize; args.len()];
    loop {
        let picked: Vec<&L::Elem> = idx.iter().zip(args).map(|(&i, a)| &a[i]).collect();
        if !picked.iter().any(|e| inst.is_zero(e)) {
            let val = inst.bracket(&picked);
            let deg: usize = idx.iter().sum();
            sum_into(inst, &mut out[deg], val);
        }
        // odometer
        let mut k = 0;
        loop {
            if k == args.len() {
                return out.into_iter().map(|o| o.unwrap_or_else(|| inst.zero(out_degree))).collect();
            }
            idx[k] += 1;
            if idx[k] < args[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `dv/dt − Σ_k (1/k!) m_{k+1}(w_t, v_t, …, v_t)` as t-coefficients.
pub fn gauge_residual<L: LInfty + ?Sized>(inst: &L, path: &GaugePath<L::Elem>) -> Result<Vec<L::Elem>> {
    if path.v.is_empty() || path.w.is_empty() {
        return Err(Error::DegreeError("empty gauge path".into()));
    }
    for v in &path.v {
        if inst.degree(v) != 0 {
            return Err(Error::DegreeError("path v_t must have degree 0".into()));
        }
    }
    for w in &path.w {
        if inst.degree(w) != -1 {
            return Err(Error::DegreeError("path w_t must have degree -1".into()));
        }
    }
    let mut acc: Vec<L::Elem> = (1..path.v.len())
        .map(|j| inst.scale(&path.v[j], &FieldElement::from_int(j as i64)))
        .collect();
    if acc.is_empty() {
        acc.push(inst.zero(0));
    }
    for k in 0..inst.max_arity() {
        let mut args: Vec<&Vec<L::Elem>> = vec![&path.w];
        args.extend(std::iter::repeat_n(&path.v, k));
        let terms = bracket_on_polynomials(inst, &args, 0);
        let c = FieldElement::from_rational(-factorial(k).recip());
        for (j, t) in terms.into_iter().enumerate() {
            let t = inst.scale(&t, &c);
            if j < acc.len() {
                acc[j] = inst.add(&acc[j], &t);
            } else {
                while acc.len() < j {
                    acc.push(inst.zero(0));
                }
                acc.push(t);
            }
        }
    }
    Ok(acc)
}
