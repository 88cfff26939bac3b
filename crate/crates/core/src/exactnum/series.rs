//! Truncated power series in the deformation parameter ε.

use super::matrix::RingElement;
use crate::error::{Error, Result};

/// `t_0 + ε t_1 + … + ε^K t_K`; every operation truncates at order `K`.
#[derive(Clone, PartialEq, Debug)]
pub struct EpsSeries<T> {
    coeffs: Vec<T>,
}

impl<T> EpsSeries<T> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl<T: Clone> EpsSeries<T> {
    /// Coefficients `t_0..t_K`; panics on an empty list.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the order-zero coefficient");
        EpsSeries { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> T) -> Self {
        EpsSeries { coeffs: (0..=order).map(f).collect() }
    }

    pub fn coeff(&self, j: usize) -> &T {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> EpsSeries<U> {
        EpsSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<U>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<EpsSeries<U>> {
        Ok(EpsSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn zip_with<U, V>(&self, o: &EpsSeries<U>, mut f: impl FnMut(&T, &U) -> V) -> EpsSeries<V> {
        let k = self.order().min(o.order());
        EpsSeries { coeffs: (0..=k).map(|j| f(&self.coeffs[j], &o.coeffs[j])).collect() }
    }

    /// Cauchy product for a bilinear map, truncated at the smaller order.
    pub fn bilinear<U, V>(
        &self,
        o: &EpsSeries<U>,
        mut f: impl FnMut(&T, &U) -> V,
        mut add: impl FnMut(V, V) -> V,
    ) -> EpsSeries<V> {
        let k = self.order().min(o.order());
        let coeffs = (0..=k)
            .map(|n| {
                let mut acc = f(&self.coeffs[0], &o.coeffs[n]);
                for i in 1..=n {
                    acc = add(acc, f(&self.coeffs[i], &o.coeffs[n - i]));
                }
                acc
            })
            .collect();
        EpsSeries { coeffs }
    }

    /// Re-truncates at a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        EpsSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }
}

impl<T: RingElement> EpsSeries<T> {
    pub fn constant(t: T, order: usize) -> Self {
        let z = t.zero_like();
        let mut coeffs = vec![t];
        coeffs.resize(order + 1, z);
        EpsSeries { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero_elem())
    }

    pub fn plus(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.plus(b))
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.zip_with(o, |a, b| a.minus(b))
    }

    pub fn times(&self, o: &Self) -> Self {
        self.bilinear(o, |a, b| a.times(b), |a, b| a.plus(&b))
    }

    /// Lowest order with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero_elem())
    }
}

/// Inverse of a series whose order-zero part is the identity:
/// `(id + N)^{-1} = Σ_j (−N)^j`, computed by the recursion
/// `X_j = −Σ_{m=1..j} S_m X_{j−m}`.
pub fn series_geometric_inverse<T: RingElement>(s: &EpsSeries<T>) -> Result<EpsSeries<T>> {
    let s0 = s.coeff(0);
    if *s0 != s0.one_like() {
        return Err(Error::NonUnitLeadingTerm);
    }
    Ok(inverse_with_leading(s, s0.one_like()))
}

/// Inverse of a series whose order-zero part is `id + nilpotent`.
/// `nil_bound` bounds the nilpotency index that is searched.
pub fn series_inverse_unipotent<T: RingElement>(s: &EpsSeries<T>, nil_bound: usize) -> Result<EpsSeries<T>> {
    let s0 = s.coeff(0);
    let one = s0.one_like();
    let n0 = s0.minus(&one);
    let mut inv0 = one.clone();
    let mut pow = one.clone();
    let mut done = false;
    for _ in 0..=nil_bound {
        pow = pow.times(&n0.negate());
        if pow.is_zero_elem() {
            done = true;
            break;
        }
        inv0 = inv0.plus(&pow);
    }
    if !done {
        return Err(Error::NonUnitLeadingTerm);
    }
    Ok(inverse_with_leading(s, inv0))
}

fn inverse_with_leading<T: RingElement>(s: &EpsSeries<T>, inv0: T) -> EpsSeries<T> {
    let k = s.order();
    let mut xs: Vec<T> = vec![inv0.clone()];
    for j in 1..=k {
        let mut acc = inv0.zero_like();
        for m in 1..=j {
            let sm = s.coeff(m);
            if sm.is_zero_elem() {
                continue;
            }
            acc = acc.plus(&sm.times(&xs[j - m]));
        }
        xs.push(inv0.times(&acc).negate());
    }
    EpsSeries::new(xs)
}
