//! Extension of scalars to truncated ε-series.

use super::{GradedElements, LInfty};
use crate::exactnum::{EpsSeries, FieldElement};

/// The L∞[1]-algebra `L ⊗ Q[ε]/(ε^{K+1})`.
pub struct SeriesInstance<'a, L: LInfty> {
    pub inner: &'a L,
    pub order: usize,
}

impl<'a, L: LInfty> SeriesInstance<'a, L> {
    pub fn new(inner: &'a L, order: usize) -> Self {
        SeriesInstance { inner, order }
    }
}

impl<L: LInfty> GradedElements for SeriesInstance<'_, L> {
    type Elem = EpsSeries<L::Elem>;

    fn degree(&self, e: &Self::Elem) -> i32 {
        self.inner.degree(e.coeff(0))
    }
    fn zero(&self, degree: i32) -> Self::Elem {
        EpsSeries::from_fn(self.order, |_| self.inner.zero(degree))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.zip_with(b, |x, y| self.inner.add(x, y))
    }
    fn scale(&self, a: &Self::Elem, c: &FieldElement) -> Self::Elem {
        a.map(|x| self.inner.scale(x, c))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs().iter().all(|x| self.inner.is_zero(x))
    }
}

impl<L: LInfty> LInfty for SeriesInstance<'_, L> {
    fn max_arity(&self) -> usize {
        self.inner.max_arity()
    }

    fn bracket(&self, args: &[&Self::Elem]) -> Self::Elem {
        let k = self.order.min(args.iter().map(|a| a.order()).min().unwrap_or(self.order));
        let deg = args.iter().map(|a| self.degree(a)).sum::<i32>() + 1;
        let mut out: Vec<L::Elem> = (0..=k).map(|_| self.inner.zero(deg)).collect();
        let mut idx = vec![0usize; args.len()];
        loop {
            let total: usize = idx.iter().sum();
            if total <= k {
                let picked: Vec<&L::Elem> = idx.iter().zip(args).map(|(&i, a)| a.coeff(i)).collect();
                if !picked.iter().any(|e| self.inner.is_zero(e)) {
                    let v = self.inner.bracket(&picked);
                    out[total] = self.inner.add(&out[total], &v);
                }
            }
            let mut p = 0;
            loop {
                if p == args.len() {
                    return EpsSeries::new(out);
                }
                idx[p] += 1;
                if idx[p] <= k {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }
}
