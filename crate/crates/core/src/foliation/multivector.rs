//! Multivector fields and differential forms on a torus (or a torus times
//! parameter intervals), stored by strictly increasing index tuples.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, FourierScalar, Mat, Ring, TorusPoint};

/// A homogeneous skew tensor `Σ_I f_I ∂_{i_1}∧…∧∂_{i_d}` (or `dθ_I` for forms).
///
/// Axis `a` differentiates along ring variable `a`, so on a product manifold
/// the last axes are the polynomial parameters.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Skew {
    dim: usize,
    degree: usize,
    ring: Ring,
    comps: BTreeMap<Vec<usize>, FourierScalar>,
}

pub type MultiVector = Skew;
pub type Form = Skew;

/// Sign that sorts `word` and whether it has a repeated index.
fn sort_sign(word: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            } else if w[j] == w[j + 1] {
                return None;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, w))
}

fn merge_sign(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    sort_sign(&w)
}

impl Skew {
    pub fn zero(ring: Ring, dim: usize, degree: usize) -> Self {
        assert!(dim <= ring.vars(), "more axes than ring variables");
        Skew { dim, degree, ring, comps: BTreeMap::new() }
    }

    pub fn function(dim: usize, f: FourierScalar) -> Self {
        let mut s = Self::zero(f.ring(), dim, 0);
        s.add_term(&[], &f);
        s
    }

    /// `Σ_i v_i ∂_i`.
    pub fn vector(dim: usize, coeffs: &[FourierScalar]) -> Self {
        assert_eq!(coeffs.len(), dim);
        let mut s = Self::zero(coeffs[0].ring(), dim, 1);
        for (i, c) in coeffs.iter().enumerate() {
            s.add_term(&[i], c);
        }
        s
    }

    /// `f ∂_{idx_1}∧…` for an arbitrary (possibly unsorted) index word.
    pub fn monomial(dim: usize, idx: &[usize], f: FourierScalar) -> Self {
        let mut s = Self::zero(f.ring(), dim, idx.len());
        s.add_term(idx, &f);
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &FourierScalar)> {
        self.comps.iter()
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Component along an index word, with the sign of sorting it.
    pub fn component(&self, idx: &[usize]) -> FourierScalar {
        match sort_sign(idx) {
            None => FourierScalar::zero(self.ring),
            Some((s, w)) => {
                let c = self.comps.get(&w).cloned().unwrap_or_else(|| FourierScalar::zero(self.ring));
                if s < 0 {
                    -&c
                } else {
                    c
                }
            }
        }
    }

    pub fn add_term(&mut self, idx: &[usize], f: &FourierScalar) {
        assert_eq!(idx.len(), self.degree, "index word has the wrong length");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if f.is_zero() {
            return;
        }
        let Some((s, w)) = sort_sign(idx) else { return };
        let f = if s < 0 { -f } else { f.clone() };
        match self.comps.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim || self.ring != o.ring {
            return Err(Error::DimensionMismatch(format!(
                "{} axes over {:?} vs {} axes over {:?}",
                self.dim, self.ring, o.dim, o.ring
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if self.degree != o.degree {
            return Err(Error::DegreeError(format!("adding degrees {} and {}", self.degree, o.degree)));
        }
        let mut out = self.clone();
        for (i, f) in &o.comps {
            out.add_term(i, f);
        }
        Ok(out)
    }

    /// Panicking addition for internal use on values known to match.
    pub fn plus(&self, o: &Self) -> Self {
        self.try_add(o).expect("incompatible skew tensors")
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|f| -f)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring, self.dim, self.degree);
        }
        self.map_coeffs(|f| f.scale(c))
    }

    pub fn mul_fn(&self, g: &FourierScalar) -> Self {
        self.map_coeffs(|f| f * g)
    }

    pub fn map_coeffs(&self, f: impl Fn(&FourierScalar) -> FourierScalar) -> Self {
        let mut out = Self::zero(self.ring, self.dim, self.degree);
        for (i, c) in &self.comps {
            let v = f(c);
            if !v.is_zero() {
                out.comps.insert(i.clone(), v);
            }
        }
        out
    }

    /// Same tensor with a different nominal degree; only valid when zero.
    pub fn with_degree(&self, degree: usize) -> Self {
        assert!(self.is_zero() || self.degree == degree);
        Self::zero(self.ring, self.dim, degree).plus_unchecked(self)
    }

    fn plus_unchecked(mut self, o: &Self) -> Self {
        for (i, f) in &o.comps {
            self.add_term(i, f);
        }
        self
    }

    pub fn wedge(&self, o: &Self) -> Self {
        self.check_same(o).expect("wedge of incompatible tensors");
        let mut out = Self::zero(self.ring, self.dim, self.degree + o.degree);
        for (i, f) in &self.comps {
            for (j, g) in &o.comps {
                if let Some((s, w)) = merge_sign(i, j) {
                    let c = f * g;
                    out.add_sorted(w, if s < 0 { -&c } else { c });
                }
            }
        }
        out
    }

    fn add_sorted(&mut self, w: Vec<usize>, f: FourierScalar) {
        if f.is_zero() {
            return;
        }
        match self.comps.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Componentwise derivative along an axis.
    pub fn partial(&self, axis: usize) -> Self {
        assert!(axis < self.dim, "axis out of range");
        self.map_coeffs(|f| f.partial(axis).expect("axis within ring"))
    }

    /// Left contraction with a one-form (or vector, for forms):
    /// `ι_α(∂_{i_1}∧…∧∂_{i_d}) = Σ_m (−1)^m α_{i_m} ∂_{i_1}∧…∧\hat{∂_{i_m}}∧…`.
    pub fn contract(&self, alpha: &[FourierScalar]) -> Self {
        assert_eq!(alpha.len(), self.dim);
        if self.degree == 0 {
            return Self::zero(self.ring, self.dim, 0);
        }
        let mut out = Self::zero(self.ring, self.dim, self.degree - 1);
        for (idx, f) in &self.comps {
            for (m, &i) in idx.iter().enumerate() {
                if alpha[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(m);
                let c = f * &alpha[i];
                out.add_sorted(rest, if m % 2 == 1 { -&c } else { c });
            }
        }
        out
    }

    /// Contraction with the coordinate covector (or vector) of axis `a`.
    pub fn contract_axis(&self, a: usize) -> Self {
        if self.degree == 0 {
            return Self::zero(self.ring, self.dim, 0);
        }
        let mut out = Self::zero(self.ring, self.dim, self.degree - 1);
        for (idx, f) in &self.comps {
            if let Some(m) = idx.iter().position(|&i| i == a) {
                let mut rest = idx.clone();
                rest.remove(m);
                out.add_sorted(rest, if m % 2 == 1 { -f } else { f.clone() });
            }
        }
        out
    }

    /// Matrix with column `i` holding `ι_{dθ_i} W`, i.e. `M[j][i] = W^{ij}`.
    /// For a two-form the same layout gives `γ^♭` with `M[j][i] = γ_{ij}`.
    pub fn sharp(&self) -> Mat<FourierScalar> {
        assert_eq!(self.degree, 2, "sharp needs a degree two tensor");
        let z = FourierScalar::zero(self.ring);
        let mut m = Mat::zeros(self.dim, self.dim, &z);
        for (idx, f) in &self.comps {
            let (i, j) = (idx[0], idx[1]);
            m.set(j, i, f.clone());
            m.set(i, j, -f);
        }
        m
    }

    /// Inverse of [`Skew::sharp`]; fails unless `M` is skew.
    pub fn from_sharp(m: &Mat<FourierScalar>, dim: usize) -> Result<Self> {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch("sharp matrix shape".into()));
        }
        let ring = m.get(0, 0).ring();
        let mut out = Self::zero(ring, dim, 2);
        for i in 0..dim {
            for j in 0..dim {
                let s = m.get(j, i) + m.get(i, j);
                if !s.is_zero() {
                    return Err(Error::DegreeError(format!("matrix is not skew at ({i}, {j})")));
                }
                if i < j {
                    out.add_sorted(vec![i, j], m.get(j, i).clone());
                }
            }
        }
        Ok(out)
    }

    /// Same components on more axes or a ring with more parameters.
    pub fn embed(&self, ring: Ring, dim: usize) -> Self {
        assert!(dim >= self.dim && ring.periodic == self.ring.periodic && ring.poly >= self.ring.poly);
        let mut out = Self::zero(ring, dim, self.degree);
        for (i, f) in &self.comps {
            out.comps.insert(i.clone(), f.embed(ring));
        }
        out
    }

    /// Drops axes and parameters, which must be unused.
    pub fn restrict(&self, ring: Ring, dim: usize) -> Result<Self> {
        let mut out = Self::zero(ring, dim, self.degree);
        for (i, f) in &self.comps {
            if i.iter().any(|&a| a >= dim) {
                return Err(Error::DimensionMismatch("component along a dropped axis".into()));
            }
            out.comps.insert(i.clone(), f.restrict(ring)?);
        }
        Ok(out)
    }

    pub fn is_real(&self) -> bool {
        self.comps.values().all(|f| f.is_real())
    }

    /// Components evaluated at a grid point.
    pub fn eval(&self, p: &TorusPoint) -> Result<BTreeMap<Vec<usize>, FieldElement>> {
        self.comps.iter().map(|(i, f)| Ok((i.clone(), f.eval(p)?))).collect()
    }

    /// Number of Fourier terms over all components.
    pub fn size(&self) -> usize {
        self.comps.values().map(|f| f.len()).sum()
    }

    pub fn param_coefficient(&self, j: usize, e: usize) -> Self {
        self.map_coeffs(|f| f.param_coefficient(j, e))
    }

    pub fn param_degree(&self, j: usize) -> usize {
        self.comps.values().map(|f| f.param_degree(j)).max().unwrap_or(0)
    }
}

/// Schouten–Nijenhuis bracket through odd coordinates `ζ_i = ∂_i`:
/// `[P,Q] = Σ_i (P ←∂_{ζ_i}) ∂_i Q − (−1)^{(p−1)(q−1)} (Q ←∂_{ζ_i}) ∂_i P`.
pub fn schouten(p: &MultiVector, q: &MultiVector) -> Result<MultiVector> {
    p.check_same(q)?;
    let deg = (p.degree + q.degree).checked_sub(1);
    let Some(deg) = deg else {
        return Ok(Skew::zero(p.ring, p.dim, 0));
    };
    let mut out = Skew::zero(p.ring, p.dim, deg);
    half_schouten(p, q, 1, &mut out);
    let s = if ((p.degree as i64 - 1) * (q.degree as i64 - 1)).rem_euclid(2) == 0 { -1 } else { 1 };
    half_schouten(q, p, s, &mut out);
    Ok(out)
}

fn half_schouten(p: &MultiVector, q: &MultiVector, sign: i32, out: &mut MultiVector) {
    let d = p.degree;
    for (idx, f) in &p.comps {
        for (m, &i) in idx.iter().enumerate() {
            let sr = if (d - 1 - m) % 2 == 0 { sign } else { -sign };
            let mut rest = idx.clone();
            rest.remove(m);
            for (jdx, g) in &q.comps {
                let dg = g.partial(i).expect("axis within ring");
                if dg.is_zero() {
                    continue;
                }
                if let Some((s2, w)) = merge_sign(&rest, jdx) {
                    let c = f * &dg;
                    out.add_sorted(w, if sr * s2 < 0 { -&c } else { c });
                }
            }
        }
    }
}

impl fmt::Display for Skew {
    /// Manifest syntax: `(f) * e1^e3 + ...`; parameter axes print as `et`, `es`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if !idx.is_empty() {
                let names: Vec<String> = idx
                    .iter()
                    .map(|&a| {
                        if a < self.ring.periodic {
                            format!("e{}", a + 1)
                        } else if a == self.ring.periodic {
                            "et".to_string()
                        } else {
                            "es".to_string()
                        }
                    })
                    .collect();
                write!(f, " * {}", names.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Skew {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}

/// `Σ_i v_i ∂_i g` for a vector given by its coefficient list.
pub fn derive_along(v: &[FourierScalar], g: &FourierScalar) -> FourierScalar {
    let mut acc = FourierScalar::zero(g.ring());
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = g.partial(i).expect("axis within ring");
        if !d.is_zero() {
            acc = &acc + &(c * &d);
        }
    }
    acc
}

/// Coefficient list of a vector field (degree one).
pub fn vector_coeffs(v: &MultiVector) -> Vec<FourierScalar> {
    assert_eq!(v.degree, 1);
    (0..v.dim).map(|i| v.component(&[i])).collect()
}

/// Lie derivative of a one-form: `(L_X α)_k = Σ_m X^m ∂_m α_k + α_m ∂_k X^m`.
pub fn lie_derivative_one_form(x: &[FourierScalar], alpha: &[FourierScalar]) -> Vec<FourierScalar> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let mut acc = derive_along(x, &alpha[k]);
            for m in 0..n {
                if alpha[m].is_zero() {
                    continue;
                }
                let d = x[m].partial(k).expect("axis within ring");
                if !d.is_zero() {
                    acc = &acc + &(&alpha[m] * &d);
                }
            }
            acc
        })
        .collect()
}

/// Lie bracket of vector fields given by coefficient lists.
pub fn lie_bracket(x: &[FourierScalar], y: &[FourierScalar]) -> Vec<FourierScalar> {
    (0..x.len()).map(|k| &derive_along(x, &y[k]) - &derive_along(y, &x[k])).collect()
}
