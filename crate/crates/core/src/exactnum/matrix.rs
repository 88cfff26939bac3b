//! Dense matrices over exact rings.

use std::collections::HashMap;
use std::fmt::Debug;

use super::field::FieldElement;
use super::fourier::{FourierScalar, TorusPoint};
use crate::error::{Error, Result};

/// Minimal ring interface shared by scalars, functions and matrices.
pub trait RingElement: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
}

impl RingElement for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero()
    }
    fn one_like(&self) -> Self {
        FieldElement::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl RingElement for FourierScalar {
    fn zero_like(&self) -> Self {
        FourierScalar::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        FourierScalar::one(self.ring())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

/// Row-major `rows × cols` matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: RingElement> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        Self::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        let o = proto.one_like();
        Self::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<U: RingElement>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: RingElement>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat<U>> {
        Ok(Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        *x == x.one_like()
                    } else {
                        x.is_zero_elem()
                    }
                })
            })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let proto = self.data.first().or(o.data.first()).expect("empty matrix product");
        let mut out = Self::zeros(self.rows, o.cols, proto);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let v = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.get(i, 0).zero_like();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero_elem() && !x.is_zero_elem() {
                        acc = acc.plus(&a.times(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn scale_by(&self, s: &T) -> Self {
        self.map(|x| x.times(s))
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shape mismatch");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect() }
    }

    /// Determinant by Laplace expansion over column subsets (fine for n <= 8).
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut memo: HashMap<(usize, u32), T> = HashMap::new();
        self.det_rec(0, (1u32 << n) - 1, &mut memo)
    }

    fn det_rec(&self, row: usize, cols: u32, memo: &mut HashMap<(usize, u32), T>) -> T {
        if row == self.rows {
            return self.data[0].one_like();
        }
        if let Some(v) = memo.get(&(row, cols)) {
            return v.clone();
        }
        let mut acc = self.data[0].zero_like();
        let mut sign_pos = 0;
        for j in 0..self.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero_elem() {
                let minor = self.det_rec(row + 1, cols & !(1 << j), memo);
                let term = a.times(&minor);
                acc = if sign_pos % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
            }
            sign_pos += 1;
        }
        memo.insert((row, cols), acc.clone());
        acc
    }

    fn minor_matrix(&self, r: usize, c: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let ii = if i < r { i } else { i + 1 };
            let jj = if j < c { j } else { j + 1 };
            self.get(ii, jj).clone()
        })
    }

    /// Classical adjoint: `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        if n == 1 {
            return Self::identity(1, &self.data[0]);
        }
        Self::from_fn(n, n, |i, j| {
            let d = self.minor_matrix(j, i).determinant();
            if (i + j) % 2 == 0 {
                d
            } else {
                d.negate()
            }
        })
    }
}

impl<T: RingElement> RingElement for Mat<T> {
    fn zero_like(&self) -> Self {
        Self::zeros(self.rows, self.cols, &self.data[0])
    }
    fn one_like(&self) -> Self {
        Self::identity(self.rows, &self.data[0])
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.plus(b))
    }
    fn minus(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.minus(b))
    }
    fn times(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix shape mismatch")
    }
    fn negate(&self) -> Self {
        self.map(|x| x.negate())
    }
}

impl Mat<FourierScalar> {
    pub fn eval(&self, p: &TorusPoint) -> Result<Mat<FieldElement>> {
        self.try_map(|f| f.eval(p))
    }

    /// Inverse when the determinant is a nonzero constant.
    pub fn inverse_constant_det(&self) -> Result<Self> {
        let det = self.determinant();
        let c = det.as_constant().ok_or_else(|| Error::NotComplementary("determinant is not constant".into()))?;
        let inv = c.inv().map_err(|_| Error::NotComplementary("frame is degenerate".into()))?;
        Ok(self.adjugate().map(|x| x.scale(&inv)))
    }
}

impl Mat<FieldElement> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &(&f * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                FieldElement::one()
            } else {
                FieldElement::zero()
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::SingularAtSample);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    /// Whether two matrices have the same column space.
    pub fn same_column_space(&self, o: &Self) -> bool {
        let rt = |m: &Self| {
            let (r, piv) = m.transpose().rref();
            Self::from_fn(piv.len(), r.cols, |i, j| r.get(i, j).clone())
        };
        self.rows == o.rows && rt(self) == rt(o)
    }
}
