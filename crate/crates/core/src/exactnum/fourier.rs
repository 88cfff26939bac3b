//! Trigonometric polynomials on a torus, optionally with polynomial
//! dependence on a few real parameters (the `t`, `s` of product manifolds).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::field::FieldElement;
use crate::error::{Error, Result};

/// Variable layout of a function ring: `periodic` angles followed by
/// `poly` polynomial parameters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Ring {
    pub periodic: usize,
    pub poly: usize,
}

impl Ring {
    pub fn torus(n: usize) -> Self {
        Ring { periodic: n, poly: 0 }
    }

    pub fn with_params(n: usize, p: usize) -> Self {
        Ring { periodic: n, poly: p }
    }

    pub fn vars(&self) -> usize {
        self.periodic + self.poly
    }
}

/// Frequencies `k_1..k_n` followed by parameter exponents.
pub type Mode = Vec<i32>;

/// `Σ c_k e^{i k·θ} t^e` with finitely many nonzero coefficients.
///
/// Complex-valued functions are allowed (basis functions `e^{ik·θ}` are not
/// real); [`FourierScalar::is_real`] checks the conjugate symmetry and
/// [`FourierScalar::real_from_terms`] enforces it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FourierScalar {
    ring: Ring,
    terms: BTreeMap<Mode, FieldElement>,
}

/// A point of the torus on the `2π/8` grid together with rational parameter
/// values. Quarter-turn coordinates evaluate inside `Q(i)`; odd eighths need
/// the radical `√2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    pub eighths: Vec<i64>,
    pub params: Vec<BigRational>,
}

impl TorusPoint {
    pub fn angles(eighths: Vec<i64>) -> Self {
        TorusPoint { eighths, params: Vec::new() }
    }
}

/// `ζ^s` for the primitive eighth root of unity `ζ = (1+i)/√2`.
pub fn eighth_root_power(s: i64) -> FieldElement {
    let s = s.rem_euclid(8);
    let half = FieldElement::ratio(1, 2);
    let zeta = || {
        let rt = FieldElement::sqrt(2).expect("2 is square-free");
        &(&rt * &half) + &(&(&rt * &half) * &FieldElement::i())
    };
    match s {
        0 => FieldElement::one(),
        2 => FieldElement::i(),
        4 => FieldElement::from_int(-1),
        6 => -FieldElement::i(),
        odd => {
            let z = zeta();
            let mut acc = z.clone();
            for _ in 1..odd {
                acc = &acc * &z;
            }
            acc
        }
    }
}

impl FourierScalar {
    pub fn zero(ring: Ring) -> Self {
        FourierScalar { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: FieldElement) -> Self {
        Self::monomial(ring, vec![0; ring.vars()], c)
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, FieldElement::one())
    }

    /// `c · e^{ik·θ} t^e` from a full mode vector.
    pub fn monomial(ring: Ring, mode: Mode, c: FieldElement) -> Self {
        assert_eq!(mode.len(), ring.vars(), "mode length does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mode, c);
        }
        FourierScalar { ring, terms }
    }

    fn freq_mode(ring: Ring, k: &[i32]) -> Mode {
        assert_eq!(k.len(), ring.periodic, "frequency length does not match torus dimension");
        let mut m = k.to_vec();
        m.resize(ring.vars(), 0);
        m
    }

    /// `e^{ik·θ}`.
    pub fn exp(ring: Ring, k: &[i32]) -> Self {
        Self::monomial(ring, Self::freq_mode(ring, k), FieldElement::one())
    }

    /// `cos(k·θ) = (e^{ik·θ} + e^{-ik·θ}) / 2`.
    pub fn cos(ring: Ring, k: &[i32]) -> Self {
        let neg: Vec<i32> = k.iter().map(|x| -x).collect();
        let half = FieldElement::ratio(1, 2);
        &Self::exp(ring, k).scale(&half) + &Self::exp(ring, &neg).scale(&half)
    }

    /// `sin(k·θ) = (e^{ik·θ} − e^{-ik·θ}) / (2i)`.
    pub fn sin(ring: Ring, k: &[i32]) -> Self {
        let neg: Vec<i32> = k.iter().map(|x| -x).collect();
        let c = (FieldElement::i() * FieldElement::from_int(2)).inv().expect("2i is a unit");
        &Self::exp(ring, k).scale(&c) - &Self::exp(ring, &neg).scale(&c)
    }

    /// The `j`-th polynomial parameter.
    pub fn param(ring: Ring, j: usize) -> Self {
        assert!(j < ring.poly, "parameter index out of range");
        let mut m = vec![0; ring.vars()];
        m[ring.periodic + j] = 1;
        Self::monomial(ring, m, FieldElement::one())
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Mode, FieldElement)>) -> Self {
        let mut out = Self::zero(ring);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    /// As [`FourierScalar::from_terms`] but rejects data violating
    /// `c_{-k} = conj(c_k)`.
    pub fn real_from_terms(ring: Ring, terms: impl IntoIterator<Item = (Mode, FieldElement)>) -> Result<Self> {
        let f = Self::from_terms(ring, terms);
        if f.is_real() {
            Ok(f)
        } else {
            Err(Error::NotReal)
        }
    }

    fn add_term(&mut self, mode: Mode, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        assert_eq!(mode.len(), self.ring.vars(), "mode length does not match ring");
        match self.terms.entry(mode) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mode, &FieldElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mode: &[i32]) -> FieldElement {
        self.terms.get(mode).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// The value if the function is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Conjugate symmetry `c_{-k} = conj(c_k)`.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            let mut neg = m.clone();
            for x in neg.iter_mut().take(self.ring.periodic) {
                *x = -*x;
            }
            self.terms.get(&neg).map(|d| *d == c.conj()).unwrap_or(false)
        })
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        let n = self.ring.periodic;
        Self::from_terms(
            self.ring,
            self.terms.iter().map(|(m, c)| {
                let mut neg = m.clone();
                for x in neg.iter_mut().take(n) {
                    *x = -*x;
                }
                (neg, c.conj())
            }),
        )
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        FourierScalar { ring: self.ring, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    fn check_ring(&self, o: &Self) -> Result<()> {
        if self.ring != o.ring {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.ring, o.ring)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_ring(o)?;
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Convolution product.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_ring(o)?;
        let mut out = Self::zero(self.ring);
        if self.is_zero() || o.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Mode = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// Derivative along variable `axis` (0-based; angles first, then parameters).
    pub fn partial(&self, axis: usize) -> Result<Self> {
        if axis >= self.ring.vars() {
            return Err(Error::AxisOutOfRange { axis, dim: self.ring.vars() });
        }
        let mut out = Self::zero(self.ring);
        if axis < self.ring.periodic {
            for (m, c) in &self.terms {
                let k = m[axis];
                if k != 0 {
                    let f = FieldElement::gaussian(BigRational::from_integer(0.into()), BigRational::from_integer(k.into()));
                    out.add_term(m.clone(), &(c * &f));
                }
            }
        } else {
            for (m, c) in &self.terms {
                let e = m[axis];
                if e != 0 {
                    let mut m2 = m.clone();
                    m2[axis] -= 1;
                    out.add_term(m2, &c.scale(&BigRational::from_integer(e.into())));
                }
            }
        }
        Ok(out)
    }

    /// Highest exponent of parameter `j`.
    pub fn param_degree(&self, j: usize) -> usize {
        self.terms.keys().map(|m| m[self.ring.periodic + j] as usize).max().unwrap_or(0)
    }

    /// Coefficient of `t_j^e`, as a function with that exponent removed.
    pub fn param_coefficient(&self, j: usize, e: usize) -> Self {
        let slot = self.ring.periodic + j;
        Self::from_terms(
            self.ring,
            self.terms.iter().filter(|(m, _)| m[slot] as usize == e).map(|(m, c)| {
                let mut m2 = m.clone();
                m2[slot] = 0;
                (m2, c.clone())
            }),
        )
    }

    /// Re-expresses the function in a ring with more parameters.
    pub fn embed(&self, ring: Ring) -> Self {
        assert_eq!(ring.periodic, self.ring.periodic);
        assert!(ring.poly >= self.ring.poly);
        Self::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| {
                let mut m2 = m.clone();
                m2.resize(ring.vars(), 0);
                (m2, c.clone())
            }),
        )
    }

    /// Drops trailing parameters, which must not occur.
    pub fn restrict(&self, ring: Ring) -> Result<Self> {
        assert_eq!(ring.periodic, self.ring.periodic);
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            if m[ring.vars()..].iter().any(|&x| x != 0) {
                return Err(Error::DimensionMismatch("function depends on a dropped parameter".into()));
            }
            out.add_term(m[..ring.vars()].to_vec(), c);
        }
        Ok(out)
    }

    /// Exact value at a grid point.
    pub fn eval(&self, p: &TorusPoint) -> Result<FieldElement> {
        if p.eighths.len() != self.ring.periodic || p.params.len() != self.ring.poly {
            return Err(Error::DimensionMismatch("sample point does not match ring".into()));
        }
        let mut acc = FieldElement::zero();
        for (m, c) in &self.terms {
            let s: i64 = m.iter().zip(&p.eighths).map(|(k, q)| *k as i64 * q).sum();
            if s.rem_euclid(2) == 1 && c.radical() != 0 && c.radical() != 2 {
                return Err(Error::BadRadical(c.radical()));
            }
            let mut v = c * &eighth_root_power(s);
            for (j, t) in p.params.iter().enumerate() {
                let e = m[self.ring.periodic + j];
                let mut pw = BigRational::from_integer(1.into());
                for _ in 0..e {
                    pw = &pw * t;
                }
                v = v.scale(&pw);
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }
}

impl fmt::Display for FourierScalar {
    /// Manifest syntax: `(c)*exp(k1,..,kn)*t*t + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["t", "s"];
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            let k = &m[..self.ring.periodic];
            if k.iter().any(|&x| x != 0) {
                let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                write!(f, "*exp({})", ks.join(","))?;
            }
            for (j, &e) in m[self.ring.periodic..].iter().enumerate() {
                for _ in 0..e {
                    write!(f, "*{}", names.get(j).copied().unwrap_or("t"))?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FourierScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a FourierScalar> for &'a FourierScalar {
    type Output = FourierScalar;
    fn add(self, o: &FourierScalar) -> FourierScalar {
        self.try_add(o).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a FourierScalar> for &'a FourierScalar {
    type Output = FourierScalar;
    fn sub(self, o: &FourierScalar) -> FourierScalar {
        self.try_add(&-o).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a FourierScalar> for &'a FourierScalar {
    type Output = FourierScalar;
    fn mul(self, o: &FourierScalar) -> FourierScalar {
        self.try_mul(o).expect("ring mismatch in product")
    }
}

impl Neg for &FourierScalar {
    type Output = FourierScalar;
    fn neg(self) -> FourierScalar {
        FourierScalar { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}
