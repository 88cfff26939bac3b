//! Scalars in the tower Q ⊂ Q(i) ⊂ Q(i, √d).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `a + b·i + c·√d + e·i√d` with rational coordinates.
///
/// The radical `d` is carried by the value; it is zero exactly when the
/// radical part vanishes, so elements of `Q(i)` mix freely with any radical.
/// Combining two elements with different nonzero radicals is a contract
/// violation and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    e: BigRational,
    d: u32,
}

pub fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2u32;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn gmul(a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> (BigRational, BigRational) {
    // (a + bi)(c + di)
    (a * c - b * d, a * d + b * c)
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            a: BigRational::zero(),
            b: BigRational::zero(),
            c: BigRational::zero(),
            e: BigRational::zero(),
            d: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn i() -> Self {
        Self::gaussian(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    /// `num/den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        FieldElement { a, ..Self::zero() }
    }

    pub fn gaussian(a: BigRational, b: BigRational) -> Self {
        FieldElement { a, b, ..Self::zero() }
    }

    /// `√d` for a square-free `d >= 2`.
    pub fn sqrt(d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::BadRadical(d));
        }
        Ok(FieldElement { c: BigRational::one(), d, ..Self::zero() })
    }

    /// Builds `a + b·i + c·√d + e·i√d`.
    pub fn new(a: BigRational, b: BigRational, c: BigRational, e: BigRational, d: u32) -> Result<Self> {
        if (!c.is_zero() || !e.is_zero()) && !is_square_free(d) {
            return Err(Error::BadRadical(d));
        }
        Ok(FieldElement { a, b, c, e, d }.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.c.is_zero() && self.e.is_zero() {
            self.d = 0;
        }
        self
    }

    fn joint_radical(&self, o: &Self) -> u32 {
        match (self.d, o.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("radical mismatch: sqrt({x}) combined with sqrt({y})"),
        }
    }

    /// Rational coordinates `(a, b, c, e)` and the radical.
    pub fn parts(&self) -> (&BigRational, &BigRational, &BigRational, &BigRational, u32) {
        (&self.a, &self.b, &self.c, &self.e, self.d)
    }

    pub fn radical(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.d == 0
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.d == 0
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.e.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.b.is_zero() && self.d == 0).then_some(&self.a)
    }

    pub fn conj(&self) -> Self {
        FieldElement { a: self.a.clone(), b: -&self.b, c: self.c.clone(), e: -&self.e, d: self.d }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        FieldElement { a: &self.a * r, b: &self.b * r, c: &self.c * r, e: &self.e * r, d: self.d }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x = u + v·r with u, v in Q(i); x⁻¹ = (u − v·r) / (u² − d·v²).
        let (u2r, u2i) = gmul(&self.a, &self.b, &self.a, &self.b);
        let (v2r, v2i) = gmul(&self.c, &self.e, &self.c, &self.e);
        let dd = q(self.d as i64);
        let nr = u2r - &dd * v2r;
        let ni = u2i - &dd * v2i;
        let norm = &nr * &nr + &ni * &ni;
        // 1/N = conj(N)/|N|²
        let (ir, ii) = (&nr / &norm, -(&ni / &norm));
        let (a, b) = gmul(&self.a, &self.b, &ir, &ii);
        let (c, e) = gmul(&-&self.c, &-&self.e, &ir, &ii);
        Ok(FieldElement { a, b, c, e, d: self.d }.normalized())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of a real element; `None` when the element is not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let sa = self.a.cmp(&BigRational::zero());
        let sc = self.c.cmp(&BigRational::zero());
        if sc == Ordering::Equal || sa == sc {
            return Some(if sa == Ordering::Equal { sc } else { sa });
        }
        if sa == Ordering::Equal {
            return Some(sc);
        }
        // opposite signs: compare a² with c²·d
        let lhs = &self.a * &self.a;
        let rhs = &self.c * &self.c * q(self.d as i64);
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sc,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// Total order on real elements.
    pub fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        (self - other).real_sign()
    }

    pub fn abs_real(&self) -> Option<Self> {
        match self.real_sign()? {
            Ordering::Less => Some(-self),
            _ => Some(self.clone()),
        }
    }

    /// Floating approximation, for display of growth rates only.
    pub fn approx_real(&self) -> f64 {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.c) * (self.d as f64).sqrt()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    /// Prints in the manifest scalar syntax, e.g. `1/2 - 3*i + rt`.
    /// The radical itself is not printed; `rt` denotes the session radical.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [(&self.a, ""), (&self.b, "i"), (&self.c, "rt"), (&self.e, "i*rt")];
        let mut first = true;
        for (coef, unit) in parts {
            if coef.is_zero() {
                continue;
            }
            let neg = coef.is_negative();
            let mag = coef.abs();
            let body = match (unit, mag.is_one()) {
                ("", _) => fmt_rational(&mag),
                (u, true) => u.to_string(),
                (u, false) => format!("{}*{}", fmt_rational(&mag), u),
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            write!(f, "{self}")
        } else {
            write!(f, "{self} [rt=sqrt({})]", self.d)
        }
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let d = self.joint_radical(o);
        FieldElement { a: &self.a + &o.a, b: &self.b + &o.b, c: &self.c + &o.c, e: &self.e + &o.e, d }
            .normalized()
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        if o.is_zero() {
            return self.clone();
        }
        let d = self.joint_radical(o);
        FieldElement { a: &self.a - &o.a, b: &self.b - &o.b, c: &self.c - &o.c, e: &self.e - &o.e, d }
            .normalized()
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        if self.is_zero() || o.is_zero() {
            return FieldElement::zero();
        }
        if self.d == 0 && o.d == 0 {
            let (a, b) = if self.b.is_zero() && o.b.is_zero() {
                (&self.a * &o.a, BigRational::zero())
            } else {
                gmul(&self.a, &self.b, &o.a, &o.b)
            };
            return FieldElement { a, b, ..FieldElement::zero() };
        }
        let d = self.joint_radical(o);
        let (uu_r, uu_i) = gmul(&self.a, &self.b, &o.a, &o.b);
        let (vv_r, vv_i) = gmul(&self.c, &self.e, &o.c, &o.e);
        let (uv_r, uv_i) = gmul(&self.a, &self.b, &o.c, &o.e);
        let (vu_r, vu_i) = gmul(&self.c, &self.e, &o.a, &o.b);
        let dd = q(d as i64);
        FieldElement {
            a: uu_r + &dd * vv_r,
            b: uu_i + &dd * vv_i,
            c: uv_r + vu_r,
            e: uv_i + vu_i,
            d,
        }
        .normalized()
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero field element")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { a: -&self.a, b: -&self.b, c: -&self.c, e: -&self.e, d: self.d }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, o: &FieldElement) {
        *self = &*self + o;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, o: &FieldElement) {
        *self = &*self - o;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, o: &FieldElement) {
        *self = &*self * o;
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl From<BigRational> for FieldElement {
    fn from(r: BigRational) -> Self {
        FieldElement::from_rational(r)
    }
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> BigRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// Greatest common divisor, used by slope normalisation.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt2() -> FieldElement {
        FieldElement::sqrt(2).unwrap()
    }

    #[test]
    fn small_sums_and_products() {
        assert_eq!(FieldElement::ratio(1, 2) + FieldElement::ratio(1, 3), FieldElement::ratio(5, 6));
        assert_eq!(rt2() * rt2(), FieldElement::from_int(2));
        let one_plus_i = FieldElement::one() + FieldElement::i();
        let expected = (FieldElement::one() - FieldElement::i()) * FieldElement::ratio(1, 2);
        assert_eq!(one_plus_i.inv().unwrap(), expected);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(FieldElement::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn full_tower_inverse() {
        let x = FieldElement::new(q(3), q(-1), q(2), BigRational::new(1.into(), 3.into()), 2).unwrap();
        assert!((&x * &x.inv().unwrap()).is_one());
        let y = FieldElement::new(q(0), q(0), q(0), q(5), 7).unwrap();
        assert!((&y * &y.inv().unwrap()).is_one());
    }

    #[test]
    fn conjugation_is_a_ring_morphism() {
        let x = FieldElement::new(q(1), q(2), q(3), q(4), 3).unwrap();
        let y = FieldElement::new(q(-2), q(1), q(0), q(1), 3).unwrap();
        assert_eq!((&x * &y).conj(), x.conj() * y.conj());
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn radical_must_be_square_free() {
        assert!(FieldElement::sqrt(4).is_err());
        assert!(FieldElement::sqrt(1).is_err());
        assert!(FieldElement::sqrt(6).is_ok());
    }

    #[test]
    fn real_sign_of_quadratic_numbers() {
        let x = FieldElement::from_int(7) - FieldElement::from_int(5) * rt2();
        assert_eq!(x.real_sign(), Some(Ordering::Less));
        let y = FieldElement::from_int(3) - FieldElement::from_int(2) * rt2();
        assert_eq!(y.real_sign(), Some(Ordering::Greater));
        assert_eq!(FieldElement::i().real_sign(), None);
    }

    #[test]
    fn display_uses_manifest_syntax() {
        let x = FieldElement::new(q(1), BigRational::new((-3).into(), 4.into()), q(1), q(0), 2).unwrap();
        assert_eq!(x.to_string(), "1 - 3/4*i + rt");
        assert_eq!(FieldElement::zero().to_string(), "0");
        assert_eq!((-FieldElement::i()).to_string(), "-i");
    }
}
