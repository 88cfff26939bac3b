//! Functions on `T*[2]A[1]` for a trivial bundle `A = base × ℝʳ`: the
//! canonical degree −2 bracket, the bi-grading, derived brackets from
//! V-data and the coderivation `M` induced by a bivector `η ∈ Γ(∧²A)`.
//!
//! Coordinates: base angles `x_i` (degree 0, carried by the coefficient
//! functions), `ξ_a` (1), momenta `p_i` (2) and `θ_a` (1). Bi-degrees are
//! `p: (1,1)`, `θ: (1,0)`, `ξ: (0,1)`. Monomials are stored in the order
//! `p…, θ…, ξ…`, each by index.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, FourierScalar, Ring, RingElement};
use crate::foliation::setup::mm;
use crate::foliation::{pair_flat_pairing, MultiVector, Skew};

/// Base ring (angles of the base torus) and bundle rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperChart {
    pub ring: Ring,
    pub rank: usize,
}

impl SuperChart {
    pub fn new(base_dim: usize, rank: usize) -> Self {
        assert!(rank <= 32, "rank above 32 is not supported");
        SuperChart { ring: Ring::torus(base_dim), rank }
    }

    pub fn base_dim(&self) -> usize {
        self.ring.periodic
    }
}

/// `p^e θ_S ξ_T` with `S, T` as bit masks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuperMonomial {
    pub p: Vec<u32>,
    pub theta: u32,
    pub xi: u32,
}

impl SuperMonomial {
    fn one(chart: &SuperChart) -> Self {
        SuperMonomial { p: vec![0; chart.base_dim()], theta: 0, xi: 0 }
    }

    pub fn bidegree(&self) -> (u32, u32) {
        let p: u32 = self.p.iter().sum();
        (p + self.theta.count_ones(), p + self.xi.count_ones())
    }

    pub fn degree(&self) -> u32 {
        let (a, b) = self.bidegree();
        a + b
    }

}

/// Sign and union of `S·U` for sorted odd sets; `None` if they overlap.
fn merge(s: u32, u: u32) -> Option<(u32, bool)> {
    if s & u != 0 {
        return None;
    }
    let mut inversions = 0;
    for b in 0..32 {
        if u & (1 << b) != 0 {
            inversions += (s >> (b + 1)).count_ones();
        }
    }
    Some((s | u, inversions % 2 == 1))
}

fn mono_mul(a: &SuperMonomial, b: &SuperMonomial) -> Option<(SuperMonomial, bool)> {
    let (theta, s1) = merge(a.theta, b.theta)?;
    let (xi, s2) = merge(a.xi, b.xi)?;
    let s0 = (a.xi.count_ones() * b.theta.count_ones()) % 2 == 1;
    let p = a.p.iter().zip(&b.p).map(|(x, y)| x + y).collect();
    Some((SuperMonomial { p, theta, xi }, s0 ^ s1 ^ s2))
}

/// A polynomial in the fiber generators with Fourier coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperPoly {
    chart: SuperChart,
    terms: BTreeMap<SuperMonomial, FourierScalar>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Odd {
    Theta,
    Xi,
}

impl SuperPoly {
    pub fn zero(chart: SuperChart) -> Self {
        SuperPoly { chart, terms: BTreeMap::new() }
    }

    pub fn function(chart: SuperChart, f: FourierScalar) -> Self {
        let mut out = Self::zero(chart);
        out.add_term(SuperMonomial::one(&chart), &f);
        out
    }

    pub fn constant(chart: SuperChart, c: FieldElement) -> Self {
        Self::function(chart, FourierScalar::constant(chart.ring, c))
    }

    pub fn one(chart: SuperChart) -> Self {
        Self::constant(chart, FieldElement::one())
    }

    pub fn p(chart: SuperChart, i: usize) -> Self {
        let mut m = SuperMonomial::one(&chart);
        m.p[i] = 1;
        Self::single(chart, m)
    }

    pub fn theta(chart: SuperChart, a: usize) -> Self {
        let mut m = SuperMonomial::one(&chart);
        m.theta = 1 << a;
        Self::single(chart, m)
    }

    pub fn xi(chart: SuperChart, a: usize) -> Self {
        let mut m = SuperMonomial::one(&chart);
        m.xi = 1 << a;
        Self::single(chart, m)
    }

    fn single(chart: SuperChart, m: SuperMonomial) -> Self {
        let mut out = Self::zero(chart);
        out.add_term(m, &FourierScalar::one(chart.ring));
        out
    }

    pub fn chart(&self) -> SuperChart {
        self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &FourierScalar)> {
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

    pub fn add_term(&mut self, m: SuperMonomial, f: &FourierScalar) {
        if f.is_zero() {
            return;
        }
        let cur = self.terms.remove(&m).unwrap_or_else(|| FourierScalar::zero(self.chart.ring));
        let sum = &cur + f;
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    fn check_chart(&self, o: &Self) -> Result<()> {
        if self.chart != o.chart {
            return Err(Error::ChartMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_chart(o)?;
        let mut out = self.clone();
        for (m, f) in &o.terms {
            out.add_term(m.clone(), f);
        }
        Ok(out)
    }

    pub fn plus(&self, o: &Self) -> Self {
        self.try_add(o).expect("same chart")
    }

    pub fn neg(&self) -> Self {
        self.scale(&FieldElement::from_int(-1))
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(self.chart);
        for (m, f) in &self.terms {
            out.add_term(m.clone(), &f.scale(c));
        }
        out
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_chart(o)?;
        let mut out = Self::zero(self.chart);
        for (m1, f1) in &self.terms {
            for (m2, f2) in &o.terms {
                if let Some((m, flip)) = mono_mul(m1, m2) {
                    let c = f1 * f2;
                    out.add_term(m, &if flip { -&c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("same chart")
    }

    /// Total degree if homogeneous; `None` for zero or mixed polynomials.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn bidegrees(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self.terms.keys().map(|m| m.bidegree()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The part of a given bi-degree.
    pub fn bidegree_part(&self, bd: (u32, u32)) -> Self {
        let mut out = Self::zero(self.chart);
        for (m, f) in &self.terms {
            if m.bidegree() == bd {
                out.add_term(m.clone(), f);
            }
        }
        out
    }

    /// Derivative in the odd generator `g_a`, from the left or from the right.
    fn odd_derivative(&self, kind: Odd, a: usize, from_left: bool) -> Self {
        let bit = 1u32 << a;
        let mut out = Self::zero(self.chart);
        for (m, f) in &self.terms {
            let (set, before, after) = match kind {
                Odd::Theta => {
                    (m.theta, (m.theta & (bit - 1)).count_ones(), (m.theta >> (a + 1)).count_ones() + m.xi.count_ones())
                }
                Odd::Xi => (
                    m.xi,
                    m.theta.count_ones() + (m.xi & (bit - 1)).count_ones(),
                    (m.xi >> (a + 1)).count_ones(),
                ),
            };
            if set & bit == 0 {
                continue;
            }
            let mut m2 = m.clone();
            match kind {
                Odd::Theta => m2.theta &= !bit,
                Odd::Xi => m2.xi &= !bit,
            }
            let passes = if from_left { before } else { after };
            out.add_term(m2, &if passes % 2 == 1 { -f } else { f.clone() });
        }
        out
    }

    fn p_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.chart);
        for (m, f) in &self.terms {
            if m.p[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.p[i] -= 1;
            out.add_term(m2, &f.scale(&FieldElement::from_int(m.p[i] as i64)));
        }
        out
    }

    fn x_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.chart);
        for (m, f) in &self.terms {
            out.add_term(m.clone(), &f.partial(i).expect("base axis"));
        }
        out
    }

    /// Restriction to the zero section: drops monomials with `p` or `θ`.
    pub fn restrict_p(&self) -> Self {
        let mut out = Self::zero(self.chart);
        for (m, f) in &self.terms {
            if m.theta == 0 && m.p.iter().all(|&e| e == 0) {
                out.add_term(m.clone(), f);
            }
        }
        out
    }

    /// `ω` as a ξ-polynomial: the index `(a₁<…<a_k)` becomes `ξ_{a₁}⋯ξ_{a_k}`.
    pub fn from_form(chart: SuperChart, w: &Skew) -> Self {
        Self::from_skew(chart, w, Odd::Xi)
    }

    /// A section of `∧•A` as a θ-polynomial.
    pub fn from_multivector(chart: SuperChart, w: &MultiVector) -> Self {
        Self::from_skew(chart, w, Odd::Theta)
    }

    fn check_skew_rank(&self) -> Result<()> {
        if self.chart.rank > self.chart.ring.vars() {
            return Err(Error::DimensionMismatch(format!(
                "rank {} exceeds the {} ring variables",
                self.chart.rank,
                self.chart.ring.vars()
            )));
        }
        Ok(())
    }

    fn from_skew(chart: SuperChart, w: &Skew, kind: Odd) -> Self {
        assert_eq!(w.dim(), chart.rank);
        let mut out = Self::zero(chart);
        for (idx, f) in w.terms() {
            let mut m = SuperMonomial::one(&chart);
            let mask = idx.iter().fold(0u32, |acc, &a| acc | (1 << a));
            match kind {
                Odd::Theta => m.theta = mask,
                Odd::Xi => m.xi = mask,
            }
            out.add_term(m, &f.embed(chart.ring));
        }
        out
    }

    /// Reads back a ξ-polynomial of pure degree as a form of that degree.
    pub fn to_form(&self, degree: usize) -> Result<Skew> {
        self.to_skew(degree, Odd::Xi)
    }

    pub fn to_multivector(&self, degree: usize) -> Result<MultiVector> {
        self.to_skew(degree, Odd::Theta)
    }

    fn to_skew(&self, degree: usize, kind: Odd) -> Result<Skew> {
        self.check_skew_rank()?;
        let mut out = Skew::zero(self.chart.ring, self.chart.rank, degree);
        for (m, f) in &self.terms {
            let (mask, other) = match kind {
                Odd::Theta => (m.theta, m.xi),
                Odd::Xi => (m.xi, m.theta),
            };
            let bd = m.bidegree();
            if other != 0 || m.p.iter().any(|&e| e != 0) || mask.count_ones() as usize != degree {
                let expected = if kind == Odd::Xi { (0, degree as u32) } else { (degree as u32, 0) };
                return Err(Error::BadBiDegree { expected, found: bd });
            }
            let idx: Vec<usize> = (0..32).filter(|b| mask & (1 << b) != 0).collect();
            out.add_term(&idx, f);
        }
        Ok(out)
    }
}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.p.iter().enumerate() {
                for _ in 0..e {
                    write!(f, " p{}", i + 1)?;
                }
            }
            for a in 0..32 {
                if m.theta & (1 << a) != 0 {
                    write!(f, " th{}", a + 1)?;
                }
            }
            for a in 0..32 {
                if m.xi & (1 << a) != 0 {
                    write!(f, " xi{}", a + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// The canonical bracket of degree −2:
/// `{f,g} = Σ_i (∂_{p_i}f ∂_{x_i}g − ∂_{x_i}f ∂_{p_i}g)
///        + Σ_a (f∂⃖_{θ_a} ∂⃗_{ξ_a}g + f∂⃖_{ξ_a} ∂⃗_{θ_a}g)`.
pub fn super_bracket(f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
    f.check_chart(g)?;
    let chart = f.chart;
    let mut out = SuperPoly::zero(chart);
    for i in 0..chart.base_dim() {
        let a = f.p_derivative(i);
        if !a.is_zero() {
            out = out.plus(&a.mul(&g.x_derivative(i)));
        }
        let b = g.p_derivative(i);
        if !b.is_zero() {
            out = out.minus(&f.x_derivative(i).mul(&b));
        }
    }
    for a in 0..chart.rank {
        let ft = f.odd_derivative(Odd::Theta, a, false);
        if !ft.is_zero() {
            out = out.plus(&ft.mul(&g.odd_derivative(Odd::Xi, a, true)));
        }
        let fx = f.odd_derivative(Odd::Xi, a, false);
        if !fx.is_zero() {
            out = out.plus(&fx.mul(&g.odd_derivative(Odd::Theta, a, true)));
        }
    }
    Ok(out)
}

/// `(L, Ω•(A), P, Θ)` with `L` the functions on `T*[2]A[1]`.
#[derive(Clone, Debug)]
pub struct VData {
    pub theta: SuperPoly,
}

impl VData {
    /// Requires `Θ` of degree 3 with `P(Θ) = 0`; with `certify`, also `{Θ,Θ} = 0`.
    pub fn new(theta: SuperPoly, certify: bool) -> Result<Self> {
        if !theta.is_zero() && theta.degree() != Some(3) {
            return Err(Error::DegreeError("Θ must be homogeneous of degree 3".into()));
        }
        if !theta.restrict_p().is_zero() {
            return Err(Error::DegreeError("Θ must lie in the kernel of P".into()));
        }
        if certify && !super_bracket(&theta, &theta)?.is_zero() {
            return Err(Error::ThetaNotMC);
        }
        Ok(VData { theta })
    }

    /// `P{{…{Θ,α₁}…},α_k}`.
    pub fn derived_bracket(&self, inputs: &[SuperPoly]) -> Result<SuperPoly> {
        let mut acc = self.theta.clone();
        for a in inputs {
            acc = super_bracket(&acc, a)?;
        }
        Ok(acc.restrict_p())
    }
}

fn check_form(w: &SuperPoly) -> Result<()> {
    for bd in w.bidegrees() {
        if bd.0 != 0 {
            return Err(Error::BadBiDegree { expected: (0, bd.1), found: bd });
        }
    }
    Ok(())
}

/// `M_k(ω₁⊙…⊙ω_k) = P{{…{{η,ω₁},ω₂}…},ω_k}` for `η ∈ Γ(∧²A)`.
pub fn taylor_m(eta: &SuperPoly, word: &[SuperPoly]) -> Result<SuperPoly> {
    for bd in eta.bidegrees() {
        if bd != (2, 0) {
            return Err(Error::BadBiDegree { expected: (2, 0), found: bd });
        }
    }
    for w in word {
        check_form(w)?;
    }
    let mut acc = eta.clone();
    for w in word {
        acc = super_bracket(&acc, w)?;
    }
    Ok(acc.restrict_p())
}

/// `(−1)^{|ω₁|}(ω₁♭∧ω₂♭)η` with `|ω₁|` the form degree.
pub fn m2_closed_form(eta: &MultiVector, w1: &Skew, w2: &Skew) -> Skew {
    pair_flat_pairing(eta, w1, w2)
}

/// `M₂` on a pair of two-forms in matrix form:
/// `(M₂)♭ = −ω₁♭η♯ω₂♭ − ω₂♭η♯ω₁♭`.
pub fn m2_two_forms(eta: &MultiVector, w1: &Skew, w2: &Skew) -> Result<Skew> {
    for w in [w1, w2] {
        if w.degree() != 2 {
            return Err(Error::BadBiDegree { expected: (0, 2), found: (0, w.degree() as u32) });
        }
    }
    let (e, a, b) = (eta.sharp(), w1.sharp(), w2.sharp());
    let m = mm(&mm(&a, &e), &b).plus(&mm(&mm(&b, &e), &a)).negate();
    Skew::from_sharp(&m, eta.dim())
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::foliation::random::{random_function, random_multivector, Shape};

    fn point(rank: usize) -> SuperChart {
        SuperChart::new(0, rank)
    }

    fn random_poly(rng: &mut ChaCha8Rng, chart: SuperChart, degree: u32) -> SuperPoly {
        let mut out = SuperPoly::zero(chart);
        let shape = Shape { terms: 1, max_freq: 1, max_coeff: 3 };
        for _ in 0..3 {
            let mut m = SuperMonomial::one(&chart);
            let mut left = degree;
            while left >= 2 && chart.base_dim() > 0 && rng.gen_bool(0.4) {
                m.p[rng.gen_range(0..chart.base_dim())] += 1;
                left -= 2;
            }
            let mut tries = 0;
            while left > 0 && tries < 20 {
                tries += 1;
                let a = rng.gen_range(0..chart.rank);
                if rng.gen_bool(0.5) {
                    if m.theta & (1 << a) == 0 {
                        m.theta |= 1 << a;
                        left -= 1;
                    }
                } else if m.xi & (1 << a) == 0 {
                    m.xi |= 1 << a;
                    left -= 1;
                }
            }
            if left == 0 {
                out.add_term(m, &random_function(rng, chart.ring, shape));
            }
        }
        out
    }

    #[test]
    fn generator_brackets() {
        let c = SuperChart::new(2, 2);
        let x1 = SuperPoly::function(c, FourierScalar::sin(c.ring, &[1, 0]));
        let b = super_bracket(&SuperPoly::p(c, 0), &x1).unwrap();
        assert_eq!(b, SuperPoly::function(c, FourierScalar::cos(c.ring, &[1, 0])));
        assert_eq!(super_bracket(&SuperPoly::theta(c, 1), &SuperPoly::xi(c, 1)).unwrap(), SuperPoly::one(c));
        assert_eq!(super_bracket(&SuperPoly::xi(c, 1), &SuperPoly::theta(c, 1)).unwrap(), SuperPoly::one(c));
        assert!(super_bracket(&SuperPoly::theta(c, 0), &SuperPoly::xi(c, 1)).unwrap().is_zero());
        assert!(super_bracket(&SuperPoly::xi(c, 0), &SuperPoly::xi(c, 1)).unwrap().is_zero());
        let other = SuperChart::new(1, 2);
        assert!(matches!(super_bracket(&SuperPoly::p(c, 0), &SuperPoly::p(other, 0)), Err(Error::ChartMismatch)));
    }

    #[test]
    fn odd_generators_anticommute() {
        let c = point(3);
        let a = SuperPoly::xi(c, 0).mul(&SuperPoly::theta(c, 2));
        let b = SuperPoly::theta(c, 2).mul(&SuperPoly::xi(c, 0));
        assert_eq!(a, b.neg());
        assert!(SuperPoly::xi(c, 1).mul(&SuperPoly::xi(c, 1)).is_zero());
        assert_eq!(a.bidegrees(), vec![(1, 1)]);
    }

    #[test]
    fn contraction_of_vector_with_form() {
        let c = point(2);
        let x = SuperPoly::theta(c, 0);
        assert_eq!(super_bracket(&x, &SuperPoly::xi(c, 0)).unwrap(), SuperPoly::one(c));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c3 = SuperChart::new(3, 3);
        for _ in 0..10 {
            let v = random_multivector(&mut rng, c3.ring, 3, 1, Shape::default());
            let w = random_multivector(&mut rng, c3.ring, 3, 2, Shape::default());
            let lhs = super_bracket(&SuperPoly::from_multivector(c3, &v), &SuperPoly::from_form(c3, &w)).unwrap();
            let coeffs: Vec<FourierScalar> = (0..3).map(|a| v.component(&[a])).collect();
            assert_eq!(lhs.to_form(1).unwrap(), w.contract(&coeffs));
        }
    }

    #[test]
    fn graded_jacobi_and_antisymmetry() {
        let c = SuperChart::new(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for t in 0..50 {
            let degs = [1 + t % 4, 1 + (t / 4) % 4, 1 + (t / 16) % 4];
            let f = random_poly(&mut rng, c, degs[0] as u32);
            let g = random_poly(&mut rng, c, degs[1] as u32);
            let h = random_poly(&mut rng, c, degs[2] as u32);
            let (df, dg) = (degs[0] as i64 - 2, degs[1] as i64 - 2);
            let sign = FieldElement::from_int(if (df * dg).rem_euclid(2) == 0 { 1 } else { -1 });
            let lhs = super_bracket(&f, &super_bracket(&g, &h).unwrap()).unwrap();
            let r1 = super_bracket(&super_bracket(&f, &g).unwrap(), &h).unwrap();
            let r2 = super_bracket(&g, &super_bracket(&f, &h).unwrap()).unwrap().scale(&sign);
            assert_eq!(lhs, r1.plus(&r2), "degrees {degs:?}");
            let fg = super_bracket(&f, &g).unwrap();
            let gf = super_bracket(&g, &f).unwrap();
            assert_eq!(fg, gf.scale(&sign).neg());
            for m in fg.terms().map(|x| x.0) {
                assert_eq!(m.degree() as usize, degs[0] + degs[1] - 2);
            }
        }
    }

    #[test]
    fn bracket_lowers_bidegree_by_one_one() {
        let c = SuperChart::new(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mono = |p: u32, th: u32, xi: u32| {
            let mut m = SuperMonomial::one(&c);
            m.p[0] = p;
            m.theta = th;
            m.xi = xi;
            m
        };
        for _ in 0..30 {
            let m1 = mono(rng.gen_range(0..2), rng.gen_range(0..4), rng.gen_range(0..4));
            let m2 = mono(rng.gen_range(0..2), rng.gen_range(0..4), rng.gen_range(0..4));
            let mut f = SuperPoly::zero(c);
            f.add_term(m1.clone(), &random_function(&mut rng, c.ring, Shape::default()));
            let mut g = SuperPoly::zero(c);
            g.add_term(m2.clone(), &FourierScalar::sin(c.ring, &[1]));
            let (a, b) = (m1.bidegree(), m2.bidegree());
            for bd in super_bracket(&f, &g).unwrap().bidegrees() {
                assert_eq!((bd.0 + 1, bd.1 + 1), (a.0 + b.0, a.1 + b.1));
            }
            for bd in f.mul(&g).bidegrees() {
                assert_eq!(bd, (a.0 + b.0, a.1 + b.1));
            }
        }
    }

    #[test]
    fn restriction_to_zero_section() {
        let c = SuperChart::new(2, 2);
        let xi12 = SuperPoly::xi(c, 0).mul(&SuperPoly::xi(c, 1));
        assert_eq!(xi12.restrict_p(), xi12);
        let x2 = SuperPoly::function(c, FourierScalar::cos(c.ring, &[0, 1]));
        let f = SuperPoly::p(c, 0).mul(&x2).plus(&SuperPoly::xi(c, 0));
        assert_eq!(f.restrict_p(), SuperPoly::xi(c, 0));
        assert_eq!(f.restrict_p().restrict_p(), f.restrict_p());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let eta = SuperPoly::from_multivector(c, &random_multivector(&mut rng, c.ring, 2, 2, Shape::default()));
        for t in 0..30 {
            let g = random_poly(&mut rng, c, 1 + t % 4);
            assert!(super_bracket(&eta, &g).unwrap().restrict_p().is_zero());
        }
    }

    #[test]
    fn derived_brackets_of_a_lie_algebra() {
        // [e¹, e²] = e² on A* = span{e¹, e²}, over a point.
        let c = point(2);
        let half = FieldElement::ratio(1, 2);
        let x = |a| SuperPoly::xi(c, a);
        let th = |a| SuperPoly::theta(c, a);
        // Θ = ½ c^k_{ab} ξ_k θ_a θ_b with c²_{12} = 1 = −c²_{21}.
        let theta = x(1).mul(&th(0)).mul(&th(1)).scale(&half).minus(&x(1).mul(&th(1)).mul(&th(0)).scale(&half));
        let vd = VData::new(theta, true).unwrap();
        assert!(vd.derived_bracket(&[x(0)]).unwrap().is_zero());
        let m2 = vd.derived_bracket(&[x(0), x(1)]).unwrap();
        let m2_rev = vd.derived_bracket(&[x(1), x(0)]).unwrap();
        assert_eq!(m2, m2_rev.neg());
        assert!(m2 == x(1) || m2 == x(1).neg());
        assert!(vd.derived_bracket(&[x(0), x(1), x(0)]).unwrap().is_zero());
        assert!(vd.derived_bracket(&[x(0), x(1), x(0), x(1)]).unwrap().is_zero());
        let zero = VData::new(SuperPoly::zero(c), true).unwrap();
        assert!(zero.derived_bracket(&[x(0), x(1)]).unwrap().is_zero());
    }

    #[test]
    fn non_mc_theta_is_rejected_when_certifying() {
        // Θ = θ₁θ₂ξ₃ + θ₃ξ₁ξ₂: {Θ,Θ} ≠ 0.
        let c = point(3);
        let th = |a| SuperPoly::theta(c, a);
        let x = |a| SuperPoly::xi(c, a);
        let t = th(0).mul(&th(1)).mul(&x(2)).plus(&th(2).mul(&x(0)).mul(&x(1)));
        assert!(!super_bracket(&t, &t).unwrap().is_zero());
        assert!(matches!(VData::new(t.clone(), true), Err(Error::ThetaNotMC)));
        assert!(VData::new(t, false).is_ok());
        assert!(VData::new(SuperPoly::xi(c, 0), false).is_err());
    }

    #[test]
    fn m2_on_dual_basis() {
        let c = point(2);
        let eta = SuperPoly::theta(c, 0).mul(&SuperPoly::theta(c, 1));
        let m2 = taylor_m(&eta, &[SuperPoly::xi(c, 0), SuperPoly::xi(c, 1)]).unwrap();
        assert_eq!(m2, SuperPoly::constant(c, FieldElement::from_int(-1)));
        assert!(taylor_m(&eta, &[SuperPoly::xi(c, 0)]).unwrap().is_zero());
        let bad = SuperPoly::theta(c, 0).mul(&SuperPoly::xi(c, 1));
        assert!(matches!(taylor_m(&bad, &[]), Err(Error::BadBiDegree { .. })));
    }

    #[test]
    fn m2_closed_form_matches_iterated_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let shape = Shape { terms: 2, max_freq: 1, max_coeff: 3 };
        for t in 0..100 {
            let r = 2 + t % 3;
            let c = SuperChart::new(r, r);
            let (d1, d2) = (1 + rng.gen_range(0..r.min(3)), 1 + rng.gen_range(0..r.min(3)));
            let eta = random_multivector(&mut rng, c.ring, r, 2, shape);
            let w1 = random_multivector(&mut rng, c.ring, r, d1, shape);
            let w2 = random_multivector(&mut rng, c.ring, r, d2, shape);
            let (e, f1, f2) =
                (SuperPoly::from_multivector(c, &eta), SuperPoly::from_form(c, &w1), SuperPoly::from_form(c, &w2));
            let iterated = taylor_m(&e, &[f1.clone(), f2.clone()]).unwrap();
            assert_eq!(iterated.to_form(d1 + d2 - 2).unwrap(), m2_closed_form(&eta, &w1, &w2), "case {t}");
            assert!(taylor_m(&e, &[f1.clone()]).unwrap().is_zero());
            assert!(taylor_m(&e, &[f1.clone(), f2.clone(), f1]).unwrap().is_zero());
        }
    }

    #[test]
    fn m2_on_two_forms_in_matrix_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for t in 0..20 {
            let r = 2 + t % 3;
            let c = SuperChart::new(r, r);
            let eta = random_multivector(&mut rng, c.ring, r, 2, Shape::default());
            let w1 = random_multivector(&mut rng, c.ring, r, 2, Shape::default());
            let w2 = random_multivector(&mut rng, c.ring, r, 2, Shape::default());
            let closed = m2_closed_form(&eta, &w1, &w2);
            assert_eq!(m2_two_forms(&eta, &w1, &w2).unwrap(), closed, "case {t}");
        }
        let c = SuperChart::new(2, 2);
        let v = random_multivector(&mut rng, c.ring, 2, 1, Shape::default());
        assert!(m2_two_forms(&v.wedge(&v), &v, &v).is_err());
    }

    #[test]
    fn taylor_m_rejects_non_forms() {
        let c = SuperChart::new(2, 2);
        let eta = SuperPoly::theta(c, 0).mul(&SuperPoly::theta(c, 1));
        let r = taylor_m(&eta, &[SuperPoly::theta(c, 0)]);
        assert!(matches!(r, Err(Error::BadBiDegree { expected: (0, 0), found: (1, 0) })));
        let v = SuperPoly::theta(c, 0);
        assert!(matches!(v.to_form(1), Err(Error::BadBiDegree { .. })));
        assert!(SuperPoly::xi(SuperChart::new(0, 2), 0).to_form(1).is_err());
    }
}
