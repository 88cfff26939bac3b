//! The L∞[1]-algebra of multivector fields attached to a complement `G`:
//! `l₁ = [Π,·]`, `l₂ = (−1)^{|P|}[P,Q]_γ`, `l₃` from the Courant tensor.

use super::multivector::{schouten, MultiVector, Skew};
use super::setup::Setup;
use crate::exactnum::{FieldElement, FourierScalar, Mode};
use crate::graded::decalage_sign;
use crate::linfty::{Expandable, GradedElements, LInfty};

/// Overall sign in front of the ternary bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TernarySign {
    /// `l₃(P,Q,R) = −(−1)^{|Q|}(P♯∧Q♯∧R♯)Υ`.
    Corrected,
    /// The same expression without the leading minus sign.
    Uncorrected,
}

/// `(P♯∧Q♯∧R♯)Υ = Σ_{a,b,c distinct} Υ_abc (ι_a P)∧(ι_b Q)∧(ι_c R)`.
pub fn triple_flat_pairing(s: &Setup, p: &MultiVector, q: &MultiVector, r: &MultiVector) -> MultiVector {
    let n = s.dim;
    let deg = (p.degree() + q.degree() + r.degree()).saturating_sub(3);
    let mut out = Skew::zero(s.ring, n, deg);
    if p.degree() == 0 || q.degree() == 0 || r.degree() == 0 || s.upsilon.is_zero() {
        return out;
    }
    let ip: Vec<Skew> = (0..n).map(|a| p.contract_axis(a)).collect();
    let iq: Vec<Skew> = (0..n).map(|a| q.contract_axis(a)).collect();
    let ir: Vec<Skew> = (0..n).map(|a| r.contract_axis(a)).collect();
    for a in 0..n {
        if ip[a].is_zero() {
            continue;
        }
        for b in 0..n {
            if b == a || iq[b].is_zero() {
                continue;
            }
            let ab = ip[a].wedge(&iq[b]);
            if ab.is_zero() {
                continue;
            }
            for c in 0..n {
                if c == a || c == b || ir[c].is_zero() {
                    continue;
                }
                let u = s.upsilon.component(&[a, b, c]);
                if u.is_zero() {
                    continue;
                }
                out = out.plus(&ab.wedge(&ir[c]).mul_fn(&u));
            }
        }
    }
    out
}

/// `(−1)^k Σ_{a≠b} ξ_ab (ι_a Q₁)∧(ι_b Q₂)` for a two-form `ξ` and `k = |Q₁|`.
pub fn pair_flat_pairing(xi: &Skew, q1: &MultiVector, q2: &MultiVector) -> MultiVector {
    let n = q1.dim();
    let deg = (q1.degree() + q2.degree()).saturating_sub(2);
    let mut out = Skew::zero(q1.ring(), n, deg);
    if q1.degree() == 0 || q2.degree() == 0 {
        return out;
    }
    for a in 0..n {
        let ia = q1.contract_axis(a);
        if ia.is_zero() {
            continue;
        }
        for b in 0..n {
            if a == b {
                continue;
            }
            let x = xi.component(&[a, b]);
            if x.is_zero() {
                continue;
            }
            let ib = q2.contract_axis(b);
            if ib.is_zero() {
                continue;
            }
            out = out.plus(&ia.wedge(&ib).mul_fn(&x));
        }
    }
    if q1.degree() % 2 == 1 {
        out.neg()
    } else {
        out
    }
}

/// Multivector fields `𝔛^•(M)[2]` with the brackets `l^G_k`.
pub struct FoliationAlgebra<'a> {
    pub setup: &'a Setup,
    pub ternary: TernarySign,
}

impl<'a> FoliationAlgebra<'a> {
    pub fn new(setup: &'a Setup) -> Self {
        FoliationAlgebra { setup, ternary: TernarySign::Corrected }
    }

    pub fn with_ternary(setup: &'a Setup, ternary: TernarySign) -> Self {
        FoliationAlgebra { setup, ternary }
    }

    pub fn l1(&self, p: &MultiVector) -> MultiVector {
        schouten(&self.setup.pi, p).expect("same manifold")
    }

    pub fn l2(&self, p: &MultiVector, q: &MultiVector) -> MultiVector {
        let b = self.setup.gamma_bracket(p, q);
        if p.degree() % 2 == 1 {
            b.neg()
        } else {
            b
        }
    }

    pub fn l3(&self, p: &MultiVector, q: &MultiVector, r: &MultiVector) -> MultiVector {
        let t = triple_flat_pairing(self.setup, p, q, r);
        let minus = (q.degree() % 2 == 0) == (self.ternary == TernarySign::Corrected);
        if minus {
            t.neg()
        } else {
            t
        }
    }

    /// Multivector of shifted degree `d`.
    pub fn element_degree(p: &MultiVector) -> i32 {
        p.degree() as i32 - 2
    }
}

impl GradedElements for FoliationAlgebra<'_> {
    type Elem = MultiVector;

    fn degree(&self, e: &MultiVector) -> i32 {
        Self::element_degree(e)
    }
    fn zero(&self, degree: i32) -> MultiVector {
        Skew::zero(self.setup.ring, self.setup.dim, (degree + 2).max(0) as usize)
    }
    fn add(&self, a: &MultiVector, b: &MultiVector) -> MultiVector {
        a.plus(b)
    }
    fn scale(&self, a: &MultiVector, c: &FieldElement) -> MultiVector {
        a.scale(c)
    }
    fn is_zero(&self, a: &MultiVector) -> bool {
        a.is_zero()
    }
}

impl LInfty for FoliationAlgebra<'_> {
    fn max_arity(&self) -> usize {
        3
    }

    fn bracket(&self, args: &[&MultiVector]) -> MultiVector {
        match args {
            [p] => self.l1(p),
            [p, q] => self.l2(p, q),
            [p, q, r] => self.l3(p, q, r),
            _ => {
                let deg: i32 = args.iter().map(|a| self.degree(a)).sum::<i32>() + 1;
                self.zero(deg)
            }
        }
    }
}

impl Expandable for FoliationAlgebra<'_> {
    type Key = (Vec<usize>, Mode);

    fn key_degree(&self, k: &Self::Key) -> i32 {
        k.0.len() as i32 - 2
    }

    fn expand(&self, e: &MultiVector) -> Vec<(Self::Key, FieldElement)> {
        let mut out = Vec::new();
        for (idx, f) in e.terms() {
            for (m, c) in f.terms() {
                out.push(((idx.clone(), m.clone()), c.clone()));
            }
        }
        out
    }

    fn basis(&self, k: &Self::Key) -> MultiVector {
        let f = FourierScalar::monomial(self.setup.ring, k.1.clone(), FieldElement::one());
        Skew::monomial(self.setup.dim, &k.0, f)
    }
}

/// The Koszul dgL[1]a of a Poisson bivector: `m₁ = [Π,·]_SN` and `m₂`
/// obtained from the Schouten bracket on `𝔛^•(M)[1]` by décalage.
pub struct KoszulAlgebra {
    pub pi: MultiVector,
}

impl KoszulAlgebra {
    pub fn new(pi: MultiVector) -> Self {
        KoszulAlgebra { pi }
    }
}

impl GradedElements for KoszulAlgebra {
    type Elem = MultiVector;

    fn degree(&self, e: &MultiVector) -> i32 {
        e.degree() as i32 - 2
    }
    fn zero(&self, degree: i32) -> MultiVector {
        Skew::zero(self.pi.ring(), self.pi.dim(), (degree + 2).max(0) as usize)
    }
    fn add(&self, a: &MultiVector, b: &MultiVector) -> MultiVector {
        a.plus(b)
    }
    fn scale(&self, a: &MultiVector, c: &FieldElement) -> MultiVector {
        a.scale(c)
    }
    fn is_zero(&self, a: &MultiVector) -> bool {
        a.is_zero()
    }
}

impl LInfty for KoszulAlgebra {
    fn max_arity(&self) -> usize {
        2
    }

    fn bracket(&self, args: &[&MultiVector]) -> MultiVector {
        match args {
            [p] => {
                let s = decalage_sign(1, &[p.degree() as i32 - 1]);
                let b = schouten(&self.pi, p).expect("same manifold");
                if s < 0 {
                    b.neg()
                } else {
                    b
                }
            }
            [p, q] => {
                let s = decalage_sign(2, &[p.degree() as i32 - 1, q.degree() as i32 - 1]);
                let b = schouten(p, q).expect("same manifold");
                if s < 0 {
                    b.neg()
                } else {
                    b
                }
            }
            _ => {
                let deg: i32 = args.iter().map(|a| self.degree(a)).sum::<i32>() + 1;
                self.zero(deg)
            }
        }
    }
}
