//! Finite-dimensional instances: abelian algebras and décalages of small dg Lie
//! algebras given by structure constants.

use super::{Expandable, GradedElements, LInfty};
use crate::exactnum::FieldElement;
use crate::graded::decalage_sign;

/// A homogeneous vector in a finite graded space.
#[derive(Clone, Debug, PartialEq)]
pub struct FVec {
    pub degree: i32,
    pub coords: Vec<FieldElement>,
}

/// Graded vector space with a fixed homogeneous basis.
#[derive(Clone, Debug)]
pub struct FiniteSpace {
    pub degrees: Vec<i32>,
}

impl FiniteSpace {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn basis_vec(&self, a: usize) -> FVec {
        let mut coords = vec![FieldElement::zero(); self.dim()];
        coords[a] = FieldElement::one();
        FVec { degree: self.degrees[a], coords }
    }

    /// Homogeneous vector from coordinates; panics on mixed degrees.
    pub fn vector(&self, coords: Vec<FieldElement>, degree: i32) -> FVec {
        for (a, c) in coords.iter().enumerate() {
            assert!(c.is_zero() || self.degrees[a] == degree, "inhomogeneous vector");
        }
        FVec { degree, coords }
    }
}

impl GradedElements for FiniteSpace {
    type Elem = FVec;

    fn degree(&self, e: &FVec) -> i32 {
        e.degree
    }
    fn zero(&self, degree: i32) -> FVec {
        FVec { degree, coords: vec![FieldElement::zero(); self.dim()] }
    }
    fn add(&self, a: &FVec, b: &FVec) -> FVec {
        let degree = if a.coords.iter().all(|c| c.is_zero()) { b.degree } else { a.degree };
        FVec { degree, coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }
    fn scale(&self, a: &FVec, c: &FieldElement) -> FVec {
        FVec { degree: a.degree, coords: a.coords.iter().map(|x| x * c).collect() }
    }
    fn is_zero(&self, a: &FVec) -> bool {
        a.coords.iter().all(|c| c.is_zero())
    }
}

impl Expandable for FiniteSpace {
    type Key = usize;

    fn key_degree(&self, k: &usize) -> i32 {
        self.degrees[*k]
    }
    fn expand(&self, e: &FVec) -> Vec<(usize, FieldElement)> {
        e.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (a, c.clone())).collect()
    }
    fn basis(&self, k: &usize) -> FVec {
        self.basis_vec(*k)
    }
}

/// An L∞[1]-algebra with brackets of arity ≤ 2 stored as structure constants.
#[derive(Clone, Debug)]
pub struct Tabulated {
    pub space: FiniteSpace,
    /// `unary[a]` = coordinates of `m_1(e_a)`.
    pub unary: Vec<Vec<FieldElement>>,
    /// `binary[a][b]` = coordinates of `m_2(e_a, e_b)`.
    pub binary: Vec<Vec<Vec<FieldElement>>>,
}

impl Tabulated {
    pub fn abelian(degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        let z = vec![FieldElement::zero(); n];
        Tabulated {
            space: FiniteSpace { degrees },
            unary: vec![z.clone(); n],
            binary: vec![vec![z; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

impl GradedElements for Tabulated {
    type Elem = FVec;

    fn degree(&self, e: &FVec) -> i32 {
        e.degree
    }
    fn zero(&self, degree: i32) -> FVec {
        self.space.zero(degree)
    }
    fn add(&self, a: &FVec, b: &FVec) -> FVec {
        self.space.add(a, b)
    }
    fn scale(&self, a: &FVec, c: &FieldElement) -> FVec {
        self.space.scale(a, c)
    }
    fn is_zero(&self, a: &FVec) -> bool {
        self.space.is_zero(a)
    }
}

impl Expandable for Tabulated {
    type Key = usize;

    fn key_degree(&self, k: &usize) -> i32 {
        self.space.degrees[*k]
    }
    fn expand(&self, e: &FVec) -> Vec<(usize, FieldElement)> {
        self.space.expand(e)
    }
    fn basis(&self, k: &usize) -> FVec {
        self.space.basis_vec(*k)
    }
}

impl LInfty for Tabulated {
    fn max_arity(&self) -> usize {
        2
    }

    fn bracket(&self, args: &[&FVec]) -> FVec {
        let n = self.dim();
        let out_deg = args.iter().map(|a| a.degree).sum::<i32>() + 1;
        let mut out = vec![FieldElement::zero(); n];
        match args.len() {
            1 => {
                for (a, x) in args[0].coords.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (c, v) in self.unary[a].iter().enumerate() {
                        out[c] += &(x * v);
                    }
                }
            }
            2 => {
                for (a, x) in args[0].coords.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, y) in args[1].coords.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        for (c, v) in self.binary[a][b].iter().enumerate() {
                            if !v.is_zero() {
                                out[c] += &(&xy * v);
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        FVec { degree: out_deg, coords: out }
    }
}

/// Which degrees enter the exponent of the décalage sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeConvention {
    /// Degrees in the unshifted space `V`.
    Unshifted,
    /// Degrees in the shifted space `V[1]`.
    Shifted,
}

/// A dg Lie algebra (skew brackets) on a finite graded space.
#[derive(Clone, Debug)]
pub struct DgLie {
    /// Degrees in `V`.
    pub degrees: Vec<i32>,
    /// `differential[a]` = coordinates of `d e_a`.
    pub differential: Vec<Vec<FieldElement>>,
    /// `bracket[a][b]` = coordinates of `[e_a, e_b]`.
    pub bracket: Vec<Vec<Vec<FieldElement>>>,
}

impl DgLie {
    /// The symmetric brackets `m_k = ±l_k` on `V[1]`.
    pub fn decalage(&self, conv: DegreeConvention) -> Tabulated {
        let shifted: Vec<i32> = self.degrees.iter().map(|d| d - 1).collect();
        let sign_degs = |a: usize| match conv {
            DegreeConvention::Unshifted => self.degrees[a],
            DegreeConvention::Shifted => shifted[a],
        };
        let n = self.degrees.len();
        let unary = (0..n)
            .map(|a| {
                let s = FieldElement::from_int(decalage_sign(1, &[sign_degs(a)]) as i64);
                self.differential[a].iter().map(|x| x * &s).collect()
            })
            .collect();
        let binary = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let s = FieldElement::from_int(decalage_sign(2, &[sign_degs(a), sign_degs(b)]) as i64);
                        self.bracket[a][b].iter().map(|x| x * &s).collect()
                    })
                    .collect()
            })
            .collect();
        Tabulated { space: FiniteSpace { degrees: shifted }, unary, binary }
    }
}

fn unit(n: usize, c: usize, v: i64) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); n];
    out[c] = FieldElement::from_int(v);
    out
}

/// `so(3)`: `[e_1,e_2] = e_3` and cyclic, concentrated in degree zero.
pub fn so3() -> DgLie {
    let n = 3;
    let z = vec![FieldElement::zero(); n];
    let mut bracket = vec![vec![z.clone(); n]; n];
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        bracket[a][b] = unit(n, c, 1);
        bracket[b][a] = unit(n, c, -1);
    }
    DgLie { degrees: vec![0; n], differential: vec![z; n], bracket }
}

/// Endomorphisms of `V = V⁰ ⊕ V¹ ⊕ V¹` (basis `e_0, e_1, e_2` of degrees
/// 0, 1, 1) with the graded commutator and differential `[δ, −]`,
/// `δ = E_10 + E_20`.
pub fn matrix_dgla() -> DgLie {
    let vdeg = [0i32, 1, 1];
    let idx = |i: usize, j: usize| 3 * i + j;
    let degrees: Vec<i32> = (0..9).map(|k| vdeg[k / 3] - vdeg[k % 3]).collect();
    let sgn = |p: i32| if p.rem_euclid(2) == 0 { 1 } else { -1 };
    // E_ij E_kl = δ_jk E_il
    let product = |a: usize, b: usize| -> Option<usize> {
        let (i, j) = (a / 3, a % 3);
        let (k, l) = (b / 3, b % 3);
        (j == k).then(|| idx(i, l))
    };
    let n = 9;
    let mut bracket = vec![vec![vec![FieldElement::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut v = vec![0i64; n];
            if let Some(c) = product(a, b) {
                v[c] += 1;
            }
            if let Some(c) = product(b, a) {
                v[c] -= sgn(degrees[a] * degrees[b]) as i64;
            }
            bracket[a][b] = v.into_iter().map(FieldElement::from_int).collect();
        }
    }
    let delta = [idx(1, 0), idx(2, 0)];
    let differential = (0..n)
        .map(|a| {
            let mut v = vec![FieldElement::zero(); n];
            for &d in &delta {
                for (c, x) in bracket[d][a].iter().enumerate() {
                    v[c] += x;
                }
            }
            v
        })
        .collect();
    DgLie { degrees, differential, bracket }
}
