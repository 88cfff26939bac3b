//! Changing the complement `G₀ → G₁`: the map `ε: G₀ → TF`, the two-form
//! `ξ`, the coderivation `N` and the isomorphism between the two algebras.

use super::brackets::{pair_flat_pairing, FoliationAlgebra};
use super::multivector::{Form, MultiVector, Skew};
use super::setup::{mm, Setup, VectorField};
use crate::error::Result;
use crate::exactnum::{FieldElement, FourierScalar, Mat, TorusPoint};
use crate::linfty::{
    coalgebra::{collapse, sym_word}, exp_coderivation, intertwine_residual, Expandable, SymVec, TaylorTable,
};

/// Two complements of the same foliation.
#[derive(Clone, Debug)]
pub struct SplittingPair {
    pub s0: Setup,
    pub s1: Setup,
    /// `ε` as an endomorphism of `TM`, zero on `TF`, with image in `TF`.
    pub eps: Mat<FourierScalar>,
    pub xi: Form,
}

impl SplittingPair {
    pub fn new(s0: &Setup, g1: Vec<VectorField>) -> Result<Self> {
        let s1 = s0.with_complement(g1)?;
        let neg_tf1 = s1.pr_tf.map(|x| -x);
        let eps = mm(&neg_tf1, &s0.pr_g);
        let n = s0.dim;
        let cols: Vec<VectorField> = (0..n).map(|i| eps.column(i)).collect();
        let mut xi = Skew::zero(s0.ring, n, 2);
        for i in 0..n {
            for j in i + 1..n {
                let e_i = unit(s0, i);
                let e_j = unit(s0, j);
                let v = &(&(-&s0.gamma_pair(&e_i, &cols[j])) + &s0.gamma_pair(&e_j, &cols[i]))
                    + &s0.gamma_pair(&cols[i], &cols[j]);
                xi.add_term(&[i, j], &v);
            }
        }
        Ok(SplittingPair { s0: s0.clone(), s1, eps, xi })
    }

    /// `ξ(V,W) = ⟨−γ♭(εX) + ε*(γ♭(εX) − γ♭V), W⟩` with `X = pr_G V`,
    /// the transport of `η` along `R_{−Π}`.
    pub fn xi_from_eta(&self) -> Form {
        let s = &self.s0;
        let n = s.dim;
        let et = self.eps.transpose();
        let mut out = Skew::zero(s.ring, n, 2);
        for i in 0..n {
            let v = unit(s, i);
            let x = s.pr_g.mul_vec(&v);
            let ex = self.eps.mul_vec(&x);
            let g_ex = s.gamma_flat.mul_vec(&ex);
            let g_v = s.gamma_flat.mul_vec(&v);
            let inner: VectorField = g_ex.iter().zip(&g_v).map(|(a, b)| a - b).collect();
            let pulled = et.mul_vec(&inner);
            let cov: VectorField = g_ex.iter().zip(&pulled).map(|(a, b)| &(-a) + b).collect();
            for (j, c) in cov.iter().enumerate() {
                if j > i {
                    out.add_term(&[i, j], c);
                }
            }
        }
        out
    }

    /// `G₁ ⊕ G₁⁰` equals `gr(η)` inside `TM ⊕ T*M` at a point.
    pub fn eta_graph_check(&self, p: &TorusPoint) -> Result<bool> {
        let s = &self.s0;
        let n = s.dim;
        let e = self.eps.eval(p)?;
        let et = e.transpose();
        let g = s.gamma_flat.eval(p)?;
        let gens_y: Vec<Vec<FieldElement>> =
            s.g_frame.iter().map(|v| v.iter().map(|f| f.eval(p)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let gens_a: Vec<Vec<FieldElement>> =
            s.tf_coframe.iter().map(|v| v.iter().map(|f| f.eval(p)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let zero = vec![FieldElement::zero(); n];
        let add = |a: &[FieldElement], b: &[FieldElement]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        let sub = |a: &[FieldElement], b: &[FieldElement]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();
        let mut left: Vec<Vec<FieldElement>> = Vec::new();
        let mut right: Vec<Vec<FieldElement>> = Vec::new();
        for y in &gens_y {
            let ey = e.mul_vec(y);
            left.push([add(y, &ey), zero.clone()].concat());
            let g_ey = g.mul_vec(&ey);
            let cov = add(&g_ey.iter().map(|x| -x).collect::<Vec<_>>(), &et.mul_vec(&g_ey));
            right.push([add(y, &ey), cov].concat());
        }
        for a in &gens_a {
            left.push([zero.clone(), sub(a, &et.mul_vec(a))].concat());
            right.push([zero.clone(), sub(a, &et.mul_vec(a))].concat());
        }
        let to_mat = |cols: &Vec<Vec<FieldElement>>| Mat::from_fn(2 * n, cols.len(), |i, j| cols[j][i].clone());
        Ok(to_mat(&left).same_column_space(&to_mat(&right)))
    }

    /// `N₂(Q₁⊙Q₂) = (−1)^{|Q₁|}(Q₁♯∧Q₂♯)ξ`.
    pub fn n2(&self, q1: &MultiVector, q2: &MultiVector) -> MultiVector {
        pair_flat_pairing(&self.xi, q1, q2)
    }

    /// Taylor table of `N` (degree zero, only arity two).
    pub fn n_table(&self, sign: i64) -> TaylorTable<'_, MultiVector> {
        let c = FieldElement::from_int(sign);
        TaylorTable::new(0).with(2, move |args: &[&MultiVector]| self.n2(args[0], args[1]).scale(&c))
    }

    /// `(R∘Φ − Φ∘Q)(word)` for `Φ = τ∘e^N∘τ = e^{−N}`, `Q = l^{G₀}`, `R = l^{G₁}`.
    pub fn intertwine(&self, word: &[MultiVector]) -> Result<SymVec<<FoliationAlgebra<'_> as Expandable>::Key>> {
        let a0 = FoliationAlgebra::new(&self.s0);
        let a1 = FoliationAlgebra::new(&self.s1);
        let q = TaylorTable::from_brackets(&a0);
        let r = TaylorTable::from_brackets(&a1);
        let n = self.n_table(-1);
        let phi = exp_coderivation(&a0, &n, word.len() + 1);
        let w = sym_word(&a0, word);
        intertwine_residual(&a0, |v| phi.apply(v), &q, &r, &w)
    }

    /// Taylor coefficient `Φ_k(Q₁⊙…⊙Q_k)` of `e^{−N}`.
    pub fn morphism_coefficient(&self, args: &[MultiVector]) -> Result<MultiVector> {
        let a0 = FoliationAlgebra::new(&self.s0);
        let n = self.n_table(-1);
        let phi = exp_coderivation(&a0, &n, args.len() + 1);
        let w = sym_word(&a0, args);
        let img = phi.apply(&w)?;
        let total: i32 = args.iter().map(FoliationAlgebra::element_degree).sum();
        Ok(collapse(&a0, &img.length_part(1), total))
    }
}

fn unit(s: &Setup, i: usize) -> VectorField {
    (0..s.dim).map(|k| if k == i { FourierScalar::one(s.ring) } else { FourierScalar::zero(s.ring) }).collect()
}
