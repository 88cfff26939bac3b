//! A regular Poisson structure with a chosen complement to its foliation,
//! and the almost Lie algebroid structure it induces on the tangent bundle.

use std::collections::BTreeMap;

use super::multivector::{derive_along, lie_bracket, lie_derivative_one_form, schouten, Form, MultiVector, Skew};
use crate::error::{Error, Result};
use crate::exactnum::{FieldElement, FourierScalar, Mat, Ring};

/// Vector fields and one-forms as coefficient lists.
pub type VectorField = Vec<FourierScalar>;

pub(crate) fn mm(a: &Mat<FourierScalar>, b: &Mat<FourierScalar>) -> Mat<FourierScalar> {
    a.try_mul(b).expect("matrix shapes agree")
}

fn dot(a: &[FourierScalar], b: &[FourierScalar]) -> FourierScalar {
    let mut acc = FourierScalar::zero(a[0].ring());
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// A bracket on `TM` given on coordinate fields by `[∂_i, ∂_j] = c[i][j]`
/// together with an anchor `ρ(∂_i) = anchor[i]`.
#[derive(Clone, Debug)]
pub struct AlmostLieData {
    pub dim: usize,
    pub ring: Ring,
    pub anchor: Vec<VectorField>,
    pub c: Vec<Vec<VectorField>>,
}

impl AlmostLieData {
    /// The tangent Lie algebroid: identity anchor, commuting coordinate fields.
    pub fn tangent(ring: Ring, dim: usize) -> Self {
        let z = FourierScalar::zero(ring);
        let anchor = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { FourierScalar::one(ring) } else { z.clone() }).collect())
            .collect();
        let c = vec![vec![vec![z; dim]; dim]; dim];
        AlmostLieData { dim, ring, anchor, c }
    }

    /// `[f∂_i, g∂_j] = fg c_ij + f ρ_i(g) ∂_j − g ρ_j(f) ∂_i`.
    pub fn bracket_coord(&self, f: &FourierScalar, i: usize, g: &FourierScalar, j: usize) -> VectorField {
        let fg = f * g;
        let mut out: VectorField = self.c[i][j].iter().map(|x| x * &fg).collect();
        let rg = derive_along(&self.anchor[i], g);
        if !rg.is_zero() {
            out[j] = &out[j] + &(f * &rg);
        }
        let rf = derive_along(&self.anchor[j], f);
        if !rf.is_zero() {
            out[i] = &out[i] - &(g * &rf);
        }
        out
    }

    /// Bracket of arbitrary vector fields.
    pub fn bracket_vectors(&self, x: &[FourierScalar], y: &[FourierScalar]) -> VectorField {
        let mut out = vec![FourierScalar::zero(self.ring); self.dim];
        for (i, f) in x.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, g) in y.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                for (k, v) in self.bracket_coord(f, i, g, j).into_iter().enumerate() {
                    if !v.is_zero() {
                        out[k] = &out[k] + &v;
                    }
                }
            }
        }
        out
    }

    /// Extension to multivector fields by the graded Leibniz rule in each slot.
    pub fn gerstenhaber(&self, p: &MultiVector, q: &MultiVector) -> MultiVector {
        let (dp, dq) = (p.degree(), q.degree());
        let mut out = Skew::zero(self.ring, self.dim, (dp + dq).saturating_sub(1));
        if dp + dq == 0 {
            return out;
        }
        for (idx, f) in p.terms() {
            for (jdx, g) in q.terms() {
                self.gerstenhaber_term(idx, f, jdx, g, &mut out);
            }
        }
        out
    }

    fn gerstenhaber_term(&self, idx: &[usize], f: &FourierScalar, jdx: &[usize], g: &FourierScalar, out: &mut Skew) {
        let (p, q) = (idx.len(), jdx.len());
        let dim = self.dim;
        if p == 0 {
            for (b, &j) in jdx.iter().enumerate() {
                let d = derive_along(&self.anchor[j], f);
                if d.is_zero() {
                    continue;
                }
                let mut rest = jdx.to_vec();
                rest.remove(b);
                let c = g * &d;
                out.add_term(&rest, &if b % 2 == 0 { -&c } else { c });
            }
            return;
        }
        if q == 0 {
            for (a, &i) in idx.iter().enumerate() {
                let d = derive_along(&self.anchor[i], g);
                if d.is_zero() {
                    continue;
                }
                let mut rest = idx.to_vec();
                rest.remove(a);
                let c = f * &d;
                out.add_term(&rest, &if (p - 1 - a) % 2 == 1 { -&c } else { c });
            }
            return;
        }
        let one = FourierScalar::one(self.ring);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in jdx.iter().enumerate() {
                let xf = if a == 0 { f } else { &one };
                let yg = if b == 0 { g } else { &one };
                let v = self.bracket_coord(xf, i, yg, j);
                let mut m = one.clone();
                if a != 0 {
                    m = &m * f;
                }
                if b != 0 {
                    m = &m * g;
                }
                let mut rest = idx.to_vec();
                rest.remove(a);
                let mut rest_q = jdx.to_vec();
                rest_q.remove(b);
                rest.extend(rest_q);
                let neg = (a + b) % 2 == 1;
                for (k, vk) in v.iter().enumerate() {
                    if vk.is_zero() {
                        continue;
                    }
                    let mut word = vec![k];
                    word.extend_from_slice(&rest);
                    if word[1..].contains(&k) {
                        continue;
                    }
                    let c = vk * &m;
                    out.add_term(&word, &if neg { -&c } else { c });
                }
            }
        }
        let _ = dim;
    }
}

/// A regular Poisson bivector on a torus (possibly times parameter
/// intervals) with a frame of its foliation and a frame of a complement.
#[derive(Clone, Debug)]
pub struct Setup {
    pub dim: usize,
    pub ring: Ring,
    pub pi: MultiVector,
    pub tf_frame: Vec<VectorField>,
    pub g_frame: Vec<VectorField>,
    /// Dual coframe to `tf_frame` vanishing on the complement.
    pub tf_coframe: Vec<VectorField>,
    /// Frame of the conormal bundle, dual to `g_frame`.
    pub conormal: Vec<VectorField>,
    pub pr_tf: Mat<FourierScalar>,
    pub pr_g: Mat<FourierScalar>,
    pub pi_sharp: Mat<FourierScalar>,
    /// Leafwise symplectic form in the leaf frame.
    pub omega: Mat<FourierScalar>,
    pub gamma: Form,
    pub gamma_flat: Mat<FourierScalar>,
    pub almost_lie: AlmostLieData,
    pub upsilon: Form,
}

impl Setup {
    pub fn new(pi: MultiVector, tf_frame: Vec<VectorField>, g_frame: Vec<VectorField>) -> Result<Self> {
        let dim = pi.dim();
        let ring = pi.ring();
        if pi.degree() != 2 {
            return Err(Error::NotRegularPoisson("Π must be a bivector".into()));
        }
        if tf_frame.len() + g_frame.len() != dim || tf_frame.iter().chain(&g_frame).any(|v| v.len() != dim) {
            return Err(Error::NotComplementary("frame sizes do not add up to the dimension".into()));
        }
        if tf_frame.len() % 2 != 0 || tf_frame.is_empty() {
            return Err(Error::NotRegularPoisson("leaf rank must be even and positive".into()));
        }
        if !schouten(&pi, &pi)?.is_zero() {
            return Err(Error::NotRegularPoisson("[Π,Π] does not vanish".into()));
        }
        let r = tf_frame.len();
        let frames: Vec<&VectorField> = tf_frame.iter().chain(&g_frame).collect();
        let b = Mat::from_fn(dim, dim, |i, c| frames[c][i].clone());
        let b_inv = b.inverse_constant_det()?;
        let row = |k: usize| (0..dim).map(|i| b_inv.get(k, i).clone()).collect::<VectorField>();
        let tf_coframe: Vec<VectorField> = (0..r).map(row).collect();
        let conormal: Vec<VectorField> = (r..dim).map(row).collect();

        let f_mat = Mat::from_fn(dim, r, |i, c| tf_frame[c][i].clone());
        let c_mat = Mat::from_fn(r, dim, |k, i| tf_coframe[k][i].clone());
        let pr_tf = mm(&f_mat, &c_mat);
        let id = Mat::identity(dim, &FourierScalar::zero(ring));
        let pr_g = Mat::from_fn(dim, dim, |i, j| id.get(i, j) - pr_tf.get(i, j));

        let pi_sharp = pi.sharp();
        let g_coframe = Mat::from_fn(dim - r, dim, |k, i| conormal[k][i].clone());
        if dim > r && !mm(&g_coframe, &pi_sharp).is_zero() {
            return Err(Error::NotRegularPoisson("Π is not tangent to the given leaf frame".into()));
        }
        let leaf_pi = mm(&mm(&c_mat, &pi_sharp), &c_mat.transpose());
        let leaf_inv = leaf_pi
            .inverse_constant_det()
            .map_err(|_| Error::NotRegularPoisson("Π is degenerate on the leaf frame".into()))?;
        let omega = leaf_inv.map(|x| -x);
        let gamma_flat = mm(&mm(&c_mat.transpose(), &omega), &c_mat);
        let gamma = Skew::from_sharp(&gamma_flat, dim)?;

        let anchor: Vec<VectorField> = (0..dim).map(|i| pr_g.column(i)).collect();
        let gcol: Vec<VectorField> = (0..dim).map(|i| gamma_flat.column(i)).collect();
        let mut c = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let lb = lie_bracket(&anchor[i], &anchor[j]);
                let li = lie_derivative_one_form(&anchor[i], &gcol[j]);
                let lj = lie_derivative_one_form(&anchor[j], &gcol[i]);
                let diff: VectorField = li.iter().zip(&lj).map(|(a, b)| a - b).collect();
                let corr = pi_sharp.mul_vec(&diff);
                c[i][j] = lb.iter().zip(&corr).map(|(a, b)| a - b).collect();
            }
        }
        let almost_lie = AlmostLieData { dim, ring, anchor, c };

        let mut upsilon = Skew::zero(ring, dim, 3);
        for a in 0..dim {
            for b in a + 1..dim {
                for cc in b + 1..dim {
                    let v = upsilon_value(&almost_lie.anchor, &gcol, a, b, cc);
                    upsilon.add_term(&[a, b, cc], &v);
                }
            }
        }

        Ok(Setup {
            dim,
            ring,
            pi,
            tf_frame,
            g_frame,
            tf_coframe,
            conormal,
            pr_tf,
            pr_g,
            pi_sharp,
            omega,
            gamma,
            gamma_flat,
            almost_lie,
            upsilon,
        })
    }

    /// Half the leaf dimension.
    pub fn leaf_half_rank(&self) -> usize {
        self.tf_frame.len() / 2
    }

    /// The same Poisson structure with another complement.
    pub fn with_complement(&self, g_frame: Vec<VectorField>) -> Result<Self> {
        Setup::new(self.pi.clone(), self.tf_frame.clone(), g_frame)
    }

    pub fn zero_fn(&self) -> FourierScalar {
        FourierScalar::zero(self.ring)
    }

    /// `[X,Y]_γ` on multivector fields.
    pub fn gamma_bracket(&self, p: &MultiVector, q: &MultiVector) -> MultiVector {
        self.almost_lie.gerstenhaber(p, q)
    }

    /// `γ(X, Y)`.
    pub fn gamma_pair(&self, x: &[FourierScalar], y: &[FourierScalar]) -> FourierScalar {
        dot(&self.gamma_flat.mul_vec(x), y)
    }

    /// First conormal pair with nonzero double contraction, if any.
    pub fn goodness_witness(&self, w: &MultiVector) -> Option<(usize, usize)> {
        if w.degree() < 2 {
            return None;
        }
        for a in 0..self.conormal.len() {
            let once = w.contract(&self.conormal[a]);
            for b in a + 1..self.conormal.len() {
                if !once.contract(&self.conormal[b]).is_zero() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_good(&self, w: &MultiVector) -> bool {
        self.goodness_witness(w).is_none()
    }

    pub fn check_good(&self, w: &MultiVector) -> Result<()> {
        match self.goodness_witness(w) {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotGood(a, b)),
        }
    }

    /// Components in `Γ(∧^p TF ⊗ ∧^q G)`, keyed by `(p, q)`.
    pub fn bigrade_decompose(&self, w: &MultiVector) -> BTreeMap<(usize, usize), MultiVector> {
        let mut out: BTreeMap<(usize, usize), MultiVector> = BTreeMap::new();
        let d = w.degree();
        let tf: Vec<Skew> = (0..self.dim).map(|i| Skew::vector(self.dim, &self.pr_tf.column(i))).collect();
        let g: Vec<Skew> = (0..self.dim).map(|i| Skew::vector(self.dim, &self.pr_g.column(i))).collect();
        for (idx, f) in w.terms() {
            for mask in 0u32..(1 << d) {
                let mut acc = Skew::function(self.dim, f.clone());
                for (s, &i) in idx.iter().enumerate() {
                    let v = if mask & (1 << s) != 0 { &g[i] } else { &tf[i] };
                    acc = acc.wedge(v);
                    if acc.is_zero() {
                        break;
                    }
                }
                let q = mask.count_ones() as usize;
                let key = (d - q, q);
                let cur = out.remove(&key).unwrap_or_else(|| Skew::zero(self.ring, self.dim, d));
                let sum = cur.plus(&acc);
                if !sum.is_zero() {
                    out.insert(key, sum);
                }
            }
        }
        out
    }

    /// Frame vector fields as multivectors.
    pub fn tf_vector(&self, a: usize) -> MultiVector {
        Skew::vector(self.dim, &self.tf_frame[a])
    }

    pub fn g_vector(&self, a: usize) -> MultiVector {
        Skew::vector(self.dim, &self.g_frame[a])
    }
}

/// `γ(∂_a,[ρ_b,ρ_c]) + γ(∂_b,[ρ_c,ρ_a]) + γ(∂_c,[ρ_a,ρ_b])`.
fn upsilon_value(anchor: &[VectorField], gcol: &[VectorField], a: usize, b: usize, c: usize) -> FourierScalar {
    let t1 = dot(&gcol[a], &lie_bracket(&anchor[b], &anchor[c]));
    let t2 = dot(&gcol[b], &lie_bracket(&anchor[c], &anchor[a]));
    let t3 = dot(&gcol[c], &lie_bracket(&anchor[a], &anchor[b]));
    &(&t1 + &t2) + &t3
}

/// Constant vector field from integer coefficients.
pub fn const_vector(ring: Ring, coeffs: &[i64]) -> VectorField {
    coeffs.iter().map(|&c| FourierScalar::constant(ring, FieldElement::from_int(c))).collect()
}
