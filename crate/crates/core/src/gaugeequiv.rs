//! Gauge equivalence through the product `M × I²`: the lift
//! `W_t + (∂_t + X_t)∧∂_s`, its two square decompositions, the block form of
//! its gauge transform and the correspondence with the Koszul flow.
//!
//! Families are ε-series whose coefficients are multivector fields with
//! polynomial dependence on `t`. The ring is `Ring::with_params(n, 2)`:
//! variable `n` is `t`, variable `n + 1` is `s`.

use crate::error::{Error, Result};
use crate::exactnum::{
    series_geometric_inverse, series_inverse_unipotent, EpsSeries, FieldElement, FourierScalar, Mat, Ring,
    RingElement,
};
use crate::foliation::dirac::{gauge_transform_series, inverse_gauge_transform_series, schouten_series, SeriesMultiVector};
use crate::foliation::multivector::vector_coeffs;
use crate::foliation::{FoliationAlgebra, KoszulAlgebra, MultiVector, Setup, Skew, VectorField};
use crate::linfty::{gauge_residual, mc_residual, GaugePath, LInfty, SeriesInstance};

/// A regular Poisson setup on `M` together with its trivial lift to `M × I²`.
#[derive(Clone, Debug)]
pub struct ProductSetup {
    /// The setup on `M` with functions independent of `t, s`.
    pub base: Setup,
    /// The same setup with coefficients allowed to depend on `t`.
    pub base_t: Setup,
    /// `Π̃` on `M × I²` with complement `G ⊕ ℝ∂_t ⊕ ℝ∂_s`.
    pub lifted: Setup,
    pub t_bound: usize,
}

fn embed_vector(v: &VectorField, ring: Ring, dim: usize) -> VectorField {
    let mut out: VectorField = v.iter().map(|f| f.embed(ring)).collect();
    out.resize(dim, FourierScalar::zero(ring));
    out
}

impl ProductSetup {
    pub fn new(base: &Setup, t_bound: usize) -> Result<Self> {
        if base.ring.poly != 0 {
            return Err(Error::DimensionMismatch("base setup must not carry parameters".into()));
        }
        let n = base.dim;
        let ring = Ring::with_params(n, 2);
        let base_t = Setup::new(
            base.pi.embed(ring, n),
            base.tf_frame.iter().map(|v| embed_vector(v, ring, n)).collect(),
            base.g_frame.iter().map(|v| embed_vector(v, ring, n)).collect(),
        )?;
        let mut g: Vec<VectorField> = base.g_frame.iter().map(|v| embed_vector(v, ring, n + 2)).collect();
        for axis in [n, n + 1] {
            let mut e = vec![FourierScalar::zero(ring); n + 2];
            e[axis] = FourierScalar::one(ring);
            g.push(e);
        }
        let lifted = Setup::new(
            base.pi.embed(ring, n + 2),
            base.tf_frame.iter().map(|v| embed_vector(v, ring, n + 2)).collect(),
            g,
        )?;
        Ok(ProductSetup { base: base.clone(), base_t, lifted, t_bound })
    }

    pub fn dim(&self) -> usize {
        self.base.dim
    }

    pub fn ring(&self) -> Ring {
        self.base_t.ring
    }

    pub fn t_axis(&self) -> usize {
        self.dim()
    }

    pub fn s_axis(&self) -> usize {
        self.dim() + 1
    }

    /// The function `t`.
    pub fn t(&self) -> FourierScalar {
        FourierScalar::param(self.ring(), 0)
    }

    /// Moves a multivector on `M` (any of the two rings) into the `t`-ring.
    pub fn on_base(&self, w: &MultiVector) -> MultiVector {
        if w.ring() == self.ring() {
            w.clone()
        } else {
            w.embed(self.ring(), self.dim())
        }
    }

    pub fn on_product(&self, w: &MultiVector) -> MultiVector {
        self.on_base(w).embed(self.ring(), self.dim() + 2)
    }

    /// `∂_t` or `∂_s` on the product.
    pub fn unit(&self, axis: usize) -> MultiVector {
        Skew::monomial(self.dim() + 2, &[axis], FourierScalar::one(self.ring()))
    }

    fn check_family(&self, w: &MultiVector) -> Result<()> {
        if w.param_degree(1) > 0 {
            return Err(Error::DegreeError("families must not depend on s".into()));
        }
        let found = w.param_degree(0);
        if found > self.t_bound {
            return Err(Error::DegreeBoundExceeded { found, bound: self.t_bound });
        }
        Ok(())
    }

    /// `∂W/∂t` coefficientwise.
    pub fn d_dt(&self, w: &SeriesMultiVector) -> SeriesMultiVector {
        let t = self.t_axis();
        w.map(|c| c.map_coeffs(|f| f.partial(t).expect("t is a ring variable")))
    }

    /// Splits `R = A + B∧∂_s` on the product and returns `(A, B)` on `M`.
    fn split_s(&self, r: &MultiVector) -> Result<(MultiVector, MultiVector)> {
        let n = self.dim();
        let s = self.s_axis();
        if r.degree() == 0 {
            return Ok((r.restrict(self.ring(), n)?, Skew::zero(self.ring(), n, 0)));
        }
        let c = r.contract_axis(s);
        let b = if (r.degree() - 1) % 2 == 1 { c.neg() } else { c };
        let a = r.minus(&b.wedge(&self.unit(s)));
        Ok((a.restrict(self.ring(), n)?, b.restrict(self.ring(), n)?))
    }

    fn split_series(&self, r: &SeriesMultiVector) -> Result<SquareResiduals> {
        let parts = r.try_map(|c| self.split_s(c))?;
        Ok(SquareResiduals { no_s: parts.map(|p| p.0.clone()), s: parts.map(|p| p.1.clone()) })
    }
}

/// `W̃_t = W_t + (∂_t + X_t)∧∂_s` together with its parts.
#[derive(Clone, Debug)]
pub struct LiftedBivector {
    pub w: SeriesMultiVector,
    pub x: SeriesMultiVector,
    pub assembled: SeriesMultiVector,
}

/// Assembles the lift; `W` and `X` must share their ε-order.
pub fn lift(ps: &ProductSetup, w: &SeriesMultiVector, x: &SeriesMultiVector) -> Result<LiftedBivector> {
    if w.order() != x.order() {
        return Err(Error::LengthMismatch { expected: w.order(), got: x.order() });
    }
    let n = ps.dim();
    let w = w.map(|c| ps.on_base(c).with_degree_if_zero(2));
    let x = x.map(|c| ps.on_base(c).with_degree_if_zero(1));
    for c in w.coeffs().iter().chain(x.coeffs()) {
        ps.check_family(c)?;
    }
    if w.coeffs().iter().any(|c| c.degree() != 2) || x.coeffs().iter().any(|c| c.degree() != 1) {
        return Err(Error::DegreeError("lift needs a bivector family and a vector field family".into()));
    }
    let ds = ps.unit(ps.s_axis());
    let dt = ps.unit(ps.t_axis());
    let assembled = EpsSeries::from_fn(w.order(), |j| {
        let mut v = x.coeff(j).embed(ps.ring(), n + 2);
        if j == 0 {
            v = v.plus(&dt);
        }
        w.coeff(j).embed(ps.ring(), n + 2).plus(&v.wedge(&ds))
    });
    Ok(LiftedBivector { w, x, assembled })
}

/// Recovers `(W_t, X_t)` from an assembled lift.
pub fn project(ps: &ProductSetup, assembled: &SeriesMultiVector) -> Result<(SeriesMultiVector, SeriesMultiVector)> {
    let n = ps.dim();
    let s = ps.s_axis();
    let ds = ps.unit(s);
    let dt = ps.unit(ps.t_axis());
    let mut ws = Vec::new();
    let mut xs = Vec::new();
    for (j, c) in assembled.coeffs().iter().enumerate() {
        let v = c.contract_axis(s).neg();
        let w = c.minus(&v.wedge(&ds));
        let x = if j == 0 { v.minus(&dt) } else { v };
        ws.push(w.restrict(ps.ring(), n)?);
        xs.push(x.restrict(ps.ring(), n)?);
    }
    Ok((EpsSeries::new(ws), EpsSeries::new(xs)))
}

/// The MC residual of a lift split as `no_s + s∧∂_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareResiduals {
    pub no_s: SeriesMultiVector,
    pub s: SeriesMultiVector,
}

impl SquareResiduals {
    pub fn both_zero(&self) -> bool {
        self.no_s.coeffs().iter().chain(self.s.coeffs()).all(|c| c.is_zero())
    }

    pub fn mc_holds(&self) -> bool {
        self.no_s.coeffs().iter().all(|c| c.is_zero())
    }

    pub fn flow_holds(&self) -> bool {
        self.s.coeffs().iter().all(|c| c.is_zero())
    }
}

/// MC residual of the lift for `l^{G̃}` on `M × I²`, split along `∂_s`.
pub fn square_equivalence_residuals(ps: &ProductSetup, lifted: &LiftedBivector) -> Result<SquareResiduals> {
    let alg = FoliationAlgebra::new(&ps.lifted);
    let inst = SeriesInstance::new(&alg, lifted.assembled.order());
    let r = mc_residual(&inst, &lifted.assembled)?;
    ps.split_series(&r)
}

/// MC residual of the lift for the Koszul brackets of `Π̃`, split along `∂_s`.
pub fn koszul_square_residual(ps: &ProductSetup, lifted: &LiftedBivector) -> Result<SquareResiduals> {
    let alg = KoszulAlgebra::new(ps.lifted.pi.clone());
    let inst = SeriesInstance::new(&alg, lifted.assembled.order());
    let r = mc_residual(&inst, &lifted.assembled)?;
    ps.split_series(&r)
}

/// `[Π,W] + ½[W,W]_γ − (1/6)(W♯∧W♯∧W♯)Υ` on `M`, with `t` as a parameter.
pub fn base_mc_residual(ps: &ProductSetup, w: &SeriesMultiVector) -> Result<SeriesMultiVector> {
    let alg = FoliationAlgebra::new(&ps.base_t);
    let inst = SeriesInstance::new(&alg, w.order());
    mc_residual(&inst, &w.map(|c| ps.on_base(c)))
}

/// `l₁(X) + l₂(X,W) + ½l₃(X,W,W) − dW/dt`.
pub fn gauge_flow_defect(ps: &ProductSetup, w: &SeriesMultiVector, x: &SeriesMultiVector) -> SeriesMultiVector {
    let alg = FoliationAlgebra::new(&ps.base_t);
    let inst = SeriesInstance::new(&alg, w.order());
    let w = w.map(|c| ps.on_base(c));
    let x = x.map(|c| ps.on_base(c));
    let half = FieldElement::ratio(1, 2);
    let l1 = inst.bracket(&[&x]);
    let l2 = inst.bracket(&[&x, &w]);
    let l3 = inst.bracket(&[&x, &w, &w]).map(|c| c.scale(&half));
    sub(&add(&add(&l1, &l2), &l3), &ps.d_dt(&w))
}

/// `[Π+W, X]_SN − dW/dt`.
pub fn koszul_flow_defect(ps: &ProductSetup, w: &SeriesMultiVector, x: &SeriesMultiVector) -> SeriesMultiVector {
    let w = w.map(|c| ps.on_base(c));
    let x = x.map(|c| ps.on_base(c));
    let mut p = w.clone().into_coeffs();
    p[0] = p[0].plus(&ps.base_t.pi);
    sub(&schouten_series(&EpsSeries::new(p), &x), &ps.d_dt(&w))
}

/// `[Π,W]_SN + ½[W,W]_SN`.
pub fn koszul_mc_defect(ps: &ProductSetup, w: &SeriesMultiVector) -> SeriesMultiVector {
    let w = w.map(|c| ps.on_base(c));
    let pi = EpsSeries::from_fn(w.order(), |j| if j == 0 { ps.base_t.pi.clone() } else { Skew::zero(ps.ring(), ps.dim(), 2) });
    let half = FieldElement::ratio(1, 2);
    add(&schouten_series(&pi, &w), &schouten_series(&w, &w).map(|c| c.scale(&half)))
}

/// The flow defect through the generic gauge-path machinery: `t`-coefficients
/// are separated first and the ε-series algebra on `M` does the rest.
pub fn gauge_flow_defect_by_coefficients(
    ps: &ProductSetup,
    w: &SeriesMultiVector,
    x: &SeriesMultiVector,
) -> Result<SeriesMultiVector> {
    let alg = FoliationAlgebra::new(&ps.base);
    let inst = SeriesInstance::new(&alg, w.order());
    let ring = ps.base.ring;
    let n = ps.dim();
    let split = |s: &SeriesMultiVector, deg: usize| -> Result<Vec<SeriesMultiVector>> {
        let top = s.coeffs().iter().map(|c| c.param_degree(0)).max().unwrap_or(0);
        (0..=top)
            .map(|e| {
                s.try_map(|c| {
                    let c = ps.on_base(c).with_degree_if_zero(deg);
                    c.param_coefficient(0, e).restrict(ring, n)
                })
            })
            .collect()
    };
    let path = GaugePath { v: split(w, 2)?, w: split(x, 1)? };
    let r = gauge_residual(&inst, &path)?;
    let t = ps.t();
    let mut acc = EpsSeries::from_fn(w.order(), |_| Skew::zero(ps.ring(), n, 2));
    let mut pow = FourierScalar::one(ps.ring());
    for c in r {
        acc = add(&acc, &c.map(|m| m.embed(ps.ring(), n).mul_fn(&pow).neg()));
        pow = pow.try_mul(&t)?;
    }
    Ok(acc)
}

/// `T*(M×I²) → T(M×I²)` in blocks over `(T*M, ℝdt, ℝds) → (TM, ℝ∂_t, ℝ∂_s)`.
/// The middle row is `(0, 0, −1)` and the middle column `(0, 0, 1)ᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOperator {
    pub top_left: EpsSeries<Mat<FourierScalar>>,
    pub top_right: EpsSeries<VectorField>,
    pub bottom_left: EpsSeries<VectorField>,
    pub bottom_right: EpsSeries<FourierScalar>,
}

impl BlockOperator {
    /// The full `(n+2)×(n+2)` matrix series.
    pub fn assemble(&self, ring: Ring) -> EpsSeries<Mat<FourierScalar>> {
        let n = self.top_left.coeff(0).rows();
        let zero = FourierScalar::zero(ring);
        EpsSeries::from_fn(self.top_left.order(), |j| {
            let one = if j == 0 { FourierScalar::one(ring) } else { zero.clone() };
            Mat::from_fn(n + 2, n + 2, |r, c| match (r, c) {
                (r, c) if r < n && c < n => self.top_left.coeff(j).get(r, c).clone(),
                (r, c) if r < n && c == n + 1 => self.top_right.coeff(j)[r].clone(),
                (r, c) if r == n + 1 && c < n => self.bottom_left.coeff(j)[c].clone(),
                (r, c) if r == n + 1 && c == n + 1 => self.bottom_right.coeff(j).clone(),
                (r, c) if r == n && c == n + 1 => -&one,
                (r, c) if r == n + 1 && c == n => one.clone(),
                _ => zero.clone(),
            })
        })
    }

    pub fn to_bivector(&self, ring: Ring) -> Result<SeriesMultiVector> {
        let n = self.top_left.coeff(0).rows();
        self.assemble(ring).try_map(|m| Skew::from_sharp(m, n + 2))
    }
}

fn vec_series(x: &SeriesMultiVector) -> EpsSeries<VectorField> {
    x.map(vector_coeffs)
}

/// `Σ_{i+j=k} M_i v_j`.
fn apply_series(m: &EpsSeries<Mat<FourierScalar>>, v: &EpsSeries<VectorField>) -> EpsSeries<VectorField> {
    m.bilinear(v, |a, b| a.mul_vec(b), |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
}

/// `Σ_{i+j=k} v_iᵀ M_j`.
fn row_apply_series(v: &EpsSeries<VectorField>, m: &EpsSeries<Mat<FourierScalar>>) -> EpsSeries<VectorField> {
    v.bilinear(m, |a, b| b.transpose().mul_vec(a), |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
}

fn dot_series(a: &EpsSeries<VectorField>, b: &EpsSeries<VectorField>, ring: Ring) -> EpsSeries<FourierScalar> {
    a.bilinear(
        b,
        |x, y| x.iter().zip(y).fold(FourierScalar::zero(ring), |acc, (p, q)| &acc + &(p * q)),
        |x, y| &x + &y,
    )
}

fn sub_vec(a: &EpsSeries<VectorField>, b: &EpsSeries<VectorField>) -> EpsSeries<VectorField> {
    a.zip_with(b, |x, y| x.iter().zip(y).map(|(p, q)| p - q).collect())
}

/// `(id + γ♭W♯)^{-1}` as a series.
fn s_inverse(ps: &ProductSetup, w: &SeriesMultiVector) -> Result<EpsSeries<Mat<FourierScalar>>> {
    if !w.coeff(0).is_zero() {
        return Err(Error::NonSmallDeformation);
    }
    let g = &ps.base_t.gamma_flat;
    let id = Mat::identity(ps.dim(), &FourierScalar::zero(ps.ring()));
    let s = EpsSeries::from_fn(w.order(), |j| if j == 0 { id.clone() } else { g.times(&w.coeff(j).sharp()) });
    series_geometric_inverse(&s)
}

/// The gauge transform of the lift, block by block:
/// `W♯S⁻¹ | 0 | W♯S⁻¹γ♭X − X` over `0 | 0 | −1` over `XᵀS⁻¹ | 1 | XᵀS⁻¹γ♭X`,
/// with `S = id + γ♭W♯`.
pub fn block_gauge_transform(ps: &ProductSetup, lifted: &LiftedBivector) -> Result<BlockOperator> {
    let s_inv = s_inverse(ps, &lifted.w)?;
    let k = lifted.w.order();
    let w_sharp = lifted.w.map(|c| c.sharp());
    let g = EpsSeries::constant(ps.base_t.gamma_flat.clone(), k);
    let x = vec_series(&lifted.x);
    let top_left = w_sharp.times(&s_inv);
    let sg = s_inv.times(&g);
    let sgx = apply_series(&sg, &x);
    let top_right = sub_vec(&apply_series(&w_sharp, &sgx), &x);
    let bottom_left = row_apply_series(&x, &s_inv);
    let bottom_right = dot_series(&x, &sgx, ps.ring());
    Ok(BlockOperator { top_left, top_right, bottom_left, bottom_right })
}

/// `W̃♯(id + γ̃♭W̃♯)^{-1}` computed directly on `M × I²`; the order-zero part
/// of `id + γ̃♭W̃♯` is unipotent, not the identity.
pub fn direct_product_transform(ps: &ProductSetup, lifted: &LiftedBivector) -> Result<EpsSeries<Mat<FourierScalar>>> {
    if !lifted.w.coeff(0).is_zero() {
        return Err(Error::NonSmallDeformation);
    }
    let n = ps.dim() + 2;
    let ws = lifted.assembled.map(|c| c.sharp());
    let g = &ps.lifted.gamma_flat;
    let id = Mat::identity(n, &FourierScalar::zero(ps.ring()));
    let s = EpsSeries::from_fn(ws.order(), |j| {
        let gw = g.times(ws.coeff(j));
        if j == 0 {
            id.plus(&gw)
        } else {
            gw
        }
    });
    let inv = series_inverse_unipotent(&s, n)?;
    Ok(ws.times(&inv))
}

/// The pair `(Ŵ_t, X̂_t) = (W_t^γ, (id + W♯γ♭)^{-1}X_t)`.
#[derive(Clone, Debug)]
pub struct HatPair {
    pub w_hat: SeriesMultiVector,
    pub x_hat: SeriesMultiVector,
}

/// Both sides of the correspondence: residuals of `(W, X)` for `l^G` and of
/// the hatted pair for the Koszul brackets.
#[derive(Clone, Debug)]
pub struct HatCorrespondence {
    pub hat: HatPair,
    pub l_side: SquareResiduals,
    pub koszul_side: SquareResiduals,
}

impl HatCorrespondence {
    /// MC and flow hold on one side iff they hold on the other.
    pub fn consistent(&self) -> bool {
        self.l_side.mc_holds() == self.koszul_side.mc_holds() && self.l_side.both_zero() == self.koszul_side.both_zero()
    }
}

fn hat_x(ps: &ProductSetup, w: &SeriesMultiVector, x: &SeriesMultiVector, sigma: i64) -> Result<SeriesMultiVector> {
    let n = ps.dim();
    let g = ps.base_t.gamma_flat.scale_by(&FourierScalar::constant(ps.ring(), FieldElement::from_int(sigma)));
    let id = Mat::identity(n, &FourierScalar::zero(ps.ring()));
    let t = EpsSeries::from_fn(w.order(), |j| if j == 0 { id.clone() } else { w.coeff(j).sharp().times(&g) });
    let t_inv = series_geometric_inverse(&t)?;
    let v = apply_series(&t_inv, &vec_series(x));
    Ok(v.map(|c| Skew::vector(n, c)))
}

/// `(W, X) ↦ (W^γ, (id + W♯γ♭)^{-1}X)`.
pub fn hat(ps: &ProductSetup, w: &SeriesMultiVector, x: &SeriesMultiVector) -> Result<HatPair> {
    let w = w.map(|c| ps.on_base(c).with_degree_if_zero(2));
    let x = x.map(|c| ps.on_base(c).with_degree_if_zero(1));
    let w_hat = gauge_transform_series(&ps.base_t, &w)?;
    let x_hat = hat_x(ps, &w, &x, 1)?;
    Ok(HatPair { w_hat, x_hat })
}

/// Inverse of [`hat`]: `W = Ŵ^{−γ}`, `X = (id + W♯γ♭)X̂`.
pub fn unhat(ps: &ProductSetup, pair: &HatPair) -> Result<(SeriesMultiVector, SeriesMultiVector)> {
    let w = inverse_gauge_transform_series(&ps.base_t, &pair.w_hat)?;
    let n = ps.dim();
    let g = &ps.base_t.gamma_flat;
    let id = Mat::identity(n, &FourierScalar::zero(ps.ring()));
    let t = EpsSeries::from_fn(w.order(), |j| if j == 0 { id.clone() } else { w.coeff(j).sharp().times(g) });
    let x = apply_series(&t, &vec_series(&pair.x_hat)).map(|c| Skew::vector(n, c));
    Ok((w, x))
}

/// Hats the pair and evaluates both square residuals.
pub fn hat_correspondence(ps: &ProductSetup, w: &SeriesMultiVector, x: &SeriesMultiVector) -> Result<HatCorrespondence> {
    let hat = hat(ps, w, x)?;
    let l_side = square_equivalence_residuals(ps, &lift(ps, w, x)?)?;
    let koszul_side = koszul_square_residual(ps, &lift(ps, &hat.w_hat, &hat.x_hat)?)?;
    Ok(HatCorrespondence { hat, l_side, koszul_side })
}

/// `dΠ_t/dt − [Π_t, X̂_t]_SN` with `Π_t = Π + Ŵ_t`.
pub fn exact_flow_residual(ps: &ProductSetup, pair: &HatPair) -> SeriesMultiVector {
    let mut p = pair.w_hat.clone().into_coeffs();
    p[0] = p[0].plus(&ps.base_t.pi);
    let p = EpsSeries::new(p);
    sub(&ps.d_dt(&p), &schouten_series(&p, &pair.x_hat))
}

/// A path solving both equations: `Π_t = e^{tε ad_Y}Π` truncated at `order`
/// is Poisson and moves by `X̂ = −εY`; the `l^G` pair is recovered by
/// [`unhat`]. Coefficient `ε^j` has `t`-degree `j`.
pub fn lie_flow_family(ps: &ProductSetup, y: &MultiVector, order: usize) -> Result<(SeriesMultiVector, SeriesMultiVector)> {
    let n = ps.dim();
    let y = ps.on_base(y);
    let t = ps.t();
    let mut coeffs = vec![Skew::zero(ps.ring(), n, 2)];
    let mut cur = ps.base_t.pi.clone();
    let mut scale = FourierScalar::one(ps.ring());
    for j in 1..=order {
        cur = crate::foliation::schouten(&y, &cur)?;
        scale = scale.try_mul(&t)?.scale(&FieldElement::ratio(1, j as i64));
        coeffs.push(cur.mul_fn(&scale));
    }
    let w_hat = EpsSeries::new(coeffs);
    let x_hat = EpsSeries::from_fn(order, |j| if j == 1 { y.neg() } else { Skew::zero(ps.ring(), n, 1) });
    unhat(ps, &HatPair { w_hat, x_hat })
}

fn add(a: &SeriesMultiVector, b: &SeriesMultiVector) -> SeriesMultiVector {
    a.zip_with(b, |x, y| x.plus(y))
}

fn sub(a: &SeriesMultiVector, b: &SeriesMultiVector) -> SeriesMultiVector {
    a.zip_with(b, |x, y| x.minus(y))
}

trait DegreeFix {
    fn with_degree_if_zero(&self, d: usize) -> Self;
}

impl DegreeFix for MultiVector {
    fn with_degree_if_zero(&self, d: usize) -> Self {
        if self.is_zero() && self.degree() != d {
            self.with_degree(d)
        } else {
            self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::foliation::dirac::series_is_zero;
    use crate::foliation::random::{random_good, random_multivector, Shape};
    use crate::foliation::shipped;

    fn t3() -> ProductSetup {
        ProductSetup::new(&shipped::t3_kronecker().unwrap(), 4).unwrap()
    }

    fn t4() -> ProductSetup {
        ProductSetup::new(&shipped::t4_nonintegrable().unwrap(), 4).unwrap()
    }

    fn zero_series(ps: &ProductSetup, deg: usize, k: usize) -> SeriesMultiVector {
        EpsSeries::from_fn(k, |_| Skew::zero(ps.ring(), ps.dim(), deg))
    }

    /// `Σ_{j≥1} ε^j Σ_{d≤2} t^d (random)`.
    fn random_family(ps: &ProductSetup, rng: &mut ChaCha8Rng, deg: usize, k: usize, good: bool) -> SeriesMultiVector {
        let t = ps.t();
        EpsSeries::from_fn(k, |j| {
            let mut acc = Skew::zero(ps.ring(), ps.dim(), deg);
            if j == 0 && deg == 2 {
                return acc;
            }
            let mut pow = FourierScalar::one(ps.ring());
            for _ in 0..=2 {
                let c = if good {
                    random_good(rng, &ps.base, deg, Shape { terms: 1, ..Shape::default() })
                } else {
                    random_multivector(rng, ps.base.ring, ps.dim(), deg, Shape { terms: 1, ..Shape::default() })
                };
                acc = acc.plus(&ps.on_base(&c).mul_fn(&pow));
                pow = pow.try_mul(&t).unwrap();
            }
            acc
        })
    }

    #[test]
    fn trivial_lift_is_dt_ds() {
        let ps = t3();
        let l = lift(&ps, &zero_series(&ps, 2, 2), &zero_series(&ps, 1, 2)).unwrap();
        let expected = ps.unit(3).wedge(&ps.unit(4));
        assert_eq!(l.assembled.coeff(0), &expected);
        assert!(l.assembled.coeff(1).is_zero());
        let r = square_equivalence_residuals(&ps, &l).unwrap();
        assert!(r.both_zero());
        assert!(koszul_square_residual(&ps, &l).unwrap().both_zero());
    }

    #[test]
    fn lift_round_trips_and_rejects_bad_families() {
        let ps = t4();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            let w = random_family(&ps, &mut rng, 2, 2, true);
            let x = random_family(&ps, &mut rng, 1, 2, false);
            let l = lift(&ps, &w, &x).unwrap();
            let (w2, x2) = project(&ps, &l.assembled).unwrap();
            assert_eq!(w2, l.w);
            assert_eq!(x2, l.x);
        }
        let t = ps.t();
        let t5 = (0..4).fold(t.clone(), |a, _| a.try_mul(&t).unwrap());
        let w = EpsSeries::new(vec![Skew::zero(ps.ring(), 4, 2), ps.on_base(&ps.base.pi).mul_fn(&t5)]);
        let err = lift(&ps, &w, &zero_series(&ps, 1, 1)).unwrap_err();
        assert!(matches!(err, Error::DegreeBoundExceeded { found: 5, bound: 4 }));
    }

    #[test]
    fn lift_has_the_printed_block_shape() {
        let ps = t3();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let w = random_family(&ps, &mut rng, 2, 1, true);
        let x = random_family(&ps, &mut rng, 1, 1, false);
        let l = lift(&ps, &w, &x).unwrap();
        let m = l.assembled.coeff(1).sharp();
        let n = 3;
        let xv = vector_coeffs(x.coeff(1));
        let wm = w.coeff(1).sharp();
        for r in 0..n {
            for c in 0..n {
                assert_eq!(m.get(r, c), wm.get(r, c));
            }
            assert_eq!(m.get(r, n + 1), &-&xv[r]);
            assert_eq!(m.get(n + 1, r), &xv[r]);
            assert!(m.get(r, n).is_zero() && m.get(n, r).is_zero());
        }
        let m0 = l.assembled.coeff(0).sharp();
        assert!(m0.get(n, n + 1) == &-&FourierScalar::one(ps.ring()));
        assert!(m0.get(n + 1, n) == &FourierScalar::one(ps.ring()));
    }

    #[test]
    fn square_residuals_split_into_mc_and_flow() {
        for ps in [t3(), t4()] {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            for _ in 0..3 {
                let w = random_family(&ps, &mut rng, 2, 3, true);
                let x = random_family(&ps, &mut rng, 1, 3, false);
                let l = lift(&ps, &w, &x).unwrap();
                let r = square_equivalence_residuals(&ps, &l).unwrap();
                assert_eq!(r.no_s, base_mc_residual(&ps, &w).unwrap());
                assert_eq!(r.s, gauge_flow_defect(&ps, &w, &x));
                assert_eq!(r.s, gauge_flow_defect_by_coefficients(&ps, &w, &x).unwrap());
                let k = koszul_square_residual(&ps, &l).unwrap();
                assert_eq!(k.no_s, koszul_mc_defect(&ps, &w));
                assert_eq!(k.s, koszul_flow_defect(&ps, &w, &x));
            }
        }
    }

    #[test]
    fn stationary_mc_family_has_no_flow_residual() {
        let ps = t4();
        let (w, _) = lie_flow_family(&ps, &ps.base.g_vector(0), 3).unwrap();
        let w_at_zero = w.map(|c| c.param_coefficient(0, 0));
        let l = lift(&ps, &w_at_zero, &zero_series(&ps, 1, 3)).unwrap();
        let r = square_equivalence_residuals(&ps, &l).unwrap();
        assert!(r.flow_holds());
    }

    #[test]
    fn flow_violation_is_isolated_in_the_s_part() {
        let ps = t3();
        let pair = HatPair {
            w_hat: zero_series(&ps, 2, 2),
            x_hat: EpsSeries::from_fn(2, |j| {
                if j == 1 {
                    ps.on_base(&ps.base.g_vector(0).mul_fn(&FourierScalar::cos(ps.base.ring, &[1, 0, 0])))
                } else {
                    Skew::zero(ps.ring(), 3, 1)
                }
            }),
        };
        let l = lift(&ps, &pair.w_hat, &pair.x_hat).unwrap();
        let k = koszul_square_residual(&ps, &l).unwrap();
        assert!(k.mc_holds());
        assert!(!k.flow_holds());
    }

    #[test]
    fn block_transform_matches_direct_transform() {
        for mut ps in [t3(), t4()] {
            ps.t_bound = 16;
            let mut rng = ChaCha8Rng::seed_from_u64(19);
            for _ in 0..2 {
                let w = random_family(&ps, &mut rng, 2, 4, true);
                let x = random_family(&ps, &mut rng, 1, 4, false);
                let l = lift(&ps, &w, &x).unwrap();
                let b = block_gauge_transform(&ps, &l).unwrap();
                assert_eq!(b.assemble(ps.ring()), direct_product_transform(&ps, &l).unwrap());
                assert!(b.bottom_right.coeffs().iter().all(|c| c.is_zero()));
                let h = hat(&ps, &w, &x).unwrap();
                let hl = lift(&ps, &h.w_hat, &h.x_hat).unwrap();
                assert_eq!(b.to_bivector(ps.ring()).unwrap(), hl.assembled);
            }
        }
    }

    #[test]
    fn block_transform_of_zero_and_nilpotent_lifts() {
        let ps = t4();
        let x = EpsSeries::from_fn(2, |j| ps.on_base(&ps.base.tf_vector(j % 2)));
        let l = lift(&ps, &zero_series(&ps, 2, 2), &x).unwrap();
        let b = block_gauge_transform(&ps, &l).unwrap();
        assert!(b.top_left.coeffs().iter().all(|m| m.is_zero()));
        assert_eq!(b.bottom_left, vec_series(&l.x));

        // W = ε Y∧V with Y ∈ G, V ∈ TF: (γ♭W♯)² = 0, so S⁻¹ = id − εγ♭W♯.
        let wv = ps.on_base(&ps.base.g_vector(1).wedge(&ps.base.tf_vector(0)));
        let w = EpsSeries::new(vec![Skew::zero(ps.ring(), 4, 2), wv.clone(), Skew::zero(ps.ring(), 4, 2)]);
        let l = lift(&ps, &w, &zero_series(&ps, 1, 2)).unwrap();
        let b = block_gauge_transform(&ps, &l).unwrap();
        let ws = wv.sharp();
        let g = &ps.base_t.gamma_flat;
        assert_eq!(b.top_left.coeff(1), &ws);
        assert_eq!(b.top_left.coeff(2), &ws.times(g).times(&ws).negate());
    }

    #[test]
    fn non_small_lift_is_rejected() {
        let ps = t3();
        let w = EpsSeries::new(vec![ps.on_base(&ps.base.pi), Skew::zero(ps.ring(), 3, 2)]);
        let l = lift(&ps, &w, &zero_series(&ps, 1, 1)).unwrap();
        assert!(matches!(block_gauge_transform(&ps, &l), Err(Error::NonSmallDeformation)));
        assert!(matches!(hat(&ps, &w, &zero_series(&ps, 1, 1)), Err(Error::NonSmallDeformation)));
    }

    #[test]
    fn hat_of_zero_family_is_identity_on_x() {
        let ps = t3();
        let x = EpsSeries::from_fn(2, |_| ps.on_base(&ps.base.g_vector(0)));
        let h = hat(&ps, &zero_series(&ps, 2, 2), &x).unwrap();
        assert!(h.w_hat.coeffs().iter().all(|c| c.is_zero()));
        assert_eq!(h.x_hat, x);
    }

    #[test]
    fn correspondence_holds_both_ways() {
        for ps in [t3(), t4()] {
            let r = ps.base.ring;
            let y = ps.base.g_vector(0).mul_fn(&FourierScalar::cos(r, &vec![1; 1].into_iter().chain(vec![0; ps.dim() - 1]).collect::<Vec<_>>()));
            let (w, x) = lie_flow_family(&ps, &y, 3).unwrap();
            let c = hat_correspondence(&ps, &w, &x).unwrap();
            assert!(c.l_side.both_zero());
            assert!(c.koszul_side.both_zero());
            assert!(series_is_zero(&exact_flow_residual(&ps, &c.hat)));
            let (w2, x2) = unhat(&ps, &c.hat).unwrap();
            assert_eq!((w2, x2), (w.clone(), x.clone()));

            let mut k = vec![0; ps.dim()];
            k[0] = 1;
            let bump = ps.on_base(&ps.base.tf_vector(0).mul_fn(&FourierScalar::cos(r, &k)));
            let x_bad = EpsSeries::from_fn(3, |j| if j == 2 { x.coeff(j).plus(&bump) } else { x.coeff(j).clone() });
            let c = hat_correspondence(&ps, &w, &x_bad).unwrap();
            assert!(c.l_side.mc_holds() && !c.l_side.flow_holds());
            assert!(c.koszul_side.mc_holds() && !c.koszul_side.flow_holds());
            assert!(c.consistent());
        }
    }
}
