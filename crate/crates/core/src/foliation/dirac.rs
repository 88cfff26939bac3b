//! Gauge transforms by `γ`, the Dirac exponential `Z ↦ Π + Z^γ`, and the
//! Maurer–Cartan equation of the foliation algebra on ε-series.

use num_rational::BigRational;

use super::brackets::FoliationAlgebra;
use super::multivector::{schouten, MultiVector, Skew};
use super::setup::{mm, Setup};
use crate::error::{Error, Result};
use crate::exactnum::{
    factorial, series_geometric_inverse, EpsSeries, FieldElement, FourierScalar, Mat, RingElement, TorusPoint,
};
use crate::linfty::{mc_residual, SeriesInstance};

pub type SeriesMultiVector = EpsSeries<MultiVector>;

fn id_mat(s: &Setup) -> Mat<FourierScalar> {
    Mat::identity(s.dim, &FourierScalar::zero(s.ring))
}

/// `Z♯(id + σγ♭Z♯)^{-1}` coefficientwise; `σ = ±1`.
fn transform_by(s: &Setup, z: &SeriesMultiVector, sigma: i64) -> Result<SeriesMultiVector> {
    if !z.coeff(0).is_zero() {
        return Err(Error::NonSmallDeformation);
    }
    let zs = z.map(|w| w.sharp());
    let g = s.gamma_flat.scale_by(&FourierScalar::constant(s.ring, FieldElement::from_int(sigma)));
    let k = z.order();
    let id = id_mat(s);
    let sum = EpsSeries::from_fn(k, |j| if j == 0 { id.clone() } else { mm(&g, zs.coeff(j)) });
    let inv = series_geometric_inverse(&sum)?;
    let out = zs.times(&inv);
    out.try_map(|m| Skew::from_sharp(m, s.dim))
}

/// `Z^γ` with `(Z^γ)♯ = Z♯(id + γ♭Z♯)^{-1}`; the output is checked to be skew.
pub fn gauge_transform_series(s: &Setup, z: &SeriesMultiVector) -> Result<SeriesMultiVector> {
    transform_by(s, z, 1)
}

/// Inverse of [`gauge_transform_series`]: `W♯(id − γ♭W♯)^{-1}`.
pub fn inverse_gauge_transform_series(s: &Setup, w: &SeriesMultiVector) -> Result<SeriesMultiVector> {
    transform_by(s, w, -1)
}

/// `exp_G(Z) = Π + Z^γ`.
pub fn dirac_exp(s: &Setup, z: &SeriesMultiVector) -> Result<SeriesMultiVector> {
    let zg = gauge_transform_series(s, z)?;
    let mut coeffs = zg.into_coeffs();
    coeffs[0] = coeffs[0].plus(&s.pi);
    Ok(EpsSeries::new(coeffs))
}

/// Cauchy product of the Schouten bracket.
pub fn schouten_series(a: &SeriesMultiVector, b: &SeriesMultiVector) -> SeriesMultiVector {
    a.bilinear(b, |x, y| schouten(x, y).expect("same manifold"), |x, y| x.plus(&y))
}

/// `[Π,Z] + ½[Z,Z]_γ − (1/6)(Z♯∧Z♯∧Z♯)Υ` truncated at the order of `Z`;
/// every coefficient of `Z` must be good.
pub fn mc_residual_g(s: &Setup, z: &SeriesMultiVector) -> Result<SeriesMultiVector> {
    for w in z.coeffs() {
        if w.degree() != 2 && !w.is_zero() {
            return Err(Error::DegreeError("deformation must be a bivector series".into()));
        }
        s.check_good(w)?;
    }
    let alg = FoliationAlgebra::new(s);
    let inst = SeriesInstance::new(&alg, z.order());
    let z2 = z.map(|w| w.with_degree(2));
    mc_residual(&inst, &z2)
}

/// `Σ_j ε^j/j! ad_X^j Π`, a formal family of Poisson bivectors.
pub fn lie_series(pi: &MultiVector, x: &MultiVector, order: usize) -> SeriesMultiVector {
    let mut cur = pi.clone();
    let mut coeffs = vec![pi.clone()];
    for j in 1..=order {
        cur = schouten(x, &cur).expect("same manifold");
        coeffs.push(cur.scale(&FieldElement::from_rational(factorial(j).recip())));
    }
    EpsSeries::new(coeffs)
}

/// The deformation `Z` with `exp_G(Z) = P` for a series `P` with `P₀ = Π`.
pub fn dirac_log(s: &Setup, p: &SeriesMultiVector) -> Result<SeriesMultiVector> {
    let mut coeffs = p.coeffs().to_vec();
    coeffs[0] = coeffs[0].minus(&s.pi);
    inverse_gauge_transform_series(s, &EpsSeries::new(coeffs))
}

fn eval_series_sharp(z: &SeriesMultiVector, p: &TorusPoint, eps: &BigRational) -> Result<Mat<FieldElement>> {
    let dim = z.coeff(0).dim();
    let mut acc = Mat::zeros(dim, dim, &FieldElement::zero());
    let mut pow = FieldElement::one();
    let e = FieldElement::from_rational(eps.clone());
    for w in z.coeffs() {
        if !w.is_zero() {
            let m = w.with_degree(2).sharp().eval(p)?;
            acc = acc.plus(&m.map(|x| x * &pow));
        }
        pow = &pow * &e;
    }
    Ok(acc)
}

/// Whether `gr(Π + Z^γ)` equals `R_Π R_γ gr(Z)` at a point, with `Z`
/// evaluated as a polynomial at `ε = eps` and all inverses taken exactly.
pub fn graph_transport_check(s: &Setup, z: &SeriesMultiVector, p: &TorusPoint, eps: &BigRational) -> Result<bool> {
    let n = s.dim;
    let zs = eval_series_sharp(z, p, eps)?;
    let g = s.gamma_flat.eval(p)?;
    let pi = s.pi_sharp.eval(p)?;
    let id = Mat::identity(n, &FieldElement::zero());
    let sm = id.plus(&g.try_mul(&zs)?);
    let s_inv = sm.inverse()?;
    let e_sharp = pi.plus(&zs.try_mul(&s_inv)?);
    let left = stack(&e_sharp, &id);
    let right = stack(&zs.plus(&pi.try_mul(&sm)?), &sm);
    Ok(left.same_column_space(&right))
}

fn stack(top: &Mat<FieldElement>, bottom: &Mat<FieldElement>) -> Mat<FieldElement> {
    let r = top.rows();
    Mat::from_fn(r + bottom.rows(), top.cols(), |i, j| if i < r { top.get(i, j).clone() } else { bottom.get(i - r, j).clone() })
}

/// Rank of the truncated `(Π + Z^γ)♯` evaluated at a point and `ε = eps`.
pub fn exp_rank_at(s: &Setup, z: &SeriesMultiVector, p: &TorusPoint, eps: &BigRational) -> Result<usize> {
    let e = dirac_exp(s, z)?;
    Ok(eval_series_sharp(&e, p, eps)?.rank())
}

/// Rank of `Π + Z^γ` at a point with `Z` summed at `ε = eps` and
/// `(id + γ♭Z♯)^{-1}` inverted exactly, so no truncation enters.
pub fn exact_exp_rank_at(s: &Setup, z: &SeriesMultiVector, p: &TorusPoint, eps: &BigRational) -> Result<usize> {
    let zs = eval_series_sharp(z, p, eps)?;
    let g = s.gamma_flat.eval(p)?;
    let id = Mat::identity(s.dim, &FieldElement::zero());
    let inv = id.plus(&g.try_mul(&zs)?).inverse()?;
    Ok(s.pi_sharp.eval(p)?.plus(&zs.try_mul(&inv)?).rank())
}

/// Lowest `ε`-order at which the MC residual of `Z` and `[exp_G Z, exp_G Z]`
/// are nonzero (`None` when zero through the truncation order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub mc_order: Option<usize>,
    pub poisson_order: Option<usize>,
}

impl TheoremCheck {
    /// MC through the order ⟺ Poisson through the order.
    pub fn equivalence_holds(&self) -> bool {
        self.mc_order.is_none() == self.poisson_order.is_none()
    }
}

fn first_nonzero(z: &SeriesMultiVector) -> Option<usize> {
    z.coeffs().iter().position(|w| !w.is_zero())
}

pub fn main_theorem_check(s: &Setup, z: &SeriesMultiVector) -> Result<TheoremCheck> {
    let mc = mc_residual_g(s, z)?;
    let e = dirac_exp(s, z)?;
    let sq = schouten_series(&e, &e);
    Ok(TheoremCheck { mc_order: first_nonzero(&mc), poisson_order: first_nonzero(&sq) })
}

/// `ε^j`-coefficient-wise zero test.
pub fn series_is_zero(z: &SeriesMultiVector) -> bool {
    z.coeffs().iter().all(|w| w.is_zero())
}

/// Bivector series `Σ ε^j W_j` from a list of coefficients `W_1..W_K`.
pub fn small_series(s: &Setup, higher: Vec<MultiVector>) -> SeriesMultiVector {
    let mut coeffs = vec![Skew::zero(s.ring, s.dim, 2)];
    coeffs.extend(higher);
    EpsSeries::new(coeffs)
}
