//! Truncated leafwise and Poisson cohomology of `T³` with
//! `Π = (∂₁+λ∂₂)∧∂₃`. The leaves are `F_K × S¹`, where `F_K` is the slope-λ
//! foliation of `T²`; on the Fourier mode `(m,n)` the leafwise differential
//! of `F_K` multiplies by `i(m + λn)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::FieldElement;

/// The slope of the leaf direction `∂₁ + λ∂₂`.
#[derive(Clone, Debug, PartialEq)]
pub enum Slope {
    Rational(BigRational),
    /// A real element `a + b√d` of the session field.
    Quadratic(FieldElement),
    /// Rational approximants of a slope known only through them.
    Approximants(Vec<BigRational>),
}

impl Slope {
    pub fn rational(p: i64, q: i64) -> Self {
        Slope::Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn quadratic(x: FieldElement) -> Result<Self> {
        if !x.is_real() {
            return Err(Error::NotReal);
        }
        Ok(match x.as_rational() {
            Some(r) => Slope::Rational(r.clone()),
            None => Slope::Quadratic(x),
        })
    }

    pub fn sqrt(d: u32) -> Result<Self> {
        Self::quadratic(FieldElement::sqrt(d)?)
    }

    fn exact(&self) -> Result<FieldElement> {
        match self {
            Slope::Rational(r) => Ok(FieldElement::from_rational(r.clone())),
            Slope::Quadratic(x) => Ok(x.clone()),
            Slope::Approximants(_) => Err(Error::InexactSlope),
        }
    }
}

/// `Σ_{k=1}^{J} 10^{−k!}` for `J = 1..=j_max`; the `J`-th has denominator `10^{J!}`.
pub fn liouville_approximants(j_max: u32) -> Vec<BigRational> {
    let mut out = Vec::new();
    let mut acc = BigRational::zero();
    let mut fact = 1u32;
    for j in 1..=j_max {
        fact *= j;
        acc += BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), fact as usize));
        out.push(acc.clone());
    }
    out
}

/// `m + λn`.
pub fn divisor(mode: (i64, i64), slope: &Slope) -> Result<FieldElement> {
    let lambda = slope.exact()?;
    Ok(&FieldElement::from_int(mode.0) + &(&lambda * &FieldElement::from_int(mode.1)))
}

/// Largest `1/|m+λn|` over the nonzero modes of a box, with a mode attaining it.
#[derive(Clone, Debug, PartialEq)]
pub enum InverseDivisor {
    /// A nonzero mode with vanishing divisor.
    Unbounded { mode: (i64, i64) },
    Finite { value: FieldElement, mode: (i64, i64) },
}

impl InverseDivisor {
    pub fn value(&self) -> Option<&FieldElement> {
        match self {
            InverseDivisor::Finite { value, .. } => Some(value),
            InverseDivisor::Unbounded { .. } => None,
        }
    }

    pub fn mode(&self) -> (i64, i64) {
        match self {
            InverseDivisor::Finite { mode, .. } | InverseDivisor::Unbounded { mode } => *mode,
        }
    }

    /// `log₁₀` of the value; `None` when unbounded.
    pub fn log10(&self) -> Option<f64> {
        let v = self.value()?;
        match v.as_rational() {
            Some(r) => Some(log10_rational(r)),
            None => Some(v.approx_real().log10()),
        }
    }
}

fn log10_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).abs().log10();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn log10_rational(r: &BigRational) -> f64 {
    log10_bigint(r.numer()) - log10_bigint(r.denom())
}

/// Truncated cohomology of `F_K` on the box `|m|,|n| ≤ N` and the assembled
/// dimensions for the leaves `F_K × S¹` and for `(T³, Π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub cutoff: u64,
    pub h0_leaf: usize,
    pub h1_leaf: usize,
    pub circle: (usize, usize),
    pub h0_foliation: usize,
    pub h1_foliation: usize,
    pub h2_foliation: usize,
    pub h2_poisson: usize,
    /// Modes with zero divisor, sorted.
    pub obstructed: Vec<(i64, i64)>,
    /// `None` when the box has no nonzero mode.
    pub max_inverse_divisor: Option<InverseDivisor>,
}

fn box_modes(cutoff: u64) -> impl Iterator<Item = (i64, i64)> {
    let n = cutoff as i64;
    (-n..=n).flat_map(move |m| (-n..=n).map(move |k| (m, k)))
}

/// Nonzero modes in the box with their absolute divisors, in box order.
fn nonzero_divisors(lambda: &FieldElement, cutoff: u64) -> impl Iterator<Item = ((i64, i64), FieldElement)> + '_ {
    box_modes(cutoff).filter(|&m| m != (0, 0)).map(move |(m, n)| {
        let d = &FieldElement::from_int(m) + &(lambda * &FieldElement::from_int(n));
        ((m, n), d.abs_real().expect("real slope"))
    })
}

fn floor_real(x: &FieldElement) -> i64 {
    let mut f = x.approx_real().floor() as i64;
    while FieldElement::from_int(f).cmp_real(x) == Some(Ordering::Greater) {
        f -= 1;
    }
    while FieldElement::from_int(f + 1).cmp_real(x) != Some(Ordering::Greater) {
        f += 1;
    }
    f
}

/// Smallest `|m+λn|` over nonzero box modes, ties broken by box order. For
/// fixed `n` only the integers next to `−λn` (clipped to the box) compete.
fn min_divisor(lambda: &FieldElement, cutoff: u64) -> Option<InverseDivisor> {
    let big = cutoff as i64;
    let mut best: Option<((i64, i64), FieldElement)> = None;
    let mut zero: Option<(i64, i64)> = None;
    for n in -big..=big {
        let cands = if n == 0 {
            vec![-1, 1]
        } else {
            let f = floor_real(&-(lambda * &FieldElement::from_int(n)));
            vec![f.clamp(-big, big), (f + 1).clamp(-big, big)]
        };
        for m in cands {
            if (m, n) == (0, 0) || m.abs() > big {
                continue;
            }
            let d = (&FieldElement::from_int(m) + &(lambda * &FieldElement::from_int(n))).abs_real().expect("real slope");
            if d.is_zero() {
                zero = Some(zero.map_or((m, n), |z| z.min((m, n))));
                continue;
            }
            let better = match &best {
                None => true,
                Some((mode, b)) => match d.cmp_real(b) {
                    Some(Ordering::Less) => true,
                    Some(Ordering::Equal) => (m, n) < *mode,
                    _ => false,
                },
            };
            if better {
                best = Some(((m, n), d));
            }
        }
    }
    if let Some(mode) = zero {
        return Some(InverseDivisor::Unbounded { mode });
    }
    best.map(|(mode, d)| InverseDivisor::Finite { value: d.inv().expect("nonzero"), mode })
}

/// Modes with `m + λn = 0`, in box order: `m = −λn` must be an integer in the box.
fn zero_modes(lambda: &FieldElement, cutoff: u64) -> Vec<(i64, i64)> {
    let big = cutoff as i64;
    let mut out: Vec<(i64, i64)> = (-big..=big)
        .filter_map(|n| {
            let m = -(lambda * &FieldElement::from_int(n));
            let m = m.as_rational()?;
            (m.is_integer() && m.abs() <= BigRational::from_integer(big.into())).then(|| (m.to_integer().to_i64().unwrap(), n))
        })
        .collect();
    out.sort();
    out
}

/// Kernel and cokernel dimensions of `d/dθ` on circle modes `|k| ≤ N`.
pub fn circle_cohomology(cutoff: u64) -> (usize, usize) {
    let n = cutoff as i64;
    let zeros = (-n..=n).filter(|&k| k == 0).count();
    (zeros, zeros)
}

/// Truncated cohomology at cutoff `N`.
pub fn truncated_cohomology(slope: &Slope, cutoff: u64) -> Result<CohomologyReport> {
    let lambda = slope.exact()?;
    let obstructed = zero_modes(&lambda, cutoff);
    // d: functions → leafwise one-forms is diagonal on modes, so kernel and
    // cokernel both count the zero divisors.
    let h0_leaf = obstructed.len();
    let h1_leaf = obstructed.len();
    let circle = circle_cohomology(cutoff);
    let h0_foliation = h0_leaf * circle.0;
    let h1_foliation = h1_leaf * circle.0 + h0_leaf * circle.1;
    let h2_foliation = h1_leaf * circle.1;
    let mut report = CohomologyReport {
        cutoff,
        h0_leaf,
        h1_leaf,
        circle,
        h0_foliation,
        h1_foliation,
        h2_foliation,
        h2_poisson: 0,
        obstructed,
        max_inverse_divisor: min_divisor(&lambda, cutoff),
    };
    report.h2_poisson = h2_assembly(&report);
    Ok(report)
}

/// `dim H²(F) + dim H¹(F)`, which equals `2·dim H¹(F_K) + dim H⁰(F_K)` when the
/// circle factor has one-dimensional `H⁰` and `H¹`.
pub fn h2_assembly(report: &CohomologyReport) -> usize {
    report.h2_foliation + report.h1_foliation
}

/// Largest cutoff accepted for exact slopes.
pub const EXACT_PROFILE_LIMIT: u64 = 1_000_000;

/// One row of a divisor-growth table.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileRow {
    pub cutoff: BigInt,
    pub max: Option<InverseDivisor>,
}

impl ProfileRow {
    /// `log(value)/log(N)`, the observed growth exponent.
    pub fn growth_exponent(&self) -> Option<f64> {
        if self.cutoff < BigInt::from(2) {
            return None;
        }
        Some(self.max.as_ref()?.log10()? / log10_bigint(&self.cutoff))
    }

    /// Whether the value exceeds `N^k` (always true when unbounded).
    pub fn exceeds_power(&self, k: u32) -> bool {
        match &self.max {
            None => false,
            Some(InverseDivisor::Unbounded { .. }) => true,
            Some(InverseDivisor::Finite { value, .. }) => {
                let bound = BigRational::from_integer(num_traits::pow(self.cutoff.clone(), k as usize));
                value.cmp_real(&FieldElement::from_rational(bound)) == Some(Ordering::Greater)
            }
        }
    }
}

/// Largest inverse divisor for each cutoff. Exact slopes scan `n` exactly.
/// Approximant slopes evaluate the last approximant through its continued
/// fraction: for `n < q_{k+1}` the distance `‖nλ‖` is minimized at the
/// convergent denominator `q_k`.
pub fn divisor_profile(slope: &Slope, cutoffs: &[BigInt]) -> Result<Vec<ProfileRow>> {
    match slope {
        Slope::Approximants(seq) => {
            let lambda = seq.last().cloned().unwrap_or_else(BigRational::zero);
            let conv = convergents(&lambda);
            Ok(cutoffs
                .iter()
                .map(|n| ProfileRow { cutoff: n.clone(), max: best_by_convergents(&lambda, &conv, n) })
                .collect())
        }
        _ => {
            let lambda = slope.exact()?;
            cutoffs
                .iter()
                .map(|n| {
                    let small = n.to_u64().filter(|&v| v <= EXACT_PROFILE_LIMIT);
                    let small = small.ok_or_else(|| Error::CutoffTooLarge(n.to_string()))?;
                    Ok(ProfileRow { cutoff: n.clone(), max: min_divisor(&lambda, small) })
                })
                .collect()
        }
    }
}

/// Convergents `p_k/q_k` of a rational number.
pub fn convergents(x: &BigRational) -> Vec<(BigInt, BigInt)> {
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::new();
    while !den.is_zero() {
        let (a, r) = num.div_mod_floor(&den);
        let p = &a * &p0 + &p1;
        let q = &a * &q0 + &q1;
        out.push((p.clone(), q.clone()));
        (p1, q1, p0, q0) = (p0, q0, p, q);
        (num, den) = (den, r);
    }
    out
}

fn best_by_convergents(lambda: &BigRational, conv: &[(BigInt, BigInt)], n_max: &BigInt) -> Option<InverseDivisor> {
    if !n_max.is_positive() {
        return None;
    }
    // n = 0 contributes 1/|m| ≤ 1 at m = ±1.
    let mut best = InverseDivisor::Finite { value: FieldElement::one(), mode: (1, 0) };
    let mut best_value = BigRational::one();
    for (p, q) in conv {
        if q.is_zero() || q > n_max || &p.abs() > n_max {
            continue;
        }
        let d = (BigRational::from_integer(p.clone()) - lambda * BigRational::from_integer(q.clone())).abs();
        let mode = (-p.to_i64().unwrap_or(i64::MAX), q.to_i64().unwrap_or(i64::MAX));
        if d.is_zero() {
            return Some(InverseDivisor::Unbounded { mode });
        }
        let v = d.recip();
        if v > best_value {
            best_value = v.clone();
            best = InverseDivisor::Finite { value: FieldElement::from_rational(v), mode };
        }
    }
    Some(best)
}

/// First nonzero mode in the box with `1/|m+λn| > bound(m,n)`, by exact comparison.
pub fn first_bound_violation(
    slope: &Slope,
    cutoff: u64,
    bound: impl Fn(i64, i64) -> FieldElement,
) -> Result<Option<(i64, i64)>> {
    let lambda = slope.exact()?;
    for ((m, n), d) in nonzero_divisors(&lambda, cutoff) {
        let lhs = &bound(m, n) * &d;
        if lhs.cmp_real(&FieldElement::one()) == Some(Ordering::Less) {
            return Ok(Some((m, n)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Mat, RingElement};

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rt2() -> Slope {
        Slope::sqrt(2).unwrap()
    }

    /// Zero divisors on the lattice line through `(p,−q)`.
    fn lattice_line_count(p: i64, q: i64, cutoff: i64) -> usize {
        (-cutoff..=cutoff).filter(|k| (k * p).abs() <= cutoff && (k * q).abs() <= cutoff).count()
    }

    #[test]
    fn divisors_of_basic_modes() {
        assert!(divisor((0, 0), &rt2()).unwrap().is_zero());
        assert!(divisor((1, -2), &Slope::rational(1, 2)).unwrap().is_zero());
        let liou = Slope::Approximants(liouville_approximants(2));
        assert!(matches!(divisor((1, 0), &liou), Err(Error::InexactSlope)));
        for m in -50..=50 {
            for n in -50..=50 {
                if (m, n) != (0, 0) {
                    assert!(!divisor((m, n), &rt2()).unwrap().is_zero());
                }
            }
        }
        assert!(Slope::quadratic(FieldElement::i()).is_err());
        assert_eq!(Slope::quadratic(FieldElement::ratio(1, 2)).unwrap(), Slope::rational(1, 2));
    }

    #[test]
    fn irrational_slope_has_finite_cohomology() {
        for n in [5, 10, 20, 40] {
            let r = truncated_cohomology(&rt2(), n).unwrap();
            assert_eq!((r.h0_leaf, r.h1_leaf, r.h2_poisson), (1, 1, 3), "cutoff {n}");
            assert_eq!(r.obstructed, vec![(0, 0)]);
        }
    }

    #[test]
    fn rational_slopes_count_lattice_lines() {
        let r = truncated_cohomology(&Slope::rational(1, 2), 10).unwrap();
        let expected: Vec<(i64, i64)> = (-5..=5).map(|k| (k, -2 * k)).collect();
        let mut got = r.obstructed.clone();
        got.sort();
        let mut exp = expected.clone();
        exp.sort();
        assert_eq!(got, exp);
        assert_eq!((r.h0_leaf, r.h1_leaf, r.h2_poisson), (11, 11, 33));
        assert!(matches!(r.max_inverse_divisor, Some(InverseDivisor::Unbounded { .. })));
        let zero = truncated_cohomology(&Slope::rational(0, 1), 3).unwrap();
        assert_eq!(zero.h0_leaf, 7);
        assert!(zero.obstructed.iter().all(|&(m, _)| m == 0));
        for (p, q) in [(1, 2), (2, 3), (-3, 1), (5, 4), (0, 1)] {
            let mut prev = 0;
            for n in 0..=12 {
                let r = truncated_cohomology(&Slope::rational(p, q), n).unwrap();
                let g = gcd(p, q);
                let (pp, qq) = (p / g, q / g);
                assert_eq!(r.h0_leaf, lattice_line_count(pp, qq, n as i64), "λ = {p}/{q}, N = {n}");
                let big = pp.abs().max(qq.abs());
                assert_eq!(r.h0_leaf, 2 * (n as usize / big as usize) + 1);
                assert!(r.h0_leaf >= prev);
                prev = r.h0_leaf;
                for &(m, k) in &r.obstructed {
                    assert!(r.obstructed.contains(&(-m, -k)));
                }
            }
        }
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn counts_match_a_diagonal_rank_computation() {
        for slope in [rt2(), Slope::rational(1, 2), Slope::rational(-1, 1), Slope::rational(0, 1)] {
            for n in [1u64, 2, 3] {
                let modes: Vec<(i64, i64)> = box_modes(n).collect();
                let lambda = slope.exact().unwrap();
                let d = Mat::from_fn(modes.len(), modes.len(), |a, b| {
                    if a != b {
                        return FieldElement::zero();
                    }
                    let (m, k) = modes[a];
                    &FieldElement::i()
                        * &(&FieldElement::from_int(m) + &(&lambda * &FieldElement::from_int(k)))
                });
                let rank = d.rank();
                let r = truncated_cohomology(&slope, n).unwrap();
                assert_eq!(r.h0_leaf, modes.len() - rank);
                assert_eq!(r.h1_leaf, d.transpose().rows() - rank);
                assert!(d.is_zero_elem() == (rank == 0));
            }
        }
    }

    #[test]
    fn quadratic_profile_respects_the_norm_bound() {
        // |m+√2n|·|m−√2n| = |m²−2n²| ≥ 1, so 1/|m+√2n| ≤ |m|+√2|n|.
        let s2 = FieldElement::sqrt(2).unwrap();
        let v = first_bound_violation(&rt2(), 50, |m, n| {
            &FieldElement::from_int(m.abs()) + &(&s2 * &FieldElement::from_int(n.abs()))
        })
        .unwrap();
        assert_eq!(v, None);
        let c = &FieldElement::one() + &s2;
        for row in divisor_profile(&rt2(), &big(&[1, 2, 5, 10, 20, 50])).unwrap() {
            let val = row.max.as_ref().unwrap().value().unwrap().clone();
            let bound = &c * &FieldElement::from_int(row.cutoff.to_i64().unwrap());
            assert_ne!(val.cmp_real(&bound), Some(Ordering::Greater), "cutoff {}", row.cutoff);
        }
    }

    #[test]
    fn the_sum_bound_fails_for_sqrt_two() {
        let v = first_bound_violation(&rt2(), 50, |m, n| FieldElement::from_int(m.abs() + n.abs() + 1)).unwrap();
        assert!(v.is_some());
        let mode = (7, -5);
        let d = divisor(mode, &rt2()).unwrap().abs_real().unwrap();
        let product = &FieldElement::from_int(13) * &d;
        assert_eq!(product.cmp_real(&FieldElement::one()), Some(Ordering::Less));
    }

    #[test]
    fn rational_profile_is_unbounded_once_the_line_enters() {
        let rows = divisor_profile(&Slope::rational(1, 2), &big(&[1, 2, 3, 10])).unwrap();
        assert!(matches!(rows[0].max, Some(InverseDivisor::Finite { .. })));
        for row in &rows[1..] {
            assert!(matches!(row.max, Some(InverseDivisor::Unbounded { .. })));
        }
    }

    #[test]
    fn liouville_approximants_have_factorial_denominators() {
        let a = liouville_approximants(4);
        assert_eq!(a[0], BigRational::new(1.into(), 10.into()));
        assert_eq!(a[1], BigRational::new(11.into(), 100.into()));
        for (j, x) in a.iter().enumerate() {
            let fact: usize = (1..=j + 1).product();
            assert_eq!(*x.denom(), num_traits::pow(BigInt::from(10), fact));
        }
    }

    #[test]
    fn convergent_profile_matches_brute_force() {
        let lambda = liouville_approximants(3).pop().unwrap();
        let slope = Slope::Approximants(vec![lambda.clone()]);
        let exact = Slope::Rational(lambda.clone());
        let cutoffs = big(&[1, 3, 9, 10, 11, 50, 99, 100, 101, 300]);
        let fast = divisor_profile(&slope, &cutoffs).unwrap();
        let slow = divisor_profile(&exact, &cutoffs).unwrap();
        for (f, s) in fast.iter().zip(&slow) {
            assert_eq!(f.max.as_ref().unwrap().value(), s.max.as_ref().unwrap().value(), "cutoff {}", f.cutoff);
        }
        let conv = convergents(&BigRational::new(355.into(), 113.into()));
        assert_eq!(conv.last().unwrap(), &(BigInt::from(355), BigInt::from(113)));
        assert_eq!(conv[1], (BigInt::from(22), BigInt::from(7)));
    }

    #[test]
    fn liouville_profile_outgrows_fixed_powers() {
        let slope = Slope::Approximants(liouville_approximants(6));
        // Cutoffs at the approximant denominators 10^{J!}, J = 1..5.
        let cutoffs: Vec<BigInt> =
            liouville_approximants(5).iter().map(|x| x.denom().clone()).collect();
        let rows = divisor_profile(&slope, &cutoffs).unwrap();
        let exps: Vec<f64> = rows.iter().map(|r| r.growth_exponent().unwrap()).collect();
        assert!(exps[1..].windows(2).all(|w| w[1] > w[0]), "{exps:?}");
        assert!(!rows[3].exceeds_power(4));
        assert!(rows[4].exceeds_power(4));
        assert!((exps[4] - 5.0).abs() < 1e-6, "{exps:?}");
        let sqrt_rows = divisor_profile(&rt2(), &big(&[50])).unwrap();
        assert!(!sqrt_rows[0].exceeds_power(2));
        assert!(matches!(divisor_profile(&rt2(), &big(&[2_000_000])), Err(Error::CutoffTooLarge(_))));
    }

    fn min_by_enumeration(lambda: &FieldElement, cutoff: u64) -> Option<InverseDivisor> {
        let mut best: Option<((i64, i64), FieldElement)> = None;
        for (mode, d) in nonzero_divisors(lambda, cutoff) {
            if d.is_zero() {
                return Some(InverseDivisor::Unbounded { mode });
            }
            if best.as_ref().is_none_or(|(_, b)| d.cmp_real(b) == Some(Ordering::Less)) {
                best = Some((mode, d));
            }
        }
        best.map(|(mode, d)| InverseDivisor::Finite { value: d.inv().unwrap(), mode })
    }

    #[test]
    fn scan_over_n_matches_box_enumeration() {
        let s2 = FieldElement::sqrt(2).unwrap();
        let s3 = FieldElement::sqrt(3).unwrap();
        let half = FieldElement::from_rational(BigRational::new(1.into(), 2.into()));
        let slopes = [
            s2.clone(),
            -&s2,
            &s2 * &FieldElement::from_int(3),
            &half + &s2,
            s3.clone(),
            half.clone(),
            FieldElement::from_rational(BigRational::new((-7).into(), 3.into())),
            FieldElement::from_int(5),
            FieldElement::zero(),
        ];
        for lambda in &slopes {
            for n in [1, 2, 3, 7, 20, 41] {
                assert_eq!(min_divisor(lambda, n), min_by_enumeration(lambda, n), "λ = {lambda}, N = {n}");
                let zeros: Vec<(i64, i64)> = box_modes(n)
                    .filter(|&(a, b)| (&FieldElement::from_int(a) + &(lambda * &FieldElement::from_int(b))).is_zero())
                    .collect();
                assert_eq!(zero_modes(lambda, n), zeros, "λ = {lambda}, N = {n}");
            }
        }
    }
}
