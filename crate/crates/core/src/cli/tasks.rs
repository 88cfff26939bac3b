//! Executes the checks listed in a manifest.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::{parse_constant, parse_count, print_multivector};
use super::manifest::{Manifest, TaskSpec};
use super::report::{CheckRecord, Report};
use crate::bigbracket::{m2_closed_form, m2_two_forms, taylor_m, SuperChart, SuperPoly};
use crate::error::{Error, Result};
use crate::exactnum::{EpsSeries, FieldElement, TorusPoint};
use crate::foliation::dirac::{exact_exp_rank_at, main_theorem_check};
use crate::foliation::random::{random_good, random_multivector, Shape};
use crate::foliation::{FoliationAlgebra, MultiVector, Setup, SplittingPair, TernarySign};
use crate::gaugeequiv::{
    base_mc_residual, block_gauge_transform, direct_product_transform, gauge_flow_defect,
    gauge_flow_defect_by_coefficients, hat_correspondence, koszul_flow_defect, koszul_mc_defect,
    koszul_square_residual, lift, square_equivalence_residuals, ProductSetup,
};
use crate::kronecker::{
    divisor_profile, first_bound_violation, h2_assembly, liouville_approximants, truncated_cohomology, Slope,
};
use crate::linfty::{jacobi_residual, GradedElements};

/// Names accepted on `check = <name> …` lines.
pub const TASK_NAMES: [&str; 9] =
    ["jacobi", "mc", "gauge", "square", "blocks", "splitting-independence", "m2", "cohomology", "profile"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Overrides the manifest seed.
    pub seed: Option<u64>,
    /// Overrides the truncation order of the deformation.
    pub order: Option<usize>,
}

const SMALL: Shape = Shape { terms: 1, max_freq: 1, max_coeff: 2 };

pub fn run_tasks(m: &Manifest, opts: RunOptions) -> Report {
    let seed = opts.seed.unwrap_or(m.seed);
    let mut report = Report::default();
    report.env.push(("seed".into(), seed.to_string()));
    report.env.push(("dim".into(), m.dim.to_string()));
    if let Some(d) = m.radical {
        report.env.push(("radical".into(), d.to_string()));
    }
    if let Some(k) = opts.order {
        report.env.push(("order".into(), k.to_string()));
    }
    for (i, spec) in m.tasks.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let outcome = catch_unwind(AssertUnwindSafe(|| run_one(m, spec, opts, &mut rng)));
        let record = match outcome {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => CheckRecord::error(&spec.name, e.to_string()),
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "internal panic".into());
                CheckRecord::error(&spec.name, format!("internal error: {msg}"))
            }
        };
        report.checks.push(record);
    }
    report
}

fn run_one(m: &Manifest, spec: &TaskSpec, opts: RunOptions, rng: &mut ChaCha8Rng) -> Result<CheckRecord> {
    match spec.name.as_str() {
        "jacobi" => jacobi(m, spec, rng),
        "mc" => mc(m, spec, opts, rng),
        "gauge" => gauge(m, spec),
        "square" => square(m, spec),
        "blocks" => blocks(m, spec),
        "splitting-independence" => splitting(m, spec, rng),
        "m2" => m2(m, spec, rng),
        "cohomology" => cohomology(m, spec),
        "profile" => profile(m, spec),
        other => Err(Error::Semantic { line: spec.line, msg: format!("unknown check '{other}'") }),
    }
}

fn count(spec: &TaskSpec, key: &str, default: usize) -> Result<usize> {
    match spec.params.get(key) {
        None => Ok(default),
        Some(v) => parse_count(v)
            .ok_or_else(|| Error::Semantic { line: spec.line, msg: format!("{key} must be a non-negative integer") }),
    }
}

fn rational_param(spec: &TaskSpec, key: &str, radical: Option<u32>, default: BigRational) -> Result<BigRational> {
    match spec.params.get(key) {
        None => Ok(default),
        Some(v) => parse_constant(v, radical, spec.line, 1)?
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::Semantic { line: spec.line, msg: format!("{key} must be rational") }),
    }
}

/// `lambda=<expr>` or `liouville=<J>`.
pub fn parse_slope(spec: &TaskSpec, radical: Option<u32>) -> Result<Slope> {
    if let Some(j) = spec.params.get("liouville") {
        let j = parse_count(j)
            .filter(|&j| (1..=6).contains(&j))
            .ok_or_else(|| Error::Semantic { line: spec.line, msg: "liouville must be between 1 and 6".into() })?;
        return Ok(Slope::Approximants(liouville_approximants(j as u32)));
    }
    let text = spec
        .params
        .get("lambda")
        .ok_or_else(|| Error::Semantic { line: spec.line, msg: "missing lambda".into() })?;
    Slope::quadratic(parse_constant(text, radical, spec.line, 1)?)
}

fn random_degree(rng: &mut ChaCha8Rng, dim: usize) -> usize {
    rng.gen_range(0..=dim.min(3))
}

fn jacobi(m: &Manifest, spec: &TaskSpec, rng: &mut ChaCha8Rng) -> Result<CheckRecord> {
    let s = m.setup()?;
    let arity = count(spec, "arity", 3)?;
    let trials = count(spec, "trials", 10)?;
    let sign = match spec.params.get("ternary").map(String::as_str) {
        None | Some("corrected") => TernarySign::Corrected,
        Some("uncorrected") => TernarySign::Uncorrected,
        Some(other) => {
            return Err(Error::Semantic { line: spec.line, msg: format!("ternary must be corrected or uncorrected, got {other}") })
        }
    };
    let alg = FoliationAlgebra::with_ternary(&s, sign);
    let ctx = m.context();
    let mut rec = CheckRecord::new(&spec.name);
    let mut nonzero = 0;
    for t in 0..trials {
        let args: Vec<MultiVector> = (0..arity)
            .map(|_| {
                let d = random_degree(rng, s.dim);
                random_multivector(rng, s.ring, s.dim, d, Shape::default())
            })
            .collect();
        let r = jacobi_residual(&alg, &args)?;
        if !alg.is_zero(&r) {
            nonzero += 1;
            let word: Vec<String> = args.iter().map(|a| print_multivector(a, &ctx)).collect();
            rec.fail(format!("trial {t}: [{}]", word.join(" | ")));
        }
    }
    rec.value("arity", arity);
    rec.value("trials", trials);
    rec.value("nonzero", nonzero);
    Ok(rec)
}

fn setup_with_deformation(m: &Manifest, spec: &TaskSpec, order: Option<usize>) -> Result<(Setup, EpsSeries<MultiVector>)> {
    let s = m.setup()?;
    let z = m
        .deformation_series(order)
        .ok_or_else(|| Error::Semantic { line: spec.line, msg: "check needs a [deformation] section".into() })?;
    for w in z.coeffs() {
        s.check_good(w)?;
    }
    Ok((s, z))
}

fn order_label(o: Option<usize>) -> String {
    o.map_or_else(|| "none".into(), |k| k.to_string())
}

fn mc(m: &Manifest, spec: &TaskSpec, opts: RunOptions, rng: &mut ChaCha8Rng) -> Result<CheckRecord> {
    let (s, z) = setup_with_deformation(m, spec, opts.order)?;
    let points = count(spec, "points", 5)?;
    let eps = rational_param(spec, "eps", m.radical, BigRational::new(1.into(), 10.into()))?;
    let check = main_theorem_check(&s, &z)?;
    let mut rec = CheckRecord::new(&spec.name);
    rec.value("order", z.order());
    rec.value("mc_order", order_label(check.mc_order));
    rec.value("poisson_order", order_label(check.poisson_order));
    if !check.equivalence_holds() {
        rec.fail(format!(
            "MC residual first nonzero at {}, Poisson defect at {}",
            order_label(check.mc_order),
            order_label(check.poisson_order)
        ));
    }
    let leaf = s.tf_frame.len();
    let mut ranks = Vec::with_capacity(points);
    for _ in 0..points {
        let p = TorusPoint::angles((0..s.dim).map(|_| rng.gen_range(0..8)).collect());
        let r = exact_exp_rank_at(&s, &z, &p, &eps)?;
        if check.mc_order.is_none() && r != leaf {
            rec.fail(format!("rank {r} at angles {:?} (eighths of a turn), expected {leaf}", p.eighths));
        }
        ranks.push(r.to_string());
    }
    rec.value("eps", &eps);
    rec.value("ranks", ranks.join(","));
    Ok(rec)
}

fn product_setup(m: &Manifest, spec: &TaskSpec) -> Result<(ProductSetup, EpsSeries<MultiVector>, EpsSeries<MultiVector>)> {
    let s = m.setup()?;
    let fam = m
        .gauge
        .as_ref()
        .ok_or_else(|| Error::Semantic { line: spec.line, msg: "check needs a [gauge] section".into() })?;
    let t_bound = count(spec, "tbound", fam.t_bound)?;
    let ps = ProductSetup::new(&s, t_bound)?;
    Ok((ps, EpsSeries::new(fam.w.clone()), EpsSeries::new(fam.x.clone())))
}

fn first_nonzero(z: &EpsSeries<MultiVector>) -> Option<usize> {
    z.coeffs().iter().position(|w| !w.is_zero())
}

fn gauge(m: &Manifest, spec: &TaskSpec) -> Result<CheckRecord> {
    let (ps, w, x) = product_setup(m, spec)?;
    let direct = gauge_flow_defect(&ps, &w, &x);
    let by_coeffs = gauge_flow_defect_by_coefficients(&ps, &w, &x)?;
    let mut rec = CheckRecord::new(&spec.name);
    if let Some(j) = (0..direct.order().max(by_coeffs.order()) + 1).find(|&j| direct.coeff(j) != by_coeffs.coeff(j)) {
        rec.fail(format!("the two flow defects differ at order {j}"));
    }
    rec.value("mc_order", order_label(first_nonzero(&base_mc_residual(&ps, &w)?)));
    rec.value("flow_order", order_label(first_nonzero(&direct)));
    Ok(rec)
}

fn square(m: &Manifest, spec: &TaskSpec) -> Result<CheckRecord> {
    let (ps, w, x) = product_setup(m, spec)?;
    let l = lift(&ps, &w, &x)?;
    let r = square_equivalence_residuals(&ps, &l)?;
    let k = koszul_square_residual(&ps, &l)?;
    let mut rec = CheckRecord::new(&spec.name);
    if r.no_s != base_mc_residual(&ps, &w)? {
        rec.fail("s-free part differs from the MC residual of W");
    }
    if r.s != gauge_flow_defect(&ps, &w, &x) {
        rec.fail("∂_s part differs from the gauge flow defect");
    }
    if k.no_s != koszul_mc_defect(&ps, &w) || k.s != koszul_flow_defect(&ps, &w, &x) {
        rec.fail("Koszul-bracket square differs from its defects");
    }
    rec.value("mc_holds", r.mc_holds());
    rec.value("flow_holds", r.flow_holds());
    Ok(rec)
}

fn blocks(m: &Manifest, spec: &TaskSpec) -> Result<CheckRecord> {
    let (ps, w, x) = product_setup(m, spec)?;
    let l = lift(&ps, &w, &x)?;
    let block = block_gauge_transform(&ps, &l)?.assemble(ps.ring());
    let direct = direct_product_transform(&ps, &l)?;
    let mut rec = CheckRecord::new(&spec.name);
    if let Some(j) = (0..=direct.order()).find(|&j| block.coeff(j) != direct.coeff(j)) {
        rec.fail(format!("block and direct transforms differ at order {j}"));
    }
    let hat = hat_correspondence(&ps, &w, &x)?;
    if !hat.consistent() {
        rec.fail("hat correspondence is inconsistent");
    }
    rec.value("order", direct.order());
    Ok(rec)
}

fn splitting(m: &Manifest, spec: &TaskSpec, rng: &mut ChaCha8Rng) -> Result<CheckRecord> {
    let s = m.setup()?;
    if m.h.is_empty() {
        return Err(Error::Semantic { line: spec.line, msg: "check needs a second complement h1, h2, …".into() });
    }
    let pair = SplittingPair::new(&s, m.h.clone())?;
    let trials = count(spec, "trials", 6)?;
    let pairs = count(spec, "pairs", 10)?;
    let ctx = m.context();
    let mut rec = CheckRecord::new(&spec.name);
    for t in 0..trials {
        let len = 1 + t % 3;
        let word: Vec<MultiVector> = (0..len)
            .map(|_| {
                let d = rng.gen_range(0..=s.dim.min(2));
                random_multivector(rng, s.ring, s.dim, d, SMALL)
            })
            .collect();
        if !pair.intertwine(&word)?.is_zero() {
            let shown: Vec<String> = word.iter().map(|a| print_multivector(a, &ctx)).collect();
            rec.fail(format!("exp N does not intertwine on [{}]", shown.join(" | ")));
        }
    }
    for _ in 0..pairs {
        let (d1, d2) = (rng.gen_range(1..=s.dim.min(3)), rng.gen_range(1..=s.dim.min(3)));
        let a = random_good(rng, &s, d1, Shape::default());
        let b = random_good(rng, &s, d2, Shape::default());
        if !s.is_good(&pair.n2(&a, &b)) {
            rec.fail(format!("N2 of good inputs is not good: {} | {}", print_multivector(&a, &ctx), print_multivector(&b, &ctx)));
        }
    }
    rec.value("words", trials);
    rec.value("pairs", pairs);
    rec.value("xi_zero", pair.xi.is_zero());
    Ok(rec)
}

fn m2(m: &Manifest, spec: &TaskSpec, rng: &mut ChaCha8Rng) -> Result<CheckRecord> {
    let trials = count(spec, "trials", 20)?;
    let r = count(spec, "rank", m.dim.clamp(2, 4))?;
    if r < 2 {
        return Err(Error::Semantic { line: spec.line, msg: "rank must be at least 2".into() });
    }
    let c = SuperChart::new(r, r);
    let mut rec = CheckRecord::new(&spec.name);
    for t in 0..trials {
        let (d1, d2) = (1 + rng.gen_range(0..r.min(3)), 1 + rng.gen_range(0..r.min(3)));
        let eta = random_multivector(rng, c.ring, r, 2, Shape::default());
        let w1 = random_multivector(rng, c.ring, r, d1, Shape::default());
        let w2 = random_multivector(rng, c.ring, r, d2, Shape::default());
        let (e, f1, f2) = (SuperPoly::from_multivector(c, &eta), SuperPoly::from_form(c, &w1), SuperPoly::from_form(c, &w2));
        let closed = m2_closed_form(&eta, &w1, &w2);
        if taylor_m(&e, &[f1.clone(), f2.clone()])?.to_form(d1 + d2 - 2)? != closed {
            rec.fail(format!("case {t}: iterated bracket differs from the closed form"));
        }
        if !taylor_m(&e, &[f1.clone()])?.is_zero() || !taylor_m(&e, &[f1.clone(), f2, f1])?.is_zero() {
            rec.fail(format!("case {t}: unary or ternary bracket is nonzero"));
        }
        if d1 == 2 && d2 == 2 && m2_two_forms(&eta, &w1, &w2)? != closed {
            rec.fail(format!("case {t}: matrix form differs from the closed form"));
        }
    }
    rec.value("rank", r);
    rec.value("trials", trials);
    Ok(rec)
}

fn cohomology(m: &Manifest, spec: &TaskSpec) -> Result<CheckRecord> {
    let slope = parse_slope(spec, m.radical)?;
    let cutoff = count(spec, "cutoff", 10)? as u64;
    let rep = truncated_cohomology(&slope, cutoff)?;
    let mut rec = CheckRecord::new(&spec.name);
    rec.value("cutoff", cutoff);
    rec.value("H0", rep.h0_leaf);
    rec.value("H1", rep.h1_leaf);
    rec.value("H0_foliation", rep.h0_foliation);
    rec.value("H1_foliation", rep.h1_foliation);
    rec.value("H2_foliation", rep.h2_foliation);
    rec.value("H2_F", rep.h2_poisson);
    let obstructed: Vec<String> = rep.obstructed.iter().map(|(a, b)| format!("({a},{b})")).collect();
    rec.value("obstructed", if obstructed.is_empty() { "none".into() } else { obstructed.join(",") });
    if let Some(inv) = &rep.max_inverse_divisor {
        rec.value("max_inverse_divisor_log10", inv.log10().map_or_else(|| "inf".into(), |v| format!("{v:.6}")));
    }
    if h2_assembly(&rep) != rep.h2_poisson {
        rec.fail("assembled H2 disagrees with the direct count");
    }
    for (key, got) in [("expect_h0", rep.h0_leaf), ("expect_h1", rep.h1_leaf), ("expect_h2", rep.h2_poisson)] {
        if let Some(v) = spec.params.get(key) {
            if parse_count(v) != Some(got) {
                rec.fail(format!("{key}={v}, computed {got}"));
            }
        }
    }
    if let Some(b) = spec.params.get("bound") {
        let lambda_abs = match &slope {
            Slope::Quadratic(x) => x.abs_real().ok_or(Error::NotReal)?,
            Slope::Rational(r) => FieldElement::from_rational(r.clone()).abs_real().ok_or(Error::NotReal)?,
            Slope::Approximants(_) => return Err(Error::InexactSlope),
        };
        let v = match b.as_str() {
            "sum" => first_bound_violation(&slope, cutoff, |a, n| FieldElement::from_int(a.abs() + n.abs() + 1))?,
            "norm" => first_bound_violation(&slope, cutoff, |a, n| {
                &FieldElement::from_int(a.abs()) + &(&lambda_abs * &FieldElement::from_int(n.abs()))
            })?,
            other => return Err(Error::Semantic { line: spec.line, msg: format!("bound must be sum or norm, got {other}") }),
        };
        if let Some((a, n)) = v {
            rec.fail(format!("1/|m + lambda n| exceeds the {b} bound at (m, n) = ({a}, {n})"));
        }
    }
    Ok(rec)
}

fn profile(m: &Manifest, spec: &TaskSpec) -> Result<CheckRecord> {
    let slope = parse_slope(spec, m.radical)?;
    let cutoffs: Vec<BigInt> = match spec.params.get("cutoffs") {
        None => [1u32, 10, 100, 1000].iter().map(|&c| BigInt::from(c)).collect(),
        Some(list) => list
            .split(',')
            .map(|c| c.parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Semantic { line: spec.line, msg: "cutoffs must be a comma-separated list of integers".into() })?,
    };
    let power = spec.params.get("power").map(|p| p.parse::<u32>()).transpose().map_err(|_| Error::Semantic {
        line: spec.line,
        msg: "power must be a non-negative integer".into(),
    })?;
    let rows = divisor_profile(&slope, &cutoffs)?;
    let mut rec = CheckRecord::new(&spec.name);
    for row in &rows {
        let log = row.max.as_ref().and_then(|m| m.log10());
        let exp = row.growth_exponent();
        rec.value(
            &format!("N={}", row.cutoff),
            format!(
                "log10_max={} exponent={}",
                log.map_or_else(|| "inf".into(), |v| format!("{v:.4}")),
                exp.map_or_else(|| "n/a".into(), |v| format!("{v:.4}"))
            ),
        );
        if let Some(k) = power {
            if row.exceeds_power(k) {
                rec.fail(format!("max 1/|m + lambda n| exceeds N^{k} at N = {}", row.cutoff));
            }
        }
    }
    Ok(rec)
}

/// The `cohomology` subcommand: the truncated cohomology at one cutoff, plus a
/// divisor profile when `profile_cutoffs` is given. `sqrt(d)` in `lambda` selects
/// the radicand; a bare `rt` means `√2`.
pub fn cohomology_report(lambda: &str, cutoff: u64, profile_cutoffs: Option<&[BigInt]>) -> Result<Report> {
    let (text, radical) = normalize_radical(lambda)?;
    let mut params = std::collections::BTreeMap::new();
    params.insert("lambda".to_string(), text);
    params.insert("cutoff".to_string(), cutoff.to_string());
    let spec = TaskSpec { name: "cohomology".into(), params: params.clone(), line: 1 };
    let m = Manifest { radical, ..Manifest::parse("")? };
    let mut report = Report::default();
    report.env.push(("lambda".into(), lambda.to_string()));
    report.checks.push(cohomology(&m, &spec)?);
    if let Some(cs) = profile_cutoffs {
        let list: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
        params.remove("cutoff");
        params.insert("cutoffs".to_string(), list.join(","));
        let spec = TaskSpec { name: "profile".into(), params, line: 1 };
        report.checks.push(profile(&m, &spec)?);
    }
    Ok(report)
}

fn normalize_radical(text: &str) -> Result<(String, Option<u32>)> {
    let Some(i) = text.find("sqrt(") else {
        return Ok((text.to_string(), text.contains("rt").then_some(2)));
    };
    let rest = &text[i + 5..];
    let bad = || Error::Syntax { line: 1, col: i + 6, expected: vec!["radicand".into()] };
    let close = rest.find(')').ok_or_else(bad)?;
    let d: u32 = rest[..close].trim().parse().map_err(|_| bad())?;
    let replaced = text.replace(&format!("sqrt({})", &rest[..close]), "rt");
    if replaced.contains("sqrt(") {
        return Err(Error::Semantic { line: 1, msg: "only one radicand is supported".into() });
    }
    Ok((replaced, Some(d)))
}
