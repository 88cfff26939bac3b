//! Acceptance run: one line per criterion. Runs without the libtest harness so
//! the lines always show up in `cargo test` output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sflab::bigbracket::{m2_closed_form, m2_two_forms, taylor_m, SuperChart, SuperPoly};
use sflab::cli::{run_tasks, Manifest, RunOptions, Status};
use sflab::exactnum::{EpsSeries, FieldElement, FourierScalar, TorusPoint};
use sflab::foliation::dirac::{dirac_log, exact_exp_rank_at, lie_series, main_theorem_check, small_series, TheoremCheck};
use sflab::foliation::random::{random_function, random_good, random_multivector, Shape};
use sflab::foliation::{shipped, FoliationAlgebra, MultiVector, Setup, Skew, SplittingPair, TernarySign};
use sflab::gaugeequiv::{
    base_mc_residual, block_gauge_transform, direct_product_transform, gauge_flow_defect,
    gauge_flow_defect_by_coefficients, hat, hat_correspondence, koszul_flow_defect, koszul_mc_defect,
    koszul_square_residual, lie_flow_family, lift, square_equivalence_residuals, unhat, ProductSetup,
};
use sflab::kronecker::{
    divisor, divisor_profile, first_bound_violation, liouville_approximants, truncated_cohomology, Slope,
};
use sflab::linfty::{jacobi_residual, GradedElements, LInfty};
use sflab::Error;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn setups() -> Vec<(&'static str, Setup)> {
    vec![("T3", shipped::t3_kronecker().unwrap()), ("T4", shipped::t4_nonintegrable().unwrap())]
}

fn jacobi_identities() -> Outcome {
    const TUPLES: usize = 100;
    for (name, s) in setups() {
        let alg = FoliationAlgebra::new(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for arity in 1..=4 {
            for t in 0..TUPLES {
                let args: Vec<MultiVector> = (0..arity)
                    .map(|_| {
                        let d = rng.gen_range(0..=3);
                        random_multivector(&mut rng, s.ring, s.dim, d, Shape::default())
                    })
                    .collect();
                let r = jacobi_residual(&alg, &args).map_err(|e| e.to_string())?;
                ensure(alg.is_zero(&r), || format!("{name} arity {arity} tuple {t}"))?;
            }
        }
    }
    // The ternary bracket vanishes on T3 (involutive complement) and not on T4.
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let t3 = shipped::t3_kronecker().unwrap();
    let a3 = FoliationAlgebra::new(&t3);
    for _ in 0..10 {
        let v: Vec<MultiVector> = (0..3).map(|_| random_multivector(&mut rng, t3.ring, 3, 2, Shape::default())).collect();
        ensure(a3.l3(&v[0], &v[1], &v[2]).is_zero(), || "l3 nonzero on T3".into())?;
    }
    let t4 = shipped::t4_nonintegrable().unwrap();
    let a4 = FoliationAlgebra::new(&t4);
    let l3_seen = (0..10).any(|_| {
        let v: Vec<MultiVector> = (0..3).map(|_| random_multivector(&mut rng, t4.ring, 4, 2, Shape::default())).collect();
        !a4.l3(&v[0], &v[1], &v[2]).is_zero()
    });
    ensure(l3_seen, || "l3 vanishes on T4".into())?;
    // The uncorrected ternary sign must break the identities somewhere on T4.
    let wrong = FoliationAlgebra::with_ternary(&t4, TernarySign::Uncorrected);
    let mut broken = false;
    for _ in 0..27 {
        let args: Vec<MultiVector> =
            (0..3).map(|k| random_multivector(&mut rng, t4.ring, 4, 1 + k % 3, Shape::default())).collect();
        broken |= !wrong.is_zero(&jacobi_residual(&wrong, &args).unwrap());
    }
    ensure(broken, || "uncorrected ternary sign passed".into())?;
    Ok(format!("{TUPLES} tuples x arities 1-4 on T3 and T4, l3 = 0 on T3 only"))
}

fn m2_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let shape = Shape { terms: 2, max_freq: 1, max_coeff: 3 };
    for t in 0..100 {
        let r = 2 + t % 3;
        let c = SuperChart::new(r, r);
        let (d1, d2) = (1 + rng.gen_range(0..r.min(3)), 1 + rng.gen_range(0..r.min(3)));
        let eta = random_multivector(&mut rng, c.ring, r, 2, shape);
        let w1 = random_multivector(&mut rng, c.ring, r, d1, shape);
        let w2 = random_multivector(&mut rng, c.ring, r, d2, shape);
        let (e, f1, f2) = (SuperPoly::from_multivector(c, &eta), SuperPoly::from_form(c, &w1), SuperPoly::from_form(c, &w2));
        let it = taylor_m(&e, &[f1.clone(), f2.clone()]).map_err(|e| e.to_string())?;
        ensure(it.to_form(d1 + d2 - 2).unwrap() == m2_closed_form(&eta, &w1, &w2), || format!("M2 case {t}"))?;
        ensure(taylor_m(&e, &[f1.clone()]).unwrap().is_zero(), || format!("M1 case {t}"))?;
        ensure(taylor_m(&e, &[f1.clone(), f2, f1]).unwrap().is_zero(), || format!("M3 case {t}"))?;
    }
    for t in 0..20 {
        let r = 2 + t % 3;
        let c = SuperChart::new(r, r);
        let eta = random_multivector(&mut rng, c.ring, r, 2, Shape::default());
        let w1 = random_multivector(&mut rng, c.ring, r, 2, Shape::default());
        let w2 = random_multivector(&mut rng, c.ring, r, 2, Shape::default());
        ensure(m2_two_forms(&eta, &w1, &w2).unwrap() == m2_closed_form(&eta, &w1, &w2), || format!("two-form pair {t}"))?;
    }
    Ok("100 random triples with rank 2-4, 20 two-form pairs".into())
}

fn points(dim: usize) -> Vec<TorusPoint> {
    [[0, 0, 0, 0], [1, 2, 3, 4], [2, 2, 0, 6], [4, 1, 7, 2], [3, 5, 6, 1]]
        .iter()
        .map(|p| TorusPoint::angles(p[..dim].to_vec()))
        .collect()
}

fn deformation_equivalence() -> Outcome {
    const K: usize = 4;
    let eps = BigRational::new(1.into(), 10.into());
    let small = Shape { terms: 1, max_freq: 1, max_coeff: 2 };
    let mut random_cases = 0;
    let mut mc_cases = 0;
    for (name, s) in setups() {
        let mut rng = ChaCha8Rng::seed_from_u64(301);
        for t in 0..10 {
            let z = small_series(&s, (1..=K).map(|_| random_good(&mut rng, &s, 2, small)).collect());
            let c = main_theorem_check(&s, &z).map_err(|e| e.to_string())?;
            ensure(c.mc_order == c.poisson_order, || format!("{name} random Z {t}: {c:?}"))?;
            random_cases += 1;
        }
        for t in 0..3 {
            let x = Skew::vector(s.dim, &(0..s.dim).map(|_| random_function(&mut rng, s.ring, small)).collect::<Vec<_>>());
            let z = dirac_log(&s, &lie_series(&s.pi, &x, K)).map_err(|e| e.to_string())?;
            let c = main_theorem_check(&s, &z).unwrap();
            ensure(c == TheoremCheck { mc_order: None, poisson_order: None }, || format!("{name} MC example {t}: {c:?}"))?;
            for p in points(s.dim) {
                let r = exact_exp_rank_at(&s, &z, &p, &eps).map_err(|e| e.to_string())?;
                ensure(r == 2 * s.leaf_half_rank(), || format!("{name} MC example {t}: rank {r} at {:?}", p.eighths))?;
            }
            mc_cases += 1;
            // A good non-cocycle at ε^j breaks both sides at the same order,
            // and truncating just below restores both.
            let alg = FoliationAlgebra::new(&s);
            let delta = loop {
                let d = random_good(&mut rng, &s, 2, small);
                if !alg.l1(&d).is_zero() {
                    break d;
                }
            };
            let j = 1 + t;
            let mut coeffs = z.coeffs().to_vec();
            coeffs[j] = coeffs[j].plus(&delta);
            let zz = EpsSeries::new(coeffs);
            let c = main_theorem_check(&s, &zz).unwrap();
            ensure(c == TheoremCheck { mc_order: Some(j), poisson_order: Some(j) }, || format!("{name} perturbation at {j}: {c:?}"))?;
            let o = c.mc_order.unwrap();
            let below = main_theorem_check(&s, &zz.truncate(o - 1)).unwrap();
            ensure(below == TheoremCheck { mc_order: None, poisson_order: None }, || format!("{name} truncation {below:?}"))?;
        }
    }
    Ok(format!("{random_cases} random good Z at order {K}, {mc_cases} MC series with rank checks at 5 points, perturbations"))
}

fn mixed_generators(s: &Setup) -> Vec<MultiVector> {
    let r = s.ring;
    let n = s.dim;
    let mut freq = vec![0; n];
    freq[0] = 1;
    let f = Skew::function(n, FourierScalar::sin(r, &freq));
    let mut freq2 = vec![0; n];
    freq2[n - 1] = 1;
    let x = s.tf_vector(1).mul_fn(&FourierScalar::cos(r, &freq2));
    let y = s.g_vector(0);
    let b = s.g_vector(0).wedge(&s.tf_vector(0));
    vec![f, x, y, b, s.pi.clone()]
}

fn multisets(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for w in multisets(k, len - 1) {
        let start = w.last().copied().unwrap_or(0);
        for i in start..k {
            let mut v = w.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

fn splitting_independence() -> Outcome {
    let mut words = 0;
    for ((name, s), h) in setups().into_iter().zip([shipped::t3_second_complement(), shipped::t4_second_complement()]) {
        let pair = SplittingPair::new(&s, h.clone()).map_err(|e| e.to_string())?;
        let gens = mixed_generators(&s);
        // Non-triviality: the two bracket systems differ and e^{-N} has a
        // nonzero quadratic part on these generators.
        let s1 = s.with_complement(h).unwrap();
        let (a0, a1) = (FoliationAlgebra::new(&s), FoliationAlgebra::new(&s1));
        let differ = multisets(gens.len(), 2).iter().chain(multisets(gens.len(), 3).iter()).any(|idx| {
            let args: Vec<&MultiVector> = idx.iter().map(|&i| &gens[i]).collect();
            a0.bracket(&args) != a1.bracket(&args)
        });
        ensure(differ, || format!("{name}: both complements give the same brackets"))?;
        let quadratic = multisets(gens.len(), 2).iter().any(|idx| {
            !pair.morphism_coefficient(&[gens[idx[0]].clone(), gens[idx[1]].clone()]).unwrap().is_zero()
        });
        ensure(quadratic, || format!("{name}: e^-N is linear on the generators"))?;
        for len in 1..=3 {
            for idx in multisets(gens.len(), len) {
                let word: Vec<MultiVector> = idx.iter().map(|&i| gens[i].clone()).collect();
                let r = pair.intertwine(&word).map_err(|e| e.to_string())?;
                ensure(r.is_zero(), || format!("{name} word {idx:?}"))?;
                words += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(401);
        for t in 0..50 {
            let da = rng.gen_range(1..=3);
            let a = random_good(&mut rng, &s, da, Shape::default());
            let db = rng.gen_range(1..=3);
            let b = random_good(&mut rng, &s, db, Shape::default());
            ensure(s.is_good(&pair.n2(&a, &b)), || format!("{name} N2 pair {t}"))?;
        }
    }
    Ok(format!("{words} words of length <= 3, 50 N2 pairs per torus"))
}

fn random_family(ps: &ProductSetup, rng: &mut ChaCha8Rng, deg: usize, k: usize, good: bool) -> EpsSeries<MultiVector> {
    let t = ps.t();
    let shape = Shape { terms: 1, ..Shape::default() };
    EpsSeries::from_fn(k, |j| {
        let mut acc = Skew::zero(ps.ring(), ps.dim(), deg);
        if j == 0 && deg == 2 {
            return acc;
        }
        let mut pow = FourierScalar::one(ps.ring());
        for _ in 0..=2 {
            let c = if good {
                random_good(rng, &ps.base, deg, shape)
            } else {
                random_multivector(rng, ps.base.ring, ps.dim(), deg, shape)
            };
            acc = acc.plus(&ps.on_base(&c).mul_fn(&pow));
            pow = pow.try_mul(&t).unwrap();
        }
        acc
    })
}

fn squares() -> Outcome {
    let mut families = 0;
    for (name, s) in setups() {
        let ps = ProductSetup::new(&s, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(501);
        for i in 0..10 {
            let k = 1 + i % 4;
            let w = random_family(&ps, &mut rng, 2, k, true);
            let x = random_family(&ps, &mut rng, 1, k, false);
            let l = lift(&ps, &w, &x).map_err(|e| e.to_string())?;
            let r = square_equivalence_residuals(&ps, &l).unwrap();
            ensure(r.no_s == base_mc_residual(&ps, &w).unwrap(), || format!("{name} family {i}: s-free part"))?;
            ensure(r.s == gauge_flow_defect(&ps, &w, &x), || format!("{name} family {i}: s part"))?;
            ensure(r.s == gauge_flow_defect_by_coefficients(&ps, &w, &x).unwrap(), || format!("{name} family {i}: coefficients"))?;
            let kz = koszul_square_residual(&ps, &l).unwrap();
            ensure(kz.no_s == koszul_mc_defect(&ps, &w) && kz.s == koszul_flow_defect(&ps, &w, &x), || {
                format!("{name} family {i}: Koszul square")
            })?;
            if i < 3 {
                let b = block_gauge_transform(&ps, &l).unwrap().assemble(ps.ring());
                ensure(b == direct_product_transform(&ps, &l).unwrap(), || format!("{name} family {i}: blocks"))?;
            }
            let hc = hat_correspondence(&ps, &w, &x).unwrap();
            ensure(hc.consistent(), || format!("{name} family {i}: hat"))?;
            let back = unhat(&ps, &hat(&ps, &w, &x).unwrap()).unwrap();
            ensure(back.0 == w && back.1 == x, || format!("{name} family {i}: unhat"))?;
            families += 1;
        }
        // Solutions: a Lie flow satisfies both equations on both sides; a
        // perturbed one fails on both.
        let y = s.tf_vector(0).mul_fn(&random_function(&mut rng, s.ring, Shape::default()));
        let (w, x) = lie_flow_family(&ps, &y, 3).unwrap();
        let hc = hat_correspondence(&ps, &w, &x).unwrap();
        ensure(hc.l_side.both_zero() && hc.koszul_side.both_zero(), || format!("{name}: Lie flow is not a solution"))?;
        let mut xs = x.coeffs().to_vec();
        let mut freq = vec![0; s.dim];
        freq[0] = 1;
        xs[2] = xs[2].plus(&ps.on_base(&s.g_vector(0).mul_fn(&FourierScalar::cos(s.ring, &freq))));
        let hc = hat_correspondence(&ps, &w, &EpsSeries::new(xs)).unwrap();
        ensure(!hc.l_side.both_zero() && !hc.koszul_side.both_zero(), || format!("{name}: perturbed flow"))?;
    }
    Ok(format!("{families} random families (t-degree <= 2, order <= 4), blocks, hat both ways"))
}

fn kronecker() -> Outcome {
    let rt2 = Slope::sqrt(2).unwrap();
    let mut notes = Vec::new();
    for n in [5, 10, 20, 40] {
        let r = truncated_cohomology(&rt2, n).unwrap();
        ensure((r.h0_leaf, r.h1_leaf, r.h2_poisson) == (1, 1, 3), || format!("sqrt 2 at N = {n}: {r:?}"))?;
        let half = truncated_cohomology(&Slope::rational(1, 2), n).unwrap();
        // Lattice-line oracle: modes (m, n) = (−k, 2k) with |2k| ≤ N.
        let line = (-(n as i64)..=n as i64).filter(|k| (2 * k).abs() <= n as i64).count();
        ensure(half.obstructed.len() == line && line == 2 * (n as usize / 2) + 1, || format!("1/2 at N = {n}"))?;
    }
    // Six approximants, cutoffs at the first five denominators, so every row is finite.
    let liouville = Slope::Approximants(liouville_approximants(6));
    let cutoffs: Vec<BigInt> = liouville_approximants(5).iter().map(|x| x.denom().clone()).collect();
    let rows = divisor_profile(&liouville, &cutoffs).unwrap();
    let exps: Vec<f64> = rows.iter().filter_map(|r| r.growth_exponent()).collect();
    ensure(exps.len() == rows.len(), || "Liouville profile has an unbounded row".into())?;
    ensure(exps[1..].windows(2).all(|w| w[1] > w[0]), || format!("Liouville exponents {exps:?}"))?;
    ensure(rows[4].exceeds_power(4), || format!("Liouville profile stays below N^4: {exps:?}"))?;
    let s2 = FieldElement::sqrt(2).unwrap();
    let norm = first_bound_violation(&rt2, 50, |m, n| &FieldElement::from_int(m.abs()) + &(&s2 * &FieldElement::from_int(n.abs())))
        .unwrap();
    ensure(norm.is_none(), || format!("norm bound |m| + sqrt2 |n| fails at {norm:?}"))?;
    notes.push("H counts, lattice lines, Liouville growth and the bound |m| + sqrt2 |n| hold".to_string());
    // Smallest cutoff with a violation, and its first mode in box order.
    let sum = (1..=50).find_map(|n| {
        first_bound_violation(&rt2, n, |m, k| FieldElement::from_int(m.abs() + k.abs() + 1)).unwrap().map(|v| (n, v))
    });
    match sum {
        None => Ok(notes.join("; ")),
        Some((n, mode)) => {
            let d = divisor(mode, &rt2).unwrap().abs_real().unwrap();
            Err(format!(
                "1/|m + sqrt2 n| <= |m| + |n| + 1 fails at (m, n) = {mode:?} (first at cutoff {n}) where 1/|m + sqrt2 n| ~ {:.4}; {}",
                d.inv().unwrap().approx_real(),
                notes.join("; ")
            ))
        }
    }
}

const T3_MANIFEST: &str = include_str!("../manifests/t3_kronecker.toml");
const T4_MANIFEST: &str = include_str!("../manifests/t4_nonintegrable.toml");

fn plumbing() -> Outcome {
    for text in [T3_MANIFEST, T4_MANIFEST] {
        let m = Manifest::parse(text).map_err(|e| e.to_string())?;
        let round = m.to_text();
        let back = Manifest::parse(&round).map_err(|e| e.to_string())?;
        ensure(back.to_text() == round, || "manifest text is not a fixed point".into())?;
        let mut m = m;
        m.tasks.retain(|t| t.name != "profile");
        let a = run_tasks(&m, RunOptions::default()).render();
        let b = run_tasks(&m, RunOptions::default()).render();
        ensure(a == b, || "report differs between runs".into())?;
        ensure(a.contains(&format!("summary = {0}/{0}", m.tasks.len())), || format!("shipped manifest failed:\n{a}"))?;
    }
    // Error paths.
    let syntax = Manifest::parse("[manifold]\ndim = 3\n[poisson]\nPi = e1^^e2\n");
    ensure(matches!(syntax, Err(Error::Syntax { line: 4, col: 9, .. })), || format!("syntax: {syntax:?}"))?;
    let not_good = "[manifold]\ndim = 4\n[poisson]\nPi = e1^e2\n[splitting]\ntf1 = e1\ntf2 = e2\ng1 = e3\ng2 = e4\n\
        [deformation]\nZ = order 1: 0 ; e3^e4\n[task]\ncheck = mc\n";
    let r = run_tasks(&Manifest::parse(not_good).unwrap(), RunOptions::default());
    ensure(r.checks[0].status == Status::Error && r.checks[0].witness.as_deref().unwrap_or("").contains("good"), || {
        format!("not good: {}", r.render())
    })?;
    let s = shipped::t4_nonintegrable().unwrap();
    ensure(s.check_good(&Skew::monomial(4, &[2, 3], FourierScalar::one(s.ring))) == Err(Error::NotGood(0, 1)), || {
        "NotGood variant".into()
    })?;
    let non_small = EpsSeries::new(vec![s.pi.clone()]);
    ensure(matches!(main_theorem_check(&s, &non_small), Err(Error::NonSmallDeformation)), || "non-small".into())?;
    let z = small_series(&s, vec![s.pi.clone()]);
    let one = BigRational::from_integer(1.into());
    let singular = exact_exp_rank_at(&s, &z, &TorusPoint::angles(vec![0, 0, 0, 0]), &one);
    ensure(singular == Err(Error::SingularAtSample), || format!("singular: {singular:?}"))?;
    Ok("round trip, byte-identical re-runs, Syntax/NotGood/NonSmallDeformation/SingularAtSample".into())
}

struct Criterion {
    label: &'static str,
    run: fn() -> Outcome,
    budget: Duration,
    /// Failure analyzed as unattainable: the run must fail with this text.
    known_failure: Option<&'static str>,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { label: "jacobi identities", run: jacobi_identities, budget: Duration::from_secs(120), known_failure: None },
        Criterion { label: "M2 formula", run: m2_formula, budget: Duration::from_secs(120), known_failure: None },
        Criterion { label: "MC iff Poisson", run: deformation_equivalence, budget: Duration::from_secs(300), known_failure: None },
        Criterion { label: "splitting independence", run: splitting_independence, budget: Duration::from_secs(300), known_failure: None },
        Criterion { label: "gauge squares", run: squares, budget: Duration::from_secs(300), known_failure: None },
        Criterion {
            label: "kronecker cohomology",
            run: kronecker,
            budget: Duration::from_secs(30),
            known_failure: Some("fails at (m, n) = (-7, 5)"),
        },
        Criterion { label: "plumbing", run: plumbing, budget: Duration::from_secs(300), known_failure: None },
    ];
    let mut ok = true;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let in_time = took <= c.budget;
        let (status, detail) = match (&out, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over budget {:?}; {d}", c.budget)),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        println!("criterion {} {}: {status} ({:.1}s) {detail}", i + 1, c.label, took.as_secs_f64());
        let expected = match (&out, c.known_failure) {
            (Ok(_), None) => in_time,
            (Err(d), Some(k)) => in_time && d.contains(k),
            _ => false,
        };
        if !expected {
            ok = false;
        }
        if let (Err(_), Some(_)) = (&out, c.known_failure) {
            println!("  known failure: the stated bound is false for sqrt 2, see the kronecker notes in README");
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome");
        ExitCode::FAILURE
    }
}
