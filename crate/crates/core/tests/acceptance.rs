//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::time::Instant;

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use orbifold_index::applications::{
    feasible_self_intersections, h0_bound, hitchin_report, lebrun_report, orientable_verdict,
    ricci_flat_moduli_dim, whitney_massey_values, SurfaceKind, Verdict,
};
use orbifold_index::cohomology::CohomElement;
use orbifold_index::index::{
    correction_sum, correction_sum_closed_form, correction_sum_element, index_closed_form, index_kawasaki,
    index_smooth, Duality, Pipeline, TopologicalData,
};
use orbifold_index::scalars::{int, rat, trig_sums_brute_force, Cyclotomic, Rational, Scalar};
use orbifold_index::verify;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

#[derive(Clone, Copy, Debug)]
struct Tuple {
    chi: i64,
    tau: i64,
    chi_sigma: i64,
    sigma_sq: i64,
    p: u32,
    q: u32,
}

impl Tuple {
    fn at(&self, p: u32) -> TopologicalData {
        TopologicalData::new(self.chi, self.tau, self.chi_sigma, self.sigma_sq, p).unwrap()
    }
}

/// 500 deterministic pseudo-random tuples in [−20, 20]⁴ with two cone
/// orders in [2, 30]. χ(M) and τ(M) have equal parity, as they do for every
/// closed oriented four-manifold.
fn tuples() -> Vec<Tuple> {
    let mut runner = TestRunner::deterministic();
    let strategy = (-20i64..=20, -20i64..=20, -20i64..=20, -20i64..=20, 2u32..=30, 2u32..=30).prop_map(
        |(chi, tau, chi_sigma, sigma_sq, p, q)| {
            let chi = if (chi - tau) % 2 == 0 { chi } else if chi > -20 { chi - 1 } else { chi + 1 };
            Tuple { chi, tau, chi_sigma, sigma_sq, p, q }
        },
    );
    (0..500).map(|_| strategy.new_tree(&mut runner).unwrap().current()).collect()
}

const DUALITIES: [Duality; 2] = [Duality::Asd, Duality::Sd];

fn criterion_1() -> Outcome {
    for p in 2..=200 {
        let brute = correction_sum(p).map_err(|e| format!("p={p}: {e}"))?;
        let closed = correction_sum_closed_form(p).unwrap();
        if brute != closed {
            return Err(format!("p={p}: brute force {brute:?} vs closed form {closed:?}"));
        }
    }
    Ok("199 values of p agree exactly".into())
}

fn criterion_2(ts: &[Tuple]) -> Outcome {
    let mut checked = 0;
    for t in ts {
        for dual in DUALITIES {
            let k = index_kawasaki(&t.at(t.p), dual).map_err(|e| format!("{t:?} {dual}: {e}"))?;
            let c = index_closed_form(&t.at(t.p), dual).map_err(|e| format!("{t:?} {dual}: {e}"))?;
            if k != c {
                return Err(format!("{t:?} {dual}: Kawasaki {k} vs closed form {c}"));
            }
            let k2 = index_kawasaki(&t.at(t.q), dual).map_err(|e| format!("{t:?} {dual}: {e}"))?;
            if k2 != k {
                return Err(format!("{t:?} {dual}: Kawasaki index {k} at p={} but {k2} at p={}", t.p, t.q));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (tuple, duality) pairs agree and are p-independent"))
}

fn criterion_3(ts: &[Tuple]) -> Outcome {
    for t in ts {
        for dual in DUALITIES {
            let k = index_kawasaki(&t.at(1), dual).map_err(|e| format!("{t:?}: {e}"))?;
            let smooth = index_smooth(t.chi, t.tau, dual);
            if int(k) != smooth {
                return Err(format!("{t:?} {dual}: Kawasaki {k} vs smooth {smooth}"));
            }
        }
    }
    Ok(format!("{} tuples match (15χ ± 29τ)/2 at p = 1", ts.len()))
}

fn criterion_4() -> Outcome {
    for k in 3..=100 {
        let r = hitchin_report(k).map_err(|e| format!("k={k}: {e}"))?;
        if r.index != 3 || r.dim_h1 != Some(0) || r.verdict != Verdict::Rigid || !r.is_consistent() {
            return Err(format!("k={k}: {r:?}"));
        }
    }
    Ok("index 3, dim H¹ 0, rigid for k in [3, 100]".into())
}

fn criterion_5() -> Outcome {
    for j in 1..=20u32 {
        let expected = 7 + 8 * j as i64;
        let d = TopologicalData::new(2, 0, 2 - 2 * j as i64, 0, 2 + j).unwrap();
        let closed = index_closed_form(&d, Duality::Sd).map_err(|e| e.to_string())?;
        let kawasaki = index_kawasaki(&d, Duality::Sd).map_err(|e| e.to_string())?;
        let r = orientable_verdict(j).map_err(|e| e.to_string())?;
        let bound = h0_bound(SurfaceKind::OrientableGenus(j));
        if closed != expected || kawasaki != expected || r.index != expected {
            return Err(format!("j={j}: index {closed}/{kawasaki}/{}, expected {expected}", r.index));
        }
        if r.index <= bound || r.verdict != Verdict::Nonexistence {
            return Err(format!("j={j}: index {} does not exceed bound {bound}", r.index));
        }
    }
    Ok("index 7 + 8j exceeds the H⁰ bound for j in [1, 20]".into())
}

fn criterion_6() -> Outcome {
    if feasible_self_intersections(1) != vec![-2] {
        return Err(format!("j=1: {:?}", feasible_self_intersections(1)));
    }
    if feasible_self_intersections(2) != vec![-4] {
        return Err(format!("j=2: {:?}", feasible_self_intersections(2)));
    }
    for j in 3..=50u32 {
        let jj = j as i64;
        let expected: Vec<i64> = whitney_massey_values(j)
            .into_iter()
            .filter(|&s| -2 * jj <= s && s < -jj)
            .collect();
        let got = feasible_self_intersections(j);
        if got != expected {
            return Err(format!("j={j}: {got:?} vs {expected:?}"));
        }
    }
    Ok("{−2}, {−4}, and Massey ∩ [−2j, −j) for j in [3, 50]".into())
}

fn criterion_7() -> Outcome {
    for n in 3..=30u32 {
        for p in [2u32, 3, 5, 10] {
            let r = lebrun_report(n, p).map_err(|e| format!("n={n}: {e}"))?;
            let n = n as i64;
            if r.index != 7 - 3 * n || r.moduli_dimension != Some(3 * n - 6) || !r.is_consistent() {
                return Err(format!("n={n} p={p}: {r:?}"));
            }
            let d = TopologicalData::new(n + 2, n, 2, n, p).unwrap();
            let k = index_kawasaki(&d, Duality::Sd).map_err(|e| e.to_string())?;
            if k != 7 - 3 * n {
                return Err(format!("n={n} p={p}: Kawasaki index {k}"));
            }
        }
    }
    Ok("index 7 − 3n and moduli dimension 3n − 6 for n in [3, 30]".into())
}

fn criterion_8(ts: &[Tuple]) -> Outcome {
    for t in ts {
        let d = t.at(t.p);
        let dim = ricci_flat_moduli_dim(&d).map_err(|e| e.to_string())?;
        let asd = index_closed_form(&d, Duality::Asd).map_err(|e| e.to_string())?;
        if dim != -asd {
            return Err(format!("{t:?}: {dim} vs {}", -asd));
        }
    }
    let reference = TopologicalData::new(24, -16, 2, -4, 2).unwrap();
    match ricci_flat_moduli_dim(&reference) {
        Ok(44) => Ok(format!("{} tuples; (24, −16, 2, −4) gives 44", ts.len())),
        other => Err(format!("(24, −16, 2, −4): {other:?}")),
    }
}

/// Literal check of Σcos = −1, Σcos² = (p − 2)/2, Σ 1/(1 − cos) = (p² − 1)/6.
fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    for p in 2..=1000u32 {
        let t = trig_sums_brute_force(p).map_err(|e| format!("p={p}: {e}"))?;
        let pi = p as i64;
        if t.sum_cos != int(-1) {
            failures.push(format!("p={p}: Σcos = {}", t.sum_cos));
        }
        if t.sum_cos_sq != rat(pi - 2, 2) {
            failures.push(format!("p={p}: Σcos² = {}, expected {}", t.sum_cos_sq, rat(pi - 2, 2)));
        }
        if t.sum_inv_one_minus_cos != rat(pi * pi - 1, 6) {
            failures.push(format!("p={p}: Σ1/(1−cos) = {}", t.sum_inv_one_minus_cos));
        }
    }
    if failures.is_empty() {
        Ok("all three identities hold for p in [2, 1000]".into())
    } else {
        Err(format!("{} mismatches: {}", failures.len(), failures.join("; ")))
    }
}

fn random_cyclotomic(runner: &mut TestRunner, p: u32) -> Cyclotomic {
    let deg = Cyclotomic::zero(p).degree();
    let coeffs = proptest::collection::vec((-9i64..=9, 1i64..=5), deg)
        .new_tree(runner)
        .unwrap()
        .current();
    let coeffs: Vec<Rational> = coeffs.into_iter().map(|(n, d)| rat(n, d)).collect();
    Cyclotomic::from_coeffs(p, &coeffs).unwrap()
}

fn random_element<S: Scalar>(mut draw: impl FnMut() -> S) -> CohomElement<S> {
    CohomElement::new(draw(), draw(), draw(), draw(), draw(), draw())
}

fn criterion_10(ts: &[Tuple]) -> Outcome {
    let mut runner = TestRunner::deterministic();
    let mut checks = 0usize;
    let fail = |what: &str| Err(format!("{what} failed"));

    // Field axioms in Q(ζ_p).
    for case in 0..150u32 {
        let p = 1 + case % 24;
        let (a, b, c) = (
            random_cyclotomic(&mut runner, p),
            random_cyclotomic(&mut runner, p),
            random_cyclotomic(&mut runner, p),
        );
        let ab = a.try_mul(&b).unwrap();
        if ab != b.try_mul(&a).unwrap() {
            return fail("commutativity in Q(ζ_p)");
        }
        if ab.try_mul(&c).unwrap() != a.try_mul(&b.try_mul(&c).unwrap()).unwrap() {
            return fail("associativity in Q(ζ_p)");
        }
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        if lhs != ab.try_add(&a.try_mul(&c).unwrap()).unwrap() {
            return fail("distributivity in Q(ζ_p)");
        }
        if !a.try_add(&a.neg()).unwrap().is_zero() {
            return fail("additive inverse in Q(ζ_p)");
        }
        if !a.is_zero() && a.try_mul(&a.inverse().unwrap()).unwrap() != Cyclotomic::one(p) {
            return fail("multiplicative inverse in Q(ζ_p)");
        }
        checks += 5;
    }

    // Truncated ring axioms over Q and over Q(ζ_p).
    let small = (-12i64..=12, 1i64..=6);
    for case in 0..200u32 {
        let mut draw = || {
            let (n, d) = small.new_tree(&mut runner).unwrap().current();
            rat(n, d)
        };
        let a: CohomElement<Rational> = random_element(&mut draw);
        let b = random_element(&mut draw);
        let c = random_element(&mut draw);
        if a.mul(&b).unwrap() != b.mul(&a).unwrap()
            || a.mul(&b).unwrap().mul(&c).unwrap() != a.mul(&b.mul(&c).unwrap()).unwrap()
            || a.mul(&b.add(&c).unwrap()).unwrap() != a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        {
            return fail("truncated ring axioms over Q");
        }
        if !Scalar::is_zero(&a.c0) && a.mul(&a.invert_unit().unwrap()).unwrap() != CohomElement::one(()) {
            return fail("unit inversion over Q");
        }
        let e = CohomElement::<Rational>::e_class(());
        let q = e.mul(&a).unwrap().divide_by_e().unwrap();
        if e.mul(&q).unwrap() != e.mul(&a).unwrap() {
            return fail("division by e over Q");
        }
        let p = 2 + case % 12;
        let mut cdraw = || random_cyclotomic(&mut runner, p);
        let x: CohomElement<Cyclotomic> = random_element(&mut cdraw);
        let y = random_element(&mut cdraw);
        if x.mul(&y).unwrap() != y.mul(&x).unwrap() {
            return fail("truncated ring commutativity over Q(ζ_p)");
        }
        if !x.c0.is_zero() && x.mul(&x.invert_unit().unwrap()).unwrap() != CohomElement::one(p) {
            return fail("unit inversion over Q(ζ_p)");
        }
        checks += 7;
    }

    // Rank, conjugation and divisibility invariants of the characters.
    let report = verify::run(30, Pipeline::Standard).map_err(|e| e.to_string())?;
    for s in &report.suites {
        if !s.passed() {
            return Err(format!("suite {}: {:?}", s.name, s.failures));
        }
        checks += s.checked;
    }

    // Integrality of every index and rationality of every group sum.
    for t in ts {
        for p in [1, t.p, t.q] {
            for dual in DUALITIES {
                index_kawasaki(&t.at(p), dual).map_err(|e| format!("{t:?}: {e}"))?;
                checks += 1;
            }
        }
    }
    for p in 1..=200 {
        let x = correction_sum_element(p).map_err(|e| format!("p={p}: {e}"))?;
        if p == 1 && x != CohomElement::zero(()) {
            return Err("p=1 correction is not the empty sum".into());
        }
        checks += 1;
    }
    Ok(format!("{checks} structural checks, zero failures"))
}

fn main() {
    let started = Instant::now();
    let ts = tuples();
    let criteria: Vec<Criterion> = vec![
        ("correction sum: brute force equals closed form, p in [2, 200]", Box::new(criterion_1)),
        ("Kawasaki index equals closed form, 500 random tuples, ASD and SD", Box::new(|| criterion_2(&ts))),
        ("smooth baseline at p = 1", Box::new(|| criterion_3(&ts))),
        ("Hitchin family is rigid with index 3", Box::new(criterion_4)),
        ("orientable surfaces: index 7 + 8j exceeds the H⁰ bound", Box::new(criterion_5)),
        ("Whitney–Massey filtering", Box::new(criterion_6)),
        ("LeBrun family: index 7 − 3n, moduli dimension 3n − 6", Box::new(criterion_7)),
        ("Ricci-flat moduli dimension is minus the ASD index", Box::new(|| criterion_8(&ts))),
        ("trigonometric identities, p in [2, 1000]", Box::new(criterion_9)),
        ("structural suites", Box::new(|| criterion_10(&ts))),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                println!("FAIL {:>2}  {name}: {detail} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed.len(),
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
