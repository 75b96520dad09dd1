//! Self-checks run by the `verify` subcommand. Each suite sweeps p up to a
//! limit and records every failing case rather than stopping at the first.

use rayon::prelude::*;
use serde::Serialize;

use crate::bundles::{
    ch_cotangent, ch_lambda_minus, ch_lambda_plus, ch_s20_cotangent, ch_s20_lambda_plus, ch_symbol,
    ch_thom, Constructor, GroupElement,
};
use crate::error::{Error, Result};
use crate::index::{
    correction_at_with, correction_sum_closed_form, correction_sum_with, index_closed_form,
    index_kawasaki_with, Duality, Pipeline, TopologicalData,
};
use crate::scalars::{int, trig_sums};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub p_max: u32,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

type Check = Result<Option<String>>;

/// Runs `check` for every p in `ps` in parallel, keeping failures in p order.
fn sweep(name: &'static str, ps: Vec<u32>, check: impl Fn(u32) -> Vec<Check> + Sync) -> SuiteResult {
    let per_p: Vec<(u32, Vec<Check>)> = ps.into_par_iter().map(|p| (p, check(p))).collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    for (p, results) in per_p {
        for r in results {
            checked += 1;
            match r {
                Ok(None) => {}
                Ok(Some(msg)) => failures.push(format!("p={p}: {msg}")),
                Err(e) => failures.push(format!("p={p}: {e}")),
            }
        }
    }
    SuiteResult { name, checked, failures }
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(msg)
}

const CONSTRUCTORS: [(&str, Constructor); 7] = [
    ("cotangent", ch_cotangent),
    ("lambda_plus", ch_lambda_plus),
    ("lambda_minus", ch_lambda_minus),
    ("s20_cotangent", ch_s20_cotangent),
    ("s20_lambda_plus", ch_s20_lambda_plus),
    ("symbol", ch_symbol),
    ("thom", ch_thom),
];

const RANKS: [i64; 7] = [4, 3, 3, 9, 5, 0, 0];

/// Fixed topological data used for the cone-angle independence sweep.
const FIXED_TUPLES: [(i64, i64, i64, i64); 4] = [(2, 0, 1, -2), (5, 3, 2, 3), (24, -16, 2, -4), (4, 2, -1, 5)];

fn correction_suite(pipeline: &Pipeline, ps: Vec<u32>) -> SuiteResult {
    sweep("correction-closed-form", ps, |p| {
        let check = || -> Check {
            let brute = correction_sum_with(pipeline, p)?;
            let closed = correction_sum_closed_form(p)?;
            Ok(expect(brute == closed, || {
                format!("brute force ({}, {}) vs closed form ({}, {})", brute.coeff_e, brute.coeff_h, closed.coeff_e, closed.coeff_h)
            }))
        };
        vec![check()]
    })
}

fn trig_suite(ps: Vec<u32>) -> SuiteResult {
    sweep("trig-identities", ps, |p| vec![trig_sums(p).map(|_| None)])
}

fn conjugation_suite(pipeline: &Pipeline, ps: Vec<u32>) -> SuiteResult {
    sweep("conjugation", ps, |p| {
        let mut out = Vec::new();
        for g in GroupElement::nontrivial(p) {
            for (name, f) in CONSTRUCTORS {
                out.push((|| -> Check {
                    let a = f(&g.inverse())?;
                    let b = f(&g)?.conjugate();
                    Ok(expect(a == b, || format!("{name} at j={} is not conjugation-equivariant", g.j())))
                })());
            }
            out.push((|| -> Check {
                let a = correction_at_with(pipeline, &g.inverse())?;
                let b = correction_at_with(pipeline, &g)?.conjugate();
                Ok(expect(a == b, || format!("correction at j={} is not conjugation-equivariant", g.j())))
            })());
        }
        out
    })
}

fn rank_suite(ps: Vec<u32>) -> SuiteResult {
    sweep("rank", ps, |p| {
        let id = GroupElement::identity(p).expect("p >= 1");
        CONSTRUCTORS
            .iter()
            .zip(RANKS)
            .map(|((name, f), rank)| -> Check {
                let c0 = f(&id)?.c0.to_rational();
                Ok(expect(c0 == Some(int(rank)), || format!("{name} has rank {c0:?}, expected {rank}")))
            })
            .collect()
    })
}

fn divisibility_suite(pipeline: &Pipeline, ps: Vec<u32>) -> SuiteResult {
    sweep("divisibility", ps, |p| {
        GroupElement::nontrivial(p)
            .map(|g| -> Check {
                let s = pipeline.symbol(&g)?;
                let ok = s.c0.is_zero() && s.ch.is_zero() && s.chh.is_zero();
                Ok(expect(ok, || format!("symbol at j={} is not divisible by e", g.j())))
            })
            .collect()
    })
}

fn independence_suite(pipeline: &Pipeline, ps: Vec<u32>) -> SuiteResult {
    sweep("p-independence", ps, |p| {
        let mut out = Vec::new();
        for (chi, tau, cs, sq) in FIXED_TUPLES {
            for dual in [Duality::Asd, Duality::Sd] {
                out.push((|| -> Check {
                    let d = TopologicalData::new(chi, tau, cs, sq, p)?;
                    let k = index_kawasaki_with(pipeline, &d, dual)?;
                    let c = index_closed_form(&d, dual)?;
                    Ok(expect(k == c, || format!("({chi},{tau},{cs},{sq},{dual}): Kawasaki {k} vs closed form {c}")))
                })());
            }
        }
        out
    })
}

pub fn run(p_max: u32, pipeline: Pipeline) -> Result<VerifyReport> {
    if p_max < 2 {
        return Err(Error::invalid("verify needs --p-max >= 2"));
    }
    let cones = || (2..=p_max).collect::<Vec<_>>();
    let suites = vec![
        correction_suite(&pipeline, cones()),
        trig_suite(cones()),
        conjugation_suite(&pipeline, cones()),
        rank_suite((1..=p_max).collect()),
        divisibility_suite(&pipeline, cones()),
        independence_suite(&pipeline, cones()),
    ];
    Ok(VerifyReport {
        p_max,
        passed: suites.iter().all(SuiteResult::passed),
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let r = run(12, Pipeline::Standard).unwrap();
        assert!(r.passed, "{:?}", r.suites);
        assert_eq!(r.suites.len(), 6);
        assert!(r.suites.iter().all(|s| s.checked > 0));
    }

    #[test]
    fn minimal_sweep() {
        assert!(run(2, Pipeline::Standard).unwrap().passed);
        assert!(run(1, Pipeline::Standard).is_err());
    }

    #[test]
    fn injected_fault_is_caught() {
        let r = run(8, Pipeline::ThomSignFault).unwrap();
        assert!(!r.passed);
        let failing: Vec<_> = r.suites.iter().filter(|s| !s.passed()).map(|s| s.name).collect();
        assert!(failing.contains(&"correction-closed-form"));
        assert!(failing.contains(&"p-independence"));
    }
}
