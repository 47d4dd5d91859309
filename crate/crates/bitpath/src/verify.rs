//! Cross-verification harness: runs the graph oracle, the canonical walk,
//! and the closed form over a range and reports any disagreement.

use std::time::{Duration, Instant};

use crate::canonical;
use crate::error::{Error, Result};
use crate::graph::Oracle;
use crate::numrep::Nat;
use crate::vakil;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    pub n: u64,
    pub oracle: u64,
    pub canonical: u64,
    pub formula: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MethodTimings {
    pub oracle: Duration,
    pub canonical: Duration,
    pub formula: Duration,
}

/// Outcome of one verification sweep. The JSON form is deterministic for
/// a fixed range (timings are reported separately, not serialized).
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub max: u64,
    pub triples: Vec<Triple>,
    pub mismatches: Vec<u64>,
    pub timings: MethodTimings,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "max": self.max,
            "mismatches": self.mismatches,
            "triples": self.triples.iter().map(|t| serde_json::json!({
                "n": t.n,
                "oracle": t.oracle,
                "canonical": t.canonical,
                "formula": t.formula,
            })).collect::<Vec<_>>(),
        })
    }
}

fn sweep_chunk(lo: u64, hi: u64) -> Result<(Vec<Triple>, MethodTimings)> {
    let mut oracle = Oracle::new();
    let mut triples = Vec::with_capacity((hi - lo) as usize);
    let mut timings = MethodTimings::default();
    for n in lo..hi {
        let nat = Nat::from(n);

        let t0 = Instant::now();
        let o = oracle.len_u64(n)?;
        timings.oracle += t0.elapsed();

        let t0 = Instant::now();
        let c = canonical::f_canonical(&nat, canonical::DEFAULT_STEP_BUDGET)?;
        timings.canonical += t0.elapsed();

        let t0 = Instant::now();
        let f = vakil::f_formula_nat(&nat)?;
        timings.formula += t0.elapsed();

        let f = f.to_u64().ok_or_else(|| {
            Error::Mismatch(format!("formula value for {n} does not fit u64"))
        })?;
        triples.push(Triple {
            n,
            oracle: o,
            canonical: c,
            formula: f,
        });
    }
    Ok((triples, timings))
}

/// Verify all n in [0, max]; work is split across `jobs` threads and the
/// merged report is independent of the job count.
pub fn run(max: u64, jobs: usize) -> Result<VerifyReport> {
    let jobs = jobs.max(1);
    let total = max + 1;
    let chunk = total.div_ceil(jobs as u64);
    let bounds: Vec<(u64, u64)> = (0..jobs as u64)
        .map(|i| (i * chunk, ((i + 1) * chunk).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let results: Vec<Result<(Vec<Triple>, MethodTimings)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(lo, hi)| scope.spawn(move || sweep_chunk(lo, hi)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verify worker panicked"))
            .collect()
    });

    let mut triples = Vec::with_capacity(total as usize);
    let mut timings = MethodTimings::default();
    for r in results {
        let (t, tm) = r?;
        triples.extend(t);
        timings.oracle += tm.oracle;
        timings.canonical += tm.canonical;
        timings.formula += tm.formula;
    }
    let mismatches = triples
        .iter()
        .filter(|t| !(t.oracle == t.canonical && t.canonical == t.formula))
        .map(|t| t.n)
        .collect();
    Ok(VerifyReport {
        max,
        triples,
        mismatches,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_is_clean() {
        let r = run(1024, 2).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.triples.len(), 1025);
    }

    #[test]
    fn sweep_matches_published_small_values() {
        let r = run(19, 1).unwrap();
        let f: Vec<u64> = r.triples.iter().map(|t| t.oracle).collect();
        assert_eq!(f, vec![0, 0, 1, 0, 2, 1, 2, 0, 3, 2, 3, 1, 4, 2, 3, 0, 5, 3, 4, 2]);
    }

    #[test]
    fn report_is_job_count_independent() {
        let a = run(256, 1).unwrap().to_json().to_string();
        let b = run(256, 8).unwrap().to_json().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_range() {
        let r = run(0, 4).unwrap();
        assert_eq!(r.triples.len(), 1);
        assert_eq!(r.triples[0].n, 0);
        assert!(r.is_clean());
    }
}
