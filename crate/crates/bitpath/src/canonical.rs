//! Canonical-path machinery: the constructive route to the longest-path
//! value f(n).
//!
//! Every n that is not of the form 2^t - 1 splits uniquely into three
//! binary blocks: a trailing 1-run, a low block beta whose length p makes
//! the remaining high part m satisfy p-1 <= m <= 2p-1, and that high part.
//! The canonical edge subtracts the power of two at the leftmost zero of
//! the rightmost zero-run of beta; iterating it realizes a longest path,
//! so counting edges computes f(n) exactly.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::numrep::Nat;

/// Default cap on canonical-walk steps. Walk length equals f(n), which is
/// at least S of the class bracket, so oversized inputs fail fast with a
/// pointer to the formula engine.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// The unique decomposition n = m * 2^p + k with p > 0,
/// p - 1 <= m <= 2p - 1 and 0 <= k < 2^p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperForm {
    pub m: u64,
    pub p: u64,
    pub k: Nat,
}

pub fn proper_form(n: &Nat) -> Result<ProperForm> {
    if n.is_zero() {
        return Err(Error::domain("proper form is defined for n >= 1"));
    }
    let bits = n.bit_len();
    // smallest p with n >> p <= 2p - 1; the quotient is decreasing and the
    // bound increasing, so the predicate is monotone and the unique proper
    // p is found by binary search
    let mut lo = 1u64;
    let mut hi = bits; // n >> bits == 0 always satisfies
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let q = n.shr(mid);
        let ok = q
            .to_u64()
            .map(|m| m <= 2 * mid - 1)
            .unwrap_or(false);
        if ok {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let p = lo;
    let m = n
        .shr(p)
        .to_u64()
        .expect("proper-form quotient is bounded by 2p-1");
    debug_assert!(m + 1 >= p && m <= 2 * p - 1);
    let k_big = n.as_biguint() - (BigUint::from(m) << p);
    Ok(ProperForm {
        m,
        p,
        k: Nat::from_biguint(k_big),
    })
}

/// The beta block of n as a most-significant-first bit string: trailing
/// 1-run stripped, then the low p digits where p is the proper-form
/// exponent of what remains. Undefined on 2^t - 1.
pub fn beta_part(n: &Nat) -> Result<String> {
    if n.is_sink() {
        return Err(Error::domain(format!("{n} is of form 2^t - 1: no beta block")));
    }
    let r = n.class_min();
    let p = proper_form(&r)?.p;
    let mut s = String::with_capacity(p as usize);
    for i in (0..p).rev() {
        s.push(if r.bit(i) { '1' } else { '0' });
    }
    Ok(s)
}

/// Canonical index s(n): bit position, within the full number, of the
/// leftmost zero of the rightmost zero-run of beta. Undefined on 2^t - 1.
pub fn canonical_index(n: &Nat) -> Result<u64> {
    if n.is_sink() {
        return Err(Error::domain(format!("{n} is of form 2^t - 1: no canonical edge")));
    }
    let t = n.tail();
    let r = n.class_min();
    let p = proper_form(&r)?.p;
    let tz = r.trailing_zeros().expect("reduced nonzero value ends in 0");
    let b = tz.min(p);
    Ok(b - 1 + t)
}

/// Canonical path in the class graph: vertices are class minima starting
/// at the class of n, each step subtracts the canonical power and reduces.
/// The edge count equals f(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPath {
    pub vertices: Vec<Nat>,
    pub indices: Vec<u64>,
}

impl CanonicalPath {
    pub fn len(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn check_walk_budget(n: &Nat, budget: u64) -> Result<()> {
    // f(n) >= S of the class bracket, so S already over budget means the
    // walk cannot finish
    let s = n.class_min().to_bracket().stats().s;
    if s.to_u64().map_or(true, |s| s > budget) {
        return Err(Error::Budget {
            what: "canonical walk steps",
            limit: budget,
        });
    }
    Ok(())
}

pub fn canonical_path(n: &Nat, step_budget: u64) -> Result<CanonicalPath> {
    check_walk_budget(n, step_budget)?;
    let mut vertices = vec![n.class_min()];
    let mut indices = Vec::new();
    loop {
        let cur = vertices.last().unwrap();
        if cur.is_zero() {
            break;
        }
        if indices.len() as u64 >= step_budget {
            return Err(Error::Budget {
                what: "canonical walk steps",
                limit: step_budget,
            });
        }
        let s = canonical_index(cur)?;
        let next = cur.subtract_pow2(s)?.class_min();
        indices.push(s);
        vertices.push(next);
    }
    Ok(CanonicalPath { vertices, indices })
}

/// f(n) as the canonical-walk edge count, without storing vertices.
pub fn f_canonical(n: &Nat, step_budget: u64) -> Result<u64> {
    check_walk_budget(n, step_budget)?;
    let mut cur = n.class_min();
    let mut steps = 0u64;
    while !cur.is_zero() {
        if steps >= step_budget {
            return Err(Error::Budget {
                what: "canonical walk steps",
                limit: step_budget,
            });
        }
        let s = canonical_index(&cur)?;
        cur = cur.subtract_pow2(s)?.class_min();
        steps += 1;
    }
    Ok(steps)
}

/// One canonical edge of the unreduced graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub from: Nat,
    pub to: Nat,
    pub index: u64,
}

/// Canonical path walked in the original graph, keeping tails: vertices
/// start at n itself and end at a 2^t - 1 sink. Same length as the class
/// walk.
pub fn tn_trace(n: &Nat, step_budget: u64) -> Result<Vec<TraceStep>> {
    check_walk_budget(n, step_budget)?;
    let mut steps = Vec::new();
    let mut cur = n.clone();
    while !cur.is_sink() {
        if steps.len() as u64 >= step_budget {
            return Err(Error::Budget {
                what: "canonical walk steps",
                limit: step_budget,
            });
        }
        let s = canonical_index(&cur)?;
        let next = cur.subtract_pow2(s)?;
        steps.push(TraceStep {
            from: cur,
            to: next.clone(),
            index: s,
        });
        cur = next;
    }
    Ok(steps)
}

/// g(n) = max of f over [0, n] = p(p-1)/2 + m from the proper form;
/// g(0) = 0.
pub fn g_value(n: &Nat) -> Nat {
    if n.is_zero() {
        return Nat::zero();
    }
    let pf = proper_form(n).expect("nonzero n has a proper form");
    let g = (u128::from(pf.p) * u128::from(pf.p - 1)) / 2 + u128::from(pf.m);
    Nat::from(g)
}

/// Steenrod length of the n-th real projective space: g(n) + 1.
pub fn steenrod_length(n: &Nat) -> Nat {
    &g_value(n) + &Nat::one()
}

/// Index a of the frequency band containing level s:
/// a(a+3)/2 <= s < (a+1)(a+4)/2.
fn freq_band(s: u64) -> u64 {
    let s = u128::from(s);
    let mut a = ((8.0 * s as f64 + 9.0).sqrt() as u128).saturating_sub(3) / 2;
    while (a + 1) * (a + 4) / 2 <= s {
        a += 1;
    }
    while a > 0 && a * (a + 3) / 2 > s {
        a -= 1;
    }
    debug_assert!(a * (a + 3) / 2 <= s && s < (a + 1) * (a + 4) / 2);
    a as u64
}

/// F(s) = #{n : g(n) = s} = 2^(a+1) on the band of s.
pub fn freq_value(s: u64) -> Nat {
    let a = freq_band(s);
    Nat::from_biguint(BigUint::from(1u8) << (a + 1))
}

/// Smallest n with f(n) = l: 2^(a+1) * (l - a(a+1)/2) on the band of l.
pub fn min_n_with_f(l: u64) -> Nat {
    let a = freq_band(l);
    let offset = u128::from(l) - u128::from(a) * u128::from(a + 1) / 2;
    Nat::from_biguint(BigUint::from(offset) << (a + 1))
}
