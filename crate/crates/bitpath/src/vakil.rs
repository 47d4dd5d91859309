//! Closed-form evaluation of the longest-path value f(n).
//!
//! A number N is a Vakil number when its class minimum factors as
//! 2^(a+1) * k with a <= k <= 2a+1; for those, f = k + a(a+1)/2. Every
//! other class is handled by reducing to the nearest reachable Vakil
//! class of the same dimension and transporting the correction term
//! delta = f - S, where S is the weighted entry sum of the bracket. The
//! per-dimension delta tables enumerate exactly the Vakil classes whose
//! pair has 4 | k, which suffices for the general dispatch.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numrep::{Bracket, Nat};

/// The pair (a, k) with a <= k <= 2a+1 classifying a Vakil number
/// 2^(a+1) * k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VakilPair {
    pub a: u64,
    pub k: u64,
}

impl VakilPair {
    pub fn new(a: u64, k: u64) -> VakilPair {
        VakilPair { a, k }
    }

    pub fn is_valid(&self) -> bool {
        self.k >= 1 && self.a <= self.k && self.k <= 2 * self.a + 1
    }

    /// Dimension of 2^(a+1) * k: the trailing zero block plus the zero
    /// bits inside k.
    pub fn dimension(&self) -> u64 {
        let bits = 64 - self.k.leading_zeros() as u64;
        let ones = self.k.count_ones() as u64;
        self.a + 1 + (bits - ones)
    }
}

/// f of a Vakil number: k + a(a+1)/2.
pub fn f_vakil(p: VakilPair) -> Nat {
    Nat::from(u128::from(p.k) + u128::from(p.a) * u128::from(p.a + 1) / 2)
}

/// The Vakil pair of the class a bracket denotes, if any. Works without
/// materializing the value: a Vakil class is tiny above its trailing
/// zeros, so oversized entry sums rule it out immediately.
pub fn vakil_pair_of(b: &Bracket) -> Option<VakilPair> {
    let k_dim = b.dimension();
    if k_dim == 0 {
        return None;
    }
    // trailing zero count of the class value: index of the lowest nonzero
    // entry (the whole bracket if none)
    let mut z = k_dim;
    for j in 1..=k_dim {
        if !b.alpha(j).is_zero() {
            z = j;
            break;
        }
    }
    // odd part m sits above the z trailing zeros; pair k is at most
    // 2(z-1)+1, so m must be small
    let zeros_in_m = (k_dim - z) as u64;
    let mut ones_in_m = 0u64;
    for j in z..=k_dim {
        match b.alpha(j).to_u64() {
            Some(v) => ones_in_m = ones_in_m.saturating_add(v),
            None => return None,
        }
        if ones_in_m > 80 {
            return None;
        }
    }
    let m_bits = ones_in_m + zeros_in_m;
    if m_bits > 80 {
        return None;
    }
    let mut m: u128 = 0;
    for j in (z..=k_dim).rev() {
        let run = b.alpha(j).to_u64().unwrap() as u32;
        m = (m << run) | ((1u128 << run) - 1);
        if j > z {
            m <<= 1;
        }
    }
    // try every split of the trailing zeros into 2^(a+1) * k
    for a in (0..z as u64).rev() {
        let shift = z as u64 - a - 1;
        if shift >= 128 {
            continue;
        }
        let k = match m.checked_shl(shift as u32) {
            Some(k) if k <= u128::from(u64::MAX) => k as u64,
            _ => continue,
        };
        let pair = VakilPair::new(a, k);
        if pair.is_valid() {
            return Some(pair);
        }
    }
    None
}

fn ceil_log2(d: u64) -> u32 {
    debug_assert!(d >= 1);
    if d == 1 {
        0
    } else {
        64 - (d - 1).leading_zeros()
    }
}

fn floor_log2(d: u64) -> u32 {
    debug_assert!(d >= 1);
    63 - d.leading_zeros()
}

/// Vakil pair of the power 2^d, which is always a d-Vakil number: with
/// x = ceil(log2 d), the pair is (d-x, 2^(x-1)) when 2^(x-1) + x >= d and
/// (d-x-1, 2^x) otherwise.
pub fn vakil_of_power(d: u64) -> Result<VakilPair> {
    if d == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    let x = ceil_log2(d);
    let pair = if x >= 1 && (1u64 << (x - 1)) + u64::from(x) >= d {
        VakilPair::new(d - u64::from(x), 1 << (x - 1))
    } else {
        VakilPair::new(d - u64::from(x) - 1, 1 << x)
    };
    debug_assert!(pair.is_valid() && pair.dimension() == d);
    Ok(pair)
}

/// Suffix-sum dominance of `src` over `dst` entries, with `dst` padded by
/// leading zeros up to the dimension of `src`. At equal dimension this is
/// exactly the reachability criterion for the class graph; a
/// lower-dimensional `dst` is compared formally (dimension-dropping paths
/// are the breadth-first oracle's business).
pub fn can_reach(src: &Bracket, dst: &Bracket) -> bool {
    let ks = src.dimension();
    let kd = dst.dimension();
    if kd > ks {
        return false;
    }
    let pad = ks - kd;
    let mut cum_src = BigUint::zero();
    let mut cum_dst = BigUint::zero();
    for i in 0..ks {
        cum_src += &src.entries()[i];
        if i >= pad {
            cum_dst += &dst.entries()[i - pad];
        }
        if cum_src < cum_dst {
            return false;
        }
    }
    true
}

fn dominates_head(src: &Bracket, head: &[u64]) -> bool {
    let ks = src.dimension();
    debug_assert!(head.len() <= ks);
    let mut cum_src = BigUint::zero();
    let mut cum_dst = 0u128;
    for i in 0..ks {
        cum_src += &src.entries()[i];
        if i < head.len() {
            cum_dst += u128::from(head[i]);
        }
        // entries below the head are zero, so the target sum is flat from
        // here on; once the source dominates the full head sum it stays
        // dominant
        if cum_src < BigUint::from(cum_dst) {
            return false;
        }
        if i >= head.len() {
            break;
        }
    }
    true
}

/// Length of any path between two same-dimension classes with a path at
/// all: the weighted entry sums differ by exactly the step count, so
/// every path between the classes has length S(src) - S(dst).
pub fn path_length_between(src: &Bracket, dst: &Bracket) -> Result<Nat> {
    if src.dimension() != dst.dimension() {
        return Err(Error::domain(
            "path length is defined for classes of equal dimension",
        ));
    }
    if !can_reach(src, dst) {
        return Err(Error::domain(format!("{src} cannot reach {dst}")));
    }
    let s_src = src.stats().s;
    let s_dst = dst.stats().s;
    Ok(&s_src - &s_dst)
}

/// Result of walking the reduction process to the first same-dimension
/// Vakil class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub class: Bracket,
    pub pair: VakilPair,
    /// Canonical edges consumed: a unit decrement of entry a_j costs j.
    pub steps: Nat,
}

/// Decrement entries a_1, then a_2, ... each down to zero, stopping at
/// the first Vakil class of the same dimension. The power 2^k terminates
/// the process at the latest, so it always succeeds for dimension >= 1.
/// An already-Vakil input returns itself with zero steps.
pub fn reduce_to_first_vakil(b: &Bracket) -> Result<Reduction> {
    let b = b.class();
    let k = b.dimension();
    if k == 0 {
        return Err(Error::domain("zero class has no Vakil reduction"));
    }
    let mut entries: Vec<BigUint> = b.entries().to_vec();
    let mut steps = BigUint::zero();
    let current =
        |entries: &[BigUint]| Bracket::new(entries.to_vec(), BigUint::zero()).expect("top stays nonzero");
    if let Some(pair) = vakil_pair_of(&b) {
        return Ok(Reduction {
            class: b,
            pair,
            steps: Nat::zero(),
        });
    }
    for j in 1..=k {
        let idx = k - j; // entries are stored top-first
        let floor: u32 = if j == k { 1 } else { 0 };
        loop {
            if entries[idx] <= BigUint::from(floor) {
                break;
            }
            // a Vakil state is tiny above its trailing zeros; while this
            // entry is far larger than any Vakil candidate, decrements
            // cannot hit one, so they are charged in bulk
            let mut others = BigUint::zero();
            for (i, e) in entries.iter().enumerate() {
                if i != idx {
                    others += e;
                }
            }
            let budget = u128::from(j as u64) + 64;
            let cap = match others.to_u128() {
                Some(o) if o < budget => (budget - o).max(u128::from(floor)),
                _ => u128::from(floor).max(1),
            };
            let cap = BigUint::from(cap);
            if entries[idx] > &cap + BigUint::from(1u8) {
                let skipped = &entries[idx] - &cap - BigUint::from(1u8);
                steps += &skipped * BigUint::from(j as u64);
                entries[idx] = &cap + BigUint::from(1u8);
            }
            entries[idx] -= 1u8;
            steps += BigUint::from(j as u64);
            let state = current(&entries);
            if let Some(pair) = vakil_pair_of(&state) {
                return Ok(Reduction {
                    class: state,
                    pair,
                    steps: Nat::from_biguint(steps),
                });
            }
        }
    }
    Err(Error::domain(format!(
        "reduction process exhausted without a Vakil class (dimension {k})"
    )))
}

/// One row of a per-dimension table: the raw (a, k) with 4 | k, the tail
/// of k/4 used to step a, the actual Vakil pair of 2^(a+1) * k, and its
/// delta when the pair itself has 4 | k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRow {
    pub a: u64,
    pub k: u64,
    /// Trailing 1-bits of k/4; absent on the final row, where no further
    /// step is taken.
    pub t_k4: Option<u64>,
    pub pair: VakilPair,
    /// 4 does not divide the pair's k: the row is carried but unusable
    /// for dispatch.
    pub skip: bool,
    pub delta: Option<u64>,
    pub bracket: Bracket,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaTable {
    pub dimension: u64,
    pub rows: Vec<DeltaRow>,
}

/// Raw enumeration state shared by the table builder and the dispatcher.
struct RawRows {
    k: u64,
    k_end: u64,
    a: u64,
}

impl RawRows {
    fn start(d: u64) -> Result<RawRows> {
        if d < 5 {
            return Err(Error::domain(format!(
                "delta tables start at dimension 5; dimension {d} is covered by the small-dimension constants"
            )));
        }
        if d > 1 << 31 {
            return Err(Error::domain("dimension too large for table enumeration"));
        }
        let x = ceil_log2(d);
        let first = vakil_of_power(d)?;
        let k_end = if (1u64 << (x - 1)) + u64::from(x) >= d {
            1u64 << x
        } else {
            1u64 << (x + 1)
        };
        debug_assert_eq!(first.k % 4, 0);
        Ok(RawRows {
            k: first.k,
            k_end,
            a: first.a,
        })
    }
}

impl Iterator for RawRows {
    /// (a, k, is_last)
    type Item = (u64, u64, bool);

    fn next(&mut self) -> Option<Self::Item> {
        if self.k >= self.k_end {
            return None;
        }
        let row = (self.a, self.k, self.k + 4 >= self.k_end);
        // step k by one four times, updating a by the same-dimension rule
        // a' = a - tail(k) + [k+1 is not a power of two]
        for _ in 0..4 {
            let t = u64::from((!self.k).trailing_zeros());
            let bump = u64::from(!(self.k + 1).is_power_of_two());
            debug_assert!(self.a + bump >= t);
            self.a = self.a + bump - t;
            self.k += 1;
        }
        Some(row)
    }
}

/// Head entries (top-first) of the bracket of 2^(a+1) * k: the bracket of
/// k, then k's tail as one entry; everything below is zero.
fn row_head(k: u64) -> Vec<u64> {
    let kb = Nat::from(k).to_bracket();
    let mut head: Vec<u64> = kb
        .entries()
        .iter()
        .map(|e| e.to_u64().expect("entries of a u64 fit"))
        .collect();
    head.push(kb.tail_u64().unwrap());
    head
}

fn head_s(head: &[u64], d: u64) -> u128 {
    head.iter()
        .enumerate()
        .map(|(i, &e)| u128::from(d - i as u64) * u128::from(e))
        .sum()
}

/// Actual Vakil pair of 2^(a+1) * k for a table row: the raw pair when
/// valid, otherwise the even k is halved once.
fn normalize_pair(a: u64, k: u64) -> Result<VakilPair> {
    let raw = VakilPair::new(a, k);
    if raw.is_valid() {
        return Ok(raw);
    }
    if k % 2 == 0 {
        let halved = VakilPair::new(a + 1, k / 2);
        if halved.is_valid() {
            return Ok(halved);
        }
    }
    Err(Error::domain(format!(
        "({a},{k}) does not normalize to a Vakil pair"
    )))
}

/// delta of a Vakil pair within dimension d: f of the pair minus the
/// weighted entry sum of its bracket.
pub fn delta_of_vakil(pair: VakilPair, d: u64) -> Result<u64> {
    if !pair.is_valid() {
        return Err(Error::domain(format!(
            "({}, {}) is not a Vakil pair",
            pair.a, pair.k
        )));
    }
    if pair.dimension() != d {
        return Err(Error::domain(format!(
            "2^{} * {} has dimension {}, not {d}",
            pair.a + 1,
            pair.k,
            pair.dimension()
        )));
    }
    let f = u128::from(pair.k) + u128::from(pair.a) * u128::from(pair.a + 1) / 2;
    let s = head_s(&row_head(pair.k), d);
    debug_assert!(f >= s);
    u64::try_from(f - s).map_err(|_| Error::domain("delta exceeds u64".to_string()))
}

fn materialize_row(a: u64, k: u64, last: bool, d: u64) -> Result<DeltaRow> {
    let pair = normalize_pair(a, k)?;
    let skip = pair.k % 4 != 0;
    let delta = if skip { None } else { Some(delta_of_vakil(pair, d)?) };
    let head = row_head(k);
    let mut entries: Vec<BigUint> = head.iter().map(|&e| BigUint::from(e)).collect();
    entries.resize(d as usize, BigUint::zero());
    let bracket = Bracket::new(entries, BigUint::zero())?;
    Ok(DeltaRow {
        a,
        k,
        t_k4: if last {
            None
        } else {
            Some(u64::from((!(k / 4)).trailing_zeros()))
        },
        pair,
        skip,
        delta,
        bracket,
    })
}

/// The short per-dimension table: rows step the raw k by 4 from the pair
/// of 2^d up to the dimension's bound.
pub fn enumerate_vakil(d: u64) -> Result<DeltaTable> {
    let rows = RawRows::start(d)?
        .map(|(a, k, last)| materialize_row(a, k, last, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(DeltaTable { dimension: d, rows })
}

/// All d-Vakil class values, enumerated by the unit-step pair recurrence
/// rather than by scanning numbers. The walk covers raw k over the union
/// window [2^(x-1), 2^(x+1)): every d-Vakil value factors with some k in
/// it, including the edge pairs with k = 2a+1 that sit past the short
/// tables' range. One value can show up under two raw ks, so pairs are
/// deduplicated.
pub fn all_vakil_values(d: u64) -> Result<Vec<Nat>> {
    if d < 2 {
        return Err(Error::domain("classification enumeration needs dimension >= 2"));
    }
    if d > 1 << 31 {
        return Err(Error::domain("dimension too large for enumeration"));
    }
    let x = ceil_log2(d);
    let k_start = 1u64 << (x - 1);
    let k_end = 1u64 << (x + 1);
    // pair slot of the anchor 2^d = 2^(d-x+1) * 2^(x-1)
    let mut a = d - u64::from(x);
    let mut pairs = std::collections::BTreeSet::new();
    for k in k_start..k_end {
        let raw = VakilPair::new(a, k);
        let actual = if raw.is_valid() {
            Some(raw)
        } else if k % 2 == 0 && VakilPair::new(a + 1, k / 2).is_valid() {
            Some(VakilPair::new(a + 1, k / 2))
        } else if a >= 1 && VakilPair::new(a - 1, 2 * k).is_valid() {
            Some(VakilPair::new(a - 1, 2 * k))
        } else {
            None
        };
        if let Some(p) = actual {
            debug_assert_eq!(p.dimension(), d);
            pairs.insert((p.a, p.k));
        }
        let t = u64::from((!k).trailing_zeros());
        let bump = u64::from(!(k + 1).is_power_of_two());
        a = a + bump - t;
    }
    Ok(pairs
        .into_iter()
        .map(|(a, k)| Nat::from_biguint(BigUint::from(k) << (a + 1)))
        .collect())
}

/// The dispatch answer for a non-Vakil class: the reachable non-skip
/// table row of maximal delta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosestRow {
    pub row: DeltaRow,
    pub delta: u64,
    /// Number of reachable rows sharing the maximal delta.
    pub ties: u64,
}

/// Pick the closest Vakil class with 4 | k: among non-skip rows of the
/// dimension's table that the bracket can reach, the one of maximal
/// delta (first in ascending k on a tie).
pub fn closest_vakil(b: &Bracket) -> Result<ClosestRow> {
    let b = b.class();
    let d = b.dimension() as u64;
    // (delta, a, k, ties, is_last_row)
    let mut best: Option<(u64, u64, u64, u64, bool)> = None;
    for (a, k, last) in RawRows::start(d)? {
        let pair = normalize_pair(a, k)?;
        if pair.k % 4 != 0 {
            continue;
        }
        if !dominates_head(&b, &row_head(k)) {
            continue;
        }
        let delta = delta_of_vakil(pair, d)?;
        best = Some(match best {
            None => (delta, a, k, 1, last),
            Some((bd, ..)) if delta > bd => (delta, a, k, 1, last),
            Some((bd, ba, bk, ties, bl)) if delta == bd => (bd, ba, bk, ties + 1, bl),
            Some(other) => other,
        });
    }
    match best {
        Some((delta, a, k, ties, last)) => {
            let row = materialize_row(a, k, last, d)?;
            Ok(ClosestRow { row, delta, ties })
        }
        None => Err(Error::NoReachableRow),
    }
}

/// Largest h >= 1 with (2^m - 1) * 2^(h-1) + h + 1 <= k, found by an
/// ascending scan (at most ~log2 k probes).
pub fn h_index(m: u32, k: u64) -> Result<u64> {
    if m == 0 {
        // the power term vanishes; h + 1 <= k caps h directly
        if k < 2 {
            return Err(Error::domain("h index needs k >= 2 when m = 0"));
        }
        return Ok(k - 1);
    }
    if m >= 64 || (1u128 << m) >= u128::from(k) {
        return Err(Error::domain(format!("h index needs 2^{m} < k, got k = {k}")));
    }
    let base = (1u128 << m) - 1;
    let k = u128::from(k);
    debug_assert!(base + 2 <= k);
    let mut h = 1u64;
    while base * (1u128 << h) + u128::from(h) + 2 <= k {
        h += 1;
    }
    Ok(h)
}

/// f of the single-entry class [m, 0, ..., 0] of dimension i:
/// (2^m - 1) * 2^h + (i - h)(i - h - 1)/2 with h the index for (m, i).
pub fn f_zero_tail(m: u32, i: u64) -> Result<Nat> {
    if i < 2 {
        return Err(Error::domain("single-entry formula needs dimension >= 2"));
    }
    if m > 0 && (1u128 << m) >= u128::from(i) {
        return Err(Error::domain(format!(
            "single-entry formula needs m < log2(i); use the stabilized form"
        )));
    }
    let h = h_index(m, i)?;
    let base = if m == 0 { 0u128 } else { ((1u128 << m) - 1) << h };
    let rest = u128::from(i - h) * u128::from(i - h - 1) / 2;
    Ok(Nat::from(base + rest))
}

/// delta of [n, 0, ..., 0] of dimension i: constant once n is at least
/// log2(i), where it equals the value at the clamped entry
/// floor(log2 i) - 1.
pub fn delta_stabilized(n_entry: u64, i: u64) -> Result<Nat> {
    if i < 2 {
        return Err(Error::domain("delta stabilization needs dimension >= 2"));
    }
    let clamped = n_entry >= 64 || (1u128 << n_entry) >= u128::from(i);
    let m: u32 = if clamped {
        floor_log2(i) - 1
    } else {
        n_entry as u32
    };
    let f = f_zero_tail(m, i)?;
    let s = u128::from(m) * u128::from(i);
    let f = f.as_biguint().to_u128().expect("single-entry f fits u128");
    debug_assert!(f >= s);
    Ok(Nat::from(f - s))
}

const SMALL_DIM_DELTA: [u64; 8] = [0, 0, 0, 0, 1, 2, 4, 7];

/// f(n) by closed form: exact for every class, no walking. Dispatch: the
/// zero class is 0; Vakil classes use their pair; dimension <= 7 uses the
/// small-dimension delta constants; a large top entry uses the stabilized
/// single-entry delta; everything else transports delta from the closest
/// 4 | k Vakil row of its dimension.
pub fn f_formula(b: &Bracket) -> Result<Nat> {
    let b = b.class();
    let k = b.dimension();
    if k == 0 {
        return Ok(Nat::zero());
    }
    if let Some(pair) = vakil_pair_of(&b) {
        return Ok(f_vakil(pair));
    }
    let stats = b.stats();
    if k <= 7 {
        return Ok(&stats.s + &Nat::from(SMALL_DIM_DELTA[k]));
    }
    let k = k as u64;
    let m = floor_log2(k) - 1;
    if b.entries()[0] >= BigUint::from(m) {
        let f = f_zero_tail(m, k)?;
        let f = f.as_biguint().to_u128().expect("single-entry f fits u128");
        let delta = f - u128::from(m) * u128::from(k);
        return Ok(&stats.s + &Nat::from(delta));
    }
    let closest = closest_vakil(&b)?;
    Ok(&stats.s + &Nat::from(closest.delta))
}

/// f(n) by closed form for a plain number input.
pub fn f_formula_nat(n: &Nat) -> Result<Nat> {
    f_formula(&n.class_min().to_bracket())
}

impl DeltaTable {
    /// CSV with a fixed column order; bracket cells are quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,k,t_k4,pair_a,pair_k,delta,bracket,skip\n");
        for r in &self.rows {
            let t = r.t_k4.map(|t| t.to_string()).unwrap_or_default();
            let delta = r.delta.map(|d| d.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},\"{}\",{}",
                r.a, r.k, t, r.pair.a, r.pair.k, delta, r.bracket, r.skip
            );
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.dimension,
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "a": r.a,
                "k": r.k,
                "t_k4": r.t_k4,
                "pair": { "a": r.pair.a, "k": r.pair.k },
                "delta": r.delta,
                "bracket": r.bracket.to_string(),
                "skip": r.skip,
            })).collect::<Vec<_>>(),
        })
    }

    /// Human-readable table mirroring the published short-table layout.
    pub fn to_pretty(&self) -> String {
        let mut rows: Vec<[String; 6]> = vec![[
            "a".into(),
            "k".into(),
            "t_{k/4}".into(),
            "pair".into(),
            "delta".into(),
            "bracket".into(),
        ]];
        for r in &self.rows {
            let pair = if r.skip {
                format!("({},{}), skip", r.pair.a, r.pair.k)
            } else {
                format!("({},{})", r.pair.a, r.pair.k)
            };
            rows.push([
                r.a.to_string(),
                r.k.to_string(),
                r.t_k4.map(|t| t.to_string()).unwrap_or_else(|| "skip".into()),
                pair,
                r.delta.map(|d| d.to_string()).unwrap_or_default(),
                if r.skip { String::new() } else { ellipsize(&r.bracket) },
            ]);
        }
        let mut width = [0usize; 6];
        for row in &rows {
            for (i, cell) in row.iter().enumerate() {
                width[i] = width[i].max(cell.len());
            }
        }
        let mut out = String::new();
        for (ri, row) in rows.iter().enumerate() {
            for (i, cell) in row.iter().enumerate() {
                let _ = write!(out, "{:<w$}", cell, w = width[i] + 2);
            }
            out.truncate(out.trim_end().len());
            out.push('\n');
            if ri == 0 {
                let total: usize = width.iter().map(|w| w + 2).sum();
                out.push_str(&"-".repeat(total.saturating_sub(2)));
                out.push('\n');
            }
        }
        out
    }
}

/// Compress a long zero run as in the published tables: [1,0,...,0].
fn ellipsize(b: &Bracket) -> String {
    let entries = b.entries();
    if entries.is_empty() {
        return b.to_string();
    }
    let last_nonzero = entries.iter().rposition(|e| !e.is_zero()).unwrap_or(0);
    let zeros_after = entries.len() - last_nonzero - 1;
    if zeros_after < 3 {
        return b.to_string();
    }
    let mut out = String::from("[");
    for e in &entries[..=last_nonzero] {
        let _ = write!(out, "{e},");
    }
    out.push_str("0,...,0]");
    out
}
