//! Number representations: arbitrary-length binary integers, binary-class
//! reduction, and the run-length bracket encoding.
//!
//! A *binary class* collects every integer that shares a binary form once
//! all trailing 1-bits are stripped; the class is named by its minimum
//! element. The bracket form `[a_k,...,a_1]t` records, for the j-th zero
//! bit counted from the least-significant end of the class minimum, the
//! number `a_j` of 1-bits immediately above it; `t` is the count of
//! trailing 1-bits that were stripped.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Non-negative integer with bit-level access. Canonical: no leading
/// zeros are stored; zero is the empty bit sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(BigUint);

impl Nat {
    pub fn zero() -> Self {
        Nat(BigUint::zero())
    }

    pub fn one() -> Self {
        Nat(BigUint::one())
    }

    pub fn from_biguint(v: BigUint) -> Self {
        Nat(v)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn into_biguint(self) -> BigUint {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Number of bits up to the highest set bit; 0 for the value 0.
    pub fn bit_len(&self) -> u64 {
        self.0.bits()
    }

    pub fn bit(&self, i: u64) -> bool {
        self.0.bit(i)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// True for values of the form 2^t - 1 (including 0). These are the
    /// sinks of the subtraction graph: no zero bit below the top set bit.
    pub fn is_sink(&self) -> bool {
        (&self.0 + BigUint::one()).count_ones() == 1
    }

    /// Count of trailing 1-bits.
    pub fn tail(&self) -> u64 {
        (&self.0 + BigUint::one()).trailing_zeros().unwrap_or(0)
    }

    pub fn trailing_zeros(&self) -> Option<u64> {
        self.0.trailing_zeros()
    }

    /// Minimum element of the binary class: the value with all trailing
    /// 1-bits removed. Idempotent.
    pub fn class_min(&self) -> Nat {
        Nat(&self.0 >> self.tail())
    }

    pub fn shr(&self, n: u64) -> Nat {
        Nat(&self.0 >> n)
    }

    /// n - 2^s, performed as the bit flip it is: every bit from position
    /// `s` up to and including the first 1 above `s` is inverted.
    pub fn subtract_pow2(&self, s: u64) -> Result<Nat> {
        if self.0.bit(s) {
            return Err(Error::domain(format!("bit {s} is set; cannot subtract 2^{s}")));
        }
        // lowest set bit strictly above s
        let above = &self.0 >> (s + 1);
        let j = match above.trailing_zeros() {
            Some(t) => s + 1 + t,
            None => {
                return Err(Error::domain(format!("no set bit above position {s}")));
            }
        };
        let mut out = self.0.clone();
        for pos in s..=j {
            out.set_bit(pos, !out.bit(pos));
        }
        Ok(Nat(out))
    }

    /// Run-length bracket form of this value: entries read off the class
    /// minimum, tail = number of trailing 1-bits.
    pub fn to_bracket(&self) -> Bracket {
        let t = self.tail();
        let r = self.class_min();
        let bits = r.bit_len();
        let mut entries_low_first: Vec<BigUint> = Vec::new();
        let mut ones_run: u64 = 0;
        // scan the reduced value from the least-significant bit; every zero
        // bit below the top opens a new entry holding the 1-run above it
        for i in 0..bits {
            if r.bit(i) {
                ones_run += 1;
            } else {
                if !entries_low_first.is_empty() {
                    let last = entries_low_first.len() - 1;
                    entries_low_first[last] = BigUint::from(ones_run);
                }
                entries_low_first.push(BigUint::zero());
                ones_run = 0;
            }
        }
        if let Some(last) = entries_low_first.last_mut() {
            *last = BigUint::from(ones_run);
        }
        entries_low_first.reverse();
        Bracket {
            entries: entries_low_first,
            tail: BigUint::from(t),
        }
    }

    /// Parse decimal, `0b` binary, or `0x` hexadecimal text.
    pub fn parse(text: &str) -> Result<Nat> {
        let text = text.trim();
        let (digits, radix) = if let Some(rest) = text.strip_prefix("0b").or_else(|| text.strip_prefix("0B")) {
            (rest, 2)
        } else if let Some(rest) = text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            (rest, 16)
        } else {
            (text, 10)
        };
        if digits.is_empty() {
            return Err(Error::parse("empty number".to_string()));
        }
        BigUint::parse_bytes(digits.as_bytes(), radix)
            .map(Nat)
            .ok_or_else(|| Error::parse(format!("invalid base-{radix} number: {text:?}")))
    }

    /// Most-significant-first binary string ("0" for zero).
    pub fn to_binary_string(&self) -> String {
        self.0.to_str_radix(2)
    }

    pub fn to_string_radix(&self, radix: u32) -> String {
        self.0.to_str_radix(radix)
    }
}

impl From<u64> for Nat {
    fn from(v: u64) -> Self {
        Nat(BigUint::from(v))
    }
}

impl From<u128> for Nat {
    fn from(v: u128) -> Self {
        Nat(BigUint::from(v))
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::ops::Add<&Nat> for &Nat {
    type Output = Nat;
    fn add(self, rhs: &Nat) -> Nat {
        Nat(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub<&Nat> for &Nat {
    type Output = Nat;
    fn sub(self, rhs: &Nat) -> Nat {
        Nat(&self.0 - &rhs.0)
    }
}

/// Run-length bracket `[a_k,...,a_1]t`. Entries are stored top-first
/// (`entries[0]` is `a_k`); the top entry is nonzero unless the bracket is
/// the zero class `[0]` (no entries). Entries and tail are unbounded, so
/// brackets serve as a compressed input format for numbers far beyond
/// machine-word size.
#[derive(Clone, PartialEq, Eq)]
pub struct Bracket {
    entries: Vec<BigUint>,
    tail: BigUint,
}

impl Bracket {
    /// `entries` top-first. Rejects a zero top entry (the zero class is
    /// spelled with an empty entry list).
    pub fn new(entries: Vec<BigUint>, tail: BigUint) -> Result<Bracket> {
        if let Some(top) = entries.first() {
            if top.is_zero() {
                return Err(Error::parse(
                    "bracket top entry must be nonzero (zero class is [0])".to_string(),
                ));
            }
        }
        Ok(Bracket { entries, tail })
    }

    pub fn zero_class() -> Bracket {
        Bracket {
            entries: Vec::new(),
            tail: BigUint::zero(),
        }
    }

    pub fn from_u64_entries(entries: &[u64], tail: u64) -> Result<Bracket> {
        Bracket::new(entries.iter().map(|&e| BigUint::from(e)).collect(), BigUint::from(tail))
    }

    /// Number of entries; equals the count of zero bits of the class
    /// minimum below its top set bit.
    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    /// Entries top-first (`a_k` down to `a_1`).
    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    /// Entry `a_j`, 1-indexed from the low end per the bracket notation.
    pub fn alpha(&self, j: usize) -> &BigUint {
        &self.entries[self.entries.len() - j]
    }

    pub fn tail(&self) -> &BigUint {
        &self.tail
    }

    pub fn tail_u64(&self) -> Option<u64> {
        self.tail.to_u64()
    }

    /// Same entries, tail zeroed: the bracket of the class minimum.
    pub fn class(&self) -> Bracket {
        Bracket {
            entries: self.entries.clone(),
            tail: BigUint::zero(),
        }
    }

    /// Total number of binary digits of the denoted value.
    pub fn bit_len(&self) -> BigUint {
        let mut n = BigUint::from(self.entries.len()) + &self.tail;
        for e in &self.entries {
            n += e;
        }
        n
    }

    /// Exact value. Fails only when the value is too large to materialize
    /// in memory.
    pub fn to_nat(&self) -> Result<Nat> {
        let bits = self.bit_len();
        let bits = bits.to_u64().ok_or(Error::Budget {
            what: "bracket materialization",
            limit: u64::MAX,
        })?;
        if bits > (isize::MAX as u64) / 16 {
            return Err(Error::Budget {
                what: "bracket materialization",
                limit: (isize::MAX as u64) / 16,
            });
        }
        let mut v = BigUint::zero();
        for e in &self.entries {
            let run = e.to_u64().expect("entry bounded by total bit count");
            // append a 1-run then the zero that closes this entry
            v = ((v << run) | ((BigUint::one() << run) - BigUint::one())) << 1u8;
        }
        let t = self.tail.to_u64().expect("tail bounded by total bit count");
        v = (v << t) | ((BigUint::one() << t) - BigUint::one());
        Ok(Nat(v))
    }

    /// S = sum of j*a_j, S' = sum of a_j, over the entries.
    pub fn stats(&self) -> ClassStats {
        let mut s = BigUint::zero();
        let mut s_prime = BigUint::zero();
        let k = self.entries.len();
        for (idx, e) in self.entries.iter().enumerate() {
            let j = (k - idx) as u64;
            s += e * BigUint::from(j);
            s_prime += e;
        }
        ClassStats {
            s: Nat(s),
            s_prime: Nat(s_prime),
            dimension: k as u64,
        }
    }

    /// Parse `[a_k,...,a_1]t` (tail optional, default 0). `[0]` is the
    /// zero class; `[0]t` denotes 2^t - 1.
    pub fn parse(text: &str) -> Result<Bracket> {
        let text = text.trim();
        let inner_end = text
            .find(']')
            .ok_or_else(|| Error::parse(format!("missing ']' in bracket: {text:?}")))?;
        if !text.starts_with('[') {
            return Err(Error::parse(format!("bracket must start with '[': {text:?}")));
        }
        let inner = &text[1..inner_end];
        let rest = text[inner_end + 1..].trim();
        let tail = if rest.is_empty() {
            BigUint::zero()
        } else {
            BigUint::parse_bytes(rest.as_bytes(), 10)
                .ok_or_else(|| Error::parse(format!("invalid bracket tail: {rest:?}")))?
        };
        let mut entries = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::parse(format!("empty bracket entry in {text:?}")));
            }
            let e = BigUint::parse_bytes(part.as_bytes(), 10)
                .ok_or_else(|| Error::parse(format!("invalid bracket entry: {part:?}")))?;
            entries.push(e);
        }
        if entries.len() == 1 && entries[0].is_zero() {
            // the zero class [0]
            return Ok(Bracket {
                entries: Vec::new(),
                tail,
            });
        }
        Bracket::new(entries, tail)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            write!(f, "[0]")?;
        } else {
            write!(f, "[")?;
            for (i, e) in self.entries.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        if !self.tail.is_zero() {
            write!(f, "{}", self.tail)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Weighted and plain entry sums of a bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStats {
    pub s: Nat,
    pub s_prime: Nat,
    pub dimension: u64,
}

/// A parsed command-line operand: plain number or bracket form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Number(Nat),
    Bracket(Bracket),
}

impl Input {
    /// Bracket of the binary class the input denotes (tail dropped).
    pub fn class_bracket(&self) -> Bracket {
        match self {
            Input::Number(n) => n.class_min().to_bracket(),
            Input::Bracket(b) => b.class(),
        }
    }

    /// Exact value, materialized.
    pub fn to_nat(&self) -> Result<Nat> {
        match self {
            Input::Number(n) => Ok(n.clone()),
            Input::Bracket(b) => b.to_nat(),
        }
    }
}

/// Parse decimal / `0b` binary / `0x` hex / bracket text.
pub fn parse_input(text: &str) -> Result<Input> {
    let t = text.trim();
    if t.starts_with('[') {
        Ok(Input::Bracket(Bracket::parse(t)?))
    } else {
        Ok(Input::Number(Nat::parse(t)?))
    }
}
