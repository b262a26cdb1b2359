use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the instance dimension: everything in this crate is
/// exhaustive over {0,1}^n somewhere, so n stays small.
pub const MAX_N: u32 = 16;

/// A point of {0,1}^n.
///
/// Bit packing follows the truth-table index convention: the value of
/// x_1 is the most significant of the n bits, so the packed integer of
/// an assignment equals its truth-table index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    n: u32,
    bits: u32,
}

impl Assignment {
    pub fn from_index(n: u32, index: u32) -> Self {
        assert!(n <= MAX_N, "n={n} exceeds MAX_N");
        assert!(index < (1u32 << n));
        Assignment { n, bits: index }
    }

    pub fn zeros(n: u32) -> Self {
        Self::from_index(n, 0)
    }

    /// Parse an n-character bitstring, x_1 first.
    pub fn parse(s: &str) -> Result<Self> {
        let n = s.len() as u32;
        if n > MAX_N {
            return Err(Error::ResourceCap(format!("bitstring length {n} exceeds {MAX_N}")));
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => {
                    return Err(Error::Contract(format!("invalid bitstring character {c:?}")));
                }
            }
        }
        Ok(Assignment { n, bits })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Truth-table index of this assignment.
    pub fn index(&self) -> u32 {
        self.bits
    }

    /// Value of variable `var` (1-based).
    pub fn get(&self, var: u32) -> bool {
        debug_assert!(var >= 1 && var <= self.n);
        (self.bits >> (self.n - var)) & 1 == 1
    }

    pub fn with(&self, var: u32, value: bool) -> Self {
        let mask = 1u32 << (self.n - var);
        let bits = if value { self.bits | mask } else { self.bits & !mask };
        Assignment { n: self.n, bits }
    }

    /// Number of 1 bits.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// All 2^n assignments in index order.
    pub fn all(n: u32) -> impl Iterator<Item = Assignment> {
        assert!(n <= MAX_N);
        (0..(1u32 << n)).map(move |i| Assignment { n, bits: i })
    }

    /// True iff every coordinate of self equals the corresponding
    /// coordinate of `x` or of `y`.
    pub fn between(&self, x: &Assignment, y: &Assignment) -> Result<bool> {
        if x.n != self.n || y.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.n.max(y.n) });
        }
        // r_i ∈ {x_i, y_i} for all i: r must agree with x wherever x and y agree.
        let agree = !(x.bits ^ y.bits) & ((1u32 << self.n) - 1);
        Ok((self.bits ^ x.bits) & agree == 0)
    }

    pub fn bitstring(&self) -> String {
        (1..=self.n).map(|v| if self.get(v) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bitstring())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bitstring())
    }
}

impl Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.bitstring())
    }
}

impl<'de> Deserialize<'de> for Assignment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Assignment::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A variable (1-based) or its negation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        assert!(var >= 1);
        Literal { var, negated: false }
    }

    pub fn neg(var: u32) -> Self {
        assert!(var >= 1);
        Literal { var, negated: true }
    }

    pub fn var(&self) -> u32 {
        self.var
    }

    pub fn negated(&self) -> bool {
        self.negated
    }

    pub fn complement(&self) -> Self {
        Literal { var: self.var, negated: !self.negated }
    }

    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        a.get(self.var) != self.negated
    }

    /// Signed-index encoding used by the DNF file format: i for x_i, -i for ¬x_i.
    pub fn signed(&self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn from_signed(i: i64) -> Result<Self> {
        if i == 0 {
            return Err(Error::Contract("literal index 0".into()));
        }
        Ok(Literal { var: i.unsigned_abs() as u32, negated: i < 0 })
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}
