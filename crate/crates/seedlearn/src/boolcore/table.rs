use super::assignment::{Assignment, MAX_N};
use super::dnf::Dnf;
use super::tree::DecisionTree;
use crate::error::{Error, Result};

/// An explicit truth table over {0,1}^n, indexed with x_1 as the most
/// significant bit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruthTable {
    n: u32,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: u32, values: Vec<bool>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::ResourceCap(format!("truth table n={n} exceeds {MAX_N}")));
        }
        if values.len() != 1usize << n {
            return Err(Error::Contract(format!(
                "truth table over n={n} needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(TruthTable { n, values })
    }

    pub fn from_fn(n: u32, f: impl Fn(&Assignment) -> bool) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::ResourceCap(format!("truth table n={n} exceeds {MAX_N}")));
        }
        Ok(TruthTable { n, values: Assignment::all(n).map(|a| f(&a)).collect() })
    }

    pub fn of_dnf(phi: &Dnf) -> Result<Self> {
        Self::from_fn(phi.n(), |a| phi.eval(a))
    }

    pub fn of_tree(tree: &DecisionTree, n: u32) -> Result<Self> {
        Self::from_fn(n, |a| tree.eval(a))
    }

    /// Parity of the n input bits (odd weight -> 1), a standard hard case.
    pub fn parity(n: u32) -> Result<Self> {
        Self::from_fn(n, |a| a.weight() % 2 == 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self, a: &Assignment) -> bool {
        debug_assert_eq!(a.n(), self.n);
        self.values[a.index() as usize]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// The table as a 2^n-character 0/1 string in index order.
    pub fn bitstring(&self) -> String {
        self.values.iter().map(|&v| if v { '1' } else { '0' }).collect()
    }

    pub fn parse_bits(n: u32, s: &str) -> Result<Self> {
        let mut values = Vec::with_capacity(1usize << n);
        for c in s.chars() {
            match c {
                '0' => values.push(false),
                '1' => values.push(true),
                _ => return Err(Error::Contract(format!("invalid truth-table character {c:?}"))),
            }
        }
        Self::new(n, values)
    }
}
