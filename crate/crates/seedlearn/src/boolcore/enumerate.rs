use itertools::Itertools;

use super::assignment::Literal;
use super::term::Term;

/// Yields every non-contradictory term of size ≤ `max_size` exactly
/// once, in canonical order: by size, then lexicographically by
/// (var, polarity) with positive before negative.
///
/// Total count is Σ_{i=0..max_size} C(n,i)·2^i.
pub fn enumerate_terms(n: u32, max_size: u32) -> impl Iterator<Item = Term> {
    let max_size = max_size.min(n);
    (0..=max_size).flat_map(move |size| {
        (1..=n).combinations(size as usize).flat_map(move |vars| {
            (0u32..(1 << size)).map(move |mask| {
                Term::from_literals(vars.iter().enumerate().map(|(i, &v)| {
                    // First variable gets the most significant polarity bit,
                    // so mask order is lexicographic (0 = positive).
                    if mask >> (size as usize - 1 - i) & 1 == 1 {
                        Literal::neg(v)
                    } else {
                        Literal::pos(v)
                    }
                }))
            })
        })
    })
}

/// Number of terms yielded by `enumerate_terms(n, max_size)`.
pub fn term_count(n: u32, max_size: u32) -> u64 {
    (0..=max_size.min(n)).map(|i| binomial(n as u64, i as u64) << i).sum()
}

/// All 3^n satisfiable monomials, generated by base-3 counting over the
/// variables (an independent code path from `enumerate_terms`).
pub fn all_monomials(n: u32) -> impl Iterator<Item = Term> {
    let total = 3u64.pow(n);
    (0..total).map(move |code| {
        let mut code = code;
        let mut lits = Vec::new();
        for v in 1..=n {
            match code % 3 {
                0 => {}
                1 => lits.push(Literal::pos(v)),
                _ => lits.push(Literal::neg(v)),
            }
            code /= 3;
        }
        Term::from_literals(lits)
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result = 1u64;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}
